#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "rotor/config.hpp"
#include "rotor/dynamics.hpp"
#include "rotor/functionals.hpp"
#include "rotor/groundstate.hpp"
#include "rotor/oracle.hpp"
#include "rotor/saddle.hpp"

namespace rotor {

using Json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "rotor-gpe 0.1.0";

Json to_json(const EnergyBreakdown& e);
Json to_json(const GroundStateReport& r);  ///< field omitted; see snapshots
Json to_json(const RotationConstants& k);
Json to_json(const GeometryReport& g);
Json to_json(const StabilitySummary& s);
Json to_json(const MountainPassReport& m);  ///< saddle field omitted
Json to_json(const SweepRow& row);
Json gn_constant_json(const RadialProfile& profile);

struct RunOutcome {
  std::string command;
  std::string status = "ok";  ///< "ok" or "failed"
  std::string diagnostic;
  Json results = Json::object();
  std::vector<std::string> artifacts;
  std::optional<RotationConstants> constants;
  double wall_time = 0.0;
};

/// Config echo, version, wall time, derived constants with c0 and the
/// c < c0 flag, results and artifact paths. Apart from wall_time_s the
/// output depends only on its inputs.
Json run_manifest(const RunConfig& config, const RunOutcome& outcome);

/// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

/// Creates the directory and probes it with a scratch write; throws
/// ValidationError when it is not writable.
void prepare_output_dir(const std::string& dir);

void write_text(const std::string& path, const std::string& text);

/// 17 significant digits in scientific notation, the CSV number format.
std::string csv_number(double x);

}  // namespace rotor

#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <regex>

#include "rotor/config.hpp"
#include "rotor/error.hpp"
#include "rotor/random.hpp"
#include "rotor/report_json.hpp"
#include "rotor/snapshot.hpp"

using namespace rotor;

namespace {

const char* kMinimal = R"(# minimal run
seed = 4
[grid]
dim = 2
points = 128
half_width = 8
[physics]
a = 1
p = 4
omega_mag = 0.1
[constraint]
c = 0.01
r = 1
)";

std::string replace(std::string text, const std::string& from, const std::string& to) {
  text.replace(text.find(from), from.size(), to);
  return text;
}

std::string error_of(const std::string& text) {
  try {
    parse_config(text);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST_SUITE("cli-io") {
  TEST_CASE("minimal config parses with defaults") {
    const RunConfig cfg = parse_config(kMinimal);
    CHECK(cfg.grid.dim == 2);
    CHECK(cfg.grid.points_per_axis == 128);
    CHECK(cfg.physics.omega_mag == 0.1);
    CHECK(cfg.solver.c == 0.01);
    CHECK(cfg.solver.dt_imag == 1e-2);
    CHECK(cfg.solver.tol_grad == 1e-8);
    CHECK(cfg.solver.max_iters == 200000);
    CHECK(cfg.solver.seed == 4);
    CHECK(cfg.echo.at("solver.init_kind") == "gaussian");
    CHECK(cfg.echo.at("physics.p") == "4");
  }

  TEST_CASE("rotation outside [0,1) is rejected") {
    const std::string msg = error_of(replace(kMinimal, "omega_mag = 0.1", "omega_mag = 1.2"));
    CHECK(msg.find("omega_mag must lie in [0,1)") != std::string::npos);
    CHECK(msg.find("line 10") != std::string::npos);
  }

  TEST_CASE("infeasible mass cites c <= r/N") {
    const std::string msg = error_of(replace(kMinimal, "c = 0.01", "c = 0.6"));
    CHECK(msg.find("c > r/N") != std::string::npos);
    CHECK(msg.find("c <= r/N") != std::string::npos);
    CHECK(msg.find("line 12") != std::string::npos);
  }

  TEST_CASE("unknown keys, bad values and stray sections carry line numbers") {
    CHECK(error_of(std::string(kMinimal) + "colour = red\n").find("line 14: unknown key 'constraint.colour'") !=
          std::string::npos);
    CHECK(error_of(replace(kMinimal, "points = 128", "points = many")).find("line 5") != std::string::npos);
    CHECK(error_of(replace(kMinimal, "points = 128", "points = 100")).find("power of two") != std::string::npos);
    CHECK(error_of(std::string(kMinimal) + "[solver]\n").empty());
    CHECK(error_of(std::string(kMinimal) + "[extras]\n").find("unknown section") != std::string::npos);
    CHECK(error_of(std::string(kMinimal) + "r = 2\n").find("duplicate key") != std::string::npos);
    CHECK(error_of(std::string(kMinimal) + "[solver]\ninit_kind = from_file\n").find("init_file") != std::string::npos);
  }

  TEST_CASE("snapshot round trip is bit exact") {
    for (int dim : {2, 3}) {
      const GridSpec g = make_grid(dim, dim == 2 ? 32 : 16, 5.5);
      CounterRng rng(1, Stream::property);
      const WaveField u = random_smooth_field(g, rng);
      const PhysicsParams ph = make_physics(dim, 0.7, 4.0, 0.25);
      const auto path = (std::filesystem::temp_directory_path() / "rotor_roundtrip.rgpe1").string();
      write_snapshot(path, u, ph, u.mass());
      const Snapshot s = read_snapshot(path);
      CHECK(s.field.grid() == g);
      CHECK(std::memcmp(s.field.data(), u.data(), u.size() * sizeof(Complex)) == 0);
      CHECK(s.params.a == 0.7);
      CHECK(s.params.omega_mag == 0.25);
      CHECK(s.c == u.mass());
      std::filesystem::remove(path);
    }
  }

  TEST_CASE("snapshot header layout") {
    const GridSpec g = make_grid(2, 16, 4.0);
    const std::string bytes = encode_snapshot(WaveField(g), make_physics(2, 1.0, 4.0, 0.1), 0.5);
    CHECK(bytes.size() == 5 + 1 + 4 + 40 + 16 * 256);
    CHECK(bytes.substr(0, 5) == "RGPE1");
    CHECK(static_cast<unsigned char>(bytes[5]) == 2);
    CHECK(static_cast<unsigned char>(bytes[6]) == 16);
    CHECK_THROWS_AS(decode_snapshot(bytes.substr(0, bytes.size() - 1)), ValidationError);
    CHECK_THROWS_AS(decode_snapshot("RGPE2" + bytes.substr(5)), ValidationError);
  }

  TEST_CASE("manifests are byte stable apart from wall time") {
    const RunConfig cfg = parse_config(kMinimal);
    RunOutcome a;
    a.command = "solve";
    a.results = Json{{"omega_c", 0.98765432101234567}};
    a.constants = compute_constants(cfg.physics, 1.0, 0.64);
    a.wall_time = 1.25;
    RunOutcome b = a;
    b.wall_time = 7.5;
    const std::regex wall("\"wall_time_s\": [^,]*,");
    const std::string ja = std::regex_replace(dump(run_manifest(cfg, a)), wall, "");
    const std::string jb = std::regex_replace(dump(run_manifest(cfg, b)), wall, "");
    CHECK(ja == jb);
    const Json m = run_manifest(cfg, a);
    CHECK(m["c0"].get<double>() == a.constants->c0);
    CHECK(m["regime_c_below_c0"].get<bool>() == (cfg.solver.c < a.constants->c0));
    CHECK(m["version"] == kVersion);
  }

  TEST_CASE("failed runs still produce a manifest") {
    const RunConfig cfg = parse_config(kMinimal);
    RunOutcome out;
    out.command = "solve";
    out.status = "failed";
    out.diagnostic = "escaped_ball: iterate left B(r)";
    const Json m = run_manifest(cfg, out);
    CHECK(m["status"] == "failed");
    CHECK(m["diagnostic"] == out.diagnostic);
    CHECK(m["c0"].is_null());
  }

  TEST_CASE("CSV numbers carry 17 significant digits") {
    CHECK(csv_number(0.1) == "1.0000000000000001e-01");
    CHECK(std::stod(csv_number(1.0 / 3.0)) == 1.0 / 3.0);
  }

  TEST_CASE("unwritable output directory is refused up front") {
    CHECK_THROWS_AS(prepare_output_dir("/proc/rotor-no-write"), ValidationError);
  }
}

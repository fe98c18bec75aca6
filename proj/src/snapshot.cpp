#include "rotor/snapshot.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "rotor/error.hpp"

namespace rotor {

namespace {

constexpr char kMagic[] = "RGPE1";
constexpr std::size_t kMagicLen = 5;
constexpr std::size_t kHeaderLen = kMagicLen + 1 + 4 + 5 * 8;

template <typename T>
void put(std::string& out, T value) {
  auto bits = std::bit_cast<std::array<unsigned char, sizeof(T)>>(value);
  if constexpr (std::endian::native == std::endian::big) std::reverse(bits.begin(), bits.end());
  out.append(reinterpret_cast<const char*>(bits.data()), sizeof(T));
}

template <typename T>
T take(const std::string& in, std::size_t& pos) {
  std::array<unsigned char, sizeof(T)> bits;
  std::memcpy(bits.data(), in.data() + pos, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) std::reverse(bits.begin(), bits.end());
  pos += sizeof(T);
  return std::bit_cast<T>(bits);
}

}  // namespace

std::string encode_snapshot(const WaveField& field, const PhysicsParams& params, double c) {
  const GridSpec& g = field.grid();
  std::string out;
  out.reserve(kHeaderLen + 16 * field.size());
  out.append(kMagic, kMagicLen);
  put<std::uint8_t>(out, static_cast<std::uint8_t>(g.dim));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(g.points_per_axis));
  put<double>(out, g.half_width);
  put<double>(out, params.a);
  put<double>(out, params.p);
  put<double>(out, params.omega_mag);
  put<double>(out, c);
  for (const Complex& z : field.values()) {
    put<double>(out, z.real());
    put<double>(out, z.imag());
  }
  return out;
}

Snapshot decode_snapshot(const std::string& bytes) {
  if (bytes.size() < kHeaderLen || bytes.compare(0, kMagicLen, kMagic) != 0) {
    throw ValidationError("not an RGPE1 snapshot (bad magic or truncated header)");
  }
  std::size_t pos = kMagicLen;
  const int dim = take<std::uint8_t>(bytes, pos);
  const auto m = take<std::uint32_t>(bytes, pos);
  const double half_width = take<double>(bytes, pos);
  const double a = take<double>(bytes, pos);
  const double p = take<double>(bytes, pos);
  const double omega = take<double>(bytes, pos);
  const double c = take<double>(bytes, pos);

  const GridSpec grid = make_grid(dim, static_cast<int>(m), half_width);
  if (bytes.size() != kHeaderLen + 16 * grid.size()) {
    std::ostringstream msg;
    msg << "RGPE1 payload holds " << bytes.size() - kHeaderLen << " bytes, expected " << 16 * grid.size();
    throw ValidationError(msg.str());
  }
  std::vector<Complex> values(grid.size());
  for (auto& z : values) {
    const double re = take<double>(bytes, pos);
    const double im = take<double>(bytes, pos);
    z = Complex(re, im);
  }
  return Snapshot{WaveField(grid, std::move(values)), make_physics(dim, a, p, omega), c};
}

void write_snapshot(const std::string& path, const WaveField& field, const PhysicsParams& params, double c) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ValidationError("cannot open " + path + " for writing");
  const std::string bytes = encode_snapshot(field, params, c);
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw ValidationError("failed writing " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ValidationError("cannot open snapshot " + path);
  const std::string bytes{std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
  return decode_snapshot(bytes);
}

}  // namespace rotor

#include "mvca/brs_file.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "mvca/hj_solver.hpp"

namespace mvca {

namespace {

constexpr char kMagic[4] = {'B', 'R', 'S', '1'};
constexpr std::size_t kHeaderSize = 4 + 3 * 4 + 9 * 8 + 3;

void put_u32(std::vector<std::uint8_t>& buf, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) buf.push_back(static_cast<std::uint8_t>(v >> (8 * b)));
}

void put_f64(std::vector<std::uint8_t>& buf, double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  for (int b = 0; b < 8; ++b) buf.push_back(static_cast<std::uint8_t>(bits >> (8 * b)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  std::uint32_t v = 0;
  for (int b = 0; b < 4; ++b) v |= static_cast<std::uint32_t>(p[b]) << (8 * b);
  return v;
}

double get_f64(const std::uint8_t* p) {
  std::uint64_t bits = 0;
  for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(p[b]) << (8 * b);
  return std::bit_cast<double>(bits);
}

}  // namespace

void save_brs(const ValueField& field, const std::filesystem::path& path) {
  const Grid3& g = field.grid;
  if (field.values.size() != g.size()) {
    throw FormatError("value array does not match grid");
  }
  std::vector<std::uint8_t> header;
  header.reserve(kHeaderSize);
  header.insert(header.end(), kMagic, kMagic + 4);
  for (int a = 0; a < 3; ++a) put_u32(header, static_cast<std::uint32_t>(g.dims[a]));
  for (int a = 0; a < 3; ++a) put_f64(header, g.min_corner[a]);
  for (int a = 0; a < 3; ++a) put_f64(header, g.max_corner[a]);
  put_f64(header, field.dynamics.speed);
  put_f64(header, field.dynamics.max_turn_rate);
  put_f64(header, field.capture_radius);
  for (int a = 0; a < 3; ++a) header.push_back(g.periodic[a] ? 1 : 0);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + path.string());
  out.write(reinterpret_cast<const char*>(header.data()),
            static_cast<std::streamsize>(header.size()));
  std::vector<std::uint8_t> payload;
  payload.reserve(field.values.size() * 8);
  for (double v : field.values) put_f64(payload, v);
  out.write(reinterpret_cast<const char*>(payload.data()),
            static_cast<std::streamsize>(payload.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

ValueField load_brs(const std::filesystem::path& path, double tolerance) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path.string());
  std::uint8_t header[kHeaderSize];
  in.read(reinterpret_cast<char*>(header), kHeaderSize);
  if (in.gcount() != static_cast<std::streamsize>(kHeaderSize)) {
    throw FormatError("truncated header: " + path.string());
  }
  if (std::memcmp(header, kMagic, 4) != 0) {
    throw FormatError("bad magic: " + path.string());
  }
  const std::uint8_t* p = header + 4;
  std::array<int, 3> dims;
  for (int a = 0; a < 3; ++a, p += 4) {
    std::uint32_t d = get_u32(p);
    if (d < 2 || d > (1u << 24)) throw FormatError("implausible dims");
    dims[a] = static_cast<int>(d);
  }
  Vec3 lo, hi;
  for (int a = 0; a < 3; ++a, p += 8) lo[a] = get_f64(p);
  for (int a = 0; a < 3; ++a, p += 8) hi[a] = get_f64(p);
  DynamicsParams dyn;
  dyn.speed = get_f64(p);
  p += 8;
  dyn.max_turn_rate = get_f64(p);
  p += 8;
  double capture_radius = get_f64(p);
  p += 8;
  std::array<bool, 3> periodic;
  for (int a = 0; a < 3; ++a) periodic[a] = p[a] != 0;
  if (periodic != std::array<bool, 3>{false, false, true}) {
    throw FormatError("unsupported periodicity flags");
  }

  ValueField field;
  try {
    field.grid = Grid3::make(dims, lo, hi, periodic);
  } catch (const std::invalid_argument& e) {
    throw FormatError(std::string("bad grid header: ") + e.what());
  }
  if (!(dyn.speed > 0.0) || !(dyn.max_turn_rate > 0.0) ||
      !(capture_radius > 0.0)) {
    throw FormatError("bad dynamics header");
  }
  field.dynamics = dyn;
  field.capture_radius = capture_radius;

  std::size_t count = field.grid.size();
  std::vector<std::uint8_t> payload(count * 8);
  in.read(reinterpret_cast<char*>(payload.data()),
          static_cast<std::streamsize>(payload.size()));
  if (in.gcount() != static_cast<std::streamsize>(payload.size())) {
    throw FormatError("truncated values: " + path.string());
  }
  in.peek();
  if (!in.eof()) throw FormatError("trailing bytes: " + path.string());
  field.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    field.values[i] = get_f64(payload.data() + i * 8);
  }

  // The layout stores no convergence flag; recover it by probing what one
  // further sweep would change.
  field.residual = residual_probe(field, dyn);
  field.converged = field.residual < tolerance;
  return field;
}

}  // namespace mvca

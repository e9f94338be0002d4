#include "tern/field_io.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace tern::io {

namespace {

static_assert(std::endian::native == std::endian::little, "snapshot writer assumes a little-endian host");

void put_u32(std::ostream& os, std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); }

std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 4);
  return v;
}

}  // namespace

void write_snapshot(const std::string& path, const std::vector<GridField>& channels) {
  if (channels.empty()) throw std::invalid_argument("write_snapshot: no channels");
  const int n = channels.front().n();
  for (const auto& c : channels)
    if (c.n() != n) throw std::invalid_argument("write_snapshot: channel resolution mismatch");
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_snapshot: cannot open " + path);
  os.write("TDF1", 4);
  put_u32(os, static_cast<std::uint32_t>(n));
  put_u32(os, static_cast<std::uint32_t>(channels.size()));
  for (const auto& c : channels)
    os.write(reinterpret_cast<const char*>(c.data()), static_cast<std::streamsize>(c.size() * sizeof(double)));
  if (!os) throw std::runtime_error("write_snapshot: write failed for " + path);
}

std::vector<GridField> read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("read_snapshot: cannot open " + path);
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "TDF1", 4) != 0) throw std::runtime_error("read_snapshot: bad magic in " + path);
  const std::uint32_t n = get_u32(is);
  const std::uint32_t nch = get_u32(is);
  if (!is || n < 8 || n % 2 != 0 || nch == 0 || nch > 16) throw std::runtime_error("read_snapshot: bad header");
  std::vector<GridField> channels;
  channels.reserve(nch);
  for (std::uint32_t c = 0; c < nch; ++c) {
    std::vector<double> data(static_cast<std::size_t>(n) * n);
    is.read(reinterpret_cast<char*>(data.data()), static_cast<std::streamsize>(data.size() * sizeof(double)));
    if (!is) throw std::runtime_error("read_snapshot: truncated file " + path);
    channels.emplace_back(static_cast<int>(n), std::move(data));
  }
  return channels;
}

void write_pgm(const std::string& path, const GridField& f) {
  const int n = f.n();
  const double* d = f.data();
  double lo = d[0], hi = d[0];
  for (std::size_t i = 0; i < f.size(); ++i) {
    lo = std::min(lo, d[i]);
    hi = std::max(hi, d[i]);
  }
  const double span = (hi > lo) ? hi - lo : 1.0;
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_pgm: cannot open " + path);
  os << "P5\n" << n << " " << n << "\n255\n";
  std::vector<unsigned char> row(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b)
      row[b] = static_cast<unsigned char>(std::clamp(255.0 * (f.at(a, b) - lo) / span, 0.0, 255.0));
    os.write(reinterpret_cast<const char*>(row.data()), n);
  }
}

void write_composite_ppm(const std::string& path, const GridField& u1, const GridField& u2) {
  if (u1.n() != u2.n()) throw std::invalid_argument("write_composite_ppm: resolution mismatch");
  const int n = u1.n();
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("write_composite_ppm: cannot open " + path);
  os << "P6\n" << n << " " << n << "\n255\n";
  std::vector<unsigned char> row(static_cast<std::size_t>(3) * n);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      const double v1 = std::clamp(u1.at(a, b), 0.0, 1.0);
      const double v2 = std::clamp(u2.at(a, b), 0.0, 1.0);
      row[3 * b + 0] = static_cast<unsigned char>(std::clamp(255.0 * (1.0 - v2), 0.0, 255.0));
      row[3 * b + 1] = static_cast<unsigned char>(std::clamp(255.0 * (1.0 - v1 - v2), 0.0, 255.0));
      row[3 * b + 2] = static_cast<unsigned char>(std::clamp(255.0 * (1.0 - v1), 0.0, 255.0));
    }
    os.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
}

}  // namespace tern::io

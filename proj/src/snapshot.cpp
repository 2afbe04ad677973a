#include "css2d/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <vector>

#include <json.hpp>

namespace css2d {

namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

std::filesystem::path with_suffix(const std::filesystem::path& stem, const char* ext) {
  return std::filesystem::path(stem.string() + ext);
}

}  // namespace

void write_snapshot(const std::filesystem::path& stem, const ComplexField& field, double time,
                    const std::string& kind) {
  const Grid& g = field.grid();
  if (stem.has_parent_path()) std::filesystem::create_directories(stem.parent_path());
  {
    std::ofstream bin(with_suffix(stem, ".bin"), std::ios::binary);
    if (!bin) throw Error("cannot open snapshot file " + with_suffix(stem, ".bin").string());
    std::vector<double> buf(2 * static_cast<std::size_t>(g.n()) * g.n());
    for (int i = 0; i < g.n(); ++i)
      for (int j = 0; j < g.n(); ++j) {
        const std::size_t k = 2 * (static_cast<std::size_t>(i) * g.n() + j);
        buf[k] = field(i, j).real();
        buf[k + 1] = field(i, j).imag();
      }
    bin.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size() * sizeof(double)));
  }
  nlohmann::json meta = {{"n", g.n()}, {"L", g.length()}, {"t", time}, {"kind", kind}};
  std::ofstream js(with_suffix(stem, ".json"));
  if (!js) throw Error("cannot open sidecar " + with_suffix(stem, ".json").string());
  js << meta.dump(2) << '\n';
}

void write_snapshot(const std::filesystem::path& stem, const RealField& field, double time,
                    const std::string& kind) {
  write_snapshot(stem, to_complex(field), time, kind);
}

Snapshot read_snapshot(const std::filesystem::path& stem, GridPtr grid) {
  std::ifstream js(with_suffix(stem, ".json"));
  if (!js) throw Error("cannot open sidecar " + with_suffix(stem, ".json").string());
  const nlohmann::json meta = nlohmann::json::parse(js);
  const int n = meta.at("n").get<int>();
  const double length = meta.at("L").get<double>();
  if (!grid || grid->n() != n || grid->length() != length) grid = Grid::create(n, length);

  std::ifstream bin(with_suffix(stem, ".bin"), std::ios::binary);
  if (!bin) throw Error("cannot open snapshot file " + with_suffix(stem, ".bin").string());
  std::vector<double> buf(2 * static_cast<std::size_t>(n) * n);
  bin.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size() * sizeof(double)));
  if (bin.gcount() != static_cast<std::streamsize>(buf.size() * sizeof(double)))
    throw Error("snapshot file is truncated: " + with_suffix(stem, ".bin").string());

  Snapshot snap{ComplexField(grid), meta.at("t").get<double>(), meta.at("kind").get<std::string>()};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const std::size_t k = 2 * (static_cast<std::size_t>(i) * n + j);
      snap.field(i, j) = cplx(buf[k], buf[k + 1]);
    }
  return snap;
}

}  // namespace css2d

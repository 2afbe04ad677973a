#ifndef CSS2D_SNAPSHOT_HPP
#define CSS2D_SNAPSHOT_HPP

#include <filesystem>
#include <string>

#include "css2d/field.hpp"

namespace css2d {

/// On-disk field snapshot: `<stem>.bin` holds n*n little-endian float64
/// pairs (re, im) in row-major order with no header; `<stem>.json` holds
/// {"n", "L", "t", "kind"}.
struct Snapshot {
  ComplexField field;
  double time = 0.0;
  std::string kind;
};

void write_snapshot(const std::filesystem::path& stem, const ComplexField& field, double time,
                    const std::string& kind);
void write_snapshot(const std::filesystem::path& stem, const RealField& field, double time,
                    const std::string& kind);

/// Reads `<stem>.json` and `<stem>.bin`. Reuses `grid` when its (n, L)
/// match the sidecar, otherwise allocates a new grid.
Snapshot read_snapshot(const std::filesystem::path& stem, GridPtr grid = nullptr);

}  // namespace css2d

#endif  // CSS2D_SNAPSHOT_HPP

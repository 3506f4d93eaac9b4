#pragma once

#include "tunnel/grid.hpp"

#include <filesystem>

namespace tunnel {

/// Binary wavefunction snapshot, all fields little-endian:
///
///   offset  size  content
///   0       8     magic "TDSESNAP"
///   8       4     uint32 format version (1)
///   12      4     uint32 reserved (0)
///   16      8     uint64 point count n
///   24      8     float64 x_min
///   32      8     float64 x_max
///   40      8     float64 dx
///   48      8     float64 time t
///   56      16n   n pairs of float64 (re, im)
struct Snapshot {
  double time;
  Wavefunction psi;
};

void write_snapshot(const std::filesystem::path& path, double t, const Wavefunction& psi);
Snapshot read_snapshot(const std::filesystem::path& path);

}  // namespace tunnel

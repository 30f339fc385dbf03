#pragma once

#include <filesystem>
#include <stdexcept>

#include "mvca/defaults.hpp"
#include "mvca/value_field.hpp"

namespace mvca {

// Malformed file contents (bad magic, truncation, inconsistent header).
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Filesystem-level failure (open/read/write).
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Binary layout, all little-endian:
//   magic "BRS1"                      4 bytes
//   dims nx, ny, ntheta               3 x u32
//   min corner x, y, theta            3 x f64
//   max corner x, y, theta            3 x f64
//   speed, max turn rate, capture R   3 x f64
//   periodic flags                    3 x u8
//   values, x-fastest                 nx*ny*ntheta x f64
void save_brs(const ValueField& field, const std::filesystem::path& path);

// Loads and re-derives the convergence flag: one diagnostic sweep is probed
// and the field counts as converged when that residual stays below tolerance.
ValueField load_brs(const std::filesystem::path& path,
                    double tolerance = defaults::solver_tolerance);

}  // namespace mvca

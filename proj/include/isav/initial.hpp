#pragma once

#include <cstdint>
#include <filesystem>

#include "isav/config.hpp"
#include "isav/spectral.hpp"

namespace isav {

/// φ = 1 + 0.5 sin x sin y.
Field init_ex1(GridPtr grid);

/// +1 inside the squares |x−3.2|,|y−3.2| ≤ 1 and |x−5|,|y−5| ≤ 0.36, −1 elsewhere.
Field init_squares(GridPtr grid);

/// 0.7 inside the disks of radius 1.4 about (π−0.8, π) and radius 0.5 about
/// (π+1.7, π), 0.3 elsewhere.
Field init_disks(GridPtr grid);

/// 0.5 + 0.2·u with u uniform on [−1, 1) drawn node by node in row-major
/// order from std::mt19937_64 seeded with `seed`, using the top 53 bits of
/// each draw.
Field init_random(GridPtr grid, std::uint64_t seed);

/// Dispatch on cfg.init.kind. File paths resolve against cfg.base_dir.
Field make_initial(const RunConfig& cfg, GridPtr grid);

}  // namespace isav

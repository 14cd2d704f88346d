#pragma once

#include <cstdint>
#include <vector>

#include "quermass/jets.hpp"

namespace quermass {

struct LpResult {
    Vec3 x = Vec3::Zero();
    double value = 0.0;
    bool hit_bound = false;  // optimum pinned at the artificial box: unbounded program
};

/// Maximize <c, x> subject to <a_i, x> <= b_i and |x_j| <= bound, by Seidel's
/// randomized incremental algorithm in dimension <= 3. The constraint order
/// is shuffled with a fixed-seed generator, so results are deterministic.
/// Throws std::runtime_error when the constraints are infeasible.
LpResult lp_maximize(const std::vector<Vec3>& a, const std::vector<double>& b,
                     const Vec3& c, double bound, std::uint64_t seed = 0x51dE1u);

}  // namespace quermass

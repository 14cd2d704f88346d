#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "quermass/bodies.hpp"

namespace quermass {

/// Volume of the d-dimensional unit ball.
double unit_ball_volume(int d);

double binomial(int n, int k);

struct DimensionalConstants {
    double kappa;  // kappa_{n-j}
    double d;      // d_{n,j}   = binom(n,j) / kappa_{n-j}
    double e;      // e_{n,j}   = 2 j d_{n,j} / (n d_{n-1,j-1})
    double c_af;   // C_{n,j} in the Aleksandrov-Fenchel special case
};

DimensionalConstants dimensional_constants(int n, int j);

/// The raw constants, valid over the wider ranges the product formula needs:
/// d_{n,j} for 0 <= j <= n, e_{n,j} for 1 <= j <= n.
double d_nj(int n, int j);
double e_nj(int n, int j);

/// V_j by the surface integral d_{n,j}/n * int h s(h[j-1], 1[n-j]) dH over
/// the grid; requires a smooth representation.
double intrinsic_volume_smooth(const Body& k, int j, const SphereGrid& grid);

/// Exact planar intrinsic volumes: shoelace/perimeter for polygons,
/// quadrature on S^1 for smooth 2-dimensional bodies. j in {1, 2}.
double intrinsic_volume_2d(const Body& k, int j);

/// V_j(base + I_s) = V_j(base) + s e_{n,j} V_{j-1}(base) for a planar base
/// and a segment of half-length s (n = 3).
double intrinsic_volume_product(const Body& base2d, double s, int j);

/// Dispatch: smooth bodies to the surface integral, planar bodies to the
/// exact 2-dimensional path, segment products to the product formula.
double intrinsic_volume(const Body& k, int j, const SphereGrid& grid);
std::string volume_method(const Body& k);

/// Max relative residual of the Steiner polynomial over the given outer
/// radii. Smooth bodies evaluate the parallel volume by quadrature; boxes
/// (segment products over rectangles) use the closed-form parallel volume.
double steiner_check(const Body& k, const SphereGrid& grid, const std::vector<double>& rhos);

struct MonteCarloEstimate {
    double value = 0.0;
    double std_error = 0.0;
    int samples = 0;
};

/// Kubota projection oracle: V_j as the rescaled mean of j-dimensional
/// projection volumes over uniformly random subspaces (orthonormalized
/// Gaussian frames, fixed seed, per-shard seeding with deterministic merge).
MonteCarloEstimate kubota_oracle(const Body& k, int j, int sample_count,
                                 std::uint64_t seed = 2024);

struct VolumeReport {
    struct Entry {
        int j;
        double value;
        std::string method;
        double err_estimate;
    };
    std::string body_id;
    std::vector<Entry> entries;
};

VolumeReport volume_report(const Body& k, const std::string& body_id, const SphereGrid& grid);

}  // namespace quermass

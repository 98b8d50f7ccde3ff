#ifndef DNMC_SCAN_HPP
#define DNMC_SCAN_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "dnmc/algebra.hpp"
#include "dnmc/tensor.hpp"
#include "dnmc/transform.hpp"

namespace dnmc {

// Sequences are rank-2 tensors (T x d): one content vector per step. A step
// is the affine pair (v_k, R_k); folding left with
//   (a, A) o (b, B) = (a + A b, A B)
// yields the composed content v_1 + R_1 v_2 + R_1 R_2 v_3 + ...

/// Fold one step into an accumulator pair.
AffinePair fold_step(const AffinePair& acc, const Vec& content, const Transform& step);

/// Left fold of the whole sequence with a tied transform (R_k = tied for all k).
AffinePair scan_sequence(const Tensor& seq, const Transform& tied);

/// Left fold with one transform per step (steps.size() == T).
AffinePair scan_sequence(const Tensor& seq, const std::vector<Transform>& steps);

/// All prefix contents E_1..E_T as a T x d tensor.
Tensor prefix_scan_sequential(const Tensor& seq, const Transform& tied);
Tensor prefix_scan_sequential(const Tensor& seq, const std::vector<Transform>& steps);

struct PrefixOptions {
    std::size_t chunk = 0; ///< steps per chunk; 0 splits evenly across workers
    unsigned workers = 0;  ///< 0 uses hardware_concurrency
};

/// Blocked two-pass prefix scan: local scans per chunk in parallel, then a
/// sequential carry sweep, then parallel carry application. Output depends
/// only on the chunk size, never on the worker count; the first chunk is the
/// plain sequential fold, so chunk >= T reproduces prefix_scan_sequential
/// bit for bit.
Tensor prefix_scan_parallel(const Tensor& seq, const Transform& tied, const PrefixOptions& opt = {});
Tensor prefix_scan_parallel(const Tensor& seq, const std::vector<Transform>& steps,
                            const PrefixOptions& opt = {});

// Grids are rank-3 (H x W x d) or rank-4 (H x W x L x d) tensors. The grid
// composition is the axis-weighted sum
//   sum_{i,j} Rx^i Ry^j v[i][j]        (0-based exponents)
// which coincides with any nested fold order when the axis transforms
// commute. compose_grid* verify commutation and throw NonCommutingAxes
// otherwise; the fold_* variants skip the check so the order dependence is
// observable.

Vec compose_grid2d(const Tensor& grid, const Transform& rx, const Transform& ry);
Vec compose_grid3d(const Tensor& grid, const Transform& rx, const Transform& ry, const Transform& rz);

/// sum_i Rx^i ( sum_j Ry^j v[i][j] ) — inner fold along the second axis.
Vec fold_grid2d_row_major(const Tensor& grid, const Transform& rx, const Transform& ry);

/// sum_j Ry^j ( sum_i Rx^i v[i][j] ) — inner fold along the first axis.
Vec fold_grid2d_col_major(const Tensor& grid, const Transform& rx, const Transform& ry);

/// Generic 3D fold: axes applied per cell in the given nesting order,
/// order[0] outermost. order must be a permutation of {0,1,2}.
Vec fold_grid3d(const Tensor& grid, const std::array<Transform, 3>& rs,
                const std::array<int, 3>& order);

} // namespace dnmc

#endif // DNMC_SCAN_HPP

#ifndef DNMC_MREP_HPP
#define DNMC_MREP_HPP

#include <cstdint>
#include <span>

#include "dnmc/tensor.hpp"
#include "dnmc/transform.hpp"

namespace dnmc {

/// Block width for magnitude extraction. Matches the transform block
/// structure: a block rotation changes nothing about the magnitudes.
inline constexpr std::size_t kMagnitudeBlockSize = 2;

/// Directional window embedding s_k = sum_{i=0}^{K-1} R^i a[k+i], with the
/// signal taken as zero outside its support; `start` may be negative.
Vec window_embed(const Tensor& signal, std::int64_t start, std::size_t window, const Transform& r);

/// 2D patch embedding sum_{i,j} Rx^i Ry^j a[kx+i][ky+j], zero-extended.
Vec window_embed_2d(const Tensor& signal, std::int64_t start_x, std::int64_t start_y,
                    std::size_t wx, std::size_t wy, const Transform& rx, const Transform& ry);

/// Per-block Euclidean norms: d/2 values for a d-vector (d even).
Vec magnitude_vector(std::span<const double> v);

/// Shift-invariant descriptor: magnitude vectors of every window embedding
/// that overlaps the support (offsets -K+1 .. T-1), summed. Translating the
/// signal inside a zero-padded domain reindexes the windows and leaves the
/// sum unchanged; reordering the signal does not.
Vec mrep_1d(const Tensor& signal, std::size_t window, const Transform& r);

/// 2D analogue over all overlapping wx x wy patches.
Vec mrep_2d(const Tensor& signal, std::size_t wx, std::size_t wy,
            const Transform& rx, const Transform& ry);

} // namespace dnmc

#endif // DNMC_MREP_HPP

#ifndef DNMC_ALIGN_HPP
#define DNMC_ALIGN_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "dnmc/algebra.hpp"
#include "dnmc/linalg.hpp"
#include "dnmc/transform.hpp"

namespace dnmc {

/// Translating a signal by s inside a zero-padded domain multiplies its
/// composed embedding by R^s; shifting an element is the same plus power
/// bookkeeping.
Element axis_shift(const Element& x, std::size_t axis, std::int64_t s);

enum class ScoreKind {
    Dot,    ///< <x, R^s y>
    Cosine, ///< <x, R^s y> / (|x| |R^s y|)
};

struct AlignmentResult {
    std::int64_t shift = 0;
    double score = 0.0;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    std::vector<double> scores; ///< one per candidate shift, in range order
};

/// Exhaustive argmax_s score(x, R^s y) over s in [lo, hi]. Each candidate
/// uses a fresh R^s (no running product, so errors cannot accumulate across
/// candidates). Ties resolve to the smallest shift.
AlignmentResult align(std::span<const double> x, std::span<const double> y, const Transform& r,
                      std::int64_t lo, std::int64_t hi, ScoreKind kind = ScoreKind::Dot);

struct AlignmentResult2D {
    std::int64_t shift_x = 0;
    std::int64_t shift_y = 0;
    double score = 0.0;
    std::int64_t lo_x = 0, hi_x = 0;
    std::int64_t lo_y = 0, hi_y = 0;
    Matrix scores; ///< (hi_x-lo_x+1) x (hi_y-lo_y+1)
};

/// 2D search over Rx^sx Ry^sy; ties resolve lexicographically in (sx, sy).
AlignmentResult2D align_2d(std::span<const double> x, std::span<const double> y,
                           const Transform& rx, const Transform& ry,
                           std::int64_t lo_x, std::int64_t hi_x,
                           std::int64_t lo_y, std::int64_t hi_y,
                           ScoreKind kind = ScoreKind::Dot);

enum class ConcatMode {
    Strict,     ///< identical to compose_axis: off-axis powers must match
    Permissive, ///< off-axis powers may differ; result takes their max
};

/// Directional concatenation along `axis`:
///   content = a + R_axis^{n_axis} b,   power_axis = n_axis + m_axis.
Element concat(const Element& x, const Element& y, std::size_t axis,
               ConcatMode mode = ConcatMode::Strict);

/// Undo a strict concat from the left factor: recovers y such that
/// concat(x, y, axis) == z.
Element concat_recover_right(const Element& z, const Element& x, std::size_t axis);

/// Undo from the right factor: recovers x such that concat(x, y, axis) == z.
Element concat_recover_left(const Element& z, const Element& y, std::size_t axis);

} // namespace dnmc

#endif // DNMC_ALIGN_HPP

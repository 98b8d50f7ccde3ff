#include "dnmc/align.hpp"

#include <algorithm>
#include <cmath>

#include "dnmc/errors.hpp"

namespace dnmc {

namespace {

double score_at(std::span<const double> x, const Vec& ry, ScoreKind kind) {
    const double s = dot(x, ry);
    if (kind == ScoreKind::Dot) return s;
    const double nx = norm2(x);
    const double ny = norm2(ry);
    if (nx == 0.0 || ny == 0.0) return 0.0;
    return s / (nx * ny);
}

void require_range(std::int64_t lo, std::int64_t hi, const char* what) {
    if (lo > hi) throw EmptyRange(std::string(what) + ": empty shift range");
}

} // namespace

Element axis_shift(const Element& x, std::size_t axis, std::int64_t s) {
    if (!x.basis) throw Error("axis_shift: element has no basis");
    if (axis >= x.basis->axes()) throw AxisOutOfRange("axis_shift: axis out of range");
    Element out = x;
    out.content = apply_pow(x.basis->transform(axis), s, x.content);
    std::int64_t p = 0;
    if (__builtin_add_overflow(x.powers[axis], s, &p)) throw PowerOverflow("axis_shift: power overflow");
    out.powers[axis] = p;
    return out;
}

AlignmentResult align(std::span<const double> x, std::span<const double> y, const Transform& r,
                      std::int64_t lo, std::int64_t hi, ScoreKind kind) {
    const std::size_t d = dim(r);
    if (x.size() != d || y.size() != d) throw DimMismatch("align: embedding width does not match transform dim");
    require_range(lo, hi, "align");
    AlignmentResult res;
    res.lo = lo;
    res.hi = hi;
    res.scores.reserve(static_cast<std::size_t>(hi - lo + 1));
    bool first = true;
    for (std::int64_t s = lo; s <= hi; ++s) {
        const Vec ry = apply_pow(r, s, y);
        const double sc = score_at(x, ry, kind);
        res.scores.push_back(sc);
        if (first || sc > res.score) {
            res.score = sc;
            res.shift = s;
            first = false;
        }
    }
    return res;
}

AlignmentResult2D align_2d(std::span<const double> x, std::span<const double> y,
                           const Transform& rx, const Transform& ry,
                           std::int64_t lo_x, std::int64_t hi_x,
                           std::int64_t lo_y, std::int64_t hi_y, ScoreKind kind) {
    const std::size_t d = dim(rx);
    if (dim(ry) != d) throw DimMismatch("align_2d: axis transform dims differ");
    if (x.size() != d || y.size() != d) throw DimMismatch("align_2d: embedding width does not match transform dim");
    require_range(lo_x, hi_x, "align_2d");
    require_range(lo_y, hi_y, "align_2d");
    AlignmentResult2D res;
    res.lo_x = lo_x;
    res.hi_x = hi_x;
    res.lo_y = lo_y;
    res.hi_y = hi_y;
    res.scores = Matrix(static_cast<std::size_t>(hi_x - lo_x + 1),
                        static_cast<std::size_t>(hi_y - lo_y + 1));
    bool first = true;
    for (std::int64_t sx = lo_x; sx <= hi_x; ++sx) {
        const Vec yx = apply_pow(rx, sx, y);
        for (std::int64_t sy = lo_y; sy <= hi_y; ++sy) {
            const Vec ryy = apply_pow(ry, sy, yx);
            const double sc = score_at(x, ryy, kind);
            res.scores(static_cast<std::size_t>(sx - lo_x), static_cast<std::size_t>(sy - lo_y)) = sc;
            if (first || sc > res.score) {
                res.score = sc;
                res.shift_x = sx;
                res.shift_y = sy;
                first = false;
            }
        }
    }
    return res;
}

Element concat(const Element& x, const Element& y, std::size_t axis, ConcatMode mode) {
    if (mode == ConcatMode::Strict) return compose_axis(x, y, axis);
    if (!x.basis || x.basis != y.basis) throw BasisMismatch("concat: elements share no basis");
    if (axis >= x.basis->axes()) throw AxisOutOfRange("concat: axis out of range");
    Element out;
    out.basis = x.basis;
    out.powers.resize(x.powers.size());
    for (std::size_t i = 0; i < x.powers.size(); ++i) {
        if (i == axis) {
            if (__builtin_add_overflow(x.powers[i], y.powers[i], &out.powers[i]))
                throw PowerOverflow("concat: power overflow");
        } else {
            out.powers[i] = std::max(x.powers[i], y.powers[i]);
        }
    }
    out.content = x.content;
    add_inplace(out.content, apply_pow(x.basis->transform(axis), x.powers[axis], y.content));
    return out;
}

Element concat_recover_right(const Element& z, const Element& x, std::size_t axis) {
    if (!z.basis || z.basis != x.basis) throw BasisMismatch("concat_recover_right: elements share no basis");
    if (axis >= z.basis->axes()) throw AxisOutOfRange("concat_recover_right: axis out of range");
    Element y;
    y.basis = z.basis;
    y.powers = z.powers;
    for (std::size_t i = 0; i < y.powers.size(); ++i)
        if (i != axis) y.powers[i] = x.powers[i];
    y.powers[axis] = z.powers[axis] - x.powers[axis];
    const Vec diff = sub(z.content, x.content);
    y.content = apply_pow(z.basis->transform(axis), -x.powers[axis], diff);
    return y;
}

Element concat_recover_left(const Element& z, const Element& y, std::size_t axis) {
    if (!z.basis || z.basis != y.basis) throw BasisMismatch("concat_recover_left: elements share no basis");
    if (axis >= z.basis->axes()) throw AxisOutOfRange("concat_recover_left: axis out of range");
    Element x;
    x.basis = z.basis;
    x.powers = z.powers;
    for (std::size_t i = 0; i < x.powers.size(); ++i)
        if (i != axis) x.powers[i] = y.powers[i];
    x.powers[axis] = z.powers[axis] - y.powers[axis];
    x.content = sub(z.content,
                    apply_pow(z.basis->transform(axis), x.powers[axis], y.content));
    return x;
}

} // namespace dnmc

#include "dnmc/algebra.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <utility>

#include "dnmc/errors.hpp"

namespace dnmc {

AxisBasis::AxisBasis(std::vector<Transform> transforms) : transforms_(std::move(transforms)) {
    if (transforms_.empty()) throw AxisOutOfRange("axis basis needs at least one transform");
    dim_ = dnmc::dim(transforms_[0]);
    rotation_backend_ = is_rotation(transforms_[0]);
    for (const Transform& t : transforms_) {
        if (dnmc::dim(t) != dim_) throw DimMismatch("axis basis transforms must share one dimension");
        if (is_rotation(t) != rotation_backend_) {
            throw BasisMismatch("axis basis must use one backend for all axes");
        }
    }
    if (rotation_backend_) {
        commuting_verified_ = true; // angle addition commutes exactly
    } else {
        commuting_verified_ = true;
        for (std::size_t i = 0; i + 1 < transforms_.size() && commuting_verified_; ++i) {
            for (std::size_t j = i + 1; j < transforms_.size(); ++j) {
                if (commutator_residual(transforms_[i], transforms_[j]) >= kCommuteTolerance) {
                    commuting_verified_ = false;
                    break;
                }
            }
        }
    }
}

std::shared_ptr<const AxisBasis> AxisBasis::make_rotation(std::vector<BlockRotation> transforms) {
    std::vector<Transform> ts;
    ts.reserve(transforms.size());
    for (BlockRotation& r : transforms) ts.emplace_back(std::move(r));
    return std::shared_ptr<const AxisBasis>(new AxisBasis(std::move(ts)));
}

std::shared_ptr<const AxisBasis> AxisBasis::make_dense(std::vector<DenseTransform> transforms) {
    std::vector<Transform> ts;
    ts.reserve(transforms.size());
    for (DenseTransform& t : transforms) ts.emplace_back(std::move(t));
    return std::shared_ptr<const AxisBasis>(new AxisBasis(std::move(ts)));
}

const Transform& AxisBasis::transform(std::size_t k) const {
    if (k >= transforms_.size()) throw AxisOutOfRange("axis index out of range");
    return transforms_[k];
}

Element make_element(Vec content, std::vector<std::int64_t> powers, BasisPtr basis) {
    if (!basis) throw BasisMismatch("element needs a basis");
    if (content.size() != basis->dim()) throw DimMismatch("element content dimension mismatch");
    if (powers.size() != basis->axes()) throw AxisMismatch("element power count mismatch");
    return Element{std::move(content), std::move(powers), std::move(basis)};
}

Element identity_element(BasisPtr basis) {
    if (!basis) throw BasisMismatch("identity_element needs a basis");
    Vec zero(basis->dim(), 0.0);
    std::vector<std::int64_t> powers(basis->axes(), 0);
    return Element{std::move(zero), std::move(powers), std::move(basis)};
}

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw PowerOverflow("axis power addition overflows int64");
    }
    return out;
}

void require_same_basis(const Element& x, const Element& y) {
    if (x.basis != y.basis) throw BasisMismatch("elements belong to different bases");
}

} // namespace

Element compose_axis(const Element& x, const Element& y, std::size_t k) {
    require_same_basis(x, y);
    const AxisBasis& basis = *x.basis;
    if (k >= basis.axes()) throw AxisOutOfRange("compose_axis: axis index out of range");
    for (std::size_t j = 0; j < basis.axes(); ++j) {
        if (j != k && x.powers[j] != y.powers[j]) {
            throw AxisMismatch("compose_axis: powers differ on an off axis");
        }
    }
    Element out;
    out.basis = x.basis;
    out.powers = x.powers;
    out.powers[k] = checked_add(x.powers[k], y.powers[k]);
    out.content = add(x.content, apply_pow(basis.transform(k), x.powers[k], y.content));
    return out;
}

Element inverse_element(const Element& x, std::size_t k) {
    const AxisBasis& basis = *x.basis;
    if (k >= basis.axes()) throw AxisOutOfRange("inverse_element: axis index out of range");
    for (std::size_t j = 0; j < basis.axes(); ++j) {
        if (j != k && x.powers[j] != 0) {
            throw AxisMismatch("inverse_element: off-axis powers must be zero");
        }
    }
    Element out;
    out.basis = x.basis;
    out.powers = x.powers;
    out.powers[k] = -x.powers[k];
    out.content = scaled(apply_pow(basis.transform(k), -x.powers[k], x.content), -1.0);
    return out;
}

Element formal_inverse(const Element& x) {
    const AxisBasis& basis = *x.basis;
    Element out;
    out.basis = x.basis;
    out.powers.resize(x.powers.size());
    Vec v = x.content;
    for (std::size_t k = 0; k < x.powers.size(); ++k) {
        out.powers[k] = -x.powers[k];
        v = apply_pow(basis.transform(k), -x.powers[k], v);
    }
    out.content = scaled(v, -1.0);
    return out;
}

AffinePair compose_1d(const AffinePair& x, const AffinePair& y) {
    if (x.offset.size() != y.offset.size() || dim(x.transform) != x.offset.size()) {
        throw DimMismatch("compose_1d: dimension mismatch");
    }
    return AffinePair{add(x.offset, dnmc::apply(x.transform, y.offset)),
                      compose(x.transform, y.transform)};
}

InterchangeReport check_interchange(const BasisPtr& basis, std::size_t i, std::size_t j,
                                    std::size_t samples, std::uint64_t seed) {
    if (!basis || i >= basis->axes() || j >= basis->axes() || i == j) {
        throw AxisOutOfRange("check_interchange: needs two distinct valid axes");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_int_distribution<std::int64_t> small_pow(-3, 3);

    InterchangeReport report;
    report.samples = samples;
    report.seed = seed;
    report.holds = true;

    const std::size_t d = basis->dim();
    const std::size_t axes = basis->axes();

    for (std::size_t s = 0; s < samples; ++s) {
        // Constrained powers so both sides of the law are defined:
        // all four agree off {i,j}; x,z share power p on axis i and y,w share
        // q; x,y share power r on axis j and z,w share t.
        std::vector<std::int64_t> common(axes, 0);
        for (std::size_t a = 0; a < axes; ++a) common[a] = small_pow(rng);
        const std::int64_t p = small_pow(rng), q = small_pow(rng);
        const std::int64_t r = small_pow(rng), t = small_pow(rng);

        auto fresh = [&](std::int64_t pi, std::int64_t pj) {
            Vec v(d);
            for (double& e : v) e = gauss(rng);
            std::vector<std::int64_t> powers = common;
            powers[i] = pi;
            powers[j] = pj;
            return Element{std::move(v), std::move(powers), basis};
        };
        Element x = fresh(p, r), y = fresh(q, r), z = fresh(p, t), w = fresh(q, t);

        const Element lhs = compose_axis(compose_axis(x, y, i), compose_axis(z, w, i), j);
        const Element rhs = compose_axis(compose_axis(x, z, j), compose_axis(y, w, j), i);

        double residual = max_abs_diff(lhs.content, rhs.content);
        if (lhs.powers != rhs.powers) residual = std::numeric_limits<double>::infinity();
        report.max_residual = std::max(report.max_residual, residual);
        if (residual >= kInterchangeTolerance && report.holds) {
            report.holds = false;
            report.counterexample = InterchangeQuadruple{std::move(x), std::move(y),
                                                         std::move(z), std::move(w)};
        }
    }
    return report;
}

} // namespace dnmc

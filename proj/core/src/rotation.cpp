#include "dnmc/rotation.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "dnmc/errors.hpp"

namespace dnmc {

AngleVector canonicalized(const AngleVector& a) {
    AngleVector out = a;
    for (double& t : out.angles) {
        t = std::remainder(t, 2.0 * std::numbers::pi);
        if (t == -std::numbers::pi) t = std::numbers::pi; // (-pi, pi]
    }
    return out;
}

BlockRotation::BlockRotation(AngleVector base) : base_(std::move(base)) {
    if (base_.angles.empty()) throw NonFiniteAngle("block rotation needs at least one angle");
    cos_.reserve(base_.angles.size());
    sin_.reserve(base_.angles.size());
    for (double t : base_.angles) {
        if (!std::isfinite(t)) throw NonFiniteAngle("block rotation angle is not finite");
        cos_.push_back(std::cos(t));
        sin_.push_back(std::sin(t));
    }
}

BlockRotation BlockRotation::from_angles(std::vector<double> angles) {
    return BlockRotation(AngleVector{std::move(angles)});
}

BlockRotation BlockRotation::identity(std::size_t dim) {
    if (dim == 0 || dim % 2 != 0) {
        throw DimMismatch("block rotation dimension must be even and positive");
    }
    return BlockRotation(AngleVector{std::vector<double>(dim / 2, 0.0)});
}

Vec BlockRotation::apply(std::span<const double> v) const {
    if (v.size() != dim()) throw DimMismatch("rotation apply: vector dimension mismatch");
    Vec out(v.size());
    for (std::size_t b = 0; b < blocks(); ++b) {
        const double c = cos_[b];
        const double s = sin_[b];
        const double x = v[2 * b];
        const double y = v[2 * b + 1];
        out[2 * b] = c * x - s * y;
        out[2 * b + 1] = s * x + c * y;
    }
    return out;
}

BlockRotation BlockRotation::compose(const BlockRotation& other) const {
    if (dim() != other.dim()) throw DimMismatch("rotation compose: dimension mismatch");
    AngleVector sum = base_;
    std::vector<double> cs(blocks()), sn(blocks());
    for (std::size_t b = 0; b < sum.angles.size(); ++b) {
        sum.angles[b] += other.base_.angles[b];
        cs[b] = cos_[b] * other.cos_[b] - sin_[b] * other.sin_[b];
        sn[b] = sin_[b] * other.cos_[b] + cos_[b] * other.sin_[b];
    }
    return BlockRotation(std::move(sum), std::move(cs), std::move(sn), Cached{});
}

BlockRotation BlockRotation::pow(std::int64_t n) const {
    AngleVector scaled = base_;
    for (double& t : scaled.angles) t *= static_cast<double>(n);
    return BlockRotation(std::move(scaled));
}

DenseTransform BlockRotation::to_dense() const {
    Matrix m(dim(), dim());
    for (std::size_t b = 0; b < blocks(); ++b) {
        const double c = cos_[b];
        const double s = sin_[b];
        m(2 * b, 2 * b) = c;
        m(2 * b, 2 * b + 1) = -s;
        m(2 * b + 1, 2 * b) = s;
        m(2 * b + 1, 2 * b + 1) = c;
    }
    return DenseTransform(std::move(m));
}

Vec BlockRotation::apply_dtheta(std::int64_t n, std::span<const double> v, std::size_t block) const {
    if (v.size() != dim()) throw DimMismatch("rotation derivative: vector dimension mismatch");
    if (block >= blocks()) throw BlockOutOfRange("rotation derivative: block index out of range");
    Vec out(v.size(), 0.0);
    if (n == 0) return out;
    const double nn = static_cast<double>(n);
    const double phase = nn * base_.angles[block] + std::numbers::pi / 2.0;
    const double c = std::cos(phase);
    const double s = std::sin(phase);
    const double x = v[2 * block];
    const double y = v[2 * block + 1];
    out[2 * block] = nn * (c * x - s * y);
    out[2 * block + 1] = nn * (s * x + c * y);
    return out;
}

DenseTransform::DenseTransform(Matrix m) : m_(std::move(m)) {
    if (m_.rows != m_.cols || m_.rows == 0) {
        throw DimMismatch("dense transform must be square and non-empty");
    }
    const LuFactor f = lu_factor(m_);
    if (f.singular || std::abs(lu_det(f)) <= kDetThreshold) {
        throw SingularMatrix("dense transform is not invertible (|det| <= 1e-12)");
    }
}

DenseTransform DenseTransform::identity(std::size_t dim) {
    return DenseTransform(Matrix::identity(dim));
}

Vec DenseTransform::apply(std::span<const double> v) const {
    if (v.size() != dim()) throw DimMismatch("dense apply: vector dimension mismatch");
    return matvec(m_, v);
}

DenseTransform DenseTransform::compose(const DenseTransform& other) const {
    if (dim() != other.dim()) throw DimMismatch("dense compose: dimension mismatch");
    return DenseTransform(matmul(m_, other.m_), Unchecked{});
}

DenseTransform DenseTransform::inverse() const {
    return DenseTransform(lu_inverse(lu_factor(m_)), Unchecked{});
}

DenseTransform DenseTransform::pow(std::int64_t n) const {
    if (n == 0) return identity(dim());
    Matrix base = m_;
    if (n < 0) base = lu_inverse(lu_factor(m_));
    std::uint64_t e = (n < 0) ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
    Matrix acc = Matrix::identity(dim());
    while (e > 0) {
        if (e & 1u) acc = matmul(acc, base);
        base = matmul(base, base);
        e >>= 1u;
    }
    return DenseTransform(std::move(acc), Unchecked{});
}

} // namespace dnmc

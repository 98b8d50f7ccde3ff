#include "dnmc/transform.hpp"

#include "dnmc/errors.hpp"

namespace dnmc {

std::size_t dim(const Transform& t) {
    return std::visit([](const auto& x) { return x.dim(); }, t);
}

bool is_rotation(const Transform& t) {
    return std::holds_alternative<BlockRotation>(t);
}

Vec apply(const Transform& t, std::span<const double> v) {
    return std::visit([&](const auto& x) { return x.apply(v); }, t);
}

Vec apply_pow(const Transform& t, std::int64_t n, std::span<const double> v) {
    return std::visit([&](const auto& x) { return x.pow(n).apply(v); }, t);
}

Transform compose(const Transform& a, const Transform& b) {
    if (a.index() != b.index()) {
        throw BasisMismatch("compose: mixed transform backends");
    }
    if (is_rotation(a)) {
        return std::get<BlockRotation>(a).compose(std::get<BlockRotation>(b));
    }
    return std::get<DenseTransform>(a).compose(std::get<DenseTransform>(b));
}

Transform pow(const Transform& t, std::int64_t n) {
    return std::visit([&](const auto& x) -> Transform { return x.pow(n); }, t);
}

Transform inverse(const Transform& t) {
    return std::visit([](const auto& x) -> Transform { return x.inverse(); }, t);
}

Transform identity_like(const Transform& t) {
    if (is_rotation(t)) return BlockRotation::identity(dim(t));
    return DenseTransform::identity(dim(t));
}

DenseTransform to_dense(const Transform& t) {
    if (is_rotation(t)) return std::get<BlockRotation>(t).to_dense();
    return std::get<DenseTransform>(t);
}

double commutator_residual(const Transform& a, const Transform& b) {
    if (dim(a) != dim(b)) throw DimMismatch("commutator: dimension mismatch");
    const DenseTransform da = to_dense(a);
    const DenseTransform db = to_dense(b);
    return max_abs_diff(matmul(da.matrix(), db.matrix()), matmul(db.matrix(), da.matrix()));
}

} // namespace dnmc

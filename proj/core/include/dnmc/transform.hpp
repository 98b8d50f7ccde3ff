#ifndef DNMC_TRANSFORM_HPP
#define DNMC_TRANSFORM_HPP

#include <cstdint>
#include <span>
#include <variant>

#include "dnmc/rotation.hpp"

namespace dnmc {

/// One axis transform: the O(d) block-rotation fast path or the dense
/// oracle. Bases mix the two backends never; generic code goes through
/// these helpers.
using Transform = std::variant<BlockRotation, DenseTransform>;

std::size_t dim(const Transform& t);
bool is_rotation(const Transform& t);

Vec apply(const Transform& t, std::span<const double> v);
Vec apply_pow(const Transform& t, std::int64_t n, std::span<const double> v);
Transform compose(const Transform& a, const Transform& b);
Transform pow(const Transform& t, std::int64_t n);
Transform inverse(const Transform& t);
Transform identity_like(const Transform& t);
DenseTransform to_dense(const Transform& t);

/// Entrywise max-abs of AB - BA in dense form; < 1e-9 is the commutation
/// test the interchange law is equivalent to.
double commutator_residual(const Transform& a, const Transform& b);

inline constexpr double kCommuteTolerance = 1e-9;

} // namespace dnmc

#endif // DNMC_TRANSFORM_HPP

#ifndef DNMC_TENSOR_HPP
#define DNMC_TENSOR_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace dnmc {

/// Dense row-major tensor of doubles. The last axis is the embedding
/// dimension everywhere in this library ([T,d] signals, [H,W,d] grids, ...).
struct Tensor {
    std::vector<std::size_t> shape;
    std::vector<double> data;

    Tensor() = default;
    explicit Tensor(std::vector<std::size_t> s);
    Tensor(std::vector<std::size_t> s, std::vector<double> d);

    std::size_t rank() const { return shape.size(); }
    std::size_t size() const { return data.size(); }

    /// Product of all axes after the first; row(i) views slice i of axis 0.
    std::size_t row_size() const;
    std::span<double> row(std::size_t i);
    std::span<const double> row(std::size_t i) const;
};

std::size_t shape_product(std::span<const std::size_t> shape);
double max_abs_diff(const Tensor& a, const Tensor& b);

} // namespace dnmc

#endif // DNMC_TENSOR_HPP

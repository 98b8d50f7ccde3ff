#include "dnmc/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "dnmc/errors.hpp"

namespace dnmc {

std::size_t shape_product(std::span<const std::size_t> shape) {
    std::size_t n = 1;
    for (std::size_t s : shape) n *= s;
    return n;
}

Tensor::Tensor(std::vector<std::size_t> s) : shape(std::move(s)) {
    data.assign(shape_product(shape), 0.0);
}

Tensor::Tensor(std::vector<std::size_t> s, std::vector<double> d)
    : shape(std::move(s)), data(std::move(d)) {
    if (data.size() != shape_product(shape)) {
        throw DimMismatch("tensor data size does not match shape");
    }
}

std::size_t Tensor::row_size() const {
    if (shape.empty()) return 0;
    return shape_product(std::span<const std::size_t>(shape).subspan(1));
}

std::span<double> Tensor::row(std::size_t i) {
    const std::size_t rs = row_size();
    return std::span<double>(data).subspan(i * rs, rs);
}

std::span<const double> Tensor::row(std::size_t i) const {
    const std::size_t rs = row_size();
    return std::span<const double>(data).subspan(i * rs, rs);
}

double max_abs_diff(const Tensor& a, const Tensor& b) {
    if (a.shape != b.shape) throw DimMismatch("tensor max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        m = std::max(m, std::abs(a.data[i] - b.data[i]));
    }
    return m;
}

} // namespace dnmc

#include "dnmc/random.hpp"

#include <cmath>

#include "dnmc/errors.hpp"
#include "dnmc/transform.hpp"

namespace dnmc {

Vec random_vec(Rng& rng, std::size_t n, double scale) {
    Vec v(n);
    for (auto& x : v) x = scale * rng.normal();
    return v;
}

Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, double scale) {
    Matrix m(rows, cols);
    for (auto& x : m.data) x = scale * rng.normal();
    return m;
}

Matrix random_orthogonal(Rng& rng, std::size_t n) {
    // Gram-Schmidt on Gaussian columns; restart a column on (vanishingly
    // unlikely) near-dependence.
    Matrix q(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (;;) {
            Vec col(n);
            for (auto& x : col) x = rng.normal();
            for (std::size_t k = 0; k < j; ++k) {
                double proj = 0.0;
                for (std::size_t i = 0; i < n; ++i) proj += q(i, k) * col[i];
                for (std::size_t i = 0; i < n; ++i) col[i] -= proj * q(i, k);
            }
            const double nrm = norm2(col);
            if (nrm > 1e-8) {
                for (std::size_t i = 0; i < n; ++i) q(i, j) = col[i] / nrm;
                break;
            }
        }
    }
    return q;
}

BlockRotation random_block_rotation(Rng& rng, std::size_t dim, double max_angle) {
    if (dim == 0 || dim % 2 != 0) throw DimMismatch("random_block_rotation: dim must be even and positive");
    AngleVector av;
    av.angles.resize(dim / 2);
    for (auto& a : av.angles) a = rng.uniform(-max_angle, max_angle);
    return BlockRotation(av);
}

DenseTransform random_dense_transform(Rng& rng, std::size_t dim) {
    Matrix q = random_orthogonal(rng, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const double s = rng.uniform(0.5, 2.0);
        for (std::size_t r = 0; r < dim; ++r) q(r, i) *= s;
    }
    return DenseTransform(std::move(q));
}

std::pair<DenseTransform, DenseTransform> noncommuting_dense_pair(Rng& rng, std::size_t dim,
                                                                  double min_residual) {
    if (dim < 2) throw DimMismatch("noncommuting_dense_pair: dim must be >= 2");
    for (int attempt = 0; attempt < 64; ++attempt) {
        DenseTransform a = random_dense_transform(rng, dim);
        DenseTransform b = random_dense_transform(rng, dim);
        if (commutator_residual(Transform(a), Transform(b)) > min_residual)
            return {std::move(a), std::move(b)};
    }
    throw Error("noncommuting_dense_pair: could not find a pair (dim too small?)");
}

} // namespace dnmc

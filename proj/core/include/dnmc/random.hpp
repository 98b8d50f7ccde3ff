#ifndef DNMC_RANDOM_HPP
#define DNMC_RANDOM_HPP

#include <cstdint>
#include <random>
#include <utility>

#include "dnmc/rotation.hpp"

namespace dnmc {

/// Seeded generator for the property-check suites. Deterministic for a fixed
/// seed on a given platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform(double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(gen_);
    }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return std::uniform_int_distribution<std::int64_t>(lo, hi)(gen_);
    }
    std::uint64_t next() { return gen_(); }
    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

Vec random_vec(Rng& rng, std::size_t n, double scale = 1.0);
Matrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, double scale = 1.0);

/// Random orthogonal matrix (Gram-Schmidt of a Gaussian matrix); orthogonal
/// matrices keep long products and inverses perfectly conditioned while
/// being non-commuting in general.
Matrix random_orthogonal(Rng& rng, std::size_t n);

BlockRotation random_block_rotation(Rng& rng, std::size_t dim, double max_angle = 3.0);

/// Well-conditioned invertible dense transform: random orthogonal times a
/// random diagonal in [0.5, 2].
DenseTransform random_dense_transform(Rng& rng, std::size_t dim);

/// Two dense transforms whose commutator residual exceeds min_residual
/// (retries until it does).
std::pair<DenseTransform, DenseTransform> noncommuting_dense_pair(Rng& rng, std::size_t dim,
                                                                  double min_residual = 1e-3);

} // namespace dnmc

#endif // DNMC_RANDOM_HPP

#ifndef DNMC_LINALG_HPP
#define DNMC_LINALG_HPP

#include <cstddef>
#include <span>
#include <vector>

namespace dnmc {

using Vec = std::vector<double>;

/// Dense row-major matrix. Rectangular in general; routines that need a
/// square input check it themselves.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}
    Matrix(std::size_t r, std::size_t c, std::vector<double> d);

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    static Matrix identity(std::size_t n);
};

Matrix matmul(const Matrix& a, const Matrix& b);
Vec matvec(const Matrix& m, std::span<const double> v);
Matrix transpose(const Matrix& m);
Matrix mat_add(const Matrix& a, const Matrix& b);
Matrix mat_sub(const Matrix& a, const Matrix& b);

/// Entrywise max-abs of (a - b); the residual norm used by the algebraic
/// law checks. Shapes must match.
double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs(const Matrix& m);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> v);
double max_abs(std::span<const double> v);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
Vec add(std::span<const double> a, std::span<const double> b);
Vec sub(std::span<const double> a, std::span<const double> b);
Vec scaled(std::span<const double> v, double c);
void add_inplace(Vec& a, std::span<const double> b);

/// LU factorization with partial pivoting, stored packed (unit-lower L and
/// U share `lu`). `singular` flags an exactly zero pivot.
struct LuFactor {
    Matrix lu;
    std::vector<std::size_t> perm;
    int sign = 1;
    bool singular = false;
};

LuFactor lu_factor(const Matrix& m);
double lu_det(const LuFactor& f);
Vec lu_solve(const LuFactor& f, std::span<const double> rhs);
Matrix lu_inverse(const LuFactor& f);

} // namespace dnmc

#endif // DNMC_LINALG_HPP

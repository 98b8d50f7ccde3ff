#ifndef DNMC_ROTATION_HPP
#define DNMC_ROTATION_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "dnmc/linalg.hpp"

namespace dnmc {

/// Per-block rotation angles (radians) of a block-diagonal orthogonal
/// transform on R^d, d = 2 * angles.size(). Angles are stored unreduced so
/// integer powers and compositions stay exact in angle space;
/// canonicalized() reduces into (-pi, pi] on request.
struct AngleVector {
    std::vector<double> angles;

    std::size_t dim() const { return 2 * angles.size(); }
    bool operator==(const AngleVector&) const = default;
};

AngleVector canonicalized(const AngleVector& a);

class DenseTransform;

/// Block-diagonal orthogonal transform built from independent 2x2 rotations.
/// Composition is elementwise angle addition, so equal-dim block rotations
/// commute exactly and both compose and apply cost O(d).
class BlockRotation {
public:
    explicit BlockRotation(AngleVector base);
    static BlockRotation from_angles(std::vector<double> angles);
    static BlockRotation identity(std::size_t dim);

    std::size_t dim() const { return base_.dim(); }
    std::size_t blocks() const { return base_.angles.size(); }
    const AngleVector& base() const { return base_; }

    /// Per-block cos/sin fixed at construction; lets fold kernels run the 2x2
    /// blocks in place without per-row temporaries.
    std::span<const double> cos_cache() const { return cos_; }
    std::span<const double> sin_cache() const { return sin_; }

    Vec apply(std::span<const double> v) const;
    BlockRotation compose(const BlockRotation& other) const;
    BlockRotation pow(std::int64_t n) const;
    BlockRotation inverse() const { return pow(-1); }
    BlockRotation canonical() const { return BlockRotation(canonicalized(base_)); }
    DenseTransform to_dense() const;

    /// Analytic derivative of pow(n).apply(v) with respect to the angle of
    /// one block: zero outside `block`, n * rotation-by-(n*theta + pi/2)
    /// inside it.
    Vec apply_dtheta(std::int64_t n, std::span<const double> v, std::size_t block) const;

private:
    struct Cached {};
    BlockRotation(AngleVector base, std::vector<double> cs, std::vector<double> sn, Cached)
        : base_(std::move(base)), cos_(std::move(cs)), sin_(std::move(sn)) {}

    AngleVector base_;
    // cos/sin per block, fixed at construction. compose() derives the cache of
    // the product from the operand caches by the angle-addition identities, so
    // long fold chains never touch libm.
    std::vector<double> cos_, sin_;
};

/// General invertible dense transform; the unstructured oracle backend for
/// everything the block-rotation fast path claims. Invertibility is checked
/// at construction (LU with partial pivoting, |det| > kDetThreshold).
class DenseTransform {
public:
    static constexpr double kDetThreshold = 1e-12;

    explicit DenseTransform(Matrix m);
    static DenseTransform identity(std::size_t dim);

    std::size_t dim() const { return m_.rows; }
    const Matrix& matrix() const { return m_; }

    Vec apply(std::span<const double> v) const;
    DenseTransform compose(const DenseTransform& other) const; // this * other
    DenseTransform inverse() const;
    DenseTransform pow(std::int64_t n) const;

private:
    // Products, powers and inverses of checked transforms are invertible by
    // construction; re-running the determinant test on them would spuriously
    // reject long products whose det under/overflows.
    struct Unchecked {};
    DenseTransform(Matrix m, Unchecked) : m_(std::move(m)) {}

    Matrix m_;
};

} // namespace dnmc

#endif // DNMC_ROTATION_HPP

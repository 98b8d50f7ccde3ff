#ifndef DNMC_ALGEBRA_HPP
#define DNMC_ALGEBRA_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "dnmc/transform.hpp"

namespace dnmc {

/// Immutable family of per-axis transforms sharing one dimension and one
/// backend. commuting_verified() reports whether every pair passes the
/// dense commutator test at 1e-9 (block rotations commute by construction).
class AxisBasis {
public:
    static std::shared_ptr<const AxisBasis> make_rotation(std::vector<BlockRotation> transforms);
    static std::shared_ptr<const AxisBasis> make_dense(std::vector<DenseTransform> transforms);

    std::size_t dim() const { return dim_; }
    std::size_t axes() const { return transforms_.size(); }
    const Transform& transform(std::size_t k) const;
    bool commuting_verified() const { return commuting_verified_; }
    bool rotation_backend() const { return rotation_backend_; }

private:
    explicit AxisBasis(std::vector<Transform> transforms);

    std::vector<Transform> transforms_;
    std::size_t dim_ = 0;
    bool commuting_verified_ = false;
    bool rotation_backend_ = false;
};

using BasisPtr = std::shared_ptr<const AxisBasis>;

/// (content; R_1^{n_1}, ..., R_D^{n_D}): a content vector plus one signed
/// integer transform power per axis of a shared basis.
struct Element {
    Vec content;
    std::vector<std::int64_t> powers;
    BasisPtr basis;
};

Element make_element(Vec content, std::vector<std::int64_t> powers, BasisPtr basis);
Element identity_element(BasisPtr basis);

/// Axis-k composition. Defined only when x and y share the basis and agree
/// on every power off axis k; the content update uses x's power on k:
/// content = a + R_k^{n_k} b, power_k = n_k + m_k.
Element compose_axis(const Element& x, const Element& y, std::size_t k);

/// Axis-local inverse: requires all off-axis powers zero so that the
/// composition with the result is defined and yields the identity.
Element inverse_element(const Element& x, std::size_t k);

/// Negates every power and counter-rotates the content. Unlike
/// inverse_element this is defined for any element but carries no
/// composition guarantee.
Element formal_inverse(const Element& x);

/// 1D affine pair (a, A) with (a,A)∘(b,B) = (a + Ab, AB).
struct AffinePair {
    Vec offset;
    Transform transform;
};

AffinePair compose_1d(const AffinePair& x, const AffinePair& y);

struct InterchangeQuadruple {
    Element x, y, z, w;
};

struct InterchangeReport {
    bool holds = false;
    double max_residual = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::optional<InterchangeQuadruple> counterexample;
};

/// Samples random valid quadruples and evaluates both sides of
/// (x ∘_i y) ∘_j (z ∘_i w) = (x ∘_j z) ∘_i (y ∘_j w). holds is true iff the
/// max content residual stays below 1e-9 with powers matching exactly,
/// which happens iff R_i and R_j commute.
InterchangeReport check_interchange(const BasisPtr& basis, std::size_t i, std::size_t j,
                                    std::size_t samples, std::uint64_t seed);

inline constexpr double kInterchangeTolerance = 1e-9;

} // namespace dnmc

#endif // DNMC_ALGEBRA_HPP

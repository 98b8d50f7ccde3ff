#ifndef DNMC_ATTENTION_HPP
#define DNMC_ATTENTION_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "dnmc/rotation.hpp"
#include "dnmc/tensor.hpp"
#include "dnmc/transform.hpp"

namespace dnmc {

/// Relative transforms along a sequence of positions 0..T-1. step(q) carries
/// content from position q to q+1; the journey from q to p > q is the
/// right-to-left product R_{p-1} ... R_q (R_q applied first).
///
/// relative(p, q) is defined for every ordered pair through the prefix cache
/// G_p = R_{p-1} ... R_0 as G_p ∘ G_q^{-1}, which makes the chain rule
/// relative(p,q) ∘ relative(q,r) == relative(p,r) hold for all triples. A
/// tied journey reduces to plain powers: relative(p, q) == R^{p-q}.
class JourneyTransforms {
public:
    static JourneyTransforms tied(Transform r, std::size_t length);
    /// steps[q] maps q -> q+1; covers steps.size() + 1 positions. Steps must
    /// be invertible (dense steps are checked on construction).
    static JourneyTransforms per_position(std::vector<Transform> steps);

    std::size_t length() const { return length_; }
    std::size_t dim() const;
    bool is_tied() const { return tied_; }

    const Transform& step(std::size_t q) const;
    const Transform& inverse_step(std::size_t q) const;
    Transform relative(std::int64_t p, std::int64_t q) const;
    /// Prefix product G_p; G_0 is the identity.
    Transform cache(std::size_t p) const;

private:
    JourneyTransforms() = default;

    bool tied_ = false;
    std::size_t length_ = 0;
    std::vector<Transform> steps_;     // tied: exactly one entry
    std::vector<Transform> inv_steps_; // parallel to steps_
    std::vector<Transform> g_;         // per-position only
    std::vector<Transform> g_inv_;     // per-position only
};

struct AttendOptions {
    bool causal = false;
    /// Multiplies scores before the softmax; raw scores are reported
    /// unscaled either way.
    double scale = 1.0;
    /// Bypasses the softmax: output_p = sum_q w[p][q] relative(p,q) V_q.
    /// Must be T x T; causal masking still zeroes q > p.
    std::optional<Matrix> forced_weights;
};

struct AttendResult {
    Tensor output;  ///< T x d
    Matrix scores;  ///< raw Q_p . relative(p,q) K_q; masked entries are 0
    Matrix weights; ///< softmax rows (or the forced weights); masked are 0
};

/// Relative-position attention: score(p,q) = Q_p . relative(p,q) K_q,
/// weights = softmax over the visible row, output_p = sum_q alpha_pq
/// relative(p,q) V_q. Causal rows build the journey products by extending
/// one step at a time, so no transform inverse enters the computation;
/// non-causal pairs q > p extend with inverse steps instead.
AttendResult attend(const Tensor& q, const Tensor& k, const Tensor& v,
                    const JourneyTransforms& journey, const AttendOptions& opt = {});

/// Multi-axis variant: token t sits at integer coordinates coords[t] (one
/// entry per axis) and relative(p,q) = prod_a R_a^{coords[p][a]-coords[q][a]},
/// applied with axis 0 outermost. Causality follows token order.
AttendResult attend_nd(const Tensor& q, const Tensor& k, const Tensor& v,
                       const std::vector<Transform>& axis_transforms,
                       const std::vector<std::vector<std::int64_t>>& coords,
                       const AttendOptions& opt = {});

/// Rotary reference: scores(p,q) = < R^p Q_p, R^q K_q > with the block
/// rotation applied at absolute positions. Equals the relative-position
/// scores under the tied journey R^{-1}.
Matrix rope_reference(const Tensor& q, const Tensor& k, const BlockRotation& r);

/// 2D rotary reference: the first half of the blocks rotates with the x
/// coordinate, the second half with the y coordinate.
Matrix rope2d_reference(const Tensor& q, const Tensor& k,
                        const std::vector<double>& theta_x, const std::vector<double>& theta_y,
                        const std::vector<std::vector<std::int64_t>>& coords);

/// Splits a full angle set into the pair of axis rotations whose composition
/// realizes 2D rotary coding (x angles on the leading blocks, y on the rest).
std::pair<BlockRotation, BlockRotation> rope2d_axis_rotations(const std::vector<double>& theta_x,
                                                              const std::vector<double>& theta_y);

/// Time-varying linear state-space system
///   h_k = A_{k-1} h_{k-1} + B_k x_k,   y_k = C_k h_k,   h_0 = 0.
/// a has T-1 entries, b and c have T; widths may be rectangular.
struct SsmSystem {
    std::vector<Matrix> a;
    std::vector<Matrix> b;
    std::vector<Matrix> c;
    Tensor x; ///< T x m
};

/// Direct sequential recurrence; the oracle the attention route is checked
/// against.
Tensor ssm_scan(const SsmSystem& s);

/// Same outputs through causal attention: per-position journey steps A_k,
/// values B_k x_k, all visible weights forced to one, C_k applied to the
/// attention output rows.
Tensor ssm_via_attention(const SsmSystem& s);

/// d(sum cotangent . output)/d(theta) for tied-rotation attention, computed
/// analytically through both the score path (softmax Jacobian) and the
/// value path. cotangent is T x d like the output.
Vec attend_grad_tied_angle(const Tensor& q, const Tensor& k, const Tensor& v,
                           const BlockRotation& r, const Tensor& cotangent,
                           const AttendOptions& opt = {});

} // namespace dnmc

#endif // DNMC_ATTENTION_HPP

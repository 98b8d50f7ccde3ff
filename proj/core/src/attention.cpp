#include "dnmc/attention.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "dnmc/errors.hpp"

namespace dnmc {

JourneyTransforms JourneyTransforms::tied(Transform r, std::size_t length) {
    if (length == 0) throw EmptyRange("JourneyTransforms: length must be positive");
    JourneyTransforms j;
    j.tied_ = true;
    j.length_ = length;
    j.inv_steps_.push_back(inverse(r));
    j.steps_.push_back(std::move(r));
    return j;
}

JourneyTransforms JourneyTransforms::per_position(std::vector<Transform> steps) {
    if (steps.empty()) throw EmptyRange("JourneyTransforms: need at least one step");
    const std::size_t d = dnmc::dim(steps[0]);
    for (const auto& s : steps)
        if (dnmc::dim(s) != d) throw DimMismatch("JourneyTransforms: step dims differ");
    JourneyTransforms j;
    j.tied_ = false;
    j.length_ = steps.size() + 1;
    j.steps_ = std::move(steps);
    j.inv_steps_.reserve(j.steps_.size());
    for (const auto& s : j.steps_) j.inv_steps_.push_back(inverse(s));
    j.g_.reserve(j.length_);
    j.g_.push_back(identity_like(j.steps_[0]));
    for (std::size_t p = 1; p < j.length_; ++p)
        j.g_.push_back(compose(j.steps_[p - 1], j.g_.back()));
    j.g_inv_.reserve(j.length_);
    for (const auto& g : j.g_) j.g_inv_.push_back(inverse(g));
    return j;
}

std::size_t JourneyTransforms::dim() const { return dnmc::dim(steps_[0]); }

const Transform& JourneyTransforms::step(std::size_t q) const {
    if (tied_) return steps_[0];
    if (q + 1 >= length_) throw IndexOutOfRange("JourneyTransforms::step: index out of range");
    return steps_[q];
}

const Transform& JourneyTransforms::inverse_step(std::size_t q) const {
    if (tied_) return inv_steps_[0];
    if (q + 1 >= length_) throw IndexOutOfRange("JourneyTransforms::inverse_step: index out of range");
    return inv_steps_[q];
}

Transform JourneyTransforms::relative(std::int64_t p, std::int64_t q) const {
    if (p < 0 || q < 0 || static_cast<std::size_t>(p) >= length_ || static_cast<std::size_t>(q) >= length_)
        throw IndexOutOfRange("JourneyTransforms::relative: position out of range");
    if (tied_) return pow(steps_[0], p - q);
    return compose(g_[static_cast<std::size_t>(p)], g_inv_[static_cast<std::size_t>(q)]);
}

Transform JourneyTransforms::cache(std::size_t p) const {
    if (p >= length_) throw IndexOutOfRange("JourneyTransforms::cache: position out of range");
    if (tied_) return pow(steps_[0], static_cast<std::int64_t>(p));
    return g_[p];
}

namespace {

void require_tokens(const Tensor& q, const Tensor& k, const Tensor& v, std::size_t d,
                    const char* what) {
    for (const Tensor* t : {&q, &k, &v})
        if (t->rank() != 2) throw DimMismatch(std::string(what) + ": token tensors must be rank 2");
    if (k.shape != q.shape || v.shape != q.shape)
        throw DimMismatch(std::string(what) + ": Q, K, V shapes differ");
    if (q.shape[1] != d) throw DimMismatch(std::string(what) + ": token width does not match transform dim");
    if (q.shape[0] == 0) throw EmptyRange(std::string(what) + ": no tokens");
}

// Softmax (with max subtraction) over row entries [0, limit); the rest of
// the row stays zero.
void softmax_row(const Matrix& scores, double scale, std::size_t p, std::size_t limit, Matrix& out) {
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t q = 0; q < limit; ++q) hi = std::max(hi, scale * scores(p, q));
    double total = 0.0;
    for (std::size_t q = 0; q < limit; ++q) {
        const double e = std::exp(scale * scores(p, q) - hi);
        out(p, q) = e;
        total += e;
    }
    for (std::size_t q = 0; q < limit; ++q) out(p, q) /= total;
}

AttendResult combine(std::size_t t, std::size_t d, const std::vector<std::vector<Vec>>& rv,
                     Matrix scores, const AttendOptions& opt) {
    AttendResult res;
    res.scores = std::move(scores);
    res.weights = Matrix(t, t);
    if (opt.forced_weights) {
        if (opt.forced_weights->rows != t || opt.forced_weights->cols != t)
            throw DimMismatch("attend: forced weights must be T x T");
    }
    res.output = Tensor({t, d});
    for (std::size_t p = 0; p < t; ++p) {
        const std::size_t limit = opt.causal ? p + 1 : t;
        if (opt.forced_weights) {
            for (std::size_t j = 0; j < limit; ++j) res.weights(p, j) = (*opt.forced_weights)(p, j);
        } else {
            softmax_row(res.scores, opt.scale, p, limit, res.weights);
        }
        auto out = res.output.row(p);
        for (std::size_t j = 0; j < limit; ++j) {
            const double w = res.weights(p, j);
            const Vec& u = rv[p][j];
            for (std::size_t i = 0; i < d; ++i) out[i] += w * u[i];
        }
    }
    return res;
}

} // namespace

AttendResult attend(const Tensor& q, const Tensor& k, const Tensor& v,
                    const JourneyTransforms& journey, const AttendOptions& opt) {
    const std::size_t d = journey.dim();
    require_tokens(q, k, v, d, "attend");
    const std::size_t t = q.shape[0];
    if (t != journey.length()) throw DimMismatch("attend: journey length does not match token count");

    Matrix scores(t, t);
    std::vector<std::vector<Vec>> rv(t); // rv[p][j] = relative(p,j) V_j, visible j only
    for (std::size_t p = 0; p < t; ++p) {
        const std::size_t limit = opt.causal ? p + 1 : t;
        rv[p].resize(limit);
        auto qp = q.row(p);
        scores(p, p) = dot(qp, k.row(p));
        rv[p][p] = Vec(v.row(p).begin(), v.row(p).end());
        if (p > 0) {
            // Journey products grow one step at a time; no inverses on the
            // causal side.
            Transform run = journey.step(p - 1);
            for (std::size_t j = p; j-- > 0;) {
                if (j != p - 1) run = compose(run, journey.step(j));
                const Vec rk = dnmc::apply(run, k.row(j));
                scores(p, j) = dot(qp, rk);
                rv[p][j] = dnmc::apply(run, v.row(j));
            }
        }
        if (!opt.causal && p + 1 < t) {
            Transform run = journey.inverse_step(p);
            for (std::size_t j = p + 1; j < t; ++j) {
                if (j != p + 1) run = compose(run, journey.inverse_step(j - 1));
                const Vec rk = dnmc::apply(run, k.row(j));
                scores(p, j) = dot(qp, rk);
                rv[p][j] = dnmc::apply(run, v.row(j));
            }
        }
    }
    return combine(t, d, rv, std::move(scores), opt);
}

AttendResult attend_nd(const Tensor& q, const Tensor& k, const Tensor& v,
                       const std::vector<Transform>& axis_transforms,
                       const std::vector<std::vector<std::int64_t>>& coords,
                       const AttendOptions& opt) {
    if (axis_transforms.empty()) throw EmptyRange("attend_nd: no axis transforms");
    const std::size_t d = dim(axis_transforms[0]);
    for (const auto& r : axis_transforms)
        if (dim(r) != d) throw DimMismatch("attend_nd: axis transform dims differ");
    require_tokens(q, k, v, d, "attend_nd");
    const std::size_t t = q.shape[0];
    const std::size_t axes = axis_transforms.size();
    if (coords.size() != t) throw DimMismatch("attend_nd: need one coordinate tuple per token");
    for (const auto& c : coords)
        if (c.size() != axes) throw DimMismatch("attend_nd: coordinate arity does not match axis count");

    auto carry = [&](std::size_t p, std::size_t j, std::span<const double> x) {
        Vec w(x.begin(), x.end());
        for (std::size_t a = axes; a-- > 0;)
            w = apply_pow(axis_transforms[a], coords[p][a] - coords[j][a], w);
        return w;
    };

    Matrix scores(t, t);
    std::vector<std::vector<Vec>> rv(t);
    for (std::size_t p = 0; p < t; ++p) {
        const std::size_t limit = opt.causal ? p + 1 : t;
        rv[p].resize(limit);
        auto qp = q.row(p);
        for (std::size_t j = 0; j < limit; ++j) {
            scores(p, j) = dot(qp, carry(p, j, k.row(j)));
            rv[p][j] = carry(p, j, v.row(j));
        }
    }
    return combine(t, d, rv, std::move(scores), opt);
}

Matrix rope_reference(const Tensor& q, const Tensor& k, const BlockRotation& r) {
    require_tokens(q, k, k, r.dim(), "rope_reference");
    const std::size_t t = q.shape[0];
    Matrix scores(t, t);
    std::vector<Vec> qr(t), kr(t);
    for (std::size_t p = 0; p < t; ++p) {
        const BlockRotation rp = r.pow(static_cast<std::int64_t>(p));
        qr[p] = rp.apply(q.row(p));
        kr[p] = rp.apply(k.row(p));
    }
    for (std::size_t p = 0; p < t; ++p)
        for (std::size_t j = 0; j < t; ++j) scores(p, j) = dot(qr[p], kr[j]);
    return scores;
}

std::pair<BlockRotation, BlockRotation> rope2d_axis_rotations(const std::vector<double>& theta_x,
                                                              const std::vector<double>& theta_y) {
    if (theta_x.empty() || theta_y.empty())
        throw EmptyRange("rope2d_axis_rotations: need angles for both axes");
    std::vector<double> ax(theta_x.size() + theta_y.size(), 0.0);
    std::vector<double> ay(theta_x.size() + theta_y.size(), 0.0);
    std::copy(theta_x.begin(), theta_x.end(), ax.begin());
    std::copy(theta_y.begin(), theta_y.end(), ay.begin() + static_cast<std::ptrdiff_t>(theta_x.size()));
    return {BlockRotation::from_angles(std::move(ax)), BlockRotation::from_angles(std::move(ay))};
}

Matrix rope2d_reference(const Tensor& q, const Tensor& k,
                        const std::vector<double>& theta_x, const std::vector<double>& theta_y,
                        const std::vector<std::vector<std::int64_t>>& coords) {
    auto [rx, ry] = rope2d_axis_rotations(theta_x, theta_y);
    require_tokens(q, k, k, rx.dim(), "rope2d_reference");
    const std::size_t t = q.shape[0];
    if (coords.size() != t) throw DimMismatch("rope2d_reference: need one coordinate pair per token");
    Matrix scores(t, t);
    std::vector<Vec> qr(t), kr(t);
    for (std::size_t p = 0; p < t; ++p) {
        if (coords[p].size() != 2) throw DimMismatch("rope2d_reference: coordinates must be 2D");
        const BlockRotation rp = rx.pow(coords[p][0]).compose(ry.pow(coords[p][1]));
        qr[p] = rp.apply(q.row(p));
        kr[p] = rp.apply(k.row(p));
    }
    for (std::size_t p = 0; p < t; ++p)
        for (std::size_t j = 0; j < t; ++j) scores(p, j) = dot(qr[p], kr[j]);
    return scores;
}

namespace {

void require_ssm(const SsmSystem& s) {
    if (s.x.rank() != 2) throw DimMismatch("ssm: inputs must be rank 2");
    const std::size_t t = s.x.shape[0];
    if (t == 0) throw EmptyRange("ssm: no steps");
    if (s.b.size() != t || s.c.size() != t || s.a.size() + 1 != t)
        throw DimMismatch("ssm: need T-1 state maps and T input/output maps");
    const std::size_t n = s.b[0].rows;
    const std::size_t p = s.c[0].rows;
    for (const auto& m : s.a)
        if (m.rows != n || m.cols != n) throw DimMismatch("ssm: state map must be n x n");
    for (const auto& m : s.b)
        if (m.rows != n || m.cols != s.x.shape[1]) throw DimMismatch("ssm: input map shape mismatch");
    for (const auto& m : s.c)
        if (m.cols != n || m.rows != p) throw DimMismatch("ssm: output map shape mismatch");
}

} // namespace

Tensor ssm_scan(const SsmSystem& s) {
    require_ssm(s);
    const std::size_t t = s.x.shape[0];
    Tensor y({t, s.c[0].rows});
    Vec h = matvec(s.b[0], s.x.row(0));
    {
        const Vec y0 = matvec(s.c[0], h);
        std::copy(y0.begin(), y0.end(), y.row(0).begin());
    }
    for (std::size_t k = 1; k < t; ++k) {
        Vec next = matvec(s.a[k - 1], h);
        add_inplace(next, matvec(s.b[k], s.x.row(k)));
        h = std::move(next);
        const Vec yk = matvec(s.c[k], h);
        std::copy(yk.begin(), yk.end(), y.row(k).begin());
    }
    return y;
}

Tensor ssm_via_attention(const SsmSystem& s) {
    require_ssm(s);
    const std::size_t t = s.x.shape[0];
    const std::size_t n = s.b[0].rows;
    Tensor values({t, n});
    for (std::size_t k = 0; k < t; ++k) {
        const Vec vk = matvec(s.b[k], s.x.row(k));
        std::copy(vk.begin(), vk.end(), values.row(k).begin());
    }
    Tensor states({t, n});
    if (t == 1) {
        states = values;
    } else {
        std::vector<Transform> steps;
        steps.reserve(t - 1);
        for (const auto& m : s.a) steps.emplace_back(DenseTransform(m));
        AttendOptions opt;
        opt.causal = true;
        Matrix ones(t, t);
        std::fill(ones.data.begin(), ones.data.end(), 1.0);
        opt.forced_weights = std::move(ones);
        const Tensor zeros({t, n});
        states = attend(zeros, zeros, values, JourneyTransforms::per_position(std::move(steps)), opt)
                     .output;
    }
    Tensor y({t, s.c[0].rows});
    for (std::size_t k = 0; k < t; ++k) {
        const Vec yk = matvec(s.c[k], states.row(k));
        std::copy(yk.begin(), yk.end(), y.row(k).begin());
    }
    return y;
}

Vec attend_grad_tied_angle(const Tensor& q, const Tensor& k, const Tensor& v,
                           const BlockRotation& r, const Tensor& cotangent,
                           const AttendOptions& opt) {
    require_tokens(q, k, v, r.dim(), "attend_grad_tied_angle");
    if (cotangent.shape != q.shape) throw DimMismatch("attend_grad_tied_angle: cotangent shape mismatch");
    const std::size_t t = q.shape[0];
    const std::size_t d = q.shape[1];

    // Forward pass, keeping the rotated values and the weights.
    const AttendResult fwd = attend(q, k, v, JourneyTransforms::tied(Transform(r), t), opt);
    std::vector<std::vector<Vec>> rv(t);
    for (std::size_t p = 0; p < t; ++p) {
        const std::size_t limit = opt.causal ? p + 1 : t;
        rv[p].resize(limit);
        for (std::size_t j = 0; j < limit; ++j)
            rv[p][j] = r.pow(static_cast<std::int64_t>(p) - static_cast<std::int64_t>(j)).apply(v.row(j));
    }

    Vec grad(r.blocks(), 0.0);
    Vec ds(t), dalpha(t);
    for (std::size_t b = 0; b < r.blocks(); ++b) {
        for (std::size_t p = 0; p < t; ++p) {
            const std::size_t limit = opt.causal ? p + 1 : t;
            auto qp = q.row(p);
            for (std::size_t j = 0; j < limit; ++j) {
                const std::int64_t n = static_cast<std::int64_t>(p) - static_cast<std::int64_t>(j);
                ds[j] = dot(qp, r.apply_dtheta(n, k.row(j), b));
            }
            if (opt.forced_weights) {
                std::fill(dalpha.begin(), dalpha.begin() + static_cast<std::ptrdiff_t>(limit), 0.0);
            } else {
                double mean = 0.0;
                for (std::size_t j = 0; j < limit; ++j) mean += fwd.weights(p, j) * ds[j];
                for (std::size_t j = 0; j < limit; ++j)
                    dalpha[j] = fwd.weights(p, j) * opt.scale * (ds[j] - mean);
            }
            auto g = cotangent.row(p);
            for (std::size_t j = 0; j < limit; ++j) {
                const std::int64_t n = static_cast<std::int64_t>(p) - static_cast<std::int64_t>(j);
                const Vec du = r.apply_dtheta(n, v.row(j), b);
                const double alpha = fwd.weights(p, j);
                for (std::size_t i = 0; i < d; ++i)
                    grad[b] += g[i] * (dalpha[j] * rv[p][j][i] + alpha * du[i]);
            }
        }
    }
    return grad;
}

} // namespace dnmc

#include "dnmc/scan.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <iterator>
#include <mutex>
#include <optional>
#include <thread>

#include "dnmc/errors.hpp"

namespace dnmc {

namespace {

void require_seq(const Tensor& seq, std::size_t d, const char* what) {
    if (seq.rank() != 2) throw DimMismatch(std::string(what) + ": sequence tensor must be rank 2");
    if (seq.shape[1] != d) throw DimMismatch(std::string(what) + ": content width does not match transform dim");
}

// Runs fn(0..n_tasks-1), each task exactly once, on up to `workers` threads.
// Tasks must write disjoint state.
void run_tasks(std::size_t n_tasks, unsigned workers, const std::function<void(std::size_t)>& fn) {
    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    if (workers <= 1 || n_tasks <= 1) {
        for (std::size_t i = 0; i < n_tasks; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mu;
    auto body = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n_tasks) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!first_error) first_error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    const std::size_t n = std::min<std::size_t>(workers, n_tasks);
    pool.reserve(n);
    for (std::size_t i = 0; i < n; ++i) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

// Sequential prefix fold over rows [base, base+count) of seq, written into
// the same rows of out. step(r) names the transform attached to absolute row
// r. Returns the product of the block's transforms.
template <class StepFn>
Transform local_prefix(const Tensor& seq, Tensor& out, std::size_t base, std::size_t count,
                       const StepFn& step) {
    auto first_in = seq.row(base);
    auto first_out = out.row(base);
    std::copy(first_in.begin(), first_in.end(), first_out.begin());
    Transform p = step(base);
    for (std::size_t k = 1; k < count; ++k) {
        const std::size_t r = base + k;
        const Vec w = dnmc::apply(p, seq.row(r));
        auto prev = out.row(r - 1);
        auto cur = out.row(r);
        for (std::size_t i = 0; i < w.size(); ++i) cur[i] = prev[i] + w[i];
        p = compose(p, step(r));
    }
    return p;
}

// Tied-rotation chunk fold: same arithmetic as local_prefix, with the running
// product kept as in-place angle/cos/sin arrays so no per-row temporaries are
// allocated.
Transform local_prefix_rot(const Tensor& seq, Tensor& out, std::size_t base, std::size_t count,
                           const BlockRotation& r) {
    auto first_in = seq.row(base);
    std::copy(first_in.begin(), first_in.end(), out.row(base).begin());
    const std::size_t nb = r.blocks();
    const auto rc = r.cos_cache();
    const auto rs = r.sin_cache();
    const auto& ra = r.base().angles;
    std::vector<double> pa(ra);
    std::vector<double> pc(rc.begin(), rc.end());
    std::vector<double> ps(rs.begin(), rs.end());
    for (std::size_t k = 1; k < count; ++k) {
        const auto row = seq.row(base + k);
        const auto prev = out.row(base + k - 1);
        auto cur = out.row(base + k);
        for (std::size_t b = 0; b < nb; ++b) {
            const double x = row[2 * b];
            const double y = row[2 * b + 1];
            cur[2 * b] = prev[2 * b] + (pc[b] * x - ps[b] * y);
            cur[2 * b + 1] = prev[2 * b + 1] + (ps[b] * x + pc[b] * y);
        }
        for (std::size_t b = 0; b < nb; ++b) {
            const double c = pc[b] * rc[b] - ps[b] * rs[b];
            const double s = ps[b] * rc[b] + pc[b] * rs[b];
            pc[b] = c;
            ps[b] = s;
            pa[b] += ra[b];
        }
    }
    return Transform{BlockRotation(AngleVector{std::move(pa)})};
}

void carry_apply_rot(Tensor& out, std::size_t base, std::size_t count, const Vec& off,
                     const BlockRotation& p) {
    const auto pc = p.cos_cache();
    const auto ps = p.sin_cache();
    for (std::size_t k = 0; k < count; ++k) {
        auto row = out.row(base + k);
        for (std::size_t b = 0; b < pc.size(); ++b) {
            const double x = row[2 * b];
            const double y = row[2 * b + 1];
            row[2 * b] = off[2 * b] + (pc[b] * x - ps[b] * y);
            row[2 * b + 1] = off[2 * b + 1] + (ps[b] * x + pc[b] * y);
        }
    }
}

template <class StepFn>
AffinePair scan_impl(const Tensor& seq, const StepFn& step) {
    const std::size_t t = seq.shape[0];
    AffinePair acc{Vec(seq.row(0).begin(), seq.row(0).end()), step(0)};
    for (std::size_t r = 1; r < t; ++r) {
        const Vec w = dnmc::apply(acc.transform, seq.row(r));
        add_inplace(acc.offset, w);
        acc.transform = compose(acc.transform, step(r));
    }
    return acc;
}

template <class StepFn>
Tensor prefix_sequential_impl(const Tensor& seq, const StepFn& step,
                              const BlockRotation* tied_rot = nullptr) {
    Tensor out({seq.shape[0], seq.shape[1]});
    if (seq.shape[0] == 0) return out;
    if (tied_rot)
        local_prefix_rot(seq, out, 0, seq.shape[0], *tied_rot);
    else
        local_prefix(seq, out, 0, seq.shape[0], step);
    return out;
}

template <class StepFn>
Tensor prefix_parallel_impl(const Tensor& seq, const StepFn& step, PrefixOptions opt,
                            const BlockRotation* tied_rot = nullptr) {
    const std::size_t t = seq.shape[0];
    Tensor out({t, seq.shape[1]});
    if (t == 0) return out;

    if (opt.workers == 0) opt.workers = std::max(1u, std::thread::hardware_concurrency());
    std::size_t chunk = opt.chunk;
    if (chunk == 0) chunk = (t + opt.workers - 1) / opt.workers;
    chunk = std::max<std::size_t>(1, chunk);
    const std::size_t n_chunks = (t + chunk - 1) / chunk;

    std::vector<std::optional<Transform>> products(n_chunks);
    run_tasks(n_chunks, opt.workers, [&](std::size_t c) {
        const std::size_t base = c * chunk;
        const std::size_t count = std::min(chunk, t - base);
        products[c] = tied_rot ? local_prefix_rot(seq, out, base, count, *tied_rot)
                               : local_prefix(seq, out, base, count, step);
    });

    // Carry sweep: carries[c] = fold of everything before chunk c. Chunk 0
    // keeps its local prefixes untouched, so a single chunk reproduces the
    // sequential result exactly.
    std::vector<std::optional<AffinePair>> carries(n_chunks);
    for (std::size_t c = 1; c < n_chunks; ++c) {
        const std::size_t prev_last = std::min(c * chunk, t) - 1;
        auto last = out.row(prev_last);
        if (c == 1) {
            carries[c] = AffinePair{Vec(last.begin(), last.end()), *products[0]};
        } else {
            const AffinePair& cp = *carries[c - 1];
            Vec off = cp.offset;
            add_inplace(off, dnmc::apply(cp.transform, last));
            carries[c] = AffinePair{std::move(off), compose(cp.transform, *products[c - 1])};
        }
    }

    run_tasks(n_chunks, opt.workers, [&](std::size_t c) {
        if (c == 0) return;
        const AffinePair& cp = *carries[c];
        const std::size_t base = c * chunk;
        const std::size_t count = std::min(chunk, t - base);
        if (const auto* rot = std::get_if<BlockRotation>(&cp.transform)) {
            carry_apply_rot(out, base, count, cp.offset, *rot);
            return;
        }
        for (std::size_t k = 0; k < count; ++k) {
            auto row = out.row(base + k);
            const Vec w = dnmc::apply(cp.transform, row);
            for (std::size_t i = 0; i < row.size(); ++i) row[i] = cp.offset[i] + w[i];
        }
    });
    return out;
}

void require_steps(const Tensor& seq, const std::vector<Transform>& steps) {
    if (steps.empty()) throw EmptyRange("scan: empty transform list");
    if (steps.size() != seq.shape[0])
        throw DimMismatch("scan: need one transform per step");
    for (const auto& s : steps)
        if (dim(s) != seq.shape[1]) throw DimMismatch("scan: transform dim mismatch");
}

} // namespace

AffinePair fold_step(const AffinePair& acc, const Vec& content, const Transform& step) {
    if (content.size() != acc.offset.size()) throw DimMismatch("fold_step: content width mismatch");
    if (dim(step) != content.size()) throw DimMismatch("fold_step: transform dim mismatch");
    Vec offset = acc.offset;
    add_inplace(offset, dnmc::apply(acc.transform, content));
    return AffinePair{std::move(offset), compose(acc.transform, step)};
}

AffinePair scan_sequence(const Tensor& seq, const Transform& tied) {
    require_seq(seq, dim(tied), "scan_sequence");
    if (seq.shape[0] == 0) return AffinePair{Vec(seq.shape[1], 0.0), identity_like(tied)};
    return scan_impl(seq, [&](std::size_t) -> const Transform& { return tied; });
}

AffinePair scan_sequence(const Tensor& seq, const std::vector<Transform>& steps) {
    if (seq.rank() != 2) throw DimMismatch("scan_sequence: sequence tensor must be rank 2");
    require_steps(seq, steps);
    return scan_impl(seq, [&](std::size_t r) -> const Transform& { return steps[r]; });
}

Tensor prefix_scan_sequential(const Tensor& seq, const Transform& tied) {
    require_seq(seq, dim(tied), "prefix_scan_sequential");
    return prefix_sequential_impl(seq, [&](std::size_t) -> const Transform& { return tied; },
                                  std::get_if<BlockRotation>(&tied));
}

Tensor prefix_scan_sequential(const Tensor& seq, const std::vector<Transform>& steps) {
    if (seq.rank() != 2) throw DimMismatch("prefix_scan_sequential: sequence tensor must be rank 2");
    require_steps(seq, steps);
    return prefix_sequential_impl(seq, [&](std::size_t r) -> const Transform& { return steps[r]; });
}

Tensor prefix_scan_parallel(const Tensor& seq, const Transform& tied, const PrefixOptions& opt) {
    require_seq(seq, dim(tied), "prefix_scan_parallel");
    return prefix_parallel_impl(seq, [&](std::size_t) -> const Transform& { return tied; }, opt,
                                std::get_if<BlockRotation>(&tied));
}

Tensor prefix_scan_parallel(const Tensor& seq, const std::vector<Transform>& steps,
                            const PrefixOptions& opt) {
    if (seq.rank() != 2) throw DimMismatch("prefix_scan_parallel: sequence tensor must be rank 2");
    require_steps(seq, steps);
    return prefix_parallel_impl(seq, [&](std::size_t r) -> const Transform& { return steps[r]; }, opt);
}

namespace {

std::vector<Transform> pow_table(const Transform& r, std::size_t n) {
    std::vector<Transform> p;
    p.reserve(n);
    if (n == 0) return p;
    p.push_back(identity_like(r));
    for (std::size_t i = 1; i < n; ++i) p.push_back(compose(p.back(), r));
    return p;
}

std::span<const double> cell(const Tensor& t, std::size_t flat, std::size_t d) {
    return {t.data.data() + flat * d, d};
}

void require_grid(const Tensor& grid, std::size_t rank, std::size_t d, const char* what) {
    if (grid.rank() != rank) throw DimMismatch(std::string(what) + ": unexpected grid rank");
    if (grid.shape.back() != d) throw DimMismatch(std::string(what) + ": cell width does not match transform dim");
}

void require_commuting(std::initializer_list<const Transform*> rs, const char* what) {
    for (auto a = rs.begin(); a != rs.end(); ++a)
        for (auto b = std::next(a); b != rs.end(); ++b)
            if (commutator_residual(**a, **b) > kCommuteTolerance)
                throw NonCommutingAxes(std::string(what) + ": axis transforms do not commute");
}

} // namespace

Vec fold_grid2d_row_major(const Tensor& grid, const Transform& rx, const Transform& ry) {
    const std::size_t d = dim(rx);
    if (dim(ry) != d) throw DimMismatch("fold_grid2d: axis transform dims differ");
    require_grid(grid, 3, d, "fold_grid2d");
    const std::size_t h = grid.shape[0], w = grid.shape[1];
    const auto px = pow_table(rx, h);
    const auto py = pow_table(ry, w);
    Vec total(d, 0.0);
    for (std::size_t i = 0; i < h; ++i) {
        Vec row(d, 0.0);
        for (std::size_t j = 0; j < w; ++j) add_inplace(row, dnmc::apply(py[j], cell(grid, i * w + j, d)));
        add_inplace(total, dnmc::apply(px[i], row));
    }
    return total;
}

Vec fold_grid2d_col_major(const Tensor& grid, const Transform& rx, const Transform& ry) {
    const std::size_t d = dim(rx);
    if (dim(ry) != d) throw DimMismatch("fold_grid2d: axis transform dims differ");
    require_grid(grid, 3, d, "fold_grid2d");
    const std::size_t h = grid.shape[0], w = grid.shape[1];
    const auto px = pow_table(rx, h);
    const auto py = pow_table(ry, w);
    Vec total(d, 0.0);
    for (std::size_t j = 0; j < w; ++j) {
        Vec col(d, 0.0);
        for (std::size_t i = 0; i < h; ++i) add_inplace(col, dnmc::apply(px[i], cell(grid, i * w + j, d)));
        add_inplace(total, dnmc::apply(py[j], col));
    }
    return total;
}

Vec compose_grid2d(const Tensor& grid, const Transform& rx, const Transform& ry) {
    require_commuting({&rx, &ry}, "compose_grid2d");
    return fold_grid2d_row_major(grid, rx, ry);
}

Vec compose_grid3d(const Tensor& grid, const Transform& rx, const Transform& ry, const Transform& rz) {
    require_commuting({&rx, &ry, &rz}, "compose_grid3d");
    return fold_grid3d(grid, {rx, ry, rz}, {0, 1, 2});
}

Vec fold_grid3d(const Tensor& grid, const std::array<Transform, 3>& rs,
                const std::array<int, 3>& order) {
    const std::size_t d = dim(rs[0]);
    if (dim(rs[1]) != d || dim(rs[2]) != d) throw DimMismatch("fold_grid3d: axis transform dims differ");
    require_grid(grid, 4, d, "fold_grid3d");
    std::array<bool, 3> seen{false, false, false};
    for (int o : order) {
        if (o < 0 || o > 2 || seen[static_cast<std::size_t>(o)])
            throw AxisOutOfRange("fold_grid3d: order must be a permutation of {0,1,2}");
        seen[static_cast<std::size_t>(o)] = true;
    }
    const std::array<std::size_t, 3> n{grid.shape[0], grid.shape[1], grid.shape[2]};
    std::array<std::vector<Transform>, 3> pows;
    for (std::size_t a = 0; a < 3; ++a) pows[a] = pow_table(rs[a], n[a]);

    Vec total(d, 0.0);
    std::array<std::size_t, 3> idx{};
    for (idx[0] = 0; idx[0] < n[0]; ++idx[0])
        for (idx[1] = 0; idx[1] < n[1]; ++idx[1])
            for (idx[2] = 0; idx[2] < n[2]; ++idx[2]) {
                const std::size_t flat = (idx[0] * n[1] + idx[1]) * n[2] + idx[2];
                auto c = cell(grid, flat, d);
                Vec v(c.begin(), c.end());
                for (int t = 2; t >= 0; --t) {
                    const std::size_t a = static_cast<std::size_t>(order[static_cast<std::size_t>(t)]);
                    v = dnmc::apply(pows[a][idx[a]], v);
                }
                add_inplace(total, v);
            }
    return total;
}

} // namespace dnmc

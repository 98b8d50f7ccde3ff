#include "dnmc/checks.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "dnmc/align.hpp"
#include "dnmc/attention.hpp"
#include "dnmc/errors.hpp"
#include "dnmc/io.hpp"
#include "dnmc/mrep.hpp"
#include "dnmc/random.hpp"
#include "dnmc/scan.hpp"

namespace dnmc {

namespace {

std::string fmt_residual(double r) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", r);
    return buf;
}

void observe(SuiteReport& rep, double residual, double tol, const std::string& what) {
    ++rep.cases;
    rep.max_residual = std::max(rep.max_residual, residual);
    if (!(residual <= tol)) {
        ++rep.failures;
        rep.notes.push_back("FAIL " + what + ": residual " + fmt_residual(residual) + " > " +
                            fmt_residual(tol));
    }
}

void expect(SuiteReport& rep, bool ok, const std::string& what) {
    ++rep.cases;
    if (!ok) {
        ++rep.failures;
        rep.notes.push_back("FAIL " + what);
    }
}

Tensor random_tensor(Rng& rng, std::vector<std::size_t> shape, double scale = 1.0) {
    Tensor t(std::move(shape));
    for (auto& x : t.data) x = scale * rng.normal();
    return t;
}

BasisPtr random_basis(Rng& rng, bool rotation, std::size_t d, std::size_t axes) {
    if (rotation) {
        std::vector<BlockRotation> rs;
        rs.reserve(axes);
        for (std::size_t a = 0; a < axes; ++a) rs.push_back(random_block_rotation(rng, d));
        return AxisBasis::make_rotation(std::move(rs));
    }
    std::vector<DenseTransform> ts;
    ts.reserve(axes);
    for (std::size_t a = 0; a < axes; ++a) ts.push_back(random_dense_transform(rng, d));
    return AxisBasis::make_dense(std::move(ts));
}

std::vector<std::int64_t> random_powers(Rng& rng, std::size_t axes, std::int64_t lo, std::int64_t hi) {
    std::vector<std::int64_t> p(axes);
    for (auto& x : p) x = rng.uniform_int(lo, hi);
    return p;
}

// ---- algebra ---------------------------------------------------------------

SuiteReport suite_algebra(std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "algebra";
    rep.seed = seed;
    for (int backend = 0; backend < 2; ++backend) {
        Rng rng(seed + static_cast<std::uint64_t>(backend));
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t d = 2 * static_cast<std::size_t>(rng.uniform_int(1, 8));
            const std::size_t axes = static_cast<std::size_t>(rng.uniform_int(1, 3));
            const auto basis = random_basis(rng, backend == 0, d, axes);
            const std::size_t k = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(axes) - 1));

            auto shared = random_powers(rng, axes, -3, 3);
            auto with_axis = [&](std::int64_t nk) {
                auto p = shared;
                p[k] = nk;
                return p;
            };
            const Element x = make_element(random_vec(rng, d), with_axis(rng.uniform_int(-3, 3)), basis);
            const Element y = make_element(random_vec(rng, d), with_axis(rng.uniform_int(-3, 3)), basis);
            const Element z = make_element(random_vec(rng, d), with_axis(rng.uniform_int(-3, 3)), basis);

            const Element l = compose_axis(compose_axis(x, y, k), z, k);
            const Element r = compose_axis(x, compose_axis(y, z, k), k);
            observe(rep, max_abs_diff(l.content, r.content), 1e-12, "associativity content");
            expect(rep, l.powers == r.powers, "associativity powers");

            Element line = make_element(random_vec(rng, d),
                                        with_axis(rng.uniform_int(-3, 3)), basis);
            for (std::size_t a = 0; a < axes; ++a)
                if (a != k) line.powers[a] = 0;
            const Element e = identity_element(basis);
            const Element le = compose_axis(e, line, k);
            const Element re = compose_axis(line, e, k);
            observe(rep, max_abs_diff(le.content, line.content), 1e-12, "left identity");
            observe(rep, max_abs_diff(re.content, line.content), 1e-12, "right identity");
            expect(rep, le.powers == line.powers && re.powers == line.powers, "identity powers");

            const Element inv = inverse_element(line, k);
            const Element li = compose_axis(inv, line, k);
            const Element ri = compose_axis(line, inv, k);
            observe(rep, max_abs(li.content), 1e-12, "left inverse");
            observe(rep, max_abs(ri.content), 1e-12, "right inverse");
            expect(rep, li.powers == e.powers && ri.powers == e.powers, "inverse powers");
        }
    }
    return rep;
}

// ---- interchange -----------------------------------------------------------

SuiteReport suite_interchange(std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "interchange";
    rep.seed = seed;
    Rng rng(seed);
    const std::size_t d = 2 * static_cast<std::size_t>(rng.uniform_int(2, 4));

    const auto rot = random_basis(rng, true, d, 2);
    const auto r1 = check_interchange(rot, 0, 1, 60, seed);
    rep.max_residual = std::max(rep.max_residual, r1.max_residual);
    expect(rep, r1.holds && r1.max_residual < 1e-12,
           "rotation backend obeys the interchange law (residual " + fmt_residual(r1.max_residual) + ")");

    auto [na, nb] = noncommuting_dense_pair(rng, d);
    const auto bad = AxisBasis::make_dense({na, nb});
    const auto r2 = check_interchange(bad, 0, 1, 60, seed + 1);
    expect(rep, !r2.holds && r2.max_residual > 1e-6,
           "non-commuting dense basis violates the law (residual " + fmt_residual(r2.max_residual) + ")");
    rep.notes.push_back("negative control residual " + fmt_residual(r2.max_residual));

    const DenseTransform c1 = random_dense_transform(rng, d);
    const auto good = AxisBasis::make_dense({c1, c1.compose(c1)});
    const auto r3 = check_interchange(good, 0, 1, 60, seed + 2);
    rep.max_residual = std::max(rep.max_residual, r3.max_residual);
    expect(rep, r3.holds && r3.max_residual < 1e-9,
           "dense basis with R2 = R1^2 obeys the law (residual " + fmt_residual(r3.max_residual) + ")");
    return rep;
}

// ---- scan ------------------------------------------------------------------

SuiteReport suite_scan(std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "scan";
    rep.seed = seed;
    Rng rng(seed);
    const std::size_t d = 8;
    for (int backend = 0; backend < 2; ++backend) {
        const Transform tied = backend == 0 ? Transform(random_block_rotation(rng, d))
                                            : Transform(DenseTransform(random_orthogonal(rng, d)));
        for (std::size_t t : {33u, 128u}) {
            const Tensor seq = random_tensor(rng, {t, d});
            const Tensor ref = prefix_scan_sequential(seq, tied);
            for (std::size_t chunk : {std::size_t{1}, std::size_t{5}, std::size_t{32}, t, 2 * t}) {
                const Tensor par = prefix_scan_parallel(seq, tied, {.chunk = chunk, .workers = 4});
                observe(rep, max_abs_diff(ref, par), 1e-9, "parallel prefix vs sequential");
                if (chunk >= t)
                    expect(rep, ref.data == par.data, "single-chunk scan is bitwise sequential");
            }
        }
    }

    // Per-step transforms.
    {
        const std::size_t t = 48;
        std::vector<Transform> steps;
        for (std::size_t i = 0; i < t; ++i) steps.emplace_back(random_block_rotation(rng, d));
        const Tensor seq = random_tensor(rng, {t, d});
        const Tensor ref = prefix_scan_sequential(seq, steps);
        const Tensor par = prefix_scan_parallel(seq, steps, {.chunk = 7, .workers = 3});
        observe(rep, max_abs_diff(ref, par), 1e-9, "per-step parallel prefix vs sequential");
    }

    // Cross-backend route: a rotation scan must agree with the same scan run
    // through the dense image of the transform.
    {
        const std::size_t t = 40;
        const BlockRotation r = random_block_rotation(rng, d);
        const Tensor seq = random_tensor(rng, {t, d});
        const AffinePair a = scan_sequence(seq, Transform(r));
        const AffinePair b = scan_sequence(seq, Transform(r.to_dense()));
        observe(rep, max_abs_diff(a.offset, b.offset), 1e-10, "rotation scan vs dense image");

        // Direct-sum oracle: E = sum_k R^{k} v_k by explicit powers.
        Vec oracle(d, 0.0);
        for (std::size_t k = 0; k < t; ++k)
            add_inplace(oracle, r.pow(static_cast<std::int64_t>(k)).apply(seq.row(k)));
        observe(rep, max_abs_diff(a.offset, oracle), 1e-10, "scan vs direct power sum");
    }
    return rep;
}

// ---- grid ------------------------------------------------------------------

SuiteReport suite_grid(std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "grid";
    rep.seed = seed;
    Rng rng(seed);
    const std::size_t d = 6;

    {
        const Transform rx{random_block_rotation(rng, d)};
        const Transform ry{random_block_rotation(rng, d)};
        const Tensor grid = random_tensor(rng, {5, 7, d});
        const Vec row = fold_grid2d_row_major(grid, rx, ry);
        const Vec col = fold_grid2d_col_major(grid, rx, ry);
        observe(rep, max_abs_diff(row, col), 1e-9, "2D fold order (rotation)");
        observe(rep, max_abs_diff(compose_grid2d(grid, rx, ry), row), 1e-12, "checked grid equals fold");
    }
    {
        const std::array<Transform, 3> rs{Transform{random_block_rotation(rng, d)},
                                          Transform{random_block_rotation(rng, d)},
                                          Transform{random_block_rotation(rng, d)}};
        const Tensor grid = random_tensor(rng, {4, 3, 5, d});
        const Vec a = fold_grid3d(grid, rs, {0, 1, 2});
        const Vec b = fold_grid3d(grid, rs, {2, 1, 0});
        const Vec c = fold_grid3d(grid, rs, {1, 0, 2});
        observe(rep, max_abs_diff(a, b), 1e-9, "3D fold order 210");
        observe(rep, max_abs_diff(a, c), 1e-9, "3D fold order 102");
        observe(rep, max_abs_diff(compose_grid3d(grid, rs[0], rs[1], rs[2]), a), 1e-12,
                "checked 3D grid equals fold");
    }
    {
        const DenseTransform c1 = random_dense_transform(rng, d);
        const Transform rx{c1}, ry{c1.compose(c1)};
        const Tensor grid = random_tensor(rng, {4, 4, d});
        observe(rep, max_abs_diff(fold_grid2d_row_major(grid, rx, ry), fold_grid2d_col_major(grid, rx, ry)),
                1e-9, "2D fold order (commuting dense)");
    }
    {
        auto [a, b] = noncommuting_dense_pair(rng, d);
        const Transform rx{a}, ry{b};
        const Tensor grid = random_tensor(rng, {4, 5, d});
        const double diff = max_abs_diff(fold_grid2d_row_major(grid, rx, ry),
                                         fold_grid2d_col_major(grid, rx, ry));
        expect(rep, diff > 1e-6, "non-commuting fold order control diverges (got " + fmt_residual(diff) + ")");
        rep.notes.push_back("fold-order control residual " + fmt_residual(diff));
        bool threw = false;
        try {
            (void)compose_grid2d(grid, rx, ry);
        } catch (const NonCommutingAxes&) {
            threw = true;
        }
        expect(rep, threw, "compose_grid2d rejects non-commuting axes");
    }
    {
        const Transform id{BlockRotation::identity(d)};
        const Tensor grid = random_tensor(rng, {3, 4, d});
        Vec total(d, 0.0);
        for (std::size_t i = 0; i < 12; ++i) add_inplace(total, std::span<const double>(grid.data).subspan(i * d, d));
        observe(rep, max_abs_diff(compose_grid2d(grid, id, id), total), 1e-12, "identity grid sums cells");
    }
    return rep;
}

// ---- mrep ------------------------------------------------------------------

SuiteReport suite_mrep(std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "mrep";
    rep.seed = seed;
    Rng rng(seed);
    const std::size_t d = 6;

    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t n = static_cast<std::size_t>(rng.uniform_int(4, 24));
        const std::size_t window = static_cast<std::size_t>(rng.uniform_int(1, 6));
        const std::size_t shift = static_cast<std::size_t>(rng.uniform_int(1, 8));
        const Transform r{random_block_rotation(rng, d)};
        const Tensor sig = random_tensor(rng, {n, d});
        Tensor padded({n + shift, d});
        std::copy(sig.data.begin(), sig.data.end(), padded.data.begin() + static_cast<std::ptrdiff_t>(shift * d));
        observe(rep, max_abs_diff(mrep_1d(sig, window, r), mrep_1d(padded, window, r)), 1e-12,
                "1D padded translation");
    }
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t h = static_cast<std::size_t>(rng.uniform_int(3, 8));
        const std::size_t w = static_cast<std::size_t>(rng.uniform_int(3, 8));
        const std::size_t wx = static_cast<std::size_t>(rng.uniform_int(1, 3));
        const std::size_t wy = static_cast<std::size_t>(rng.uniform_int(1, 3));
        const std::size_t sx = static_cast<std::size_t>(rng.uniform_int(0, 3));
        const std::size_t sy = static_cast<std::size_t>(rng.uniform_int(0, 3));
        const Transform rx{random_block_rotation(rng, d)};
        const Transform ry{random_block_rotation(rng, d)};
        const Tensor img = random_tensor(rng, {h, w, d});
        Tensor padded({h + sx, w + sy, d});
        for (std::size_t i = 0; i < h; ++i)
            for (std::size_t j = 0; j < w; ++j)
                std::copy(img.data.begin() + static_cast<std::ptrdiff_t>((i * w + j) * d),
                          img.data.begin() + static_cast<std::ptrdiff_t>((i * w + j + 1) * d),
                          padded.data.begin() +
                              static_cast<std::ptrdiff_t>(((i + sx) * (w + sy) + (j + sy)) * d));
        observe(rep, max_abs_diff(mrep_2d(img, wx, wy, rx, ry), mrep_2d(padded, wx, wy, rx, ry)), 1e-12,
                "2D padded translation");
    }

    // Order sensitivity: swapping two rows inside a generic window must move
    // the embedding.
    std::size_t moved = 0;
    const std::size_t trials = 100;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t window = static_cast<std::size_t>(rng.uniform_int(2, 8));
        const Transform r{random_block_rotation(rng, d)};
        Tensor win = random_tensor(rng, {window, d});
        const Vec before = window_embed(win, 0, window, r);
        std::size_t i = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(window) - 1));
        std::size_t j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(window) - 1));
        if (i == j) j = (j + 1) % window;
        for (std::size_t c = 0; c < d; ++c)
            std::swap(win.data[i * d + c], win.data[j * d + c]);
        if (max_abs_diff(before, window_embed(win, 0, window, r)) > 1e-6) ++moved;
    }
    expect(rep, moved >= trials * 95 / 100,
           "window embedding is order sensitive (" + std::to_string(moved) + "/100 moved)");
    return rep;
}

// ---- align -----------------------------------------------------------------

SuiteReport suite_align(std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "align";
    rep.seed = seed;
    Rng rng(seed);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t d = 2 * static_cast<std::size_t>(rng.uniform_int(2, 5));
        const bool rotation = trial % 2 == 0;
        const Transform r = rotation ? Transform(random_block_rotation(rng, d))
                                     : Transform(DenseTransform(random_orthogonal(rng, d)));
        const Vec y = random_vec(rng, d);
        const std::int64_t planted = rng.uniform_int(-8, 8);
        Vec x = apply_pow(r, planted, y);
        for (auto& c : x) c += 1e-9 * rng.uniform(-1.0, 1.0);
        const std::int64_t lo = planted - rng.uniform_int(0, 10);
        const std::int64_t hi = lo + 20;
        const auto res = align(x, y, r, lo, hi,
                               trial % 3 == 0 ? ScoreKind::Cosine : ScoreKind::Dot);
        expect(rep, res.shift == planted,
               "planted 1D shift recovered (got " + std::to_string(res.shift) + ", want " +
                   std::to_string(planted) + ")");

        const Vec xs = scaled(x, 4.0);
        const Vec ys = scaled(y, 0.25);
        const auto res2 = align(xs, ys, r, lo, hi, ScoreKind::Dot);
        expect(rep, res2.shift == res.shift, "alignment invariant under positive scaling");
    }
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t d = 8;
        const Transform rx{random_block_rotation(rng, d)};
        const Transform ry{random_block_rotation(rng, d)};
        const Vec y = random_vec(rng, d);
        const std::int64_t px = rng.uniform_int(-6, 6);
        const std::int64_t py = rng.uniform_int(-6, 6);
        Vec x = apply_pow(rx, px, apply_pow(ry, py, y));
        for (auto& c : x) c += 1e-9 * rng.uniform(-1.0, 1.0);
        const std::int64_t lox = px - rng.uniform_int(0, 10), hix = lox + 20;
        const std::int64_t loy = py - rng.uniform_int(0, 10), hiy = loy + 20;
        const auto res = align_2d(x, y, rx, ry, lox, hix, loy, hiy);
        expect(rep, res.shift_x == px && res.shift_y == py,
               "planted 2D shift recovered (got " + std::to_string(res.shift_x) + "," +
                   std::to_string(res.shift_y) + ")");
    }
    return rep;
}

// ---- concat ----------------------------------------------------------------

SuiteReport suite_concat(std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "concat";
    rep.seed = seed;
    Rng rng(seed);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = 2 * static_cast<std::size_t>(rng.uniform_int(1, 6));
        const std::size_t axes = static_cast<std::size_t>(rng.uniform_int(1, 3));
        const auto basis = random_basis(rng, trial % 2 == 0, d, axes);
        const std::size_t k = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(axes) - 1));

        auto shared = random_powers(rng, axes, -2, 3);
        auto with_axis = [&](std::int64_t nk) {
            auto p = shared;
            p[k] = nk;
            return p;
        };
        const Element x = make_element(random_vec(rng, d), with_axis(rng.uniform_int(0, 4)), basis);
        const Element y = make_element(random_vec(rng, d), with_axis(rng.uniform_int(0, 4)), basis);
        const Element z = make_element(random_vec(rng, d), with_axis(rng.uniform_int(0, 4)), basis);

        const Element strict = concat(x, y, k, ConcatMode::Strict);
        const Element composed = compose_axis(x, y, k);
        expect(rep, strict.content == composed.content && strict.powers == composed.powers,
               "strict concat equals axis composition");
        const Element perm = concat(x, y, k, ConcatMode::Permissive);
        expect(rep, perm.content == strict.content && perm.powers == strict.powers,
               "permissive concat collapses to strict on matched powers");
        expect(rep, strict.powers[k] == x.powers[k] + y.powers[k], "widths add");

        // Associativity with genuinely unequal off-axis powers, which only
        // the permissive mode accepts.
        const Element fx = make_element(random_vec(rng, d), random_powers(rng, axes, 0, 4), basis);
        const Element fy = make_element(random_vec(rng, d), random_powers(rng, axes, 0, 4), basis);
        const Element fz = make_element(random_vec(rng, d), random_powers(rng, axes, 0, 4), basis);
        const Element l = concat(concat(fx, fy, k, ConcatMode::Permissive), fz, k, ConcatMode::Permissive);
        const Element r = concat(fx, concat(fy, fz, k, ConcatMode::Permissive), k, ConcatMode::Permissive);
        observe(rep, max_abs_diff(l.content, r.content), 1e-12, "concat associativity");
        expect(rep, l.powers == r.powers, "concat associativity powers");

        const Element back_y = concat_recover_right(strict, x, k);
        const Element back_x = concat_recover_left(strict, y, k);
        observe(rep, max_abs_diff(back_y.content, y.content), 1e-9, "right recovery");
        observe(rep, max_abs_diff(back_x.content, x.content), 1e-9, "left recovery");
        expect(rep, back_y.powers == y.powers && back_x.powers == x.powers, "recovery powers");
    }
    return rep;
}

// ---- attention -------------------------------------------------------------

Tensor naive_attention(const Tensor& q, const Tensor& k, const Tensor& v, bool causal) {
    const std::size_t t = q.shape[0], d = q.shape[1];
    Tensor out({t, d});
    for (std::size_t p = 0; p < t; ++p) {
        const std::size_t limit = causal ? p + 1 : t;
        Vec s(limit);
        double hi = -1e300;
        for (std::size_t j = 0; j < limit; ++j) {
            s[j] = dot(q.row(p), k.row(j));
            hi = std::max(hi, s[j]);
        }
        double total = 0.0;
        for (std::size_t j = 0; j < limit; ++j) {
            s[j] = std::exp(s[j] - hi);
            total += s[j];
        }
        auto o = out.row(p);
        for (std::size_t j = 0; j < limit; ++j) {
            const double w = s[j] / total;
            for (std::size_t c = 0; c < d; ++c) o[c] += w * v.row(j)[c];
        }
    }
    return out;
}

SuiteReport suite_attention(std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "attention";
    rep.seed = seed;
    Rng rng(seed);

    // Vanilla reduction: identity journey is plain softmax attention.
    for (bool causal : {false, true}) {
        const std::size_t t = 6, d = 4;
        const Tensor q = random_tensor(rng, {t, d});
        const Tensor k = random_tensor(rng, {t, d});
        const Tensor v = random_tensor(rng, {t, d});
        AttendOptions opt;
        opt.causal = causal;
        const auto res = attend(q, k, v, JourneyTransforms::tied(Transform(BlockRotation::identity(d)), t), opt);
        observe(rep, max_abs_diff(res.output, naive_attention(q, k, v, causal)), 1e-12,
                "identity journey equals vanilla attention");
    }

    // SSM reduction.
    for (int trial = 0; trial < 5; ++trial) {
        const std::size_t t = 10, n = 6, m = 3, p = 2;
        SsmSystem sys;
        for (std::size_t i = 0; i + 1 < t; ++i) sys.a.push_back(random_orthogonal(rng, n));
        for (std::size_t i = 0; i < t; ++i) sys.b.push_back(random_matrix(rng, n, m));
        for (std::size_t i = 0; i < t; ++i) sys.c.push_back(random_matrix(rng, p, n));
        sys.x = random_tensor(rng, {t, m});
        observe(rep, max_abs_diff(ssm_scan(sys), ssm_via_attention(sys)), 1e-9,
                "forced-weight attention equals state recurrence");
    }

    // Rotary bridge, 1D: journey R^{-1} reproduces absolute-rotation scores.
    {
        const std::size_t t = 7, d = 6;
        const Tensor q = random_tensor(rng, {t, d});
        const Tensor k = random_tensor(rng, {t, d});
        const Tensor v = random_tensor(rng, {t, d});
        const BlockRotation r = random_block_rotation(rng, d, 1.0);
        const Matrix ref = rope_reference(q, k, r);
        const auto res = attend(q, k, v, JourneyTransforms::tied(Transform(r.inverse()), t), {});
        observe(rep, max_abs_diff(ref, res.scores), 1e-12, "rotary scores, 1D");
        const auto wrong = attend(q, k, v, JourneyTransforms::tied(Transform(r), t), {});
        const double control = max_abs_diff(ref, wrong.scores);
        expect(rep, control > 1e-5, "rotary negative control diverges (got " + fmt_residual(control) + ")");
    }

    // Rotary bridge, 2D axis split.
    {
        const std::size_t t = 8, blocks_x = 2, blocks_y = 2;
        const std::size_t d = 2 * (blocks_x + blocks_y);
        std::vector<double> tx, ty;
        for (std::size_t i = 0; i < blocks_x; ++i) tx.push_back(rng.uniform(-1.0, 1.0));
        for (std::size_t i = 0; i < blocks_y; ++i) ty.push_back(rng.uniform(-1.0, 1.0));
        std::vector<std::vector<std::int64_t>> coords;
        for (std::size_t i = 0; i < t; ++i)
            coords.push_back({rng.uniform_int(-4, 4), rng.uniform_int(-4, 4)});
        const Tensor q = random_tensor(rng, {t, d});
        const Tensor k = random_tensor(rng, {t, d});
        const Tensor v = random_tensor(rng, {t, d});
        auto [rx, ry] = rope2d_axis_rotations(tx, ty);
        const Matrix ref = rope2d_reference(q, k, tx, ty, coords);
        const auto res = attend_nd(q, k, v, {Transform(rx.inverse()), Transform(ry.inverse())}, coords, {});
        observe(rep, max_abs_diff(ref, res.scores), 1e-12, "rotary scores, 2D");
        const auto wrong = attend_nd(q, k, v, {Transform(rx), Transform(ry)}, coords, {});
        expect(rep, max_abs_diff(ref, wrong.scores) > 1e-5, "2D rotary negative control diverges");
    }

    // Single-token attention passes the value through.
    {
        const std::size_t d = 4;
        const Tensor q = random_tensor(rng, {1, d});
        const Tensor v = random_tensor(rng, {1, d});
        const auto res = attend(q, q, v, JourneyTransforms::tied(Transform(random_block_rotation(rng, d)), 1), {});
        expect(rep, res.output.data == v.data, "single token passes value through");
    }
    return rep;
}

// ---- journey ---------------------------------------------------------------

SuiteReport suite_journey(std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "journey";
    rep.seed = seed;
    Rng rng(seed);
    const std::size_t t = 12, d = 6;

    std::vector<Transform> steps;
    for (std::size_t i = 0; i + 1 < t; ++i)
        steps.emplace_back(DenseTransform(random_orthogonal(rng, d)));
    const auto j = JourneyTransforms::per_position(std::move(steps));
    double worst = 0.0;
    for (std::size_t p = 0; p < t; ++p)
        for (std::size_t q = 0; q < t; ++q)
            for (std::size_t r = 0; r < t; ++r) {
                const Matrix lhs = matmul(to_dense(j.relative(static_cast<std::int64_t>(p), static_cast<std::int64_t>(q))).matrix(),
                                          to_dense(j.relative(static_cast<std::int64_t>(q), static_cast<std::int64_t>(r))).matrix());
                const Matrix rhs = to_dense(j.relative(static_cast<std::int64_t>(p), static_cast<std::int64_t>(r))).matrix();
                worst = std::max(worst, max_abs_diff(lhs, rhs));
            }
    observe(rep, worst, 1e-12, "journey cocycle over all triples");

    const BlockRotation r = random_block_rotation(rng, d);
    const auto tied = JourneyTransforms::tied(Transform(r), t);
    bool exact = true;
    for (std::size_t p = 0; p < t && exact; ++p)
        for (std::size_t q = 0; q < t && exact; ++q) {
            const auto rel = std::get<BlockRotation>(tied.relative(static_cast<std::int64_t>(p), static_cast<std::int64_t>(q)));
            for (std::size_t s = 1; s < 3 && p + s < t && q + s < t; ++s) {
                const auto rel2 = std::get<BlockRotation>(
                    tied.relative(static_cast<std::int64_t>(p + s), static_cast<std::int64_t>(q + s)));
                if (!(rel.base() == rel2.base())) exact = false;
            }
            const auto direct = r.pow(static_cast<std::int64_t>(p) - static_cast<std::int64_t>(q));
            if (!(rel.base() == direct.base())) exact = false;
        }
    expect(rep, exact, "tied journey depends on distance only, exactly");
    return rep;
}

// ---- gradients -------------------------------------------------------------

SuiteReport suite_gradients(std::uint64_t seed) {
    SuiteReport rep;
    rep.name = "gradients";
    rep.seed = seed;
    Rng rng(seed);
    const double h = 1e-6;

    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t d = 8;
        const BlockRotation r = random_block_rotation(rng, d);
        const Vec v = random_vec(rng, d);
        const std::int64_t n = rng.uniform_int(-4, 5);
        for (std::size_t b = 0; b < r.blocks(); ++b) {
            const Vec analytic = r.apply_dtheta(n, v, b);
            auto at = [&](double delta) {
                AngleVector a = r.base();
                a.angles[b] += delta;
                return BlockRotation(a).pow(n).apply(v);
            };
            const Vec fp = at(h), fm = at(-h);
            double err = 0.0, scale = 1.0;
            for (std::size_t i = 0; i < d; ++i) {
                const double fd = (fp[i] - fm[i]) / (2 * h);
                err = std::max(err, std::abs(analytic[i] - fd));
                scale = std::max(scale, std::abs(fd));
            }
            observe(rep, err / scale, 1e-6, "rotation power derivative vs finite differences");
        }
    }

    for (bool causal : {false, true}) {
        const std::size_t t = 5, d = 6;
        const Tensor q = random_tensor(rng, {t, d});
        const Tensor k = random_tensor(rng, {t, d});
        const Tensor v = random_tensor(rng, {t, d});
        const Tensor g = random_tensor(rng, {t, d});
        const BlockRotation r = random_block_rotation(rng, d, 1.5);
        AttendOptions opt;
        opt.causal = causal;
        const Vec analytic = attend_grad_tied_angle(q, k, v, r, g, opt);
        auto loss = [&](const BlockRotation& rr) {
            const auto res = attend(q, k, v, JourneyTransforms::tied(Transform(rr), t), opt);
            double l = 0.0;
            for (std::size_t i = 0; i < res.output.data.size(); ++i) l += g.data[i] * res.output.data[i];
            return l;
        };
        for (std::size_t b = 0; b < r.blocks(); ++b) {
            AngleVector ap = r.base(), am = r.base();
            ap.angles[b] += h;
            am.angles[b] -= h;
            const double fd = (loss(BlockRotation(ap)) - loss(BlockRotation(am))) / (2 * h);
            const double rel = std::abs(analytic[b] - fd) / std::max(1.0, std::abs(fd));
            observe(rep, rel, 1e-5, "attention angle gradient vs finite differences");
        }
    }
    return rep;
}

using SuiteFn = SuiteReport (*)(std::uint64_t);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
    static const std::vector<std::pair<std::string, SuiteFn>> table = {
        {"algebra", suite_algebra},   {"interchange", suite_interchange},
        {"scan", suite_scan},         {"grid", suite_grid},
        {"mrep", suite_mrep},         {"align", suite_align},
        {"concat", suite_concat},     {"attention", suite_attention},
        {"journey", suite_journey},   {"gradients", suite_gradients},
    };
    return table;
}

} // namespace

bool CheckReport::pass() const {
    for (const auto& s : suites)
        if (s.failures != 0) return false;
    return true;
}

const std::vector<std::string>& check_suite_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [name, fn] : suite_table()) n.push_back(name);
        return n;
    }();
    return names;
}

CheckReport run_checks(const std::string& suite, std::uint64_t seed) {
    CheckReport report;
    bool found = false;
    for (const auto& [name, fn] : suite_table()) {
        if (suite == "all" || suite == name) {
            report.suites.push_back(fn(seed));
            found = true;
        }
    }
    if (!found) throw Error("unknown check suite '" + suite + "'");
    return report;
}

std::string render_text(const CheckReport& report) {
    std::ostringstream out;
    char line[160];
    std::snprintf(line, sizeof line, "%-12s %8s %9s %14s %6s\n", "suite", "cases", "failures",
                  "max_residual", "seed");
    out << line;
    for (const auto& s : report.suites) {
        std::snprintf(line, sizeof line, "%-12s %8zu %9zu %14.3e %6llu\n", s.name.c_str(), s.cases,
                      s.failures, s.max_residual, static_cast<unsigned long long>(s.seed));
        out << line;
        for (const auto& n : s.notes) out << "    " << n << "\n";
    }
    out << (report.pass() ? "overall: PASS" : "overall: FAIL") << " (" << report.suites.size()
        << " suites)\n";
    return out.str();
}

std::string render_machine(const CheckReport& report) {
    std::ostringstream out;
    std::size_t failures = 0;
    for (const auto& s : report.suites) {
        char line[200];
        std::snprintf(line, sizeof line, "suite=%s cases=%zu failures=%zu max_residual=%.6e seed=%llu status=%s\n",
                      s.name.c_str(), s.cases, s.failures, s.max_residual,
                      static_cast<unsigned long long>(s.seed), s.failures == 0 ? "pass" : "fail");
        out << line;
        failures += s.failures;
    }
    char tail[120];
    std::snprintf(tail, sizeof tail, "overall=%s suites=%zu failures=%zu\n",
                  report.pass() ? "pass" : "fail", report.suites.size(), failures);
    out << tail;
    return out.str();
}

} // namespace dnmc

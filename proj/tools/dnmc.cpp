// dnmc: command-line front end for the directional composition kernels.
//
// Exit codes: 0 success, 1 check failure, 2 usage or input error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "dnmc/align.hpp"
#include "dnmc/attention.hpp"
#include "dnmc/checks.hpp"
#include "dnmc/errors.hpp"
#include "dnmc/io.hpp"
#include "dnmc/mrep.hpp"
#include "dnmc/random.hpp"
#include "dnmc/scan.hpp"
#include "dnmc/tensor.hpp"

namespace {

using namespace dnmc;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Range {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

// "a..b" with signed endpoints; lists separated by commas.
std::vector<Range> parse_ranges(const std::string& text) {
    std::vector<Range> out;
    std::size_t at = 0;
    while (at <= text.size()) {
        const std::size_t end = std::min(text.find(',', at), text.size());
        const std::string part = text.substr(at, end - at);
        const std::size_t dots = part.find("..");
        if (dots == std::string::npos) throw FormatError("range: expected 'lo..hi', got '" + part + "'");
        try {
            Range r;
            std::size_t used = 0;
            r.lo = std::stoll(part.substr(0, dots), &used);
            if (used != dots) throw FormatError("range: bad endpoint in '" + part + "'");
            const std::string hi = part.substr(dots + 2);
            r.hi = std::stoll(hi, &used);
            if (used != hi.size()) throw FormatError("range: bad endpoint in '" + part + "'");
            out.push_back(r);
        } catch (const std::invalid_argument&) {
            throw FormatError("range: bad endpoint in '" + part + "'");
        } catch (const std::out_of_range&) {
            throw FormatError("range: endpoint out of range in '" + part + "'");
        }
        if (end == text.size()) break;
        at = end + 1;
    }
    if (out.empty()) throw EmptyRange("range: empty specification");
    return out;
}

Tensor vec_tensor(const Vec& v) { return Tensor({v.size()}, std::vector<double>(v.begin(), v.end())); }

Vec tensor_vec(const Tensor& t, const char* what) {
    if (t.rank() != 1) throw DimMismatch(std::string(what) + ": expected a rank-1 tensor");
    return t.data;
}

Matrix tensor_slice_matrix(const Tensor& t, std::size_t i) {
    const std::size_t r = t.shape[1], c = t.shape[2];
    Matrix m(r, c);
    std::copy(t.data.begin() + static_cast<std::ptrdiff_t>(i * r * c),
              t.data.begin() + static_cast<std::ptrdiff_t>((i + 1) * r * c), m.data.begin());
    return m;
}

std::vector<Matrix> tensor_matrices(const Tensor& t, const char* what) {
    if (t.rank() != 3) throw DimMismatch(std::string(what) + ": expected a rank-3 tensor");
    std::vector<Matrix> out;
    out.reserve(t.shape[0]);
    for (std::size_t i = 0; i < t.shape[0]; ++i) out.push_back(tensor_slice_matrix(t, i));
    return out;
}

std::vector<std::vector<std::int64_t>> tensor_coords(const Tensor& t) {
    if (t.rank() != 2) throw DimMismatch("coords: expected a rank-2 tensor");
    std::vector<std::vector<std::int64_t>> out(t.shape[0]);
    for (std::size_t i = 0; i < t.shape[0]; ++i) {
        auto row = t.row(i);
        for (double x : row) {
            if (x != std::floor(x)) throw FormatError("coords: entries must be integers");
            out[i].push_back(static_cast<std::int64_t>(x));
        }
    }
    return out;
}

// ---- subcommand bodies ------------------------------------------------------

int cmd_compose(const std::string& manifest_path, const std::string& elements_path,
                std::size_t axis, const std::string& output) {
    const auto basis = make_basis(load_manifest(manifest_path));
    const auto elements = load_elements(elements_path, basis);
    if (elements.empty()) throw EmptyRange("compose: no elements in input");
    Element acc = elements.front();
    for (std::size_t i = 1; i < elements.size(); ++i) acc = compose_axis(acc, elements[i], axis);
    save_elements(std::span<const Element>(&acc, 1), output);
    std::cout << "composed " << elements.size() << " elements along axis " << axis << " -> " << output
              << "\n";
    return 0;
}

int cmd_scan(const std::string& manifest_path, const std::string& input, std::size_t axis,
             const std::string& output) {
    const auto basis = make_basis(load_manifest(manifest_path));
    if (axis >= basis->axes()) throw AxisOutOfRange("scan: axis out of range");
    const Tensor seq = load_tensor(input);
    const AffinePair res = scan_sequence(seq, basis->transform(axis));
    save_tensor(vec_tensor(res.offset), output);
    std::cout << "scanned " << seq.shape[0] << " steps -> " << output << "\n";
    return 0;
}

int cmd_prefix(const std::string& manifest_path, const std::string& input, std::size_t axis,
               bool parallel, std::size_t chunk, unsigned workers, const std::string& output) {
    const auto basis = make_basis(load_manifest(manifest_path));
    if (axis >= basis->axes()) throw AxisOutOfRange("prefix: axis out of range");
    const Tensor seq = load_tensor(input);
    const Tensor out = parallel
                           ? prefix_scan_parallel(seq, basis->transform(axis),
                                                  {.chunk = chunk, .workers = workers})
                           : prefix_scan_sequential(seq, basis->transform(axis));
    save_tensor(out, output);
    std::cout << "prefix over " << seq.shape[0] << " steps (" << (parallel ? "parallel" : "sequential")
              << ") -> " << output << "\n";
    return 0;
}

int cmd_grid(const std::string& manifest_path, const std::string& input, const std::string& output) {
    const auto basis = make_basis(load_manifest(manifest_path));
    const Tensor grid = load_tensor(input);
    Vec res;
    if (grid.rank() == 3) {
        if (basis->axes() < 2) throw AxisOutOfRange("grid: manifest needs two axes for a 2D grid");
        res = compose_grid2d(grid, basis->transform(0), basis->transform(1));
    } else if (grid.rank() == 4) {
        if (basis->axes() < 3) throw AxisOutOfRange("grid: manifest needs three axes for a 3D grid");
        res = compose_grid3d(grid, basis->transform(0), basis->transform(1), basis->transform(2));
    } else {
        throw DimMismatch("grid: input must be rank 3 or 4");
    }
    save_tensor(vec_tensor(res), output);
    std::cout << "composed grid -> " << output << "\n";
    return 0;
}

int cmd_mrep(const std::string& manifest_path, const std::string& input,
             const std::vector<std::size_t>& windows, const std::string& output) {
    const auto basis = make_basis(load_manifest(manifest_path));
    const Tensor sig = load_tensor(input);
    Vec res;
    if (sig.rank() == 2) {
        if (windows.size() != 1) throw FormatError("mrep: a 1D signal takes one window length");
        res = mrep_1d(sig, windows[0], basis->transform(0));
    } else if (sig.rank() == 3) {
        if (windows.size() != 2) throw FormatError("mrep: a 2D signal takes two window lengths");
        if (basis->axes() < 2) throw AxisOutOfRange("mrep: manifest needs two axes for a 2D signal");
        res = mrep_2d(sig, windows[0], windows[1], basis->transform(0), basis->transform(1));
    } else {
        throw DimMismatch("mrep: input must be rank 2 or 3");
    }
    save_tensor(vec_tensor(res), output);
    std::cout << "mrep (" << res.size() << " magnitudes) -> " << output << "\n";
    return 0;
}

int cmd_align(const std::string& manifest_path, const std::string& x_path, const std::string& y_path,
              std::size_t axis, const std::string& range_spec, const std::string& score) {
    const auto basis = make_basis(load_manifest(manifest_path));
    const Vec x = tensor_vec(load_tensor(x_path), "align x");
    const Vec y = tensor_vec(load_tensor(y_path), "align y");
    const auto ranges = parse_ranges(range_spec);
    ScoreKind kind;
    if (score == "dot")
        kind = ScoreKind::Dot;
    else if (score == "cosine")
        kind = ScoreKind::Cosine;
    else
        throw FormatError("align: score must be 'dot' or 'cosine'");
    if (ranges.size() == 1) {
        const auto res = align(x, y, basis->transform(axis), ranges[0].lo, ranges[0].hi, kind);
        std::cout << "shift=" << res.shift << " score=" << fmt(res.score) << "\n";
    } else if (ranges.size() == 2) {
        if (basis->axes() < 2) throw AxisOutOfRange("align: manifest needs two axes for a 2D search");
        const auto res = align_2d(x, y, basis->transform(0), basis->transform(1), ranges[0].lo,
                                  ranges[0].hi, ranges[1].lo, ranges[1].hi, kind);
        std::cout << "shift_x=" << res.shift_x << " shift_y=" << res.shift_y << " score="
                  << fmt(res.score) << "\n";
    } else {
        throw FormatError("align: at most two ranges");
    }
    return 0;
}

int cmd_concat(const std::string& manifest_path, const std::string& elements_path, std::size_t axis,
               const std::string& mode, const std::string& output) {
    const auto basis = make_basis(load_manifest(manifest_path));
    const auto elements = load_elements(elements_path, basis);
    if (elements.empty()) throw EmptyRange("concat: no elements in input");
    ConcatMode m;
    if (mode == "strict")
        m = ConcatMode::Strict;
    else if (mode == "permissive")
        m = ConcatMode::Permissive;
    else
        throw FormatError("concat: mode must be 'strict' or 'permissive'");
    Element acc = elements.front();
    for (std::size_t i = 1; i < elements.size(); ++i) acc = concat(acc, elements[i], axis, m);
    save_elements(std::span<const Element>(&acc, 1), output);
    std::cout << "concatenated " << elements.size() << " elements along axis " << axis
              << " (power " << acc.powers[axis] << ") -> " << output << "\n";
    return 0;
}

int cmd_attend(const std::string& manifest_path, const std::string& q_path, const std::string& k_path,
               const std::string& v_path, bool causal, bool has_tied_angle, double tied_angle,
               const std::string& coords_path, double scale, const std::string& output) {
    const Tensor q = load_tensor(q_path);
    const Tensor k = load_tensor(k_path);
    const Tensor v = load_tensor(v_path);
    if (q.rank() != 2) throw DimMismatch("attend: Q must be rank 2");
    AttendOptions opt;
    opt.causal = causal;
    opt.scale = scale;
    AttendResult res;
    if (!coords_path.empty()) {
        if (manifest_path.empty()) throw FormatError("attend: --coords needs a manifest");
        const auto basis = make_basis(load_manifest(manifest_path));
        const auto coords = tensor_coords(load_tensor(coords_path));
        std::vector<Transform> rs;
        for (std::size_t a = 0; a < basis->axes(); ++a) rs.push_back(basis->transform(a));
        res = attend_nd(q, k, v, rs, coords, opt);
    } else {
        Transform tied = [&]() -> Transform {
            if (has_tied_angle) {
                if (q.shape[1] % 2 != 0) throw DimMismatch("attend: --tied-angle needs an even width");
                return BlockRotation::from_angles(std::vector<double>(q.shape[1] / 2, tied_angle));
            }
            if (manifest_path.empty()) throw FormatError("attend: need a manifest or --tied-angle");
            return make_basis(load_manifest(manifest_path))->transform(0);
        }();
        res = attend(q, k, v, JourneyTransforms::tied(std::move(tied), q.shape[0]), opt);
    }
    save_tensor(res.output, output);
    std::cout << "attended " << q.shape[0] << " tokens (" << (causal ? "causal" : "full") << ") -> "
              << output << "\n";
    return 0;
}

int cmd_ssm(const std::string& a_path, const std::string& b_path, const std::string& c_path,
            const std::string& x_path, bool via_attention, const std::string& output) {
    SsmSystem sys;
    sys.a = tensor_matrices(load_tensor(a_path), "ssm A");
    sys.b = tensor_matrices(load_tensor(b_path), "ssm B");
    sys.c = tensor_matrices(load_tensor(c_path), "ssm C");
    sys.x = load_tensor(x_path);
    const Tensor y = ssm_scan(sys);
    save_tensor(y, output);
    std::cout << "ssm over " << sys.x.shape[0] << " steps -> " << output << "\n";
    if (via_attention) {
        const double residual = max_abs_diff(y, ssm_via_attention(sys));
        char line[80];
        std::snprintf(line, sizeof line, "reduction_residual=%.6e status=%s\n", residual,
                      residual < 1e-9 ? "ok" : "fail");
        std::cout << line;
        if (!(residual < 1e-9)) return 1;
    }
    return 0;
}

int cmd_check(std::uint64_t seed, const std::string& suite, bool machine) {
    const CheckReport report = run_checks(suite, seed);
    std::cout << (machine ? render_machine(report) : render_text(report));
    return report.pass() ? 0 : 1;
}

// ---- bench ------------------------------------------------------------------

double median_ms(int repeats, const std::function<void()>& fn) {
    std::vector<double> ms;
    ms.reserve(static_cast<std::size_t>(repeats));
    for (int i = 0; i < repeats; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        fn();
        const auto t1 = std::chrono::steady_clock::now();
        ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    std::sort(ms.begin(), ms.end());
    return ms[ms.size() / 2];
}

double fit_exponent(const std::vector<std::size_t>& xs, const std::vector<double>& ys) {
    const std::size_t n = xs.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double lx = std::log(static_cast<double>(xs[i]));
        const double ly = std::log(std::max(ys[i], 1e-9));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (static_cast<double>(n) * sxy - sx * sy) / (static_cast<double>(n) * sxx - sx * sx);
}

int cmd_bench(const std::vector<std::size_t>& sizes, int repeats, std::size_t t_apply,
              std::size_t t_par, unsigned workers, bool machine) {
    if (sizes.empty()) throw EmptyRange("bench: empty size list");
    if (repeats < 1) throw FormatError("bench: repeats must be >= 1");
    Rng rng(7);

    struct Row {
        std::string name;
        std::size_t d, t;
        double ms;
    };
    std::vector<Row> rows;
    std::vector<double> rot_apply, dense_apply;

    volatile double sink = 0.0;
    for (std::size_t d : sizes) {
        if (d == 0 || d % 2 != 0) throw FormatError("bench: sizes must be positive even dims");
        const Tensor seq = [&] {
            Tensor t({t_apply, d});
            for (auto& x : t.data) x = rng.normal();
            return t;
        }();
        const BlockRotation rot = random_block_rotation(rng, d);
        const double rot_ms = median_ms(repeats, [&] {
            double acc = 0.0;
            for (std::size_t i = 0; i < t_apply; ++i) acc += rot.apply(seq.row(i))[0];
            sink = acc;
        });
        rows.push_back({"rotation_apply", d, t_apply, rot_ms});
        rot_apply.push_back(rot_ms);

        const DenseTransform dense(random_orthogonal(rng, d));
        const double dense_ms = median_ms(repeats, [&] {
            double acc = 0.0;
            for (std::size_t i = 0; i < t_apply; ++i) acc += dense.apply(seq.row(i))[0];
            sink = acc;
        });
        rows.push_back({"dense_apply", d, t_apply, dense_ms});
        dense_apply.push_back(dense_ms);
    }

    // Backend scan comparison at a fixed small width.
    {
        const std::size_t d = sizes.front();
        Tensor seq({std::min<std::size_t>(t_apply, 1024), d});
        for (auto& x : seq.data) x = rng.normal();
        const Transform rot{random_block_rotation(rng, d)};
        const Transform dense{DenseTransform(random_orthogonal(rng, d))};
        rows.push_back({"rotation_prefix", d, seq.shape[0],
                        median_ms(repeats, [&] { sink = prefix_scan_sequential(seq, rot).data[0]; })});
        rows.push_back({"dense_prefix", d, seq.shape[0],
                        median_ms(repeats, [&] { sink = prefix_scan_sequential(seq, dense).data[0]; })});
    }

    // Sequential vs blocked-parallel prefix scan.
    const std::size_t d_par = 64;
    Tensor big({t_par, d_par});
    for (auto& x : big.data) x = rng.normal();
    const Transform rbig{random_block_rotation(rng, d_par)};
    const double seq_ms = median_ms(repeats, [&] { sink = prefix_scan_sequential(big, rbig).data[0]; });
    const double par_ms = median_ms(repeats, [&] {
        sink = prefix_scan_parallel(big, rbig, {.chunk = (t_par + workers - 1) / workers, .workers = workers})
                   .data[0];
    });
    rows.push_back({"prefix_sequential", d_par, t_par, seq_ms});
    rows.push_back({"prefix_parallel", d_par, t_par, par_ms});
    (void)sink;

    const bool can_fit = sizes.size() >= 2;
    const double rot_exp = can_fit ? fit_exponent(sizes, rot_apply) : 0.0;
    const double dense_exp = can_fit ? fit_exponent(sizes, dense_apply) : 0.0;
    const double speedup = par_ms > 0.0 ? seq_ms / par_ms : 0.0;

    char line[160];
    if (machine) {
        for (const auto& r : rows) {
            std::snprintf(line, sizeof line, "bench=%s d=%zu t=%zu repeats=%d median_ms=%.4f\n",
                          r.name.c_str(), r.d, r.t, repeats, r.ms);
            std::cout << line;
        }
        if (can_fit) {
            std::snprintf(line, sizeof line,
                          "fit=apply rotation_exponent=%.3f dense_exponent=%.3f\n", rot_exp, dense_exp);
            std::cout << line;
        }
        std::snprintf(line, sizeof line, "parallel=prefix workers=%u speedup=%.3f\n", workers, speedup);
        std::cout << line;
    } else {
        std::snprintf(line, sizeof line, "%-18s %6s %9s %8s %12s\n", "benchmark", "d", "T", "reps",
                      "median_ms");
        std::cout << line;
        for (const auto& r : rows) {
            std::snprintf(line, sizeof line, "%-18s %6zu %9zu %8d %12.4f\n", r.name.c_str(), r.d, r.t,
                          repeats, r.ms);
            std::cout << line;
        }
        if (can_fit) {
            std::snprintf(line, sizeof line,
                          "apply cost fit: rotation ~ d^%.2f, dense ~ d^%.2f\n", rot_exp, dense_exp);
            std::cout << line;
        }
        std::snprintf(line, sizeof line,
                      "parallel prefix (T=%zu, d=%zu, %u workers): %.1f ms vs %.1f ms sequential (%.2fx)\n",
                      t_par, d_par, workers, par_ms, seq_ms, speedup);
        std::cout << line;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"directional non-commutative composition kernels"};
    app.require_subcommand(1);

    std::string manifest, input, output = "out.tensor", elements, x_path, y_path;
    std::string q_path, k_path, v_path, coords, a_path, b_path, c_path;
    std::string range_spec, score = "dot", mode = "strict", suite = "all";
    std::size_t axis = 0, chunk = 1024;
    unsigned workers = 0;
    bool parallel = false, causal = false, machine = false, via_attention = false;
    double tied_angle = 0.0, scale = 1.0;
    std::uint64_t seed = 0;
    std::vector<std::size_t> windows, sizes{64, 256, 1024};
    int repeats = 3;
    std::size_t t_apply = 1024, t_par = 1ull << 20;

    auto* sc_compose = app.add_subcommand("compose", "fold an element list along one axis");
    sc_compose->add_option("--manifest", manifest)->required();
    sc_compose->add_option("--elements", elements)->required();
    sc_compose->add_option("--axis", axis);
    sc_compose->add_option("--output", output);

    auto* sc_scan = app.add_subcommand("scan", "left-fold a sequence into one embedding");
    sc_scan->add_option("--manifest", manifest)->required();
    sc_scan->add_option("--input", input)->required();
    sc_scan->add_option("--axis", axis);
    sc_scan->add_option("--output", output);

    auto* sc_prefix = app.add_subcommand("prefix", "all prefix embeddings of a sequence");
    sc_prefix->add_option("--manifest", manifest)->required();
    sc_prefix->add_option("--input", input)->required();
    sc_prefix->add_option("--axis", axis);
    sc_prefix->add_flag("--parallel", parallel);
    sc_prefix->add_option("--chunk", chunk);
    sc_prefix->add_option("--workers", workers);
    sc_prefix->add_option("--output", output);

    auto* sc_grid = app.add_subcommand("grid", "compose a 2D/3D grid of cells");
    sc_grid->add_option("--manifest", manifest)->required();
    sc_grid->add_option("--input", input)->required();
    sc_grid->add_option("--output", output);

    auto* sc_mrep = app.add_subcommand("mrep", "shift-invariant magnitude descriptor");
    sc_mrep->add_option("--manifest", manifest)->required();
    sc_mrep->add_option("--input", input)->required();
    sc_mrep->add_option("--window", windows, "window length per axis")->required();
    sc_mrep->add_option("--output", output);

    auto* sc_align = app.add_subcommand("align", "recover the relative shift of two embeddings");
    sc_align->add_option("--manifest", manifest)->required();
    sc_align->add_option("--x", x_path)->required();
    sc_align->add_option("--y", y_path)->required();
    sc_align->add_option("--axis", axis);
    sc_align->add_option("--range", range_spec, "lo..hi per axis, comma separated")->required();
    sc_align->add_option("--score", score, "dot | cosine");

    auto* sc_concat = app.add_subcommand("concat", "concatenate elements along one axis");
    sc_concat->add_option("--manifest", manifest)->required();
    sc_concat->add_option("--elements", elements)->required();
    sc_concat->add_option("--axis", axis);
    sc_concat->add_option("--mode", mode, "strict | permissive");
    sc_concat->add_option("--output", output);

    auto* sc_attend = app.add_subcommand("attend", "relative-position attention");
    sc_attend->add_option("--manifest", manifest);
    sc_attend->add_option("--q", q_path)->required();
    sc_attend->add_option("--k", k_path)->required();
    sc_attend->add_option("--v", v_path)->required();
    sc_attend->add_flag("--causal", causal);
    auto* tied_opt = sc_attend->add_option("--tied-angle", tied_angle, "uniform block angle");
    sc_attend->add_option("--coords", coords, "token coordinate tensor");
    sc_attend->add_option("--scale", scale);
    sc_attend->add_option("--output", output);

    auto* sc_ssm = app.add_subcommand("ssm", "time-varying state-space recurrence");
    sc_ssm->add_option("--a", a_path)->required();
    sc_ssm->add_option("--b", b_path)->required();
    sc_ssm->add_option("--c", c_path)->required();
    sc_ssm->add_option("--x", x_path)->required();
    sc_ssm->add_flag("--via-attention", via_attention, "cross-check against the attention route");
    sc_ssm->add_option("--output", output);

    auto* sc_check = app.add_subcommand("check", "run seeded property suites");
    sc_check->add_option("--seed", seed);
    sc_check->add_option("--suite", suite, "suite name or 'all'");
    sc_check->add_flag("--machine", machine);

    auto* sc_bench = app.add_subcommand("bench", "time kernels and scans");
    sc_bench->add_option("--sizes", sizes, "embedding dims to sweep");
    sc_bench->add_option("--repeats", repeats);
    sc_bench->add_option("--t", t_apply, "positions for apply timing");
    sc_bench->add_option("--t-par", t_par, "sequence length for the parallel scan");
    sc_bench->add_option("--workers", workers);
    sc_bench->add_flag("--machine", machine);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sc_compose->parsed()) return cmd_compose(manifest, elements, axis, output);
        if (sc_scan->parsed()) return cmd_scan(manifest, input, axis, output);
        if (sc_prefix->parsed()) return cmd_prefix(manifest, input, axis, parallel, chunk, workers, output);
        if (sc_grid->parsed()) return cmd_grid(manifest, input, output);
        if (sc_mrep->parsed()) return cmd_mrep(manifest, input, windows, output);
        if (sc_align->parsed()) return cmd_align(manifest, x_path, y_path, axis, range_spec, score);
        if (sc_concat->parsed()) return cmd_concat(manifest, elements, axis, mode, output);
        if (sc_attend->parsed())
            return cmd_attend(manifest, q_path, k_path, v_path, causal, tied_opt->count() > 0,
                              tied_angle, coords, scale, output);
        if (sc_ssm->parsed()) return cmd_ssm(a_path, b_path, c_path, x_path, via_attention, output);
        if (sc_check->parsed()) return cmd_check(seed, suite, machine);
        if (sc_bench->parsed())
            return cmd_bench(sizes, repeats, t_apply, t_par, workers == 0 ? 4 : workers, machine);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

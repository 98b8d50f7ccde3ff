#include "dnmc/mrep.hpp"

#include <cmath>

#include "dnmc/errors.hpp"

namespace dnmc {

namespace {

void require_window(std::size_t window, const char* what) {
    if (window == 0) throw EmptyRange(std::string(what) + ": window must be positive");
}

std::span<const double> row_or_zero(const Tensor& signal, std::int64_t r, const Vec& zero) {
    if (r < 0 || static_cast<std::size_t>(r) >= signal.shape[0]) return zero;
    return signal.row(static_cast<std::size_t>(r));
}

} // namespace

Vec window_embed(const Tensor& signal, std::int64_t start, std::size_t window, const Transform& r) {
    if (signal.rank() != 2) throw DimMismatch("window_embed: signal must be rank 2");
    const std::size_t d = dim(r);
    if (signal.shape[1] != d) throw DimMismatch("window_embed: signal width does not match transform dim");
    require_window(window, "window_embed");
    const Vec zero(d, 0.0);
    // Horner form a[k] + R (a[k+1] + R (...)) of sum_i R^i a[k+i].
    auto last = row_or_zero(signal, start + static_cast<std::int64_t>(window) - 1, zero);
    Vec s(last.begin(), last.end());
    for (std::int64_t i = static_cast<std::int64_t>(window) - 2; i >= 0; --i) {
        s = dnmc::apply(r, s);
        add_inplace(s, row_or_zero(signal, start + i, zero));
    }
    return s;
}

Vec window_embed_2d(const Tensor& signal, std::int64_t start_x, std::int64_t start_y,
                    std::size_t wx, std::size_t wy, const Transform& rx, const Transform& ry) {
    if (signal.rank() != 3) throw DimMismatch("window_embed_2d: signal must be rank 3");
    const std::size_t d = dim(rx);
    if (dim(ry) != d) throw DimMismatch("window_embed_2d: axis transform dims differ");
    if (signal.shape[2] != d) throw DimMismatch("window_embed_2d: cell width does not match transform dim");
    require_window(wx, "window_embed_2d");
    require_window(wy, "window_embed_2d");
    const std::size_t h = signal.shape[0], w = signal.shape[1];
    const Vec zero(d, 0.0);

    auto cell = [&](std::int64_t i, std::int64_t j) -> std::span<const double> {
        if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= h || static_cast<std::size_t>(j) >= w)
            return zero;
        return {signal.data.data() + (static_cast<std::size_t>(i) * w + static_cast<std::size_t>(j)) * d, d};
    };
    auto row_embed = [&](std::int64_t i) {
        auto last = cell(i, start_y + static_cast<std::int64_t>(wy) - 1);
        Vec s(last.begin(), last.end());
        for (std::int64_t j = static_cast<std::int64_t>(wy) - 2; j >= 0; --j) {
            s = dnmc::apply(ry, s);
            add_inplace(s, cell(i, start_y + j));
        }
        return s;
    };

    Vec s = row_embed(start_x + static_cast<std::int64_t>(wx) - 1);
    for (std::int64_t i = static_cast<std::int64_t>(wx) - 2; i >= 0; --i) {
        s = dnmc::apply(rx, s);
        add_inplace(s, row_embed(start_x + i));
    }
    return s;
}

Vec magnitude_vector(std::span<const double> v) {
    if (v.size() % kMagnitudeBlockSize != 0)
        throw DimMismatch("magnitude_vector: dimension must be a multiple of the block size");
    Vec m(v.size() / kMagnitudeBlockSize);
    for (std::size_t b = 0; b < m.size(); ++b)
        m[b] = std::hypot(v[2 * b], v[2 * b + 1]);
    return m;
}

Vec mrep_1d(const Tensor& signal, std::size_t window, const Transform& r) {
    if (signal.rank() != 2) throw DimMismatch("mrep_1d: signal must be rank 2");
    require_window(window, "mrep_1d");
    const std::size_t d = dim(r);
    if (signal.shape[1] != d) throw DimMismatch("mrep_1d: signal width does not match transform dim");
    if (d % kMagnitudeBlockSize != 0) throw DimMismatch("mrep_1d: dim must be even");
    const std::int64_t t = static_cast<std::int64_t>(signal.shape[0]);
    const std::int64_t k = static_cast<std::int64_t>(window);
    Vec acc(d / kMagnitudeBlockSize, 0.0);
    for (std::int64_t s = -(k - 1); s < t; ++s)
        add_inplace(acc, magnitude_vector(window_embed(signal, s, window, r)));
    return acc;
}

Vec mrep_2d(const Tensor& signal, std::size_t wx, std::size_t wy,
            const Transform& rx, const Transform& ry) {
    if (signal.rank() != 3) throw DimMismatch("mrep_2d: signal must be rank 3");
    require_window(wx, "mrep_2d");
    require_window(wy, "mrep_2d");
    const std::size_t d = dim(rx);
    if (signal.shape[2] != d) throw DimMismatch("mrep_2d: cell width does not match transform dim");
    if (d % kMagnitudeBlockSize != 0) throw DimMismatch("mrep_2d: dim must be even");
    const std::int64_t h = static_cast<std::int64_t>(signal.shape[0]);
    const std::int64_t w = static_cast<std::int64_t>(signal.shape[1]);
    const std::int64_t kx = static_cast<std::int64_t>(wx);
    const std::int64_t ky = static_cast<std::int64_t>(wy);
    Vec acc(d / kMagnitudeBlockSize, 0.0);
    for (std::int64_t sx = -(kx - 1); sx < h; ++sx)
        for (std::int64_t sy = -(ky - 1); sy < w; ++sy)
            add_inplace(acc, magnitude_vector(window_embed_2d(signal, sx, sy, wx, wy, rx, ry)));
    return acc;
}

} // namespace dnmc

#include "trackkit/spectral.hpp"

#include <cmath>

#include "trackkit/simd.hpp"

namespace trackkit::spectral {

namespace {

using cd = std::complex<double>;

// Row-column 2D transform over a complex buffer.
void fft_2d(Spectrum& s, bool inverse) {
    const int h = s.height, w = s.width;
    for (int y = 0; y < h; ++y) fft_1d(s.data.data() + static_cast<std::size_t>(y) * w, w, inverse);
    std::vector<cd> col(h);
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y) col[y] = s.at(y, x);
        fft_1d(col.data(), h, inverse);
        for (int y = 0; y < h; ++y) s.at(y, x) = col[y];
    }
}

Spectrum channel_spectrum(const FeatureMap& fm, int c, int out_h, int out_w) {
    Spectrum s(out_h, out_w);
    for (int y = 0; y < fm.height; ++y)
        for (int x = 0; x < fm.width; ++x)
            s.at(y, x) = cd(fm.at(y, x, c), 0.0);
    fft_2d(s, false);
    return s;
}

}  // namespace

Spectrum dft2(const Grid& g) {
    if (g.height < 1 || g.width < 1) throw DimensionError("dft2: empty grid");
    Spectrum s(g.height, g.width);
    for (std::size_t i = 0; i < g.data.size(); ++i) s.data[i] = cd(g.data[i], 0.0);
    fft_2d(s, false);
    return s;
}

Grid idft2(const Spectrum& spec) {
    Spectrum s = spec;
    fft_2d(s, true);
    Grid g(s.height, s.width);
    const double norm = 1.0 / (static_cast<double>(s.height) * s.width);
    for (std::size_t i = 0; i < g.data.size(); ++i) g.data[i] = s.data[i].real() * norm;
    return g;
}

Grid xcorr_spatial(const FeatureMap& tmpl, const FeatureMap& search) {
    if (tmpl.channels != search.channels)
        throw DimensionError("xcorr: channel mismatch");
    if (tmpl.height > search.height || tmpl.width > search.width)
        throw DimensionError("xcorr: template larger than search region");
    const int oh = search.height - tmpl.height + 1;
    const int ow = search.width - tmpl.width + 1;
    const int c = tmpl.channels;
    const std::size_t row_len = static_cast<std::size_t>(tmpl.width) * c;
    Grid out(oh, ow);
    for (int dy = 0; dy < oh; ++dy) {
        for (int dx = 0; dx < ow; ++dx) {
            double acc = 0.0;
            for (int ty = 0; ty < tmpl.height; ++ty) {
                // One template row against the matching search row; the
                // channel-fastest layout makes this a single long dot.
                acc += simd::dot_wide(tmpl.point(ty, 0),
                                      search.point(dy + ty, dx), row_len);
            }
            out.at(dy, dx) = acc;
        }
    }
    return out;
}

Grid xcorr_fft(const FeatureMap& tmpl, const FeatureMap& search) {
    if (tmpl.channels != search.channels)
        throw DimensionError("xcorr: channel mismatch");
    if (tmpl.height > search.height || tmpl.width > search.width)
        throw DimensionError("xcorr: template larger than search region");
    const int sh = search.height, sw = search.width;
    const int oh = sh - tmpl.height + 1;
    const int ow = sw - tmpl.width + 1;

    // Zero-padding the template to the search size makes the circular
    // correlation linear on the first oh x ow displacements.
    Spectrum acc(sh, sw);
    for (int c = 0; c < tmpl.channels; ++c) {
        const Spectrum ts = channel_spectrum(tmpl, c, sh, sw);
        const Spectrum ss = channel_spectrum(search, c, sh, sw);
        for (std::size_t i = 0; i < acc.data.size(); ++i)
            acc.data[i] += std::conj(ts.data[i]) * ss.data[i];
    }
    const Grid full = idft2(acc);
    Grid out(oh, ow);
    for (int y = 0; y < oh; ++y)
        for (int x = 0; x < ow; ++x) out.at(y, x) = full.at(y, x);
    return out;
}

Grid xcorr_circular(const FeatureMap& tmpl, const FeatureMap& search) {
    if (tmpl.channels != search.channels || tmpl.height != search.height ||
        tmpl.width != search.width)
        throw DimensionError("xcorr_circular: shape mismatch");
    const int h = tmpl.height, w = tmpl.width;
    Spectrum acc(h, w);
    for (int c = 0; c < tmpl.channels; ++c) {
        const Spectrum ts = channel_spectrum(tmpl, c, h, w);
        const Spectrum ss = channel_spectrum(search, c, h, w);
        for (std::size_t i = 0; i < acc.data.size(); ++i)
            acc.data[i] += std::conj(ts.data[i]) * ss.data[i];
    }
    const Grid full = idft2(acc);
    // Roll so displacement 0 sits at the center cell.
    Grid out(h, w);
    const int cy = h / 2, cx = w / 2;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            out.at(y, x) = full.at((y - cy + h) % h, (x - cx + w) % w);
    return out;
}

}  // namespace trackkit::spectral

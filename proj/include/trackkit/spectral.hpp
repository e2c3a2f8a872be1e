#pragma once

#include <complex>
#include <vector>

#include "trackkit/types.hpp"

namespace trackkit::spectral {

/// Real H x W grid in double precision; the working type of the correlation
/// filter head.
struct Grid {
    int height = 0;
    int width = 0;
    std::vector<double> data;

    Grid() = default;
    Grid(int h, int w) : height(h), width(w), data(static_cast<std::size_t>(h) * w, 0.0) {}

    double& at(int y, int x) { return data[static_cast<std::size_t>(y) * width + x]; }
    double at(int y, int x) const { return data[static_cast<std::size_t>(y) * width + x]; }
};

/// Complex-valued grid with the dimensions of its source.
struct Spectrum {
    int height = 0;
    int width = 0;
    std::vector<std::complex<double>> data;

    Spectrum() = default;
    Spectrum(int h, int w)
        : height(h), width(w), data(static_cast<std::size_t>(h) * w, {0.0, 0.0}) {}

    std::complex<double>& at(int y, int x) {
        return data[static_cast<std::size_t>(y) * width + x];
    }
    std::complex<double> at(int y, int x) const {
        return data[static_cast<std::size_t>(y) * width + x];
    }
};

/// Unnormalized forward 2D DFT. Arbitrary sizes are supported (radix-2 for
/// powers of two, Bluestein otherwise).
Spectrum dft2(const Grid& g);

/// Inverse 2D DFT with the 1/(H*W) factor; returns the real part.
Grid idft2(const Spectrum& s);

/// In-place 1D FFT over a contiguous complex buffer (inverse = conjugate
/// transform without normalization). Exposed for reuse by the filter head.
void fft_1d(std::complex<double>* data, int n, bool inverse);

/// Valid-mode cross-correlation summed over channels; output dims are
/// (H'-H+1) x (W'-W+1). Throws DimensionError when the template does not fit
/// inside the search region. This is the spatial reference path.
Grid xcorr_spatial(const FeatureMap& tmpl, const FeatureMap& search);

/// Same contract as xcorr_spatial, computed with zero-padded DFTs and a
/// conjugated template spectrum.
Grid xcorr_fft(const FeatureMap& tmpl, const FeatureMap& search);

/// Circular cross-correlation of two equal-size maps, summed over channels.
/// The result is rolled so that zero displacement lands at (H/2, W/2).
Grid xcorr_circular(const FeatureMap& tmpl, const FeatureMap& search);

}  // namespace trackkit::spectral

#pragma once

#include <optional>
#include <vector>

#include "trackkit/features.hpp"
#include "trackkit/image.hpp"
#include "trackkit/spectral.hpp"
#include "trackkit/types.hpp"

namespace trackkit::boxprop {

struct BoxPropConfig {
    double context_factor = 4.5;   // template/search side = factor * max(w, h)
    int patch_size = 520;          // crop resolution in pixels
    int num_scales = 3;            // odd
    double scale_step = 1.0275;
    double scale_penalty = 0.985;  // applied to the non-middle scales
    double ridge_lambda = 1e-4;
    double momentum = 1e-2;        // moving-average template update
    enum class Head { xcorr, dcf } head = Head::dcf;
    int response_upsample = 16;
    double sigma_factor = 0.1;     // ideal-response sigma, fraction of width
    bool hann_window = false;      // optional displacement prior, off by default
    int stride = 8;

    int response_size() const { return patch_size / stride; }
    void validate() const;
};

/// Square crop of side `side` centered at (cu, cv), resampled bilinearly to
/// out_size x out_size; out-of-frame area takes the frame's mean color.
io::Image crop_patch(const io::Image& frame, double cu, double cv, double side,
                     int out_size);

/// Same geometry in feature space: resample `fm` channels to an
/// out_cells x out_cells grid covering the crop square. Out-of-map area takes
/// the per-channel mean.
FeatureMap crop_patch_features(const FeatureMap& fm, double cu, double cv,
                               double side, int out_cells);

/// Centered Gaussian ideal response with peak 1 at (h/2, w/2).
spectral::Grid gaussian_response(int h, int w, double sigma);

/// Fourier-domain ridge-regression template: per-channel numerator spectra
/// and a shared real denominator, kept separately so the online moving
/// average can run on both.
struct DcfTemplate {
    int height = 0;
    int width = 0;
    double lambda = 0.0;
    std::vector<spectral::Spectrum> numerator;  // one per channel
    std::vector<double> denominator;            // >= lambda everywhere
    spectral::Spectrum ideal;                   // spectrum of y

    bool empty() const { return numerator.empty(); }
};

/// Solve the circular ridge regression for template features x against ideal
/// response y. Throws SingularError when lambda = 0 and a denominator bin
/// vanishes.
DcfTemplate dcf_solve(const FeatureMap& x, const spectral::Grid& y, double lambda);

/// Moving-average update with momentum alpha: both numerator and denominator
/// blend toward the statistics of x_t.
void dcf_update(DcfTemplate& tmpl, const FeatureMap& x_t, double alpha);

/// Correlation response of the template over search features z (circular,
/// zero displacement at the grid center).
spectral::Grid dcf_response(const DcfTemplate& tmpl, const FeatureMap& z);

/// Peak location of `g` after bilinear upsampling by `factor`; returned in
/// (fractional) cell coordinates.
struct Peak {
    double y = 0.0;
    double x = 0.0;
    double value = 0.0;
};
Peak upsampled_peak(const spectral::Grid& g, int factor);

/// Index of the best scale under multiplicative penalties on the non-middle
/// scales; ties resolve to the scale closest to the middle.
int select_scale(const std::vector<double>& maxima, double penalty);

/// Single-object tracker; owns one template and box per video.
class SotTracker {
  public:
    SotTracker(const BoxPropConfig& cfg, const features::FeatureSource& src);

    /// Initialize from the ground-truth box on the first frame.
    void init(const io::Image& frame, const Box& box);
    void init(const FeatureMap& frame_features, const Box& box);

    /// Advance one frame and return the updated box estimate.
    Box step(const io::Image& frame);
    Box step(const FeatureMap& frame_features);

    const Box& box() const;

  private:
    FeatureMap patch_features(const io::Image* frame, const FeatureMap* fm,
                              double side) const;
    void init_common(const FeatureMap& tmpl_feats);
    Box step_common(const io::Image* frame, const FeatureMap* fm);

    BoxPropConfig cfg_;
    features::FeatureSource src_;
    std::optional<Box> box_;
    DcfTemplate dcf_;
    FeatureMap xcorr_template_;  // frame-1 crop, object extent only
    int xcorr_y0_ = 0;           // template offset inside the patch grid
    int xcorr_x0_ = 0;
    spectral::Grid ideal_;
};

}  // namespace trackkit::boxprop

#include "trackkit/boxprop.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace trackkit::boxprop {

void BoxPropConfig::validate() const {
    if (num_scales < 1 || num_scales % 2 == 0)
        throw ConfigError("num_scales must be odd and positive");
    if (scale_step <= 1.0) throw ConfigError("scale_step must be > 1");
    if (ridge_lambda < 0) throw ConfigError("ridge_lambda must be >= 0");
    if (momentum < 0 || momentum > 1) throw ConfigError("momentum must be in [0,1]");
    if (patch_size < stride || stride < 1)
        throw ConfigError("patch_size must cover at least one stride cell");
    if (response_upsample < 1) throw ConfigError("response_upsample must be >= 1");
}

io::Image crop_patch(const io::Image& frame, double cu, double cv, double side,
                     int out_size) {
    if (side <= 0 || out_size < 1) throw DimensionError("crop_patch: bad crop size");
    double mean[3] = {0, 0, 0};
    const std::size_t n = static_cast<std::size_t>(frame.width) * frame.height;
    for (std::size_t i = 0; i < n; ++i)
        for (int c = 0; c < 3; ++c) mean[c] += frame.rgb[i * 3 + c];
    for (int c = 0; c < 3; ++c) mean[c] /= static_cast<double>(n);

    io::Image out(out_size, out_size);
    const double step = side / out_size;
    const double x_start = cu - side / 2.0;
    const double y_start = cv - side / 2.0;
    for (int oy = 0; oy < out_size; ++oy) {
        const double fy = y_start + (oy + 0.5) * step - 0.5;  // sample between pixel centers
        for (int ox = 0; ox < out_size; ++ox) {
            const double fx = x_start + (ox + 0.5) * step - 0.5;
            std::uint8_t* dst = out.pixel(oy, ox);
            const int x0 = static_cast<int>(std::floor(fx));
            const int y0 = static_cast<int>(std::floor(fy));
            const double wx = fx - x0, wy = fy - y0;
            for (int c = 0; c < 3; ++c) {
                double acc = 0.0;
                for (int dy = 0; dy < 2; ++dy) {
                    for (int dx = 0; dx < 2; ++dx) {
                        const int sx = x0 + dx, sy = y0 + dy;
                        const double w = (dx ? wx : 1 - wx) * (dy ? wy : 1 - wy);
                        const bool inside = sx >= 0 && sx < frame.width && sy >= 0 &&
                                            sy < frame.height;
                        acc += w * (inside ? frame.pixel(sy, sx)[c] : mean[c]);
                    }
                }
                dst[c] = static_cast<std::uint8_t>(std::clamp(acc + 0.5, 0.0, 255.0));
            }
        }
    }
    return out;
}

FeatureMap crop_patch_features(const FeatureMap& fm, double cu, double cv,
                               double side, int out_cells) {
    if (side <= 0 || out_cells < 1)
        throw DimensionError("crop_patch_features: bad crop size");
    const int c = fm.channels;
    std::vector<double> mean(c, 0.0);
    for (std::size_t i = 0; i < fm.point_count(); ++i)
        for (int k = 0; k < c; ++k) mean[k] += fm.data[i * c + k];
    for (int k = 0; k < c; ++k) mean[k] /= static_cast<double>(fm.point_count());

    FeatureMap out(out_cells, out_cells, c, fm.stride);
    const double step = side / out_cells;
    for (int oy = 0; oy < out_cells; ++oy) {
        // Cell centers of fm sit at (i + 0.5) * stride pixels.
        const double gy = (cv - side / 2.0 + (oy + 0.5) * step) / fm.stride - 0.5;
        for (int ox = 0; ox < out_cells; ++ox) {
            const double gx = (cu - side / 2.0 + (ox + 0.5) * step) / fm.stride - 0.5;
            const int x0 = static_cast<int>(std::floor(gx));
            const int y0 = static_cast<int>(std::floor(gy));
            const double wx = gx - x0, wy = gy - y0;
            float* dst = out.point(oy, ox);
            for (int k = 0; k < c; ++k) {
                double acc = 0.0;
                for (int dy = 0; dy < 2; ++dy) {
                    for (int dx = 0; dx < 2; ++dx) {
                        const int sx = x0 + dx, sy = y0 + dy;
                        const double w = (dx ? wx : 1 - wx) * (dy ? wy : 1 - wy);
                        const bool inside =
                            sx >= 0 && sx < fm.width && sy >= 0 && sy < fm.height;
                        acc += w * (inside ? fm.at(sy, sx, k) : mean[k]);
                    }
                }
                dst[k] = static_cast<float>(acc);
            }
        }
    }
    return out;
}

spectral::Grid gaussian_response(int h, int w, double sigma) {
    spectral::Grid y(h, w);
    const int cy = h / 2, cx = w / 2;
    const double inv = 1.0 / (2.0 * sigma * sigma);
    for (int i = 0; i < h; ++i)
        for (int j = 0; j < w; ++j) {
            const double dy = i - cy, dx = j - cx;
            y.at(i, j) = std::exp(-(dx * dx + dy * dy) * inv);
        }
    return y;
}

DcfTemplate dcf_solve(const FeatureMap& x, const spectral::Grid& y, double lambda) {
    if (x.height != y.height || x.width != y.width)
        throw DimensionError("dcf_solve: feature/response size mismatch");
    if (lambda < 0) throw ConfigError("dcf_solve: lambda must be >= 0");
    for (const float v : x.data)
        if (!std::isfinite(v)) throw NumericalError("dcf_solve: non-finite features");

    DcfTemplate t;
    t.height = x.height;
    t.width = x.width;
    t.lambda = lambda;
    t.ideal = spectral::dft2(y);
    t.denominator.assign(static_cast<std::size_t>(x.height) * x.width, lambda);
    t.numerator.reserve(x.channels);

    spectral::Grid chan(x.height, x.width);
    for (int c = 0; c < x.channels; ++c) {
        for (int i = 0; i < x.height; ++i)
            for (int j = 0; j < x.width; ++j) chan.at(i, j) = x.at(i, j, c);
        spectral::Spectrum xs = spectral::dft2(chan);
        for (std::size_t k = 0; k < xs.data.size(); ++k)
            t.denominator[k] += std::norm(xs.data[k]);
        for (std::size_t k = 0; k < xs.data.size(); ++k)
            xs.data[k] *= std::conj(t.ideal.data[k]);
        t.numerator.push_back(std::move(xs));
    }

    if (lambda == 0.0) {
        double dmax = 0.0;
        for (const double d : t.denominator) dmax = std::max(dmax, d);
        for (const double d : t.denominator)
            if (d <= dmax * 1e-12)
                throw SingularError("dcf_solve: zero denominator bin with lambda = 0");
    }
    return t;
}

void dcf_update(DcfTemplate& tmpl, const FeatureMap& x_t, double alpha) {
    if (tmpl.empty()) throw NotInitialized("dcf_update: template not solved");
    if (x_t.height != tmpl.height || x_t.width != tmpl.width ||
        x_t.channels != static_cast<int>(tmpl.numerator.size()))
        throw DimensionError("dcf_update: feature size mismatch");
    if (alpha == 0.0) return;

    spectral::Grid chan(x_t.height, x_t.width);
    std::vector<double> new_den(tmpl.denominator.size(), tmpl.lambda);
    for (int c = 0; c < x_t.channels; ++c) {
        for (int i = 0; i < x_t.height; ++i)
            for (int j = 0; j < x_t.width; ++j) chan.at(i, j) = x_t.at(i, j, c);
        spectral::Spectrum xs = spectral::dft2(chan);
        for (std::size_t k = 0; k < xs.data.size(); ++k)
            new_den[k] += std::norm(xs.data[k]);
        auto& num = tmpl.numerator[c].data;
        for (std::size_t k = 0; k < xs.data.size(); ++k)
            num[k] = (1.0 - alpha) * num[k] +
                     alpha * xs.data[k] * std::conj(tmpl.ideal.data[k]);
    }
    for (std::size_t k = 0; k < tmpl.denominator.size(); ++k)
        tmpl.denominator[k] = (1.0 - alpha) * tmpl.denominator[k] + alpha * new_den[k];
}

spectral::Grid dcf_response(const DcfTemplate& tmpl, const FeatureMap& z) {
    if (tmpl.empty()) throw NotInitialized("dcf_response: template not solved");
    if (z.height != tmpl.height || z.width != tmpl.width ||
        z.channels != static_cast<int>(tmpl.numerator.size()))
        throw DimensionError("dcf_response: feature size mismatch");

    spectral::Spectrum acc(tmpl.height, tmpl.width);
    spectral::Grid chan(z.height, z.width);
    for (int c = 0; c < z.channels; ++c) {
        for (int i = 0; i < z.height; ++i)
            for (int j = 0; j < z.width; ++j) chan.at(i, j) = z.at(i, j, c);
        const spectral::Spectrum zs = spectral::dft2(chan);
        const auto& num = tmpl.numerator[c].data;
        for (std::size_t k = 0; k < acc.data.size(); ++k)
            acc.data[k] += std::conj(num[k]) * zs.data[k] / tmpl.denominator[k];
    }
    return spectral::idft2(acc);
}

Peak upsampled_peak(const spectral::Grid& g, int factor) {
    // Coarse argmax first; bilinear interpolation cannot exceed its corner
    // values, so the fine search only needs the surrounding cells.
    int py = 0, px = 0;
    double best = g.at(0, 0);
    for (int y = 0; y < g.height; ++y)
        for (int x = 0; x < g.width; ++x)
            if (g.at(y, x) > best) {
                best = g.at(y, x);
                py = y;
                px = x;
            }
    if (factor <= 1) return Peak{static_cast<double>(py), static_cast<double>(px), best};

    auto sample = [&](double fy, double fx) {
        const int y0 = std::clamp(static_cast<int>(std::floor(fy)), 0, g.height - 1);
        const int x0 = std::clamp(static_cast<int>(std::floor(fx)), 0, g.width - 1);
        const int y1 = std::min(y0 + 1, g.height - 1);
        const int x1 = std::min(x0 + 1, g.width - 1);
        const double wy = fy - y0, wx = fx - x0;
        return (1 - wy) * ((1 - wx) * g.at(y0, x0) + wx * g.at(y0, x1)) +
               wy * ((1 - wx) * g.at(y1, x0) + wx * g.at(y1, x1));
    };
    Peak peak{static_cast<double>(py), static_cast<double>(px), best};
    const double step = 1.0 / factor;
    for (int iy = -factor; iy <= factor; ++iy) {
        for (int ix = -factor; ix <= factor; ++ix) {
            const double fy = py + iy * step;
            const double fx = px + ix * step;
            if (fy < 0 || fy > g.height - 1 || fx < 0 || fx > g.width - 1) continue;
            const double v = sample(fy, fx);
            if (v > peak.value) peak = Peak{fy, fx, v};
        }
    }
    return peak;
}

int select_scale(const std::vector<double>& maxima, double penalty) {
    const int mid = static_cast<int>(maxima.size()) / 2;
    int best = mid;
    double best_val = maxima[mid];
    for (int i = 0; i < static_cast<int>(maxima.size()); ++i) {
        const double v = maxima[i] * (i == mid ? 1.0 : penalty);
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }
    return best;
}

SotTracker::SotTracker(const BoxPropConfig& cfg, const features::FeatureSource& src)
    : cfg_(cfg), src_(src) {
    cfg_.validate();
}

FeatureMap SotTracker::patch_features(const io::Image* frame, const FeatureMap* fm,
                                      double side) const {
    const int cells = cfg_.response_size();
    FeatureMap feats;
    if (frame) {
        const io::Image patch = crop_patch(*frame, box_->u, box_->v, side, cfg_.patch_size);
        feats = features::extract_builtin(patch, cfg_.stride);
    } else {
        feats = crop_patch_features(*fm, box_->u, box_->v, side, cells);
    }
    if (src_.normalize) feats = features::l2_normalize_points(feats);
    return feats;
}

void SotTracker::init_common(const FeatureMap& tmpl_feats) {
    const int cells = cfg_.response_size();
    ideal_ = gaussian_response(cells, cells, cfg_.sigma_factor * cells);
    if (cfg_.head == BoxPropConfig::Head::dcf) {
        dcf_ = dcf_solve(tmpl_feats, ideal_, cfg_.ridge_lambda);
        return;
    }
    // XCorr keeps the frame-1 template for the whole video, cropped to the
    // object extent so the static context around it does not dominate the
    // correlation.
    const double side = cfg_.context_factor * std::max(box_->w, box_->h);
    const int tw = std::clamp(static_cast<int>(std::lround(box_->w / side * cells)), 1, cells);
    const int th = std::clamp(static_cast<int>(std::lround(box_->h / side * cells)), 1, cells);
    xcorr_y0_ = (cells - th) / 2;
    xcorr_x0_ = (cells - tw) / 2;
    FeatureMap crop(th, tw, tmpl_feats.channels, tmpl_feats.stride);
    for (int y = 0; y < th; ++y)
        for (int x = 0; x < tw; ++x)
            for (int c = 0; c < tmpl_feats.channels; ++c)
                crop.at(y, x, c) = tmpl_feats.at(xcorr_y0_ + y, xcorr_x0_ + x, c);
    xcorr_template_ = std::move(crop);
}

void SotTracker::init(const io::Image& frame, const Box& box) {
    if (box.w <= 0 || box.h <= 0) throw DimensionError("init: box must have positive size");
    box_ = box;
    init_common(patch_features(&frame, nullptr, cfg_.context_factor * std::max(box.w, box.h)));
}

void SotTracker::init(const FeatureMap& frame_features, const Box& box) {
    if (box.w <= 0 || box.h <= 0) throw DimensionError("init: box must have positive size");
    box_ = box;
    init_common(
        patch_features(nullptr, &frame_features, cfg_.context_factor * std::max(box.w, box.h)));
}

Box SotTracker::step(const io::Image& frame) { return step_common(&frame, nullptr); }
Box SotTracker::step(const FeatureMap& frame_features) {
    return step_common(nullptr, &frame_features);
}

const Box& SotTracker::box() const {
    if (!box_) throw NotInitialized("tracker has no box");
    return *box_;
}

Box SotTracker::step_common(const io::Image* frame, const FeatureMap* fm) {
    if (!box_) throw NotInitialized("track step before init");
    const int cells = cfg_.response_size();
    const double base_side = cfg_.context_factor * std::max(box_->w, box_->h);
    const int mid = cfg_.num_scales / 2;

    std::vector<spectral::Grid> responses(cfg_.num_scales);
    std::vector<double> maxima(cfg_.num_scales);
    std::vector<double> sides(cfg_.num_scales);
    for (int s = 0; s < cfg_.num_scales; ++s) {
        const double factor = std::pow(cfg_.scale_step, s - mid);
        sides[s] = base_side * factor;
        const FeatureMap search = patch_features(frame, fm, sides[s]);
        spectral::Grid resp = cfg_.head == BoxPropConfig::Head::dcf
                                  ? dcf_response(dcf_, search)
                                  : spectral::xcorr_fft(xcorr_template_, search);
        if (cfg_.hann_window) {
            for (int y = 0; y < resp.height; ++y)
                for (int x = 0; x < resp.width; ++x) {
                    const double hy = resp.height > 1
                        ? 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * y / (resp.height - 1))
                        : 1.0;
                    const double hx = resp.width > 1
                        ? 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * x / (resp.width - 1))
                        : 1.0;
                    resp.at(y, x) *= hy * hx;
                }
        }
        maxima[s] = *std::max_element(resp.data.begin(), resp.data.end());
        responses[s] = std::move(resp);
    }

    const int s_best = select_scale(maxima, cfg_.scale_penalty);
    const spectral::Grid& resp = responses[s_best];
    const Peak peak = upsampled_peak(resp, cfg_.response_upsample);

    // Zero displacement: the DCF trains a Gaussian centered at (cells/2,
    // cells/2); the valid-mode XCorr response peaks at the template's crop
    // offset when nothing moved.
    const double cy = cfg_.head == BoxPropConfig::Head::dcf ? cells / 2 : xcorr_y0_;
    const double cx = cfg_.head == BoxPropConfig::Head::dcf ? cells / 2 : xcorr_x0_;
    const double px_per_cell = cfg_.stride * sides[s_best] / cfg_.patch_size;
    box_->u += (peak.x - cx) * px_per_cell;
    box_->v += (peak.y - cy) * px_per_cell;
    const double chosen = std::pow(cfg_.scale_step, s_best - mid);
    box_->w *= chosen;
    box_->h *= chosen;

    if (cfg_.head == BoxPropConfig::Head::dcf && cfg_.momentum > 0.0) {
        const double side = cfg_.context_factor * std::max(box_->w, box_->h);
        dcf_update(dcf_, patch_features(frame, fm, side), cfg_.momentum);
    }
    return *box_;
}

}  // namespace trackkit::boxprop

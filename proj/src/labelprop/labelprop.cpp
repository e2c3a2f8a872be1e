#include "trackkit/labelprop.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <mutex>
#include <thread>

#include "trackkit/geometry.hpp"
#include "trackkit/simd.hpp"

namespace trackkit::labelprop {

void PropConfig::validate() const {
    if (temperature <= 0) throw ConfigError("temperature must be > 0");
    if (memory_size < 1) throw ConfigError("memory_size must be >= 1");
    if (radius < 1) throw ConfigError("radius must be >= 1");
    if (topk < 1) throw ConfigError("topk must be >= 1");
}

MemoryBank::MemoryBank(int capacity) : capacity_(capacity) {
    if (capacity < 1) throw ConfigError("memory capacity must be >= 1");
}

void MemoryBank::push(FeatureMap features, LabelMap labels) {
    if (!entries_.empty()) {
        const auto& first = entries_.front();
        if (features.height != first.features.height ||
            features.width != first.features.width ||
            features.channels != first.features.channels ||
            labels.height != first.labels.height || labels.width != first.labels.width ||
            labels.num_objects() != first.labels.num_objects())
            throw DimensionError("memory push: grid dims mismatch");
    }
    if (features.height != labels.height || features.width != labels.width)
        throw DimensionError("memory push: feature/label dims mismatch");
    entries_.push_back(Entry{std::move(features), std::move(labels)});
    // Keep the first frame pinned and evict the oldest of the rest.
    while (static_cast<int>(entries_.size()) > capacity_) entries_.erase(entries_.begin() + 1);
}

namespace {

struct Candidate {
    float logit;
    int entry;
    int y;
    int x;
};

// Gather in-radius candidates, softmax, keep top-K and renormalize. The
// scratch buffer is caller-provided so the per-row loop does not allocate.
void attention_row(const MemoryBank& memory, const FeatureMap& target, int ty, int tx,
                   const PropConfig& cfg, std::vector<Candidate>& scratch,
                   std::vector<SourceWeight>& out) {
    scratch.clear();
    out.clear();
    const float* tvec = target.point(ty, tx);
    const int c = target.channels;
    const int r = cfg.radius;
    const float inv_tau = static_cast<float>(1.0 / cfg.temperature);

    for (int e = 0; e < static_cast<int>(memory.size()); ++e) {
        const FeatureMap& src = memory.entry(e).features;
        const int y0 = std::max(0, ty - r), y1 = std::min(src.height - 1, ty + r);
        const int x0 = std::max(0, tx - r), x1 = std::min(src.width - 1, tx + r);
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                if (cfg.circular_radius) {
                    const int dy = y - ty, dx = x - tx;
                    if (dy * dy + dx * dx > r * r) continue;
                }
                const float logit = simd::dot(tvec, src.point(y, x), c) * inv_tau;
                scratch.push_back(Candidate{logit, e, y, x});
            }
        }
    }
    if (scratch.empty()) throw EmptyNeighborhood("no source point within radius");

    const int k = std::min<int>(cfg.topk, static_cast<int>(scratch.size()));
    std::partial_sort(scratch.begin(), scratch.begin() + k, scratch.end(),
                      [](const Candidate& a, const Candidate& b) {
                          if (a.logit != b.logit) return a.logit > b.logit;
                          if (a.entry != b.entry) return a.entry < b.entry;
                          if (a.y != b.y) return a.y < b.y;
                          return a.x < b.x;
                      });

    // Softmax over the kept candidates only; the discarded tail is zeroed by
    // the top-K rule and the row is renormalized anyway.
    const double max_logit = scratch.front().logit;
    double denom = 0.0;
    for (int i = 0; i < k; ++i) denom += std::exp(scratch[i].logit - max_logit);
    for (int i = 0; i < k; ++i) {
        const double w = std::exp(scratch[i].logit - max_logit) / denom;
        out.push_back(SourceWeight{scratch[i].entry, scratch[i].y, scratch[i].x, w});
    }
}

void run_rows(int height, unsigned threads, const std::function<void(int)>& body) {
    if (threads <= 1 || height < 2) {
        for (int y = 0; y < height; ++y) body(y);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    for (unsigned t = 0; t < threads; ++t)
        pool.emplace_back([&]() {
            for (int y = next.fetch_add(1); y < height; y = next.fetch_add(1)) body(y);
        });
    for (auto& th : pool) th.join();
}

}  // namespace

std::vector<SourceWeight> transition_row(const MemoryBank& memory,
                                         const FeatureMap& target_features, int ty,
                                         int tx, const PropConfig& cfg) {
    cfg.validate();
    if (memory.empty()) throw EmptyNeighborhood("memory bank is empty");
    std::vector<Candidate> scratch;
    std::vector<SourceWeight> out;
    attention_row(memory, target_features, ty, tx, cfg, scratch, out);
    return out;
}

LabelMap propagate(const MemoryBank& memory, const FeatureMap& target_features,
                   const PropConfig& cfg) {
    cfg.validate();
    if (memory.empty()) throw EmptyNeighborhood("memory bank is empty");
    const auto& first = memory.entry(0);
    if (target_features.height != first.features.height ||
        target_features.width != first.features.width ||
        target_features.channels != first.features.channels)
        throw DimensionError("propagate: target grid dims mismatch");

    const int h = target_features.height, w = target_features.width;
    const int num_objects = first.labels.num_objects();
    LabelMap out(h, w, num_objects);

    const unsigned threads =
        std::min<unsigned>(std::thread::hardware_concurrency(), static_cast<unsigned>(h));
    std::exception_ptr error;
    std::mutex error_mu;
    run_rows(h, std::max(1u, threads), [&](int ty) {
        std::vector<Candidate> scratch;
        std::vector<SourceWeight> row;
        try {
            for (int tx = 0; tx < w; ++tx) {
                attention_row(memory, target_features, ty, tx, cfg, scratch, row);
                const std::size_t cell = static_cast<std::size_t>(ty) * w + tx;
                for (const auto& sw : row) {
                    const LabelMap& labels = memory.entry(sw.entry).labels;
                    const std::size_t src = static_cast<std::size_t>(sw.y) * w + sw.x;
                    for (int k = 0; k < num_objects; ++k)
                        out.objects[k][cell] += static_cast<float>(sw.weight * labels.objects[k][src]);
                    out.background[cell] += static_cast<float>(sw.weight * labels.background[src]);
                }
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(error_mu);
            if (!error) error = std::current_exception();
        }
    });
    if (error) std::rethrow_exception(error);
    return out;
}

io::IndexImage finalize_mask(const LabelMap& z, int image_width, int image_height,
                             int stride) {
    // Per-cell argmax with ties toward background, then nearest-neighbor
    // upsample to pixels.
    std::vector<std::uint8_t> cell_ids(z.cells(), 0);
    for (std::size_t i = 0; i < z.cells(); ++i) {
        float best = z.background[i];
        int best_k = 0;
        for (int k = 0; k < z.num_objects(); ++k) {
            if (z.objects[k][i] > best) {
                best = z.objects[k][i];
                best_k = k + 1;
            }
        }
        cell_ids[i] = static_cast<std::uint8_t>(best_k);
    }
    io::IndexImage out(image_width, image_height);
    for (int y = 0; y < image_height; ++y) {
        const int cy = std::min(y / stride, z.height - 1);
        for (int x = 0; x < image_width; ++x) {
            const int cx = std::min(x / stride, z.width - 1);
            out.set(y, x, cell_ids[static_cast<std::size_t>(cy) * z.width + cx]);
        }
    }
    return out;
}

LabelMap labelmap_from_index(const io::IndexImage& mask, int stride, int num_objects) {
    if (stride < 1) throw DimensionError("labelmap_from_index: stride must be >= 1");
    const int gh = mask.height / stride, gw = mask.width / stride;
    if (gh < 1 || gw < 1) throw DimensionError("labelmap_from_index: mask smaller than a cell");
    LabelMap z(gh, gw, num_objects);
    for (int gy = 0; gy < gh; ++gy) {
        for (int gx = 0; gx < gw; ++gx) {
            const std::size_t cell = static_cast<std::size_t>(gy) * gw + gx;
            int counts_size = num_objects + 1;
            std::vector<int> counts(counts_size, 0);
            for (int y = gy * stride; y < (gy + 1) * stride; ++y)
                for (int x = gx * stride; x < (gx + 1) * stride; ++x) {
                    const int id = mask.at(y, x);
                    if (id > 0 && id <= num_objects) ++counts[id];
                }
            const int total = stride * stride;
            float max_obj = 0.0f;
            for (int k = 1; k <= num_objects; ++k) {
                const float frac = static_cast<float>(counts[k]) / total;
                z.objects[k - 1][cell] = frac;
                max_obj = std::max(max_obj, frac);
            }
            z.background[cell] = 1.0f - max_obj;
        }
    }
    return z;
}

LabelMap pose_to_beliefs(const Pose& p, int grid_height, int grid_width, int stride,
                         const PropConfig& cfg) {
    if (p.visible_count() < 1) throw DegeneratePose("pose_to_beliefs: no visible keypoint");
    const double sbody = core::body_size(p);
    const double sigma = std::max(cfg.gaussian_coeff * sbody, 0.5);
    const double inv = 1.0 / (2.0 * sigma * sigma);

    LabelMap z(grid_height, grid_width, static_cast<int>(p.points.size()));
    for (std::size_t k = 0; k < p.points.size(); ++k) {
        const auto& kp = p.points[k];
        if (!kp.visible) continue;
        const double gy = kp.y / stride, gx = kp.x / stride;
        for (int y = 0; y < grid_height; ++y)
            for (int x = 0; x < grid_width; ++x) {
                const double dy = y - gy, dx = x - gx;
                z.objects[k][static_cast<std::size_t>(y) * grid_width + x] =
                    static_cast<float>(std::exp(-(dx * dx + dy * dy) * inv));
            }
    }
    return z;
}

Pose beliefs_to_pose(const LabelMap& z, int stride, const PropConfig& cfg) {
    Pose p;
    p.points.resize(z.num_objects());
    for (int k = 0; k < z.num_objects(); ++k) {
        const auto& chan = z.objects[k];
        std::size_t best = 0;
        float best_val = -1.0f;
        for (std::size_t i = 0; i < chan.size(); ++i)
            if (chan[i] > best_val) {
                best_val = chan[i];
                best = i;
            }
        if (best_val < cfg.visibility_threshold) {
            p.points[k] = Keypoint{0, 0, false};
            continue;
        }
        const int cy = static_cast<int>(best / z.width);
        const int cx = static_cast<int>(best % z.width);
        p.points[k] = Keypoint{static_cast<double>(cx) * stride,
                               static_cast<double>(cy) * stride, true};
    }
    return p;
}

}  // namespace trackkit::labelprop

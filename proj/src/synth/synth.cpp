#include "trackkit/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "trackkit/error.hpp"

namespace trackkit::synth {

std::uint64_t hash64(std::uint64_t x) {
    // splitmix64 finalizer
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::uint64_t Rng::next_u64() {
    state_ = hash64(state_);
    return state_;
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
    // Box-Muller; u clamped away from 0 so log stays finite.
    const double u = std::max(uniform(), 1e-12);
    const double v = uniform();
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * std::numbers::pi * v);
}

namespace {

// Textured color at a local coordinate. The pattern is a field of 8 px
// blocks, each with its own stripe orientation and color pair, so feature
// cells see strongly distinct, orientation-rich content. `domain` separates
// the background field from each object's field.
void texture_color(std::uint64_t domain, int lx, int ly, std::uint8_t out[3]) {
    constexpr int kBlock = 8;
    const int bx = lx >= 0 ? lx / kBlock : (lx - kBlock + 1) / kBlock;
    const int by = ly >= 0 ? ly / kBlock : (ly - kBlock + 1) / kBlock;
    const std::uint64_t block_key =
        hash64(domain ^ hash64(static_cast<std::uint64_t>(static_cast<std::uint32_t>(bx)) |
                               (static_cast<std::uint64_t>(static_cast<std::uint32_t>(by)) << 32)));
    const double theta = std::numbers::pi * static_cast<double>(block_key & 0xffff) / 65536.0;
    const std::uint8_t c1[3] = {
        static_cast<std::uint8_t>(40 + ((block_key >> 16) & 0xff) * 175 / 255),
        static_cast<std::uint8_t>(40 + ((block_key >> 24) & 0xff) * 175 / 255),
        static_cast<std::uint8_t>(40 + ((block_key >> 32) & 0xff) * 175 / 255)};
    const std::uint8_t c2[3] = {static_cast<std::uint8_t>(255 - c1[0]),
                                static_cast<std::uint8_t>(255 - c1[1]),
                                static_cast<std::uint8_t>(255 - c1[2])};
    const double phase = std::cos(theta) * lx + std::sin(theta) * ly;
    const bool stripe = std::fmod(std::fmod(phase, 6.0) + 6.0, 6.0) < 3.0;
    const std::uint8_t* base = stripe ? c1 : c2;
    // Mild per-pixel noise on top of the stripes.
    const std::uint64_t px_key =
        hash64(block_key ^ hash64(static_cast<std::uint64_t>(static_cast<std::uint32_t>(lx)) |
                                  (static_cast<std::uint64_t>(static_cast<std::uint32_t>(ly)) << 32)));
    for (int c = 0; c < 3; ++c) {
        const int noise = static_cast<int>((px_key >> (8 * c)) & 0x1f) - 16;
        out[c] = static_cast<std::uint8_t>(std::clamp(base[c] + noise, 0, 255));
    }
}

void blend_object(std::uint8_t out[3], const ObjectSpec& obj, std::uint64_t domain,
                  int lx, int ly) {
    std::uint8_t tex[3];
    texture_color(domain, lx, ly, tex);
    for (int c = 0; c < 3; ++c)
        out[c] = static_cast<std::uint8_t>((2 * obj.base_rgb[c] + 2 * tex[c]) / 4);
}

}  // namespace

Box object_box(const ObjectSpec& obj, int frame) {
    const double u = obj.start_u + obj.vel_u * frame;
    const double v = obj.start_v + obj.vel_v * frame;
    return Box{u, v, static_cast<double>(obj.width), static_cast<double>(obj.height)};
}

Rendered render(const Scenario& sc) {
    if (sc.width < 1 || sc.height < 1 || sc.frames < 1)
        throw ConfigError("render: frame count and dimensions must be positive");
    for (const auto& obj : sc.objects)
        if (obj.width < 1 || obj.height < 1)
            throw ConfigError("render: object dimensions must be positive");

    Rendered out;
    out.frames.reserve(sc.frames);
    out.masks.reserve(sc.frames);
    Rng det_rng(hash64(sc.seed ^ 0x51ed2701ull));

    for (int t = 0; t < sc.frames; ++t) {
        io::Image frame(sc.width, sc.height);
        io::IndexImage mask(sc.width, sc.height);
        for (int y = 0; y < sc.height; ++y)
            for (int x = 0; x < sc.width; ++x)
                texture_color(hash64(sc.seed ^ 0xbac4ecull), x, y, frame.pixel(y, x));

        for (std::size_t k = 0; k < sc.objects.size(); ++k) {
            const auto& obj = sc.objects[k];
            const Box b = object_box(obj, t);
            // Integer top-left anchor; the texture rides along with it.
            const int ox = static_cast<int>(std::lround(b.u - obj.width / 2.0));
            const int oy = static_cast<int>(std::lround(b.v - obj.height / 2.0));
            for (int ly = 0; ly < obj.height; ++ly) {
                const int y = oy + ly;
                if (y < 0 || y >= sc.height) continue;
                for (int lx = 0; lx < obj.width; ++lx) {
                    const int x = ox + lx;
                    if (x < 0 || x >= sc.width) continue;
                    blend_object(frame.pixel(y, x), obj,
                                 hash64(sc.seed ^ (0xab12cd34ull + k)), lx, ly);
                    mask.set(y, x, static_cast<std::uint8_t>(k + 1));
                }
            }
            const Box gt{static_cast<double>(ox) + obj.width / 2.0,
                         static_cast<double>(oy) + obj.height / 2.0,
                         static_cast<double>(obj.width), static_cast<double>(obj.height)};
            out.ground_truth.push_back(
                io::MotRow{t + 1, static_cast<int>(k + 1), gt, 1.0});

            const bool occluded = obj.occlude_from >= 0 && t >= obj.occlude_from &&
                                  t <= obj.occlude_to;
            const bool missed = sc.det_miss_rate > 0 && det_rng.uniform() < sc.det_miss_rate;
            if (!occluded && !missed) {
                Box det = gt;
                if (sc.det_position_sigma > 0) {
                    det.u += sc.det_position_sigma * det_rng.normal();
                    det.v += sc.det_position_sigma * det_rng.normal();
                }
                out.detections.push_back(io::MotRow{t + 1, -1, det, 1.0});
            }
        }
        if (sc.det_false_rate > 0 && det_rng.uniform() < sc.det_false_rate) {
            const Box fp{det_rng.uniform(10, sc.width - 10.0),
                         det_rng.uniform(10, sc.height - 10.0), 20.0, 20.0};
            out.detections.push_back(io::MotRow{t + 1, -1, fp, 0.3});
        }
        out.frames.push_back(std::move(frame));
        out.masks.push_back(std::move(mask));
    }
    return out;
}

void write_scenario(const std::filesystem::path& dir, const Rendered& r) {
    namespace fs = std::filesystem;
    fs::create_directories(dir / "frames");
    fs::create_directories(dir / "masks");
    char name[32];
    for (std::size_t t = 0; t < r.frames.size(); ++t) {
        std::snprintf(name, sizeof(name), "%06zu.ppm", t + 1);
        io::write_ppm(dir / "frames" / name, r.frames[t]);
        std::snprintf(name, sizeof(name), "%06zu.pgm", t + 1);
        io::write_pgm(dir / "masks" / name, r.masks[t]);
    }
    io::write_mot_results(dir / "gt.txt", r.ground_truth);
    io::write_mot_detections(dir / "det.txt", r.detections);
}

}  // namespace trackkit::synth

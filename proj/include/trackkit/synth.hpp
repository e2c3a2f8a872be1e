#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "trackkit/image.hpp"
#include "trackkit/motio.hpp"
#include "trackkit/types.hpp"

namespace trackkit::synth {

/// Deterministic 64-bit mix; the basis of all synthetic randomness so output
/// is bit-identical across platforms for a given seed.
std::uint64_t hash64(std::uint64_t x);

/// Deterministic stream of uniform values derived from hash64.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(hash64(seed ^ 0x9e3779b97f4a7c15ull)) {}
    std::uint64_t next_u64();
    double uniform();                       // [0, 1)
    double uniform(double lo, double hi);   // [lo, hi)
    double normal();                        // standard normal (Box-Muller)

  private:
    std::uint64_t state_;
};

struct ObjectSpec {
    std::uint8_t base_rgb[3] = {200, 60, 60};
    int width = 40;
    int height = 40;
    double start_u = 50;   // center at frame 0, pixel units
    double start_v = 50;
    double vel_u = 0;      // pixels per frame
    double vel_v = 0;
    int occlude_from = -1;  // inclusive frame range with no detection
    int occlude_to = -1;
};

struct Scenario {
    std::uint64_t seed = 1;
    int frames = 30;
    int width = 320;
    int height = 240;
    std::vector<ObjectSpec> objects;
    double det_position_sigma = 0.0;
    double det_miss_rate = 0.0;
    double det_false_rate = 0.0;  // expected false positives per frame
};

struct Rendered {
    std::vector<io::Image> frames;
    std::vector<io::IndexImage> masks;        // pixel value = object index + 1
    std::vector<io::MotRow> ground_truth;     // id = object index + 1
    std::vector<io::MotRow> detections;       // id = -1
};

/// Ground-truth box of one object at one frame (before clipping).
Box object_box(const ObjectSpec& obj, int frame);

/// Render frames, ground truth and noisy detections. Fully determined by the
/// scenario seed. Throws ConfigError for non-positive dimensions.
Rendered render(const Scenario& sc);

/// Write frames (PPM), masks (PGM), gt.txt and det.txt under `dir`.
void write_scenario(const std::filesystem::path& dir, const Rendered& r);

}  // namespace trackkit::synth

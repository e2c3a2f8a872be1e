#include "trackkit/features.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <numbers>

#include "trackkit/simd.hpp"

namespace trackkit::features {

namespace {

constexpr char kMagic[4] = {'U', 'T', 'F', 'M'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
    const std::uint8_t b[4] = {
        static_cast<std::uint8_t>(v),
        static_cast<std::uint8_t>(v >> 8),
        static_cast<std::uint8_t>(v >> 16),
        static_cast<std::uint8_t>(v >> 24),
    };
    out.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t get_u32(std::istream& in, const std::filesystem::path& path) {
    std::uint8_t b[4];
    in.read(reinterpret_cast<char*>(b), 4);
    if (in.gcount() != 4) throw FormatError("truncated UTFM header: " + path.string());
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

FeatureMap load_feature_map(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (in.gcount() != 4 || std::memcmp(magic, kMagic, 4) != 0)
        throw FormatError("bad UTFM magic: " + path.string());
    const std::uint32_t version = get_u32(in, path);
    if (version != kVersion) throw FormatError("unsupported UTFM version: " + path.string());
    const std::uint32_t h = get_u32(in, path);
    const std::uint32_t w = get_u32(in, path);
    const std::uint32_t c = get_u32(in, path);
    const std::uint32_t stride = get_u32(in, path);
    if (h == 0 || w == 0 || c == 0 || stride == 0)
        throw DimensionError("UTFM with zero dimension: " + path.string());

    FeatureMap fm(static_cast<int>(h), static_cast<int>(w), static_cast<int>(c),
                  static_cast<int>(stride));
    static_assert(sizeof(float) == 4);
    in.read(reinterpret_cast<char*>(fm.data.data()),
            static_cast<std::streamsize>(fm.data.size() * 4));
    if (in.gcount() != static_cast<std::streamsize>(fm.data.size() * 4))
        throw FormatError("UTFM payload shorter than header claims: " + path.string());
    return fm;
}

void write_feature_map(const std::filesystem::path& path, const FeatureMap& fm) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out.write(kMagic, 4);
    put_u32(out, kVersion);
    put_u32(out, static_cast<std::uint32_t>(fm.height));
    put_u32(out, static_cast<std::uint32_t>(fm.width));
    put_u32(out, static_cast<std::uint32_t>(fm.channels));
    put_u32(out, static_cast<std::uint32_t>(fm.stride));
    out.write(reinterpret_cast<const char*>(fm.data.data()),
              static_cast<std::streamsize>(fm.data.size() * 4));
}

FeatureMap extract_builtin(const io::Image& image, int stride) {
    if (stride < 1) throw DimensionError("extract_builtin: stride must be >= 1");
    if (image.width < stride || image.height < stride)
        throw DimensionError("extract_builtin: image smaller than one cell");

    const int gh = image.height / stride;
    const int gw = image.width / stride;
    FeatureMap fm(gh, gw, kBuiltinChannels, stride);

    // Luma plane for gradients and intensities.
    const int iw = image.width, ih = image.height;
    std::vector<float> luma(static_cast<std::size_t>(iw) * ih);
    for (int y = 0; y < ih; ++y) {
        const std::uint8_t* row = image.pixel(y, 0);
        for (int x = 0; x < iw; ++x) {
            const std::uint8_t* p = row + 3 * x;
            luma[static_cast<std::size_t>(y) * iw + x] =
                (p[0] + p[1] + p[2]) / (3.0f * 255.0f);
        }
    }
    auto lum = [&](int y, int x) { return luma[static_cast<std::size_t>(y) * iw + x]; };

    constexpr int kBins = 8;
    const float bin_scale = kBins / (2.0f * std::numbers::pi_v<float>);

    for (int gy = 0; gy < gh; ++gy) {
        for (int gx = 0; gx < gw; ++gx) {
            float* f = fm.point(gy, gx);
            const int y0 = gy * stride, x0 = gx * stride;

            // Mean RGB.
            double r = 0, g = 0, b = 0;
            for (int y = y0; y < y0 + stride; ++y)
                for (int x = x0; x < x0 + stride; ++x) {
                    const std::uint8_t* p = image.pixel(y, x);
                    r += p[0];
                    g += p[1];
                    b += p[2];
                }
            const double cell_px = static_cast<double>(stride) * stride;
            f[0] = static_cast<float>(r / (cell_px * 255.0));
            f[1] = static_cast<float>(g / (cell_px * 255.0));
            f[2] = static_cast<float>(b / (cell_px * 255.0));

            // Magnitude-weighted gradient orientation histogram on luma,
            // central differences clamped at the image border.
            float hist[kBins] = {0};
            for (int y = y0; y < y0 + stride; ++y) {
                for (int x = x0; x < x0 + stride; ++x) {
                    const float dx = lum(y, std::min(x + 1, iw - 1)) - lum(y, std::max(x - 1, 0));
                    const float dy = lum(std::min(y + 1, ih - 1), x) - lum(std::max(y - 1, 0), x);
                    const float mag = std::sqrt(dx * dx + dy * dy);
                    if (mag <= 0) continue;
                    float angle = std::atan2(dy, dx);  // [-pi, pi]
                    if (angle < 0) angle += 2.0f * std::numbers::pi_v<float>;
                    int bin = static_cast<int>(angle * bin_scale);
                    if (bin >= kBins) bin = kBins - 1;
                    hist[bin] += mag;
                }
            }
            for (int k = 0; k < kBins; ++k)
                f[3 + k] = hist[k] / static_cast<float>(cell_px);

            // 2x2 sub-cell mean intensities.
            const int half = stride / 2;
            int si = 0;
            for (int sy = 0; sy < 2; ++sy) {
                for (int sx = 0; sx < 2; ++sx, ++si) {
                    const int ya = y0 + sy * half;
                    const int yb = (sy == 0) ? y0 + half : y0 + stride;
                    const int xa = x0 + sx * half;
                    const int xb = (sx == 0) ? x0 + half : x0 + stride;
                    double acc = 0;
                    int n = 0;
                    for (int y = ya; y < yb; ++y)
                        for (int x = xa; x < xb; ++x) {
                            acc += lum(y, x);
                            ++n;
                        }
                    f[11 + si] = n > 0 ? static_cast<float>(acc / n) : 0.0f;
                }
            }
        }
    }
    return fm;
}

FeatureMap l2_normalize_points(const FeatureMap& fm) {
    FeatureMap out = fm;
    const int c = out.channels;
    for (std::size_t i = 0; i < out.point_count(); ++i) {
        float* p = out.data.data() + i * c;
        const double nsq = simd::sumsq_wide(p, c);
        if (nsq > 0.0)
            simd::scale(p, static_cast<float>(1.0 / std::sqrt(nsq)), c);
    }
    return out;
}

FeatureMap frame_features(const FeatureSource& src, const io::Image& image,
                          const std::filesystem::path& features_path) {
    FeatureMap fm;
    if (src.mode == FeatureSource::Mode::file) {
        fm = load_feature_map(features_path);
    } else {
        fm = extract_builtin(image, src.stride);
    }
    if (src.normalize) fm = l2_normalize_points(fm);
    return fm;
}

}  // namespace trackkit::features

#pragma once

#include <filesystem>

#include "trackkit/image.hpp"
#include "trackkit/types.hpp"

namespace trackkit::features {

/// Where dense feature maps come from: precomputed files, or the built-in
/// deterministic extractor that lets the whole pipeline run with no network.
struct FeatureSource {
    enum class Mode { file, builtin };
    Mode mode = Mode::builtin;
    int stride = 8;
    bool normalize = true;
};

/// Read a feature map in the UTFM format (see write_feature_map). Throws
/// FormatError on bad magic or truncation, DimensionError on zero dims.
FeatureMap load_feature_map(const std::filesystem::path& path);

/// UTFM: magic "UTFM", little-endian u32 version=1, H, W, C, stride, then
/// H*W*C IEEE-754 32-bit floats, row-major, channel-fastest.
void write_feature_map(const std::filesystem::path& path, const FeatureMap& fm);

/// Number of channels produced by extract_builtin.
inline constexpr int kBuiltinChannels = 15;

/// Deterministic hand-crafted features: per stride x stride cell, mean RGB
/// (3), an 8-bin gradient-orientation histogram and 2x2 sub-cell mean
/// intensities. Throws DimensionError when the image is smaller than one
/// cell.
FeatureMap extract_builtin(const io::Image& image, int stride = 8);

/// Scale every point vector to unit L2 norm; all-zero vectors stay zero.
FeatureMap l2_normalize_points(const FeatureMap& fm);

/// Apply a FeatureSource to one frame: builtin extraction from the image, or
/// loading `features_path` when mode is file. Normalization is applied when
/// the source asks for it.
FeatureMap frame_features(const FeatureSource& src, const io::Image& image,
                          const std::filesystem::path& features_path = {});

}  // namespace trackkit::features

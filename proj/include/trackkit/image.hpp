#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "trackkit/error.hpp"

namespace trackkit::io {

/// 8-bit RGB image, row-major, interleaved.
struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> rgb;

    Image() = default;
    Image(int w, int h) : width(w), height(h), rgb(static_cast<std::size_t>(w) * h * 3, 0) {}

    std::uint8_t* pixel(int y, int x) {
        return rgb.data() + (static_cast<std::size_t>(y) * width + x) * 3;
    }
    const std::uint8_t* pixel(int y, int x) const {
        return rgb.data() + (static_cast<std::size_t>(y) * width + x) * 3;
    }
};

/// 8-bit index image used for instance masks (0 = background).
struct IndexImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> index;

    IndexImage() = default;
    IndexImage(int w, int h) : width(w), height(h), index(static_cast<std::size_t>(w) * h, 0) {}

    std::uint8_t at(int y, int x) const {
        return index[static_cast<std::size_t>(y) * width + x];
    }
    void set(int y, int x, std::uint8_t v) {
        index[static_cast<std::size_t>(y) * width + x] = v;
    }
};

Image read_ppm(const std::filesystem::path& path);
void write_ppm(const std::filesystem::path& path, const Image& img);

IndexImage read_pgm(const std::filesystem::path& path);
void write_pgm(const std::filesystem::path& path, const IndexImage& img);

Image read_png(const std::filesystem::path& path);

/// Dispatch on extension: .ppm, .pnm or .png.
Image read_image(const std::filesystem::path& path);

/// All .ppm/.pnm/.png files in a directory, sorted by filename.
std::vector<std::filesystem::path> list_frames(const std::filesystem::path& dir);

}  // namespace trackkit::io

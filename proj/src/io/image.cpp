#include "trackkit/image.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>

namespace trackkit::io {

namespace {

// Skips whitespace and '#' comments between PNM header tokens.
int next_pnm_int(std::istream& in, const std::filesystem::path& path) {
    while (true) {
        const int c = in.peek();
        if (c == EOF) throw FormatError("truncated PNM header: " + path.string());
        if (std::isspace(c)) {
            in.get();
        } else if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else {
            break;
        }
    }
    int value = 0;
    in >> value;
    if (!in) throw FormatError("bad PNM header: " + path.string());
    return value;
}

}  // namespace

Image read_ppm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (magic[0] != 'P' || magic[1] != '6')
        throw FormatError("not a P6 PPM file: " + path.string());
    const int w = next_pnm_int(in, path);
    const int h = next_pnm_int(in, path);
    const int maxval = next_pnm_int(in, path);
    if (w < 1 || h < 1) throw DimensionError("PPM with zero dimension: " + path.string());
    if (maxval != 255) throw FormatError("only maxval 255 PPM supported: " + path.string());
    in.get();  // single whitespace after header
    Image img(w, h);
    in.read(reinterpret_cast<char*>(img.rgb.data()),
            static_cast<std::streamsize>(img.rgb.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.rgb.size()))
        throw FormatError("truncated PPM payload: " + path.string());
    return img;
}

void write_ppm(const std::filesystem::path& path, const Image& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << "P6\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.rgb.data()),
              static_cast<std::streamsize>(img.rgb.size()));
}

IndexImage read_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (magic[0] != 'P' || magic[1] != '5')
        throw FormatError("not a P5 PGM file: " + path.string());
    const int w = next_pnm_int(in, path);
    const int h = next_pnm_int(in, path);
    const int maxval = next_pnm_int(in, path);
    if (w < 1 || h < 1) throw DimensionError("PGM with zero dimension: " + path.string());
    if (maxval > 255) throw FormatError("only 8-bit PGM supported: " + path.string());
    in.get();
    IndexImage img(w, h);
    in.read(reinterpret_cast<char*>(img.index.data()),
            static_cast<std::streamsize>(img.index.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.index.size()))
        throw FormatError("truncated PGM payload: " + path.string());
    return img;
}

void write_pgm(const std::filesystem::path& path, const IndexImage& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write " + path.string());
    out << "P5\n" << img.width << " " << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.index.data()),
              static_cast<std::streamsize>(img.index.size()));
}

Image read_png(const std::filesystem::path& path) {
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&png, path.string().c_str()))
        throw FormatError("cannot decode PNG: " + path.string());
    png.format = PNG_FORMAT_RGB;
    Image img(static_cast<int>(png.width), static_cast<int>(png.height));
    if (!png_image_finish_read(&png, nullptr, img.rgb.data(), 0, nullptr)) {
        png_image_free(&png);
        throw FormatError("cannot decode PNG: " + path.string());
    }
    return img;
}

Image read_image(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    if (ext == ".ppm" || ext == ".pnm") return read_ppm(path);
    if (ext == ".png") return read_png(path);
    throw InputError("unsupported image format: " + path.string());
}

std::vector<std::filesystem::path> list_frames(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw InputError("not a directory: " + dir.string());
    std::vector<std::filesystem::path> frames;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string ext = entry.path().extension().string();
        std::transform(ext.begin(), ext.end(), ext.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        if (ext == ".ppm" || ext == ".pnm" || ext == ".png")
            frames.push_back(entry.path());
    }
    std::sort(frames.begin(), frames.end());
    return frames;
}

}  // namespace trackkit::io

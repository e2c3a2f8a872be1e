#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "trackkit/error.hpp"

namespace trackkit {

/// Dense H x W x C feature grid at a fixed stride relative to image pixels.
/// Layout is row-major with the channel index fastest, so the vector of a
/// single grid point is contiguous in memory.
struct FeatureMap {
    int height = 0;
    int width = 0;
    int channels = 0;
    int stride = 1;
    std::vector<float> data;

    FeatureMap() = default;
    FeatureMap(int h, int w, int c, int s)
        : height(h), width(w), channels(c), stride(s) {
        if (h < 1 || w < 1 || c < 1 || s < 1)
            throw DimensionError("FeatureMap dims and stride must be >= 1");
        data.assign(static_cast<std::size_t>(h) * w * c, 0.0f);
    }

    bool empty() const { return data.empty(); }
    std::size_t point_count() const { return static_cast<std::size_t>(height) * width; }

    float* point(int y, int x) {
        return data.data() + (static_cast<std::size_t>(y) * width + x) * channels;
    }
    const float* point(int y, int x) const {
        return data.data() + (static_cast<std::size_t>(y) * width + x) * channels;
    }
    float& at(int y, int x, int c) { return point(y, x)[c]; }
    float at(int y, int x, int c) const { return point(y, x)[c]; }
};

/// Axis-aligned box: center (u, v) plus width and height, all in pixels.
struct Box {
    double u = 0.0;
    double v = 0.0;
    double w = 0.0;
    double h = 0.0;

    double left() const { return u - w / 2.0; }
    double top() const { return v - h / 2.0; }
    double right() const { return u + w / 2.0; }
    double bottom() const { return v + h / 2.0; }
    double area() const { return w * h; }

    static Box from_tlwh(double x, double y, double w, double h) {
        return Box{x + w / 2.0, y + h / 2.0, w, h};
    }
};

/// Binary pixel mask with the dimensions of the source frame.
struct Mask {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;

    Mask() = default;
    Mask(int w, int h) : width(w), height(h), bits(static_cast<std::size_t>(w) * h, 0) {}

    std::uint8_t at(int y, int x) const {
        return bits[static_cast<std::size_t>(y) * width + x];
    }
    void set(int y, int x, std::uint8_t v = 1) {
        bits[static_cast<std::size_t>(y) * width + x] = v;
    }
    std::size_t count() const {
        std::size_t n = 0;
        for (auto b : bits) n += (b != 0);
        return n;
    }
};

struct Keypoint {
    double x = 0.0;
    double y = 0.0;
    bool visible = false;
};

/// Ordered keypoint list; the expected count is a per-task configuration.
struct Pose {
    std::vector<Keypoint> points;

    int visible_count() const {
        int n = 0;
        for (const auto& p : points) n += p.visible;
        return n;
    }
};

/// A detection at one frame, in exactly one shape format.
struct Observation {
    int frame = 0;
    std::variant<Box, Mask, Pose> shape;
    int class_id = 0;
    double confidence = 1.0;

    bool is_box() const { return std::holds_alternative<Box>(shape); }
    bool is_mask() const { return std::holds_alternative<Mask>(shape); }
    bool is_pose() const { return std::holds_alternative<Pose>(shape); }
};

/// Per-object soft label grids in [0,1] at feature resolution, plus one
/// background grid of the same size.
struct LabelMap {
    int height = 0;
    int width = 0;
    std::vector<std::vector<float>> objects;
    std::vector<float> background;

    LabelMap() = default;
    LabelMap(int h, int w, int num_objects) : height(h), width(w) {
        const std::size_t cells = static_cast<std::size_t>(h) * w;
        objects.assign(num_objects, std::vector<float>(cells, 0.0f));
        background.assign(cells, 0.0f);
    }

    std::size_t cells() const { return static_cast<std::size_t>(height) * width; }
    int num_objects() const { return static_cast<int>(objects.size()); }
};

}  // namespace trackkit

#include "trackkit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace trackkit::core {

Box box_to_grid(const Box& b, double stride) {
    return Box{b.u / stride, b.v / stride, b.w / stride, b.h / stride};
}

Box box_from_grid(const Box& b, double stride) {
    return Box{b.u * stride, b.v * stride, b.w * stride, b.h * stride};
}

double box_iou(const Box& a, const Box& b) {
    if (a.w <= 0 || a.h <= 0 || b.w <= 0 || b.h <= 0) return 0.0;
    const double ix = std::min(a.right(), b.right()) - std::max(a.left(), b.left());
    const double iy = std::min(a.bottom(), b.bottom()) - std::max(a.top(), b.top());
    if (ix <= 0 || iy <= 0) return 0.0;
    const double inter = ix * iy;
    return inter / (a.area() + b.area() - inter);
}

Box mask_to_box(const Mask& m) {
    double sx = 0, sy = 0;
    std::size_t n = 0;
    for (int y = 0; y < m.height; ++y)
        for (int x = 0; x < m.width; ++x)
            if (m.at(y, x)) {
                sx += x;
                sy += y;
                ++n;
            }
    if (n == 0) throw EmptyMask("mask_to_box: empty mask");
    const double u = sx / n;
    const double v = sy / n;
    double dx = 0, dy = 0;
    for (int y = 0; y < m.height; ++y)
        for (int x = 0; x < m.width; ++x)
            if (m.at(y, x)) {
                dx += std::abs(x - u);
                dy += std::abs(y - v);
            }
    const double w = std::max(1.0, 4.0 * dx / n);
    const double h = std::max(1.0, 4.0 * dy / n);
    return Box{u, v, w, h};
}

Mask box_to_mask(const Box& b, int frame_width, int frame_height) {
    // Pixel x covers [x, x+1); it belongs to the box when its center x+0.5
    // lies inside [left, right).
    Mask m(frame_width, frame_height);
    auto lo = [](double v) { return static_cast<int>(std::ceil(v - 0.5 - 1e-9)); };
    const int x0 = std::max(0, lo(b.left()));
    const int x1 = std::min(frame_width, lo(b.right()));
    const int y0 = std::max(0, lo(b.top()));
    const int y1 = std::min(frame_height, lo(b.bottom()));
    for (int y = y0; y < y1; ++y)
        for (int x = x0; x < x1; ++x) m.set(y, x);
    return m;
}

double body_size(const Pose& p) {
    double xmin = std::numeric_limits<double>::infinity();
    double xmax = -xmin, ymin = xmin, ymax = -xmin;
    bool any = false;
    for (const auto& k : p.points) {
        if (!k.visible) continue;
        any = true;
        xmin = std::min(xmin, k.x);
        xmax = std::max(xmax, k.x);
        ymin = std::min(ymin, k.y);
        ymax = std::max(ymax, k.y);
    }
    if (!any) throw DegeneratePose("body_size: no visible keypoint");
    return std::max(xmax - xmin, ymax - ymin);
}

const Skeleton& default_skeleton15() {
    // 0 r-ankle, 1 r-knee, 2 r-hip, 3 l-hip, 4 l-knee, 5 l-ankle,
    // 6 r-wrist, 7 r-elbow, 8 r-shoulder, 9 l-shoulder, 10 l-elbow,
    // 11 l-wrist, 12 neck, 13 head-bottom, 14 head-top
    static const Skeleton s = {
        {0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5},
        {6, 7}, {7, 8}, {8, 9}, {9, 10}, {10, 11},
        {2, 8}, {3, 9}, {8, 12}, {9, 12}, {12, 13}, {13, 14},
    };
    return s;
}

namespace {

void draw_thick_segment(Mask& m, double x0, double y0, double x1, double y1,
                        double half_width) {
    const double r = std::max(0.5, half_width);
    const int xa = std::max(0, static_cast<int>(std::floor(std::min(x0, x1) - r)));
    const int xb = std::min(m.width - 1, static_cast<int>(std::ceil(std::max(x0, x1) + r)));
    const int ya = std::max(0, static_cast<int>(std::floor(std::min(y0, y1) - r)));
    const int yb = std::min(m.height - 1, static_cast<int>(std::ceil(std::max(y0, y1) + r)));
    const double dx = x1 - x0, dy = y1 - y0;
    const double len2 = dx * dx + dy * dy;
    for (int y = ya; y <= yb; ++y) {
        for (int x = xa; x <= xb; ++x) {
            double t = 0.0;
            if (len2 > 0) t = std::clamp(((x - x0) * dx + (y - y0) * dy) / len2, 0.0, 1.0);
            const double px = x0 + t * dx - x, py = y0 + t * dy - y;
            if (px * px + py * py <= r * r) m.set(y, x);
        }
    }
}

// Fill every region not reachable from the border through unset pixels.
void fill_enclosed(Mask& m) {
    const int w = m.width, h = m.height;
    std::vector<std::uint8_t> outside(static_cast<std::size_t>(w) * h, 0);
    std::vector<int> stack;
    auto push = [&](int y, int x) {
        const std::size_t i = static_cast<std::size_t>(y) * w + x;
        if (!outside[i] && !m.bits[i]) {
            outside[i] = 1;
            stack.push_back(y * w + x);
        }
    };
    for (int x = 0; x < w; ++x) {
        push(0, x);
        push(h - 1, x);
    }
    for (int y = 0; y < h; ++y) {
        push(y, 0);
        push(y, w - 1);
    }
    while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        const int y = i / w, x = i % w;
        if (x > 0) push(y, x - 1);
        if (x + 1 < w) push(y, x + 1);
        if (y > 0) push(y - 1, x);
        if (y + 1 < h) push(y + 1, x);
    }
    for (std::size_t i = 0; i < m.bits.size(); ++i)
        if (!m.bits[i] && !outside[i]) m.bits[i] = 1;
}

}  // namespace

Mask pose_to_mask(const Pose& p, int frame_width, int frame_height,
                  const Skeleton& skeleton, double eta_p) {
    if (frame_width < 1 || frame_height < 1)
        throw DimensionError("pose_to_mask: empty frame");
    if (p.visible_count() < 2)
        throw DegeneratePose("pose_to_mask: fewer than 2 visible keypoints");

    Mask m(frame_width, frame_height);
    const double sbody = body_size(p);
    if (sbody <= 0) {
        // All visible keypoints coincide; degrade to a single dot.
        const auto& k = *std::find_if(p.points.begin(), p.points.end(),
                                      [](const Keypoint& q) { return q.visible; });
        const int x = std::clamp(static_cast<int>(std::lround(k.x)), 0, frame_width - 1);
        const int y = std::clamp(static_cast<int>(std::lround(k.y)), 0, frame_height - 1);
        m.set(y, x);
        return m;
    }

    const double thickness = std::max(1.0, eta_p * sbody);
    bool drew = false;
    for (const auto& [a, b] : skeleton) {
        if (a < 0 || b < 0 || a >= static_cast<int>(p.points.size()) ||
            b >= static_cast<int>(p.points.size()))
            continue;
        const auto& ka = p.points[a];
        const auto& kb = p.points[b];
        if (!ka.visible || !kb.visible) continue;
        draw_thick_segment(m, ka.x, ka.y, kb.x, kb.y, thickness / 2.0);
        drew = true;
    }
    if (!drew) {
        // No connected edge is fully visible; mark the visible points.
        for (const auto& k : p.points) {
            if (!k.visible) continue;
            draw_thick_segment(m, k.x, k.y, k.x, k.y, thickness / 2.0);
        }
    }
    fill_enclosed(m);
    return m;
}

}  // namespace trackkit::core

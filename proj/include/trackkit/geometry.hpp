#pragma once

#include <utility>
#include <vector>

#include "trackkit/types.hpp"

namespace trackkit::core {

/// Convert a pixel-space box to feature-grid coordinates (divide by stride).
Box box_to_grid(const Box& b, double stride);

/// Inverse of box_to_grid.
Box box_from_grid(const Box& b, double stride);

/// Intersection-over-union of two boxes; 0 when either is degenerate.
double box_iou(const Box& a, const Box& b);

/// Center and size estimated from in-mask pixel coordinates. The size is
/// 4/N * sum |coord - mean|, which recovers the full extent of a filled
/// rectangle; sizes are clamped to a 1 px minimum. Throws EmptyMask.
Box mask_to_box(const Mask& m);

/// Rasterize a box into a mask of the given frame size (pixels whose center
/// falls inside the box, clipped to the frame).
Mask box_to_mask(const Box& b, int frame_width, int frame_height);

/// Max of the x- and y-extent over visible keypoints. Throws DegeneratePose
/// when no keypoint is visible.
double body_size(const Pose& p);

/// Keypoint connectivity for rasterizing a skeleton; pairs of indices.
using Skeleton = std::vector<std::pair<int, int>>;

/// Standard 15-joint human skeleton (ankles-knees-hips, wrists-elbows-
/// shoulders, hips-shoulders torso, neck and head chain).
const Skeleton& default_skeleton15();

/// Rasterize the pose skeleton with segment thickness eta_p * body_size and
/// fill polygons enclosed by the drawn segments. Requires >= 2 visible
/// keypoints; coincident keypoints degrade to a 1 px dot.
Mask pose_to_mask(const Pose& p, int frame_width, int frame_height,
                  const Skeleton& skeleton = default_skeleton15(),
                  double eta_p = 0.05);

}  // namespace trackkit::core

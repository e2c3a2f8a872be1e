#pragma once

#include <deque>
#include <vector>

#include "trackkit/image.hpp"
#include "trackkit/types.hpp"

namespace trackkit::labelprop {

struct PropConfig {
    double temperature = 0.05;
    int memory_size = 6;
    int radius = 12;          // local attention radius, feature-grid cells
    int topk = 10;
    double gaussian_coeff = 0.01;  // belief-map sigma = max(coeff * body size, 0.5)
    bool circular_radius = false;  // default square (Chebyshev) window
    double visibility_threshold = 0.1;

    void validate() const;
};

/// Propagation sources: the pinned first frame plus the latest M-1 entries.
class MemoryBank {
  public:
    struct Entry {
        FeatureMap features;
        LabelMap labels;
    };

    explicit MemoryBank(int capacity);

    /// Append an entry; the first entry is pinned and the oldest non-first
    /// entry is evicted once over capacity. Throws DimensionError when grid
    /// dims disagree with existing entries.
    void push(FeatureMap features, LabelMap labels);

    bool empty() const { return entries_.empty(); }
    std::size_t size() const { return entries_.size(); }
    const Entry& entry(std::size_t i) const { return entries_[i]; }

  private:
    int capacity_;
    std::deque<Entry> entries_;
};

/// One sparse attention weight: a source point in a memory entry.
struct SourceWeight {
    int entry = 0;
    int y = 0;
    int x = 0;
    double weight = 0.0;
};

/// Attention row for one target point: softmax over feature inner products /
/// temperature across all in-radius source points of all memory entries, then
/// top-K truncation and renormalization to sum 1. Features are expected to be
/// L2-normalized. Throws EmptyNeighborhood when no source point is in radius.
std::vector<SourceWeight> transition_row(const MemoryBank& memory,
                                         const FeatureMap& target_features,
                                         int ty, int tx, const PropConfig& cfg);

/// Propagate every label channel (objects and background) of the memory into
/// the target frame. Output values stay in [0,1].
LabelMap propagate(const MemoryBank& memory, const FeatureMap& target_features,
                   const PropConfig& cfg);

/// Per-pixel object assignment: argmax over {background, objects}, ties going
/// to background, upsampled to image resolution by nearest neighbor. Pixel
/// value k+1 marks object k; 0 is background.
io::IndexImage finalize_mask(const LabelMap& z, int image_width, int image_height,
                             int stride);

/// Soft labels from an index mask: per cell, the fraction of its pixels
/// carrying each id; background is 1 - max over objects.
LabelMap labelmap_from_index(const io::IndexImage& mask, int stride, int num_objects);

/// One Gaussian belief map per keypoint, peak value 1 at the keypoint cell,
/// sigma = max(gaussian_coeff * body_size, 0.5) in grid cells. Grid coords
/// are pixel / stride. Throws DegeneratePose without visible keypoints.
LabelMap pose_to_beliefs(const Pose& p, int grid_height, int grid_width, int stride,
                         const PropConfig& cfg);

/// Argmax decode of belief maps back to pixel keypoints; channels whose max
/// falls below the visibility threshold are marked not visible.
Pose beliefs_to_pose(const LabelMap& z, int stride, const PropConfig& cfg);

}  // namespace trackkit::labelprop

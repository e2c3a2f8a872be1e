#pragma once

#include <vector>

#include "trackkit/types.hpp"

namespace trackkit::assoc {

/// Object-level feature patch: s point vectors of C channels, row-major with
/// channels fastest, plus the index of the mass-center point.
struct ObjectFeature {
    int points = 0;
    int channels = 0;
    int center = 0;
    std::vector<float> data;

    const float* point(int i) const { return data.data() + static_cast<std::size_t>(i) * channels; }
    bool empty() const { return points == 0; }
};

enum class SimilarityMode { rsm, cf, gpf, gf };

SimilarityMode similarity_mode_from_string(const std::string& name);
const char* to_string(SimilarityMode mode);

/// Gather the feature-grid points covered by an observation. Boxes take their
/// grid-aligned rectangle; masks take cells with majority coverage (falling
/// back to any coverage, then the centroid cell); poses are converted to a
/// mask first. Throws EmptyFeature when nothing is covered.
ObjectFeature crop_object_features(const FeatureMap& frame_features,
                                   const Observation& obs);

/// Reconstruction similarity: both objects are cross-reconstructed through
/// softmax attention over the concatenated point sets, and the two cosines
/// are averaged. Values lie in [-1, 1]. Throws EmptyFeature for empty
/// objects.
std::vector<double> rsm(const std::vector<ObjectFeature>& tracklets,
                        const std::vector<ObjectFeature>& detections);

/// CF: cosine of the mass-center point vectors. GPF: cosine of mean-pooled
/// vectors. GF: cosine of flattened concatenations (requires equal point
/// counts, else ShapeMismatch).
std::vector<double> baseline_similarity(SimilarityMode mode,
                                        const std::vector<ObjectFeature>& tracklets,
                                        const std::vector<ObjectFeature>& detections);

/// Dispatch on mode; result is an N x M row-major matrix.
std::vector<double> similarity_matrix(SimilarityMode mode,
                                      const std::vector<ObjectFeature>& tracklets,
                                      const std::vector<ObjectFeature>& detections);

}  // namespace trackkit::assoc

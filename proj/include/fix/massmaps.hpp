#pragma once
// Weak-lensing map alignment: entropy purity of a group's void/cluster mix,
// weighted by the fraction of the group that is void or cluster at all.
//
// A pixel is void when its intensity is below the void threshold (default 0)
// and cluster when it is above cluster_sigma (default 3) times the population
// standard deviation of the whole map.

#include <cstddef>
#include <vector>

#include "fix/alignment.hpp"
#include "fix/mask.hpp"

namespace fix {

struct MassMap {
    std::size_t height = 0;
    std::size_t width = 0;
    std::vector<double> pixels; // row-major, height * width finite values

    std::size_t feature_count() const { return height * width; }
    double at(std::size_t row, std::size_t col) const { return pixels[row * width + col]; }
};

struct MassMapParams {
    double void_threshold = 0.0;
    double cluster_sigma = 3.0; // multiple of the map's population std
};

struct PixelClassification {
    FeatureMask void_mask;
    FeatureMask cluster_mask;
    double sigma = 0.0; // population std over all pixels
};

// Thresholds every pixel of the map. A constant map has sigma 0; the cluster
// set is then exactly the pixels strictly above the void threshold scaled by 0.
PixelClassification classify_pixels(const MassMap& x, const MassMapParams& params = {});

// Fractions of the group's pixels that are void / cluster. Empty group is an error.
struct Proportions {
    double p_void = 0.0;
    double p_cluster = 0.0;
};
Proportions proportions(const FeatureMask& g, const PixelClassification& c);

// One minus the two-class entropy (bits) of the group's void/cluster split,
// after epsilon smoothing of the raw proportions. 1 when the interpretable
// pixels are all void or all cluster, 0 at an even split.
double purity(const FeatureMask& g, const PixelClassification& c);

constexpr double kPurityEpsilon = 1e-6;

// purity * (p_void + p_cluster). Empty group scores 0.
AlignmentScore massmap_expert_align(const FeatureMask& g, const MassMap& x,
                                    const MassMapParams& params = {});
AlignmentScore massmap_expert_align(const FeatureMask& g, const PixelClassification& c);

} // namespace fix

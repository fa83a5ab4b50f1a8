#include "fix/massmaps.hpp"

#include <cmath>

namespace fix {

PixelClassification classify_pixels(const MassMap& x, const MassMapParams& params) {
    const std::size_t d = x.feature_count();
    if (d == 0) throw ArgumentError("mass map is empty");

    double mean = 0.0;
    for (double v : x.pixels) mean += v;
    mean /= static_cast<double>(d);
    double var = 0.0;
    for (double v : x.pixels) {
        const double delta = v - mean;
        var += delta * delta;
    }
    var /= static_cast<double>(d); // population form over the whole map
    const double sigma = std::sqrt(var);

    PixelClassification out;
    out.sigma = sigma;
    out.void_mask = FeatureMask(d);
    out.cluster_mask = FeatureMask(d);
    const double cluster_threshold = params.cluster_sigma * sigma;
    for (std::size_t i = 0; i < d; ++i) {
        if (x.pixels[i] < params.void_threshold) out.void_mask.set(i);
        else if (x.pixels[i] > cluster_threshold) out.cluster_mask.set(i);
    }
    return out;
}

Proportions proportions(const FeatureMask& g, const PixelClassification& c) {
    const std::size_t n = g.count();
    if (n == 0) throw ArgumentError("proportions of an empty group are undefined");
    const double size = static_cast<double>(n);
    return {static_cast<double>(intersection_count(g, c.void_mask)) / size,
            static_cast<double>(intersection_count(g, c.cluster_mask)) / size};
}

double purity(const FeatureMask& g, const PixelClassification& c) {
    const Proportions p = proportions(g, c);
    // Epsilon keeps the logs finite; pure groups score 1 - O(eps*log eps).
    const double pv = p.p_void + kPurityEpsilon;
    const double pc = p.p_cluster + kPurityEpsilon;
    const double pv_n = pv / (pv + pc);
    const double pc_n = pc / (pv + pc);
    return 1.0 + pv_n * std::log2(pv_n) + pc_n * std::log2(pc_n);
}

AlignmentScore massmap_expert_align(const FeatureMask& g, const PixelClassification& c) {
    if (g.none()) return {0.0};
    const Proportions p = proportions(g, c);
    const double ratio = p.p_void + p.p_cluster;
    if (ratio == 0.0) return {0.0}; // nothing interpretable in the group
    return AlignmentScore::clamped(purity(g, c) * ratio);
}

AlignmentScore massmap_expert_align(const FeatureMask& g, const MassMap& x,
                                    const MassMapParams& params) {
    if (g.none()) return {0.0};
    if (g.size() != x.feature_count())
        throw ArgumentError("mask length does not match the map's pixel count");
    return massmap_expert_align(g, classify_pixels(x, params));
}

} // namespace fix

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "fix/extractors.hpp"
#include "fix/rand.hpp"

namespace fix {

namespace {

double sq_dist(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

} // namespace

std::vector<int> kmeans_labels(const std::vector<std::vector<double>>& points, int k,
                               std::uint64_t seed, int max_iters) {
    const std::size_t n = points.size();
    if (k < 1) throw ArgumentError("k must be at least 1");
    if (n == 0) throw ArgumentError("k-means needs at least one point");
    if (static_cast<std::size_t>(k) > n)
        throw ArgumentError("k exceeds the number of points");

    // Farthest-point seeding: random first center, then repeatedly the point
    // farthest from its nearest chosen center (ties to the lowest index).
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> centers;
    centers.reserve(static_cast<std::size_t>(k));
    centers.push_back(points[detail::bounded_rand(rng, n)]);
    std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
    while (centers.size() < static_cast<std::size_t>(k)) {
        std::size_t best = 0;
        double best_dist = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
            nearest[i] = std::min(nearest[i], sq_dist(points[i], centers.back()));
            if (nearest[i] > best_dist) {
                best_dist = nearest[i];
                best = i;
            }
        }
        centers.push_back(points[best]);
    }

    std::vector<int> labels(n, 0);
    for (int iter = 0; iter < max_iters; ++iter) {
        bool changed = false;
        for (std::size_t i = 0; i < n; ++i) {
            int best_label = 0;
            double best_dist = std::numeric_limits<double>::infinity();
            for (int c = 0; c < k; ++c) {
                const double d = sq_dist(points[i], centers[static_cast<std::size_t>(c)]);
                if (d < best_dist) {
                    best_dist = d;
                    best_label = c;
                }
            }
            if (labels[i] != best_label) {
                labels[i] = best_label;
                changed = true;
            }
        }
        if (!changed && iter > 0) break;

        std::vector<std::vector<double>> sums(static_cast<std::size_t>(k),
                                              std::vector<double>(points[0].size(), 0.0));
        std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = static_cast<std::size_t>(labels[i]);
            for (std::size_t j = 0; j < points[i].size(); ++j) sums[c][j] += points[i][j];
            ++counts[c];
        }
        for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c) {
            if (counts[c] == 0) continue; // empty cluster keeps its centroid
            for (std::size_t j = 0; j < sums[c].size(); ++j)
                centers[c][j] = sums[c][j] / static_cast<double>(counts[c]);
        }
    }
    return labels;
}

namespace {

// mean / population std / count of the values a mask covers.
std::vector<double> stats_descriptor(const std::vector<double>& values) {
    if (values.empty()) return {0.0, 0.0, 0.0};
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (double v : values) {
        const double d = v - mean;
        var += d * d;
    }
    var /= static_cast<double>(values.size());
    return {mean, std::sqrt(var), static_cast<double>(values.size())};
}

GroupSet merge_by_label(const GroupSet& base, const std::vector<int>& labels, int k) {
    std::vector<FeatureMask> merged(static_cast<std::size_t>(k), FeatureMask(base.dim()));
    std::vector<bool> used(static_cast<std::size_t>(k), false);
    for (std::size_t i = 0; i < base.size(); ++i) {
        const auto c = static_cast<std::size_t>(labels[i]);
        merged[c] = mask_or(merged[c], base[i]);
        used[c] = true;
    }
    GroupSet out(base.dim(), "cluster");
    for (std::size_t c = 0; c < merged.size(); ++c)
        if (used[c]) out.add(std::move(merged[c]));
    return out;
}

void check_cluster_args(const GroupSet& base, int k) {
    if (k < 1) throw ArgumentError("cluster count must be at least 1");
    if (static_cast<std::size_t>(k) > base.size())
        throw ArgumentError("cluster count exceeds the number of base segments");
    if (!base.is_partition())
        throw ArgumentError("cluster base must be a partition of the features");
}

} // namespace

GroupSet cluster_extract(const MassMap& x, const GroupSet& base, int k, std::uint64_t seed) {
    check_cluster_args(base, k);
    std::vector<std::vector<double>> descriptors;
    descriptors.reserve(base.size());
    for (const FeatureMask& seg : base) {
        std::vector<double> values;
        seg.for_each_set([&](std::size_t i) { values.push_back(x.pixels[i]); });
        descriptors.push_back(stats_descriptor(values));
    }
    return merge_by_label(base, kmeans_labels(descriptors, k, seed), k);
}

GroupSet cluster_extract(const LightCurve& x, const GroupSet& base, int k, std::uint64_t seed) {
    check_cluster_args(base, k);
    std::vector<std::vector<double>> descriptors;
    descriptors.reserve(base.size());
    for (const FeatureMask& seg : base) {
        std::vector<double> values;
        for (const Observation& p : x.points())
            if (seg.test(p.grid_index)) values.push_back(p.flux);
        descriptors.push_back(stats_descriptor(values));
    }
    return merge_by_label(base, kmeans_labels(descriptors, k, seed), k);
}

GroupSet cluster_extract(const TokenizedText& x, const EmbeddingTable& emb, const GroupSet& base,
                         int k, std::uint64_t seed) {
    check_cluster_args(base, k);
    std::vector<std::vector<double>> descriptors;
    descriptors.reserve(base.size());
    for (const FeatureMask& seg : base) {
        std::vector<double> mean(emb.dim(), 0.0);
        std::size_t count = 0;
        seg.for_each_set([&](std::size_t i) {
            const std::vector<double>& v = emb.lookup(x.words[i]);
            for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += v[j];
            ++count;
        });
        if (count > 0)
            for (double& m : mean) m /= static_cast<double>(count);
        descriptors.push_back(std::move(mean));
    }
    return merge_by_label(base, kmeans_labels(descriptors, k, seed), k);
}

} // namespace fix

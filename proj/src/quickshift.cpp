#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fix/extractors.hpp"

namespace fix {

namespace {

// Separable Gaussian blur with replicated edges.
std::vector<double> gaussian_blur(const MassMap& x, double sigma) {
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
    double total = 0.0;
    for (int k = -radius; k <= radius; ++k) {
        const double w = std::exp(-(static_cast<double>(k) * k) / (2.0 * sigma * sigma));
        kernel[static_cast<std::size_t>(k + radius)] = w;
        total += w;
    }
    for (double& w : kernel) w /= total;

    const auto h = static_cast<int>(x.height);
    const auto w = static_cast<int>(x.width);
    std::vector<double> tmp(x.pixels.size(), 0.0), out(x.pixels.size(), 0.0);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                const int cc = std::clamp(c + k, 0, w - 1);
                acc += kernel[static_cast<std::size_t>(k + radius)] *
                       x.pixels[static_cast<std::size_t>(r * w + cc)];
            }
            tmp[static_cast<std::size_t>(r * w + c)] = acc;
        }
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            double acc = 0.0;
            for (int k = -radius; k <= radius; ++k) {
                const int rr = std::clamp(r + k, 0, h - 1);
                acc += kernel[static_cast<std::size_t>(k + radius)] *
                       tmp[static_cast<std::size_t>(rr * w + c)];
            }
            out[static_cast<std::size_t>(r * w + c)] = acc;
        }
    return out;
}

} // namespace

std::vector<int> quickshift_labels(const MassMap& x, const QuickshiftParams& params) {
    if (x.height == 0 || x.width == 0) throw ArgumentError("quickshift needs a nonempty raster");
    if (params.kernel_size <= 0.0 || params.max_dist <= 0.0)
        throw ArgumentError("quickshift kernel size and max dist must be positive");

    const auto h = static_cast<int>(x.height);
    const auto w = static_cast<int>(x.width);
    const std::size_t n = x.pixels.size();
    const std::vector<double> values =
        params.sigma > 0.0 ? gaussian_blur(x, params.sigma) : x.pixels;

    auto feature_sq_dist = [&](int r0, int c0, int r1, int c1) {
        const double dr = static_cast<double>(r0 - r1);
        const double dc = static_cast<double>(c0 - c1);
        const double di = params.intensity_ratio *
                          (values[static_cast<std::size_t>(r0 * w + c0)] -
                           values[static_cast<std::size_t>(r1 * w + c1)]);
        return dr * dr + dc * dc + di * di;
    };

    // Gaussian kernel density over a 3-bandwidth spatial window.
    const int density_radius = static_cast<int>(std::ceil(3.0 * params.kernel_size));
    const double inv_two_bw = 1.0 / (2.0 * params.kernel_size * params.kernel_size);
    std::vector<double> density(n, 0.0);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            double acc = 0.0;
            for (int rr = std::max(0, r - density_radius);
                 rr <= std::min(h - 1, r + density_radius); ++rr)
                for (int cc = std::max(0, c - density_radius);
                     cc <= std::min(w - 1, c + density_radius); ++cc)
                    acc += std::exp(-feature_sq_dist(r, c, rr, cc) * inv_two_bw);
            density[static_cast<std::size_t>(r * w + c)] = acc;
        }

    // Parent: nearest strictly-denser pixel within max_dist in feature space.
    const int parent_radius = static_cast<int>(std::ceil(params.max_dist));
    const double max_sq = params.max_dist * params.max_dist;
    std::vector<std::size_t> parent(n);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            const std::size_t i = static_cast<std::size_t>(r * w + c);
            parent[i] = i;
            double best = std::numeric_limits<double>::infinity();
            for (int rr = std::max(0, r - parent_radius);
                 rr <= std::min(h - 1, r + parent_radius); ++rr)
                for (int cc = std::max(0, c - parent_radius);
                     cc <= std::min(w - 1, c + parent_radius); ++cc) {
                    const std::size_t j = static_cast<std::size_t>(rr * w + cc);
                    if (j == i || density[j] <= density[i]) continue;
                    const double d = feature_sq_dist(r, c, rr, cc);
                    if (d > max_sq || d >= best) continue;
                    best = d;
                    parent[i] = j;
                }
        }

    // Resolve each pixel to its tree root, then relabel roots consecutively
    // in row-major first-seen order.
    std::vector<std::size_t> root(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t p = i;
        while (parent[p] != p) p = parent[p];
        std::size_t q = i; // path compression
        while (parent[q] != q) {
            const std::size_t next = parent[q];
            parent[q] = p;
            q = next;
        }
        root[i] = p;
    }
    std::vector<int> label(n, -1);
    std::vector<int> out(n, 0);
    int next_label = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (label[root[i]] == -1) label[root[i]] = next_label++;
        out[i] = label[root[i]];
    }
    return out;
}

GroupSet quickshift_extract(const MassMap& x, const QuickshiftParams& params) {
    const std::vector<int> labels = quickshift_labels(x, params);
    const int n_labels = *std::max_element(labels.begin(), labels.end()) + 1;
    GroupSet out(x.feature_count(), "quickshift");
    std::vector<FeatureMask> masks(static_cast<std::size_t>(n_labels),
                                   FeatureMask(x.feature_count()));
    for (std::size_t i = 0; i < labels.size(); ++i)
        masks[static_cast<std::size_t>(labels[i])].set(i);
    for (FeatureMask& m : masks) out.add(std::move(m));
    return out;
}

} // namespace fix

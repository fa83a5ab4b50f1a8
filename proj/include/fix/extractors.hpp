#pragma once
// Baseline feature-group extractors. All are deterministic given
// (input, config, seed); the partition extractors emit pairwise-disjoint
// masks whose union covers every feature.

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fix/mask.hpp"
#include "fix/sample.hpp"

namespace fix {

// Cap on the random baseline's group count: ceil(scaling * expert_count),
// with per-setting overrides where a benchmark rounds up past the product.
struct GroupMaximum {
    int expert_count = 1;
    double scaling = 1.5;
    std::optional<int> override_max;

    int max_groups() const {
        if (override_max) return *override_max;
        return static_cast<int>(std::ceil(scaling * expert_count));
    }

    static GroupMaximum massmaps() { return {14, 1.5, 25}; }
    static GroupMaximum supernova() { return {6, 1.5, std::nullopt}; } // ceil -> 9
    static GroupMaximum politeness() { return {26, 1.5, 40}; }
    static GroupMaximum emotion() { return {26, 1.5, 40}; }
};

// One all-ones mask.
GroupSet identity_extract(std::size_t d);

// Uniform random partition into max_groups groups (capped at d). Groups may
// come out empty; they are kept so the group count is deterministic.
GroupSet random_extract(std::size_t d, const GroupMaximum& gm, std::uint64_t seed);

// rows x cols rectangular cells partitioning the raster; remainder pixels are
// absorbed into the last row/column of cells.
GroupSet patch_extract(std::size_t height, std::size_t width, int rows, int cols);

// Consecutive timestamp-grid windows of the given width; the last may be short.
GroupSet slice_extract(std::size_t d, int width);

enum class TextGranularity { words, phrases, sentences };

// words: one singleton per word. phrases: split after words carrying
// , ; : . ! ? or an em/en dash. sentences: split after . ! ? only.
GroupSet text_extract(const TokenizedText& x, TextGranularity granularity);

struct QuickshiftParams {
    double kernel_size = 5.0; // density bandwidth
    double max_dist = 10.0;   // parent link cap in feature space
    double sigma = 0.2;       // pre-smoothing Gaussian std, 0 disables
    double intensity_ratio = 1.0;
};

// Mode-seeking superpixels over (row, col, ratio * intensity). Each pixel
// links to the feature-space-nearest neighbor of strictly higher density
// within max_dist; the resulting forests are the segments.
GroupSet quickshift_extract(const MassMap& x, const QuickshiftParams& params = {});
std::vector<int> quickshift_labels(const MassMap& x, const QuickshiftParams& params = {});

// Lloyd k-means with seeded farthest-point initialization, at most max_iters
// rounds, ties broken toward the lowest cluster index. Returns per-point labels.
std::vector<int> kmeans_labels(const std::vector<std::vector<double>>& points, int k,
                               std::uint64_t seed, int max_iters = 100);

// Merges the base partition's segments by k-means over per-segment raw
// descriptors (mean/std/size of covered values; mean word embedding for text).
GroupSet cluster_extract(const MassMap& x, const GroupSet& base, int k, std::uint64_t seed);
GroupSet cluster_extract(const LightCurve& x, const GroupSet& base, int k, std::uint64_t seed);
GroupSet cluster_extract(const TokenizedText& x, const EmbeddingTable& emb,
                         const GroupSet& base, int k, std::uint64_t seed);

enum class ExtractorKind {
    identity,
    random,
    patch,
    slice,
    words,
    phrases,
    sentences,
    quickshift,
    clustering
};

struct ExtractorConfig {
    ExtractorKind kind = ExtractorKind::identity;

    GroupMaximum group_maximum;              // random
    int patch_rows = 8, patch_cols = 8;      // patch
    int slice_width = 10;                    // slice
    QuickshiftParams quickshift;             // quickshift
    int cluster_k = 2;                       // clustering
    std::shared_ptr<const ExtractorConfig> cluster_base; // clustering; defaults per modality

    std::string id() const;
    bool is_stochastic() const {
        return kind == ExtractorKind::random || kind == ExtractorKind::clustering;
    }
    bool compatible_with(Modality m) const;
};

// Parses CLI-style specs: "identity", "random:25", "patch:8x8", "slice:10",
// "words", "phrases", "sentences", "quickshift:5,10,0.2",
// "cluster:4" or "cluster:4,base=slice:10". Raises ConfigError naming the
// offending parameter.
ExtractorConfig parse_extractor(const std::string& spec);

// Runs the configured extractor on one sample. Text clustering needs the
// embedding table; passing none for it is a configuration error.
GroupSet extract_groups(const Sample& x, const ExtractorConfig& cfg, std::uint64_t seed,
                        const EmbeddingTable* emb = nullptr);

} // namespace fix

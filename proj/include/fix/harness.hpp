#pragma once
// Dataset-level evaluation: extract groups per sample, aggregate the mean
// score, and estimate the spread of the mean by bootstrap resampling.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "fix/extractors.hpp"
#include "fix/scoring.hpp"

namespace fix {

struct Dataset {
    Modality modality = Modality::image;
    std::vector<Sample> samples;
    // Per-sample expert annotations; either empty or one set per sample.
    // Presence switches evaluation to explicit mode with the best-IoU scorer.
    std::vector<GroupSet> annotations;
    std::shared_ptr<const AlignmentScorer> scorer; // implicit-mode binding
    std::shared_ptr<const EmbeddingTable> embeddings; // for text extractors

    bool explicit_mode() const { return !annotations.empty(); }
};

struct EvalReport {
    std::string extractor_id;
    std::string scorer_id;
    std::vector<double> per_sample;
    double mean = 0.0;
    double boot_std = 0.0;
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> config; // full snapshot
};

struct EvalOptions {
    std::uint64_t seed = 0;
    int workers = 1;
    int bootstrap_iters = 1000;
};

// Scores every sample with groups from the extractor and returns the report.
// Deterministic per seed regardless of worker count: sample k always draws
// the k-th derived seed and the reduction runs in sample order.
EvalReport evaluate(const Dataset& ds, const ExtractorConfig& extractor,
                    const EvalOptions& opts);

// Standard deviation (population form) of the means of `iters` resamples
// drawn with replacement. Exactly 0 for constant input.
double bootstrap_std(std::span<const double> scores, int iters, std::uint64_t seed);

// Stable per-sample seed derivation (splitmix64 over seed and index).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

} // namespace fix

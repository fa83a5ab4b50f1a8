#pragma once
// Core aggregation: per-feature alignment averaged over covering groups,
// then averaged over all features; plus the explicit best-IoU alignment
// against annotated groups.

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "fix/alignment.hpp"
#include "fix/mask.hpp"
#include "fix/sample.hpp"

namespace fix {

// Pluggable per-group alignment. Implementations must be pure: the same
// (mask, sample) pair always yields the same score, so results may be cached
// and samples scored concurrently.
class AlignmentScorer {
public:
    virtual ~AlignmentScorer() = default;

    virtual AlignmentScore score(const FeatureMask& g, const Sample& x) const = 0;
    virtual std::string id() const = 0;
    virtual bool accepts(Modality m) const = 0;

    // Parameter snapshot for reports; keys are prefixed with "scorer.".
    virtual std::vector<std::pair<std::string, std::string>> config() const { return {}; }
};

// The groups of G that cover feature i, order and duplicates preserved.
GroupSet covering_groups(std::size_t i, const GroupSet& g);

// 0 when nothing covers i, otherwise the mean scorer value over the covering
// groups (duplicates counted with multiplicity).
AlignmentScore feature_align(std::size_t i, const GroupSet& g, const Sample& x,
                             const AlignmentScorer& scorer);

// Mean of feature_align over all d features. Scorer values are computed once
// per distinct mask and reused.
AlignmentScore fix_score(const GroupSet& g, const Sample& x, const AlignmentScorer& scorer);

// Intersection-over-union of one-bits; 0 when the union is empty.
AlignmentScore iou(const FeatureMask& a, const FeatureMask& b);

// Best IoU of g_hat against the annotated masks. Empty annotation set is a
// configuration error; an all-zero g_hat scores 0.
AlignmentScore explicit_expert_align(const FeatureMask& g_hat, const GroupSet& g_star);

// Best-IoU scorer bound to one sample's annotations. Ignores the sample
// payload entirely, so it accepts every modality.
class ExplicitScorer final : public AlignmentScorer {
public:
    explicit ExplicitScorer(GroupSet g_star);

    AlignmentScore score(const FeatureMask& g, const Sample& x) const override;
    std::string id() const override { return "explicit"; }
    bool accepts(Modality) const override { return true; }

    const GroupSet& annotations() const { return g_star_; }

private:
    GroupSet g_star_;
};

} // namespace fix

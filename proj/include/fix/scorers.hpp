#pragma once
// Concrete AlignmentScorer bindings for the three implicit domains.

#include <map>
#include <memory>
#include <optional>
#include <string>

#include "fix/scoring.hpp"

namespace fix {

class MassMapScorer final : public AlignmentScorer {
public:
    explicit MassMapScorer(MassMapParams params = {}) : params_(params) {}

    AlignmentScore score(const FeatureMask& g, const Sample& x) const override;
    std::string id() const override { return "massmaps"; }
    bool accepts(Modality m) const override { return m == Modality::image; }
    std::vector<std::pair<std::string, std::string>> config() const override;

    const MassMapParams& params() const { return params_; }

private:
    MassMapParams params_;
};

class SupernovaScorer final : public AlignmentScorer {
public:
    explicit SupernovaScorer(ConsistencyParams params = {}) : params_(params) {}

    AlignmentScore score(const FeatureMask& g, const Sample& x) const override;
    std::string id() const override { return "supernova"; }
    bool accepts(Modality m) const override { return m == Modality::series; }
    std::vector<std::pair<std::string, std::string>> config() const override;

    const ConsistencyParams& params() const { return params_; }

private:
    ConsistencyParams params_;
};

// One centroid set per language, selected by the sample's language tag. A
// fallback set (empty language key) applies when the tag has no entry.
class PolitenessScorer final : public AlignmentScorer {
public:
    PolitenessScorer(std::map<std::string, Centroids> per_language,
                     std::shared_ptr<const EmbeddingTable> emb);

    static PolitenessScorer for_all_languages(const Lexicon& lexicon,
                                              std::shared_ptr<const EmbeddingTable> emb);

    AlignmentScore score(const FeatureMask& g, const Sample& x) const override;
    std::string id() const override { return "politeness"; }
    bool accepts(Modality m) const override { return m == Modality::text; }
    std::vector<std::pair<std::string, std::string>> config() const override;

private:
    const Centroids& centroids_for(const std::string& language) const;

    std::map<std::string, Centroids> per_language_;
    std::shared_ptr<const EmbeddingTable> emb_;
};

class EmotionScorer final : public AlignmentScorer {
public:
    EmotionScorer(CircumplexAxes axes, std::shared_ptr<const EmbeddingTable> emb)
        : axes_(std::move(axes)), emb_(std::move(emb)) {}

    AlignmentScore score(const FeatureMask& g, const Sample& x) const override;
    std::string id() const override { return "emotion"; }
    bool accepts(Modality m) const override { return m == Modality::text; }

    const CircumplexAxes& axes() const { return axes_; }

private:
    CircumplexAxes axes_;
    std::shared_ptr<const EmbeddingTable> emb_;
};

} // namespace fix

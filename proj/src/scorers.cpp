#include "fix/scorers.hpp"

#include <cstdio>

namespace fix {

namespace {

template <typename T>
const T& payload(const Sample& x, const char* scorer_id) {
    const T* p = std::get_if<T>(&x);
    if (!p) throw ConfigError(std::string("scorer '") + scorer_id + "' does not accept " +
                              to_string(modality_of(x)) + " samples");
    return *p;
}

std::string fmt_param(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

} // namespace

AlignmentScore MassMapScorer::score(const FeatureMask& g, const Sample& x) const {
    return massmap_expert_align(g, payload<MassMap>(x, "massmaps"), params_);
}

std::vector<std::pair<std::string, std::string>> MassMapScorer::config() const {
    return {{"scorer.void_threshold", fmt_param(params_.void_threshold)},
            {"scorer.cluster_sigma", fmt_param(params_.cluster_sigma)}};
}

AlignmentScore SupernovaScorer::score(const FeatureMask& g, const Sample& x) const {
    return supernova_expert_align(g, payload<LightCurve>(x, "supernova"), params_);
}

std::vector<std::pair<std::string, std::string>> SupernovaScorer::config() const {
    return {{"scorer.eps", fmt_param(params_.eps)},
            {"scorer.window", fmt_param(params_.window)},
            {"scorer.step", fmt_param(params_.step)}};
}

PolitenessScorer::PolitenessScorer(std::map<std::string, Centroids> per_language,
                                   std::shared_ptr<const EmbeddingTable> emb)
    : per_language_(std::move(per_language)), emb_(std::move(emb)) {
    if (per_language_.empty()) throw ConfigError("politeness scorer needs at least one lexicon");
    if (!emb_) throw ConfigError("politeness scorer needs an embedding table");
}

PolitenessScorer PolitenessScorer::for_all_languages(const Lexicon& lexicon,
                                                     std::shared_ptr<const EmbeddingTable> emb) {
    std::map<std::string, Centroids> m;
    m.emplace("", build_centroids(lexicon, *emb));
    return PolitenessScorer(std::move(m), std::move(emb));
}

const Centroids& PolitenessScorer::centroids_for(const std::string& language) const {
    auto it = per_language_.find(language);
    if (it == per_language_.end()) it = per_language_.find(""); // fallback set
    if (it == per_language_.end())
        throw ConfigError("no politeness lexicon registered for language '" + language + "'");
    return it->second;
}

AlignmentScore PolitenessScorer::score(const FeatureMask& g, const Sample& x) const {
    const TokenizedText& text = payload<TokenizedText>(x, "politeness");
    return politeness_expert_align(g, text, centroids_for(text.language), *emb_);
}

std::vector<std::pair<std::string, std::string>> PolitenessScorer::config() const {
    std::string languages;
    for (const auto& [lang, centroids] : per_language_) {
        if (!languages.empty()) languages += ",";
        languages += lang.empty() ? "*" : lang;
    }
    return {{"scorer.languages", languages}};
}

AlignmentScore EmotionScorer::score(const FeatureMask& g, const Sample& x) const {
    return emotion_expert_align(g, payload<TokenizedText>(x, "emotion"), axes_, *emb_);
}

} // namespace fix

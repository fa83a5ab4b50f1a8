#include "fix/scoring.hpp"

#include <map>
#include <sstream>

namespace fix {

AlignmentScore AlignmentScore::clamped(double v) {
    constexpr double kTiny = 1e-12;
    if (v < 0.0) {
        if (v < -kTiny) {
            std::ostringstream msg;
            msg << "alignment score " << v << " below 0; clamped";
            warn(msg.str());
        }
        return {0.0};
    }
    if (v > 1.0) {
        if (v > 1.0 + kTiny) {
            std::ostringstream msg;
            msg << "alignment score " << v << " above 1; clamped";
            warn(msg.str());
        }
        return {1.0};
    }
    return {v};
}

GroupSet covering_groups(std::size_t i, const GroupSet& g) {
    if (!g.empty() && i >= g.dim())
        throw ArgumentError("feature index " + std::to_string(i) + " out of range for d=" +
                            std::to_string(g.dim()));
    GroupSet out(g.dim(), g.provenance());
    for (const FeatureMask& mask : g)
        if (mask.test(i)) out.add(mask);
    return out;
}

namespace {

void check_scorer(const AlignmentScorer& scorer, const Sample& x) {
    if (!scorer.accepts(modality_of(x)))
        throw ConfigError("scorer '" + scorer.id() + "' does not accept " +
                          to_string(modality_of(x)) + " samples");
}

// Scores each distinct mask once; duplicates reuse the cached value.
class ScoreCache {
public:
    ScoreCache(const Sample& x, const AlignmentScorer& scorer) : x_(x), scorer_(scorer) {}

    double get(const FeatureMask& g) {
        auto [it, inserted] = cache_.try_emplace(g.words(), 0.0);
        if (inserted) it->second = scorer_.score(g, x_).value;
        return it->second;
    }

private:
    const Sample& x_;
    const AlignmentScorer& scorer_;
    std::map<std::vector<std::uint64_t>, double> cache_;
};

} // namespace

AlignmentScore feature_align(std::size_t i, const GroupSet& g, const Sample& x,
                             const AlignmentScorer& scorer) {
    check_scorer(scorer, x);
    if (i >= feature_count(x))
        throw ArgumentError("feature index " + std::to_string(i) + " out of range for d=" +
                            std::to_string(feature_count(x)));
    ScoreCache cache(x, scorer);
    double sum = 0.0;
    std::size_t covers = 0;
    for (const FeatureMask& mask : g) {
        if (!mask.test(i)) continue;
        sum += cache.get(mask);
        ++covers;
    }
    if (covers == 0) return {0.0};
    return {sum / static_cast<double>(covers)};
}

AlignmentScore fix_score(const GroupSet& g, const Sample& x, const AlignmentScorer& scorer) {
    check_scorer(scorer, x);
    const std::size_t d = feature_count(x);
    if (d == 0) throw ArgumentError("sample has no features (d=0)");
    if (!g.empty() && g.dim() != d)
        throw ArgumentError("group set d=" + std::to_string(g.dim()) +
                            " does not match sample d=" + std::to_string(d));

    std::vector<double> sums(d, 0.0);
    std::vector<std::size_t> covers(d, 0);
    ScoreCache cache(x, scorer);
    for (const FeatureMask& mask : g) {
        const double s = cache.get(mask);
        mask.for_each_set([&](std::size_t i) {
            sums[i] += s;
            ++covers[i];
        });
    }
    double total = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        if (covers[i] != 0) total += sums[i] / static_cast<double>(covers[i]);
    return {total / static_cast<double>(d)};
}

AlignmentScore iou(const FeatureMask& a, const FeatureMask& b) {
    const std::size_t uni = union_count(a, b);
    if (uni == 0) return {0.0};
    const std::size_t inter = intersection_count(a, b);
    return {static_cast<double>(inter) / static_cast<double>(uni)};
}

AlignmentScore explicit_expert_align(const FeatureMask& g_hat, const GroupSet& g_star) {
    if (g_star.empty()) throw ConfigError("explicit alignment requires annotated groups");
    double best = 0.0;
    for (const FeatureMask& star : g_star) best = std::max(best, iou(g_hat, star).value);
    return {best};
}

ExplicitScorer::ExplicitScorer(GroupSet g_star) : g_star_(std::move(g_star)) {
    if (g_star_.empty()) throw ConfigError("explicit scorer requires annotated groups");
}

AlignmentScore ExplicitScorer::score(const FeatureMask& g, const Sample&) const {
    return explicit_expert_align(g, g_star_);
}

std::string to_string(Modality m) {
    switch (m) {
        case Modality::image: return "image";
        case Modality::series: return "series";
        case Modality::text: return "text";
    }
    return "unknown";
}

Modality modality_from_string(const std::string& name) {
    if (name == "image") return Modality::image;
    if (name == "series") return Modality::series;
    if (name == "text") return Modality::text;
    throw ConfigError("unknown modality '" + name + "' (expected image, series, or text)");
}

} // namespace fix

#pragma once
// Shared test fixtures: synthetic scorers, a naive reference for the
// score aggregation, and small RNG helpers.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "fix/rand.hpp"
#include "fix/scoring.hpp"

namespace fixtest {

// Sample stand-in for modality-agnostic core tests: d one-letter words.
inline fix::Sample dummy_sample(std::size_t d) {
    fix::TokenizedText text;
    text.language = "en";
    for (std::size_t i = 0; i < d; ++i) text.words.push_back("w" + std::to_string(i));
    return text;
}

// Pure deterministic scorer: hashes the mask bits into [0, 1).
class HashScorer final : public fix::AlignmentScorer {
public:
    explicit HashScorer(std::uint64_t salt = 0) : salt_(salt) {}

    fix::AlignmentScore score(const fix::FeatureMask& g, const fix::Sample&) const override {
        std::uint64_t h = fix::detail::splitmix64(salt_ ^ (g.size() * 0x9E3779B97F4A7C15ull));
        for (std::uint64_t w : g.words()) h = fix::detail::splitmix64(h ^ w);
        return {static_cast<double>(h >> 11) * 0x1.0p-53};
    }
    std::string id() const override { return "hash"; }
    bool accepts(fix::Modality) const override { return true; }

private:
    std::uint64_t salt_;
};

// Scorer with explicit per-mask values; unknown masks get the fallback.
class FixedScorer final : public fix::AlignmentScorer {
public:
    explicit FixedScorer(double fallback = 0.0) : fallback_(fallback) {}

    void set(const fix::FeatureMask& mask, double value) { values_[mask.words()] = value; }

    fix::AlignmentScore score(const fix::FeatureMask& g, const fix::Sample&) const override {
        const auto it = values_.find(g.words());
        return {it == values_.end() ? fallback_ : it->second};
    }
    std::string id() const override { return "fixed"; }
    bool accepts(fix::Modality) const override { return true; }

private:
    double fallback_;
    std::map<std::vector<std::uint64_t>, double> values_;
};

// Literal double loop over features and groups, independent of the library's
// aggregation path.
inline double naive_fix_score(const fix::GroupSet& groups, const fix::Sample& x,
                              const fix::AlignmentScorer& scorer) {
    const std::size_t d = fix::feature_count(x);
    double total = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
        double sum = 0.0;
        std::size_t covers = 0;
        for (const fix::FeatureMask& g : groups) {
            if (!g.test(i)) continue;
            sum += scorer.score(g, x).value;
            ++covers;
        }
        if (covers != 0) total += sum / static_cast<double>(covers);
    }
    return total / static_cast<double>(d);
}

inline fix::FeatureMask random_mask(std::size_t d, std::mt19937_64& rng, double p_one = 0.5) {
    fix::FeatureMask m(d);
    for (std::size_t i = 0; i < d; ++i)
        if (fix::detail::unit_real(rng) < p_one) m.set(i);
    return m;
}

// Random annotation set covering every feature: a random partition plus a
// few extra random masks.
inline fix::GroupSet random_full_cover(std::size_t d, std::size_t n_groups,
                                       std::mt19937_64& rng) {
    fix::GroupSet out(d);
    std::vector<fix::FeatureMask> parts(n_groups, fix::FeatureMask(d));
    for (std::size_t i = 0; i < d; ++i)
        parts[fix::detail::bounded_rand(rng, n_groups)].set(i);
    for (const fix::FeatureMask& m : parts)
        if (m.any()) out.add(m);
    if (fix::detail::bounded_rand(rng, 2) == 0) out.add(random_mask(d, rng));
    return out;
}

} // namespace fixtest

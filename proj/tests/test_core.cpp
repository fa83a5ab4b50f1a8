#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <random>

#include "fix/scoring.hpp"
#include "helpers.hpp"

using namespace fix;
using fixtest::dummy_sample;
using fixtest::FixedScorer;
using fixtest::HashScorer;

namespace {

GroupSet make_groups(std::initializer_list<const char*> bit_strings) {
    GroupSet g;
    for (const char* s : bit_strings) g.add(FeatureMask::from_bits(s));
    return g;
}

std::atomic<int> g_warnings{0};
void count_warning(const std::string&) { ++g_warnings; }

} // namespace

TEST_CASE("covering_groups picks exactly the masks with the bit set") {
    const GroupSet g = make_groups({"1100", "0110"});

    const GroupSet at0 = covering_groups(0, g);
    REQUIRE(at0.size() == 1);
    CHECK(at0[0] == FeatureMask::from_bits("1100"));

    const GroupSet at1 = covering_groups(1, g);
    REQUIRE(at1.size() == 2);
    CHECK(at1[0] == FeatureMask::from_bits("1100"));
    CHECK(at1[1] == FeatureMask::from_bits("0110"));

    CHECK(covering_groups(3, g).empty());
    CHECK_THROWS_AS(covering_groups(4, g), ArgumentError);
}

TEST_CASE("covering_groups keeps duplicates and order") {
    GroupSet g;
    g.add(FeatureMask::from_bits("10"));
    g.add(FeatureMask::from_bits("11"));
    g.add(FeatureMask::from_bits("10"));
    CHECK(covering_groups(0, g).size() == 3);
    CHECK(covering_groups(1, g).size() == 1);
}

TEST_CASE("feature_align averages the covering groups") {
    const Sample x = dummy_sample(4);
    FixedScorer scorer;
    const FeatureMask g1 = FeatureMask::from_bits("1100");
    const FeatureMask g2 = FeatureMask::from_bits("0110");
    scorer.set(g1, 0.5);
    scorer.set(g2, 1.0);

    GroupSet groups;
    groups.add(g1);
    groups.add(g2);

    CHECK(feature_align(3, groups, x, scorer).value == 0.0); // uncovered
    CHECK(feature_align(0, groups, x, scorer).value == 0.5); // singleton mean
    CHECK(feature_align(1, groups, x, scorer).value == doctest::Approx(0.75).epsilon(1e-15));
}

TEST_CASE("feature_align rejects scorer/sample modality mismatch") {
    MassMap map{1, 1, {0.0}};
    const Sample x = map;
    HashScorer any_scorer;
    CHECK_NOTHROW(feature_align(0, GroupSet(1), x, any_scorer));

    // A text-only scorer against an image sample is a configuration error.
    struct TextOnly final : AlignmentScorer {
        AlignmentScore score(const FeatureMask&, const Sample&) const override { return {0.0}; }
        std::string id() const override { return "textonly"; }
        bool accepts(Modality m) const override { return m == Modality::text; }
    } text_only;
    CHECK_THROWS_AS(feature_align(0, GroupSet(1), x, text_only), ConfigError);
}

TEST_CASE("fix_score hand example") {
    const Sample x = dummy_sample(4);
    FixedScorer scorer;
    const FeatureMask g1 = FeatureMask::from_indices(4, {0, 1});
    const FeatureMask g2 = FeatureMask::from_indices(4, {1, 2});
    scorer.set(g1, 0.5);
    scorer.set(g2, 1.0);

    GroupSet groups;
    groups.add(g1);
    groups.add(g2);
    // per-feature: 0.5, (0.5+1)/2, 1.0, 0 -> mean 0.5625
    CHECK(fix_score(groups, x, scorer).value == doctest::Approx(0.5625).epsilon(1e-15));

    CHECK(fix_score(GroupSet{}, x, scorer).value == 0.0);
}

TEST_CASE("fix_score rejects an empty sample and mismatched dimensions") {
    HashScorer scorer;
    const Sample empty = TokenizedText{{}, "en"};
    CHECK_THROWS_AS(fix_score(GroupSet{}, empty, scorer), ArgumentError);

    const Sample x = dummy_sample(4);
    GroupSet wrong(5);
    wrong.add(FeatureMask(5));
    CHECK_THROWS_AS(fix_score(wrong, x, scorer), ArgumentError);
}

TEST_CASE("iou") {
    const FeatureMask a = FeatureMask::from_bits("1100");
    CHECK(iou(a, a).value == 1.0);
    CHECK(iou(a, FeatureMask::from_bits("0011")).value == 0.0);
    CHECK(iou(FeatureMask::from_bits("1110"), FeatureMask::from_bits("0111")).value == 0.5);
    CHECK(iou(FeatureMask(4), FeatureMask(4)).value == 0.0); // empty union
    CHECK_THROWS_AS(iou(a, FeatureMask(5)), ArgumentError);
}

TEST_CASE("explicit_expert_align takes the best IoU") {
    GroupSet stars = make_groups({"1100", "0011"});
    CHECK(explicit_expert_align(FeatureMask::from_bits("1100"), stars).value == 1.0);
    CHECK(explicit_expert_align(FeatureMask::from_bits("0000"), stars).value == 0.0);

    // Half-overlaps its best match, disjoint from the rest.
    GroupSet stars2 = make_groups({"111100", "000011"});
    const FeatureMask probe = FeatureMask::from_bits("110000");
    CHECK(explicit_expert_align(probe, stars2).value == 0.5);

    CHECK_THROWS_AS(explicit_expert_align(probe, GroupSet{}), ConfigError);
}

TEST_CASE("annotated groups with full coverage score exactly 1") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = 1 + fix::detail::bounded_rand(rng, 64);
        const std::size_t n = 1 + fix::detail::bounded_rand(rng, 8);
        const GroupSet stars = fixtest::random_full_cover(d, n, rng);
        const ExplicitScorer scorer(stars);
        const Sample x = dummy_sample(d);
        CHECK(fix_score(stars, x, scorer).value == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("duplication at optimality leaves the score at exactly 1") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = 2 + fix::detail::bounded_rand(rng, 32);
        GroupSet stars = fixtest::random_full_cover(d, 3, rng);
        const ExplicitScorer scorer(stars);
        const Sample x = dummy_sample(d);
        REQUIRE(fix_score(stars, x, scorer).value == 1.0);

        GroupSet duplicated = stars;
        duplicated.add(stars[fix::detail::bounded_rand(rng, stars.size())]);
        CHECK(fix_score(duplicated, x, scorer).value == 1.0);
    }
}

TEST_CASE("appending a disjoint positive-scoring mask raises the score by v*|g|/d") {
    std::mt19937_64 rng(13);
    HashScorer scorer;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t d = 8 + fix::detail::bounded_rand(rng, 40);
        const Sample x = dummy_sample(d);
        GroupSet groups;
        // Confine existing groups to the lower half so the upper half stays free.
        const std::size_t half = d / 2;
        const std::size_t n = fix::detail::bounded_rand(rng, 4);
        for (std::size_t k = 0; k < n; ++k) {
            FeatureMask m(d);
            for (std::size_t i = 0; i < half; ++i)
                if (fix::detail::unit_real(rng) < 0.5) m.set(i);
            groups.add(m);
        }

        FeatureMask fresh(d);
        for (std::size_t i = half; i < d; ++i)
            if (fix::detail::unit_real(rng) < 0.5) fresh.set(i);
        if (fresh.none()) fresh.set(d - 1);

        const double v = scorer.score(fresh, x).value;
        REQUIRE(v > 0.0);
        const double before = fix_score(groups, x, scorer).value;
        GroupSet extended = groups;
        extended.add(fresh);
        const double after = fix_score(extended, x, scorer).value;
        const double expected_gain =
            v * static_cast<double>(fresh.count()) / static_cast<double>(d);
        CHECK(after - before == doctest::Approx(expected_gain).epsilon(1e-12));
        CHECK(after > before);
    }
}

TEST_CASE("group order does not change the score") {
    std::mt19937_64 rng(17);
    HashScorer scorer;
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t d = 4 + fix::detail::bounded_rand(rng, 24);
        const Sample x = dummy_sample(d);
        std::vector<FeatureMask> masks;
        const std::size_t n = 1 + fix::detail::bounded_rand(rng, 5);
        for (std::size_t k = 0; k < n; ++k) masks.push_back(fixtest::random_mask(d, rng));

        GroupSet forward, backward;
        for (const FeatureMask& m : masks) forward.add(m);
        for (auto it = masks.rbegin(); it != masks.rend(); ++it) backward.add(*it);
        CHECK(fix_score(forward, x, scorer).value ==
              doctest::Approx(fix_score(backward, x, scorer).value).epsilon(1e-12));
    }
}

TEST_CASE("matches the naive double-loop reference bit for bit") {
    std::mt19937_64 rng(19);
    HashScorer scorer(3);
    for (std::size_t d = 1; d <= 12; ++d) {
        for (std::size_t n_groups = 0; n_groups <= 4; ++n_groups) {
            for (int rep = 0; rep < 20; ++rep) {
                const Sample x = dummy_sample(d);
                GroupSet groups;
                for (std::size_t k = 0; k < n_groups; ++k)
                    groups.add(fixtest::random_mask(d, rng));
                CHECK(fix_score(groups, x, scorer).value ==
                      fixtest::naive_fix_score(groups, x, scorer));
            }
        }
    }
}

TEST_CASE("score stays in [0,1] for any in-range scorer") {
    std::mt19937_64 rng(23);
    HashScorer scorer(9);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t d = 1 + fix::detail::bounded_rand(rng, 48);
        const Sample x = dummy_sample(d);
        GroupSet groups;
        const std::size_t n = fix::detail::bounded_rand(rng, 6);
        for (std::size_t k = 0; k < n; ++k) groups.add(fixtest::random_mask(d, rng));
        const double s = fix_score(groups, x, scorer).value;
        CHECK(s >= 0.0);
        CHECK(s <= 1.0);
    }
}

TEST_CASE("out-of-range scores clamp with a warning; float noise clamps silently") {
    g_warnings = 0;
    const WarnHandler previous = set_warn_handler(&count_warning);

    CHECK(AlignmentScore::clamped(-0.25).value == 0.0);
    CHECK(g_warnings == 1);
    CHECK(AlignmentScore::clamped(1.25).value == 1.0);
    CHECK(g_warnings == 2);
    CHECK(AlignmentScore::clamped(1.0 + 1e-15).value == 1.0);
    CHECK(AlignmentScore::clamped(-1e-15).value == 0.0);
    CHECK(g_warnings == 2); // noise-level overshoot stays quiet
    CHECK(AlignmentScore::clamped(0.5).value == 0.5);

    set_warn_handler(previous);
}

TEST_CASE("explicit scorer caches allow duplicated masks cheaply") {
    // Duplicates in the proposal count twice in the mean but must not change
    // a perfect score.
    GroupSet stars = make_groups({"1110", "0001"});
    const ExplicitScorer scorer(stars);
    const Sample x = dummy_sample(4);
    GroupSet proposal = stars;
    proposal.add(stars[0]);
    proposal.add(stars[0]);
    CHECK(fix_score(proposal, x, scorer).value == 1.0);
}

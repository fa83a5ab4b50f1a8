#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cmath>
#include <random>

#include "fix/rand.hpp"
#include "fix/scorers.hpp"
#include "fix/textalign.hpp"

using namespace fix;

namespace {

std::atomic<int> g_warnings{0};
void count_warning(const std::string&) { ++g_warnings; }

EmbeddingTable plane_table(std::initializer_list<std::pair<std::string, std::vector<double>>> rows) {
    EmbeddingTable t;
    for (const auto& [word, vec] : rows) t.insert(word, vec);
    return t;
}

// Unit-square anchors: projection becomes the identity on the plane.
EmbeddingTable with_plane_anchors(EmbeddingTable t) {
    t.insert("pv", {1.0, 0.0});
    t.insert("nv", {-1.0, 0.0});
    t.insert("ha", {0.0, 1.0});
    t.insert("la", {0.0, -1.0});
    return t;
}

AnchorWords plane_anchors() { return {{"pv"}, {"nv"}, {"ha"}, {"la"}}; }

TokenizedText text_of(std::vector<std::string> words) { return {std::move(words), "en"}; }

} // namespace

TEST_CASE("centroids are per-category embedding means") {
    const EmbeddingTable emb = plane_table({{"solo", {0.25, -0.5}},
                                            {"up", {0.0, 1.0}},
                                            {"down", {0.0, -1.0}},
                                            {"east", {1.0, 0.0}},
                                            {"north", {0.0, 1.0}},
                                            {"west", {-1.0, 0.0}}});

    SUBCASE("single word category") {
        const Centroids c = build_centroids({{{"one", {"solo"}}}}, emb);
        CHECK(c.vectors[0] == std::vector<double>{0.25, -0.5});
    }
    SUBCASE("antipodal words cancel") {
        const Centroids c = build_centroids({{{"pair", {"up", "down"}}}}, emb);
        CHECK(c.vectors[0][0] == 0.0);
        CHECK(c.vectors[0][1] == 0.0);
    }
    SUBCASE("three-way mean") {
        const Centroids c = build_centroids({{{"trio", {"east", "north", "west"}}}}, emb);
        CHECK(c.vectors[0][0] == doctest::Approx(0.0));
        CHECK(c.vectors[0][1] == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    }
    SUBCASE("missing embedding names the word") {
        CHECK_THROWS_WITH_AS(build_centroids({{{"bad", {"ghost"}}}}, emb),
                             doctest::Contains("ghost"), ParseError);
    }
}

TEST_CASE("politeness alignment") {
    // Category centroids: c1=(1,0), c2=(0,-1).
    const EmbeddingTable emb = plane_table({{"right", {1.0, 0.0}},
                                            {"tilted", {0.6, 0.8}},
                                            {"up", {0.0, 1.0}},
                                            {"zero", {0.0, 0.0}},
                                            {"anti", {-1.0, 0.0}},
                                            {"d", {0.0, -1.0}}});
    Centroids centroids;
    centroids.names = {"c1", "c2"};
    centroids.vectors = {{1.0, 0.0}, {0.0, -1.0}};

    SUBCASE("words sitting on a centroid score 1") {
        const TokenizedText x = text_of({"right", "right"});
        CHECK(politeness_expert_align(FeatureMask::ones(2), x, centroids, emb).value ==
              doctest::Approx(1.0).epsilon(1e-9));
    }
    SUBCASE("orthogonal words score 0") {
        const TokenizedText x = text_of({"up", "up"});
        CHECK(politeness_expert_align(FeatureMask::ones(2), x, centroids, emb).value == 0.0);
    }
    SUBCASE("mean then max: cosines 0.6 and 1.0 give 0.8") {
        const TokenizedText x = text_of({"tilted", "right"});
        CHECK(politeness_expert_align(FeatureMask::ones(2), x, centroids, emb).value ==
              doctest::Approx(0.8).epsilon(1e-12));
    }
    SUBCASE("the max over centroids can rescue a negative mean") {
        // cos to c1 is -1 but cos to c2 is 0; the max lands in range.
        const TokenizedText x = text_of({"anti"});
        CHECK(politeness_expert_align(FeatureMask::ones(1), x, centroids, emb).value == 0.0);
    }
    SUBCASE("zero-norm embeddings contribute zero cosine") {
        const TokenizedText x = text_of({"zero", "right"});
        CHECK(politeness_expert_align(FeatureMask::ones(2), x, centroids, emb).value ==
              doctest::Approx(0.5));
    }
    SUBCASE("empty group scores 0") {
        const TokenizedText x = text_of({"right"});
        CHECK(politeness_expert_align(FeatureMask(1), x, centroids, emb).value == 0.0);
    }
}

TEST_CASE("politeness means below zero clamp with a warning") {
    const EmbeddingTable emb = plane_table({{"anti", {-1.0, 0.0}}});
    Centroids centroids;
    centroids.names = {"only"};
    centroids.vectors = {{1.0, 0.0}};

    g_warnings = 0;
    const WarnHandler previous = set_warn_handler(&count_warning);
    const TokenizedText x = text_of({"anti"});
    CHECK(politeness_expert_align(FeatureMask::ones(1), x, centroids, emb).value == 0.0);
    CHECK(g_warnings == 1);
    set_warn_handler(previous);
}

TEST_CASE("axis construction") {
    SUBCASE("unit-square anchors give orthogonal axes and identity projection") {
        const EmbeddingTable emb = with_plane_anchors(EmbeddingTable{});
        const CircumplexAxes axes = build_axes(emb, plane_anchors());
        CHECK(axes.cos_theta == 0.0);
        CHECK(axes.valence_axis == std::vector<double>{1.0, 0.0});
        CHECK(axes.v_middle == std::vector<double>{0.0, 0.0});
        CHECK(axes.valence_scale == 1.0);
    }
    SUBCASE("anchors at (2,0) and (-2,0) still map to +/-1") {
        EmbeddingTable emb;
        emb.insert("pv", {2.0, 0.0});
        emb.insert("nv", {-2.0, 0.0});
        emb.insert("ha", {0.0, 1.0});
        emb.insert("la", {0.0, -1.0});
        const CircumplexAxes axes = build_axes(emb, plane_anchors());
        CHECK(axes.valence_axis == std::vector<double>{1.0, 0.0});
        CHECK(axes.v_middle == std::vector<double>{0.0, 0.0});
        const PlanePoint p = project({2.0, 0.0}, axes);
        CHECK(p.valence == doctest::Approx(1.0));
        CHECK(p.arousal == doctest::Approx(0.0));
    }
    SUBCASE("parallel axes are rejected") {
        EmbeddingTable emb;
        emb.insert("pv", {1.0, 0.0});
        emb.insert("nv", {-1.0, 0.0});
        emb.insert("ha", {2.0, 0.0});
        emb.insert("la", {-2.0, 0.0});
        CHECK_THROWS_AS(build_axes(emb, plane_anchors()), ConfigError);
    }
    SUBCASE("coincident anchor means are rejected") {
        EmbeddingTable emb;
        emb.insert("pv", {1.0, 1.0});
        emb.insert("nv", {1.0, 1.0});
        emb.insert("ha", {0.0, 1.0});
        emb.insert("la", {0.0, -1.0});
        CHECK_THROWS_AS(build_axes(emb, plane_anchors()), ConfigError);
    }
}

TEST_CASE("projection") {
    const EmbeddingTable emb = with_plane_anchors(EmbeddingTable{});
    const CircumplexAxes axes = build_axes(emb, plane_anchors());

    SUBCASE("anchor lands on (1,0)") {
        const PlanePoint p = project({1.0, 0.0}, axes);
        CHECK(p.valence == 1.0);
        CHECK(p.arousal == 0.0);
    }
    SUBCASE("midpoint lands on the origin") {
        const PlanePoint p = project({0.0, 0.0}, axes);
        CHECK(p.valence == 0.0);
        CHECK(p.arousal == 0.0);
    }
    SUBCASE("orthogonal axes leave components uncorrected") {
        const PlanePoint p = project({0.3, -0.4}, axes);
        CHECK(p.valence == doctest::Approx(0.3));
        CHECK(p.arousal == doctest::Approx(-0.4));
        CHECK(p.radius() == doctest::Approx(0.5));
    }
    SUBCASE("projection is affine") {
        std::mt19937_64 rng(53);
        for (int t = 0; t < 50; ++t) {
            const std::vector<double> u{fix::detail::unit_real(rng) * 4 - 2,
                                        fix::detail::unit_real(rng) * 4 - 2};
            const std::vector<double> v{fix::detail::unit_real(rng) * 4 - 2,
                                        fix::detail::unit_real(rng) * 4 - 2};
            const double alpha = fix::detail::unit_real(rng);
            const std::vector<double> mix{alpha * u[0] + (1 - alpha) * v[0],
                                          alpha * u[1] + (1 - alpha) * v[1]};
            const PlanePoint pu = project(u, axes), pv = project(v, axes),
                             pm = project(mix, axes);
            CHECK(pm.valence ==
                  doctest::Approx(alpha * pu.valence + (1 - alpha) * pv.valence).epsilon(1e-12));
            CHECK(pm.arousal ==
                  doctest::Approx(alpha * pu.arousal + (1 - alpha) * pv.arousal).epsilon(1e-12));
        }
    }
}

TEST_CASE("signal and relatedness") {
    const EmbeddingTable emb = with_plane_anchors(plane_table({{"on", {1.0, 0.0}},
                                                               {"origin", {0.0, 0.0}},
                                                               {"near", {0.5, 0.0}},
                                                               {"far", {1.5, 0.0}},
                                                               {"high", {0.0, 2.0}}}));
    const CircumplexAxes axes = build_axes(emb, plane_anchors());

    SUBCASE("on-circle projections have zero signal") {
        const TokenizedText x = text_of({"on", "on"});
        CHECK(emotion_signal(FeatureMask::ones(2), x, axes, emb) == 0.0);
    }
    SUBCASE("origin projection has signal 1") {
        const TokenizedText x = text_of({"origin"});
        CHECK(emotion_signal(FeatureMask::ones(1), x, axes, emb) == 1.0);
    }
    SUBCASE("radii 0.5 and 1.5 average to signal 0.5") {
        const TokenizedText x = text_of({"near", "far"});
        CHECK(emotion_signal(FeatureMask::ones(2), x, axes, emb) == doctest::Approx(0.5));
    }
    SUBCASE("relatedness of a single word is 0") {
        const TokenizedText x = text_of({"on"});
        CHECK(emotion_relatedness(FeatureMask::ones(1), x, axes, emb) == 0.0);
    }
    SUBCASE("two points one apart give 0.5 over ordered pairs") {
        const TokenizedText x = text_of({"near", "far"});
        CHECK(emotion_relatedness(FeatureMask::ones(2), x, axes, emb) == doctest::Approx(0.5));
    }
    SUBCASE("identical projections have zero relatedness") {
        const TokenizedText x = text_of({"on", "on", "on"});
        CHECK(emotion_relatedness(FeatureMask::ones(3), x, axes, emb) == 0.0);
    }
    SUBCASE("words outside the group are invisible") {
        const TokenizedText small = text_of({"near", "far"});
        const TokenizedText big = text_of({"near", "far", "high", "origin"});
        const FeatureMask g_small = FeatureMask::ones(2);
        const FeatureMask g_big = FeatureMask::from_indices(4, {0, 1});
        CHECK(emotion_signal(g_small, small, axes, emb) ==
              emotion_signal(g_big, big, axes, emb));
        CHECK(emotion_relatedness(g_small, small, axes, emb) ==
              emotion_relatedness(g_big, big, axes, emb));
    }
    SUBCASE("relatedness is permutation symmetric") {
        const TokenizedText a = text_of({"near", "far", "high"});
        const TokenizedText b = text_of({"high", "near", "far"});
        CHECK(emotion_relatedness(FeatureMask::ones(3), a, axes, emb) ==
              doctest::Approx(emotion_relatedness(FeatureMask::ones(3), b, axes, emb))
                  .epsilon(1e-12));
    }
    SUBCASE("empty group is an argument error") {
        const TokenizedText x = text_of({"on"});
        CHECK_THROWS_AS(emotion_signal(FeatureMask(1), x, axes, emb), ArgumentError);
        CHECK_THROWS_AS(emotion_relatedness(FeatureMask(1), x, axes, emb), ArgumentError);
    }
}

TEST_CASE("emotion alignment") {
    const EmbeddingTable emb = with_plane_anchors(plane_table({{"on", {1.0, 0.0}},
                                                               {"origin", {0.0, 0.0}},
                                                               {"twoup", {0.0, 2.0}},
                                                               {"east", {10000.0, 0.0}},
                                                               {"west", {-10000.0, 0.0}}}));
    const CircumplexAxes axes = build_axes(emb, plane_anchors());

    SUBCASE("single on-circle word scores tanh(1)") {
        const TokenizedText x = text_of({"on"});
        CHECK(emotion_expert_align(FeatureMask::ones(1), x, axes, emb).value ==
              doctest::Approx(0.7615941559557649).epsilon(1e-12));
    }
    SUBCASE("signal 1 with relatedness 1 gives tanh(1/e)") {
        // Projections (0,0) and (0,2): S = (1+1)/2 = 1, R = (0+2+2+0)/4 = 1.
        const TokenizedText x = text_of({"origin", "twoup"});
        CHECK(emotion_signal(FeatureMask::ones(2), x, axes, emb) == 1.0);
        CHECK(emotion_relatedness(FeatureMask::ones(2), x, axes, emb) == 1.0);
        CHECK(emotion_expert_align(FeatureMask::ones(2), x, axes, emb).value ==
              doctest::Approx(0.352135490546587).epsilon(1e-12));
    }
    SUBCASE("huge signal times relatedness drives the score to 0") {
        const TokenizedText x = text_of({"east", "west"});
        CHECK(emotion_expert_align(FeatureMask::ones(2), x, axes, emb).value == 0.0);
    }
    SUBCASE("empty group scores 0") {
        const TokenizedText x = text_of({"on"});
        CHECK(emotion_expert_align(FeatureMask(1), x, axes, emb).value == 0.0);
    }
    SUBCASE("the score never exceeds tanh(1)") {
        std::mt19937_64 rng(59);
        EmbeddingTable table;
        std::vector<std::string> vocab;
        for (int i = 0; i < 40; ++i) {
            vocab.push_back("v" + std::to_string(i));
            table.insert(vocab.back(), {fix::detail::unit_real(rng) * 6 - 3,
                                        fix::detail::unit_real(rng) * 6 - 3,
                                        fix::detail::unit_real(rng) * 6 - 3});
        }
        table.insert("pv", {1.0, 0.2, 0.0});
        table.insert("nv", {-1.0, 0.0, 0.1});
        table.insert("ha", {0.1, 1.0, 0.3});
        table.insert("la", {0.0, -1.0, -0.2});
        const CircumplexAxes random_axes = build_axes(table, plane_anchors());

        const double ceiling = std::tanh(1.0);
        for (int trial = 0; trial < 1000; ++trial) {
            TokenizedText x{{}, "en"};
            const std::size_t n = 1 + fix::detail::bounded_rand(rng, 6);
            for (std::size_t i = 0; i < n; ++i)
                x.words.push_back(vocab[fix::detail::bounded_rand(rng, vocab.size())]);
            const double s =
                emotion_expert_align(FeatureMask::ones(n), x, random_axes, table).value;
            CHECK(s > 0.0);
            CHECK(s <= ceiling);
        }
    }
}

TEST_CASE("embedding table lookups") {
    EmbeddingTable t;
    t.insert("hello", {1.0, 0.0});
    CHECK_THROWS_AS(t.insert("hello", {0.0, 1.0}), ArgumentError);
    CHECK_THROWS_AS(t.insert("odd", {1.0}), ArgumentError);

    CHECK(t.lookup("hello")[0] == 1.0);
    CHECK(t.lookup("hello,")[0] == 1.0);   // punctuation stripped on retry
    CHECK(t.lookup("\"hello.\"")[0] == 1.0);
    CHECK(t.contains("hello!"));
    CHECK_THROWS_WITH_AS(t.lookup("absent"), doctest::Contains("absent"), ParseError);
}

TEST_CASE("scorer bindings agree with the free functions") {
    auto emb = std::make_shared<EmbeddingTable>(with_plane_anchors(
        plane_table({{"near", {0.5, 0.0}}, {"far", {1.5, 0.0}}})));
    const CircumplexAxes axes = build_axes(*emb, plane_anchors());
    const EmotionScorer scorer(axes, emb);

    const TokenizedText text = text_of({"near", "far"});
    const Sample x = text;
    const FeatureMask g = FeatureMask::ones(2);
    CHECK(scorer.score(g, x).value == emotion_expert_align(g, text, axes, *emb).value);
    CHECK(scorer.accepts(Modality::text));
    CHECK_FALSE(scorer.accepts(Modality::image));

    const Sample wrong = MassMap{1, 2, {0.0, 0.0}};
    CHECK_THROWS_AS(scorer.score(g, wrong), ConfigError);

    const MassMapScorer mm;
    const MassMap map{1, 2, {-1.0, 0.5}};
    const Sample image = map;
    CHECK(mm.score(FeatureMask::ones(2), image).value ==
          massmap_expert_align(FeatureMask::ones(2), map).value);

    const SupernovaScorer sn;
    const LightCurve curve({{0, 1, 0, 1, 0}, {5, 1, 1, 1, 0}});
    const Sample series = curve;
    CHECK(sn.score(FeatureMask::ones(2), series).value ==
          supernova_expert_align(FeatureMask::ones(2), curve, sn.params()).value);
}

TEST_CASE("politeness scorer picks the lexicon by language tag") {
    auto emb = std::make_shared<EmbeddingTable>();
    emb->insert("merci", {1.0, 0.0});
    emb->insert("thanks", {0.0, 1.0});

    std::map<std::string, Centroids> per_language;
    per_language["fr"] = Centroids{{"grat"}, {{1.0, 0.0}}};
    per_language["en"] = Centroids{{"grat"}, {{0.0, 1.0}}};
    const PolitenessScorer scorer(per_language, emb);

    const Sample fr = TokenizedText{{"merci"}, "fr"};
    const Sample en = TokenizedText{{"merci"}, "en"};
    const FeatureMask one = FeatureMask::ones(1);
    CHECK(scorer.score(one, fr).value == doctest::Approx(1.0));
    CHECK(scorer.score(one, en).value == doctest::Approx(0.0));

    const Sample de = TokenizedText{{"merci"}, "de"};
    CHECK_THROWS_AS(scorer.score(one, de), ConfigError); // no fallback registered

    const Sample image_sample = MassMap{1, 1, {0.0}};
    CHECK_THROWS_AS(scorer.score(one, image_sample), ConfigError);
}

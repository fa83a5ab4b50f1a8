#pragma once
// Text alignment over precomputed word embeddings.
//
// Politeness: mean cosine of the group's words to the nearest lexicon
// category centroid. Emotion: words are projected onto a valence-arousal
// plane anchored by four word lists; a group scores high when its
// projections sit on the unit circle (signal) and close together
// (relatedness).

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "fix/alignment.hpp"
#include "fix/mask.hpp"

namespace fix {

struct TokenizedText {
    std::vector<std::string> words; // masks index these, never sub-word tokens
    std::string language;

    std::size_t feature_count() const { return words.size(); }
};

class EmbeddingTable {
public:
    EmbeddingTable() = default;
    explicit EmbeddingTable(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t size() const { return table_.size(); }

    void insert(const std::string& word, std::vector<double> vec);
    bool contains(const std::string& word) const;

    // Exact match first, then the word with surrounding punctuation stripped.
    // Missing words raise a ParseError naming the word.
    const std::vector<double>& lookup(const std::string& word) const;

private:
    std::size_t dim_ = 0;
    std::map<std::string, std::vector<double>> table_;
};

struct LexiconCategory {
    std::string name;
    std::vector<std::string> words;
};

struct Lexicon {
    std::vector<LexiconCategory> categories; // k >= 1, every category nonempty
};

struct Centroids {
    std::vector<std::string> names;
    std::vector<std::vector<double>> vectors; // one mean embedding per category
};

// Mean embedding per lexicon category, category order preserved.
Centroids build_centroids(const Lexicon& lexicon, const EmbeddingTable& emb);

double cosine(const std::vector<double>& a, const std::vector<double>& b);

// max over centroids of the mean cosine between the group's words and the
// centroid, clamped into [0,1] (the raw mean can be negative).
AlignmentScore politeness_expert_align(const FeatureMask& g, const TokenizedText& x,
                                       const Centroids& centroids, const EmbeddingTable& emb);

// Four anchor word lists defining the valence/arousal axes.
struct AnchorWords {
    std::vector<std::string> positive_valence;
    std::vector<std::string> negative_valence;
    std::vector<std::string> high_arousal;
    std::vector<std::string> low_arousal;

    static AnchorWords defaults(); // circumplex emotions closest to each axis point
};

struct CircumplexAxes {
    std::vector<double> v_pos, v_neg, a_high, a_low; // anchor means
    std::vector<double> valence_axis, arousal_axis;  // unit vectors
    std::vector<double> v_middle, a_middle;          // axis midpoints
    double valence_scale = 1.0;                      // maps anchors to +/-1
    double arousal_scale = 1.0;
    double cos_theta = 0.0;                          // inter-axis cosine, |.| < 1
};

CircumplexAxes build_axes(const EmbeddingTable& emb, const AnchorWords& anchors);

struct PlanePoint {
    double valence = 0.0;
    double arousal = 0.0;
    double radius() const;
};

// Valence/arousal components of a vector, with the cos-theta orthogonality
// correction applied.
PlanePoint project(const std::vector<double>& vec, const CircumplexAxes& axes);

// Mean absolute distance of the group's projections to the unit circle.
double emotion_signal(const FeatureMask& g, const TokenizedText& x,
                      const CircumplexAxes& axes, const EmbeddingTable& emb);

// Mean pairwise Euclidean distance over all ordered projection pairs
// (self-pairs included, contributing 0).
double emotion_relatedness(const FeatureMask& g, const TokenizedText& x,
                           const CircumplexAxes& axes, const EmbeddingTable& emb);

// tanh(exp(-signal * relatedness)); never exceeds tanh(1). Empty group -> 0.
AlignmentScore emotion_expert_align(const FeatureMask& g, const TokenizedText& x,
                                    const CircumplexAxes& axes, const EmbeddingTable& emb);

} // namespace fix

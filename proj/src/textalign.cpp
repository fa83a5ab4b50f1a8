#include "fix/textalign.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

namespace fix {

namespace {

bool is_strippable(char c) {
    static const char* punct = ".,;:!?\"'()[]{}";
    return std::strchr(punct, c) != nullptr;
}

std::string strip_punctuation(const std::string& word) {
    std::size_t begin = 0, end = word.size();
    while (begin < end && is_strippable(word[begin])) ++begin;
    while (end > begin && is_strippable(word[end - 1])) --end;
    return word.substr(begin, end - begin);
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

std::vector<double> subtract(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
    return out;
}

std::vector<double> midpoint(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = 0.5 * (a[i] + b[i]);
    return out;
}

std::vector<double> mean_embedding(const std::vector<std::string>& words,
                                   const EmbeddingTable& emb) {
    if (words.empty()) throw ConfigError("cannot average an empty word list");
    std::vector<double> mean(emb.dim(), 0.0);
    for (const std::string& w : words) {
        const std::vector<double>& v = emb.lookup(w);
        for (std::size_t i = 0; i < mean.size(); ++i) mean[i] += v[i];
    }
    for (double& m : mean) m /= static_cast<double>(words.size());
    return mean;
}

} // namespace

void EmbeddingTable::insert(const std::string& word, std::vector<double> vec) {
    if (dim_ == 0) dim_ = vec.size();
    if (vec.size() != dim_)
        throw ArgumentError("embedding for '" + word + "' has dimension " +
                            std::to_string(vec.size()) + ", expected " + std::to_string(dim_));
    for (double v : vec)
        if (!std::isfinite(v)) throw ArgumentError("embedding for '" + word + "' is not finite");
    if (!table_.emplace(word, std::move(vec)).second)
        throw ArgumentError("duplicate embedding entry for '" + word + "'");
}

bool EmbeddingTable::contains(const std::string& word) const {
    if (table_.count(word)) return true;
    return table_.count(strip_punctuation(word)) != 0;
}

const std::vector<double>& EmbeddingTable::lookup(const std::string& word) const {
    auto it = table_.find(word);
    if (it != table_.end()) return it->second;
    const std::string stripped = strip_punctuation(word);
    if (stripped != word) {
        it = table_.find(stripped);
        if (it != table_.end()) return it->second;
    }
    throw ParseError("embedding table has no entry for word '" + word + "'");
}

double cosine(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) throw ArgumentError("cosine of vectors with different dimensions");
    const double na = norm(a), nb = norm(b);
    if (na == 0.0 || nb == 0.0) return 0.0;
    return dot(a, b) / (na * nb);
}

Centroids build_centroids(const Lexicon& lexicon, const EmbeddingTable& emb) {
    if (lexicon.categories.empty()) throw ConfigError("lexicon has no categories");
    Centroids out;
    for (const LexiconCategory& cat : lexicon.categories) {
        if (cat.words.empty())
            throw ConfigError("lexicon category '" + cat.name + "' is empty");
        out.names.push_back(cat.name);
        out.vectors.push_back(mean_embedding(cat.words, emb));
    }
    return out;
}

AlignmentScore politeness_expert_align(const FeatureMask& g, const TokenizedText& x,
                                       const Centroids& centroids, const EmbeddingTable& emb) {
    if (g.none()) return {0.0};
    if (g.size() != x.words.size())
        throw ArgumentError("mask length does not match the text's word count");
    if (centroids.vectors.empty()) throw ConfigError("no centroids available");

    std::vector<const std::vector<double>*> group_vecs;
    g.for_each_set([&](std::size_t i) { group_vecs.push_back(&emb.lookup(x.words[i])); });

    double best = -1.0;
    for (const std::vector<double>& c : centroids.vectors) {
        double sum = 0.0;
        for (const auto* v : group_vecs) sum += cosine(*v, c);
        best = std::max(best, sum / static_cast<double>(group_vecs.size()));
    }
    return AlignmentScore::clamped(best);
}

AnchorWords AnchorWords::defaults() {
    return {{"happy", "pleased", "delighted", "excited", "satisfied"},
            {"miserable", "frustrated", "sad", "depressed", "afraid"},
            {"astonished", "alarmed", "angry", "afraid", "excited"},
            {"tired", "sleepy", "calm", "satisfied", "depressed"}};
}

CircumplexAxes build_axes(const EmbeddingTable& emb, const AnchorWords& anchors) {
    CircumplexAxes axes;
    axes.v_pos = mean_embedding(anchors.positive_valence, emb);
    axes.v_neg = mean_embedding(anchors.negative_valence, emb);
    axes.a_high = mean_embedding(anchors.high_arousal, emb);
    axes.a_low = mean_embedding(anchors.low_arousal, emb);

    std::vector<double> v_raw = subtract(axes.v_pos, axes.v_neg);
    std::vector<double> a_raw = subtract(axes.a_high, axes.a_low);
    const double v_len = norm(v_raw), a_len = norm(a_raw);
    if (v_len == 0.0 || a_len == 0.0)
        throw ConfigError("degenerate circumplex axes: coincident anchor means");

    axes.valence_axis = v_raw;
    axes.arousal_axis = a_raw;
    for (double& v : axes.valence_axis) v /= v_len;
    for (double& a : axes.arousal_axis) a /= a_len;
    // Anchors sit half an axis length from the midpoint; this maps them to +/-1.
    axes.valence_scale = 2.0 / v_len;
    axes.arousal_scale = 2.0 / a_len;
    axes.v_middle = midpoint(axes.v_pos, axes.v_neg);
    axes.a_middle = midpoint(axes.a_high, axes.a_low);
    axes.cos_theta = dot(axes.valence_axis, axes.arousal_axis);
    if (std::abs(axes.cos_theta) >= 1.0 - 1e-12)
        throw ConfigError("degenerate circumplex axes: valence and arousal are parallel");
    return axes;
}

double PlanePoint::radius() const { return std::sqrt(valence * valence + arousal * arousal); }

PlanePoint project(const std::vector<double>& vec, const CircumplexAxes& axes) {
    if (vec.size() != axes.valence_axis.size())
        throw ArgumentError("vector dimension does not match the axes");
    const double v = dot(subtract(vec, axes.v_middle), axes.valence_axis) * axes.valence_scale;
    const double a = dot(subtract(vec, axes.a_middle), axes.arousal_axis) * axes.arousal_scale;
    return {v - a * axes.cos_theta, a - v * axes.cos_theta};
}

namespace {

std::vector<PlanePoint> project_group(const FeatureMask& g, const TokenizedText& x,
                                      const CircumplexAxes& axes, const EmbeddingTable& emb) {
    if (g.none()) throw ArgumentError("emotion metrics need a nonempty group");
    if (g.size() != x.words.size())
        throw ArgumentError("mask length does not match the text's word count");
    std::vector<PlanePoint> out;
    g.for_each_set([&](std::size_t i) { out.push_back(project(emb.lookup(x.words[i]), axes)); });
    return out;
}

} // namespace

double emotion_signal(const FeatureMask& g, const TokenizedText& x, const CircumplexAxes& axes,
                      const EmbeddingTable& emb) {
    const std::vector<PlanePoint> pts = project_group(g, x, axes, emb);
    double sum = 0.0;
    for (const PlanePoint& p : pts) sum += std::abs(p.radius() - 1.0);
    return sum / static_cast<double>(pts.size());
}

double emotion_relatedness(const FeatureMask& g, const TokenizedText& x,
                           const CircumplexAxes& axes, const EmbeddingTable& emb) {
    const std::vector<PlanePoint> pts = project_group(g, x, axes, emb);
    const std::size_t n = pts.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double dv = pts[i].valence - pts[j].valence;
            const double da = pts[i].arousal - pts[j].arousal;
            sum += std::sqrt(dv * dv + da * da);
        }
    }
    return sum / static_cast<double>(n * n);
}

AlignmentScore emotion_expert_align(const FeatureMask& g, const TokenizedText& x,
                                    const CircumplexAxes& axes, const EmbeddingTable& emb) {
    if (g.none()) return {0.0};
    const double s = emotion_signal(g, x, axes, emb);
    const double r = emotion_relatedness(g, x, axes, emb);
    return AlignmentScore::clamped(std::tanh(std::exp(-s * r)));
}

} // namespace fix

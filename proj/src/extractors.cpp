#include "fix/extractors.hpp"

#include <algorithm>
#include <cstdio>
#include <random>

#include "fix/rand.hpp"

namespace fix {

GroupSet identity_extract(std::size_t d) {
    if (d == 0) throw ArgumentError("identity extractor needs at least one feature");
    GroupSet out(d, "identity");
    out.add(FeatureMask::ones(d));
    return out;
}

GroupSet random_extract(std::size_t d, const GroupMaximum& gm, std::uint64_t seed) {
    if (d == 0) throw ArgumentError("random extractor needs at least one feature");
    const int requested = gm.max_groups();
    if (requested < 1) throw ArgumentError("group maximum must be at least 1");
    const std::size_t n_groups = std::min<std::size_t>(static_cast<std::size_t>(requested), d);

    std::vector<FeatureMask> masks(n_groups, FeatureMask(d));
    std::mt19937_64 rng(seed);
    for (std::size_t i = 0; i < d; ++i)
        masks[detail::bounded_rand(rng, n_groups)].set(i);

    GroupSet out(d, "random");
    for (FeatureMask& m : masks) out.add(std::move(m));
    return out;
}

GroupSet patch_extract(std::size_t height, std::size_t width, int rows, int cols) {
    if (rows < 1 || cols < 1) throw ArgumentError("patch grid must be positive");
    if (static_cast<std::size_t>(rows) > height || static_cast<std::size_t>(cols) > width)
        throw ArgumentError("patch grid exceeds the raster size");

    const std::size_t d = height * width;
    const std::size_t base_h = height / static_cast<std::size_t>(rows);
    const std::size_t base_w = width / static_cast<std::size_t>(cols);
    GroupSet out(d, "patch");
    for (int pr = 0; pr < rows; ++pr) {
        const std::size_t r0 = static_cast<std::size_t>(pr) * base_h;
        const std::size_t r1 = (pr == rows - 1) ? height : r0 + base_h;
        for (int pc = 0; pc < cols; ++pc) {
            const std::size_t c0 = static_cast<std::size_t>(pc) * base_w;
            const std::size_t c1 = (pc == cols - 1) ? width : c0 + base_w;
            FeatureMask m(d);
            for (std::size_t r = r0; r < r1; ++r)
                for (std::size_t c = c0; c < c1; ++c) m.set(r * width + c);
            out.add(std::move(m));
        }
    }
    return out;
}

GroupSet slice_extract(std::size_t d, int width) {
    if (width < 1) throw ArgumentError("slice width must be positive");
    if (d == 0) throw ArgumentError("slice extractor needs at least one feature");
    const std::size_t w = static_cast<std::size_t>(width);
    GroupSet out(d, "slice");
    for (std::size_t start = 0; start < d; start += w) {
        FeatureMask m(d);
        for (std::size_t i = start; i < std::min(start + w, d); ++i) m.set(i);
        out.add(std::move(m));
    }
    return out;
}

namespace {

// A word closes a phrase/sentence when its trailing characters (after any
// closing quotes or brackets) carry one of the boundary marks.
bool ends_with_boundary(const std::string& word, bool sentence_only) {
    std::size_t end = word.size();
    auto is_closer = [](char c) { return c == '"' || c == '\'' || c == ')' || c == ']' || c == '}'; };
    while (end > 0 && is_closer(word[end - 1])) --end;
    if (end == 0) return false;
    const char c = word[end - 1];
    if (c == '.' || c == '!' || c == '?') return true;
    if (sentence_only) return false;
    if (c == ',' || c == ';' || c == ':') return true;
    // em/en dash (UTF-8 E2 80 94 / E2 80 93)
    if (end >= 3 && static_cast<unsigned char>(word[end - 3]) == 0xE2 &&
        static_cast<unsigned char>(word[end - 2]) == 0x80 &&
        (static_cast<unsigned char>(word[end - 1]) == 0x94 ||
         static_cast<unsigned char>(word[end - 1]) == 0x93))
        return true;
    return false;
}

} // namespace

GroupSet text_extract(const TokenizedText& x, TextGranularity granularity) {
    const std::size_t d = x.words.size();
    if (d == 0) throw ArgumentError("text extractor needs at least one word");

    if (granularity == TextGranularity::words) {
        GroupSet out(d, "words");
        for (std::size_t i = 0; i < d; ++i) out.add(FeatureMask::from_indices(d, {i}));
        return out;
    }

    const bool sentence_only = granularity == TextGranularity::sentences;
    GroupSet out(d, sentence_only ? "sentences" : "phrases");
    std::size_t start = 0;
    for (std::size_t i = 0; i < d; ++i) {
        if (i + 1 < d && !ends_with_boundary(x.words[i], sentence_only)) continue;
        FeatureMask m(d);
        for (std::size_t j = start; j <= i; ++j) m.set(j);
        out.add(std::move(m));
        start = i + 1;
    }
    return out;
}

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

} // namespace

std::string ExtractorConfig::id() const {
    switch (kind) {
        case ExtractorKind::identity: return "identity";
        case ExtractorKind::random: return "random:" + std::to_string(group_maximum.max_groups());
        case ExtractorKind::patch:
            return "patch:" + std::to_string(patch_rows) + "x" + std::to_string(patch_cols);
        case ExtractorKind::slice: return "slice:" + std::to_string(slice_width);
        case ExtractorKind::words: return "words";
        case ExtractorKind::phrases: return "phrases";
        case ExtractorKind::sentences: return "sentences";
        case ExtractorKind::quickshift:
            return "quickshift:" + format_double(quickshift.kernel_size) + "," +
                   format_double(quickshift.max_dist) + "," + format_double(quickshift.sigma);
        case ExtractorKind::clustering: {
            std::string s = "cluster:" + std::to_string(cluster_k);
            if (cluster_base) s += ",base=" + cluster_base->id();
            return s;
        }
    }
    return "unknown";
}

bool ExtractorConfig::compatible_with(Modality m) const {
    switch (kind) {
        case ExtractorKind::identity:
        case ExtractorKind::random: return true;
        case ExtractorKind::patch:
        case ExtractorKind::quickshift: return m == Modality::image;
        case ExtractorKind::slice: return m == Modality::series;
        case ExtractorKind::words:
        case ExtractorKind::phrases:
        case ExtractorKind::sentences: return m == Modality::text;
        case ExtractorKind::clustering:
            return cluster_base ? cluster_base->compatible_with(m) : true;
    }
    return false;
}

namespace {

int parse_positive_int(const std::string& s, const std::string& param) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used != s.size() || v < 1) throw std::invalid_argument("range");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid " + param + " '" + s + "': expected a positive integer");
    }
}

double parse_positive_double(const std::string& s, const std::string& param) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size() || !(v > 0.0)) throw std::invalid_argument("range");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("invalid " + param + " '" + s + "': expected a positive number");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

} // namespace

ExtractorConfig parse_extractor(const std::string& spec) {
    const std::size_t colon = spec.find(':');
    const std::string head = spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);

    ExtractorConfig cfg;
    if (head == "identity" || head == "words" || head == "phrases" || head == "sentences") {
        if (!rest.empty())
            throw ConfigError("extractor '" + head + "' takes no parameters (got '" + rest + "')");
        cfg.kind = head == "identity"   ? ExtractorKind::identity
                   : head == "words"    ? ExtractorKind::words
                   : head == "phrases"  ? ExtractorKind::phrases
                                        : ExtractorKind::sentences;
        return cfg;
    }
    if (head == "random") {
        cfg.kind = ExtractorKind::random;
        if (rest.empty())
            throw ConfigError("extractor 'random' needs a group count, e.g. random:25 "
                              "or random:expert=14 for ceil(1.5 x expert count)");
        if (rest.rfind("expert=", 0) == 0) {
            cfg.group_maximum = {parse_positive_int(rest.substr(7), "expert count"), 1.5, {}};
        } else {
            cfg.group_maximum.override_max = parse_positive_int(rest, "group count");
        }
        return cfg;
    }
    if (head == "patch") {
        cfg.kind = ExtractorKind::patch;
        if (!rest.empty()) {
            const std::size_t x = rest.find('x');
            if (x == std::string::npos)
                throw ConfigError("invalid patch grid '" + rest + "': expected ROWSxCOLS");
            cfg.patch_rows = parse_positive_int(rest.substr(0, x), "patch rows");
            cfg.patch_cols = parse_positive_int(rest.substr(x + 1), "patch cols");
        }
        return cfg;
    }
    if (head == "slice") {
        cfg.kind = ExtractorKind::slice;
        if (!rest.empty()) cfg.slice_width = parse_positive_int(rest, "slice width");
        return cfg;
    }
    if (head == "quickshift") {
        cfg.kind = ExtractorKind::quickshift;
        if (!rest.empty()) {
            const std::vector<std::string> parts = split(rest, ',');
            if (parts.size() != 3)
                throw ConfigError("invalid quickshift parameters '" + rest +
                                  "': expected KERNEL,MAXDIST,SIGMA");
            cfg.quickshift.kernel_size = parse_positive_double(parts[0], "quickshift kernel size");
            cfg.quickshift.max_dist = parse_positive_double(parts[1], "quickshift max dist");
            cfg.quickshift.sigma = parse_positive_double(parts[2], "quickshift sigma");
        }
        return cfg;
    }
    if (head == "cluster") {
        cfg.kind = ExtractorKind::clustering;
        if (rest.empty()) throw ConfigError("extractor 'cluster' needs a cluster count, e.g. cluster:4");
        const std::size_t comma = rest.find(',');
        cfg.cluster_k = parse_positive_int(rest.substr(0, comma), "cluster count");
        if (comma != std::string::npos) {
            const std::string tail = rest.substr(comma + 1);
            if (tail.rfind("base=", 0) != 0)
                throw ConfigError("invalid cluster parameter '" + tail + "': expected base=SPEC");
            cfg.cluster_base =
                std::make_shared<const ExtractorConfig>(parse_extractor(tail.substr(5)));
        }
        return cfg;
    }
    throw ConfigError("unknown extractor '" + head + "'");
}

namespace {

ExtractorConfig default_cluster_base(Modality m) {
    ExtractorConfig base;
    switch (m) {
        case Modality::image: base.kind = ExtractorKind::quickshift; break;
        case Modality::series: base.kind = ExtractorKind::slice; break;
        case Modality::text: base.kind = ExtractorKind::words; break;
    }
    return base;
}

} // namespace

GroupSet extract_groups(const Sample& x, const ExtractorConfig& cfg, std::uint64_t seed,
                        const EmbeddingTable* emb) {
    const Modality m = modality_of(x);
    if (!cfg.compatible_with(m))
        throw ConfigError("extractor '" + cfg.id() + "' does not accept " + to_string(m) +
                          " samples");
    const std::size_t d = feature_count(x);

    switch (cfg.kind) {
        case ExtractorKind::identity: return identity_extract(d);
        case ExtractorKind::random: return random_extract(d, cfg.group_maximum, seed);
        case ExtractorKind::patch: {
            const MassMap& raster = std::get<MassMap>(x);
            return patch_extract(raster.height, raster.width, cfg.patch_rows, cfg.patch_cols);
        }
        case ExtractorKind::slice: return slice_extract(d, cfg.slice_width);
        case ExtractorKind::words:
            return text_extract(std::get<TokenizedText>(x), TextGranularity::words);
        case ExtractorKind::phrases:
            return text_extract(std::get<TokenizedText>(x), TextGranularity::phrases);
        case ExtractorKind::sentences:
            return text_extract(std::get<TokenizedText>(x), TextGranularity::sentences);
        case ExtractorKind::quickshift:
            return quickshift_extract(std::get<MassMap>(x), cfg.quickshift);
        case ExtractorKind::clustering: {
            ExtractorConfig base_cfg =
                cfg.cluster_base ? *cfg.cluster_base : default_cluster_base(m);
            const std::uint64_t base_seed = detail::splitmix64(seed);
            const GroupSet base = extract_groups(x, base_cfg, base_seed, emb);
            const int k = std::min<int>(cfg.cluster_k, static_cast<int>(base.size()));
            if (m == Modality::image)
                return cluster_extract(std::get<MassMap>(x), base, k, seed);
            if (m == Modality::series)
                return cluster_extract(std::get<LightCurve>(x), base, k, seed);
            if (!emb)
                throw ConfigError("text clustering needs an embedding table");
            return cluster_extract(std::get<TokenizedText>(x), *emb, base, k, seed);
        }
    }
    throw ConfigError("unhandled extractor kind");
}

} // namespace fix

#include "fix/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fix {

namespace fs = std::filesystem;

namespace {

std::ifstream open_input(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path.string() + "' for reading");
    return in;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open '" + path.string() + "' for writing");
    return out;
}

double parse_finite(const std::string& token, const fs::path& file, std::size_t line) {
    double v = 0.0;
    try {
        std::size_t used = 0;
        v = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
        throw ParseError(file.string(), line, "expected a number, got '" + token + "'");
    }
    if (!std::isfinite(v))
        throw ParseError(file.string(), line, "non-finite value '" + token + "' rejected");
    return v;
}

long parse_long(const std::string& token, const fs::path& file, std::size_t line) {
    try {
        std::size_t used = 0;
        const long v = std::stol(token, &used);
        if (used != token.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ParseError(file.string(), line, "expected an integer, got '" + token + "'");
    }
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream iss(s);
    std::string token;
    while (iss >> token) out.push_back(token);
    return out;
}

std::vector<std::string> split_char(const std::string& s, char sep) {
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

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

// Windows line endings would otherwise leak a '\r' into the last field.
std::string chomp(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

} // namespace

MassMap load_massmap(const fs::path& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path.string(), 1, "missing 'H W' header");
    const std::vector<std::string> header = split_ws(chomp(line));
    if (header.size() != 2) throw ParseError(path.string(), 1, "header must be 'H W'");
    const long h = parse_long(header[0], path, 1);
    const long w = parse_long(header[1], path, 1);
    if (h < 1 || w < 1) throw ParseError(path.string(), 1, "raster dimensions must be positive");

    MassMap map;
    map.height = static_cast<std::size_t>(h);
    map.width = static_cast<std::size_t>(w);
    map.pixels.reserve(map.height * map.width);
    for (long r = 0; r < h; ++r) {
        if (!std::getline(in, line))
            throw ParseError(path.string(), static_cast<std::size_t>(r) + 2, "missing pixel row");
        const std::vector<std::string> tokens = split_ws(chomp(line));
        if (tokens.size() != static_cast<std::size_t>(w))
            throw ParseError(path.string(), static_cast<std::size_t>(r) + 2,
                             "expected " + std::to_string(w) + " values, got " +
                                 std::to_string(tokens.size()));
        for (const std::string& t : tokens)
            map.pixels.push_back(parse_finite(t, path, static_cast<std::size_t>(r) + 2));
    }
    return map;
}

void write_massmap(const MassMap& x, const fs::path& path) {
    std::ofstream out = open_output(path);
    out << x.height << " " << x.width << "\n";
    out.precision(17);
    for (std::size_t r = 0; r < x.height; ++r) {
        for (std::size_t c = 0; c < x.width; ++c) {
            if (c) out << " ";
            out << x.at(r, c);
        }
        out << "\n";
    }
}

LightCurve load_lightcurve(const fs::path& path) {
    std::ifstream in = open_input(path);
    std::string line;
    if (!std::getline(in, line) || chomp(line) != "time,band,flux,flux_err")
        throw ParseError(path.string(), 1, "expected header 'time,band,flux,flux_err'");

    std::vector<Observation> points;
    std::vector<double> empty_timestamps;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = chomp(line);
        if (line.empty()) continue;
        const std::vector<std::string> fields = split_char(line, ',');
        if (fields.size() != 4)
            throw ParseError(path.string(), line_no, "expected 4 comma-separated fields");
        const double t = parse_finite(fields[0], path, line_no);
        const std::string band = trim(fields[1]);
        if (band.empty() || band == "-") {
            // declared timestamp with no observation
            empty_timestamps.push_back(t);
            continue;
        }
        Observation obs;
        obs.time = t;
        obs.band = static_cast<int>(parse_long(band, path, line_no));
        obs.flux = parse_finite(fields[2], path, line_no);
        obs.flux_err = parse_finite(fields[3], path, line_no);
        if (obs.flux_err < 0.0)
            throw ParseError(path.string(), line_no, "flux_err must be non-negative");
        points.push_back(obs);
    }
    if (points.empty() && empty_timestamps.empty())
        throw ParseError(path.string(), line_no, "light curve has no rows");
    return LightCurve(std::move(points), std::move(empty_timestamps));
}

void write_lightcurve(const LightCurve& x, const fs::path& path) {
    std::ofstream out = open_output(path);
    out.precision(17);
    out << "time,band,flux,flux_err\n";
    std::vector<bool> observed(x.grid().size(), false);
    for (const Observation& p : x.points()) {
        observed[p.grid_index] = true;
        out << p.time << "," << p.band << "," << p.flux << "," << p.flux_err << "\n";
    }
    for (std::size_t i = 0; i < x.grid().size(); ++i)
        if (!observed[i]) out << x.grid()[i] << ",-,,\n";
}

TokenizedText tokenize(const std::string& language, const std::string& raw) {
    TokenizedText text;
    text.language = language;
    std::istringstream iss(raw);
    std::string word;
    while (iss >> word) text.words.push_back(word);
    if (text.words.empty()) throw ArgumentError("text record has no words");
    return text;
}

std::vector<TokenizedText> load_text_records(const fs::path& path) {
    std::ifstream in = open_input(path);
    std::vector<TokenizedText> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = chomp(line);
        if (line.empty()) continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw ParseError(path.string(), line_no, "expected 'language<TAB>text'");
        const std::string language = line.substr(0, tab);
        const std::string raw = line.substr(tab + 1);
        try {
            out.push_back(tokenize(language, raw));
        } catch (const ArgumentError& e) {
            throw ParseError(path.string(), line_no, e.what());
        }
    }
    if (out.empty()) throw ParseError(path.string(), line_no, "no text records found");
    return out;
}

EmbeddingTable load_embeddings(const fs::path& path) {
    std::ifstream in = open_input(path);
    EmbeddingTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = chomp(line);
        if (line.empty()) continue;
        const std::size_t tab = line.find('\t');
        if (tab == std::string::npos)
            throw ParseError(path.string(), line_no, "expected 'word<TAB>values'");
        const std::string word = line.substr(0, tab);
        const std::vector<std::string> tokens = split_ws(line.substr(tab + 1));
        if (tokens.empty()) throw ParseError(path.string(), line_no, "embedding has no values");
        std::vector<double> vec;
        vec.reserve(tokens.size());
        for (const std::string& t : tokens) vec.push_back(parse_finite(t, path, line_no));
        try {
            table.insert(word, std::move(vec));
        } catch (const ArgumentError& e) {
            throw ParseError(path.string(), line_no, e.what());
        }
    }
    if (table.size() == 0) throw ParseError(path.string(), line_no, "embedding table is empty");
    return table;
}

namespace {

std::vector<LexiconCategory> load_categories(const fs::path& path) {
    std::ifstream in = open_input(path);
    std::vector<LexiconCategory> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = chomp(line);
        if (line.empty() || line[0] == '#') continue;
        const std::size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError(path.string(), line_no, "expected 'category: w1, w2, ...'");
        LexiconCategory cat;
        cat.name = trim(line.substr(0, colon));
        if (cat.name.empty()) throw ParseError(path.string(), line_no, "category name is empty");
        for (const std::string& w : split_char(line.substr(colon + 1), ',')) {
            const std::string word = trim(w);
            if (!word.empty()) cat.words.push_back(word);
        }
        if (cat.words.empty())
            throw ParseError(path.string(), line_no, "category '" + cat.name + "' has no words");
        out.push_back(std::move(cat));
    }
    if (out.empty()) throw ParseError(path.string(), line_no, "no categories found");
    return out;
}

} // namespace

Lexicon load_lexicon(const fs::path& path) { return {load_categories(path)}; }

AnchorWords load_anchors(const fs::path& path) {
    AnchorWords anchors;
    bool pv = false, nv = false, ha = false, la = false;
    for (LexiconCategory& cat : load_categories(path)) {
        if (cat.name == "PV") {
            anchors.positive_valence = std::move(cat.words);
            pv = true;
        } else if (cat.name == "NV") {
            anchors.negative_valence = std::move(cat.words);
            nv = true;
        } else if (cat.name == "HA") {
            anchors.high_arousal = std::move(cat.words);
            ha = true;
        } else if (cat.name == "LA") {
            anchors.low_arousal = std::move(cat.words);
            la = true;
        } else {
            throw ParseError("anchor file '" + path.string() + "' has unknown category '" +
                             cat.name + "' (expected PV, NV, HA, LA)");
        }
    }
    if (!(pv && nv && ha && la))
        throw ParseError("anchor file '" + path.string() + "' must define PV, NV, HA and LA");
    return anchors;
}

std::vector<LabeledMask> load_masks_rle(const fs::path& path, std::size_t d) {
    std::ifstream in = open_input(path);
    std::vector<LabeledMask> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = chomp(line);
        if (line.empty() || line[0] == '#') continue;
        const std::size_t colon = line.find(':');
        if (colon == std::string::npos)
            throw ParseError(path.string(), line_no, "expected 'label: run lengths'");
        LabeledMask lm;
        lm.label = trim(line.substr(0, colon));
        lm.mask = FeatureMask(d);
        std::size_t pos = 0;
        bool bit = false; // runs alternate starting with zeros
        for (const std::string& t : split_ws(line.substr(colon + 1))) {
            const long run = parse_long(t, path, line_no);
            if (run < 0) throw ParseError(path.string(), line_no, "run lengths must be >= 0");
            if (pos + static_cast<std::size_t>(run) > d)
                throw ParseError(path.string(), line_no,
                                 "runs exceed mask length " + std::to_string(d));
            if (bit)
                for (long k = 0; k < run; ++k) lm.mask.set(pos + static_cast<std::size_t>(k));
            pos += static_cast<std::size_t>(run);
            bit = !bit;
        }
        if (pos != d)
            throw ParseError(path.string(), line_no,
                             "runs sum to " + std::to_string(pos) + ", expected " +
                                 std::to_string(d));
        out.push_back(std::move(lm));
    }
    return out;
}

void write_masks_rle(const std::vector<LabeledMask>& masks, const fs::path& path) {
    std::ofstream out = open_output(path);
    for (const LabeledMask& lm : masks) {
        out << lm.label << ":";
        const std::size_t d = lm.mask.size();
        std::size_t pos = 0;
        bool bit = false;
        while (pos < d) {
            std::size_t run = 0;
            while (pos + run < d && lm.mask.test(pos + run) == bit) ++run;
            out << " " << run;
            pos += run;
            bit = !bit;
        }
        if (d == 0) out << " 0";
        out << "\n";
    }
}

GroupSet masks_to_groups(const std::vector<LabeledMask>& masks, std::string provenance) {
    GroupSet out(masks.empty() ? 0 : masks.front().mask.size(), std::move(provenance));
    for (const LabeledMask& lm : masks) out.add(lm.mask);
    return out;
}

namespace {

std::vector<fs::path> list_sorted(const fs::path& dir, const std::string& extension) {
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == extension)
            out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

void attach_annotations(Dataset& ds, const std::vector<fs::path>& files) {
    std::size_t with = 0;
    for (const fs::path& f : files) {
        fs::path companion = f;
        companion += ".masks";
        if (fs::exists(companion)) ++with;
    }
    if (with == 0) return;
    if (with != files.size())
        throw ConfigError("annotation files must accompany every sample or none (" +
                          std::to_string(with) + " of " + std::to_string(files.size()) + ")");
    for (std::size_t i = 0; i < files.size(); ++i) {
        fs::path companion = files[i];
        companion += ".masks";
        const std::vector<LabeledMask> masks =
            load_masks_rle(companion, feature_count(ds.samples[i]));
        if (masks.empty())
            throw ParseError(companion.string() + ": annotation file has no masks");
        ds.annotations.push_back(masks_to_groups(masks, "annotation"));
    }
}

} // namespace

Dataset load_dataset(const fs::path& path, Modality modality) {
    if (!fs::exists(path)) throw ParseError("no such file or directory: '" + path.string() + "'");

    Dataset ds;
    ds.modality = modality;
    std::vector<fs::path> files;
    if (fs::is_directory(path)) {
        const std::string ext = modality == Modality::image    ? ".map"
                                : modality == Modality::series ? ".csv"
                                                               : ".txt";
        files = list_sorted(path, ext);
        if (files.empty())
            throw ParseError("directory '" + path.string() + "' has no " + ext + " samples");
    } else {
        files.push_back(path);
    }

    switch (modality) {
        case Modality::image:
            for (const fs::path& f : files) ds.samples.emplace_back(load_massmap(f));
            break;
        case Modality::series:
            for (const fs::path& f : files) ds.samples.emplace_back(load_lightcurve(f));
            break;
        case Modality::text:
            for (const fs::path& f : files)
                for (TokenizedText& t : load_text_records(f)) ds.samples.emplace_back(std::move(t));
            break;
    }

    // Per-sample annotation companions only line up when each file is one sample.
    if (files.size() == ds.samples.size()) attach_annotations(ds, files);
    return ds;
}

} // namespace fix

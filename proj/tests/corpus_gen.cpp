#include "corpus_gen.hpp"

#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "fix/rand.hpp"

namespace fixtest {

namespace fs = std::filesystem;
using fix::detail::bounded_rand;
using fix::detail::unit_real;

namespace {

void write_rasters(const fs::path& dir, int count, std::mt19937_64& rng) {
    fs::create_directories(dir);
    for (int s = 0; s < count; ++s) {
        char name[32];
        std::snprintf(name, sizeof(name), "map_%03d.map", s);
        std::ofstream out(dir / name);
        out.precision(17);
        const int h = 16, w = 16;
        out << h << " " << w << "\n";
        for (int r = 0; r < h; ++r) {
            for (int c = 0; c < w; ++c) {
                // Mostly mild values around zero with occasional bright spikes.
                double v = unit_real(rng) * 2.0 - 1.0;
                if (bounded_rand(rng, 24) == 0) v = 6.0 + unit_real(rng) * 4.0;
                out << (c ? " " : "") << v;
            }
            out << "\n";
        }
    }
}

void write_curves(const fs::path& dir, int count, std::mt19937_64& rng) {
    fs::create_directories(dir);
    for (int s = 0; s < count; ++s) {
        char name[32];
        std::snprintf(name, sizeof(name), "curve_%03d.csv", s);
        std::ofstream out(dir / name);
        out.precision(17);
        out << "time,band,flux,flux_err\n";
        const int n_bands = 2 + static_cast<int>(bounded_rand(rng, 2));
        std::vector<double> slope(static_cast<std::size_t>(n_bands)),
            intercept(static_cast<std::size_t>(n_bands));
        for (int b = 0; b < n_bands; ++b) {
            slope[static_cast<std::size_t>(b)] = unit_real(rng) * 2.0 - 1.0;
            intercept[static_cast<std::size_t>(b)] = unit_real(rng) * 10.0;
        }
        for (int i = 0; i < 24; ++i) {
            const double t = 5.0 * i;
            bool any = false;
            for (int b = 0; b < n_bands; ++b) {
                if (bounded_rand(rng, 3) == 0) continue; // band skips this stamp
                any = true;
                const double noise = (unit_real(rng) * 2.0 - 1.0) * 1.5;
                const double flux =
                    slope[static_cast<std::size_t>(b)] * t +
                    intercept[static_cast<std::size_t>(b)] + noise;
                const double err = 0.5 + unit_real(rng);
                out << t << "," << (b + 1) << "," << flux << "," << err << "\n";
            }
            if (!any) out << t << ",-,,\n"; // keep the stamp on the grid
        }
    }
}

std::vector<std::string> make_vocab() {
    std::vector<std::string> vocab;
    for (int i = 0; i < 60; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "tok%02d", i);
        vocab.emplace_back(buf);
    }
    return vocab;
}

void write_text_corpus(const fs::path& text_file, const fs::path& embeddings_file,
                       const fs::path& lexicon_file, int count, std::mt19937_64& rng) {
    const std::vector<std::string> vocab = make_vocab();

    {
        std::ofstream out(embeddings_file);
        out.precision(17);
        for (const std::string& word : vocab) {
            out << word << "\t";
            for (int k = 0; k < 8; ++k) out << (k ? " " : "") << (unit_real(rng) * 2.0 - 1.0);
            out << "\n";
        }
    }
    {
        std::ofstream out(lexicon_file);
        out << "CatA: " << vocab[0] << ", " << vocab[1] << ", " << vocab[2] << "\n";
        out << "CatB: " << vocab[10] << ", " << vocab[11] << "\n";
        out << "CatC: " << vocab[20] << ", " << vocab[21] << ", " << vocab[22] << "\n";
    }
    {
        std::ofstream out(text_file);
        for (int s = 0; s < count; ++s) {
            out << "en\t";
            const std::size_t n_words = 8 + bounded_rand(rng, 12);
            for (std::size_t i = 0; i < n_words; ++i) {
                std::string word = vocab[bounded_rand(rng, vocab.size())];
                if (i + 1 == n_words)
                    word += ".";
                else if (bounded_rand(rng, 6) == 0)
                    word += ",";
                out << word << (i + 1 == n_words ? "" : " ");
            }
            out << "\n";
        }
    }
}

} // namespace

CorpusPaths generate_corpus(const fs::path& root, int per_modality, std::uint64_t seed) {
    fs::create_directories(root);
    CorpusPaths paths;
    paths.image_dir = root / "images";
    paths.series_dir = root / "series";
    paths.text_file = root / "corpus.txt";
    paths.embeddings_file = root / "embeddings.tsv";
    paths.lexicon_file = root / "lexicon.txt";

    std::mt19937_64 rng(seed);
    write_rasters(paths.image_dir, per_modality, rng);
    write_curves(paths.series_dir, per_modality, rng);
    write_text_corpus(paths.text_file, paths.embeddings_file, paths.lexicon_file, per_modality,
                      rng);
    return paths;
}

} // namespace fixtest

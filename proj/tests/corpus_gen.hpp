#pragma once
// Deterministic synthetic corpus for end-to-end runs: rasters, light curves,
// a text corpus with its embedding table and lexicon.

#include <cstdint>
#include <filesystem>

namespace fixtest {

struct CorpusPaths {
    std::filesystem::path image_dir;
    std::filesystem::path series_dir;
    std::filesystem::path text_file;
    std::filesystem::path embeddings_file;
    std::filesystem::path lexicon_file;
};

CorpusPaths generate_corpus(const std::filesystem::path& root, int per_modality,
                            std::uint64_t seed);

} // namespace fixtest

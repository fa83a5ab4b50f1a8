#pragma once
// File formats.
//
// Raster:      header "H W", then H lines of W space-separated decimals.
// Series CSV:  header "time,band,flux,flux_err", one row per observation;
//              a row with an empty band declares a timestamp with no data.
// Text:        one record per line, "language<TAB>raw text".
// Embeddings:  "word<TAB>v1 v2 ... ve".
// Lexicon:     "category: w1, w2, ...". Anchors use categories PV/NV/HA/LA.
// Masks:       one mask per line, "label: z1 o1 z2 o2 ..." where the runs
//              alternate zeros-first and must sum to d.
//
// Every loader rejects NaN/Inf and reports the file and line on failure.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fix/harness.hpp"
#include "fix/sample.hpp"

namespace fix {

MassMap load_massmap(const std::filesystem::path& path);
void write_massmap(const MassMap& x, const std::filesystem::path& path);

LightCurve load_lightcurve(const std::filesystem::path& path);
void write_lightcurve(const LightCurve& x, const std::filesystem::path& path);

// Whitespace tokenization; punctuation stays attached to its word.
TokenizedText tokenize(const std::string& language, const std::string& raw);
std::vector<TokenizedText> load_text_records(const std::filesystem::path& path);

EmbeddingTable load_embeddings(const std::filesystem::path& path);
Lexicon load_lexicon(const std::filesystem::path& path);
AnchorWords load_anchors(const std::filesystem::path& path);

struct LabeledMask {
    std::string label;
    FeatureMask mask;
};
std::vector<LabeledMask> load_masks_rle(const std::filesystem::path& path, std::size_t d);
void write_masks_rle(const std::vector<LabeledMask>& masks, const std::filesystem::path& path);
GroupSet masks_to_groups(const std::vector<LabeledMask>& masks, std::string provenance);

// Loads a dataset from a file or directory. Directories are scanned for
// *.map (image) / *.csv (series) / *.txt (text record files) in name order;
// a single text file holds one record per line. A companion "<sample>.masks"
// file supplies expert annotations; it must be present for all samples or none.
Dataset load_dataset(const std::filesystem::path& path, Modality modality);

} // namespace fix

// Command-line front end: extract feature groups, score proposed groups,
// evaluate extractors over a dataset, and bootstrap score lists.
//
// Exit codes: 0 success, 1 data error (missing/malformed files), 2 usage
// error (bad flags or parameters, modality mismatch).

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fix/io.hpp"
#include "fix/report.hpp"
#include "fix/scorers.hpp"

namespace fs = std::filesystem;

namespace {

struct ScorerFlags {
    std::string scorer;
    std::string embeddings_path;
    std::vector<std::string> lexicon_specs; // [lang=]path
    std::string anchors_path;
    double void_threshold = 0.0;
    double cluster_sigma = 3.0;
    double eps = 1.0;
    double window = 10.0;
    double step = 5.0;
};

void add_scorer_flags(CLI::App* cmd, ScorerFlags& f) {
    cmd->add_option("--scorer", f.scorer,
                    "Scorer: massmaps | supernova | politeness | emotion | explicit");
    cmd->add_option("--embeddings", f.embeddings_path,
                    "Embedding table file (word<TAB>values), for text scorers");
    cmd->add_option("--lexicon", f.lexicon_specs,
                    "Politeness lexicon file, optionally LANG=PATH; repeatable");
    cmd->add_option("--anchors", f.anchors_path,
                    "Axis anchor file with PV/NV/HA/LA categories (emotion)");
    cmd->add_option("--void-threshold", f.void_threshold,
                    "Mass-map void intensity threshold (default 0)");
    cmd->add_option("--cluster-sigma", f.cluster_sigma,
                    "Mass-map cluster threshold in map sigmas (default 3)");
    cmd->add_option("--eps", f.eps, "Light-curve error-band multiplier (default 1)");
    cmd->add_option("--window", f.window, "Light-curve window size in days (default 10)");
    cmd->add_option("--step", f.step, "Light-curve window step in days (default 5)");
}

std::shared_ptr<const fix::EmbeddingTable> load_embeddings_if_given(const ScorerFlags& f) {
    if (f.embeddings_path.empty()) return nullptr;
    return std::make_shared<const fix::EmbeddingTable>(fix::load_embeddings(f.embeddings_path));
}

std::shared_ptr<const fix::AlignmentScorer> build_scorer(
    const ScorerFlags& f, std::shared_ptr<const fix::EmbeddingTable> emb) {
    if (f.scorer == "massmaps")
        return std::make_shared<fix::MassMapScorer>(
            fix::MassMapParams{f.void_threshold, f.cluster_sigma});
    if (f.scorer == "supernova")
        return std::make_shared<fix::SupernovaScorer>(
            fix::ConsistencyParams{f.eps, f.window, f.step});
    if (f.scorer == "politeness") {
        if (!emb) throw fix::ConfigError("--scorer politeness requires --embeddings");
        if (f.lexicon_specs.empty())
            throw fix::ConfigError("--scorer politeness requires at least one --lexicon");
        std::map<std::string, fix::Centroids> per_language;
        for (const std::string& spec : f.lexicon_specs) {
            const std::size_t eq = spec.find('=');
            const std::string lang = eq == std::string::npos ? "" : spec.substr(0, eq);
            const std::string path = eq == std::string::npos ? spec : spec.substr(eq + 1);
            per_language[lang] = fix::build_centroids(fix::load_lexicon(path), *emb);
        }
        return std::make_shared<fix::PolitenessScorer>(std::move(per_language), emb);
    }
    if (f.scorer == "emotion") {
        if (!emb) throw fix::ConfigError("--scorer emotion requires --embeddings");
        const fix::AnchorWords anchors = f.anchors_path.empty()
                                             ? fix::AnchorWords::defaults()
                                             : fix::load_anchors(f.anchors_path);
        return std::make_shared<fix::EmotionScorer>(fix::build_axes(*emb, anchors), emb);
    }
    if (f.scorer == "explicit" || f.scorer.empty()) return nullptr; // bound per sample
    throw fix::ConfigError("unknown scorer '" + f.scorer + "'");
}

int run_extract(const std::string& input, const std::string& modality_name,
                const std::string& extractor_spec, std::uint64_t seed, const std::string& out_dir,
                const std::string& embeddings_path) {
    const fix::Modality modality = fix::modality_from_string(modality_name);
    const fix::ExtractorConfig cfg = fix::parse_extractor(extractor_spec);
    if (!cfg.compatible_with(modality))
        throw fix::ConfigError("extractor '" + cfg.id() + "' does not accept " + modality_name +
                               " samples");
    fix::Dataset ds = fix::load_dataset(input, modality);
    if (!embeddings_path.empty())
        ds.embeddings =
            std::make_shared<const fix::EmbeddingTable>(fix::load_embeddings(embeddings_path));

    fs::create_directories(out_dir);
    for (std::size_t i = 0; i < ds.samples.size(); ++i) {
        const fix::GroupSet groups = fix::extract_groups(
            ds.samples[i], cfg, fix::derive_seed(seed, i), ds.embeddings.get());
        std::vector<fix::LabeledMask> masks;
        for (std::size_t g = 0; g < groups.size(); ++g)
            masks.push_back({"g" + std::to_string(g), groups[g]});
        char name[32];
        std::snprintf(name, sizeof(name), "sample_%04zu.groups", i);
        fix::write_masks_rle(masks, fs::path(out_dir) / name);
    }
    std::cout << "wrote " << ds.samples.size() << " group files to " << out_dir << "\n";
    return 0;
}

int run_score(const std::string& input, const std::string& modality_name,
              const std::string& groups_path, const ScorerFlags& flags) {
    const fix::Modality modality = fix::modality_from_string(modality_name);
    fix::Dataset ds = fix::load_dataset(input, modality);
    if (ds.samples.size() != 1)
        throw fix::ConfigError("score expects exactly one sample, got " +
                               std::to_string(ds.samples.size()));
    const fix::Sample& x = ds.samples[0];

    auto emb = load_embeddings_if_given(flags);
    std::shared_ptr<const fix::AlignmentScorer> scorer = build_scorer(flags, emb);
    if (!scorer) {
        if (!ds.explicit_mode())
            throw fix::ConfigError("explicit scoring needs a '" + input + ".masks' annotation file");
        scorer = std::make_shared<fix::ExplicitScorer>(ds.annotations[0]);
    }

    const std::vector<fix::LabeledMask> masks =
        fix::load_masks_rle(groups_path, fix::feature_count(x));
    if (masks.empty()) throw fix::ParseError("group file '" + groups_path + "' has no masks");
    const fix::GroupSet groups = fix::masks_to_groups(masks, "cli");

    std::cout.precision(10);
    for (const fix::LabeledMask& lm : masks)
        std::cout << lm.label << "\t" << scorer->score(lm.mask, x).value << "\n";
    std::cout << "fixscore\t" << fix::fix_score(groups, x, *scorer).value << "\n";
    return 0;
}

int run_evaluate(const std::string& input, const std::string& modality_name,
                 const std::vector<std::string>& extractor_specs, std::uint64_t seed, int workers,
                 int boot_iters, const std::string& out_path, const ScorerFlags& flags) {
    const fix::Modality modality = fix::modality_from_string(modality_name);
    fix::Dataset ds = fix::load_dataset(input, modality);
    auto emb = load_embeddings_if_given(flags);
    ds.embeddings = emb;
    ds.scorer = build_scorer(flags, emb);
    if (!ds.scorer && !ds.explicit_mode())
        throw fix::ConfigError("dataset has no annotations; pick a --scorer");

    std::vector<fix::EvalReport> reports;
    for (const std::string& spec : extractor_specs) {
        const fix::ExtractorConfig cfg = fix::parse_extractor(spec);
        fix::EvalOptions opts;
        opts.seed = seed;
        opts.workers = workers;
        opts.bootstrap_iters = boot_iters;
        fix::EvalReport report = fix::evaluate(ds, cfg, opts);
        report.config.emplace_back("input", input);
        if (!flags.embeddings_path.empty())
            report.config.emplace_back("embeddings", flags.embeddings_path);
        for (const std::string& lex : flags.lexicon_specs)
            report.config.emplace_back("lexicon", lex);
        reports.push_back(std::move(report));
    }
    if (!out_path.empty()) fix::write_reports(reports, fs::path(out_path));
    std::cout << fix::format_table(reports);
    return 0;
}

int run_bootstrap(const std::string& input, int iters, std::uint64_t seed) {
    std::ifstream in(input);
    if (!in) throw fix::ParseError("cannot open '" + input + "' for reading");
    std::vector<double> scores;
    double v = 0.0;
    while (in >> v) scores.push_back(v);
    if (scores.empty()) throw fix::ParseError("score file '" + input + "' has no values");
    std::cout.precision(10);
    std::cout << fix::bootstrap_std(scores, iters, seed) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fixscore: score how well proposed feature groups align with expert knowledge"};
    app.set_config("--config", "", "Config file with key=value lines; flags override it");
    app.require_subcommand(1);
    app.footer(
        "Extractors (stock defaults): identity | random:N or random:expert=N (group maximum =\n"
        "ceil(1.5 x expert count); presets: mass maps 25, supernova 9, politeness 40) |\n"
        "patch:8x8 | slice:5, slice:10, slice:15 | words | phrases | sentences |\n"
        "quickshift:5,10,0.2 | cluster:K[,base=SPEC]\n"
        "Scorers: massmaps (void<0, cluster>3 sigma) | supernova (eps=1, window=10, step=5) |\n"
        "politeness | emotion | explicit (best IoU against annotations)");

    std::string input, modality, out_path, groups_path;
    std::uint64_t seed = 0;
    int workers = 1, boot_iters = 1000;
    ScorerFlags flags;

    CLI::App* extract = app.add_subcommand("extract", "Write each sample's feature groups");
    extract->add_option("--input", input, "Sample file or dataset directory")->required();
    extract->add_option("--modality", modality, "image | series | text")->required();
    std::string extractor_spec;
    extract->add_option("--extractor", extractor_spec, "Extractor spec, e.g. patch:8x8")
        ->required();
    extract->add_option("--seed", seed, "Seed for stochastic extractors");
    extract->add_option("--out", out_path, "Output directory")->required();
    extract->add_option("--embeddings", flags.embeddings_path,
                        "Embedding table (text clustering)");

    CLI::App* score = app.add_subcommand("score", "Score one sample's proposed groups");
    score->add_option("--input", input, "Sample file")->required();
    score->add_option("--modality", modality, "image | series | text")->required();
    score->add_option("--groups", groups_path, "Proposed groups (RLE mask file)")->required();
    add_scorer_flags(score, flags);

    CLI::App* evaluate = app.add_subcommand("evaluate", "Evaluate extractors over a dataset");
    evaluate->add_option("--input", input, "Dataset file or directory")->required();
    evaluate->add_option("--modality", modality, "image | series | text")->required();
    std::vector<std::string> extractor_specs;
    evaluate->add_option("--extractor", extractor_specs, "Extractor spec; repeatable")
        ->required();
    evaluate->add_option("--seed", seed, "Seed; identical seeds give identical reports");
    evaluate->add_option("--workers", workers, "Worker threads (default 1)");
    evaluate->add_option("--bootstrap-iters", boot_iters, "Bootstrap resamples (default 1000)");
    evaluate->add_option("--out", out_path, "Report TSV path");
    add_scorer_flags(evaluate, flags);

    CLI::App* bootstrap = app.add_subcommand("bootstrap", "Std of resampled means of a score list");
    bootstrap->add_option("--input", input, "File with one score per line")->required();
    bootstrap->add_option("--iters", boot_iters, "Resample count (default 1000)");
    bootstrap->add_option("--seed", seed, "Resampling seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        // Stochastic extractors must be seeded explicitly for reproducible tables.
        auto require_seed_if_stochastic = [&](const std::vector<std::string>& specs,
                                              const CLI::App* cmd) {
            for (const std::string& spec : specs)
                if (fix::parse_extractor(spec).is_stochastic() && cmd->count("--seed") == 0)
                    throw fix::ConfigError("extractor '" + spec + "' is stochastic; --seed is required");
        };
        if (extract->parsed()) {
            require_seed_if_stochastic({extractor_spec}, extract);
            return run_extract(input, modality, extractor_spec, seed, out_path,
                               flags.embeddings_path);
        }
        if (score->parsed()) return run_score(input, modality, groups_path, flags);
        if (evaluate->parsed()) {
            require_seed_if_stochastic(extractor_specs, evaluate);
            return run_evaluate(input, modality, extractor_specs, seed, workers, boot_iters,
                                out_path, flags);
        }
        if (bootstrap->parsed()) return run_bootstrap(input, boot_iters, seed);
        std::cerr << "error: no subcommand given\n";
        return 2;
    } catch (const fix::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

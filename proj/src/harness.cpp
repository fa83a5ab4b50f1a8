#include "fix/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>

#include "fix/rand.hpp"

namespace fix {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
    return detail::splitmix64(seed ^ detail::splitmix64(index + 1));
}

double bootstrap_std(std::span<const double> scores, int iters, std::uint64_t seed) {
    if (scores.empty()) throw ArgumentError("bootstrap needs at least one score");
    if (iters < 1) throw ArgumentError("bootstrap needs at least one iteration");

    const std::size_t n = scores.size();
    std::mt19937_64 rng(seed);
    std::vector<double> means(static_cast<std::size_t>(iters), 0.0);
    for (double& m : means) {
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) sum += scores[detail::bounded_rand(rng, n)];
        m = sum / static_cast<double>(n);
    }

    const auto [lo, hi] = std::minmax_element(means.begin(), means.end());
    if (*lo == *hi) return 0.0; // constant resamples, exactly zero spread

    double mean_of_means = 0.0;
    for (double m : means) mean_of_means += m;
    mean_of_means /= static_cast<double>(iters);
    double var = 0.0;
    for (double m : means) {
        const double d = m - mean_of_means;
        var += d * d;
    }
    return std::sqrt(var / static_cast<double>(iters));
}

EvalReport evaluate(const Dataset& ds, const ExtractorConfig& extractor,
                    const EvalOptions& opts) {
    if (ds.samples.empty()) throw ArgumentError("dataset has no samples");
    if (!extractor.compatible_with(ds.modality))
        throw ConfigError("extractor '" + extractor.id() + "' does not accept " +
                          to_string(ds.modality) + " samples");
    if (!ds.annotations.empty() && ds.annotations.size() != ds.samples.size())
        throw ConfigError("annotations must cover every sample or none");
    if (!ds.explicit_mode() && !ds.scorer)
        throw ConfigError("dataset has no scorer bound and no annotations");
    if (ds.scorer && !ds.scorer->accepts(ds.modality))
        throw ConfigError("scorer '" + ds.scorer->id() + "' does not accept " +
                          to_string(ds.modality) + " samples");

    const std::size_t n = ds.samples.size();
    std::vector<double> per_sample(n, 0.0);

    auto score_sample = [&](std::size_t i) {
        const Sample& x = ds.samples[i];
        const GroupSet groups =
            extract_groups(x, extractor, derive_seed(opts.seed, i), ds.embeddings.get());
        if (ds.explicit_mode()) {
            const ExplicitScorer scorer(ds.annotations[i]);
            per_sample[i] = fix_score(groups, x, scorer).value;
        } else {
            per_sample[i] = fix_score(groups, x, *ds.scorer).value;
        }
    };

    const int workers = std::max(1, opts.workers);
    if (workers == 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) score_sample(i);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
        pool.reserve(count);
        for (std::size_t t = 0; t < count; ++t)
            pool.emplace_back([&] {
                for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1))
                    score_sample(i);
            });
        for (std::thread& t : pool) t.join();
    }

    EvalReport report;
    report.extractor_id = extractor.id();
    report.scorer_id = ds.explicit_mode() ? "explicit" : ds.scorer->id();
    report.per_sample = std::move(per_sample);
    report.n = n;
    report.seed = opts.seed;
    double sum = 0.0;
    for (double s : report.per_sample) sum += s; // fixed sample order
    report.mean = sum / static_cast<double>(n);
    report.boot_std = bootstrap_std(report.per_sample, opts.bootstrap_iters, opts.seed);
    report.config = {{"extractor", report.extractor_id},
                     {"scorer", report.scorer_id},
                     {"modality", to_string(ds.modality)},
                     {"seed", std::to_string(opts.seed)},
                     {"workers", std::to_string(opts.workers)},
                     {"bootstrap_iters", std::to_string(opts.bootstrap_iters)}};
    if (ds.scorer)
        for (auto& entry : ds.scorer->config()) report.config.push_back(std::move(entry));
    return report;
}

} // namespace fix

#include "fix/supernova.hpp"

#include <algorithm>
#include <cmath>

namespace fix {

LightCurve::LightCurve(std::vector<Observation> points, std::vector<double> extra_timestamps)
    : points_(std::move(points)) {
    grid_.reserve(points_.size() + extra_timestamps.size());
    for (const Observation& p : points_) {
        if (!std::isfinite(p.time) || !std::isfinite(p.flux) || !std::isfinite(p.flux_err))
            throw ArgumentError("light curve holds a non-finite value");
        if (p.flux_err < 0.0) throw ArgumentError("flux_err must be non-negative");
        grid_.push_back(p.time);
    }
    for (double t : extra_timestamps) {
        if (!std::isfinite(t)) throw ArgumentError("light curve holds a non-finite timestamp");
        grid_.push_back(t);
    }
    std::sort(grid_.begin(), grid_.end());
    grid_.erase(std::unique(grid_.begin(), grid_.end()), grid_.end());

    for (Observation& p : points_) {
        const auto it = std::lower_bound(grid_.begin(), grid_.end(), p.time);
        p.grid_index = static_cast<std::size_t>(it - grid_.begin());
    }

    for (const Observation& p : points_) bands_.push_back(p.band);
    std::sort(bands_.begin(), bands_.end());
    bands_.erase(std::unique(bands_.begin(), bands_.end()), bands_.end());
}

std::optional<LineFit> fit_line(const std::vector<double>& times,
                                const std::vector<double>& fluxes) {
    if (times.size() != fluxes.size())
        throw ArgumentError("times and fluxes must have equal length");
    const std::size_t n = times.size();
    if (n < 2) return std::nullopt;

    double t_mean = 0.0, y_mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        t_mean += times[i];
        y_mean += fluxes[i];
    }
    t_mean /= static_cast<double>(n);
    y_mean /= static_cast<double>(n);

    double s_tt = 0.0, s_ty = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dt = times[i] - t_mean;
        s_tt += dt * dt;
        s_ty += dt * (fluxes[i] - y_mean);
    }
    if (s_tt == 0.0) return std::nullopt; // all times coincide
    const double slope = s_ty / s_tt;
    return LineFit{slope, y_mean - slope * t_mean};
}

namespace {

struct Selected {
    std::vector<double> times;
    std::vector<double> fluxes;
    std::vector<double> errors;
};

Selected select_band_points(const FeatureMask& g, const LightCurve& x, int band) {
    Selected s;
    for (const Observation& p : x.points()) {
        if (p.band != band || !g.test(p.grid_index)) continue;
        s.times.push_back(p.time);
        s.fluxes.push_back(p.flux);
        s.errors.push_back(p.flux_err);
    }
    return s;
}

} // namespace

double linear_fraction(const FeatureMask& g, const LightCurve& x, int band, double eps) {
    const Selected s = select_band_points(g, x, band);
    const std::size_t m = s.times.size();
    if (m == 0) return 0.0;
    if (m == 1) return 1.0; // one point is trivially consistent

    const std::optional<LineFit> fit = fit_line(s.times, s.fluxes);
    double slope = 0.0, intercept = 0.0;
    if (fit) {
        slope = fit->slope;
        intercept = fit->intercept;
    } else {
        // All times coincide: constant fit at the mean flux.
        for (double y : s.fluxes) intercept += y;
        intercept /= static_cast<double>(m);
    }

    std::size_t within = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const double predicted = slope * s.times[i] + intercept;
        const double band_width = eps * s.errors[i];
        if (predicted >= s.fluxes[i] - band_width && predicted <= s.fluxes[i] + band_width)
            ++within;
    }
    return static_cast<double>(within) / static_cast<double>(m);
}

double density_fraction(const FeatureMask& g, const LightCurve& x, int band, double window,
                        double step) {
    if (window <= 0.0 || step <= 0.0) throw ArgumentError("window and step must be positive");
    if (g.none()) return 0.0;

    double t_start = 0.0, t_end = 0.0;
    bool first = true;
    g.for_each_set([&](std::size_t i) {
        const double t = x.grid()[i];
        if (first) {
            t_start = t_end = t;
            first = false;
        } else {
            t_start = std::min(t_start, t);
            t_end = std::max(t_end, t);
        }
    });

    const Selected s = select_band_points(g, x, band);
    const std::size_t windows = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor((t_end - t_start) / step)));
    std::size_t hit = 0;
    for (std::size_t i = 0; i < windows; ++i) {
        const double lo = t_start + static_cast<double>(i) * step;
        const double hi = lo + window;
        for (double t : s.times) {
            if (t >= lo && t <= hi) {
                ++hit;
                break;
            }
        }
    }
    return static_cast<double>(hit) / static_cast<double>(windows);
}

AlignmentScore supernova_expert_align(const FeatureMask& g, const LightCurve& x,
                                      const ConsistencyParams& params) {
    if (g.none()) return {0.0};
    if (g.size() != x.feature_count())
        throw ArgumentError("mask length does not match the curve's timestamp grid");
    double best = 0.0;
    for (int band : x.bands()) {
        const double p = linear_fraction(g, x, band, params.eps);
        if (p == 0.0) continue; // no selected points in this band
        const double d = density_fraction(g, x, band, params.window, params.step);
        best = std::max(best, p * d);
    }
    return AlignmentScore::clamped(best);
}

} // namespace fix

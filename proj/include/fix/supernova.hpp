#pragma once
// Light-curve alignment: per-band linear consistency of the selected points
// times temporal window coverage, maximized over bands.
//
// Masks index a per-sample timestamp grid (the sorted union of all
// observation times plus any declared empty timestamps), so extractor slices
// and the scorer agree on what a "feature" is. Timestamps with no
// observations never contribute to any band.

#include <cstddef>
#include <optional>
#include <vector>

#include "fix/alignment.hpp"
#include "fix/mask.hpp"

namespace fix {

struct Observation {
    double time = 0.0;     // modified Julian days
    int band = 0;          // wavelength filter id
    double flux = 0.0;
    double flux_err = 0.0; // omega >= 0
    std::size_t grid_index = 0;
};

class LightCurve {
public:
    LightCurve() = default;
    // extra_timestamps declares grid entries that carry no observation.
    LightCurve(std::vector<Observation> points, std::vector<double> extra_timestamps = {});

    const std::vector<Observation>& points() const { return points_; }
    const std::vector<double>& grid() const { return grid_; }
    const std::vector<int>& bands() const { return bands_; }
    std::size_t feature_count() const { return grid_.size(); }

private:
    std::vector<Observation> points_;
    std::vector<double> grid_;  // sorted unique timestamps
    std::vector<int> bands_;    // distinct band ids, ascending
};

struct ConsistencyParams {
    double eps = 1.0;     // error-band multiplier
    double window = 10.0; // window size (days)
    double step = 5.0;    // window step (days)
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};

// Ordinary least squares. Empty when there are fewer than two points or all
// times coincide; callers decide what a degenerate fit means.
std::optional<LineFit> fit_line(const std::vector<double>& times,
                                const std::vector<double>& fluxes);

// Fraction of the group's points in one band whose fitted flux lies within
// eps * flux_err of the observation. One selected point is trivially
// consistent (1); none selected gives 0. Multiple points at a single shared
// time fall back to a constant fit at the mean flux.
double linear_fraction(const FeatureMask& g, const LightCurve& x, int band, double eps);

// Fraction of step-spaced windows over the selected timestamp span that
// contain at least one selected observation of the band. The span shorter
// than one step still yields one window.
double density_fraction(const FeatureMask& g, const LightCurve& x, int band,
                        double window, double step);

// max over bands of linear_fraction * density_fraction. Empty masks and
// groups selecting only empty timestamps score 0.
AlignmentScore supernova_expert_align(const FeatureMask& g, const LightCurve& x,
                                      const ConsistencyParams& params = {});

} // namespace fix

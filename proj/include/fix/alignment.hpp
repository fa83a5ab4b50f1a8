#pragma once
// AlignmentScore: a per-group alignment value constrained to [0,1].

#include <string>

#include "fix/errors.hpp"

namespace fix {

struct AlignmentScore {
    double value = 0.0;

    // Clamps into [0,1]. Values outside the range by more than float noise
    // (the politeness cosine mean can be negative) are clamped with a warning;
    // sub-epsilon overshoot is clamped silently.
    static AlignmentScore clamped(double v);
};

inline bool operator==(AlignmentScore a, AlignmentScore b) { return a.value == b.value; }

} // namespace fix

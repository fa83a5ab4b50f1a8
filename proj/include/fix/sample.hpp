#pragma once
// A sample is one scoreable input: a raster, an event series, or a token
// sequence. Masks over a sample index its low-level features.

#include <string>
#include <variant>

#include "fix/massmaps.hpp"
#include "fix/supernova.hpp"
#include "fix/textalign.hpp"

namespace fix {

enum class Modality { image, series, text };

std::string to_string(Modality m);
Modality modality_from_string(const std::string& name);

using Sample = std::variant<MassMap, LightCurve, TokenizedText>;

inline std::size_t feature_count(const Sample& x) {
    return std::visit([](const auto& s) { return s.feature_count(); }, x);
}

inline Modality modality_of(const Sample& x) {
    if (std::holds_alternative<MassMap>(x)) return Modality::image;
    if (std::holds_alternative<LightCurve>(x)) return Modality::series;
    return Modality::text;
}

} // namespace fix

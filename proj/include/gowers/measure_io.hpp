#pragma once

#include <filesystem>
#include <string>

#include "gowers/measure.hpp"

namespace gowers {

// Measure file format:
//   {"dim": d, "is_real": bool, "coeffs": [[c_1, ..., c_d, re, im], ...]}
// Coefficients are written in lexicographic frequency order with shortest
// round-trip decimal doubles, so save(load(save(mu))) is byte-identical and
// load(save(mu)) == mu bit for bit.

std::string measure_to_json(const FourierMeasure& mu);
FourierMeasure measure_from_json(const std::string& text);

void save_measure(const FourierMeasure& mu, const std::filesystem::path& path);
FourierMeasure load_measure(const std::filesystem::path& path);

}  // namespace gowers

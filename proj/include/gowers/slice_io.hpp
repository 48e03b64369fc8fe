#pragma once

// DeltaSlice export.
//
// CSV:
//   # k=2
//   # xi=0
//   # lo=-2,-1 extent=5,3 modulus=0
//   eta1,eta2,re,im
//   -2,-1,0.25,0
//   ...
// One row per box entry in row-major order; eta columns are d*k wide
// (named eta<i> for d = 1, eta<i>_<a> otherwise).
//
// JSON: {"k", "dim", "xi", "lo", "extent", "modulus", "values": [[eta..., re, im], ...]}

#include <string>

#include "gowers/delta.hpp"

namespace gowers {

std::string slice_to_csv(const DeltaSlice& s);
std::string slice_to_json(const DeltaSlice& s);

DeltaSlice slice_from_csv(const std::string& text);
DeltaSlice slice_from_json(const std::string& text);

}  // namespace gowers

#pragma once

#include <climits>
#include <cstdint>
#include <map>

#include "gowers/types.hpp"

namespace gowers {

using CoefficientMap = std::map<Frequency, Complex>;

/// A band-limited measure on T^d, stored through its Fourier coefficients.
///
/// Exact zeros are dropped on construction, so the stored map is the support
/// of the coefficient sequence. When is_real() holds, the map is Hermitian
/// symmetric bit for bit: coeffs(-c) == conj(coeffs(c)).
class FourierMeasure {
 public:
  /// Validates and builds a measure. Throws std::invalid_argument on a
  /// frequency of the wrong rank or a Hermitian violation when is_real is set.
  static FourierMeasure create(int dim, CoefficientMap coeffs, bool is_real);

  int dim() const { return dim_; }
  bool is_real() const { return is_real_; }
  /// max |c|_inf over the support; 0 for the zero measure.
  std::int64_t bandwidth() const { return bandwidth_; }
  const CoefficientMap& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }

  /// mu^(c), zero off the support.
  Complex coefficient(const Frequency& c) const;

  /// Axis-wise bounding box of the support (empty box for the zero measure).
  Box support_box() const;

  /// mu^(0) == 1 up to tol.
  bool is_probability(double tol = 1e-12) const;

  bool operator==(const FourierMeasure&) const = default;

 private:
  FourierMeasure() = default;

  int dim_ = 1;
  bool is_real_ = false;
  std::int64_t bandwidth_ = 0;
  CoefficientMap coeffs_;
};

enum class WindowKind { SharpCutoff, Fejer };

/// Fourier-side profile of the approximate identity at a dyadic level n.
///
/// SharpCutoff is the indicator of |c|_inf <= 2^n. Fejer is the tensor
/// product of 1D Fejer multipliers of order L = 2^(n+1), i.e.
/// prod_i max(0, 1 - |c_i| / (L + 1)). Levels below zero shrink the radius
/// below one, leaving only c = 0 inside. kNoCutoff is a sentinel whose
/// profile vanishes identically, so its complement is 1 everywhere.
struct Window {
  static constexpr int kNoCutoff = INT_MIN;

  WindowKind kind = WindowKind::SharpCutoff;
  int level = 0;

  static Window sharp(int n) { return {WindowKind::SharpCutoff, n}; }
  static Window fejer(int n) { return {WindowKind::Fejer, n}; }

  double operator()(std::span<const std::int64_t> c) const;
  double complement(std::span<const std::int64_t> c) const { return 1.0 - (*this)(c); }
};

std::string to_string(WindowKind kind);
WindowKind parse_window_kind(const std::string& name);

// Generators. Every generator is a pure function of its arguments.

FourierMeasure gen_lebesgue(int dim);

/// Depth-level approximation of the self-similar Cantor measure that keeps
/// the two outer intervals of relative length 1/ratio at every stage:
///   mu = conv_{j=1..depth} (delta_0 + delta_{(ratio-1) ratio^-j}) / 2,
/// so mu^(c) = prod_j exp(-i pi c (ratio-1) ratio^-j) cos(pi c (ratio-1) ratio^-j).
/// Coefficients are truncated to |c| <= bandwidth.
FourierMeasure gen_cantor(int ratio, int depth, std::int64_t bandwidth);

/// mu^(0) = 1 and mu^(c) = (1+|c|)^(-beta/2) e^(i theta_c) for 0 < |c| <= bandwidth,
/// with theta_c drawn from mt19937_64(seed) and theta_-c = -theta_c.
FourierMeasure gen_salem_surrogate(double beta, std::int64_t bandwidth, std::uint64_t seed);

/// mu^ = 1 on |c| <= bandwidth (a Dirichlet kernel, no decay).
FourierMeasure gen_flat(std::int64_t bandwidth);

/// mu^(0) = 1 and independent uniform coefficients in the complex disc of
/// radius `amplitude` for 0 < |c| <= bandwidth; Hermitian when is_real.
FourierMeasure gen_random(std::int64_t bandwidth, std::uint64_t seed, bool is_real,
                          double amplitude = 0.5);

/// Coefficients mu^(c) * w_n(c)^copies.
FourierMeasure mollify(const FourierMeasure& mu, const Window& w, int copies = 1);

FourierMeasure add(const FourierMeasure& mu, const FourierMeasure& nu);
FourierMeasure sub(const FourierMeasure& mu, const FourierMeasure& nu);
FourierMeasure scale(const FourierMeasure& mu, Complex a);

/// Translation by x0: mu^(c) * exp(2 pi i c . x0).
FourierMeasure translate(const FourierMeasure& mu, std::span<const double> x0);

}  // namespace gowers

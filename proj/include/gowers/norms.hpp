#pragma once

#include <limits>
#include <string>
#include <vector>

#include "gowers/delta.hpp"
#include "gowers/measure.hpp"

namespace gowers {

/// Sum of |values|^2 over a slice.
double slice_energy(const DeltaSlice& s);

/// ||mu||_{U^k}^(2^k) = sum_eta |D^(k-1) mu(0; eta)|^2, k >= 2.
double uk_pow(const FourierMeasure& mu, int k, const EngineOptions& opt = {});
double uk_norm(const FourierMeasure& mu, int k, const EngineOptions& opt = {});

/// Same on Z_q, from normalized DFT coefficients.
double uk_pow_cyclic(const std::vector<Complex>& spectrum, int k, const EngineOptions& opt = {});
double uk_norm_cyclic(const std::vector<Complex>& spectrum, int k, const EngineOptions& opt = {});

/// <F> = D^k(F)(0; 0) for a tuple of order k, evaluated as the inner
/// product of the two half slices at xi = 0.
Complex gowers_inner(const MeasureTuple& t, const EngineOptions& opt = {});

struct NormSplit {
  int k = 0;
  int N = 0;
  double total_pow = 0.0;
  double low_pow = 0.0;
  double high_pow = 0.0;
};

/// low_pow  = sum_eta |W(eta)|^2     |D^(k-1) mu(0; eta)|^2,
/// high_pow = sum_eta |1 - W(eta)|^2 |D^(k-1) mu(0; eta)|^2,
/// with W(eta) = prod_i w_N(eta_i). Exact split for the sharp window.
NormSplit norm_split(const FourierMeasure& mu, int k, int N, WindowKind window = WindowKind::SharpCutoff,
                     const EngineOptions& opt = {});

/// Same split computed on an existing slice of D^(k-1) mu(0; .).
NormSplit norm_split(const DeltaSlice& s, int N, WindowKind window);

struct Shell {
  std::int64_t radius = 0;
  double envelope = 0.0;  // max |D^i mu(0; eta)| over radius <= |eta|_inf < next radius
};

struct DecayFit {
  int order = 1;
  std::vector<Shell> shells;  // every nonempty shell, in radius order
  double slope = 0.0;
  double beta = 0.0;  // -2 slope / (order + 1), +inf when the envelope vanishes
  double r2 = 0.0;
  std::size_t fitted = 0;  // shells with a positive envelope
  std::vector<std::string> warnings;
};

inline constexpr double kNoDecayLimit = std::numeric_limits<double>::infinity();

/// 1, 2, 4, ... up to max_radius.
std::vector<std::int64_t> dyadic_radii(std::int64_t max_radius);

/// Shell maxima of |D^i mu(0; .)| and a least-squares fit of log2 D
/// against log2(1 + R). Empty radii selects dyadic shells over the box.
DecayFit decay_envelope(const FourierMeasure& mu, int order, std::vector<std::int64_t> radii = {},
                        const EngineOptions& opt = {});

struct DimensionEstimate {
  double value = 0.0;  // min_i beta_i clamped to [0, d]
  std::vector<DecayFit> fits;
};

DimensionEstimate fourier_dim_order_k(const FourierMeasure& mu, int k,
                                      std::vector<std::int64_t> radii = {},
                                      const EngineOptions& opt = {});

struct RatePrediction {
  double value = 0.0;
  bool vacuous = false;  // r_k <= 0, i.e. beta <= d/2: the bound says nothing
};

/// r_k = prod_{j=3..k} [2 - 2^(3j-2) / (2^(3j-2) - (1 - (j+1) beta / (j d)))] * (2 beta - d).
RatePrediction rk_predicted(int k, double beta, double d);

/// m = 2^(3k-2) / ((k+1) beta + (2^(3k-2) - 1) k d) * r_k * n.
double optimal_m(int k, double beta, double d, double n);

}  // namespace gowers

#include "gowers/norms.hpp"

#include <algorithm>
#include <cmath>

#include "gowers/fit.hpp"

namespace gowers {

namespace {

double power_root(double p, int k) { return std::pow(std::max(p, 0.0), 1.0 / std::ldexp(1.0, k)); }

void require_order(int k) {
  if (k < 2) throw std::invalid_argument("U^k norms need k >= 2");
}

}  // namespace

double slice_energy(const DeltaSlice& s) {
  double sum = 0.0;
  for (const auto& v : s.values) sum += std::norm(v);
  return sum;
}

double uk_pow(const FourierMeasure& mu, int k, const EngineOptions& opt) {
  require_order(k);
  if (mu.is_zero()) return 0.0;
  return slice_energy(delta_slice(MeasureTuple::uniform(mu, k - 1), Frequency(mu.dim(), 0), opt));
}

double uk_norm(const FourierMeasure& mu, int k, const EngineOptions& opt) {
  return power_root(uk_pow(mu, k, opt), k);
}

double uk_pow_cyclic(const std::vector<Complex>& spectrum, int k, const EngineOptions& opt) {
  require_order(k);
  return slice_energy(delta_slice(CyclicTuple::uniform(spectrum, k - 1), 0, opt));
}

double uk_norm_cyclic(const std::vector<Complex>& spectrum, int k, const EngineOptions& opt) {
  return power_root(uk_pow_cyclic(spectrum, k, opt), k);
}

Complex gowers_inner(const MeasureTuple& t, const EngineOptions& opt) {
  const Frequency zero(t.dim(), 0);
  if (t.k() == 1) return t[0].coefficient(zero) * std::conj(t[1].coefficient(zero));
  const DeltaSlice a = delta_slice(t.half(0), zero, opt);
  const DeltaSlice b = delta_slice(t.half(1), zero, opt);
  Complex sum{};
  for (std::size_t o = 0; o < a.size(); ++o) {
    if (a.values[o] == Complex{}) continue;
    sum += a.values[o] * std::conj(b.at(a.eta(o)));
  }
  return sum;
}

NormSplit norm_split(const DeltaSlice& s, int N, WindowKind window) {
  NormSplit out;
  out.k = s.k + 1;
  out.N = N;
  const Window w{window, N};
  const std::size_t d = static_cast<std::size_t>(s.dim);
  for (std::size_t o = 0; o < s.size(); ++o) {
    const double e = std::norm(s.values[o]);
    if (e == 0.0) continue;
    const Frequency eta = s.eta(o);
    double weight = 1.0;
    for (std::size_t i = 0; i < eta.size() && weight != 0.0; i += d)
      weight *= w(std::span(eta).subspan(i, d));
    out.total_pow += e;
    out.low_pow += weight * weight * e;
    out.high_pow += (1.0 - weight) * (1.0 - weight) * e;
  }
  return out;
}

NormSplit norm_split(const FourierMeasure& mu, int k, int N, WindowKind window, const EngineOptions& opt) {
  require_order(k);
  if (mu.is_zero()) return NormSplit{k, N, 0.0, 0.0, 0.0};
  return norm_split(delta_slice(MeasureTuple::uniform(mu, k - 1), Frequency(mu.dim(), 0), opt), N, window);
}

std::vector<std::int64_t> dyadic_radii(std::int64_t max_radius) {
  std::vector<std::int64_t> r;
  for (std::int64_t R = 1; R <= max_radius; R *= 2) r.push_back(R);
  return r;
}

DecayFit decay_envelope(const FourierMeasure& mu, int order, std::vector<std::int64_t> radii,
                        const EngineOptions& opt) {
  if (order < 1) throw std::invalid_argument("decay order must be at least 1");
  DecayFit fit;
  fit.order = order;
  if (mu.is_zero()) {
    fit.beta = kNoDecayLimit;
    fit.warnings.push_back("zero measure: no decay to fit");
    return fit;
  }
  const DeltaSlice s = delta_slice(MeasureTuple::uniform(mu, order), Frequency(mu.dim(), 0), opt);
  std::int64_t box_radius = 0;
  for (std::size_t i = 0; i < s.box.rank(); ++i)
    box_radius = std::max({box_radius, -s.box.lo[i], s.box.hi(i)});
  if (radii.empty()) radii = dyadic_radii(box_radius);
  if (!std::is_sorted(radii.begin(), radii.end()) ||
      std::adjacent_find(radii.begin(), radii.end()) != radii.end())
    throw std::invalid_argument("shell radii must be strictly increasing");

  // Shell m covers radii[m] <= |eta|_inf < radii[m+1]; the last shell is open.
  std::vector<double> env(radii.size(), 0.0);
  std::vector<bool> hit(radii.size(), false);
  for (std::size_t o = 0; o < s.size(); ++o) {
    const std::int64_t r = linf_norm(s.eta(o));
    auto it = std::upper_bound(radii.begin(), radii.end(), r);
    if (it == radii.begin()) continue;
    const std::size_t m = static_cast<std::size_t>(it - radii.begin()) - 1;
    hit[m] = true;
    env[m] = std::max(env[m], std::abs(s.values[o]));
  }
  std::vector<double> x, y;
  for (std::size_t m = 0; m < radii.size(); ++m) {
    if (!hit[m]) {
      fit.warnings.push_back("shell at radius " + std::to_string(radii[m]) + " lies outside the support box");
      continue;
    }
    fit.shells.push_back({radii[m], env[m]});
    if (env[m] == 0.0) {
      fit.warnings.push_back("shell at radius " + std::to_string(radii[m]) + " has a zero envelope");
      continue;
    }
    x.push_back(std::log2(1.0 + static_cast<double>(radii[m])));
    y.push_back(std::log2(env[m]));
  }
  fit.fitted = x.size();
  if (x.empty()) {
    fit.beta = kNoDecayLimit;
    return fit;
  }
  if (x.size() < 2) {
    fit.warnings.push_back("fewer than two shells with a positive envelope; slope undefined");
    fit.slope = std::nan("");
    fit.beta = std::nan("");
    return fit;
  }
  const LinearFit lf = least_squares(x, y);
  fit.slope = lf.slope;
  fit.r2 = lf.r2;
  fit.beta = -2.0 * lf.slope / (order + 1);
  return fit;
}

DimensionEstimate fourier_dim_order_k(const FourierMeasure& mu, int k, std::vector<std::int64_t> radii,
                                      const EngineOptions& opt) {
  if (k < 1) throw std::invalid_argument("dimension order must be at least 1");
  DimensionEstimate est;
  double lowest = kNoDecayLimit;
  for (int i = 1; i <= k; ++i) {
    est.fits.push_back(decay_envelope(mu, i, radii, opt));
    const double b = est.fits.back().beta;
    if (!std::isnan(b)) lowest = std::min(lowest, b);
  }
  est.value = std::clamp(lowest, 0.0, static_cast<double>(mu.dim()));
  return est;
}

RatePrediction rk_predicted(int k, double beta, double d) {
  if (k < 2) throw std::invalid_argument("r_k needs k >= 2");
  if (!(d > 0.0) || !(beta > 0.0) || beta > d) throw std::invalid_argument("r_k needs 0 < beta <= d");
  double r = 2.0 * beta - d;
  for (int j = 3; j <= k; ++j) {
    const double p = std::ldexp(1.0, 3 * j - 2);
    r *= 2.0 - p / (p - (1.0 - (j + 1) * beta / (j * d)));
  }
  return {r, r <= 0.0};
}

double optimal_m(int k, double beta, double d, double n) {
  const double p = std::ldexp(1.0, 3 * k - 2);
  return p / ((k + 1) * beta + (p - 1.0) * k * d) * rk_predicted(k, beta, d).value * n;
}

}  // namespace gowers

#include "gowers/lab.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "gowers/fit.hpp"
#include "gowers/oracle.hpp"

namespace gowers {

using nlohmann::json;

json to_json(const VerificationReport& r) {
  auto num = [](double v) { return std::isfinite(v) ? json(v) : json(std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf")); };
  return json{{"name", r.name},   {"lhs", num(r.lhs)},   {"rhs", num(r.rhs)},
              {"margin", num(r.margin)}, {"pass", r.pass}, {"params", r.params}};
}

namespace {

VerificationReport identity(std::string name, Complex lhs, Complex rhs, double tol, json params) {
  VerificationReport r;
  r.name = std::move(name);
  r.lhs = lhs.real();
  r.rhs = rhs.real();
  const double residual = std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
  r.margin = -residual;
  r.pass = residual <= tol;
  params["tolerance"] = tol;
  params["kind"] = "identity";
  if (lhs.imag() != 0.0 || rhs.imag() != 0.0) params["imag"] = {lhs.imag(), rhs.imag()};
  r.params = std::move(params);
  return r;
}

/// Slack is relative to max(1, |rhs|).
VerificationReport inequality(std::string name, double lhs, double rhs, double tol, json params) {
  VerificationReport r;
  r.name = std::move(name);
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = rhs - lhs;
  r.pass = r.margin >= -tol * std::max(1.0, std::abs(rhs));
  params["tolerance"] = tol;
  params["kind"] = "inequality";
  r.params = std::move(params);
  return r;
}

Box full_box_cyclic(int k, std::int64_t q) {
  return Box(std::vector<std::int64_t>(static_cast<std::size_t>(k), 0), std::vector<std::int64_t>(static_cast<std::size_t>(k), q));
}

Frequency zero_freq(int d) { return Frequency(static_cast<std::size_t>(d), 0); }

/// ||mu||_{U^k}, with ||mu||_{U^1} = |mu^(0)|.
double gowers_norm(const FourierMeasure& mu, int k) {
  if (k == 1) return std::abs(mu.coefficient(zero_freq(mu.dim())));
  return uk_norm(mu, k);
}

double norm_product(const MeasureTuple& t) {
  double p = 1.0;
  for (const auto& mu : t.entries()) p *= gowers_norm(mu, t.k());
  return p;
}

Complex inner_sum(const DeltaSlice& a, const DeltaSlice& b) {
  Complex s{};
  for (std::size_t o = 0; o < a.size(); ++o)
    if (a.values[o] != Complex{}) s += a.values[o] * std::conj(b.at(a.eta(o)));
  return s;
}

std::vector<int> transposition(int k, int a, int b) {
  std::vector<int> p(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) p[i] = i;
  std::swap(p[a], p[b]);
  return p;
}

void require_pairable(const MeasureTuple& t, int j) {
  if (t.k() < 2) throw std::invalid_argument("this check needs a tuple of order at least 2");
  if (j < 1 || j > t.k()) throw std::out_of_range("coordinate j must lie in [1, k]");
}

/// Uniform probe points in the certified box widened by one on every axis.
class Prober {
 public:
  Prober(std::uint64_t seed) : rng_(seed) {}
  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  Frequency around(const Box& b, std::int64_t fallback_radius) {
    Frequency p(b.rank());
    for (std::size_t i = 0; i < b.rank(); ++i)
      p[i] = b.empty() ? uniform(-fallback_radius, fallback_radius) : uniform(b.lo[i] - 1, b.hi(i) + 1);
    return p;
  }

 private:
  std::mt19937_64 rng_;
};

std::int64_t tuple_bandwidth(const MeasureTuple& t) {
  std::int64_t m = 0;
  for (const auto& mu : t.entries()) m = std::max(m, mu.bandwidth());
  return m;
}

double sum_outside(const DeltaSlice& s, double radius) {
  double sum = 0.0;
  for (std::size_t o = 0; o < s.size(); ++o)
    if (static_cast<double>(linf_norm(s.eta(o))) > radius) sum += std::norm(s.values[o]);
  return sum;
}

void fit_sweep(RatioSweep& sw) {
  std::vector<double> x, y;
  for (std::size_t i = 0; i < sw.N.size(); ++i)
    if (std::isfinite(sw.ratio[i]) && sw.ratio[i] > 0.0) {
      x.push_back(sw.N[i]);
      y.push_back(std::log2(sw.ratio[i]));
    }
  if (x.size() >= 2) {
    sw.slope = least_squares(x, y).slope;
    sw.slope_defined = true;
  }
}

bool sweep_bounded(const RatioSweep& sw, double max_slope) {
  for (double r : sw.ratio)
    if (std::isinf(r)) return false;
  return !sw.slope_defined || sw.slope <= max_slope;
}

json sweep_json(const RatioSweep& sw) {
  auto clean = [](const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(std::isfinite(x) ? json(x) : json(std::isnan(x) ? "nan" : "inf"));
    return a;
  };
  return json{{"N", sw.N},
              {"lhs", clean(sw.lhs)},
              {"eps", clean(sw.eps)},
              {"ratio", clean(sw.ratio)},
              {"slope", sw.slope_defined ? json(sw.slope) : json(nullptr)}};
}

/// max_i ||mu_i||_{U^(k+1), >N} from precomputed slices of D^k mu_i(0; .).
double sweep_eps(const std::vector<DeltaSlice>& slices, int k, int N) {
  double eps = 0.0;
  for (const auto& s : slices) {
    const double high = norm_split(s, N, WindowKind::SharpCutoff).high_pow;
    eps = std::max(eps, std::pow(high, 1.0 / std::ldexp(1.0, k + 1)));
  }
  return eps;
}

double ratio_of(double lhs, double eps, double exponent) {
  if (eps == 0.0) return lhs == 0.0 ? std::nan("") : std::numeric_limits<double>::infinity();
  return lhs / std::pow(eps, exponent);
}

}  // namespace

VerificationReport check_start(const FourierMeasure& mu, int k, double tol) {
  if (k < 1) throw std::invalid_argument("check_start needs k >= 1");
  const json params{{"k", k}};
  if (mu.is_zero()) return inequality("start", 0.0, 0.0, tol, params);
  const DeltaSlice s = delta_slice(MeasureTuple::uniform(mu, k), zero_freq(mu.dim()));
  double lhs = 0.0;
  for (const auto& v : s.values) lhs = std::max(lhs, std::abs(v));
  const Complex origin = s.at(Frequency(static_cast<std::size_t>(k * mu.dim()), 0));
  return inequality("start", lhs, origin.real(), tol, params);
}

VerificationReport check_smalltri(const FourierMeasure& mu, int k, int n, int m, WindowKind window,
                                  double tol) {
  const FourierMeasure mu_n = mollify(mu, Window{window, n}, k + 1);
  const NormSplit a = norm_split(mu, k + 1, m);
  const NormSplit b = norm_split(mu_n, k + 1, m);
  const double eps = a.low_pow - b.low_pow;
  return inequality("smalltri", b.high_pow - eps, a.high_pow, tol,
                    json{{"k", k}, {"n", n}, {"m", m}, {"window", to_string(window)}, {"eps", eps}});
}

VerificationReport check_gcs(const MeasureTuple& t, double tol) {
  return inequality("gcs", std::abs(gowers_inner(t)), norm_product(t), tol, json{{"k", t.k()}});
}

VerificationReport check_cs11(const MeasureTuple& t, int j, int N, WindowKind window, double tol) {
  require_pairable(t, j);
  const int k = t.k();
  const Frequency z = zero_freq(t.dim());
  const std::size_t d = static_cast<std::size_t>(t.dim());
  const Window w{window, N};

  const DeltaSlice full = delta_slice(t, z);
  double lhs = 0.0;
  for (std::size_t o = 0; o < full.size(); ++o) {
    const Frequency eta = full.eta(o);
    lhs += w.complement(std::span(eta).subspan((j - 1) * d, d)) * std::norm(full.values[o]);
  }

  const MeasureTuple g = j == k ? t : t.permuted(transposition(k, j - 1, k - 1));
  const MeasureTuple g0 = g.half(0).join(g.half(0));
  const MeasureTuple g1 = g.half(1).join(g.half(1));
  const Complex rhs = inner_sum(delta_slice_truncated(g0, z, {k, N, TruncationMode::SJ_HIGH, window}),
                                delta_slice(g1, z));
  return identity("cs11", lhs, rhs, tol, json{{"k", k}, {"j", j}, {"N", N}, {"window", to_string(window)}});
}

VerificationReport check_cs12(const MeasureTuple& t, int j, int N, WindowKind window, double tol) {
  require_pairable(t, j);
  const Frequency z = zero_freq(t.dim());
  const double lhs = slice_energy(delta_slice_truncated(t, z, {j, N, TruncationMode::SJ_HIGH, window}));
  const MeasureTuple t0 = t.half(0).join(t.half(0));
  const MeasureTuple t1 = t.half(1).join(t.half(1));
  const Complex rhs =
      inner_sum(delta_slice(t1, z), delta_slice_truncated(t0, z, {j, N, TruncationMode::SJ_BOTH, window}));
  return identity("cs12", lhs, rhs, tol, json{{"k", t.k()}, {"j", j}, {"N", N}, {"window", to_string(window)}});
}

VerificationReport check_overgrowth(const MeasureTuple& t, int j, int N, OvergrowthBound bound,
                                    WindowKind window, double tol) {
  if (j < 1 || j > t.k()) throw std::out_of_range("coordinate j must lie in [1, k]");
  const bool both = bound == OvergrowthBound::Both;
  const TruncationSpec spec{j, N, both ? TruncationMode::SJ_BOTH : TruncationMode::SJ_SHIFTED, window};
  const double lhs = slice_energy(delta_slice_truncated(t, zero_freq(t.dim()), spec));
  const double c = both ? 16.0 : 2.0;
  return inequality(both ? "overgrowth" : "overgrowth_shifted", lhs, c * norm_product(t), tol,
                    json{{"k", t.k()}, {"j", j}, {"N", N}, {"constant", c}, {"window", to_string(window)}});
}

VerificationReport check_permute(const MeasureTuple& t, std::span<const int> perm, int probes,
                                 std::uint64_t seed, double tol) {
  const std::size_t d = static_cast<std::size_t>(t.dim());
  const MeasureTuple pt = t.permuted(perm);
  DeltaPointEvaluator ev(t), pev(pt);
  Prober prober(seed);
  const std::int64_t radius = (std::int64_t{1} << t.k()) * tuple_bandwidth(t);
  double worst = 0.0, scale = 0.0;
  for (int p = 0; p < probes; ++p) {
    Frequency xi(d);
    for (auto& x : xi) x = prober.uniform(-radius, radius);
    const Frequency eta = prober.around(certified_box(t, xi), radius);
    Frequency peta(eta.size());
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t a = 0; a < d; ++a) peta[i * d + a] = eta[static_cast<std::size_t>(perm[i]) * d + a];
    const Complex lhs = pev(xi, eta), rhs = ev(xi, peta);
    worst = std::max(worst, std::abs(lhs - rhs));
    scale = std::max(scale, std::abs(rhs));
  }
  // Residual: worst absolute difference relative to max(1, largest value).
  VerificationReport r;
  r.name = "permute";
  r.lhs = worst;
  r.margin = -worst / std::max(1.0, scale);
  r.pass = -r.margin <= tol;
  r.params = json{{"k", t.k()}, {"perm", std::vector<int>(perm.begin(), perm.end())}, {"probes", probes},
                  {"seed", seed}, {"tolerance", tol}, {"kind", "identity"}};
  return r;
}

VerificationReport check_reflection(const MeasureTuple& t, const Frequency& xi, int probes,
                                    std::uint64_t seed, double tol) {
  const std::size_t d = static_cast<std::size_t>(t.dim());
  DeltaPointEvaluator ev(t), rev(t.reflected());
  Prober prober(seed);
  const std::int64_t radius = (std::int64_t{1} << t.k()) * tuple_bandwidth(t);
  const Box box = certified_box(t, xi);
  double worst = 0.0, scale = 0.0;
  for (int p = 0; p < probes; ++p) {
    const Frequency eta = prober.around(box, radius);
    Frequency reta = eta;
    for (std::size_t a = 0; a < d; ++a) reta[eta.size() - d + a] = -xi[a] - eta[eta.size() - d + a];
    const Complex lhs = ev(xi, eta), rhs = rev(xi, reta);
    worst = std::max(worst, std::abs(lhs - rhs));
    scale = std::max(scale, std::abs(lhs));
  }
  // Residual: worst absolute difference relative to max(1, largest value).
  VerificationReport r;
  r.name = "reflection";
  r.lhs = worst;
  r.margin = -worst / std::max(1.0, scale);
  r.pass = -r.margin <= tol;
  r.params = json{{"k", t.k()}, {"xi", xi}, {"probes", probes}, {"seed", seed}, {"tolerance", tol}, {"kind", "identity"}};
  return r;
}

VerificationReport check_ipad(const FourierMeasure& mu, int k, double tol) {
  const double lhs = uk_pow(mu, k + 1);
  const MeasureTuple t = MeasureTuple::uniform(mu, k);
  const Frequency z = zero_freq(mu.dim());
  const Box box = certified_box(t, z);
  DeltaPointEvaluator ev(t);
  double rhs = 0.0;
  const std::uint64_t n = box.empty() ? 0 : box.size();
  for (std::uint64_t o = 0; o < n; ++o) rhs += std::norm(ev(z, box.point(o)));
  return identity("ipad", lhs, rhs, tol, json{{"k", k}, {"points", n}});
}

VerificationReport check_oracle(std::int64_t q, int k, std::uint64_t seed, double tol) {
  const auto f = oracle::random_function(q, seed);
  const auto spectrum = oracle::dft(f);
  const std::vector<oracle::CyclicFunction> fs(std::size_t{1} << k, f);
  const auto table = oracle::cyclic_delta_hat_table(fs, k);
  const CyclicTuple t = CyclicTuple::uniform(spectrum, k);
  double worst = 0.0, scale = 0.0;
  for (std::int64_t xi = 0; xi < q; ++xi) {
    const DeltaSlice s = delta_slice(t, xi);
    for (std::size_t o = 0; o < s.size(); ++o) {
      std::uint64_t idx = static_cast<std::uint64_t>(xi);
      for (auto e : s.eta(o)) idx = idx * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(e);
      worst = std::max(worst, std::abs(s.values[o] - table[idx]));
      scale = std::max(scale, std::abs(table[idx]));
    }
  }
  const double slice_residual = scale > 0.0 ? worst / scale : worst;
  const double engine_norm = uk_norm_cyclic(spectrum, k + 1);
  const double oracle_norm = oracle::cyclic_uk_norm(f, k + 1);
  const double norm_residual = std::abs(engine_norm - oracle_norm) / std::max(oracle_norm, 1e-300);
  VerificationReport r;
  r.name = "oracle";
  r.lhs = engine_norm;
  r.rhs = oracle_norm;
  r.margin = -std::max(slice_residual, norm_residual);
  r.pass = -r.margin <= tol;
  r.params = json{{"q", q},
                  {"k", k},
                  {"seed", seed},
                  {"slice_residual", slice_residual},
                  {"norm_residual", norm_residual},
                  {"tolerance", tol},
                  {"kind", "identity"}};
  return r;
}

VerificationReport check_u2(const FourierMeasure& mu, double tol) {
  double l4 = 0.0;
  for (const auto& [c, v] : mu.coeffs()) l4 += std::norm(v) * std::norm(v);
  return identity("u2", uk_pow(mu, 2), l4, tol, json::object());
}

VerificationReport check_split(const FourierMeasure& mu, int k, int N, double tol) {
  const NormSplit s = norm_split(mu, k, N);
  return identity("split", s.low_pow + s.high_pow, s.total_pow, tol,
                  json{{"k", k}, {"N", N}, {"low", s.low_pow}, {"high", s.high_pow}});
}

VerificationReport check_rk(double tol) {
  double worst = 0.0;
  for (double beta : {0.6, 0.75, 0.9, 1.0})
    worst = std::max(worst, std::abs(rk_predicted(2, beta, 1.0).value - (2 * beta - 1.0)));
  const double r3 = rk_predicted(3, 1.0, 1.0).value;
  worst = std::max(worst, std::abs(r3 - 386.0 / 385.0));
  bool increasing = true;
  for (int k = 2; k <= 4; ++k) {
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 50; ++i) {
      const double v = rk_predicted(k, 0.5 + 0.5 * i / 50.0, 1.0).value;
      increasing = increasing && v > prev;
      prev = v;
    }
  }
  VerificationReport r;
  r.name = "rk";
  r.lhs = r3;
  r.rhs = 386.0 / 385.0;
  r.margin = -worst;
  r.pass = worst <= tol && increasing;
  r.params = json{{"increasing", increasing}, {"tolerance", tol}, {"kind", "identity"}};
  return r;
}

VerificationReport check_highcross(const FourierMeasure& mu1, const FourierMeasure& mu2, int k,
                                   std::uint64_t mask, const std::vector<int>& Ns, double max_slope) {
  const Frequency z = zero_freq(mu1.dim());
  const DeltaSlice s = delta_slice(MeasureTuple::from_pattern(mu1, mu2, k, mask), z);
  std::vector<DeltaSlice> singles;
  for (const auto* mu : {&mu1, &mu2})
    if (!mu->is_zero()) singles.push_back(delta_slice(MeasureTuple::uniform(*mu, k), z));
  const double exponent = std::ldexp(1.0, -2 * (k - 1));
  RatioSweep sw;
  for (int N : Ns) {
    sw.N.push_back(N);
    sw.lhs.push_back(sum_outside(s, std::ldexp(1.0, N)));
    sw.eps.push_back(sweep_eps(singles, k, N));
    sw.ratio.push_back(ratio_of(sw.lhs.back(), sw.eps.back(), exponent));
  }
  fit_sweep(sw);
  VerificationReport r;
  r.name = "highcross";
  r.lhs = sw.slope_defined ? sw.slope : 0.0;
  r.rhs = max_slope;
  r.margin = r.rhs - r.lhs;
  r.pass = sweep_bounded(sw, max_slope);
  r.params = json{{"k", k}, {"mask", mask}, {"sweep", sweep_json(sw)}, {"kind", "trend"}};
  return r;
}

VerificationReport check_reltri(const FourierMeasure& mu1, const FourierMeasure& mu2, int k,
                                const std::vector<int>& Ns, double max_slope) {
  const Frequency z = zero_freq(mu1.dim());
  const FourierMeasure sum = add(mu1, mu2);
  const DeltaSlice s = delta_slice(MeasureTuple::uniform(sum, k), z);
  std::vector<DeltaSlice> singles;
  for (const auto* mu : {&mu1, &mu2})
    if (!mu->is_zero()) singles.push_back(delta_slice(MeasureTuple::uniform(*mu, k), z));
  const double root = 1.0 / std::ldexp(1.0, k + 1);
  const double exponent = std::ldexp(1.0, -(3 * k - 2));
  RatioSweep box, coord;
  for (int N : Ns) {
    const double eps = sweep_eps(singles, k, N);
    const double lb = std::pow(sum_outside(s, k * std::ldexp(1.0, N)), root);
    const double lc = std::pow(sum_outside(s, std::ldexp(1.0, N)), root);
    for (auto* sw : {&box, &coord}) {
      sw->N.push_back(N);
      sw->eps.push_back(eps);
    }
    box.lhs.push_back(lb);
    coord.lhs.push_back(lc);
    box.ratio.push_back(ratio_of(lb, eps, exponent));
    coord.ratio.push_back(ratio_of(lc, eps, exponent));
  }
  fit_sweep(box);
  fit_sweep(coord);
  VerificationReport r;
  r.name = "reltri";
  r.lhs = std::max(box.slope_defined ? box.slope : 0.0, coord.slope_defined ? coord.slope : 0.0);
  r.rhs = max_slope;
  r.margin = r.rhs - r.lhs;
  r.pass = sweep_bounded(box, max_slope) && sweep_bounded(coord, max_slope);
  r.params = json{{"k", k}, {"box", sweep_json(box)}, {"coord", sweep_json(coord)}, {"kind", "trend"}};
  return r;
}

double tail_sum_l4(const FourierMeasure& mu, int n) {
  const double radius = std::ldexp(1.0, n);
  double s = 0.0;
  for (const auto& [c, v] : mu.coeffs())
    if (static_cast<double>(linf_norm(c)) > radius) s += std::norm(v) * std::norm(v);
  return s;
}

ConvergenceTable converge_experiment(const FourierMeasure& mu, int k, int n_min, int n_max,
                                     WindowKind window, const std::string& measure_id) {
  if (k < 2) throw std::invalid_argument("convergence needs k >= 2");
  if (n_min > n_max) throw std::invalid_argument("empty n range");
  ConvergenceTable t;
  t.k = k;
  t.measure_id = measure_id;
  std::vector<double> x, y;
  for (int n = n_min; n <= n_max; ++n) {
    const double e = uk_norm(sub(mu, mollify(mu, Window{window, n}, k)), k);
    if (!t.rows.empty() && e > t.rows.back().error * (1.0 + 1e-12) + 1e-300) t.nonincreasing = false;
    t.rows.push_back({n, e});
    if (e > 0.0) {
      x.push_back(n);
      y.push_back(-std::log2(e));
    }
  }
  if (x.size() >= 3) {
    t.slope = least_squares(x, y).slope;
    t.slope_defined = true;
  }
  t.beta_used = fourier_dim_order_k(mu, k - 1).value;
  if (t.beta_used > 0.0) {
    const RatePrediction p = rk_predicted(k, t.beta_used, mu.dim());
    t.predicted = p.value / std::ldexp(1.0, k);
    t.vacuous = p.vacuous;
  } else {
    t.predicted = std::nan("");
    t.vacuous = true;
  }
  return t;
}

VerificationReport check_convergence(const FourierMeasure& mu, int k, int n_min, int n_max, double slack,
                                     WindowKind window, const std::string& measure_id, double tail_tol) {
  const ConvergenceTable t = converge_experiment(mu, k, n_min, n_max, window, measure_id);
  double tail_residual = 0.0;
  if (k == 2 && window == WindowKind::SharpCutoff)
    for (const auto& row : t.rows) {
      const double tail = tail_sum_l4(mu, row.n);
      const double e4 = std::pow(row.error, 4.0);
      tail_residual = std::max(tail_residual, std::abs(e4 - tail) / std::max(tail, 1e-300));
    }
  json rows = json::array();
  for (const auto& row : t.rows) rows.push_back({row.n, row.error});
  const double bound = t.vacuous ? -std::numeric_limits<double>::infinity() : t.predicted - slack;
  VerificationReport r;
  r.name = "convergence";
  r.lhs = t.slope;
  r.rhs = bound;
  r.margin = t.slope - bound;
  r.pass = t.slope_defined && r.margin >= 0.0 && tail_residual <= tail_tol &&
           (window != WindowKind::SharpCutoff || t.nonincreasing);
  r.params = json{{"measure", measure_id},   {"k", k},
                  {"rows", rows},            {"predicted", std::isfinite(t.predicted) ? json(t.predicted) : json(nullptr)},
                  {"beta_used", t.beta_used}, {"vacuous", t.vacuous},
                  {"slack", slack},          {"tail_residual", tail_residual},
                  {"nonincreasing", t.nonincreasing}, {"kind", "inequality"}};
  return r;
}

}  // namespace gowers

namespace gowers {

namespace {

/// Entry w of the result is entry pi(w), pi(w)_i = w_{perm[i]}.
template <class T>
std::vector<T> permute_entries(const std::vector<T>& e, const std::vector<int>& perm) {
  std::vector<T> out;
  for (std::size_t w = 0; w < e.size(); ++w) {
    std::size_t src = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      if ((w >> perm[i]) & 1) src |= std::size_t{1} << i;
    out.push_back(e[src]);
  }
  return out;
}

template <class T>
std::vector<T> doubled_half(const std::vector<T>& e, int b) {
  const std::size_t n = e.size() / 2;
  std::vector<T> out(e.begin() + static_cast<std::ptrdiff_t>(b * n), e.begin() + static_cast<std::ptrdiff_t>((b + 1) * n));
  out.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(out[i]);
  return out;
}

struct CyclicSample {
  std::vector<oracle::CyclicFunction> fs;
  std::vector<std::vector<Complex>> spectra;
};

CyclicSample cyclic_sample(std::int64_t q, int k, std::uint64_t seed) {
  CyclicSample s;
  for (std::size_t w = 0; w < (std::size_t{1} << k); ++w) {
    s.fs.push_back(oracle::random_function(q, seed * 1000 + w));
    s.spectra.push_back(oracle::dft(s.fs.back()));
  }
  return s;
}

/// Oracle slice at xi = 0: entries q^k in row-major eta order.
std::vector<Complex> oracle_slice0(const std::vector<oracle::CyclicFunction>& fs, int k) {
  auto table = oracle::cyclic_delta_hat_table(fs, k);
  table.resize(table.size() / static_cast<std::size_t>(fs.front().q));
  return table;
}

}  // namespace

VerificationReport check_cs11_cyclic(std::int64_t q, int k, int j, int N, std::uint64_t seed, double tol) {
  if (k < 2 || j < 1 || j > k) throw std::out_of_range("cs11 needs k >= 2 and 1 <= j <= k");
  const CyclicSample s = cyclic_sample(q, k, seed);
  const Window w = Window::sharp(N);
  const auto full = oracle_slice0(s.fs, k);
  const Box box = full_box_cyclic(k, q);
  double lhs = 0.0;
  for (std::size_t o = 0; o < full.size(); ++o) {
    const Frequency c{centered(box.point(o)[j - 1], q)};
    lhs += w.complement(c) * std::norm(full[o]);
  }
  const std::vector<int> perm = transposition(k, j - 1, k - 1);
  const auto g_spec = permute_entries(s.spectra, perm);
  const auto g_fs = permute_entries(s.fs, perm);
  const DeltaSlice a = delta_slice_truncated(CyclicTuple::create(k, q, doubled_half(g_spec, 0)), 0,
                                             {k, N, TruncationMode::SJ_HIGH, WindowKind::SharpCutoff});
  const auto b = oracle_slice0(doubled_half(g_fs, 1), k);
  Complex rhs{};
  for (std::size_t o = 0; o < a.size(); ++o) rhs += a.values[o] * std::conj(b[o]);
  return identity("cs11_cyclic", lhs, rhs, tol, json{{"q", q}, {"k", k}, {"j", j}, {"N", N}, {"seed", seed}});
}

VerificationReport check_cs12_cyclic(std::int64_t q, int k, int j, int N, std::uint64_t seed, double tol) {
  if (k < 2 || j < 1 || j > k) throw std::out_of_range("cs12 needs k >= 2 and 1 <= j <= k");
  const CyclicSample s = cyclic_sample(q, k, seed);
  const double lhs = slice_energy(delta_slice_truncated(CyclicTuple::create(k, q, s.spectra), 0,
                                                        {j, N, TruncationMode::SJ_HIGH, WindowKind::SharpCutoff}));
  const auto a = oracle_slice0(doubled_half(s.fs, 1), k);
  const DeltaSlice b = delta_slice_truncated(CyclicTuple::create(k, q, doubled_half(s.spectra, 0)), 0,
                                             {j, N, TruncationMode::SJ_BOTH, WindowKind::SharpCutoff});
  Complex rhs{};
  for (std::size_t o = 0; o < b.size(); ++o) rhs += a[o] * std::conj(b.values[o]);
  return identity("cs12_cyclic", lhs, rhs, tol, json{{"q", q}, {"k", k}, {"j", j}, {"N", N}, {"seed", seed}});
}

}  // namespace gowers

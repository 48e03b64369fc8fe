#include "gowers/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace gowers {

namespace {

Frequency negate(const Frequency& c) {
  Frequency m(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) m[i] = -c[i];
  return m;
}

bool is_nonnegative_half(const Frequency& c) {
  // Lexicographically c >= 0: the first nonzero coordinate is positive.
  for (auto x : c)
    if (x != 0) return x > 0;
  return true;
}

/// Rebuilds the negative half of a Hermitian map from its nonnegative half.
CoefficientMap hermitian_completion(const CoefficientMap& m) {
  CoefficientMap out;
  for (const auto& [c, v] : m) {
    if (!is_nonnegative_half(c)) continue;
    if (linf_norm(c) == 0) {
      out[c] = Complex(v.real(), 0.0);
    } else {
      out[c] = v;
      out[negate(c)] = std::conj(v);
    }
  }
  return out;
}

// Random angle in [0, 2 pi) from the top 53 bits of one mt19937_64 draw.
double draw_angle(std::mt19937_64& rng) {
  return 2.0 * std::numbers::pi * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double draw_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

FourierMeasure FourierMeasure::create(int dim, CoefficientMap coeffs, bool is_real) {
  if (dim < 1) throw std::invalid_argument("measure dimension must be positive");
  FourierMeasure mu;
  mu.dim_ = dim;
  mu.is_real_ = is_real;
  for (auto& [c, v] : coeffs) {
    if (static_cast<int>(c.size()) != dim)
      throw std::invalid_argument("frequency " + to_string(c) + " has the wrong rank");
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw std::invalid_argument("non-finite coefficient at " + to_string(c));
    if (v == Complex{}) continue;
    mu.bandwidth_ = std::max(mu.bandwidth_, linf_norm(c));
    mu.coeffs_.emplace(c, v);
  }
  if (is_real) {
    for (const auto& [c, v] : mu.coeffs_) {
      if (mu.coefficient(negate(c)) != std::conj(v))
        throw std::invalid_argument("Hermitian symmetry violated at frequency " + to_string(c));
    }
  }
  return mu;
}

Complex FourierMeasure::coefficient(const Frequency& c) const {
  auto it = coeffs_.find(c);
  return it == coeffs_.end() ? Complex{} : it->second;
}

Box FourierMeasure::support_box() const {
  std::vector<std::int64_t> lo(dim_, 0), hi(dim_, -1);
  bool first = true;
  for (const auto& [c, v] : coeffs_) {
    for (int i = 0; i < dim_; ++i) {
      if (first) {
        lo[i] = hi[i] = c[i];
      } else {
        lo[i] = std::min(lo[i], c[i]);
        hi[i] = std::max(hi[i], c[i]);
      }
    }
    first = false;
  }
  return Box::from_bounds(lo, hi);
}

bool FourierMeasure::is_probability(double tol) const {
  return std::abs(coefficient(Frequency(dim_, 0)) - Complex(1.0, 0.0)) <= tol;
}

double Window::operator()(std::span<const std::int64_t> c) const {
  if (level == kNoCutoff) return 0.0;
  switch (kind) {
    case WindowKind::SharpCutoff: {
      const double radius = std::ldexp(1.0, level);
      return static_cast<double>(linf_norm(c)) <= radius ? 1.0 : 0.0;
    }
    case WindowKind::Fejer: {
      const double order = std::ldexp(1.0, level + 1);
      double w = 1.0;
      for (auto x : c) w *= std::max(0.0, 1.0 - static_cast<double>(std::abs(x)) / (order + 1.0));
      return w;
    }
  }
  return 0.0;
}

std::string to_string(WindowKind kind) {
  return kind == WindowKind::SharpCutoff ? "sharp" : "fejer";
}

WindowKind parse_window_kind(const std::string& name) {
  if (name == "sharp") return WindowKind::SharpCutoff;
  if (name == "fejer") return WindowKind::Fejer;
  throw std::invalid_argument("unknown window '" + name + "' (expected sharp or fejer)");
}

FourierMeasure gen_lebesgue(int dim) {
  return FourierMeasure::create(dim, {{Frequency(dim, 0), Complex(1.0, 0.0)}}, true);
}

FourierMeasure gen_cantor(int ratio, int depth, std::int64_t bandwidth) {
  if (ratio < 3) throw std::invalid_argument("cantor ratio must be at least 3");
  if (depth < 0) throw std::invalid_argument("cantor depth must be nonnegative");
  if (bandwidth < 1) throw std::invalid_argument("cantor bandwidth must be at least 1");
  CoefficientMap half;
  for (std::int64_t c = 0; c <= bandwidth; ++c) {
    Complex v(1.0, 0.0);
    // exp(-i pi t) cos(pi t) has period 1 in t, so t = c (ratio-1) / ratio^j
    // is reduced mod 1 exactly while ratio^j fits in an integer.
    std::int64_t power = 1;
    bool exact = true;
    for (int j = 1; j <= depth; ++j) {
      double t;
      if (exact && !__builtin_mul_overflow(power, std::int64_t{ratio}, &power) &&
          power < (std::int64_t{1} << 53)) {
        t = static_cast<double>((c * (ratio - 1)) % power) / static_cast<double>(power);
      } else {
        exact = false;
        t = static_cast<double>(c) * (ratio - 1) * std::pow(static_cast<double>(ratio), -j);
      }
      v *= std::polar(std::cos(std::numbers::pi * t), -std::numbers::pi * t);
    }
    half[{c}] = v;
  }
  return FourierMeasure::create(1, hermitian_completion(half), true);
}

FourierMeasure gen_salem_surrogate(double beta, std::int64_t bandwidth, std::uint64_t seed) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("salem surrogate requires 0 < beta < d = 1");
  if (bandwidth < 0) throw std::invalid_argument("bandwidth must be nonnegative");
  std::mt19937_64 rng(seed);
  CoefficientMap half;
  half[{0}] = Complex(1.0, 0.0);
  for (std::int64_t c = 1; c <= bandwidth; ++c) {
    const double modulus = std::pow(1.0 + static_cast<double>(c), -beta / 2.0);
    half[{c}] = std::polar(modulus, draw_angle(rng));
  }
  return FourierMeasure::create(1, hermitian_completion(half), true);
}

FourierMeasure gen_flat(std::int64_t bandwidth) {
  if (bandwidth < 0) throw std::invalid_argument("bandwidth must be nonnegative");
  CoefficientMap m;
  for (std::int64_t c = -bandwidth; c <= bandwidth; ++c) m[{c}] = Complex(1.0, 0.0);
  return FourierMeasure::create(1, std::move(m), true);
}

FourierMeasure gen_random(std::int64_t bandwidth, std::uint64_t seed, bool is_real,
                          double amplitude) {
  if (bandwidth < 0) throw std::invalid_argument("bandwidth must be nonnegative");
  std::mt19937_64 rng(seed);
  auto draw = [&] {
    const double r = amplitude * std::sqrt(draw_unit(rng));
    return std::polar(r, draw_angle(rng));
  };
  CoefficientMap m;
  m[{0}] = Complex(1.0, 0.0);
  for (std::int64_t c = 1; c <= bandwidth; ++c) {
    m[{c}] = draw();
    if (!is_real) m[{-c}] = draw();
  }
  if (is_real) m = hermitian_completion(m);
  return FourierMeasure::create(1, std::move(m), is_real);
}

FourierMeasure mollify(const FourierMeasure& mu, const Window& w, int copies) {
  if (copies < 1) throw std::invalid_argument("mollify needs at least one copy");
  CoefficientMap m;
  for (const auto& [c, v] : mu.coeffs()) {
    const double wc = w(c);
    m[c] = v * (w.kind == WindowKind::SharpCutoff ? wc : std::pow(wc, copies));
  }
  return FourierMeasure::create(mu.dim(), std::move(m), mu.is_real());
}

namespace {

FourierMeasure combine(const FourierMeasure& mu, const FourierMeasure& nu, double sign) {
  if (mu.dim() != nu.dim()) throw std::invalid_argument("measure dimension mismatch");
  CoefficientMap m = mu.coeffs();
  for (const auto& [c, v] : nu.coeffs()) m[c] += sign * v;
  return FourierMeasure::create(mu.dim(), std::move(m), mu.is_real() && nu.is_real());
}

}  // namespace

FourierMeasure add(const FourierMeasure& mu, const FourierMeasure& nu) { return combine(mu, nu, 1.0); }
FourierMeasure sub(const FourierMeasure& mu, const FourierMeasure& nu) { return combine(mu, nu, -1.0); }

FourierMeasure scale(const FourierMeasure& mu, Complex a) {
  CoefficientMap m;
  for (const auto& [c, v] : mu.coeffs()) m[c] = a * v;
  const bool real = mu.is_real() && a.imag() == 0.0;
  if (real) m = hermitian_completion(m);
  return FourierMeasure::create(mu.dim(), std::move(m), real);
}

FourierMeasure translate(const FourierMeasure& mu, std::span<const double> x0) {
  if (static_cast<int>(x0.size()) != mu.dim()) throw std::invalid_argument("translation rank mismatch");
  CoefficientMap m;
  for (const auto& [c, v] : mu.coeffs()) {
    double phase = 0.0;
    for (std::size_t i = 0; i < x0.size(); ++i) phase += static_cast<double>(c[i]) * x0[i];
    phase = std::fmod(phase, 1.0);
    m[c] = v * std::polar(1.0, 2.0 * std::numbers::pi * phase);
  }
  if (mu.is_real()) m = hermitian_completion(m);
  return FourierMeasure::create(mu.dim(), std::move(m), mu.is_real());
}

}  // namespace gowers

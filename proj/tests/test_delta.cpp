#include <cmath>
#include <random>

#include "doctest.h"
#include "gowers/delta.hpp"
#include "gowers/oracle.hpp"

using namespace gowers;

namespace {

FourierMeasure cosine() {
  return FourierMeasure::create(1, {{{-1}, 0.5}, {{0}, 1.0}, {{1}, 0.5}}, true);
}

MeasureTuple random_tuple(int k, std::int64_t bw, std::uint64_t seed, bool real = false) {
  std::vector<FourierMeasure> e;
  for (std::size_t w = 0; w < (std::size_t{1} << k); ++w) e.push_back(gen_random(bw, seed * 64 + w, real));
  return MeasureTuple::create(k, std::move(e));
}

/// The measure's coefficients folded onto Z_q.
std::vector<Complex> folded(const FourierMeasure& mu, std::int64_t q) {
  std::vector<Complex> s(static_cast<std::size_t>(q));
  for (const auto& [c, v] : mu.coeffs()) s[mod_floor(c[0], q)] += v;
  return s;
}

double max_abs(const std::vector<Complex>& v) {
  double m = 0.0;
  for (auto z : v) m = std::max(m, std::abs(z));
  return m;
}

/// Direct sum of the top-level recursion, optionally skipping c_j = 0.
Complex direct_top(const MeasureTuple& t, std::int64_t xi, std::span<const std::int64_t> eta, int skip_j) {
  const int k = t.k();
  const MeasureTuple a = t.half(0), b = t.half(1);
  const std::int64_t ek = eta[k - 1];
  const Frequency xa{xi + ek};
  const Box box = certified_box(a, xa);
  Complex s{};
  std::vector<std::int64_t> cb(static_cast<std::size_t>(k - 1));
  for (std::uint64_t o = 0; o < box.size(); ++o) {
    const Frequency c = box.point(o);
    if (skip_j >= 1 && c[skip_j - 1] == 0) continue;
    for (int i = 0; i < k - 1; ++i) cb[i] = c[i] - eta[i];
    s += delta_point(a, xa, c) * std::conj(delta_point(b, Frequency{ek}, cb));
  }
  return s;
}

}  // namespace

TEST_CASE("Lebesgue tuple gives a delta at the origin") {
  for (int k = 1; k <= 4; ++k) {
    const auto s = delta_slice(MeasureTuple::uniform(gen_lebesgue(1), k), Frequency{0});
    for (std::size_t o = 0; o < s.size(); ++o) {
      bool origin = true;
      for (auto e : s.eta(o)) origin = origin && e == 0;
      CHECK(s.values[o] == Complex(origin ? 1.0 : 0.0));
    }
    const std::vector<std::int64_t> zero(static_cast<std::size_t>(k), 0);
    CHECK(delta_point(MeasureTuple::uniform(gen_lebesgue(1), k), Frequency{0}, zero) == Complex(1.0));
  }
}

TEST_CASE("base case on the cosine measure") {
  const auto s = delta_slice(MeasureTuple::uniform(cosine(), 1), Frequency{0});
  const std::int64_t m1[] = {-1}, z[] = {0}, p1[] = {1}, p2[] = {2};
  CHECK(std::abs(s.at(m1) - 0.25) <= 1e-15);
  CHECK(std::abs(s.at(z) - 1.0) <= 1e-15);
  CHECK(std::abs(s.at(p1) - 0.25) <= 1e-15);
  CHECK(s.at(p2) == Complex{});

  // Mixed pair: f0^(xi + eta) conj(f1^(eta)).
  const auto f0 = gen_random(3, 1, false), f1 = gen_random(3, 2, false);
  const auto t = MeasureTuple::create(1, {f0, f1});
  for (std::int64_t xi = -3; xi <= 3; ++xi)
    for (std::int64_t e = -5; e <= 5; ++e) {
      const std::int64_t eta[] = {e};
      const Complex expect = f0.coefficient({xi + e}) * std::conj(f1.coefficient({e}));
      CHECK(std::abs(delta_point(t, Frequency{xi}, eta) - expect) <= 1e-15);
    }
}

TEST_CASE("Z engine folded onto Z_q matches the cube oracle") {
  for (std::int64_t q : {8, 9, 17})
    for (int k = 1; k <= 3; ++k) {
      const std::int64_t bw = 3;
      const MeasureTuple t = random_tuple(k, bw, static_cast<std::uint64_t>(q * 10 + k));
      std::vector<oracle::CyclicFunction> fs;
      for (const auto& mu : t.entries()) fs.push_back(oracle::inverse_dft(q, folded(mu, q)));
      const auto table = oracle::cyclic_delta_hat_table(fs, k);

      std::vector<Complex> fold(table.size());
      const std::int64_t reach = (std::int64_t{1} << (k + 1)) * bw;
      for (std::int64_t xi = -reach; xi <= reach; ++xi) {
        const Box box = certified_box(t, Frequency{xi});
        if (box.empty()) continue;
        const auto s = delta_slice(t, Frequency{xi});
        for (std::size_t o = 0; o < s.size(); ++o) {
          std::size_t idx = static_cast<std::size_t>(mod_floor(xi, q));
          for (auto e : s.eta(o)) idx = idx * static_cast<std::size_t>(q) + static_cast<std::size_t>(mod_floor(e, q));
          fold[idx] += s.values[o];
        }
      }
      const double scale = max_abs(table);
      double worst = 0.0;
      for (std::size_t i = 0; i < table.size(); ++i) worst = std::max(worst, std::abs(fold[i] - table[i]));
      CAPTURE(q);
      CAPTURE(k);
      CHECK(worst <= 1e-9 * scale);
    }
}

TEST_CASE("U3 of the cosine measure through the k=2 slice") {
  const auto s = delta_slice(MeasureTuple::uniform(cosine(), 2), Frequency{0});
  double energy = 0.0;
  for (auto v : s.values) energy += std::norm(v);
  const auto f = oracle::inverse_dft(16, folded(cosine(), 16));
  CHECK(energy == doctest::Approx(oracle::cyclic_uk_pow(f, 3)).epsilon(1e-9));
}

TEST_CASE("point evaluation matches the slice, and vanishes off the box") {
  for (int k = 1; k <= 3; ++k) {
    const MeasureTuple t = random_tuple(k, 4, 7 + k, true);
    const Frequency xi{1};
    const auto s = delta_slice(t, xi);
    DeltaPointEvaluator ev(t);
    double worst = 0.0;
    for (std::size_t o = 0; o < s.size(); o += 3) worst = std::max(worst, std::abs(ev(xi, s.eta(o)) - s.values[o]));
    CHECK(worst <= 1e-12);
    std::vector<std::int64_t> far(static_cast<std::size_t>(k), 0);
    far[0] = s.box.hi(0) + 1;
    CHECK(ev(xi, far) == Complex{});
    CHECK(s.at(far) == Complex{});
  }
}

TEST_CASE("FFT and direct paths agree and are deterministic") {
  const MeasureTuple t = random_tuple(3, 8, 3);
  EngineOptions direct, fft;
  direct.direct_threshold = std::uint64_t{1} << 40;
  fft.direct_threshold = 0;
  const auto a = delta_slice(t, Frequency{2}, direct);
  const auto b = delta_slice(t, Frequency{2}, fft);
  const auto c = delta_slice(t, Frequency{2}, fft);
  REQUIRE(a.size() == b.size());
  double worst = 0.0;
  for (std::size_t o = 0; o < a.size(); ++o) worst = std::max(worst, std::abs(a.values[o] - b.values[o]));
  CHECK(worst <= 1e-12);
  CHECK(b.values == c.values);
}

TEST_CASE("cyclic engine matches the oracle table") {
  for (int k = 1; k <= 3; ++k) {
    const std::int64_t q = 9;
    std::vector<oracle::CyclicFunction> fs;
    std::vector<std::vector<Complex>> spectra;
    for (std::size_t w = 0; w < (std::size_t{1} << k); ++w) {
      fs.push_back(oracle::random_function(q, 500 + w));
      spectra.push_back(oracle::dft(fs.back()));
    }
    const auto table = oracle::cyclic_delta_hat_table(fs, k);
    const auto t = CyclicTuple::create(k, q, spectra);
    const double scale = max_abs(table);
    const std::size_t per = table.size() / static_cast<std::size_t>(q);
    for (std::int64_t xi = 0; xi < q; ++xi) {
      const auto s = delta_slice(t, xi);
      REQUIRE(s.size() == per);
      CHECK(s.modulus == q);
      double worst = 0.0;
      for (std::size_t o = 0; o < per; ++o)
        worst = std::max(worst, std::abs(s.values[o] - table[static_cast<std::size_t>(xi) * per + o]));
      CHECK(worst <= 1e-9 * scale);
    }
  }
  CHECK_THROWS_AS(CyclicTuple::create(1, 1, {{1.0}, {1.0}}), std::invalid_argument);
}

TEST_CASE("Hermitian symmetry and scaling") {
  const auto mu = gen_salem_surrogate(0.9, 16, 42);
  for (int k = 1; k <= 3; ++k) {
    const auto s = delta_slice(MeasureTuple::uniform(mu, k), Frequency{0});
    double worst = 0.0;
    for (std::size_t o = 0; o < s.size(); ++o) {
      Frequency neg = s.eta(o);
      for (auto& e : neg) e = -e;
      worst = std::max(worst, std::abs(s.at(neg) - std::conj(s.values[o])));
    }
    CHECK(worst <= 1e-12);
    const std::vector<std::int64_t> zero(static_cast<std::size_t>(k), 0);
    CHECK(s.at(zero).real() >= 0.0);
    CHECK(std::abs(s.at(zero).imag()) <= 1e-12);

    const double a = -1.5;
    const auto sa = delta_slice(MeasureTuple::uniform(scale(mu, a), k), Frequency{0});
    const double factor = std::pow(a, 1 << k);
    double dev = 0.0;
    for (std::size_t o = 0; o < s.size(); ++o) dev = std::max(dev, std::abs(sa.values[o] - factor * s.values[o]));
    CHECK(dev <= 1e-12 * factor);
  }
}

TEST_CASE("zero entries short-circuit") {
  auto e = random_tuple(2, 4, 1).entries();
  e[2] = FourierMeasure::create(1, {}, true);
  const auto t = MeasureTuple::create(2, e);
  const auto s = delta_slice(t, Frequency{0});
  for (auto v : s.values) CHECK(v == Complex{});
  const std::int64_t z[] = {0, 0};
  CHECK(delta_point(t, Frequency{0}, z) == Complex{});
}

TEST_CASE("resource limits are reported") {
  const MeasureTuple big = MeasureTuple::uniform(gen_random(1000, 1, true), 4);
  CHECK_THROWS_AS(delta_slice(big, Frequency{0}), ResourceError);
  EngineOptions tight;
  tight.max_elements = 100;
  CHECK_THROWS_AS(delta_slice(random_tuple(2, 8, 1), Frequency{0}, tight), ResourceError);
}

TEST_CASE("truncation: far cutoff kills, trivial windows keep, N=-1 drops c_j=0") {
  const MeasureTuple t = random_tuple(2, 4, 9);
  const Frequency xi{1};
  const auto full = delta_slice(t, xi);

  for (int j = 1; j <= 2; ++j) {
    const auto killed = delta_slice_truncated(t, xi, {j, 6, TruncationMode::SJ_HIGH, WindowKind::SharpCutoff});
    for (auto v : killed.values) CHECK(v == Complex{});

    const auto kept = delta_slice_truncated(t, xi, {j, Window::kNoCutoff, TruncationMode::SJ_BOTH, WindowKind::SharpCutoff});
    REQUIRE(kept.size() == full.size());
    double worst = 0.0;
    for (std::size_t o = 0; o < full.size(); ++o) worst = std::max(worst, std::abs(kept.values[o] - full.values[o]));
    CHECK(worst <= 1e-12);
  }
  CHECK_THROWS_AS(delta_slice_truncated(t, xi, {3, 0, TruncationMode::SJ_HIGH, WindowKind::SharpCutoff}), std::out_of_range);
  CHECK_THROWS_AS(delta_slice_truncated(t, xi, {0, 0, TruncationMode::SJ_HIGH, WindowKind::SharpCutoff}), std::out_of_range);

  const auto cut = delta_slice_truncated(t, xi, {1, -1, TruncationMode::SJ_HIGH, WindowKind::SharpCutoff});
  std::mt19937_64 rng(5);
  for (int p = 0; p < 10; ++p) {
    const std::size_t o = rng() % cut.size();
    const Frequency eta = cut.eta(o);
    CHECK(std::abs(direct_top(t, 1, eta, 0) - full.at(eta)) <= 1e-12);
    CHECK(std::abs(direct_top(t, 1, eta, 1) - cut.values[o]) <= 1e-12);
  }
}

TEST_CASE("truncation at the last coordinate uses outer factors") {
  const MeasureTuple t = random_tuple(2, 4, 11);
  const Frequency xi{-1};
  const int N = 1;
  const Window w = Window::sharp(N);
  const auto full = delta_slice(t, xi);
  const auto high = delta_slice_truncated(t, xi, {2, N, TruncationMode::SJ_HIGH, WindowKind::SharpCutoff});
  const auto shifted = delta_slice_truncated(t, xi, {2, N, TruncationMode::SJ_SHIFTED, WindowKind::SharpCutoff});
  const auto both = delta_slice_truncated(t, xi, {2, N, TruncationMode::SJ_BOTH, WindowKind::SharpCutoff});
  for (std::size_t o = 0; o < full.size(); ++o) {
    const Frequency eta = full.eta(o);
    const double a = w.complement(Frequency{xi[0] + eta[1]});
    const double b = w.complement(Frequency{eta[1]});
    CHECK(std::abs(high.at(eta) - a * full.values[o]) <= 1e-12);
    CHECK(std::abs(shifted.at(eta) - b * full.values[o]) <= 1e-12);
    CHECK(std::abs(both.at(eta) - a * b * full.values[o]) <= 1e-12);
  }
}

TEST_CASE("tuple bookkeeping") {
  const MeasureTuple t = random_tuple(2, 2, 4);
  CHECK_THROWS_AS(MeasureTuple::create(2, {gen_lebesgue(1)}), std::invalid_argument);
  CHECK_THROWS_AS(MeasureTuple::create(1, {gen_lebesgue(1), gen_lebesgue(2)}), std::invalid_argument);
  CHECK(t.half(0).join(t.half(1)).entries() == t.entries());
  CHECK(t.half(0)[1] == t[1]);
  CHECK(t.half(1)[0] == t[2]);
  const auto p = MeasureTuple::from_pattern(gen_lebesgue(1), cosine(), 2, 0b0110);
  CHECK(p[0] == gen_lebesgue(1));
  CHECK(p[1] == cosine());
  CHECK(p[2] == cosine());
  CHECK(p[3] == gen_lebesgue(1));
}

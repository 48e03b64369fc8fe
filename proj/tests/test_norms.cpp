#include <cmath>
#include <limits>

#include "doctest.h"
#include "gowers/fit.hpp"
#include "gowers/norms.hpp"
#include "gowers/oracle.hpp"

using namespace gowers;

namespace {

FourierMeasure cosine() {
  return FourierMeasure::create(1, {{{-1}, 0.5}, {{0}, 1.0}, {{1}, 0.5}}, true);
}

std::vector<Complex> folded(const FourierMeasure& mu, std::int64_t q) {
  std::vector<Complex> s(static_cast<std::size_t>(q));
  for (const auto& [c, v] : mu.coeffs()) s[mod_floor(c[0], q)] += v;
  return s;
}

}  // namespace

TEST_CASE("uk_norm examples") {
  for (int k = 2; k <= 4; ++k) CHECK(uk_norm(gen_lebesgue(1), k) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(uk_norm(cosine(), 2) == doctest::Approx(std::pow(1.125, 0.25)).epsilon(1e-15));
  CHECK(uk_norm(FourierMeasure::create(1, {}, true), 3) == 0.0);
  CHECK_THROWS_AS(uk_norm(cosine(), 1), std::invalid_argument);

  // No aliasing once q > 2^k M: the 2^k signed frequencies in the cube sum cannot wrap.
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto mu = gen_random(2, seed, true);
    const auto f = oracle::inverse_dft(17, folded(mu, 17));
    CHECK(uk_norm(mu, 3) == doctest::Approx(oracle::cyclic_uk_norm(f, 3)).epsilon(1e-9));
    CHECK(uk_norm_cyclic(folded(mu, 17), 3) == doctest::Approx(oracle::cyclic_uk_norm(f, 3)).epsilon(1e-9));
    const auto nu = gen_random(1, seed, true);
    const auto g = oracle::inverse_dft(17, folded(nu, 17));
    CHECK(uk_norm(nu, 4) == doctest::Approx(oracle::cyclic_uk_norm(g, 4)).epsilon(1e-9));
  }
}

TEST_CASE("gowers_inner") {
  for (int k = 1; k <= 3; ++k)
    CHECK(std::abs(gowers_inner(MeasureTuple::uniform(gen_lebesgue(1), k)) - 1.0) <= 1e-15);
  const auto mu = gen_salem_surrogate(0.9, 16, 3);
  for (int k = 2; k <= 3; ++k) {
    const Complex g = gowers_inner(MeasureTuple::uniform(mu, k));
    CHECK(g.real() == doctest::Approx(std::pow(uk_norm(mu, k), 1 << k)).epsilon(1e-12));
    CHECK(std::abs(g.imag()) <= 1e-12);
  }
  const auto t = MeasureTuple::from_pattern(mu, gen_random(8, 2, false), 2, 0b1001);
  CHECK(std::abs(gowers_inner(t)) <= std::pow(uk_norm(mu, 2), 2) * std::pow(uk_norm(gen_random(8, 2, false), 2), 2) + 1e-9);
}

TEST_CASE("norm axioms and invariances") {
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto a = gen_random(4, 2 * seed, seed % 2 == 0);
    const auto b = gen_random(4, 2 * seed + 1, seed % 3 == 0);
    for (int k = 2; k <= 3; ++k) {
      CHECK(uk_norm(add(a, b), k) <= uk_norm(a, k) + uk_norm(b, k) + 1e-9);
      CHECK(uk_norm(scale(a, Complex(0.0, -2.5)), k) == doctest::Approx(2.5 * uk_norm(a, k)).epsilon(1e-9));
    }
  }
  const auto mu = gen_salem_surrogate(0.9, 32, 1);
  const double x0[] = {0.173};
  for (int k = 2; k <= 4; ++k) CHECK(uk_norm(translate(mu, x0), k) == doctest::Approx(uk_norm(mu, k)).epsilon(1e-12));
}

TEST_CASE("nesting on probability measures") {
  for (const auto& mu : {gen_salem_surrogate(0.9, 16, 4), gen_cantor(3, 6, 16), cosine(), gen_flat(6)}) {
    const double u2 = uk_norm(mu, 2), u3 = uk_norm(mu, 3), u4 = uk_norm(mu, 4);
    CHECK(u2 <= u3 + 1e-12);
    CHECK(u3 <= u4 + 1e-12);
  }
}

TEST_CASE("norm_split") {
  const auto mu = gen_salem_surrogate(0.9, 32, 7);
  for (int k = 2; k <= 4; ++k) {
    const auto top = norm_split(mu, k, 10);
    CHECK(top.high_pow == 0.0);
    CHECK(top.low_pow == doctest::Approx(top.total_pow).epsilon(1e-12));

    const auto bottom = norm_split(mu, k, -1);
    const auto s = delta_slice(MeasureTuple::uniform(mu, k - 1), Frequency{0});
    const std::vector<std::int64_t> zero(static_cast<std::size_t>(k - 1), 0);
    CHECK(bottom.low_pow == doctest::Approx(std::norm(s.at(zero))).epsilon(1e-12));

    for (int N = 0; N <= 6; ++N) {
      const auto sp = norm_split(mu, k, N);
      CHECK(sp.low_pow >= 0.0);
      CHECK(sp.high_pow >= 0.0);
      CHECK(sp.low_pow + sp.high_pow == doctest::Approx(sp.total_pow).epsilon(1e-12));
    }
    const auto fe = norm_split(mu, k, 2, WindowKind::Fejer);
    CHECK(fe.low_pow + fe.high_pow <= fe.total_pow * (1 + 1e-12));
  }
}

TEST_CASE("high part of the Salem surrogate decays") {
  const auto mu = gen_salem_surrogate(0.9, 256, 42);
  const int k = 3;
  std::vector<double> x, y;
  double prev = std::numeric_limits<double>::infinity();
  for (int N = 2; N <= 6; ++N) {
    const double h = norm_split(mu, k, N).high_pow;
    CHECK(h <= prev);
    prev = h;
    x.push_back(N);
    y.push_back(std::log2(h));
  }
  // Pre-asymptotic at this bandwidth: the fitted slope is about -0.48, short of the
  // -(k beta - (k-1) d) = -0.7 limit, but each dyadic step is steeper than the last.
  CHECK(least_squares(x, y).slope < -0.4);
  for (std::size_t i = 2; i < y.size(); ++i) CHECK(y[i] - y[i - 1] < y[i - 1] - y[i - 2]);
}

TEST_CASE("decay envelopes and dimension") {
  const auto leb = decay_envelope(gen_lebesgue(1), 1);
  CHECK(leb.beta == kNoDecayLimit);
  CHECK(fourier_dim_order_k(gen_lebesgue(1), 2).value == 1.0);

  const auto salem = gen_salem_surrogate(0.9, 256, 42);
  const auto fit1 = decay_envelope(salem, 1);
  CHECK(fit1.beta == doctest::Approx(0.9).epsilon(0.05 / 0.9));
  for (std::size_t i = 1; i < fit1.shells.size(); ++i) CHECK(fit1.shells[i].radius > fit1.shells[i - 1].radius);

  const auto flat = decay_envelope(gen_flat(64), 1);
  CHECK(std::abs(flat.beta) <= 0.05);
  CHECK(fourier_dim_order_k(gen_flat(64), 1).value == doctest::Approx(0.0).epsilon(0.05));

  const auto dim = fourier_dim_order_k(gen_salem_surrogate(0.9, 64, 42), 2);
  REQUIRE(dim.fits.size() == 2);
  CHECK(dim.value >= 0.0);
  CHECK(dim.value <= 0.9 + 0.05);
  CHECK(dim.value == doctest::Approx(std::min(dim.fits[0].beta, dim.fits[1].beta)));

  CHECK(dyadic_radii(20) == std::vector<std::int64_t>{1, 2, 4, 8, 16});
  CHECK_THROWS_AS(decay_envelope(salem, 1, {4, 2}), std::invalid_argument);
  const auto sparse = decay_envelope(salem, 1, {1, 1024});
  CHECK(std::isnan(sparse.beta));
  CHECK_FALSE(sparse.warnings.empty());
}

TEST_CASE("rk_predicted") {
  CHECK(rk_predicted(2, 0.9, 1.0).value == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(std::abs(rk_predicted(3, 1.0, 1.0).value - 386.0 / 385.0) <= 1e-12);
  const auto vac = rk_predicted(2, 0.4, 1.0);
  CHECK(vac.vacuous);
  CHECK(vac.value < 0.0);
  for (int k = 2; k <= 4; ++k) {
    double prev = -std::numeric_limits<double>::infinity();
    for (int i = 1; i <= 50; ++i) {
      const double v = rk_predicted(k, 0.5 + 0.5 * i / 50.0, 1.0).value;
      CHECK(v > prev);
      prev = v;
    }
  }
  CHECK_THROWS_AS(rk_predicted(1, 0.9, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(rk_predicted(2, 1.1, 1.0), std::invalid_argument);
}

TEST_CASE("least squares") {
  const auto f = least_squares(std::vector<double>{0, 1, 2, 3}, std::vector<double>{1, 3, 5, 7});
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r2 == doctest::Approx(1.0));
  CHECK_THROWS(least_squares(std::vector<double>{1}, std::vector<double>{1}));
}

#include <cmath>

#include "doctest.h"
#include "gowers/measure.hpp"

using namespace gowers;

namespace {

FourierMeasure cosine() {
  return FourierMeasure::create(1, {{{-1}, 0.5}, {{0}, 1.0}, {{1}, 0.5}}, true);
}

bool hermitian(const FourierMeasure& mu) {
  for (const auto& [c, v] : mu.coeffs()) {
    Frequency n(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) n[i] = -c[i];
    if (mu.coefficient(n) != std::conj(v)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("construction validates and records bandwidth") {
  const auto leb = FourierMeasure::create(1, {{{0}, 1.0}}, true);
  CHECK(leb.bandwidth() == 0);
  CHECK(leb.is_probability());

  const auto c = cosine();
  CHECK(c.bandwidth() == 1);
  CHECK(c.is_real());
  CHECK(c.coefficient({5}) == Complex{});

  CHECK_THROWS_AS(FourierMeasure::create(1, {{{1}, Complex(0, 1)}}, true), std::invalid_argument);
  CHECK_THROWS_AS(FourierMeasure::create(1, {{{1, 2}, 1.0}}, false), std::invalid_argument);
  CHECK_THROWS_AS(FourierMeasure::create(1, {{{0}, std::nan("")}}, false), std::invalid_argument);

  const auto zero = FourierMeasure::create(1, {}, true);
  CHECK(zero.is_zero());
  CHECK(zero.bandwidth() == 0);
  CHECK(zero.support_box().empty());

  // Exact zeros are dropped, so the support is what is stored.
  const auto sparse = FourierMeasure::create(1, {{{3}, 0.0}, {{0}, 1.0}}, false);
  CHECK(sparse.bandwidth() == 0);
}

TEST_CASE("lebesgue") {
  for (int d : {1, 2}) {
    const auto mu = gen_lebesgue(d);
    CHECK(mu.dim() == d);
    CHECK(mu.coeffs().size() == 1);
    CHECK(mu.coefficient(Frequency(d, 0)) == Complex(1.0));
  }
}

TEST_CASE("cantor generator") {
  // Depth 0 is the empty product: a band-limited Dirac mass.
  for (const auto& [c, v] : gen_cantor(3, 0, 10).coeffs()) CHECK(v == Complex(1.0));
  CHECK(gen_cantor(3, 0, 10).coeffs().size() == 21);

  const auto mu = gen_cantor(3, 8, 64);
  CHECK(mu.coefficient({0}) == Complex(1.0));
  CHECK(hermitian(mu));
  for (const auto& [c, v] : mu.coeffs()) CHECK(std::abs(v) <= 1.0 + 1e-15);

  // The first factor is trivial at multiples of 3: mu_depth(3c) = mu_{depth-1}(c).
  const auto shallower = gen_cantor(3, 7, 64);
  for (std::int64_t c = -21; c <= 21; ++c)
    CHECK(std::abs(mu.coefficient({3 * c}) - shallower.coefficient({c})) <= 1e-12);

  // Spot value against the product formula.
  Complex expect = 1.0;
  for (int j = 1; j <= 8; ++j) {
    const double tj = 2.0 / std::pow(3.0, j);
    expect *= std::exp(Complex(0, -M_PI * tj)) * std::cos(M_PI * tj);
  }
  CHECK(std::abs(mu.coefficient({1}) - expect) <= 1e-14);

  CHECK_THROWS_AS(gen_cantor(2, 3, 10), std::invalid_argument);
  CHECK_THROWS_AS(gen_cantor(3, 3, 0), std::invalid_argument);
}

TEST_CASE("salem surrogate moduli and determinism") {
  const auto a = gen_salem_surrogate(0.9, 256, 42);
  const auto b = gen_salem_surrogate(0.9, 256, 42);
  CHECK(a == b);
  CHECK_FALSE(a == gen_salem_surrogate(0.9, 256, 43));
  CHECK(hermitian(a));
  CHECK(a.coefficient({0}) == Complex(1.0));
  for (const auto& [c, v] : a.coeffs()) {
    if (c[0] == 0) continue;
    CHECK(std::abs(v) == doctest::Approx(std::pow(1.0 + std::abs(c[0]), -0.45)).epsilon(1e-14));
  }

  // Close to the beta -> d limit the modulus is (1+|c|)^(-beta/2) on the nose.
  const double beta = 1.0 - 1e-12;
  const auto lim = gen_salem_surrogate(beta, 32, 9);
  for (const auto& [c, v] : lim.coeffs())
    CHECK(std::abs(std::abs(v) - std::pow(1.0 + std::abs(c[0]), -beta / 2)) <= 1e-15);

  CHECK_THROWS_AS(gen_salem_surrogate(0.0, 8, 1), std::invalid_argument);
  CHECK_THROWS_AS(gen_salem_surrogate(1.0, 8, 1), std::invalid_argument);
}

TEST_CASE("windows") {
  const Window s = Window::sharp(2);
  CHECK(s(Frequency{4}) == 1.0);
  CHECK(s(Frequency{-4}) == 1.0);
  CHECK(s(Frequency{5}) == 0.0);
  CHECK(Window::sharp(-1)(Frequency{0}) == 1.0);
  CHECK(Window::sharp(-1)(Frequency{1}) == 0.0);
  CHECK(Window::sharp(Window::kNoCutoff).complement(Frequency{0}) == 1.0);

  const Window f = Window::fejer(1);
  CHECK(f(Frequency{0}) == 1.0);
  for (std::int64_t c = -10; c <= 10; ++c) {
    const double v = f(Frequency{c});
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
    if (std::abs(c) > 4) CHECK(v == 0.0);
  }
  CHECK(parse_window_kind("fejer") == WindowKind::Fejer);
  CHECK_THROWS_AS(parse_window_kind("gauss"), std::invalid_argument);
}

TEST_CASE("mollify") {
  const auto mu = gen_salem_surrogate(0.9, 256, 42);
  CHECK(mollify(mu, Window::sharp(8)) == mu);

  const auto low = mollify(mu, Window::sharp(0));
  CHECK(low.bandwidth() == 1);
  CHECK(low.coeffs().size() == 3);
  CHECK(mollify(low, Window::sharp(0)) == low);

  const auto f2 = mollify(mu, Window::fejer(2), 2);
  const Window w = Window::fejer(2);
  for (const auto& [c, v] : mu.coeffs())
    CHECK(std::abs(f2.coefficient(c) - v * w(c) * w(c)) <= 1e-15);
  CHECK(f2.is_real());
}

TEST_CASE("arithmetic") {
  const auto mu = gen_salem_surrogate(0.9, 64, 1);
  const auto nu = gen_random(32, 5, true);
  CHECK(sub(mu, mu).is_zero());

  const auto high = sub(mu, mollify(mu, Window::sharp(3)));
  for (const auto& [c, v] : high.coeffs()) CHECK(std::abs(c[0]) > 8);
  for (const auto& [c, v] : mu.coeffs())
    if (std::abs(c[0]) > 8) CHECK(high.coefficient(c) == v);

  const auto back = add(sub(mu, nu), nu);
  for (const auto& [c, v] : mu.coeffs()) CHECK(std::abs(back.coefficient(c) - v) <= 1e-15);
  CHECK(add(mu, nu).bandwidth() == 64);
  CHECK(add(mu, nu).is_real());
  CHECK(scale(mu, 2.0).is_real());
  CHECK_FALSE(scale(mu, Complex(0, 1)).is_real());
  CHECK(hermitian(scale(mu, -3.0)));
  CHECK_THROWS_AS(add(mu, gen_lebesgue(2)), std::invalid_argument);

  const double x0[] = {0.3};
  const auto tr = translate(mu, x0);
  CHECK(tr.is_real());
  CHECK(hermitian(tr));
  for (const auto& [c, v] : mu.coeffs()) CHECK(std::abs(std::abs(tr.coefficient(c)) - std::abs(v)) <= 1e-15);
}

TEST_CASE("random generator") {
  const auto r = gen_random(8, 3, true);
  CHECK(hermitian(r));
  CHECK(r.coefficient({0}) == Complex(1.0));
  const auto c = gen_random(8, 3, false);
  CHECK_FALSE(c.is_real());
  for (const auto& [f, v] : c.coeffs())
    if (f[0] != 0) CHECK(std::abs(v) <= 0.5);
}

TEST_CASE("box arithmetic") {
  const Box a({-2}, {5}), b({-1}, {3});
  const Box d = box_difference(a, b);
  CHECK(d.lo[0] == -3);
  CHECK(d.hi(0) == 3);
  CHECK(box_intersection(a, Box({2}, {10})).extent[0] == 1);
  CHECK(box_intersection(a, Box({7}, {1})).empty());
  const Box big({0, 0, 0}, {1 << 20, 1 << 20, 1 << 20});
  CHECK_THROWS_AS(big.size(), ResourceError);
  const Box m({-1, 2}, {3, 4});
  for (std::uint64_t o = 0; o < m.size(); ++o) CHECK(m.offset(m.point(o)) == o);
}

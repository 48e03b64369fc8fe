#include <cmath>
#include <vector>

#include "doctest.h"
#include "gowers/oracle.hpp"

using namespace gowers;
using namespace gowers::oracle;

namespace {

double sum_pow(const std::vector<Complex>& v, int p) {
  double s = 0.0;
  for (auto z : v) s += std::pow(std::abs(z), p);
  return s;
}

std::vector<CyclicFunction> random_tuple(std::int64_t q, int k, std::uint64_t seed) {
  std::vector<CyclicFunction> fs;
  for (std::size_t w = 0; w < (std::size_t{1} << k); ++w) fs.push_back(random_function(q, seed * 100 + w));
  return fs;
}

}  // namespace

TEST_CASE("dft round trip and Parseval") {
  for (std::int64_t q : {2, 7, 8, 17}) {
    const auto f = random_function(q, 3);
    const auto g = inverse_dft(q, dft(f));
    for (std::int64_t x = 0; x < q; ++x) CHECK(std::abs(g.values[x] - f.values[x]) <= 1e-12);
    CHECK(sum_pow(dft(f), 2) == doctest::Approx(sum_pow(f.values, 2) / q).epsilon(1e-12));
  }
  const auto chi = dft(character(9, 4));
  for (std::int64_t c = 0; c < 9; ++c) CHECK(std::abs(chi[c] - Complex(c == 4 ? 1.0 : 0.0)) <= 1e-12);
  CHECK_THROWS_AS(CyclicFunction::create({1.0}), std::invalid_argument);
}

TEST_CASE("norms of characters") {
  for (int k = 2; k <= 4; ++k) CHECK(cyclic_uk_norm(character(8, 3), k) == doctest::Approx(1.0).epsilon(1e-12));
  for (int k = 1; k <= 4; ++k) CHECK(cyclic_uk_norm(character(8, 0), k) == doctest::Approx(1.0).epsilon(1e-12));
  // U^1 sees only the mean.
  CHECK(cyclic_uk_norm(character(8, 3), 1) <= 1e-12);
}

TEST_CASE("U2 equals the L4 norm of the spectrum") {
  for (std::int64_t q : {8, 9, 16, 17})
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      const auto f = random_function(q, seed);
      CHECK(cyclic_uk_pow(f, 2) == doctest::Approx(sum_pow(dft(f), 4)).epsilon(1e-12));
    }
}

TEST_CASE("Gowers norms are monotone in k") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto f = random_function(9, seed, true);
    double prev = 0.0;
    for (int k = 1; k <= 4; ++k) {
      const double n = cyclic_uk_norm(f, k);
      CHECK(n >= prev - 1e-12);
      prev = n;
    }
  }
}

TEST_CASE("Gowers-Cauchy-Schwarz on the cube") {
  for (int k = 1; k <= 3; ++k)
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const auto fs = random_tuple(8, k, seed);
      double prod = 1.0;
      for (const auto& f : fs) prod *= cyclic_uk_norm(f, k);
      CHECK(std::abs(cyclic_inner(fs, k)) <= prod + 1e-12);
    }
}

TEST_CASE("table agrees with pointwise sums and with the cube average") {
  for (int k = 1; k <= 2; ++k) {
    const auto fs = random_tuple(5, k, 4);
    const auto table = cyclic_delta_hat_table(fs, k);
    REQUIRE(table.size() == static_cast<std::size_t>(std::pow(5, k + 1)));
    std::vector<std::int64_t> eta(static_cast<std::size_t>(k));
    for (std::size_t o = 0; o < table.size(); ++o) {
      std::size_t r = o;
      for (int i = k - 1; i >= 0; --i) {
        eta[i] = static_cast<std::int64_t>(r % 5);
        r /= 5;
      }
      const auto xi = static_cast<std::int64_t>(r);
      CHECK(std::abs(table[o] - cyclic_delta_hat(fs, k, xi, eta)) <= 1e-12);
    }
  }

  // For f = 1 + chi_a every nonzero entry of the k=1 table is a product of spectrum values.
  const auto f = CyclicFunction::create({2.0, 1.0, 0.0, 1.0});
  const auto s = dft(f);
  const std::vector<CyclicFunction> pair{f, f};
  for (std::int64_t xi = 0; xi < 4; ++xi)
    for (std::int64_t e = 0; e < 4; ++e) {
      const std::int64_t eta[] = {e};
      const Complex expect = s[(xi + e) % 4] * std::conj(s[e]);
      CHECK(std::abs(cyclic_delta_hat(pair, 1, xi, eta) - expect) <= 1e-12);
    }
}

TEST_CASE("oracle inner product is the U^k power on the diagonal") {
  const auto f = random_function(9, 2);
  for (int k = 1; k <= 3; ++k) {
    const std::vector<CyclicFunction> fs(std::size_t{1} << k, f);
    CHECK(cyclic_inner(fs, k).real() == doctest::Approx(cyclic_uk_pow(f, k)).epsilon(1e-12));
  }
}

TEST_CASE("budget and shape errors") {
  CHECK_THROWS_AS(cube_delta(random_function(17, 1), 6), ResourceError);
  const std::vector<CyclicFunction> three(3, random_function(8, 1));
  CHECK_THROWS_AS(cyclic_inner(three, 2), std::invalid_argument);
  const std::vector<CyclicFunction> mixed{random_function(8, 1), random_function(9, 1)};
  CHECK_THROWS_AS(cyclic_inner(mixed, 1), std::invalid_argument);
  const std::int64_t eta[] = {0, 0};
  CHECK_THROWS_AS(cyclic_delta_hat(random_function(8, 1), 1, 0, eta), std::invalid_argument);
}

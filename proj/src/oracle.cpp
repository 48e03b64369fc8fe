#include "gowers/oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace gowers::oracle {

namespace {

std::vector<Complex> twiddles(std::int64_t q, int sign) {
  std::vector<Complex> w(static_cast<std::size_t>(q));
  for (std::int64_t m = 0; m < q; ++m)
    w[m] = std::polar(1.0, sign * 2.0 * std::numbers::pi * static_cast<double>(m) / static_cast<double>(q));
  return w;
}

std::uint64_t checked_power(std::int64_t q, int e) {
  std::uint64_t n = 1;
  for (int i = 0; i < e; ++i) {
    if (n > kCubeBudget / static_cast<std::uint64_t>(q))
      throw ResourceError("cube table q^(k+1) exceeds the oracle budget");
    n *= static_cast<std::uint64_t>(q);
  }
  return n;
}

void check_tuple(std::span<const CyclicFunction> fs, int k) {
  if (k < 0 || k > 16 || fs.size() != (std::size_t{1} << k))
    throw std::invalid_argument("oracle needs exactly 2^k functions");
  for (const auto& f : fs)
    if (f.q != fs.front().q) throw std::invalid_argument("oracle functions must share q");
}

}  // namespace

CyclicFunction CyclicFunction::create(std::vector<Complex> values) {
  if (values.size() < 2) throw std::invalid_argument("cyclic functions need q >= 2");
  return CyclicFunction{static_cast<std::int64_t>(values.size()), std::move(values)};
}

CyclicFunction random_function(std::int64_t q, std::uint64_t seed, bool real) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> v(static_cast<std::size_t>(q));
  for (auto& x : v) {
    do {
      x = {u(rng), real ? 0.0 : u(rng)};
    } while (std::norm(x) > 1.0);
  }
  return CyclicFunction::create(std::move(v));
}

CyclicFunction character(std::int64_t q, std::int64_t a) {
  const auto w = twiddles(q, +1);
  std::vector<Complex> v(static_cast<std::size_t>(q));
  for (std::int64_t x = 0; x < q; ++x) v[x] = w[mod_floor(a * x, q)];
  return CyclicFunction::create(std::move(v));
}

std::vector<Complex> dft(const CyclicFunction& f) {
  const auto w = twiddles(f.q, -1);
  std::vector<Complex> out(f.values.size());
  for (std::int64_t c = 0; c < f.q; ++c) {
    Complex s{};
    for (std::int64_t x = 0; x < f.q; ++x) s += f.values[x] * w[mod_floor(c * x, f.q)];
    out[c] = s / static_cast<double>(f.q);
  }
  return out;
}

CyclicFunction inverse_dft(std::int64_t q, const std::vector<Complex>& spectrum) {
  const auto w = twiddles(q, +1);
  std::vector<Complex> v(static_cast<std::size_t>(q));
  for (std::int64_t x = 0; x < q; ++x)
    for (std::int64_t c = 0; c < q; ++c) v[x] += spectrum[c] * w[mod_floor(c * x, q)];
  return CyclicFunction::create(std::move(v));
}

std::vector<Complex> cube_delta(std::span<const CyclicFunction> fs, int k) {
  check_tuple(fs, k);
  const std::int64_t q = fs.front().q;
  const std::uint64_t n = checked_power(q, k + 1);
  std::vector<Complex> table(n);
  std::vector<std::int64_t> p(static_cast<std::size_t>(k) + 1);  // (x, u_1..u_k)
  for (std::uint64_t o = 0; o < n; ++o) {
    std::uint64_t r = o;
    for (int i = k; i >= 0; --i) {
      p[i] = static_cast<std::int64_t>(r % static_cast<std::uint64_t>(q));
      r /= static_cast<std::uint64_t>(q);
    }
    Complex prod = 1.0;
    for (std::size_t w = 0; w < fs.size(); ++w) {
      std::int64_t arg = p[0];
      int weight = 0;
      for (int i = 0; i < k; ++i)
        if ((w >> i) & 1) {
          arg -= p[i + 1];
          ++weight;
        }
      const Complex v = fs[w].values[mod_floor(arg, q)];
      prod *= (weight % 2) ? std::conj(v) : v;
    }
    table[o] = prod;
  }
  return table;
}

std::vector<Complex> cube_delta(const CyclicFunction& f, int k) {
  const std::vector<CyclicFunction> fs(std::size_t{1} << k, f);
  return cube_delta(fs, k);
}

Complex cyclic_inner(std::span<const CyclicFunction> fs, int k) {
  const auto table = cube_delta(fs, k);
  Complex s{};
  for (const auto& v : table) s += v;
  return s / static_cast<double>(table.size());
}

double cyclic_uk_pow(const CyclicFunction& f, int k) {
  const std::vector<CyclicFunction> fs(std::size_t{1} << k, f);
  const Complex s = cyclic_inner(fs, k);
  if (std::abs(s.imag()) > 1e-12 * std::max(1.0, std::abs(s.real())))
    throw std::runtime_error("cube average has a non-negligible imaginary part");
  return std::max(s.real(), 0.0);
}

double cyclic_uk_norm(const CyclicFunction& f, int k) {
  return std::pow(cyclic_uk_pow(f, k), 1.0 / std::ldexp(1.0, k));
}

Complex cyclic_delta_hat(std::span<const CyclicFunction> fs, int k, std::int64_t xi,
                         std::span<const std::int64_t> eta) {
  if (static_cast<int>(eta.size()) != k) throw std::invalid_argument("eta must have k entries");
  const auto table = cube_delta(fs, k);
  const std::int64_t q = fs.front().q;
  const auto w = twiddles(q, -1);
  Complex s{};
  std::vector<std::int64_t> p(static_cast<std::size_t>(k) + 1);
  for (std::uint64_t o = 0; o < table.size(); ++o) {
    std::uint64_t r = o;
    for (int i = k; i >= 0; --i) {
      p[i] = static_cast<std::int64_t>(r % static_cast<std::uint64_t>(q));
      r /= static_cast<std::uint64_t>(q);
    }
    std::int64_t phase = xi * p[0];
    for (int i = 0; i < k; ++i) phase += eta[i] * p[i + 1];
    s += table[o] * w[mod_floor(phase, q)];
  }
  return s / static_cast<double>(table.size());
}

Complex cyclic_delta_hat(const CyclicFunction& f, int k, std::int64_t xi,
                         std::span<const std::int64_t> eta) {
  const std::vector<CyclicFunction> fs(std::size_t{1} << k, f);
  return cyclic_delta_hat(fs, k, xi, eta);
}

std::vector<Complex> cyclic_delta_hat_table(std::span<const CyclicFunction> fs, int k) {
  std::vector<Complex> a = cube_delta(fs, k);
  const std::int64_t q = fs.front().q;
  const auto w = twiddles(q, -1);
  const auto uq = static_cast<std::uint64_t>(q);
  std::vector<Complex> line(uq);
  // Transform axis by axis: stride of axis i is q^(k - i).
  std::uint64_t stride = a.size();
  for (int axis = 0; axis <= k; ++axis) {
    stride /= uq;
    const std::uint64_t block = stride * uq;
    for (std::uint64_t base = 0; base < a.size(); base += block) {
      for (std::uint64_t inner = 0; inner < stride; ++inner) {
        for (std::int64_t c = 0; c < q; ++c) {
          Complex s{};
          for (std::int64_t x = 0; x < q; ++x) s += a[base + inner + x * stride] * w[mod_floor(c * x, q)];
          line[c] = s / static_cast<double>(q);
        }
        for (std::int64_t c = 0; c < q; ++c) a[base + inner + c * stride] = line[c];
      }
    }
  }
  return a;
}

}  // namespace gowers::oracle

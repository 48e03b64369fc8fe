#pragma once

// Brute-force ground truth on Z_q. Everything here is a plain nested loop
// over the cube definition
//   Delta^k f(x; u) = prod_{w in {0,1}^k} C^{|w|} f_w(x - w.u)
// with averages (not sums) over Z_q and the normalized DFT
//   f^(c) = q^-1 sum_x f(x) e^(-2 pi i c x / q).
// No FFTs and no recursion, so it shares no code path with the delta engine.

#include <cstdint>
#include <span>
#include <vector>

#include "gowers/types.hpp"

namespace gowers::oracle {

struct CyclicFunction {
  std::int64_t q = 0;
  std::vector<Complex> values;

  static CyclicFunction create(std::vector<Complex> values);
};

/// Ceiling on q^(k+1) for cube tables.
inline constexpr std::uint64_t kCubeBudget = std::uint64_t{1} << 24;

/// Uniform complex values in the unit disc, seeded.
CyclicFunction random_function(std::int64_t q, std::uint64_t seed, bool real = false);

/// The character x -> e^(2 pi i a x / q).
CyclicFunction character(std::int64_t q, std::int64_t a);

std::vector<Complex> dft(const CyclicFunction& f);
CyclicFunction inverse_dft(std::int64_t q, const std::vector<Complex>& spectrum);

/// Table over (x, u_1, ..., u_k) in Z_q^(k+1), row-major with x outermost.
/// fs holds 2^k functions in vertex order (vertex w at index sum w_i 2^(i-1)).
std::vector<Complex> cube_delta(std::span<const CyclicFunction> fs, int k);
std::vector<Complex> cube_delta(const CyclicFunction& f, int k);

/// ||f||_{U^k}^(2^k) as the cube average; throws if the imaginary part exceeds 1e-12.
double cyclic_uk_pow(const CyclicFunction& f, int k);
double cyclic_uk_norm(const CyclicFunction& f, int k);

/// Gowers inner product of 2^k functions (the cube average, complex).
Complex cyclic_inner(std::span<const CyclicFunction> fs, int k);

/// Normalized DFT of the cube table at one point (xi; eta), by a direct sum.
Complex cyclic_delta_hat(std::span<const CyclicFunction> fs, int k, std::int64_t xi,
                         std::span<const std::int64_t> eta);
Complex cyclic_delta_hat(const CyclicFunction& f, int k, std::int64_t xi,
                         std::span<const std::int64_t> eta);

/// The full normalized DFT over (xi, eta_1, ..., eta_k), computed one axis at
/// a time with direct sums. Same layout as cube_delta.
std::vector<Complex> cyclic_delta_hat_table(std::span<const CyclicFunction> fs, int k);

}  // namespace gowers::oracle

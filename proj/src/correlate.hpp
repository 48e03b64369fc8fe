#pragma once

// Multidimensional cross-correlation out(s) = sum_i a(i) conj(b(i - s)),
// either linear (zero-padded, output covers every lag) or cyclic of period q
// on every axis. Internal to the delta engine.

#include <cstdint>
#include <memory>
#include <vector>

#include "gowers/types.hpp"

namespace gowers::detail {

std::int64_t next_fast_size(std::int64_t n);

class Correlator {
 public:
  /// Linear correlation of arrays with the given extents. Output extents are
  /// ext_a[i] + ext_b[i] - 1; output index o corresponds to lag o - (ext_b[i] - 1).
  static Correlator linear(std::vector<std::int64_t> ext_a, std::vector<std::int64_t> ext_b,
                           std::uint64_t direct_threshold);

  /// Cyclic correlation on (Z_q)^rank; output index is the lag mod q.
  static Correlator cyclic(std::size_t rank, std::int64_t q, std::uint64_t direct_threshold);

  Correlator(Correlator&&) noexcept;
  Correlator& operator=(Correlator&&) noexcept;
  ~Correlator();

  std::size_t size_a() const { return size_a_; }
  std::size_t size_b() const { return size_b_; }
  std::size_t size_out() const { return size_out_; }
  bool uses_fft() const { return fft_ != nullptr; }
  std::size_t spectrum_size() const;

  /// Writes size_out() values to out.
  void correlate(const Complex* a, const Complex* b, Complex* out);

  /// FFT path only: padded spectra that can be cached and reused.
  std::vector<Complex> spectrum_a(const Complex* a);
  std::vector<Complex> spectrum_b(const Complex* b);
  void correlate_spectra(const std::vector<Complex>& sa, const std::vector<Complex>& sb,
                         Complex* out);

 private:
  struct Fft;
  Correlator() = default;
  void setup(std::uint64_t direct_threshold);
  void direct(const Complex* a, const Complex* b, Complex* out) const;
  std::vector<Complex> forward(const Complex* src, const std::vector<std::int64_t>& ext);
  void extract(Complex* out);

  bool cyclic_ = false;
  std::int64_t q_ = 0;
  std::vector<std::int64_t> ext_a_, ext_b_, ext_out_, padded_;
  std::size_t size_a_ = 1, size_b_ = 1, size_out_ = 1;
  std::unique_ptr<Fft> fft_;
};

}  // namespace gowers::detail

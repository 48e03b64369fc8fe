#pragma once

// Fourier coefficients of the cube-difference object Delta^k of a 2^k-tuple
// of band-limited measures, computed by the recursive convolution identity
//
//   D^k(F)(xi; eta', eta_k) = sum_c D^{k-1}(F_0)(xi + eta_k; c)
//                                   * conj(D^{k-1}(F_1)(eta_k; c - eta')),
//   D^0(f)(xi) = f^(xi),
//
// where F_0 / F_1 are the entries whose vertex has last coordinate 0 / 1.
// This matches the cube definition
//   Delta^k(F)(x; u) = prod_w C^{|w|} F_w(x - w.u)
// with normalized Fourier transforms; the oracle module checks it on Z_q.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "gowers/measure.hpp"
#include "gowers/types.hpp"

namespace gowers {

/// 2^k measures indexed by cube vertices. Vertex w in {0,1}^k is stored at
/// index sum_i w_i 2^(i-1), so coordinate i of the cube is bit i-1 and the
/// halves F_0 / F_1 split on the last coordinate.
class MeasureTuple {
 public:
  static MeasureTuple create(int k, std::vector<FourierMeasure> entries);
  static MeasureTuple uniform(const FourierMeasure& mu, int k);
  /// Entry w is mu2 when bit w of mask is set, mu1 otherwise.
  static MeasureTuple from_pattern(const FourierMeasure& mu1, const FourierMeasure& mu2, int k,
                                   std::uint64_t mask);

  int k() const { return k_; }
  int dim() const { return entries_.front().dim(); }
  const std::vector<FourierMeasure>& entries() const { return entries_; }
  const FourierMeasure& operator[](std::size_t w) const { return entries_[w]; }

  /// Order k-1 tuple of the entries with last coordinate b.
  MeasureTuple half(int b) const;

  /// Order k+1 tuple (this, other): this fills last coordinate 0.
  MeasureTuple join(const MeasureTuple& other) const;

  /// Entry w of the result is entry pi(w) of this, where pi(w)_i = w_{perm[i]}
  /// and perm is a 0-based permutation of the k coordinates.
  MeasureTuple permuted(std::span<const int> perm) const;

  /// (conj F_1, conj F_0): the tuple produced by the substitution
  /// x -> x + u_k. For all-equal real tuples it is the tuple itself.
  MeasureTuple reflected() const;

 private:
  int k_ = 0;
  std::vector<FourierMeasure> entries_;
};

/// 2^k functions on Z_q given by their normalized DFT coefficients.
struct CyclicTuple {
  int k = 0;
  std::int64_t q = 0;
  std::vector<std::vector<Complex>> spectra;

  static CyclicTuple create(int k, std::int64_t q, std::vector<std::vector<Complex>> spectra);
  static CyclicTuple uniform(std::vector<Complex> spectrum, int k);
};

/// Values of D^k(F)(xi; .) on a certified support box (frequency group Z^d),
/// or on all of (Z_q)^k when modulus > 0. Axes are [eta_1 (d axes), ..., eta_k].
struct DeltaSlice {
  int k = 0;
  int dim = 1;
  Frequency xi;
  Box box;
  std::vector<Complex> values;
  std::int64_t modulus = 0;

  /// Zero outside the box; indices are reduced mod q for cyclic slices.
  Complex at(std::span<const std::int64_t> eta) const;
  Frequency eta(std::size_t offset) const { return box.point(offset); }
  std::size_t size() const { return values.size(); }
};

/// Which variables carry the high-pass factor phi^c_N = 1 - w_N.
///  SJ_HIGH:    s_j > N             (weight on c_j, or on xi + eta_k when j = k)
///  SJ_BOTH:    s_j > N, s_j - eta_j > N
///  SJ_SHIFTED: s_j - eta_j > N     (weight on c_j - eta_j, or on eta_k)
enum class TruncationMode { SJ_HIGH, SJ_BOTH, SJ_SHIFTED };

struct TruncationSpec {
  int j = 1;  // 1-based coordinate
  int N = 0;
  TruncationMode mode = TruncationMode::SJ_HIGH;
  WindowKind window = WindowKind::SharpCutoff;

  double complement(std::span<const std::int64_t> c) const {
    return Window{window, N}.complement(c);
  }
};

struct EngineOptions {
  /// Correlations whose inputs both hold at most this many entries are summed directly.
  std::uint64_t direct_threshold = 64;
  std::uint64_t max_elements = kDefaultMaxElements;
  /// Ceiling (in complex entries) on cached FFT spectra while building a table.
  std::uint64_t spectrum_cache_budget = std::uint64_t{1} << 25;
};

/// Certified support of D^k(F)(xi; .): values vanish outside it.
Box certified_box(const MeasureTuple& t, const Frequency& xi);

DeltaSlice delta_slice(const MeasureTuple& t, const Frequency& xi, const EngineOptions& opt = {});
DeltaSlice delta_slice(const CyclicTuple& t, std::int64_t xi, const EngineOptions& opt = {});

DeltaSlice delta_slice_truncated(const MeasureTuple& t, const Frequency& xi,
                                 const TruncationSpec& spec, const EngineOptions& opt = {});
DeltaSlice delta_slice_truncated(const CyclicTuple& t, std::int64_t xi, const TruncationSpec& spec,
                                 const EngineOptions& opt = {});

namespace detail {
struct PointState;
}

/// Evaluates single values D^k(F)(xi; eta) by direct recursive summation,
/// memoizing lower-order values. Independent of the FFT path.
class DeltaPointEvaluator {
 public:
  explicit DeltaPointEvaluator(const MeasureTuple& t);
  explicit DeltaPointEvaluator(const CyclicTuple& t);
  ~DeltaPointEvaluator();
  DeltaPointEvaluator(DeltaPointEvaluator&&) noexcept;
  DeltaPointEvaluator& operator=(DeltaPointEvaluator&&) noexcept;

  Complex operator()(std::span<const std::int64_t> xi, std::span<const std::int64_t> eta);

 private:
  std::unique_ptr<detail::PointState> state_;
};

Complex delta_point(const MeasureTuple& t, const Frequency& xi, std::span<const std::int64_t> eta);
Complex delta_point(const CyclicTuple& t, std::int64_t xi, std::span<const std::int64_t> eta);

}  // namespace gowers

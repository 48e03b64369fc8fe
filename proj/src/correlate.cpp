#include "correlate.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>

namespace gowers::detail {

std::int64_t next_fast_size(std::int64_t n) {
  if (n <= 1) return 1;
  for (std::int64_t m = n;; ++m) {
    std::int64_t r = m;
    for (std::int64_t p : {2, 3, 5, 7})
      while (r % p == 0) r /= p;
    if (r == 1) return m;
  }
}

struct Correlator::Fft {
  std::size_t n = 0;
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  explicit Fft(const std::vector<std::int64_t>& dims) {
    std::vector<int> d(dims.begin(), dims.end());
    n = 1;
    for (auto x : dims) n *= static_cast<std::size_t>(x);
    buf = fftw_alloc_complex(n);
    if (!buf) throw ResourceError("FFT buffer allocation failed");
    fwd = fftw_plan_dft(static_cast<int>(d.size()), d.data(), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd = fftw_plan_dft(static_cast<int>(d.size()), d.data(), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  ~Fft() {
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf);
  }
  Fft(const Fft&) = delete;
  Fft& operator=(const Fft&) = delete;

  Complex* data() { return reinterpret_cast<Complex*>(buf); }
};

Correlator::Correlator(Correlator&&) noexcept = default;
Correlator& Correlator::operator=(Correlator&&) noexcept = default;
Correlator::~Correlator() = default;

namespace {

std::size_t product(const std::vector<std::int64_t>& v) {
  std::size_t n = 1;
  for (auto x : v) n *= static_cast<std::size_t>(x);
  return n;
}

}  // namespace

Correlator Correlator::linear(std::vector<std::int64_t> ext_a, std::vector<std::int64_t> ext_b,
                              std::uint64_t direct_threshold) {
  if (ext_a.size() != ext_b.size()) throw std::invalid_argument("correlator rank mismatch");
  Correlator c;
  c.ext_a_ = std::move(ext_a);
  c.ext_b_ = std::move(ext_b);
  c.ext_out_.resize(c.ext_a_.size());
  c.padded_.resize(c.ext_a_.size());
  for (std::size_t i = 0; i < c.ext_a_.size(); ++i) {
    c.ext_out_[i] = c.ext_a_[i] + c.ext_b_[i] - 1;
    c.padded_[i] = next_fast_size(c.ext_out_[i]);
  }
  c.setup(direct_threshold);
  return c;
}

Correlator Correlator::cyclic(std::size_t rank, std::int64_t q, std::uint64_t direct_threshold) {
  Correlator c;
  c.cyclic_ = true;
  c.q_ = q;
  c.ext_a_.assign(rank, q);
  c.ext_b_.assign(rank, q);
  c.ext_out_.assign(rank, q);
  c.padded_.assign(rank, q);
  c.setup(direct_threshold);
  return c;
}

void Correlator::setup(std::uint64_t direct_threshold) {
  size_a_ = product(ext_a_);
  size_b_ = product(ext_b_);
  size_out_ = product(ext_out_);
  const bool small = std::max(size_a_, size_b_) <= direct_threshold;
  if (!ext_a_.empty() && !small) fft_ = std::make_unique<Fft>(padded_);
}

std::size_t Correlator::spectrum_size() const { return fft_ ? fft_->n : 0; }

void Correlator::direct(const Complex* a, const Complex* b, Complex* out) const {
  std::fill(out, out + size_out_, Complex{});
  const std::size_t rank = ext_a_.size();
  if (rank == 0) {
    out[0] = a[0] * std::conj(b[0]);
    return;
  }
  std::vector<std::int64_t> stride(rank);
  std::int64_t s = 1;
  for (std::size_t i = rank; i-- > 0;) {
    stride[i] = s;
    s *= ext_out_[i];
  }
  auto offsets = [&](const std::vector<std::int64_t>& ext, std::size_t n) {
    std::vector<std::vector<std::int64_t>> idx(n, std::vector<std::int64_t>(rank));
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t r = k;
      for (std::size_t i = rank; i-- > 0;) {
        idx[k][i] = static_cast<std::int64_t>(r % static_cast<std::size_t>(ext[i]));
        r /= static_cast<std::size_t>(ext[i]);
      }
    }
    return idx;
  };
  const auto ia = offsets(ext_a_, size_a_);
  const auto ib = offsets(ext_b_, size_b_);
  for (std::size_t x = 0; x < size_a_; ++x) {
    if (a[x] == Complex{}) continue;
    for (std::size_t y = 0; y < size_b_; ++y) {
      std::int64_t o = 0;
      for (std::size_t i = 0; i < rank; ++i) {
        std::int64_t lag = ia[x][i] - ib[y][i];
        lag = cyclic_ ? mod_floor(lag, q_) : lag + ext_b_[i] - 1;
        o += lag * stride[i];
      }
      out[o] += a[x] * std::conj(b[y]);
    }
  }
}

std::vector<Complex> Correlator::forward(const Complex* src, const std::vector<std::int64_t>& ext) {
  Complex* buf = fft_->data();
  std::fill(buf, buf + fft_->n, Complex{});
  const std::size_t rank = ext.size();
  const std::size_t inner = static_cast<std::size_t>(ext[rank - 1]);
  const std::size_t rows = product(ext) / inner;
  // Copy row by row into the padded layout.
  std::vector<std::int64_t> idx(rank, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    std::size_t dst = 0;
    std::size_t rem = r;
    for (std::size_t i = rank - 1; i-- > 0;) {
      idx[i] = static_cast<std::int64_t>(rem % static_cast<std::size_t>(ext[i]));
      rem /= static_cast<std::size_t>(ext[i]);
    }
    for (std::size_t i = 0; i + 1 < rank; ++i) dst = dst * static_cast<std::size_t>(padded_[i]) + static_cast<std::size_t>(idx[i]);
    dst *= static_cast<std::size_t>(padded_[rank - 1]);
    std::memcpy(buf + dst, src + r * inner, inner * sizeof(Complex));
  }
  fftw_execute(fft_->fwd);
  return {buf, buf + fft_->n};
}

std::vector<Complex> Correlator::spectrum_a(const Complex* a) { return forward(a, ext_a_); }
std::vector<Complex> Correlator::spectrum_b(const Complex* b) { return forward(b, ext_b_); }

void Correlator::correlate_spectra(const std::vector<Complex>& sa, const std::vector<Complex>& sb,
                                   Complex* out) {
  Complex* buf = fft_->data();
  for (std::size_t i = 0; i < fft_->n; ++i) buf[i] = sa[i] * std::conj(sb[i]);
  fftw_execute(fft_->bwd);
  extract(out);
}

void Correlator::extract(Complex* out) {
  const Complex* buf = fft_->data();
  const double norm = 1.0 / static_cast<double>(fft_->n);
  const std::size_t rank = ext_out_.size();
  std::vector<std::int64_t> idx(rank);
  for (std::size_t o = 0; o < size_out_; ++o) {
    std::size_t rem = o;
    for (std::size_t i = rank; i-- > 0;) {
      idx[i] = static_cast<std::int64_t>(rem % static_cast<std::size_t>(ext_out_[i]));
      rem /= static_cast<std::size_t>(ext_out_[i]);
    }
    std::size_t src = 0;
    for (std::size_t i = 0; i < rank; ++i) {
      const std::int64_t lag = cyclic_ ? idx[i] : idx[i] - (ext_b_[i] - 1);
      src = src * static_cast<std::size_t>(padded_[i]) + static_cast<std::size_t>(mod_floor(lag, padded_[i]));
    }
    out[o] = buf[src] * norm;
  }
}

void Correlator::correlate(const Complex* a, const Complex* b, Complex* out) {
  if (!fft_) {
    direct(a, b, out);
    return;
  }
  const auto sa = spectrum_a(a);
  const auto sb = spectrum_b(b);
  correlate_spectra(sa, sb, out);
}

}  // namespace gowers::detail

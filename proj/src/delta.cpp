#include "gowers/delta.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "correlate.hpp"

namespace gowers {

// ---------------------------------------------------------------------------
// Tuples

MeasureTuple MeasureTuple::create(int k, std::vector<FourierMeasure> entries) {
  if (k < 1) throw std::invalid_argument("tuple order must be at least 1");
  if (k > 16 || entries.size() != (std::size_t{1} << k))
    throw std::invalid_argument("a tuple of order k needs exactly 2^k entries");
  for (const auto& e : entries)
    if (e.dim() != entries.front().dim())
      throw std::invalid_argument("tuple entries must share a dimension");
  MeasureTuple t;
  t.k_ = k;
  t.entries_ = std::move(entries);
  return t;
}

MeasureTuple MeasureTuple::uniform(const FourierMeasure& mu, int k) {
  if (k < 1 || k > 16) throw std::invalid_argument("tuple order must lie in [1, 16]");
  return create(k, std::vector<FourierMeasure>(std::size_t{1} << k, mu));
}

MeasureTuple MeasureTuple::from_pattern(const FourierMeasure& mu1, const FourierMeasure& mu2,
                                        int k, std::uint64_t mask) {
  if (k < 1 || k > 6) throw std::invalid_argument("pattern tuples support 1 <= k <= 6");
  std::vector<FourierMeasure> e;
  for (std::size_t w = 0; w < (std::size_t{1} << k); ++w) e.push_back((mask >> w) & 1 ? mu2 : mu1);
  return create(k, std::move(e));
}

MeasureTuple MeasureTuple::half(int b) const {
  if (k_ < 2) throw std::invalid_argument("half() needs a tuple of order at least 2");
  const std::size_t n = entries_.size() / 2;
  std::vector<FourierMeasure> e(entries_.begin() + static_cast<std::ptrdiff_t>(b * n),
                                entries_.begin() + static_cast<std::ptrdiff_t>((b + 1) * n));
  return create(k_ - 1, std::move(e));
}

MeasureTuple MeasureTuple::join(const MeasureTuple& other) const {
  if (other.k_ != k_) throw std::invalid_argument("join() needs tuples of equal order");
  std::vector<FourierMeasure> e = entries_;
  e.insert(e.end(), other.entries_.begin(), other.entries_.end());
  return create(k_ + 1, std::move(e));
}

MeasureTuple MeasureTuple::permuted(std::span<const int> perm) const {
  if (static_cast<int>(perm.size()) != k_) throw std::invalid_argument("permutation has wrong length");
  std::vector<bool> seen(k_, false);
  for (int p : perm) {
    if (p < 0 || p >= k_ || seen[p]) throw std::invalid_argument("not a permutation");
    seen[p] = true;
  }
  std::vector<FourierMeasure> e;
  e.reserve(entries_.size());
  for (std::size_t w = 0; w < entries_.size(); ++w) {
    std::size_t src = 0;
    for (int i = 0; i < k_; ++i)
      if ((w >> perm[i]) & 1) src |= std::size_t{1} << i;
    e.push_back(entries_[src]);
  }
  return create(k_, std::move(e));
}

MeasureTuple MeasureTuple::reflected() const {
  auto conj_measure = [](const FourierMeasure& mu) {
    // conj(mu)^(c) = conj(mu^(-c)).
    CoefficientMap m;
    for (const auto& [c, v] : mu.coeffs()) {
      Frequency neg(c.size());
      for (std::size_t i = 0; i < c.size(); ++i) neg[i] = -c[i];
      m[neg] = std::conj(v);
    }
    return mu.is_real() ? mu : FourierMeasure::create(mu.dim(), std::move(m), false);
  };
  const std::size_t n = entries_.size() / 2;
  std::vector<FourierMeasure> e;
  for (std::size_t w = 0; w < n; ++w) e.push_back(conj_measure(entries_[n + w]));
  for (std::size_t w = 0; w < n; ++w) e.push_back(conj_measure(entries_[w]));
  return create(k_, std::move(e));
}

CyclicTuple CyclicTuple::create(int k, std::int64_t q, std::vector<std::vector<Complex>> spectra) {
  if (k < 1 || k > 16) throw std::invalid_argument("tuple order must lie in [1, 16]");
  if (q < 2) throw std::invalid_argument("cyclic modulus must be at least 2");
  if (spectra.size() != (std::size_t{1} << k))
    throw std::invalid_argument("a tuple of order k needs exactly 2^k entries");
  for (const auto& s : spectra)
    if (static_cast<std::int64_t>(s.size()) != q)
      throw std::invalid_argument("every spectrum must have q entries");
  return CyclicTuple{k, q, std::move(spectra)};
}

CyclicTuple CyclicTuple::uniform(std::vector<Complex> spectrum, int k) {
  const auto q = static_cast<std::int64_t>(spectrum.size());
  if (k < 1 || k > 16) throw std::invalid_argument("tuple order must lie in [1, 16]");
  return create(k, q, std::vector<std::vector<Complex>>(std::size_t{1} << k, std::move(spectrum)));
}

Complex DeltaSlice::at(std::span<const std::int64_t> eta) const {
  if (modulus > 0) {
    Frequency r(eta.size());
    for (std::size_t i = 0; i < eta.size(); ++i) r[i] = mod_floor(eta[i], modulus);
    return box.contains(r) ? values[box.offset(r)] : Complex{};
  }
  return box.contains(eta) ? values[box.offset(eta)] : Complex{};
}

// ---------------------------------------------------------------------------
// Shared representation

namespace detail {

struct Table {
  Box box;  // [xi (d axes) | eta_1 .. eta_j]
  std::vector<Complex> data;
};

struct TupleRep {
  bool cyclic = false;
  std::int64_t q = 0;
  int dim = 1;
  int k = 0;
  bool has_zero = false;
  std::vector<Table> leaves;
  std::vector<int> ids;
};

namespace {

TupleRep represent(const MeasureTuple& t) {
  TupleRep rep;
  rep.dim = t.dim();
  rep.k = t.k();
  std::vector<const FourierMeasure*> unique;
  for (const auto& mu : t.entries()) {
    rep.has_zero = rep.has_zero || mu.is_zero();
    auto it = std::find_if(unique.begin(), unique.end(), [&](const auto* u) { return *u == mu; });
    if (it != unique.end()) {
      rep.ids.push_back(static_cast<int>(it - unique.begin()));
      continue;
    }
    rep.ids.push_back(static_cast<int>(unique.size()));
    unique.push_back(&mu);
    Table leaf;
    leaf.box = mu.support_box();
    leaf.data.assign(leaf.box.size(), Complex{});
    for (const auto& [c, v] : mu.coeffs()) leaf.data[leaf.box.offset(c)] = v;
    rep.leaves.push_back(std::move(leaf));
  }
  return rep;
}

TupleRep represent(const CyclicTuple& t) {
  TupleRep rep;
  rep.cyclic = true;
  rep.q = t.q;
  rep.dim = 1;
  rep.k = t.k;
  std::vector<const std::vector<Complex>*> unique;
  for (const auto& s : t.spectra) {
    auto it = std::find_if(unique.begin(), unique.end(), [&](const auto* u) { return *u == s; });
    if (it != unique.end()) {
      rep.ids.push_back(static_cast<int>(it - unique.begin()));
      continue;
    }
    rep.ids.push_back(static_cast<int>(unique.size()));
    unique.push_back(&s);
    rep.leaves.push_back(Table{Box({0}, {t.q}), s});
  }
  return rep;
}

using Ids = std::vector<int>;

int level_of(const Ids& ids) {
  int j = 0;
  while ((std::size_t{1} << j) < ids.size()) ++j;
  return j;
}

Ids first_half(const Ids& ids) { return Ids(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(ids.size() / 2)); }
Ids second_half(const Ids& ids) { return Ids(ids.begin() + static_cast<std::ptrdiff_t>(ids.size() / 2), ids.end()); }

Box full_cyclic_box(std::size_t rank, std::int64_t q) {
  return Box(std::vector<std::int64_t>(rank, 0), std::vector<std::int64_t>(rank, q));
}

/// Support boxes of every node, memoized by leaf-id sequence.
class Supports {
 public:
  explicit Supports(const TupleRep& rep) : rep_(rep) {}

  const Box& operator()(const Ids& ids) {
    auto it = memo_.find(ids);
    if (it != memo_.end()) return it->second;
    Box box;
    const std::size_t d = static_cast<std::size_t>(rep_.dim);
    if (ids.size() == 1) {
      box = rep_.leaves[ids[0]].box;
    } else if (rep_.cyclic) {
      box = full_cyclic_box(d * (static_cast<std::size_t>(level_of(ids)) + 1), rep_.q);
    } else {
      const Box a = (*this)(first_half(ids));
      const Box b = (*this)(second_half(ids));
      const Box xi_a = a.sub(0, d), xi_b = b.sub(0, d);
      const Box h_a = a.sub(d, a.rank() - d), h_b = b.sub(d, b.rank() - d);
      box = box_difference(xi_a, xi_b).concat(box_difference(h_a, h_b)).concat(xi_b);
      if (a.empty() || b.empty()) std::fill(box.extent.begin(), box.extent.end(), 0);
    }
    return memo_.emplace(ids, std::move(box)).first->second;
  }

 private:
  const TupleRep& rep_;
  std::map<Ids, Box> memo_;
};

Frequency add_points(std::span<const std::int64_t> a, std::span<const std::int64_t> b) {
  Frequency r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Frequency reduce(Frequency v, const TupleRep& rep) {
  if (rep.cyclic)
    for (auto& x : v) x = mod_floor(x, rep.q);
  return v;
}

Frequency centered_point(std::span<const std::int64_t> v, const TupleRep& rep) {
  Frequency r(v.begin(), v.end());
  if (rep.cyclic)
    for (auto& x : r) x = centered(x, rep.q);
  return r;
}

// ---------------------------------------------------------------------------
// FFT engine

class Engine {
 public:
  Engine(const TupleRep& rep, const EngineOptions& opt) : rep_(rep), opt_(opt), supports_(rep) {}

  const Table& table(const Ids& ids) {
    auto it = memo_.find(ids);
    if (it != memo_.end()) return it->second;
    Table t;
    if (ids.size() == 1) {
      t = rep_.leaves[ids[0]];
    } else {
      const Box& full = supports_(ids);
      const std::size_t d = static_cast<std::size_t>(rep_.dim);
      t = build(ids, full.sub(0, d), nullptr, full.sub(full.rank() - d, d));
    }
    return memo_.emplace(ids, std::move(t)).first->second;
  }

  /// Values over xi_box x H' x e_box, where H' is the certified eta' box.
  Table build(const Ids& ids, const Box& xi_box, const TruncationSpec* trunc, const Box& e_box) {
    const std::size_t d = static_cast<std::size_t>(rep_.dim);
    const int level = level_of(ids);
    const Ids ids_a = first_half(ids), ids_b = second_half(ids);
    const bool same_child = ids_a == ids_b;
    const Table& ta = table(ids_a);
    const Table& tb = same_child ? ta : table(ids_b);
    const Box xi_a = ta.box.sub(0, d), xi_b = tb.box.sub(0, d);
    const Box h_a = ta.box.sub(d, ta.box.rank() - d), h_b = tb.box.sub(d, tb.box.rank() - d);
    const Box h_out = rep_.cyclic ? full_cyclic_box(h_a.rank(), rep_.q) : box_difference(h_a, h_b);

    Table out;
    out.box = xi_box.concat(h_out).concat(e_box);
    out.data.assign(out.box.size(opt_.max_elements), Complex{});
    if (out.data.empty()) return out;

    const std::size_t na = h_a.size(opt_.max_elements), nb = h_b.size(opt_.max_elements);
    const std::size_t nh = h_out.size(opt_.max_elements);
    const std::size_t ne = e_box.size(opt_.max_elements);
    detail::Correlator corr = rep_.cyclic
                                  ? detail::Correlator::cyclic(h_a.rank(), rep_.q, opt_.direct_threshold)
                                  : detail::Correlator::linear(h_a.extent, h_b.extent, opt_.direct_threshold);

    // Truncation weights on c_j (slice a) and on c_j - eta_j (slice b), j < k.
    std::vector<double> wa, wb;
    const bool inner_trunc = trunc && trunc->j < level;
    const bool outer_trunc = trunc && trunc->j == level;
    if (inner_trunc) {
      const std::size_t first = static_cast<std::size_t>(trunc->j - 1) * d;
      auto weights = [&](const Box& h) {
        std::vector<double> w(h.size());
        for (std::size_t o = 0; o < w.size(); ++o) {
          const Frequency p = h.point(o);
          w[o] = trunc->complement(centered_point(std::span(p).subspan(first, d), rep_));
        }
        return w;
      };
      if (trunc->mode != TruncationMode::SJ_SHIFTED) wa = weights(h_a);
      if (trunc->mode != TruncationMode::SJ_HIGH) wb = weights(h_b);
    }

    const std::size_t nxi = xi_box.size();
    const bool cache = !trunc && corr.uses_fft() && nxi > 1 &&
                       (xi_a.size() + (same_child ? 0 : xi_b.size())) * corr.spectrum_size() <=
                           opt_.spectrum_cache_budget;
    std::vector<std::vector<Complex>> cache_a, cache_b;
    if (cache) {
      cache_a.resize(xi_a.size());
      if (!same_child) cache_b.resize(xi_b.size());
    }
    auto spec_a = [&](std::size_t off) -> const std::vector<Complex>& {
      auto& s = cache_a[off];
      if (s.empty()) s = corr.spectrum_a(ta.data.data() + off * na);
      return s;
    };
    auto spec_b = [&](std::size_t off) -> const std::vector<Complex>& {
      auto& store = same_child ? cache_a : cache_b;
      auto& s = store[off];
      if (s.empty()) s = same_child ? corr.spectrum_a(tb.data.data() + off * nb)
                                    : corr.spectrum_b(tb.data.data() + off * nb);
      return s;
    };

    std::vector<Complex> buf_a, buf_b, tmp(nh);
    for (std::size_t xo = 0; xo < nxi; ++xo) {
      const Frequency x = xi_box.point(xo);
      for (std::size_t eo = 0; eo < ne; ++eo) {
        const Frequency e = e_box.point(eo);
        const Frequency a = reduce(add_points(x, e), rep_);
        if (!xi_a.contains(a) || !xi_b.contains(e)) continue;
        double factor = 1.0;
        if (outer_trunc) {
          const Frequency ca = centered_point(a, rep_), ce = centered_point(e, rep_);
          if (trunc->mode != TruncationMode::SJ_SHIFTED) factor *= trunc->complement(ca);
          if (trunc->mode != TruncationMode::SJ_HIGH) factor *= trunc->complement(ce);
          if (factor == 0.0) continue;
        }
        const std::size_t off_a = xi_a.offset(a), off_b = xi_b.offset(e);
        const Complex* pa = ta.data.data() + off_a * na;
        const Complex* pb = tb.data.data() + off_b * nb;
        if (!wa.empty()) {
          buf_a.assign(pa, pa + na);
          for (std::size_t i = 0; i < na; ++i) buf_a[i] *= wa[i];
          pa = buf_a.data();
        }
        if (!wb.empty()) {
          buf_b.assign(pb, pb + nb);
          for (std::size_t i = 0; i < nb; ++i) buf_b[i] *= wb[i];
          pb = buf_b.data();
        }
        if (cache) {
          corr.correlate_spectra(spec_a(off_a), spec_b(off_b), tmp.data());
        } else if (corr.uses_fft() && same_child && off_a == off_b && wa.empty() && wb.empty()) {
          const auto s = corr.spectrum_a(pa);
          corr.correlate_spectra(s, s, tmp.data());
        } else {
          corr.correlate(pa, pb, tmp.data());
        }
        Complex* dst = out.data.data() + xo * nh * ne + eo;
        for (std::size_t h = 0; h < nh; ++h) dst[h * ne] = factor * tmp[h];
      }
    }
    return out;
  }

  DeltaSlice top_slice(const Frequency& xi, const TruncationSpec* trunc) {
    const std::size_t d = static_cast<std::size_t>(rep_.dim);
    if (static_cast<int>(xi.size()) != rep_.dim) throw std::invalid_argument("xi has the wrong rank");
    if (trunc && (trunc->j < 1 || trunc->j > rep_.k))
      throw std::out_of_range("truncation coordinate j must lie in [1, k]");
    DeltaSlice s;
    s.k = rep_.k;
    s.dim = rep_.dim;
    s.xi = xi;
    s.modulus = rep_.cyclic ? rep_.q : 0;
    const Box& full = supports_(rep_.ids);
    const Box eta_box = full.sub(d, full.rank() - d);
    if (rep_.has_zero || full.empty()) {
      s.box = eta_box;
      std::fill(s.box.extent.begin(), s.box.extent.end(), 0);
      return s;
    }
    const Frequency x = reduce(xi, rep_);
    Box e_box = full.sub(full.rank() - d, d);
    if (!rep_.cyclic) {
      // eta_k must also satisfy xi + eta_k in the support of the first half.
      const Box xi_a = supports_(first_half(rep_.ids)).sub(0, d);
      Box shifted = xi_a;
      for (std::size_t i = 0; i < d; ++i) shifted.lo[i] -= x[i];
      e_box = box_intersection(e_box, shifted);
    }
    const Box xi_box(x, std::vector<std::int64_t>(d, 1));
    Table t = build(rep_.ids, xi_box, trunc, e_box);
    s.box = t.box.sub(d, t.box.rank() - d);
    s.values = std::move(t.data);
    return s;
  }

 private:
  const TupleRep& rep_;
  EngineOptions opt_;
  Supports supports_;
  std::map<Ids, Table> memo_;
};

}  // namespace

// ---------------------------------------------------------------------------
// Point evaluation by direct summation

struct PointState {
  TupleRep rep;
  Supports supports;
  std::map<Ids, std::unordered_map<std::uint64_t, Complex>> memo;

  explicit PointState(TupleRep r) : rep(std::move(r)), supports(rep) {}

  Complex value(const Ids& ids, std::span<const std::int64_t> xi, std::span<const std::int64_t> eta) {
    const std::size_t d = static_cast<std::size_t>(rep.dim);
    Frequency full(xi.begin(), xi.end());
    full.insert(full.end(), eta.begin(), eta.end());
    full = reduce(std::move(full), rep);
    const Box& box = supports(ids);
    if (!box.contains(full)) return {};
    if (ids.size() == 1) {
      const Table& leaf = rep.leaves[ids[0]];
      return leaf.data[leaf.box.offset(full)];
    }
    auto& m = memo[ids];
    const std::uint64_t key = box.offset(full);
    if (auto it = m.find(key); it != m.end()) return it->second;

    const std::span<const std::int64_t> x(full.data(), d);
    const std::span<const std::int64_t> eta_p(full.data() + d, full.size() - 2 * d);
    const std::span<const std::int64_t> e(full.data() + full.size() - d, d);
    const Frequency a = reduce(add_points(x, e), rep);
    const Ids ids_a = first_half(ids), ids_b = second_half(ids);

    // c ranges over H_a intersected with H_b + eta' (all of (Z_q)^r when cyclic).
    const Box& ba = supports(ids_a);
    const Box& bb = supports(ids_b);
    Box range = ba.sub(d, ba.rank() - d);
    if (!rep.cyclic) {
      Box shifted = bb.sub(d, bb.rank() - d);
      for (std::size_t i = 0; i < shifted.rank(); ++i) shifted.lo[i] += eta_p[i];
      range = box_intersection(range, shifted);
    }
    Complex sum{};
    const std::uint64_t n = range.empty() ? 0 : range.size();
    Frequency tb(eta_p.size());
    for (std::uint64_t o = 0; o < n; ++o) {
      const Frequency c = range.point(o);
      for (std::size_t i = 0; i < c.size(); ++i) tb[i] = c[i] - eta_p[i];
      const Complex va = value(ids_a, a, c);
      if (va == Complex{}) continue;
      sum += va * std::conj(value(ids_b, e, tb));
    }
    m.emplace(key, sum);
    return sum;
  }
};

}  // namespace detail

Box certified_box(const MeasureTuple& t, const Frequency& xi) {
  const auto rep = detail::represent(t);
  detail::Supports supports(rep);
  const std::size_t d = static_cast<std::size_t>(rep.dim);
  const Box& full = supports(rep.ids);
  Box eta_box = full.sub(d, full.rank() - d);
  const Box xi_a = supports(detail::first_half(rep.ids)).sub(0, d);
  for (std::size_t i = 0; i < d; ++i) {
    const std::int64_t lo = std::max(eta_box.lo[eta_box.rank() - d + i], xi_a.lo[i] - xi[i]);
    const std::int64_t hi = std::min(eta_box.hi(eta_box.rank() - d + i), xi_a.hi(i) - xi[i]);
    eta_box.lo[eta_box.rank() - d + i] = lo;
    eta_box.extent[eta_box.rank() - d + i] = std::max<std::int64_t>(hi - lo + 1, 0);
  }
  if (rep.has_zero) std::fill(eta_box.extent.begin(), eta_box.extent.end(), 0);
  return eta_box;
}

DeltaSlice delta_slice(const MeasureTuple& t, const Frequency& xi, const EngineOptions& opt) {
  const auto rep = detail::represent(t);
  detail::Engine engine(rep, opt);
  return engine.top_slice(xi, nullptr);
}

DeltaSlice delta_slice(const CyclicTuple& t, std::int64_t xi, const EngineOptions& opt) {
  const auto rep = detail::represent(t);
  detail::Engine engine(rep, opt);
  return engine.top_slice({xi}, nullptr);
}

DeltaSlice delta_slice_truncated(const MeasureTuple& t, const Frequency& xi,
                                 const TruncationSpec& spec, const EngineOptions& opt) {
  const auto rep = detail::represent(t);
  detail::Engine engine(rep, opt);
  return engine.top_slice(xi, &spec);
}

DeltaSlice delta_slice_truncated(const CyclicTuple& t, std::int64_t xi, const TruncationSpec& spec,
                                 const EngineOptions& opt) {
  const auto rep = detail::represent(t);
  detail::Engine engine(rep, opt);
  return engine.top_slice({xi}, &spec);
}

DeltaPointEvaluator::DeltaPointEvaluator(const MeasureTuple& t)
    : state_(std::make_unique<detail::PointState>(detail::represent(t))) {}
DeltaPointEvaluator::DeltaPointEvaluator(const CyclicTuple& t)
    : state_(std::make_unique<detail::PointState>(detail::represent(t))) {}
DeltaPointEvaluator::~DeltaPointEvaluator() = default;
DeltaPointEvaluator::DeltaPointEvaluator(DeltaPointEvaluator&&) noexcept = default;
DeltaPointEvaluator& DeltaPointEvaluator::operator=(DeltaPointEvaluator&&) noexcept = default;

Complex DeltaPointEvaluator::operator()(std::span<const std::int64_t> xi,
                                        std::span<const std::int64_t> eta) {
  const auto& rep = state_->rep;
  if (static_cast<int>(xi.size()) != rep.dim || static_cast<int>(eta.size()) != rep.dim * rep.k)
    throw std::invalid_argument("point has the wrong rank");
  if (rep.has_zero) return {};
  return state_->value(rep.ids, xi, eta);
}

Complex delta_point(const MeasureTuple& t, const Frequency& xi, std::span<const std::int64_t> eta) {
  return DeltaPointEvaluator(t)(xi, eta);
}

Complex delta_point(const CyclicTuple& t, std::int64_t xi, std::span<const std::int64_t> eta) {
  const Frequency x{xi};
  return DeltaPointEvaluator(t)(x, eta);
}

}  // namespace gowers

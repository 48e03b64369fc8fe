#include "gowers/types.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace gowers {

std::int64_t linf_norm(std::span<const std::int64_t> v) {
  std::int64_t m = 0;
  for (auto x : v) m = std::max(m, std::abs(x));
  return m;
}

Box::Box(std::vector<std::int64_t> lo_, std::vector<std::int64_t> extent_)
    : lo(std::move(lo_)), extent(std::move(extent_)) {
  if (lo.size() != extent.size()) throw std::invalid_argument("Box: rank mismatch");
  for (auto& e : extent) e = std::max<std::int64_t>(e, 0);
}

Box Box::from_bounds(std::span<const std::int64_t> lo,
                     std::span<const std::int64_t> hi) {
  if (lo.size() != hi.size()) throw std::invalid_argument("Box: rank mismatch");
  std::vector<std::int64_t> ext(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) ext[i] = hi[i] - lo[i] + 1;
  return Box({lo.begin(), lo.end()}, std::move(ext));
}

bool Box::empty() const {
  return std::any_of(extent.begin(), extent.end(), [](auto e) { return e <= 0; });
}

std::uint64_t Box::size(std::uint64_t max_elements) const {
  std::uint64_t n = 1;
  for (auto e : extent) {
    if (e <= 0) return 0;
    if (__builtin_mul_overflow(n, static_cast<std::uint64_t>(e), &n) || n > max_elements) {
      std::ostringstream msg;
      msg << "support box with extents " << to_string(extent)
          << " exceeds the element budget of " << max_elements;
      throw ResourceError(msg.str());
    }
  }
  return n;
}

bool Box::contains(std::span<const std::int64_t> p) const {
  if (p.size() != rank()) return false;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] < lo[i] || p[i] >= lo[i] + extent[i]) return false;
  return true;
}

std::uint64_t Box::offset(std::span<const std::int64_t> p) const {
  std::uint64_t off = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    off = off * static_cast<std::uint64_t>(extent[i]) + static_cast<std::uint64_t>(p[i] - lo[i]);
  return off;
}

Frequency Box::point(std::uint64_t off) const {
  Frequency p(rank());
  for (std::size_t i = rank(); i-- > 0;) {
    const auto e = static_cast<std::uint64_t>(extent[i]);
    p[i] = lo[i] + static_cast<std::int64_t>(off % e);
    off /= e;
  }
  return p;
}

Box Box::concat(const Box& other) const {
  Box out = *this;
  out.lo.insert(out.lo.end(), other.lo.begin(), other.lo.end());
  out.extent.insert(out.extent.end(), other.extent.begin(), other.extent.end());
  return out;
}

Box Box::sub(std::size_t first, std::size_t count) const {
  return Box({lo.begin() + first, lo.begin() + first + count},
             {extent.begin() + first, extent.begin() + first + count});
}

Box box_difference(const Box& a, const Box& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("box_difference: rank mismatch");
  std::vector<std::int64_t> lo(a.rank()), ext(a.rank());
  const bool empty = a.empty() || b.empty();
  for (std::size_t i = 0; i < a.rank(); ++i) {
    lo[i] = a.lo[i] - b.hi(i);
    ext[i] = empty ? 0 : a.extent[i] + b.extent[i] - 1;
  }
  return Box(std::move(lo), std::move(ext));
}

Box box_intersection(const Box& a, const Box& b) {
  if (a.rank() != b.rank()) throw std::invalid_argument("box_intersection: rank mismatch");
  std::vector<std::int64_t> lo(a.rank()), hi(a.rank());
  for (std::size_t i = 0; i < a.rank(); ++i) {
    lo[i] = std::max(a.lo[i], b.lo[i]);
    hi[i] = std::min(a.hi(i), b.hi(i));
  }
  return Box::from_bounds(lo, hi);
}

std::string to_string(std::span<const std::int64_t> v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << ')';
  return os.str();
}

}  // namespace gowers

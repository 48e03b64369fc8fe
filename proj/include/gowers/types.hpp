#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gowers {

using Complex = std::complex<double>;

/// A lattice point of Z^d (or of (Z^d)^k once blocks are concatenated).
using Frequency = std::vector<std::int64_t>;

/// Raised when a computation would exceed the configured element budget.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Default ceiling on the number of complex entries a single array may hold.
inline constexpr std::uint64_t kDefaultMaxElements = std::uint64_t{1} << 28;

std::int64_t linf_norm(std::span<const std::int64_t> v);

/// Axis-aligned integer box: axis i covers [lo[i], lo[i] + extent[i]).
/// An extent of zero on any axis makes the box empty.
struct Box {
  std::vector<std::int64_t> lo;
  std::vector<std::int64_t> extent;

  Box() = default;
  Box(std::vector<std::int64_t> lo_, std::vector<std::int64_t> extent_);

  static Box from_bounds(std::span<const std::int64_t> lo,
                         std::span<const std::int64_t> hi);

  std::size_t rank() const { return lo.size(); }
  std::int64_t hi(std::size_t axis) const { return lo[axis] + extent[axis] - 1; }
  bool empty() const;

  /// Number of lattice points; throws ResourceError above max_elements.
  std::uint64_t size(std::uint64_t max_elements = kDefaultMaxElements) const;

  bool contains(std::span<const std::int64_t> point) const;

  /// Row-major offset of a point known to lie in the box.
  std::uint64_t offset(std::span<const std::int64_t> point) const;

  /// Inverse of offset().
  Frequency point(std::uint64_t offset) const;

  /// Concatenation of axes: [this..., other...].
  Box concat(const Box& other) const;

  /// Axes [first, first + count).
  Box sub(std::size_t first, std::size_t count) const;

  bool operator==(const Box&) const = default;
};

/// Minkowski difference a - b, axis by axis; empty if either is empty.
Box box_difference(const Box& a, const Box& b);

/// Axis-wise intersection.
Box box_intersection(const Box& a, const Box& b);

/// Representative of x mod q in [0, q).
inline std::int64_t mod_floor(std::int64_t x, std::int64_t q) {
  const std::int64_t r = x % q;
  return r < 0 ? r + q : r;
}

/// Representative of x mod q in (-q/2, q/2].
inline std::int64_t centered(std::int64_t x, std::int64_t q) {
  std::int64_t r = mod_floor(x, q);
  if (2 * r > q) r -= q;
  return r;
}

std::string to_string(std::span<const std::int64_t> v);

}  // namespace gowers

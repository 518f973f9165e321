#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace lowspace {

using Vertex = std::uint32_t;
using Dist = std::uint64_t;
using Weight = std::uint64_t;
using ClusterId = std::uint32_t;

inline constexpr Dist kInfinity = std::numeric_limits<Dist>::max();
inline constexpr Vertex kNoVertex = std::numeric_limits<Vertex>::max();
inline constexpr ClusterId kNoCluster = std::numeric_limits<ClusterId>::max();

// Saturating addition; anything touching kInfinity stays infinite.
constexpr Dist dist_add(Dist a, Dist b) noexcept {
  if (a == kInfinity || b == kInfinity) return kInfinity;
  return (a > kInfinity - b) ? kInfinity : a + b;
}

// FNV-1a over 64-bit words; used for structure fingerprints.
class Fingerprint {
 public:
  void add(std::uint64_t word) noexcept {
    for (int i = 0; i < 8; ++i) {
      h_ ^= (word >> (8 * i)) & 0xffU;
      h_ *= 1099511628211ULL;
    }
  }
  std::uint64_t value() const noexcept { return h_; }

 private:
  std::uint64_t h_ = 1469598103934665603ULL;
};

struct GraphError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Unreachable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Raised when a structural guarantee checked at run time does not hold.
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

struct SerializationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A ball radius. `value` is the real radius used in bounds; `limit` is the
/// largest integer distance it admits (distances are integral, so
/// d <= value  <=>  d <= limit).
struct Radius {
  double value = 0.0;
  Dist limit = 0;

  static Radius from_real(double r);
  /// floor(base^(num/den)) computed exactly in integer arithmetic.
  static Radius power(std::uint64_t base, std::uint64_t num, std::uint64_t den);

  friend bool operator==(const Radius&, const Radius&) = default;
};

}  // namespace lowspace

// Tropical semiring weights: <R>=0 u {inf}, min, +, inf, 0>.

#ifndef WFSM_WEIGHT_H_
#define WFSM_WEIGHT_H_

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

namespace wfsm {

// A non-negative cost or positive infinity. Negative and NaN values are not
// constructible, which is what licenses Dijkstra-style search everywhere.
class TropicalWeight {
 public:
  // Defaults to One() (cost 0).
  constexpr TropicalWeight() = default;
  explicit TropicalWeight(double value);

  static constexpr TropicalWeight Zero() {
    return TropicalWeight(std::numeric_limits<double>::infinity(), Unchecked{});
  }
  static constexpr TropicalWeight One() { return TropicalWeight(); }

  constexpr double Value() const { return value_; }
  bool IsZero() const { return std::isinf(value_); }
  bool IsFinite() const { return !std::isinf(value_); }

  friend constexpr bool operator==(TropicalWeight a, TropicalWeight b) = default;
  friend constexpr auto operator<=>(TropicalWeight a, TropicalWeight b) {
    return a.value_ <=> b.value_;
  }

 private:
  struct Unchecked {};
  constexpr TropicalWeight(double value, Unchecked) : value_(value) {}

  double value_ = 0.0;
};

// The semiring sum: min.
inline TropicalWeight Plus(TropicalWeight a, TropicalWeight b) {
  return a.Value() <= b.Value() ? a : b;
}

// The semiring product: +, with Zero() absorbing.
inline TropicalWeight Times(TropicalWeight a, TropicalWeight b) {
  if (a.IsZero() || b.IsZero()) return TropicalWeight::Zero();
  return TropicalWeight(a.Value() + b.Value());
}

inline constexpr double kWeightDelta = 1e-9;

bool ApproxEqual(TropicalWeight a, TropicalWeight b,
                 double delta = kWeightDelta);

// Shortest decimal that round-trips, or "inf".
std::string FormatWeight(TropicalWeight w);

// Accepts a decimal literal or "inf"; nullopt on anything else, including
// negative values.
std::optional<TropicalWeight> ParseWeight(std::string_view text);

}  // namespace wfsm

#endif  // WFSM_WEIGHT_H_

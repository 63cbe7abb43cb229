#include "wfsm/weight.h"

#include <charconv>
#include <stdexcept>
#include <system_error>

namespace wfsm {

TropicalWeight::TropicalWeight(double value) : value_(value) {
  if (std::isnan(value) || value < 0.0 ||
      value == -std::numeric_limits<double>::infinity()) {
    throw std::invalid_argument("tropical weight must be >= 0 or inf, got " +
                                std::to_string(value));
  }
  if (value_ == 0.0) value_ = 0.0;  // normalize -0.0
}

bool ApproxEqual(TropicalWeight a, TropicalWeight b, double delta) {
  if (a.IsZero() || b.IsZero()) return a.IsZero() == b.IsZero();
  return std::fabs(a.Value() - b.Value()) <= delta;
}

std::string FormatWeight(TropicalWeight w) {
  if (w.IsZero()) return "inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), w.Value());
  if (ec != std::errc()) return std::to_string(w.Value());
  return std::string(buf, end);
}

std::optional<TropicalWeight> ParseWeight(std::string_view text) {
  if (text == "inf" || text == "Infinity") return TropicalWeight::Zero();
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  auto [end, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    return std::nullopt;
  }
  if (std::isnan(value) || value < 0.0 || std::isinf(value)) {
    return std::nullopt;
  }
  return TropicalWeight(value);
}

}  // namespace wfsm

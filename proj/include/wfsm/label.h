// Symbols, symbol sets and per-tape transition labels.

#ifndef WFSM_LABEL_H_
#define WFSM_LABEL_H_

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace wfsm {

// A set of printable ASCII symbols. Also used as a machine alphabet.
class SymbolSet {
 public:
  SymbolSet() = default;
  static SymbolSet Of(std::string_view chars);

  // Only printable, non-space ASCII can be a symbol.
  static bool IsValidSymbol(char c) { return c > ' ' && c < 0x7f; }

  bool Contains(char c) const {
    const auto u = static_cast<unsigned char>(c);
    return u < 128 && ((bits_[u >> 6] >> (u & 63)) & 1u) != 0;
  }
  void Insert(char c);
  void Erase(char c);

  SymbolSet Union(const SymbolSet& other) const;
  SymbolSet Minus(const SymbolSet& other) const;
  bool Empty() const { return bits_[0] == 0 && bits_[1] == 0; }
  int Size() const;

  // Members in ascending byte order.
  std::string Chars() const;

  friend auto operator<=>(const SymbolSet&, const SymbolSet&) = default;

 private:
  std::array<std::uint64_t, 2> bits_{};
};

// Normalized text letters and digits, the separator `_`, the analysis dot
// `.`, and the operation symbols (a, i, u, g, G, 1-8; all but G are already
// letters or digits).
const SymbolSet& StandardAlphabet();

// One tape's label on a transition: a concrete symbol, epsilon, or a
// wildcard admitting every alphabet symbol outside an excluded set.
class Label {
 public:
  enum class Kind : std::uint8_t { kEpsilon, kSymbol, kWildcard };

  static Label Epsilon() { return Label(Kind::kEpsilon, 0, {}); }
  static Label Symbol(char c) { return Label(Kind::kSymbol, c, {}); }
  static Label AnyExcept(SymbolSet excluded) {
    return Label(Kind::kWildcard, 0, excluded);
  }

  Kind kind() const { return kind_; }
  bool IsEpsilon() const { return kind_ == Kind::kEpsilon; }
  bool IsSymbol() const { return kind_ == Kind::kSymbol; }
  bool IsWildcard() const { return kind_ == Kind::kWildcard; }
  char symbol() const { return symbol_; }
  const SymbolSet& excluded() const { return excluded_; }

  // Whether the label can be instantiated by symbol `c`. Epsilon admits
  // nothing.
  bool Admits(char c) const;

  friend auto operator<=>(const Label&, const Label&) = default;

 private:
  Label(Kind kind, char symbol, SymbolSet excluded)
      : kind_(kind), symbol_(symbol), excluded_(excluded) {}

  Kind kind_;
  char symbol_;
  SymbolSet excluded_;
};

}  // namespace wfsm

#endif  // WFSM_LABEL_H_

#include "wfsm/label.h"

#include <bit>
#include <stdexcept>

namespace wfsm {

SymbolSet SymbolSet::Of(std::string_view chars) {
  SymbolSet set;
  for (char c : chars) set.Insert(c);
  return set;
}

void SymbolSet::Insert(char c) {
  if (!IsValidSymbol(c)) {
    throw std::invalid_argument("not a printable ASCII symbol: code " +
                                std::to_string(static_cast<int>(
                                    static_cast<unsigned char>(c))));
  }
  const auto u = static_cast<unsigned char>(c);
  bits_[u >> 6] |= std::uint64_t{1} << (u & 63);
}

void SymbolSet::Erase(char c) {
  const auto u = static_cast<unsigned char>(c);
  if (u >= 128) return;
  bits_[u >> 6] &= ~(std::uint64_t{1} << (u & 63));
}

SymbolSet SymbolSet::Union(const SymbolSet& other) const {
  SymbolSet out;
  out.bits_[0] = bits_[0] | other.bits_[0];
  out.bits_[1] = bits_[1] | other.bits_[1];
  return out;
}

SymbolSet SymbolSet::Minus(const SymbolSet& other) const {
  SymbolSet out;
  out.bits_[0] = bits_[0] & ~other.bits_[0];
  out.bits_[1] = bits_[1] & ~other.bits_[1];
  return out;
}

int SymbolSet::Size() const {
  return std::popcount(bits_[0]) + std::popcount(bits_[1]);
}

std::string SymbolSet::Chars() const {
  std::string out;
  for (int c = 0; c < 128; ++c) {
    if (Contains(static_cast<char>(c))) out.push_back(static_cast<char>(c));
  }
  return out;
}

const SymbolSet& StandardAlphabet() {
  static const SymbolSet kAlphabet =
      SymbolSet::Of("abcdefghijklmnopqrstuvwxyz0123456789_.G");
  return kAlphabet;
}

bool Label::Admits(char c) const {
  switch (kind_) {
    case Kind::kEpsilon:
      return false;
    case Kind::kSymbol:
      return c == symbol_;
    case Kind::kWildcard:
      return !excluded_.Contains(c);
  }
  return false;
}

}  // namespace wfsm

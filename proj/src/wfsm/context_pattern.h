// Compiles context patterns (syntax in wfsm/rewrite.h) to deterministic
// recognizers over a fixed symbol list plus the boundary marker.

#ifndef WFSM_CONTEXT_PATTERN_H_
#define WFSM_CONTEXT_PATTERN_H_

#include <string>
#include <string_view>
#include <vector>

namespace wfsm::internal {

class Dfa {
 public:
  // Symbols are indexed by their position in `symbols`; the boundary marker
  // gets index symbols.size().
  static Dfa Compile(std::string_view pattern, std::string_view symbols,
                     bool match_any_prefix);

  int start() const { return start_; }
  int Next(int state, int symbol) const {
    return table_[state * width_ + symbol];
  }
  bool Accepts(int state) const { return accept_[state]; }
  // True when no continuation can reach acceptance.
  bool IsDead(int state) const { return dead_[state]; }
  int boundary() const { return width_ - 1; }
  int NumStates() const { return static_cast<int>(accept_.size()); }

 private:
  int width_ = 0;
  int start_ = 0;
  std::vector<int> table_;
  std::vector<bool> accept_;
  std::vector<bool> dead_;
};

// Translates a context pattern to an ECMAScript regular expression over the
// same characters, with the boundary spelled '#'.
std::string ToEcmaScript(std::string_view pattern);

}  // namespace wfsm::internal

#endif  // WFSM_CONTEXT_PATTERN_H_

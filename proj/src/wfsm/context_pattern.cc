#include "context_pattern.h"

#include <algorithm>
#include <map>

#include "wfsm/rewrite.h"

namespace wfsm::internal {
namespace {

constexpr std::string_view kOperators = "?#[]()|*+%";

struct Nfa {
  struct State {
    std::vector<std::pair<int, int>> edges;  // (symbol, target)
    std::vector<int> epsilon;
  };
  std::vector<State> states;

  int Add() {
    states.emplace_back();
    return static_cast<int>(states.size()) - 1;
  }
};

struct Fragment {
  int start;
  int accept;
};

// Thompson construction straight from the pattern text.
class Parser {
 public:
  Parser(std::string_view pattern, std::string_view symbols, Nfa& nfa)
      : pattern_(pattern), symbols_(symbols), nfa_(nfa) {}

  Fragment Parse() {
    Fragment f = Alternation();
    SkipSpaces();
    if (pos_ < pattern_.size()) Fail("unmatched ')'");
    return f;
  }

 private:
  int width() const { return static_cast<int>(symbols_.size()) + 1; }

  [[noreturn]] void Fail(const std::string& message) const {
    throw PatternError(pattern_, pos_, message);
  }

  void SkipSpaces() {
    while (pos_ < pattern_.size() && pattern_[pos_] == ' ') ++pos_;
  }

  int SymbolIndex(char c) const {
    const std::size_t i = symbols_.find(c);
    if (i == std::string_view::npos) {
      Fail(std::string("symbol '") + c + "' is not in the rule alphabet");
    }
    return static_cast<int>(i);
  }

  Fragment Set(const std::vector<bool>& members) {
    Fragment f{nfa_.Add(), nfa_.Add()};
    for (int s = 0; s < width(); ++s) {
      if (members[s]) nfa_.states[f.start].edges.emplace_back(s, f.accept);
    }
    return f;
  }

  Fragment Empty() {
    Fragment f{nfa_.Add(), nfa_.Add()};
    nfa_.states[f.start].epsilon.push_back(f.accept);
    return f;
  }

  Fragment Alternation() {
    std::vector<Fragment> branches = {Sequence()};
    SkipSpaces();
    while (pos_ < pattern_.size() && pattern_[pos_] == '|') {
      ++pos_;
      branches.push_back(Sequence());
      SkipSpaces();
    }
    if (branches.size() == 1) return branches.front();
    Fragment f{nfa_.Add(), nfa_.Add()};
    for (const Fragment& b : branches) {
      nfa_.states[f.start].epsilon.push_back(b.start);
      nfa_.states[b.accept].epsilon.push_back(f.accept);
    }
    return f;
  }

  Fragment Sequence() {
    Fragment f = Empty();
    while (true) {
      SkipSpaces();
      if (pos_ >= pattern_.size()) break;
      const char c = pattern_[pos_];
      if (c == '|' || c == ')') break;
      if (c == '*' || c == '+') Fail("nothing to repeat");
      Fragment atom = Atom();
      while (true) {
        SkipSpaces();
        if (pos_ >= pattern_.size()) break;
        if (pattern_[pos_] == '*') {
          atom = Repeat(atom, true);
        } else if (pattern_[pos_] == '+') {
          atom = Repeat(atom, false);
        } else {
          break;
        }
        ++pos_;
      }
      nfa_.states[f.accept].epsilon.push_back(atom.start);
      f.accept = atom.accept;
    }
    return f;
  }

  Fragment Repeat(Fragment inner, bool allow_empty) {
    Fragment f{nfa_.Add(), nfa_.Add()};
    nfa_.states[f.start].epsilon.push_back(inner.start);
    nfa_.states[inner.accept].epsilon.push_back(inner.start);
    nfa_.states[inner.accept].epsilon.push_back(f.accept);
    if (allow_empty) nfa_.states[f.start].epsilon.push_back(f.accept);
    return f;
  }

  Fragment Atom() {
    const char c = pattern_[pos_];
    std::vector<bool> members(width(), false);
    switch (c) {
      case '(': {
        ++pos_;
        Fragment inner = Alternation();
        SkipSpaces();
        if (pos_ >= pattern_.size() || pattern_[pos_] != ')') {
          Fail("missing ')'");
        }
        ++pos_;
        return inner;
      }
      case '?':
        ++pos_;
        std::fill(members.begin(), members.end() - 1, true);
        return Set(members);
      case '#':
        ++pos_;
        members.back() = true;
        return Set(members);
      case '[':
        return Class();
      case ']':
        Fail("unexpected ']'");
      case '%':
        if (pos_ + 1 >= pattern_.size()) Fail("dangling '%'");
        ++pos_;
        [[fallthrough]];
      default:
        members[SymbolIndex(pattern_[pos_])] = true;
        ++pos_;
        return Set(members);
    }
  }

  Fragment Class() {
    const std::size_t open = pos_;
    ++pos_;
    bool negated = false;
    if (pos_ < pattern_.size() && pattern_[pos_] == '^') {
      negated = true;
      ++pos_;
    }
    std::vector<bool> listed(width(), false);
    bool any = false;
    while (true) {
      if (pos_ >= pattern_.size()) {
        pos_ = open;
        Fail("unterminated '['");
      }
      char c = pattern_[pos_];
      if (c == ']') break;
      if (c == '%') {
        if (++pos_ >= pattern_.size()) Fail("dangling '%'");
        c = pattern_[pos_];
      }
      listed[SymbolIndex(c)] = true;
      any = true;
      ++pos_;
    }
    if (!any) Fail("empty symbol class");
    ++pos_;
    if (negated) {
      for (int s = 0; s + 1 < width(); ++s) listed[s] = !listed[s];
    }
    return Set(listed);
  }

  std::string_view pattern_;
  std::string_view symbols_;
  Nfa& nfa_;
  std::size_t pos_ = 0;
};

std::vector<int> Closure(const Nfa& nfa, std::vector<int> states) {
  std::vector<bool> in(nfa.states.size(), false);
  for (int s : states) in[s] = true;
  for (std::size_t i = 0; i < states.size(); ++i) {
    for (int t : nfa.states[states[i]].epsilon) {
      if (!in[t]) {
        in[t] = true;
        states.push_back(t);
      }
    }
  }
  std::sort(states.begin(), states.end());
  return states;
}

}  // namespace

Dfa Dfa::Compile(std::string_view pattern, std::string_view symbols,
                 bool match_any_prefix) {
  Nfa nfa;
  Parser parser(pattern, symbols, nfa);
  const Fragment body = parser.Parse();
  Dfa dfa;
  dfa.width_ = static_cast<int>(symbols.size()) + 1;

  int nfa_start = body.start;
  if (match_any_prefix) {
    nfa_start = nfa.Add();
    for (int s = 0; s < dfa.width_; ++s) {
      nfa.states[nfa_start].edges.emplace_back(s, nfa_start);
    }
    nfa.states[nfa_start].epsilon.push_back(body.start);
  }

  std::map<std::vector<int>, int> ids;
  std::vector<std::vector<int>> subsets;
  auto id_of = [&](std::vector<int> subset) {
    auto [it, inserted] = ids.try_emplace(subset, static_cast<int>(subsets.size()));
    if (inserted) subsets.push_back(std::move(subset));
    return it->second;
  };
  dfa.start_ = id_of(Closure(nfa, {nfa_start}));
  for (std::size_t d = 0; d < subsets.size(); ++d) {
    for (int sym = 0; sym < dfa.width_; ++sym) {
      std::vector<int> targets;
      for (int s : subsets[d]) {
        for (auto [edge_sym, to] : nfa.states[s].edges) {
          if (edge_sym == sym) targets.push_back(to);
        }
      }
      std::sort(targets.begin(), targets.end());
      targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
      const int next = id_of(Closure(nfa, std::move(targets)));
      dfa.table_.push_back(next);
    }
  }
  const int n = static_cast<int>(subsets.size());
  dfa.accept_.resize(n);
  for (int d = 0; d < n; ++d) {
    dfa.accept_[d] = std::binary_search(subsets[d].begin(), subsets[d].end(),
                                        body.accept);
  }
  // A state is live when some accepting state is reachable from it.
  std::vector<bool> live(dfa.accept_.begin(), dfa.accept_.end());
  for (bool changed = true; changed;) {
    changed = false;
    for (int d = 0; d < n; ++d) {
      if (live[d]) continue;
      for (int sym = 0; sym < dfa.width_; ++sym) {
        if (live[dfa.Next(d, sym)]) {
          live[d] = changed = true;
          break;
        }
      }
    }
  }
  dfa.dead_.resize(n);
  for (int d = 0; d < n; ++d) dfa.dead_[d] = !live[d];
  return dfa;
}

std::string ToEcmaScript(std::string_view pattern) {
  constexpr std::string_view kSpecial = "\\^$.|?*+()[]{}/";
  constexpr std::string_view kClassSpecial = "\\]^-[";
  auto escape = [](char c, std::string_view special) {
    std::string out;
    if (special.find(c) != std::string_view::npos) out.push_back('\\');
    out.push_back(c);
    return out;
  };
  std::string out;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const char c = pattern[i];
    switch (c) {
      case ' ':
        break;
      case '%':
        if (i + 1 >= pattern.size()) {
          throw PatternError(pattern, i, "dangling '%'");
        }
        out += escape(pattern[++i], kSpecial);
        break;
      case '?':
        out += "[^#]";
        break;
      case '(':
        out += "(?:";
        break;
      case ')':
      case '|':
      case '*':
      case '+':
      case '#':
        out.push_back(c);
        break;
      case '[': {
        std::size_t j = i + 1;
        const bool negated = j < pattern.size() && pattern[j] == '^';
        if (negated) ++j;
        std::string members;
        while (j < pattern.size() && pattern[j] != ']') {
          if (pattern[j] == '%' && j + 1 < pattern.size()) ++j;
          members += escape(pattern[j], kClassSpecial);
          ++j;
        }
        if (j >= pattern.size()) {
          throw PatternError(pattern, i, "unterminated '['");
        }
        out += negated ? "[^" + members + "#]" : "[" + members + "]";
        i = j;
        break;
      }
      default:
        if (kOperators.find(c) != std::string_view::npos) {
          throw PatternError(pattern, i, "unexpected operator");
        }
        out += escape(c, kSpecial);
    }
  }
  return out;
}

}  // namespace wfsm::internal

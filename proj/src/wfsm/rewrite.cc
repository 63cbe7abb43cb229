#include "wfsm/rewrite.h"

#include <algorithm>
#include <deque>
#include <map>
#include <regex>
#include <tuple>

#include "context_pattern.h"
#include "wfsm/operations.h"

namespace wfsm {

PatternError::PatternError(std::string_view pattern, std::size_t position,
                           const std::string& message)
    : MachineError("pattern '" + std::string(pattern) + "' at position " +
                   std::to_string(position) + ": " + message),
      position_(position) {}

std::string_view OpSymbols() { return "_aiugG12345678"; }

RuleCascade RefinerCascade() {
  RuleCascade cascade = {
      {'i', 'u', "a ?* _", "i* (_|#)"},
      {'i', 'g', "", "i* a"},
      {'g', 'G', "(#|_)", ""},
  };
  std::string position_context = "(#|_)";
  for (char k = '1'; k <= '8'; ++k) {
    std::string left = position_context;
    if (k == '8') left += " [^_]*";
    cascade.push_back({'a', k, left, ""});
    position_context += " [^_]";
  }
  return cascade;
}

struct StringRewriter::Impl {
  RewriteRule rule;
  std::regex left;
  std::regex right;
};

StringRewriter::StringRewriter(const RewriteRule& rule)
    : impl_(std::make_unique<Impl>()) {
  impl_->rule = rule;
  impl_->left = std::regex("(?:" + internal::ToEcmaScript(rule.left_context) +
                           ")$");
  impl_->right = std::regex(
      "^(?:" + internal::ToEcmaScript(rule.right_context) + ")");
}

StringRewriter::~StringRewriter() = default;
StringRewriter::StringRewriter(StringRewriter&&) noexcept = default;
StringRewriter& StringRewriter::operator=(StringRewriter&&) noexcept = default;

std::string StringRewriter::Apply(std::string_view input) const {
  const RewriteRule& rule = impl_->rule;
  const std::string bounded = "#" + std::string(input) + "#";
  std::string out;
  out.reserve(input.size());
  for (std::size_t i = 0; i < input.size(); ++i) {
    const char c = input[i];
    // In `bounded`, input[i] sits at i + 1.
    const bool rewrite =
        c == rule.focus &&
        std::regex_search(bounded.begin(), bounded.begin() + (i + 1),
                          impl_->left) &&
        std::regex_search(bounded.begin() + (i + 2), bounded.end(),
                          impl_->right);
    if (!rewrite) {
      out.push_back(c);
    } else if (rule.replacement) {
      out.push_back(*rule.replacement);
    }
  }
  return out;
}

std::string RewriteOnce(const RewriteRule& rule, std::string_view input) {
  return StringRewriter(rule).Apply(input);
}

std::string RewriteCascade(const RuleCascade& cascade, std::string_view input) {
  std::string current(input);
  for (const RewriteRule& rule : cascade) current = RewriteOnce(rule, current);
  return current;
}

namespace {

// Rule-transducer state: the left-context recognizer's state plus the
// pending right-context checks. `must_match` holds checks for positions that
// were rewritten, `must_fail` for positions whose left context matched but
// were copied. Each pending check is a state of the deterministic
// right-context recognizer, so equal states can be merged.
struct RuleState {
  int left;
  std::vector<int> must_match;
  std::vector<int> must_fail;
  auto operator<=>(const RuleState&) const = default;
};

// Advances pending checks; false when one of them is already violated.
bool Normalize(const internal::Dfa& right, RuleState& state) {
  std::erase_if(state.must_match, [&](int r) { return right.Accepts(r); });
  for (int r : state.must_match) {
    if (right.IsDead(r)) return false;
  }
  for (int r : state.must_fail) {
    if (right.Accepts(r)) return false;
  }
  std::erase_if(state.must_fail, [&](int r) { return right.IsDead(r); });
  for (auto* v : {&state.must_match, &state.must_fail}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  std::vector<int> both;
  std::set_intersection(state.must_match.begin(), state.must_match.end(),
                        state.must_fail.begin(), state.must_fail.end(),
                        std::back_inserter(both));
  return both.empty();
}

}  // namespace

Machine CompileRule(const RewriteRule& rule, std::string_view symbols,
                    const SymbolSet& alphabet) {
  for (char c : symbols) {
    if (!alphabet.Contains(c)) {
      throw MachineError(std::string("rule symbol '") + c +
                         "' is outside the machine alphabet");
    }
  }
  if (symbols.find(rule.focus) == std::string_view::npos) {
    throw MachineError(std::string("focus '") + rule.focus +
                       "' is not a rule symbol");
  }
  if (rule.replacement &&
      symbols.find(*rule.replacement) == std::string_view::npos) {
    throw MachineError(std::string("replacement '") + *rule.replacement +
                       "' is not a rule symbol");
  }
  const auto left =
      internal::Dfa::Compile(rule.left_context, symbols, /*match_any_prefix=*/true);
  const auto right = internal::Dfa::Compile(rule.right_context, symbols,
                                            /*match_any_prefix=*/false);
  const int focus = static_cast<int>(symbols.find(rule.focus));

  Machine m(2, alphabet);
  std::map<RuleState, StateId> ids;
  std::deque<RuleState> queue;
  auto state_for = [&](const RuleState& s) {
    auto [it, inserted] = ids.try_emplace(s, kNoState);
    if (inserted) {
      it->second = m.AddState();
      bool accepting = true;
      for (int r : s.must_match) {
        accepting = accepting && right.Accepts(right.Next(r, right.boundary()));
      }
      for (int r : s.must_fail) {
        accepting = accepting && !right.Accepts(right.Next(r, right.boundary()));
      }
      if (accepting) m.SetFinal(it->second, TropicalWeight::One());
      queue.push_back(s);
    }
    return it->second;
  };
  m.SetInitial(state_for({left.Next(left.start(), left.boundary()), {}, {}}));

  while (!queue.empty()) {
    const RuleState from_state = queue.front();
    queue.pop_front();
    const StateId from = ids.at(from_state);
    for (int sym = 0; sym < static_cast<int>(symbols.size()); ++sym) {
      RuleState advanced{left.Next(from_state.left, sym), {}, {}};
      for (int r : from_state.must_match) {
        advanced.must_match.push_back(right.Next(r, sym));
      }
      for (int r : from_state.must_fail) {
        advanced.must_fail.push_back(right.Next(r, sym));
      }
      const char c = symbols[sym];
      const bool candidate = sym == focus && left.Accepts(from_state.left);
      // Copy.
      RuleState copied = advanced;
      if (candidate) copied.must_fail.push_back(right.start());
      if (Normalize(right, copied)) {
        m.AddTransition(from, SymbolTuple(std::string{c, c}),
                        TropicalWeight::One(), state_for(copied));
      }
      if (!candidate) continue;
      // Rewrite.
      RuleState rewritten = advanced;
      rewritten.must_match.push_back(right.start());
      if (Normalize(right, rewritten)) {
        const Label out = rule.replacement ? Label::Symbol(*rule.replacement)
                                           : Label::Epsilon();
        m.AddTransition(from, LabelTuple({Label::Symbol(c), out}),
                        TropicalWeight::One(), state_for(rewritten));
      }
    }
  }
  return Trim(m);
}

Machine IdentityTransducer(std::string_view symbols, const SymbolSet& alphabet) {
  Machine m(2, alphabet);
  const StateId s = m.AddState();
  m.SetInitial(s);
  m.SetFinal(s, TropicalWeight::One());
  for (char c : symbols) {
    m.AddTransition(s, SymbolTuple(std::string{c, c}), TropicalWeight::One(), s);
  }
  return m;
}

Machine ComposeCascade(std::span<const Machine> machines) {
  if (machines.empty()) throw MachineError("compose: empty cascade");
  for (const Machine& m : machines) {
    if (m.arity() != 2) {
      throw MachineError("compose: cascade member of arity " +
                         std::to_string(m.arity()));
    }
  }
  Machine acc = machines.front();
  const Tape keep[] = {1, 3};
  for (std::size_t i = 1; i < machines.size(); ++i) {
    acc = RemoveEpsilons(Project(Join(acc, machines[i], TapePair{2, 1}), keep));
  }
  return acc;
}

}  // namespace wfsm

// Obligatory single-symbol rewrite rules with regular left and right
// contexts, a direct string implementation of them, and a compiler from
// rules to 2-tape machines.
//
// Context patterns use this syntax (spaces are ignored):
//
//   x       the symbol x
//   %x      the symbol x even when x is an operator character
//   ?       any symbol
//   #       the string boundary
//   [xyz]   one of the listed symbols; [^xyz] any symbol but those
//   ( )     grouping
//   |       alternation; empty branches are allowed
//   * +     repetition
//
// A left context must match a suffix of "#" + (input before the focus); a
// right context must match a prefix of (input after the focus) + "#". Both
// are evaluated on the input of the rule, and all positions are rewritten
// simultaneously.

#ifndef WFSM_REWRITE_H_
#define WFSM_REWRITE_H_

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wfsm/machine.h"

namespace wfsm {

class PatternError : public MachineError {
 public:
  PatternError(std::string_view pattern, std::size_t position,
               const std::string& message);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

struct RewriteRule {
  char focus;
  std::optional<char> replacement;  // nullopt deletes the focus
  std::string left_context;
  std::string right_context;
};

using RuleCascade = std::vector<RewriteRule>;

// The symbols of operation strings: separator, a, i, u, g, G and 1-8.
std::string_view OpSymbols();

// The cascade that refines raw a/i/_ operation strings:
//   i -> u   on the first letter of an all-i word preceded by an earlier `a`
//   i -> g   before an `a` in the same word
//   g -> G   word-initially
//   a -> k   at letter position k of its word, k = 1..8 (8 = "8 or later")
RuleCascade RefinerCascade();

// Applies one rule to a string, directly on characters (no automata).
class StringRewriter {
 public:
  explicit StringRewriter(const RewriteRule& rule);
  ~StringRewriter();
  StringRewriter(StringRewriter&&) noexcept;
  StringRewriter& operator=(StringRewriter&&) noexcept;

  std::string Apply(std::string_view input) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

std::string RewriteOnce(const RewriteRule& rule, std::string_view input);
std::string RewriteCascade(const RuleCascade& cascade, std::string_view input);

// A 2-tape machine relating every string over `symbols` to its rewrite
// under `rule`, and nothing else. All weights are One().
Machine CompileRule(const RewriteRule& rule,
                    std::string_view symbols = OpSymbols(),
                    const SymbolSet& alphabet = StandardAlphabet());

// Copies every string over `symbols`.
Machine IdentityTransducer(std::string_view symbols = OpSymbols(),
                           const SymbolSet& alphabet = StandardAlphabet());

// Composes 2-tape machines left to right: output tape of one joined to the
// input tape of the next, inner tapes removed.
Machine ComposeCascade(std::span<const Machine> machines);

}  // namespace wfsm

#endif  // WFSM_REWRITE_H_

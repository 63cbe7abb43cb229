// Constructive algorithms on multitape machines. None of them mutate their
// operands. Tape numbers are 1-based.

#ifndef WFSM_OPERATIONS_H_
#define WFSM_OPERATIONS_H_

#include <map>
#include <span>
#include <string>

#include "wfsm/machine.h"

namespace wfsm {

// Two-state machine accepting exactly `tuple` at `weight`.
Machine Atom(const LabelTuple& tuple, TropicalWeight weight,
             const SymbolSet& alphabet = StandardAlphabet());

// Accepts nothing.
Machine EmptyLanguage(int arity, const SymbolSet& alphabet = StandardAlphabet());

// Accepts only the all-empty tuple, at weight One().
Machine EmptyString(int arity, const SymbolSet& alphabet = StandardAlphabet());

// A tuple accepted by both operands gets the min of its two weights.
Machine Union(const Machine& a, const Machine& b);
Machine Concat(const Machine& a, const Machine& b);
Machine Star(const Machine& m);

struct TapePair {
  Tape left;   // tape of the first operand
  Tape right;  // tape of the second operand
};

// Natural join. The result has the tapes of `a` in order, followed by the
// tapes of `b` that are not paired, in order. Shared tapes keep a's
// position. Epsilon moves on the shared tapes are interleaved through a
// three-state filter so each pair of operand paths yields one result path.
//
// With several pairs, a transition counts as an epsilon move only when it
// is epsilon on all of its shared tapes; otherwise both operands must move
// together with position-wise matching shared labels.
Machine Join(const Machine& a, const Machine& b,
             std::span<const TapePair> pairs);
Machine Join(const Machine& a, const Machine& b, TapePair pair);

// Fixes the listed tapes to the given strings and removes them. Wildcards
// constrained equal to a bound tape are instantiated on the remaining tapes.
Machine Bind(const Machine& m, const std::map<Tape, std::string>& bindings);

// Keeps the listed tapes, in the listed order.
Machine Project(const Machine& m, std::span<const Tape> keep);

// Drops states that are not on some initial-to-final path.
Machine Trim(const Machine& m);

// Removes transitions that are epsilon on every tape, folding their weights
// into the remaining transitions and final weights. The result is trimmed.
Machine RemoveEpsilons(const Machine& m);

}  // namespace wfsm

#endif  // WFSM_OPERATIONS_H_

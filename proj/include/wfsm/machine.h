// The n-tape weighted finite-state machine over the tropical semiring.

#ifndef WFSM_MACHINE_H_
#define WFSM_MACHINE_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wfsm/label.h"
#include "wfsm/weight.h"

namespace wfsm {

class MachineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using StateId = std::int32_t;
inline constexpr StateId kNoState = -1;

// Tapes are numbered from 1 in every public interface.
using Tape = int;

// One label per tape plus an equality constraint: each group lists tapes
// whose wildcards must be instantiated by the same symbol.
//
// The constructor canonicalizes: groups are sorted, and all wildcards of a
// group share the union of their excluded sets (a symbol excluded on one
// member can never be the common instantiation).
class LabelTuple {
 public:
  LabelTuple() = default;
  explicit LabelTuple(std::vector<Label> labels,
                      std::vector<std::vector<Tape>> equal_tapes = {});

  int arity() const { return static_cast<int>(labels_.size()); }
  const std::vector<Label>& labels() const { return labels_; }
  const Label& label(Tape tape) const { return labels_.at(tape - 1); }
  const std::vector<std::vector<Tape>>& equal_tapes() const {
    return equal_tapes_;
  }

  // Group index of `tape`, or -1 when unconstrained.
  int GroupOf(Tape tape) const;
  bool AllEpsilon() const;

  friend auto operator<=>(const LabelTuple&, const LabelTuple&) = default;

 private:
  std::vector<Label> labels_;
  std::vector<std::vector<Tape>> equal_tapes_;
};

struct Transition {
  LabelTuple tuple;
  TropicalWeight weight;
  StateId next = kNoState;
};

// Mutable while being built; every algorithm takes machines by const
// reference and returns a new one. A machine with no states (or no initial
// state) accepts nothing.
class Machine {
 public:
  explicit Machine(int arity, SymbolSet alphabet = StandardAlphabet());

  int arity() const { return arity_; }
  const SymbolSet& alphabet() const { return alphabet_; }

  StateId AddState();
  int NumStates() const { return static_cast<int>(states_.size()); }
  std::size_t NumTransitions() const;

  StateId initial() const { return initial_; }
  void SetInitial(StateId state);

  TropicalWeight final_weight(StateId state) const {
    return states_.at(state).final_weight;
  }
  bool IsFinal(StateId state) const { return !final_weight(state).IsZero(); }
  void SetFinal(StateId state, TropicalWeight weight);

  // Validates arity, state ids, constraint shape and that every concrete
  // symbol belongs to the alphabet.
  void AddTransition(StateId from, LabelTuple tuple, TropicalWeight weight,
                     StateId to);
  std::span<const Transition> transitions(StateId state) const {
    return states_.at(state).transitions;
  }

  bool IsEmpty() const { return initial_ == kNoState; }

 private:
  struct State {
    TropicalWeight final_weight = TropicalWeight::Zero();
    std::vector<Transition> transitions;
  };

  void CheckState(StateId state) const;

  int arity_;
  SymbolSet alphabet_;
  StateId initial_ = kNoState;
  std::vector<State> states_;
};

// Convenience for building tuples of concrete symbols and epsilons: each
// character of `spec` is a symbol, except '~' which stands for epsilon.
LabelTuple SymbolTuple(std::string_view spec);

}  // namespace wfsm

#endif  // WFSM_MACHINE_H_

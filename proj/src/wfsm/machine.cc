#include "wfsm/machine.h"

#include <algorithm>
#include <numeric>

namespace wfsm {

LabelTuple::LabelTuple(std::vector<Label> labels,
                       std::vector<std::vector<Tape>> equal_tapes)
    : labels_(std::move(labels)) {
  std::vector<bool> used(labels_.size(), false);
  for (auto& group : equal_tapes) {
    if (group.size() < 2) {
      throw MachineError("equality constraint group needs at least 2 tapes");
    }
    std::sort(group.begin(), group.end());
    SymbolSet excluded;
    for (Tape tape : group) {
      if (tape < 1 || tape > arity()) {
        throw MachineError("equality constraint names tape " +
                           std::to_string(tape) + " of a " +
                           std::to_string(arity()) + "-tuple");
      }
      if (used[tape - 1]) {
        throw MachineError("tape " + std::to_string(tape) +
                           " appears in more than one constraint position");
      }
      used[tape - 1] = true;
      const Label& label = labels_[tape - 1];
      if (!label.IsWildcard()) {
        throw MachineError("equality constraint on tape " +
                           std::to_string(tape) +
                           " which does not carry a wildcard");
      }
      excluded = excluded.Union(label.excluded());
    }
    for (Tape tape : group) labels_[tape - 1] = Label::AnyExcept(excluded);
  }
  std::sort(equal_tapes.begin(), equal_tapes.end());
  equal_tapes_ = std::move(equal_tapes);
}

int LabelTuple::GroupOf(Tape tape) const {
  for (std::size_t g = 0; g < equal_tapes_.size(); ++g) {
    if (std::find(equal_tapes_[g].begin(), equal_tapes_[g].end(), tape) !=
        equal_tapes_[g].end()) {
      return static_cast<int>(g);
    }
  }
  return -1;
}

bool LabelTuple::AllEpsilon() const {
  return std::all_of(labels_.begin(), labels_.end(),
                     [](const Label& l) { return l.IsEpsilon(); });
}

Machine::Machine(int arity, SymbolSet alphabet)
    : arity_(arity), alphabet_(alphabet) {
  if (arity < 0) throw MachineError("negative arity");
}

StateId Machine::AddState() {
  states_.emplace_back();
  return static_cast<StateId>(states_.size() - 1);
}

std::size_t Machine::NumTransitions() const {
  return std::accumulate(
      states_.begin(), states_.end(), std::size_t{0},
      [](std::size_t n, const State& s) { return n + s.transitions.size(); });
}

void Machine::CheckState(StateId state) const {
  if (state < 0 || state >= NumStates()) {
    throw MachineError("no such state: " + std::to_string(state));
  }
}

void Machine::SetInitial(StateId state) {
  CheckState(state);
  initial_ = state;
}

void Machine::SetFinal(StateId state, TropicalWeight weight) {
  CheckState(state);
  states_[state].final_weight = weight;
}

void Machine::AddTransition(StateId from, LabelTuple tuple,
                            TropicalWeight weight, StateId to) {
  CheckState(from);
  CheckState(to);
  if (tuple.arity() != arity_) {
    throw MachineError("label tuple of arity " +
                       std::to_string(tuple.arity()) + " on a " +
                       std::to_string(arity_) + "-tape machine");
  }
  for (const Label& label : tuple.labels()) {
    if (label.IsSymbol() && !alphabet_.Contains(label.symbol())) {
      throw MachineError(std::string("symbol '") + label.symbol() +
                         "' is not in the machine alphabet");
    }
  }
  states_[from].transitions.push_back({std::move(tuple), weight, to});
}

LabelTuple SymbolTuple(std::string_view spec) {
  std::vector<Label> labels;
  labels.reserve(spec.size());
  for (char c : spec) {
    labels.push_back(c == '~' ? Label::Epsilon() : Label::Symbol(c));
  }
  return LabelTuple(std::move(labels));
}

}  // namespace wfsm

#include "wfsm/operations.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <deque>
#include <numeric>
#include <optional>
#include <queue>
#include <unordered_map>
#include <utility>
#include <vector>

namespace wfsm {
namespace {

void CheckSameShape(const Machine& a, const Machine& b, const char* op) {
  if (a.arity() != b.arity()) {
    throw MachineError(std::string(op) + ": arity mismatch (" +
                       std::to_string(a.arity()) + " vs " +
                       std::to_string(b.arity()) + ")");
  }
  if (a.alphabet() != b.alphabet()) {
    throw MachineError(std::string(op) + ": alphabet mismatch");
  }
}

LabelTuple EpsilonTuple(int arity) {
  return LabelTuple(std::vector<Label>(arity, Label::Epsilon()));
}

// Copies all states and transitions of `src` into `dst`; returns the offset
// added to src's state ids. Final weights are copied too.
StateId CopyInto(Machine& dst, const Machine& src) {
  const StateId offset = dst.NumStates();
  for (StateId s = 0; s < src.NumStates(); ++s) dst.AddState();
  for (StateId s = 0; s < src.NumStates(); ++s) {
    dst.SetFinal(s + offset, src.final_weight(s));
    for (const Transition& t : src.transitions(s)) {
      dst.AddTransition(s + offset, t.tuple, t.weight, t.next + offset);
    }
  }
  return offset;
}

// Union-find over label positions of two tuples being joined.
class Classes {
 public:
  explicit Classes(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int Find(int x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void Merge(int x, int y) { parent_[Find(x)] = Find(y); }

 private:
  std::vector<int> parent_;
};

// Combines a transition of each operand that move together. Positions of
// `a` come first, then positions of `b`; `b_kept` lists b's unpaired tapes.
std::optional<LabelTuple> MergeTuples(const LabelTuple& a, const LabelTuple& b,
                                      std::span<const TapePair> pairs,
                                      std::span<const Tape> b_kept,
                                      const SymbolSet& alphabet) {
  const int na = a.arity();
  const int nb = b.arity();
  Classes classes(na + nb);
  for (const auto& group : a.equal_tapes()) {
    for (Tape t : group) classes.Merge(t - 1, group.front() - 1);
  }
  for (const auto& group : b.equal_tapes()) {
    for (Tape t : group) classes.Merge(na + t - 1, na + group.front() - 1);
  }
  for (const TapePair& p : pairs) classes.Merge(p.left - 1, na + p.right - 1);

  auto label_at = [&](int pos) -> const Label& {
    return pos < na ? a.labels()[pos] : b.labels()[pos - na];
  };

  struct Resolved {
    bool seen = false;
    bool epsilon = false;
    bool non_epsilon = false;
    bool has_symbol = false;
    char symbol = 0;
    SymbolSet excluded;
  };
  std::vector<Resolved> resolved(na + nb);
  for (int pos = 0; pos < na + nb; ++pos) {
    Resolved& r = resolved[classes.Find(pos)];
    const Label& label = label_at(pos);
    r.seen = true;
    if (label.IsEpsilon()) {
      r.epsilon = true;
      continue;
    }
    r.non_epsilon = true;
    if (label.IsSymbol()) {
      if (r.has_symbol && r.symbol != label.symbol()) return std::nullopt;
      r.has_symbol = true;
      r.symbol = label.symbol();
    } else {
      r.excluded = r.excluded.Union(label.excluded());
    }
  }
  for (const Resolved& r : resolved) {
    if (!r.seen) continue;
    if (r.epsilon && r.non_epsilon) return std::nullopt;
    if (r.has_symbol &&
        (r.excluded.Contains(r.symbol) || !alphabet.Contains(r.symbol))) {
      return std::nullopt;
    }
    if (r.non_epsilon && !r.has_symbol &&
        alphabet.Minus(r.excluded).Empty()) {
      return std::nullopt;
    }
  }

  std::vector<int> result_positions;
  result_positions.reserve(na + b_kept.size());
  for (int pos = 0; pos < na; ++pos) result_positions.push_back(pos);
  for (Tape t : b_kept) result_positions.push_back(na + t - 1);

  std::vector<Label> labels;
  labels.reserve(result_positions.size());
  std::unordered_map<int, std::vector<Tape>> groups_by_class;
  for (std::size_t i = 0; i < result_positions.size(); ++i) {
    const int root = classes.Find(result_positions[i]);
    const Resolved& r = resolved[root];
    if (r.epsilon) {
      labels.push_back(Label::Epsilon());
    } else if (r.has_symbol) {
      labels.push_back(Label::Symbol(r.symbol));
    } else {
      labels.push_back(Label::AnyExcept(r.excluded));
      groups_by_class[root].push_back(static_cast<Tape>(i + 1));
    }
  }
  std::vector<std::vector<Tape>> groups;
  for (auto& [root, tapes] : groups_by_class) {
    if (tapes.size() >= 2) groups.push_back(std::move(tapes));
  }
  return LabelTuple(std::move(labels), std::move(groups));
}

bool SharedEpsilon(const LabelTuple& tuple, std::span<const TapePair> pairs,
                   bool left_side) {
  return std::all_of(pairs.begin(), pairs.end(), [&](const TapePair& p) {
    return tuple.label(left_side ? p.left : p.right).IsEpsilon();
  });
}

// Pads a left-operand tuple with epsilons on b's kept tapes.
LabelTuple LeftAlone(const LabelTuple& a, std::size_t kept) {
  std::vector<Label> labels = a.labels();
  labels.resize(labels.size() + kept, Label::Epsilon());
  return LabelTuple(std::move(labels), a.equal_tapes());
}

// Epsilons on a's tapes followed by b's kept tapes.
LabelTuple RightAlone(int na, const LabelTuple& b,
                      std::span<const Tape> b_kept) {
  std::vector<Label> labels(na, Label::Epsilon());
  std::vector<Tape> new_index(b.arity() + 1, 0);
  for (std::size_t i = 0; i < b_kept.size(); ++i) {
    labels.push_back(b.label(b_kept[i]));
    new_index[b_kept[i]] = na + static_cast<Tape>(i) + 1;
  }
  std::vector<std::vector<Tape>> groups;
  for (const auto& group : b.equal_tapes()) {
    std::vector<Tape> mapped;
    for (Tape t : group) {
      if (new_index[t] != 0) mapped.push_back(new_index[t]);
    }
    if (mapped.size() >= 2) groups.push_back(std::move(mapped));
  }
  return LabelTuple(std::move(labels), std::move(groups));
}

// Both operands take a shared-epsilon move at once.
LabelTuple BothAlone(const LabelTuple& a, const LabelTuple& b,
                     std::span<const Tape> b_kept) {
  LabelTuple right = RightAlone(a.arity(), b, b_kept);
  std::vector<Label> labels = a.labels();
  for (std::size_t i = 0; i < b_kept.size(); ++i) {
    labels.push_back(right.labels()[a.arity() + i]);
  }
  std::vector<std::vector<Tape>> groups = a.equal_tapes();
  for (const auto& group : right.equal_tapes()) groups.push_back(group);
  return LabelTuple(std::move(labels), std::move(groups));
}

}  // namespace

Machine Atom(const LabelTuple& tuple, TropicalWeight weight,
             const SymbolSet& alphabet) {
  Machine m(tuple.arity(), alphabet);
  const StateId start = m.AddState();
  const StateId end = m.AddState();
  m.SetInitial(start);
  m.SetFinal(end, TropicalWeight::One());
  m.AddTransition(start, tuple, weight, end);
  return m;
}

Machine EmptyLanguage(int arity, const SymbolSet& alphabet) {
  return Machine(arity, alphabet);
}

Machine EmptyString(int arity, const SymbolSet& alphabet) {
  Machine m(arity, alphabet);
  const StateId s = m.AddState();
  m.SetInitial(s);
  m.SetFinal(s, TropicalWeight::One());
  return m;
}

Machine Union(const Machine& a, const Machine& b) {
  CheckSameShape(a, b, "union");
  Machine out(a.arity(), a.alphabet());
  const StateId start = out.AddState();
  out.SetInitial(start);
  const LabelTuple eps = EpsilonTuple(a.arity());
  for (const Machine* operand : {&a, &b}) {
    if (operand->IsEmpty()) continue;
    const StateId offset = CopyInto(out, *operand);
    out.AddTransition(start, eps, TropicalWeight::One(),
                      operand->initial() + offset);
  }
  return out;
}

Machine Concat(const Machine& a, const Machine& b) {
  CheckSameShape(a, b, "concat");
  if (a.IsEmpty() || b.IsEmpty()) return EmptyLanguage(a.arity(), a.alphabet());
  Machine out(a.arity(), a.alphabet());
  const StateId a_offset = CopyInto(out, a);
  const StateId b_offset = CopyInto(out, b);
  out.SetInitial(a.initial() + a_offset);
  const LabelTuple eps = EpsilonTuple(a.arity());
  for (StateId s = 0; s < a.NumStates(); ++s) {
    if (!a.IsFinal(s)) continue;
    out.AddTransition(s + a_offset, eps, a.final_weight(s),
                      b.initial() + b_offset);
    out.SetFinal(s + a_offset, TropicalWeight::Zero());
  }
  return out;
}

Machine Star(const Machine& m) {
  Machine out(m.arity(), m.alphabet());
  const StateId start = out.AddState();
  out.SetInitial(start);
  out.SetFinal(start, TropicalWeight::One());
  if (m.IsEmpty()) return out;
  const StateId offset = CopyInto(out, m);
  const LabelTuple eps = EpsilonTuple(m.arity());
  out.AddTransition(start, eps, TropicalWeight::One(), m.initial() + offset);
  for (StateId s = 0; s < m.NumStates(); ++s) {
    if (!m.IsFinal(s)) continue;
    out.AddTransition(s + offset, eps, m.final_weight(s), start);
    out.SetFinal(s + offset, TropicalWeight::Zero());
  }
  return out;
}

Machine Join(const Machine& a, const Machine& b, TapePair pair) {
  return Join(a, b, std::span<const TapePair>(&pair, 1));
}

Machine Join(const Machine& a, const Machine& b,
             std::span<const TapePair> pairs) {
  if (a.alphabet() != b.alphabet()) {
    throw MachineError("join: alphabet mismatch");
  }
  if (pairs.empty()) throw MachineError("join: no tape pairs given");
  std::vector<bool> left_used(a.arity() + 1, false);
  std::vector<bool> right_used(b.arity() + 1, false);
  for (const TapePair& p : pairs) {
    if (p.left < 1 || p.left > a.arity() || p.right < 1 ||
        p.right > b.arity()) {
      throw MachineError("join: tape pair (" + std::to_string(p.left) + "," +
                         std::to_string(p.right) + ") out of range");
    }
    if (left_used[p.left] || right_used[p.right]) {
      throw MachineError("join: a tape is paired twice");
    }
    left_used[p.left] = right_used[p.right] = true;
  }
  std::vector<Tape> b_kept;
  for (Tape t = 1; t <= b.arity(); ++t) {
    if (!right_used[t]) b_kept.push_back(t);
  }

  const int result_arity = a.arity() + static_cast<int>(b_kept.size());
  Machine out(result_arity, a.alphabet());
  if (a.IsEmpty() || b.IsEmpty()) return out;

  // Filter state 0: anything goes. 1: only the left operand may continue
  // alone. 2: only the right operand may continue alone. A joint move always
  // returns to 0.
  struct Key {
    StateId left;
    StateId right;
    int filter;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return (static_cast<std::size_t>(k.left) * 1000003u) ^
             (static_cast<std::size_t>(k.right) * 31u) ^
             static_cast<std::size_t>(k.filter);
    }
  };
  std::unordered_map<Key, StateId, KeyHash> ids;
  std::deque<Key> queue;
  auto state_for = [&](const Key& key) {
    auto [it, inserted] = ids.try_emplace(key, kNoState);
    if (inserted) {
      it->second = out.AddState();
      out.SetFinal(it->second, Times(a.final_weight(key.left),
                                     b.final_weight(key.right)));
      queue.push_back(key);
    }
    return it->second;
  };
  out.SetInitial(state_for({a.initial(), b.initial(), 0}));

  while (!queue.empty()) {
    const Key key = queue.front();
    queue.pop_front();
    const StateId from = ids.at(key);
    for (const Transition& ta : a.transitions(key.left)) {
      const bool a_eps = SharedEpsilon(ta.tuple, pairs, true);
      if (a_eps) {
        if (key.filter != 2) {
          out.AddTransition(from, LeftAlone(ta.tuple, b_kept.size()),
                            ta.weight, state_for({ta.next, key.right, 1}));
        }
        if (key.filter == 0) {
          for (const Transition& tb : b.transitions(key.right)) {
            if (!SharedEpsilon(tb.tuple, pairs, false)) continue;
            out.AddTransition(from, BothAlone(ta.tuple, tb.tuple, b_kept),
                              Times(ta.weight, tb.weight),
                              state_for({ta.next, tb.next, 0}));
          }
        }
        continue;
      }
      for (const Transition& tb : b.transitions(key.right)) {
        if (SharedEpsilon(tb.tuple, pairs, false)) continue;
        std::optional<LabelTuple> merged =
            MergeTuples(ta.tuple, tb.tuple, pairs, b_kept, a.alphabet());
        if (!merged) continue;
        out.AddTransition(from, std::move(*merged),
                          Times(ta.weight, tb.weight),
                          state_for({ta.next, tb.next, 0}));
      }
    }
    if (key.filter != 1) {
      for (const Transition& tb : b.transitions(key.right)) {
        if (!SharedEpsilon(tb.tuple, pairs, false)) continue;
        out.AddTransition(from, RightAlone(a.arity(), tb.tuple, b_kept),
                          tb.weight, state_for({key.left, tb.next, 2}));
      }
    }
  }
  return Trim(out);
}

Machine Bind(const Machine& m, const std::map<Tape, std::string>& bindings) {
  std::vector<Tape> bound;
  std::vector<const std::string*> strings;
  std::vector<Tape> new_index(m.arity() + 1, 0);
  for (const auto& [tape, text] : bindings) {
    if (tape < 1 || tape > m.arity()) {
      throw MachineError("bind: no tape " + std::to_string(tape) + " on a " +
                         std::to_string(m.arity()) + "-tape machine");
    }
    for (char c : text) {
      if (!m.alphabet().Contains(c)) {
        throw MachineError("bind: symbol '" + std::string(1, c) +
                           "' on tape " + std::to_string(tape) +
                           " is outside the alphabet");
      }
    }
    bound.push_back(tape);
    strings.push_back(&text);
  }
  Tape next_tape = 1;
  for (Tape t = 1; t <= m.arity(); ++t) {
    if (!bindings.contains(t)) new_index[t] = next_tape++;
  }
  const int result_arity = m.arity() - static_cast<int>(bound.size());
  Machine out(result_arity, m.alphabet());
  if (m.IsEmpty()) return out;

  // Dense key: state, then one position per bound tape.
  std::vector<std::int64_t> stride(bound.size());
  std::int64_t positions_size = 1;
  for (std::size_t i = 0; i < bound.size(); ++i) {
    stride[i] = positions_size;
    positions_size *= static_cast<std::int64_t>(strings[i]->size()) + 1;
  }
  std::unordered_map<std::int64_t, StateId> ids;
  std::deque<std::pair<StateId, std::vector<std::size_t>>> queue;
  auto state_for = [&](StateId q, const std::vector<std::size_t>& pos) {
    std::int64_t key = 0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      key += static_cast<std::int64_t>(pos[i]) * stride[i];
    }
    key += static_cast<std::int64_t>(q) * positions_size;
    auto [it, inserted] = ids.try_emplace(key, kNoState);
    if (inserted) {
      it->second = out.AddState();
      bool at_end = true;
      for (std::size_t i = 0; i < pos.size(); ++i) {
        at_end = at_end && pos[i] == strings[i]->size();
      }
      if (at_end) out.SetFinal(it->second, m.final_weight(q));
      queue.emplace_back(q, pos);
    }
    return it->second;
  };
  out.SetInitial(state_for(m.initial(), std::vector<std::size_t>(bound.size(), 0)));

  std::vector<char> group_symbol;
  while (!queue.empty()) {
    auto [q, pos] = std::move(queue.front());
    queue.pop_front();
    const StateId from = state_for(q, pos);
    for (const Transition& t : m.transitions(q)) {
      const LabelTuple& tuple = t.tuple;
      group_symbol.assign(tuple.equal_tapes().size(), 0);
      std::vector<std::size_t> next_pos = pos;
      bool ok = true;
      for (std::size_t i = 0; i < bound.size() && ok; ++i) {
        const Label& label = tuple.label(bound[i]);
        if (label.IsEpsilon()) continue;
        if (pos[i] >= strings[i]->size()) {
          ok = false;
          break;
        }
        const char c = (*strings[i])[pos[i]];
        if (!label.Admits(c)) {
          ok = false;
          break;
        }
        const int g = tuple.GroupOf(bound[i]);
        if (g >= 0) {
          if (group_symbol[g] != 0 && group_symbol[g] != c) ok = false;
          group_symbol[g] = c;
        }
        ++next_pos[i];
      }
      if (!ok) continue;
      std::vector<Label> labels;
      labels.reserve(result_arity);
      for (Tape tape = 1; tape <= m.arity(); ++tape) {
        if (new_index[tape] == 0) continue;
        const int g = tuple.GroupOf(tape);
        if (g >= 0 && group_symbol[g] != 0) {
          labels.push_back(Label::Symbol(group_symbol[g]));
        } else {
          labels.push_back(tuple.label(tape));
        }
      }
      std::vector<std::vector<Tape>> groups;
      for (std::size_t g = 0; g < tuple.equal_tapes().size(); ++g) {
        if (group_symbol[g] != 0) continue;
        std::vector<Tape> mapped;
        for (Tape tape : tuple.equal_tapes()[g]) {
          mapped.push_back(new_index[tape]);
        }
        groups.push_back(std::move(mapped));
      }
      out.AddTransition(from, LabelTuple(std::move(labels), std::move(groups)),
                        t.weight, state_for(t.next, next_pos));
    }
  }
  return Trim(out);
}

Machine Project(const Machine& m, std::span<const Tape> keep) {
  if (keep.empty()) throw MachineError("project: no tapes to keep");
  std::vector<Tape> new_index(m.arity() + 1, 0);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const Tape t = keep[i];
    if (t < 1 || t > m.arity()) {
      throw MachineError("project: no tape " + std::to_string(t));
    }
    if (new_index[t] != 0) {
      throw MachineError("project: tape " + std::to_string(t) +
                         " listed twice");
    }
    new_index[t] = static_cast<Tape>(i) + 1;
  }
  Machine out(static_cast<int>(keep.size()), m.alphabet());
  for (StateId s = 0; s < m.NumStates(); ++s) out.AddState();
  if (!m.IsEmpty()) out.SetInitial(m.initial());
  for (StateId s = 0; s < m.NumStates(); ++s) {
    out.SetFinal(s, m.final_weight(s));
    for (const Transition& t : m.transitions(s)) {
      std::vector<Label> labels;
      labels.reserve(keep.size());
      for (Tape tape : keep) labels.push_back(t.tuple.label(tape));
      std::vector<std::vector<Tape>> groups;
      for (const auto& group : t.tuple.equal_tapes()) {
        std::vector<Tape> mapped;
        for (Tape tape : group) {
          if (new_index[tape] != 0) mapped.push_back(new_index[tape]);
        }
        if (mapped.size() >= 2) groups.push_back(std::move(mapped));
      }
      out.AddTransition(s, LabelTuple(std::move(labels), std::move(groups)),
                        t.weight, t.next);
    }
  }
  return out;
}

Machine Trim(const Machine& m) {
  Machine out(m.arity(), m.alphabet());
  if (m.IsEmpty()) return out;
  const int n = m.NumStates();
  std::vector<bool> accessible(n, false);
  std::vector<std::vector<StateId>> reverse(n);
  std::vector<StateId> stack = {m.initial()};
  accessible[m.initial()] = true;
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    for (const Transition& t : m.transitions(s)) {
      if (t.weight.IsZero()) continue;
      reverse[t.next].push_back(s);
      if (!accessible[t.next]) {
        accessible[t.next] = true;
        stack.push_back(t.next);
      }
    }
  }
  std::vector<bool> coaccessible(n, false);
  for (StateId s = 0; s < n; ++s) {
    if (accessible[s] && m.IsFinal(s)) {
      coaccessible[s] = true;
      stack.push_back(s);
    }
  }
  while (!stack.empty()) {
    const StateId s = stack.back();
    stack.pop_back();
    for (StateId p : reverse[s]) {
      if (!coaccessible[p]) {
        coaccessible[p] = true;
        stack.push_back(p);
      }
    }
  }
  if (!coaccessible[m.initial()]) return out;
  std::vector<StateId> new_id(n, kNoState);
  for (StateId s = 0; s < n; ++s) {
    if (accessible[s] && coaccessible[s]) new_id[s] = out.AddState();
  }
  out.SetInitial(new_id[m.initial()]);
  for (StateId s = 0; s < n; ++s) {
    if (new_id[s] == kNoState) continue;
    out.SetFinal(new_id[s], m.final_weight(s));
    for (const Transition& t : m.transitions(s)) {
      if (t.weight.IsZero() || new_id[t.next] == kNoState) continue;
      out.AddTransition(new_id[s], t.tuple, t.weight, new_id[t.next]);
    }
  }
  return out;
}

Machine RemoveEpsilons(const Machine& m) {
  if (m.IsEmpty()) return Machine(m.arity(), m.alphabet());
  const int n = m.NumStates();
  Machine out(m.arity(), m.alphabet());
  for (StateId s = 0; s < n; ++s) out.AddState();
  out.SetInitial(m.initial());

  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<StateId> touched;
  using Entry = std::pair<double, StateId>;
  for (StateId source = 0; source < n; ++source) {
    // Epsilon closure of `source` by Dijkstra; weights are non-negative.
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[source] = 0.0;
    touched.assign(1, source);
    heap.emplace(0.0, source);
    std::vector<StateId> order;
    while (!heap.empty()) {
      auto [d, s] = heap.top();
      heap.pop();
      if (d > dist[s]) continue;
      order.push_back(s);
      for (const Transition& t : m.transitions(s)) {
        if (!t.tuple.AllEpsilon() || t.weight.IsZero()) continue;
        const double nd = d + t.weight.Value();
        if (nd < dist[t.next]) {
          if (std::isinf(dist[t.next])) touched.push_back(t.next);
          dist[t.next] = nd;
          heap.emplace(nd, t.next);
        }
      }
    }
    TropicalWeight final_weight = TropicalWeight::Zero();
    std::map<std::pair<StateId, LabelTuple>, TropicalWeight> arcs;
    for (StateId s : order) {
      const TropicalWeight reach(dist[s]);
      final_weight = Plus(final_weight, Times(reach, m.final_weight(s)));
      for (const Transition& t : m.transitions(s)) {
        if (t.tuple.AllEpsilon()) continue;
        auto [it, inserted] = arcs.try_emplace({t.next, t.tuple},
                                               Times(reach, t.weight));
        if (!inserted) it->second = Plus(it->second, Times(reach, t.weight));
      }
    }
    out.SetFinal(source, final_weight);
    // Sorted by (target, tuple), so the output is deterministic.
    for (const auto& [key, weight] : arcs) {
      out.AddTransition(source, key.second, weight, key.first);
    }
    for (StateId s : touched) dist[s] = std::numeric_limits<double>::infinity();
  }
  return Trim(out);
}

}  // namespace wfsm

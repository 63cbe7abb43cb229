#include "wfsm/paths.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <unordered_set>
#include <utility>

#include "wfsm/operations.h"

namespace wfsm {
namespace {

// Past this many extra tied results we stop looking for lexicographically
// smaller ones; only reachable with infinitely many equal-weight tuples.
constexpr std::size_t kMaxExtraTies = 4096;

// Every concrete instantiation of a tuple: one piece per tape, empty for
// epsilon.
std::vector<std::vector<std::string>> Instantiate(const LabelTuple& tuple,
                                                  const SymbolSet& alphabet) {
  const int n = tuple.arity();
  // Each "slot" is an independent choice: a group or an ungrouped wildcard.
  std::vector<std::vector<Tape>> slots = tuple.equal_tapes();
  for (Tape t = 1; t <= n; ++t) {
    if (tuple.label(t).IsWildcard() && tuple.GroupOf(t) < 0) {
      slots.push_back({t});
    }
  }
  std::vector<std::string> base(n);
  for (Tape t = 1; t <= n; ++t) {
    const Label& label = tuple.label(t);
    if (label.IsSymbol()) base[t - 1] = std::string(1, label.symbol());
  }
  std::vector<std::vector<std::string>> out = {base};
  for (const auto& slot : slots) {
    const std::string choices =
        alphabet.Minus(tuple.label(slot.front()).excluded()).Chars();
    std::vector<std::vector<std::string>> next;
    next.reserve(out.size() * choices.size());
    for (const auto& partial : out) {
      for (char c : choices) {
        auto filled = partial;
        for (Tape t : slot) filled[t - 1] = std::string(1, c);
        next.push_back(std::move(filled));
      }
    }
    out = std::move(next);
  }
  return out;
}

std::string TupleKey(StateId state, const std::vector<std::string>& tuple) {
  std::string key = std::to_string(state);
  for (const auto& s : tuple) {
    key.push_back('\x01');
    key += s;
  }
  return key;
}

struct Item {
  double priority;  // cost so far plus exact remaining cost
  double cost;
  StateId state;    // kNoState marks a completed result
  std::vector<std::string> tuple;
};

std::size_t TotalLength(const std::vector<std::string>& tuple) {
  std::size_t n = 0;
  for (const auto& s : tuple) n += s.size();
  return n;
}

// Equal priorities are explored shortest tuple first. Lexicographic order
// here could descend forever along a zero-weight cycle; the tie group is
// sorted lexicographically when it is flushed.
struct ItemAfter {
  bool operator()(const Item& x, const Item& y) const {
    if (x.priority != y.priority) return x.priority > y.priority;
    const bool x_done = x.state == kNoState;
    const bool y_done = y.state == kNoState;
    if (x_done != y_done) return y_done;
    const std::size_t x_length = TotalLength(x.tuple);
    const std::size_t y_length = TotalLength(y.tuple);
    if (x_length != y_length) return x_length > y_length;
    return x.tuple > y.tuple;
  }
};

}  // namespace

std::vector<TropicalWeight> ShortestDistanceToFinal(const Machine& m) {
  const int n = m.NumStates();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<std::vector<std::pair<StateId, double>>> reverse(n);
  using Entry = std::pair<double, StateId>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (StateId s = 0; s < n; ++s) {
    for (const Transition& t : m.transitions(s)) {
      if (!t.weight.IsZero()) reverse[t.next].emplace_back(s, t.weight.Value());
    }
    if (m.IsFinal(s)) {
      dist[s] = m.final_weight(s).Value();
      heap.emplace(dist[s], s);
    }
  }
  while (!heap.empty()) {
    auto [d, s] = heap.top();
    heap.pop();
    if (d > dist[s]) continue;
    for (auto [p, w] : reverse[s]) {
      if (d + w < dist[p]) {
        dist[p] = d + w;
        heap.emplace(dist[p], p);
      }
    }
  }
  std::vector<TropicalWeight> out;
  out.reserve(n);
  for (double d : dist) out.push_back(TropicalWeight(d));
  return out;
}

std::vector<PathResult> EnumeratePaths(const Machine& m, std::size_t limit) {
  std::vector<PathResult> results;
  if (m.IsEmpty() || limit == 0) return results;
  const std::vector<TropicalWeight> remaining = ShortestDistanceToFinal(m);
  if (remaining[m.initial()].IsZero()) return results;

  std::priority_queue<Item, std::vector<Item>, ItemAfter> queue;
  std::unordered_set<std::string> expanded;
  std::unordered_set<std::string> emitted;
  std::vector<PathResult> ties;

  auto flush = [&] {
    std::sort(ties.begin(), ties.end(),
              [](const PathResult& x, const PathResult& y) {
                return x.strings < y.strings;
              });
    for (auto& r : ties) {
      if (results.size() >= limit) break;
      results.push_back(std::move(r));
    }
    ties.clear();
  };

  queue.push({remaining[m.initial()].Value(), 0.0, m.initial(),
              std::vector<std::string>(m.arity())});
  while (!queue.empty() && results.size() < limit) {
    Item item = queue.top();
    queue.pop();
    if (!ties.empty() &&
        (item.priority > ties.front().weight.Value() + kWeightDelta ||
         ties.size() > (limit - results.size()) + kMaxExtraTies)) {
      flush();
      if (results.size() >= limit) break;
    }
    if (item.state == kNoState) {
      if (emitted.insert(TupleKey(kNoState, item.tuple)).second) {
        ties.push_back({std::move(item.tuple), TropicalWeight(item.cost)});
      }
      continue;
    }
    if (!expanded.insert(TupleKey(item.state, item.tuple)).second) continue;
    if (m.IsFinal(item.state)) {
      const double total = item.cost + m.final_weight(item.state).Value();
      queue.push({total, total, kNoState, item.tuple});
    }
    for (const Transition& t : m.transitions(item.state)) {
      if (t.weight.IsZero() || remaining[t.next].IsZero()) continue;
      const double cost = item.cost + t.weight.Value();
      const double priority = cost + remaining[t.next].Value();
      for (auto& pieces : Instantiate(t.tuple, m.alphabet())) {
        std::vector<std::string> tuple = item.tuple;
        for (std::size_t i = 0; i < tuple.size(); ++i) tuple[i] += pieces[i];
        queue.push({priority, cost, t.next, std::move(tuple)});
      }
    }
  }
  flush();
  if (results.size() > limit) results.resize(limit);
  return results;
}

std::optional<PathResult> BestPath(const Machine& m) {
  std::vector<PathResult> best = EnumeratePaths(m, 1);
  if (best.empty()) return std::nullopt;
  return std::move(best.front());
}

TropicalWeight WeightOf(const Machine& m, std::span<const std::string> tuple) {
  if (static_cast<int>(tuple.size()) != m.arity()) {
    throw MachineError("weight_of: tuple of size " +
                       std::to_string(tuple.size()) + " for a " +
                       std::to_string(m.arity()) + "-tape machine");
  }
  for (const auto& s : tuple) {
    for (char c : s) {
      if (!m.alphabet().Contains(c)) return TropicalWeight::Zero();
    }
  }
  std::map<Tape, std::string> bindings;
  for (std::size_t i = 0; i < tuple.size(); ++i) {
    bindings.emplace(static_cast<Tape>(i + 1), tuple[i]);
  }
  const Machine bound = Bind(m, bindings);
  if (bound.IsEmpty()) return TropicalWeight::Zero();
  return ShortestDistanceToFinal(bound)[bound.initial()];
}

}  // namespace wfsm

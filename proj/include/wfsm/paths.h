// Path queries: shortest distances, n-best enumeration, best path and the
// weight a machine assigns to a specific tuple.

#ifndef WFSM_PATHS_H_
#define WFSM_PATHS_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wfsm/machine.h"

namespace wfsm {

struct PathResult {
  std::vector<std::string> strings;  // one per tape, epsilons removed
  TropicalWeight weight;
};

// For every state, the least weight of a path from it to acceptance
// (final weight included). Unreachable-to-final states get Zero().
std::vector<TropicalWeight> ShortestDistanceToFinal(const Machine& m);

// Distinct tuples in non-decreasing weight order, each at its least weight.
// Tuples whose weights are equal within kWeightDelta come out in
// lexicographic order (tape 1 first). Wildcards are instantiated over the
// machine alphabet. At most `limit` results; for cyclic machines the limit
// is what guarantees termination.
std::vector<PathResult> EnumeratePaths(const Machine& m, std::size_t limit);

// The least-weight tuple, ties broken lexicographically; nullopt when the
// machine accepts nothing.
std::optional<PathResult> BestPath(const Machine& m);

// The min over all accepting paths labelled with `tuple`; Zero() when the
// tuple is rejected.
TropicalWeight WeightOf(const Machine& m, std::span<const std::string> tuple);

}  // namespace wfsm

#endif  // WFSM_PATHS_H_

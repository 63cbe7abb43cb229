// Builds the acronym-meaning extractor from its component machines.
//
// Tapes of the full 6-tape extractor:
//   1 text chunk   2 acronym   3 dotted analysis   4 raw operations (a/i/_)
//   5 trimmed analysis         6 refined operations
// The 3-tape extractor keeps tapes 1, 2 and 5.

#ifndef ACRO_EXTRACTOR_H_
#define ACRO_EXTRACTOR_H_

#include <map>
#include <string>
#include <string_view>

#include "wfsm/machine.h"

namespace acro {

using wfsm::Machine;
using wfsm::TropicalWeight;

// Cost of each refined operation symbol.
class CostTable {
 public:
  // _ i 1 : 0, 2 : 1, 3 : 1.5, ... 8 : 4 (half a unit per position), u : 2,
  // g : 1, G : 3.
  static CostTable Default();

  // Must cover every symbol of Symbols() with a finite cost.
  static CostTable FromMap(const std::map<char, TropicalWeight>& costs);

  // `symbol = weight` lines; `#` starts a comment. Listed symbols override
  // the defaults. Throws std::invalid_argument naming the line.
  static CostTable Parse(std::string_view text);
  static CostTable Load(const std::string& path);

  static std::string_view Symbols() { return "_iugG12345678"; }

  TropicalWeight cost(char op) const { return costs_.at(op); }
  const std::map<char, TropicalWeight>& costs() const { return costs_; }

  // Sum of per-symbol costs; Zero() if a symbol has no cost.
  TropicalWeight Score(std::string_view ops) const;

 private:
  std::map<char, TropicalWeight> costs_;
};

// 4 tapes: chunk, acronym, dotted analysis, raw operations. Every chunk
// letter is either used by the acronym (dot inserted, op `a`) or ignored
// (op `i`); separators map to themselves.
Machine BuildAlignmentCore();

// 2 tapes: raw operations to refined operations (see RefinerCascade).
Machine BuildOpRefiner();

// 2 tapes: deletes the leading words without a dot, and their separators.
Machine BuildPrefixTrimmer();

// 1 tape: every operation string, weighted by the sum of its symbol costs.
Machine BuildCostModel(const CostTable& costs);

struct ExtractorBundle {
  Machine a1{4};
  Machine a2{2};
  Machine a3{2};
  Machine a5{1};
  Machine a4{6};      // (a1 join a3) join a2, before costs
  Machine acro6{6};
  Machine acro3{3};
  Machine annotator{3};  // a4 on tapes 1, 5, 6: chunk, trimmed analysis, ops
};

ExtractorBundle Assemble(Machine a1, Machine a2, Machine a3, Machine a5);
ExtractorBundle BuildExtractor(const CostTable& costs = CostTable::Default());

// The cost-free annotator alone; relates (chunk, trimmed analysis) to the
// refined operation string.
Machine BuildOpAnnotator();

}  // namespace acro

#endif  // ACRO_EXTRACTOR_H_

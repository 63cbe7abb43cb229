#include "acro/extractor.h"

#include <optional>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "wfsm/operations.h"
#include "wfsm/rewrite.h"

namespace acro {

using wfsm::Label;
using wfsm::LabelTuple;
using wfsm::SymbolSet;
using wfsm::SymbolTuple;
using wfsm::Tape;
using wfsm::TapePair;

CostTable CostTable::Default() {
  CostTable table;
  table.costs_ = {
      {'_', TropicalWeight(0)},   {'i', TropicalWeight(0)},
      {'u', TropicalWeight(2)},   {'g', TropicalWeight(1)},
      {'G', TropicalWeight(3)},   {'1', TropicalWeight(0)},
      {'2', TropicalWeight(1)},   {'3', TropicalWeight(1.5)},
      {'4', TropicalWeight(2)},   {'5', TropicalWeight(2.5)},
      {'6', TropicalWeight(3)},   {'7', TropicalWeight(3.5)},
      {'8', TropicalWeight(4)},
  };
  return table;
}

CostTable CostTable::FromMap(const std::map<char, TropicalWeight>& costs) {
  CostTable table;
  for (char op : Symbols()) {
    auto it = costs.find(op);
    if (it == costs.end()) {
      throw std::invalid_argument(std::string("cost table has no entry for '") +
                                  op + "'");
    }
    if (!it->second.IsFinite()) {
      throw std::invalid_argument(std::string("cost of '") + op +
                                  "' must be finite");
    }
    table.costs_.emplace(op, it->second);
  }
  if (costs.size() != table.costs_.size()) {
    throw std::invalid_argument("cost table lists an unknown symbol");
  }
  return table;
}

CostTable CostTable::Parse(std::string_view text) {
  std::map<char, TropicalWeight> costs = Default().costs_;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string line;
  auto trim = [](std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return std::string_view();
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view content = line;
    if (const auto hash = content.find('#'); hash != std::string_view::npos) {
      content = content.substr(0, hash);
    }
    content = trim(content);
    if (content.empty()) continue;
    auto fail = [&](const std::string& why) {
      throw std::invalid_argument("cost file line " + std::to_string(line_no) +
                                  ": " + why);
    };
    const auto eq = content.find('=');
    if (eq == std::string_view::npos) fail("expected 'symbol = weight'");
    const std::string_view symbol = trim(content.substr(0, eq));
    const std::string_view value = trim(content.substr(eq + 1));
    if (symbol.size() != 1 || Symbols().find(symbol[0]) == std::string_view::npos) {
      fail("unknown operation symbol '" + std::string(symbol) + "'");
    }
    const auto weight = wfsm::ParseWeight(value);
    if (!weight || !weight->IsFinite()) {
      fail("bad weight '" + std::string(value) + "'");
    }
    costs.insert_or_assign(symbol[0], *weight);
  }
  return FromMap(costs);
}

CostTable CostTable::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open cost file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str());
}

TropicalWeight CostTable::Score(std::string_view ops) const {
  TropicalWeight total = TropicalWeight::One();
  for (char op : ops) {
    auto it = costs_.find(op);
    if (it == costs_.end()) return TropicalWeight::Zero();
    total = wfsm::Times(total, it->second);
  }
  return total;
}

Machine BuildAlignmentCore() {
  const Label eps = Label::Epsilon();
  const Label letter = Label::AnyExcept(SymbolSet::Of("_"));
  const TropicalWeight free = TropicalWeight::One();

  const Machine dot = wfsm::Atom(
      LabelTuple({eps, eps, Label::Symbol('.'), eps}), free);
  const Machine used = wfsm::Atom(
      LabelTuple({letter, letter, letter, Label::Symbol('a')}, {{1, 2, 3}}),
      free);
  const Machine ignored = wfsm::Atom(
      LabelTuple({letter, eps, letter, Label::Symbol('i')}, {{1, 3}}), free);
  const Machine separator = wfsm::Atom(SymbolTuple("_~__"), free);

  return wfsm::RemoveEpsilons(wfsm::Star(wfsm::Union(
      wfsm::Union(wfsm::Concat(dot, used), ignored), separator)));
}

Machine BuildOpRefiner() {
  std::vector<Machine> rules;
  for (const auto& rule : wfsm::RefinerCascade()) {
    rules.push_back(wfsm::CompileRule(rule));
  }
  return wfsm::ComposeCascade(rules);
}

Machine BuildPrefixTrimmer() {
  const Label eps = Label::Epsilon();
  const Label letter = Label::AnyExcept(SymbolSet::Of("_."));
  const Label any = Label::AnyExcept({});
  const Label dot = Label::Symbol('.');
  const Label sep = Label::Symbol('_');
  const TropicalWeight free = TropicalWeight::One();

  Machine m(2);
  // Deleting: at a word start / inside a word. Keeping: inside the first
  // kept word before its first dot / everything after that dot.
  const auto delete_start = m.AddState();
  const auto delete_word = m.AddState();
  const auto keep_undotted = m.AddState();
  const auto keep_rest = m.AddState();
  m.SetInitial(delete_start);
  m.SetFinal(delete_start, free);
  m.SetFinal(delete_word, free);
  m.SetFinal(keep_rest, free);

  m.AddTransition(delete_start, LabelTuple({letter, eps}), free, delete_word);
  m.AddTransition(delete_start, LabelTuple({sep, eps}), free, delete_start);
  m.AddTransition(delete_word, LabelTuple({letter, eps}), free, delete_word);
  m.AddTransition(delete_word, LabelTuple({sep, eps}), free, delete_start);
  m.AddTransition(delete_start, LabelTuple({letter, letter}, {{1, 2}}), free,
                  keep_undotted);
  m.AddTransition(delete_start, LabelTuple({dot, dot}), free, keep_rest);
  m.AddTransition(keep_undotted, LabelTuple({letter, letter}, {{1, 2}}), free,
                  keep_undotted);
  m.AddTransition(keep_undotted, LabelTuple({dot, dot}), free, keep_rest);
  m.AddTransition(keep_rest, LabelTuple({any, any}, {{1, 2}}), free,
                  keep_rest);
  return m;
}

Machine BuildCostModel(const CostTable& costs) {
  std::optional<Machine> ops;
  for (char op : CostTable::Symbols()) {
    auto it = costs.costs().find(op);
    if (it == costs.costs().end()) {
      throw std::invalid_argument(std::string("no cost for operation '") + op +
                                  "'");
    }
    Machine atom = wfsm::Atom(SymbolTuple(std::string(1, op)), it->second);
    ops = ops ? wfsm::Union(*ops, atom) : std::move(atom);
  }
  return wfsm::RemoveEpsilons(wfsm::Star(*ops));
}

namespace {

Machine JoinCore(const Machine& a1, const Machine& a2, const Machine& a3) {
  const Machine with_trimmed = wfsm::Trim(wfsm::Join(a1, a3, TapePair{3, 1}));
  return wfsm::Trim(wfsm::Join(with_trimmed, a2, TapePair{4, 1}));
}

Machine AnnotatorFrom(const Machine& a4) {
  const Tape keep[] = {1, 5, 6};
  return wfsm::RemoveEpsilons(wfsm::Project(a4, keep));
}

}  // namespace

ExtractorBundle Assemble(Machine a1, Machine a2, Machine a3, Machine a5) {
  ExtractorBundle bundle;
  bundle.a4 = JoinCore(a1, a2, a3);
  bundle.acro6 = wfsm::Trim(wfsm::Join(bundle.a4, a5, TapePair{6, 1}));
  const Tape keep[] = {1, 2, 5};
  bundle.acro3 = wfsm::RemoveEpsilons(wfsm::Project(bundle.acro6, keep));
  bundle.annotator = AnnotatorFrom(bundle.a4);
  bundle.a1 = std::move(a1);
  bundle.a2 = std::move(a2);
  bundle.a3 = std::move(a3);
  bundle.a5 = std::move(a5);
  return bundle;
}

ExtractorBundle BuildExtractor(const CostTable& costs) {
  return Assemble(BuildAlignmentCore(), BuildOpRefiner(), BuildPrefixTrimmer(),
                  BuildCostModel(costs));
}

Machine BuildOpAnnotator() {
  return AnnotatorFrom(
      JoinCore(BuildAlignmentCore(), BuildOpRefiner(), BuildPrefixTrimmer()));
}

}  // namespace acro

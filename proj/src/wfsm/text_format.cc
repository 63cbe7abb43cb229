#include "wfsm/text_format.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

namespace wfsm {
namespace {

constexpr std::string_view kEpsilonToken = "<eps>";
constexpr std::string_view kWildcardToken = "<any-not>";

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) fields.push_back(line.substr(start, i - start));
  }
  return fields;
}

std::string FormatLabel(const Label& label) {
  switch (label.kind()) {
    case Label::Kind::kEpsilon:
      return std::string(kEpsilonToken);
    case Label::Kind::kSymbol:
      return std::string(1, label.symbol());
    case Label::Kind::kWildcard:
      return std::string(kWildcardToken) + label.excluded().Chars();
  }
  return {};
}

}  // namespace

FormatError::FormatError(std::size_t line, const std::string& message)
    : MachineError("line " + std::to_string(line) + ": " + message),
      line_(line) {}

std::string Serialize(const Machine& m) {
  std::ostringstream out;
  out << "NWFSM " << m.arity() << " tropical\n";
  if (m.IsEmpty()) return out.str();
  out << "I " << m.initial() << "\n";
  for (StateId s = 0; s < m.NumStates(); ++s) {
    if (m.IsFinal(s)) {
      out << "F " << s << " " << FormatWeight(m.final_weight(s)) << "\n";
    }
  }
  for (StateId s = 0; s < m.NumStates(); ++s) {
    for (const Transition& t : m.transitions(s)) {
      out << "T " << s << " " << t.next;
      for (const Label& label : t.tuple.labels()) {
        out << " " << FormatLabel(label);
      }
      out << " " << FormatWeight(t.weight);
      const auto& groups = t.tuple.equal_tapes();
      for (std::size_t g = 0; g < groups.size(); ++g) {
        out << " C " << g + 1 << ":";
        for (std::size_t i = 0; i < groups[g].size(); ++i) {
          if (i > 0) out << ",";
          out << groups[g][i];
        }
      }
      out << "\n";
    }
  }
  return out.str();
}

namespace {

class Reader {
 public:
  explicit Reader(std::size_t line) : line_(line) {}

  long Integer(std::string_view field, const char* what) const {
    long value = 0;
    auto [end, ec] =
        std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || end != field.data() + field.size() || value < 0) {
      Fail(std::string("bad ") + what + " '" + std::string(field) + "'");
    }
    return value;
  }

  TropicalWeight Weight(std::string_view field) const {
    auto w = ParseWeight(field);
    if (!w) Fail("bad weight '" + std::string(field) + "'");
    return *w;
  }

  Label ParseLabel(std::string_view field) const {
    if (field == kEpsilonToken) return Label::Epsilon();
    if (field.starts_with(kWildcardToken)) {
      SymbolSet excluded;
      for (char c : field.substr(kWildcardToken.size())) {
        if (!SymbolSet::IsValidSymbol(c)) Fail("bad wildcard exclusion");
        excluded.Insert(c);
      }
      return Label::AnyExcept(excluded);
    }
    if (field.size() != 1) Fail("bad label '" + std::string(field) + "'");
    return Label::Symbol(field[0]);
  }

  [[noreturn]] void Fail(const std::string& message) const {
    throw FormatError(line_, message);
  }

 private:
  std::size_t line_;
};

}  // namespace

Machine Deserialize(std::string_view text) {
  std::optional<Machine> machine;
  long initial = -1;
  struct PendingTransition {
    std::size_t line;
    long from, to;
    LabelTuple tuple;
    TropicalWeight weight;
  };
  std::vector<PendingTransition> transitions;
  std::vector<std::pair<long, TropicalWeight>> finals;
  long max_state = -1;
  std::size_t line_no = 0;
  std::size_t initial_line = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto fields = SplitFields(line);
    if (fields.empty() || fields[0].starts_with("#")) {
      if (end == text.size()) break;
      continue;
    }
    const Reader r(line_no);
    if (!machine) {
      if (fields.size() != 3 || fields[0] != "NWFSM" ||
          fields[2] != "tropical") {
        r.Fail("expected header 'NWFSM <arity> tropical'");
      }
      machine.emplace(static_cast<int>(r.Integer(fields[1], "arity")));
    } else if (fields[0] == "I") {
      if (fields.size() != 2) r.Fail("expected 'I <state>'");
      if (initial >= 0) r.Fail("second initial state");
      initial = r.Integer(fields[1], "state id");
      initial_line = line_no;
      max_state = std::max(max_state, initial);
    } else if (fields[0] == "F") {
      if (fields.size() != 3) r.Fail("expected 'F <state> <weight>'");
      const long s = r.Integer(fields[1], "state id");
      finals.emplace_back(s, r.Weight(fields[2]));
      max_state = std::max(max_state, s);
    } else if (fields[0] == "T") {
      const std::size_t n = static_cast<std::size_t>(machine->arity());
      if (fields.size() < 4 + n) r.Fail("transition has too few fields");
      const long from = r.Integer(fields[1], "state id");
      const long to = r.Integer(fields[2], "state id");
      std::vector<Label> labels;
      for (std::size_t i = 0; i < n; ++i) {
        labels.push_back(r.ParseLabel(fields[3 + i]));
      }
      const TropicalWeight weight = r.Weight(fields[3 + n]);
      std::vector<std::vector<Tape>> groups;
      for (std::size_t i = 4 + n; i < fields.size(); i += 2) {
        if (fields[i] != "C" || i + 1 >= fields.size()) {
          r.Fail("expected 'C <group>:<tape>,...'");
        }
        const std::string_view clause = fields[i + 1];
        const std::size_t colon = clause.find(':');
        if (colon == std::string_view::npos) r.Fail("constraint lacks ':'");
        r.Integer(clause.substr(0, colon), "constraint group");
        std::vector<Tape> tapes;
        std::string_view rest = clause.substr(colon + 1);
        while (true) {
          const std::size_t comma = rest.find(',');
          tapes.push_back(static_cast<Tape>(
              r.Integer(rest.substr(0, comma), "constraint tape")));
          if (comma == std::string_view::npos) break;
          rest = rest.substr(comma + 1);
        }
        groups.push_back(std::move(tapes));
      }
      try {
        transitions.push_back(
            {line_no, from, to, LabelTuple(std::move(labels), std::move(groups)),
             weight});
      } catch (const MachineError& e) {
        r.Fail(e.what());
      }
      max_state = std::max({max_state, from, to});
    } else {
      r.Fail("unknown record '" + std::string(fields[0]) + "'");
    }
    if (end == text.size()) break;
  }
  if (!machine) throw FormatError(line_no, "missing header");
  if (initial < 0 && max_state >= 0) {
    throw FormatError(line_no, "states present but no initial state");
  }
  for (long s = 0; s <= max_state; ++s) machine->AddState();
  if (initial >= 0) {
    try {
      machine->SetInitial(static_cast<StateId>(initial));
    } catch (const MachineError& e) {
      throw FormatError(initial_line, e.what());
    }
  }
  for (const auto& [s, w] : finals) {
    machine->SetFinal(static_cast<StateId>(s), w);
  }
  for (auto& t : transitions) {
    try {
      machine->AddTransition(static_cast<StateId>(t.from), std::move(t.tuple),
                             t.weight, static_cast<StateId>(t.to));
    } catch (const MachineError& e) {
      throw FormatError(t.line, e.what());
    }
  }
  return std::move(*machine);
}

void WriteMachineFile(const Machine& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw MachineError("cannot open '" + path + "' for writing");
  out << Serialize(m);
  out.close();
  if (!out) throw MachineError("failed writing '" + path + "'");
}

Machine ReadMachineFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MachineError("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return Deserialize(buffer.str());
}

}  // namespace wfsm

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit status
// when any criterion fails. Usage: acceptance_test [path-to-acro-binary]

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "acro/corpus.h"
#include "acro/extractor.h"
#include "support/acronym_oracle.h"
#include "support/algebra_properties.h"
#include "support/paper_listings.h"
#include "wfsm/operations.h"
#include "wfsm/paths.h"
#include "wfsm/rewrite.h"

namespace {

using Clock = std::chrono::steady_clock;
using Strings = std::vector<std::string>;

double MillisecondsSince(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

struct Verdict {
  bool pass = true;
  std::string detail;

  void Require(bool ok, const std::string& failure) {
    if (!ok && pass) {
      pass = false;
      detail = failure;
    }
  }
};

std::vector<std::string> Outputs(const wfsm::Machine& m, const std::string& input) {
  Strings out;
  for (const auto& p : wfsm::EnumeratePaths(wfsm::Bind(m, {{1, input}}), 4)) {
    out.push_back(p.strings[0]);
  }
  return out;
}

// 1. Acro(6) on the HMM example gives the seven printed (tape 5, tape 6,
// weight) rows.
Verdict HmmSevenAnalyses() {
  Verdict v;
  const auto start = Clock::now();
  const acro::ExtractorBundle bundle = acro::BuildExtractor();
  const auto paths = wfsm::EnumeratePaths(
      wfsm::Bind(bundle.acro6, {{1, oracle::kHmmChunk}, {2, oracle::kHmmAcronym}}),
      100);
  const double ms = MillisecondsSince(start);
  v.Require(paths.size() == 7, std::to_string(paths.size()) + " analyses");
  std::vector<bool> matched(oracle::HmmWeightedListing().size(), false);
  for (const auto& p : paths) {
    bool found = false;
    for (std::size_t r = 0; r < matched.size(); ++r) {
      const auto& row = oracle::HmmWeightedListing()[r];
      if (!matched[r] && p.strings[2] == row.trimmed && p.strings[3] == row.ops &&
          std::fabs(p.weight.Value() - row.weight) <= 1e-9) {
        matched[r] = found = true;
        break;
      }
    }
    v.Require(found, "unlisted row " + p.strings[2] + " " + p.strings[3] + " " +
                         wfsm::FormatWeight(p.weight));
  }
  v.Require(std::all_of(matched.begin(), matched.end(), [](bool b) { return b; }),
            "a listed row is missing");
  v.Require(ms < 1000, "took " + std::to_string(ms) + " ms");
  if (v.pass) v.detail = "7/7 rows match, " + std::to_string(ms) + " ms with construction";
  return v;
}

// 2. Best analyses for the four printed (chunk, acronym) pairs.
Verdict BestPathAnswers(const acro::Aligner& aligner) {
  Verdict v;
  for (const auto& row : oracle::BestAnalysisListing()) {
    const auto record = aligner.Align(row.chunk, row.acronym);
    v.Require(record.has_value(), "no alignment for " + row.acronym);
    if (!record) continue;
    v.Require(record->best().analysis == row.analysis,
              row.acronym + " gave " + record->best().analysis);
    if (row.acronym == "hmms") {
      v.Require(std::fabs(record->best().cost.Value() - 7) <= 1e-9,
                "hmms cost " + wfsm::FormatWeight(record->best().cost));
    }
  }
  if (v.pass) v.detail = "4/4 printed best analyses";
  return v;
}

// 3. A1 alone reproduces the first listing at weight 0.
Verdict NeutralWeightStage(const acro::ExtractorBundle& bundle) {
  Verdict v;
  const auto paths = wfsm::EnumeratePaths(
      wfsm::Bind(bundle.a1, {{1, oracle::kHmmChunk}, {2, oracle::kHmmAcronym}}),
      100);
  std::set<Strings> got;
  for (const auto& p : paths) {
    v.Require(p.weight.Value() == 0, "non-zero weight");
    got.insert(p.strings);
  }
  std::set<Strings> want;
  for (const auto& row : oracle::HmmAlignmentListing()) {
    want.insert({row.dotted, row.raw_ops});
  }
  v.Require(paths.size() == 7 && got == want,
            std::to_string(paths.size()) + " quadruples, listing mismatch");
  if (v.pass) v.detail = "7/7 quadruples at weight 0";
  return v;
}

// 4. A2 and A3 on the printed strings.
Verdict RewriteCascadeFidelity(const acro::ExtractorBundle& bundle) {
  Verdict v;
  int checked = 0;
  for (const auto& row : oracle::HmmAlignmentListing()) {
    // Rows of the two listings correspond through prefix trimming.
    const std::string tape5 = oracle::TrimLeadingWords(row.dotted);
    std::string tape6;
    for (const auto& w : oracle::HmmWeightedListing()) {
      if (w.trimmed == tape5) tape6 = w.ops;
    }
    v.Require(!tape6.empty(), "no printed row for " + tape5);
    v.Require(Outputs(bundle.a2, row.raw_ops) == Strings{tape6},
              "A2 on " + row.raw_ops);
    v.Require(Outputs(bundle.a3, row.dotted) == Strings{tape5},
              "A3 on " + row.dotted);
    checked += 2;
  }
  if (v.pass) v.detail = std::to_string(checked) + "/14 printed mappings";
  return v;
}

std::string RandomChunk(std::mt19937& rng, int max_length) {
  std::string chunk;
  const int length = std::uniform_int_distribution<int>(1, max_length)(rng);
  while (static_cast<int>(chunk.size()) < length) {
    const char c = "abc_"[std::uniform_int_distribution<int>(0, 3)(rng)];
    if (c == '_' && (chunk.empty() || chunk.back() == '_')) continue;
    chunk.push_back(c);
  }
  while (!chunk.empty() && chunk.back() == '_') chunk.pop_back();
  return chunk.empty() ? "a" : chunk;
}

// 5. Acro(3) against the brute-force enumerator.
Verdict OracleEquivalence(const acro::Aligner& aligner) {
  Verdict v;
  std::mt19937 rng(20261016);
  const auto costs = oracle::DefaultCosts();
  int mismatches = 0, aligned = 0, analyses = 0;
  const int kPairs = 1000;
  for (int i = 0; i < kPairs; ++i) {
    const std::string chunk = RandomChunk(rng, 20);
    std::string acronym;
    const int length = std::uniform_int_distribution<int>(1, 4)(rng);
    for (int k = 0; k < length; ++k) {
      acronym.push_back("abc"[std::uniform_int_distribution<int>(0, 2)(rng)]);
    }
    const auto want = oracle::BruteForceAlign(chunk, acronym, costs);
    const auto record = aligner.Align(chunk, acronym, want.size() + 10);
    bool ok = record.has_value() == !want.empty();
    if (ok && record) {
      ++aligned;
      analyses += static_cast<int>(record->analyses.size());
      std::map<std::string, double> got;
      for (const auto& a : record->analyses) got[a.analysis] = a.cost.Value();
      ok = got.size() == want.size() && record->analyses.size() == want.size();
      double best = std::numeric_limits<double>::infinity();
      for (const auto& [trimmed, a] : want) {
        best = std::min(best, a.cost);
        auto it = got.find(trimmed);
        ok = ok && it != got.end() && std::fabs(it->second - a.cost) <= 1e-9;
      }
      ok = ok && std::fabs(record->best().cost.Value() - best) <= 1e-9;
      for (const auto& a : record->analyses) {
        auto it = want.find(a.analysis);
        ok = ok && it != want.end() && it->second.ops == a.ops;
      }
    }
    if (!ok) {
      if (mismatches == 0) v.detail = "first mismatch: " + chunk + " / " + acronym;
      ++mismatches;
    }
  }
  v.pass = mismatches == 0;
  if (v.pass) {
    v.detail = std::to_string(kPairs) + " pairs (" + std::to_string(aligned) +
               " alignable, " + std::to_string(analyses) +
               " analyses), 0 mismatches";
  } else {
    v.detail = std::to_string(mismatches) + " mismatches; " + v.detail;
  }
  return v;
}

// 6. Compiled refiner cascade against the string rewriter.
Verdict RuleCompilerEquivalence(const acro::ExtractorBundle& bundle) {
  Verdict v;
  const wfsm::RuleCascade cascade = wfsm::RefinerCascade();
  std::vector<std::string> inputs = {""};
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    if (inputs[i].size() == 8) continue;
    for (char c : std::string("ai_")) inputs.push_back(inputs[i] + c);
  }
  const std::size_t exhaustive = inputs.size();
  std::mt19937 rng(4242);
  for (int i = 0; i < 1000; ++i) {
    std::string s;
    const int length = std::uniform_int_distribution<int>(0, 40)(rng);
    for (int j = 0; j < length; ++j) {
      s.push_back("ai_"[std::uniform_int_distribution<int>(0, 2)(rng)]);
    }
    inputs.push_back(s);
  }
  int mismatches = 0;
  for (const std::string& s : inputs) {
    if (Outputs(bundle.a2, s) != Strings{wfsm::RewriteCascade(cascade, s)}) {
      if (mismatches++ == 0) v.detail = "first mismatch on '" + s + "'";
    }
  }
  v.pass = mismatches == 0;
  v.detail = v.pass ? std::to_string(exhaustive) + " exhaustive + 1000 random, 0 mismatches"
                    : std::to_string(mismatches) + " mismatches; " + v.detail;
  return v;
}

// 7. Master property for each algebra operation.
Verdict AlgebraCorrectness() {
  Verdict v;
  const int kTrials = 200;
  const std::vector<std::pair<std::string, std::function<oracle::PropertyResult()>>>
      checks = {
          {"union", [&] { return oracle::CheckUnion(kTrials, 1); }},
          {"concat", [&] { return oracle::CheckConcat(kTrials, 2); }},
          {"star", [&] { return oracle::CheckStar(kTrials, 3); }},
          {"join", [&] { return oracle::CheckJoin(kTrials, 4); }},
          {"project", [&] { return oracle::CheckProject(kTrials, 5); }},
          {"bind", [&] { return oracle::CheckBind(kTrials, 6); }},
          {"best_path", [&] { return oracle::CheckBestPath(kTrials, 7); }},
      };
  std::string summary;
  for (const auto& [name, check] : checks) {
    const oracle::PropertyResult r = check();
    v.Require(r.ok() && r.trials >= kTrials,
              name + ": " + std::to_string(r.failures) + " failures; " +
                  r.first_failure);
    summary += (summary.empty() ? "" : ", ") + name + " " +
               std::to_string(r.trials - r.failures) + "/" + std::to_string(r.trials);
  }
  if (v.pass) v.detail = summary;
  return v;
}

double MedianAlignMs(const acro::Aligner& aligner, const std::string& chunk,
                     const std::string& acronym, int runs) {
  std::vector<double> times;
  for (int i = 0; i < runs; ++i) {
    const auto start = Clock::now();
    const auto record = aligner.Align(chunk, acronym);
    times.push_back(MillisecondsSince(start));
    if (!record) return std::numeric_limits<double>::infinity();
  }
  std::sort(times.begin(), times.end());
  return times[times.size() / 2];
}

// 8. Timing of the three reported inputs and growth over chunk length.
Verdict Performance(const acro::Aligner& aligner) {
  Verdict v;
  const std::string once = "they_have_many_hidden_markov_models";
  const std::string twice = once + "_" + once;
  const std::vector<std::pair<std::string, std::string>> inputs = {
      {once, "hmms"}, {twice, "hmms"}, {twice, "hmmshmms"}};
  std::string summary;
  for (const auto& [chunk, acronym] : inputs) {
    const double ms = MedianAlignMs(aligner, chunk, acronym, 5);
    v.Require(ms < 50, acronym + " on " + std::to_string(chunk.size()) +
                           " symbols took " + std::to_string(ms) + " ms");
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.2f", ms);
    summary += std::string(summary.empty() ? "" : ", ") + buffer + " ms";
  }
  // Least-squares slope of log(time) against log(length).
  const std::string unit = "hidden_markov_models_";
  std::vector<double> xs, ys;
  std::string growth;
  for (int length : {32, 64, 128, 256}) {
    std::string chunk;
    while (static_cast<int>(chunk.size()) < length) chunk += unit;
    chunk.resize(length);
    while (chunk.back() == '_') chunk.pop_back();
    const double ms = MedianAlignMs(aligner, chunk, "hmms", 5);
    xs.push_back(std::log(static_cast<double>(length)));
    ys.push_back(std::log(ms));
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%s%d:%.2f", growth.empty() ? "" : " ",
                  length, ms);
    growth += buffer;
  }
  const double mx = (xs[0] + xs[1] + xs[2] + xs[3]) / 4;
  const double my = (ys[0] + ys[1] + ys[2] + ys[3]) / 4;
  double sxy = 0, sxx = 0;
  for (int i = 0; i < 4; ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double slope = sxy / sxx;
  v.Require(slope <= 2.0, "log-log slope " + std::to_string(slope));
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "; slope %.2f over ", slope);
  if (v.pass) v.detail = "median " + summary + buffer + growth + " (ms)";
  return v;
}

int RunCommand(const std::string& command, std::string* out) {
  char path[] = "/tmp/acceptance_outXXXXXX";
  const int fd = mkstemp(path);
  if (fd < 0) return -1;
  close(fd);
  const int raw = std::system((command + " >" + path + " 2>/dev/null").c_str());
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  *out = s.str();
  std::filesystem::remove(path);
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

// 9. The CLI reports the built machine's size.
Verdict SizeReport(const std::string& cli, const acro::ExtractorBundle& bundle) {
  Verdict v;
  if (cli.empty()) {
    v.pass = false;
    v.detail = "no acro binary given";
    return v;
  }
  const std::string machine =
      (std::filesystem::temp_directory_path() /
       ("acceptance_acro3_" + std::to_string(::getpid()) + ".nwfsm"))
          .string();
  std::string build, inspect;
  const int build_status = RunCommand(cli + " build --machine " + machine, &build);
  const int inspect_status = RunCommand(cli + " inspect --machine " + machine, &inspect);
  std::filesystem::remove(machine);
  const std::string states = std::to_string(bundle.acro3.NumStates());
  const std::string transitions = std::to_string(bundle.acro3.NumTransitions());
  v.Require(build_status == 0 && inspect_status == 0, "command failed");
  v.Require(inspect.find("arity 3\n") != std::string::npos, "arity line missing");
  v.Require(inspect.find("states " + states + "\n") != std::string::npos,
            "state count differs");
  v.Require(inspect.find("transitions " + transitions + "\n") != std::string::npos,
            "transition count differs");
  if (v.pass) {
    v.detail = "acro3 " + states + " states, " + transitions +
               " transitions (published machine: 27 states, 64 transitions)";
  }
  return v;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const acro::ExtractorBundle bundle = acro::BuildExtractor();
  const acro::Aligner aligner(bundle);

  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"HMM seven-analysis reproduction", [] { return HmmSevenAnalyses(); }},
      {"best-path answers", [&] { return BestPathAnswers(aligner); }},
      {"neutral-weight stage", [&] { return NeutralWeightStage(bundle); }},
      {"rewrite-cascade fidelity", [&] { return RewriteCascadeFidelity(bundle); }},
      {"oracle equivalence", [&] { return OracleEquivalence(aligner); }},
      {"rule-compiler equivalence", [&] { return RuleCompilerEquivalence(bundle); }},
      {"machine-algebra correctness", [] { return AlgebraCorrectness(); }},
      {"performance sanity", [&] { return Performance(aligner); }},
      {"size report", [&] { return SizeReport(cli, bundle); }},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    failures += v.pass ? 0 : 1;
    std::cout << (v.pass ? "PASS" : "FAIL") << " " << i + 1 << " "
              << criteria[i].first << ": " << v.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}

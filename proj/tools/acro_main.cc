// acro: build, inspect and apply the acronym-meaning extractor.
//
//   acro build   [--costs FILE] [--machine PATH]
//   acro align   [--machine PATH] [--n-best N] CHUNK ACRONYM
//   acro extract [--machine PATH] [--input FILE] [--output FILE]
//   acro inspect [--machine PATH]
//
// Exit status: 0 success, 1 no alignment, 2 usage, I/O or parse error.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "acro/corpus.h"
#include "acro/extractor.h"
#include "wfsm/paths.h"
#include "wfsm/text_format.h"

namespace {

constexpr int kOk = 0;
constexpr int kNoAlignment = 1;
constexpr int kFailure = 2;

constexpr const char* kDefaultMachine = "./acro3.nwfsm";

struct CliConfig {
  std::string machine_path = kDefaultMachine;
  std::string costs_path;
  std::size_t n_best = 1;
  std::string input_path;
  std::string output_path;
  std::string chunk;
  std::string acronym;
};

int RunBuild(const CliConfig& config) {
  acro::CostTable costs = acro::CostTable::Default();
  if (!config.costs_path.empty()) costs = acro::CostTable::Load(config.costs_path);
  const acro::ExtractorBundle bundle = acro::BuildExtractor(costs);
  wfsm::WriteMachineFile(bundle.acro3, config.machine_path);
  std::cout << "acro3 " << bundle.acro3.NumStates() << " states "
            << bundle.acro3.NumTransitions() << " transitions\n";
  return kOk;
}

acro::Aligner LoadAligner(const std::string& machine_path) {
  wfsm::Machine acro3 = wfsm::ReadMachineFile(machine_path);
  if (acro3.arity() != 3) {
    throw wfsm::MachineError("'" + machine_path + "' is a " +
                             std::to_string(acro3.arity()) +
                             "-tape machine, expected 3 tapes");
  }
  return acro::Aligner(std::move(acro3), acro::BuildOpAnnotator());
}

int RunAlign(const CliConfig& config) {
  const acro::Aligner aligner = LoadAligner(config.machine_path);
  const auto record = aligner.Align(acro::Normalize(config.chunk),
                                    acro::NormalizeAcronym(config.acronym),
                                    config.n_best);
  if (!record) {
    std::cerr << "no alignment\n";
    return kNoAlignment;
  }
  for (const acro::Analysis& a : record->analyses) {
    std::cout << a.analysis << "\t" << a.ops << "\t"
              << wfsm::FormatWeight(a.cost) << "\n";
  }
  return kOk;
}

int RunExtract(const CliConfig& config) {
  const acro::Aligner aligner = LoadAligner(config.machine_path);
  std::ifstream input_file;
  std::istream* in = &std::cin;
  if (!config.input_path.empty() && config.input_path != "-") {
    input_file.open(config.input_path);
    if (!input_file) {
      std::cerr << "cannot open input '" << config.input_path << "'\n";
      return kFailure;
    }
    in = &input_file;
  }
  std::ofstream output_file;
  std::ostream* out = &std::cout;
  if (!config.output_path.empty() && config.output_path != "-") {
    output_file.open(config.output_path);
    if (!output_file) {
      std::cerr << "cannot open output '" << config.output_path << "'\n";
      return kFailure;
    }
    out = &output_file;
  }
  const acro::ExtractStats stats = acro::ExtractCorpus(aligner, *in, *out, std::cerr);
  out->flush();
  if (!*out) {
    std::cerr << "failed writing output\n";
    return kFailure;
  }
  std::cerr << stats.lines << " lines, " << stats.pairs << " pairs, "
            << stats.aligned << " aligned\n";
  return kOk;
}

int RunInspect(const CliConfig& config) {
  const wfsm::Machine m = wfsm::ReadMachineFile(config.machine_path);
  std::cout << "arity " << m.arity() << "\n"
            << "states " << m.NumStates() << "\n"
            << "transitions " << m.NumTransitions() << "\n"
            << "alphabet " << m.alphabet().Chars() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acronym-meaning extraction with multitape weighted machines"};
  app.require_subcommand(1);
  CliConfig config;

  auto* build = app.add_subcommand("build", "Build the extractor and save it");
  build->add_option("--costs", config.costs_path, "Cost table file");
  build->add_option("--machine,--output,-o", config.machine_path,
                    "Where to write the machine");

  auto* align = app.add_subcommand("align", "Align one chunk with an acronym");
  align->add_option("--machine", config.machine_path, "Extractor machine file");
  align->add_option("--n-best,-n", config.n_best, "Number of analyses")
      ->check(CLI::PositiveNumber);
  align->add_option("chunk", config.chunk, "Text chunk")->required();
  align->add_option("acronym", config.acronym, "Acronym")->required();

  auto* extract = app.add_subcommand("extract", "Extract acronyms from a corpus");
  extract->add_option("--machine", config.machine_path, "Extractor machine file");
  extract->add_option("--input,-i", config.input_path,
                      "One sentence per line (default stdin)");
  extract->add_option("--output,-o", config.output_path,
                      "TSV output (default stdout)");

  auto* inspect = app.add_subcommand("inspect", "Print machine statistics");
  inspect->add_option("--machine", config.machine_path, "Machine file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kFailure;
  }

  try {
    if (build->parsed()) return RunBuild(config);
    if (align->parsed()) return RunAlign(config);
    if (extract->parsed()) return RunExtract(config);
    if (inspect->parsed()) return RunInspect(config);
  } catch (const std::exception& e) {
    std::cerr << "acro: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}

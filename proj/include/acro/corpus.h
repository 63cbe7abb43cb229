// Corpus preprocessing and the extraction loop: find bracketed acronyms,
// pair them with the preceding text, normalize, align.

#ifndef ACRO_CORPUS_H_
#define ACRO_CORPUS_H_

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "acro/extractor.h"

namespace acro {

class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct CorpusPair {
  std::string chunk_raw;
  std::string acronym_raw;
  std::string chunk_norm;
  std::string acronym_norm;
};

struct Analysis {
  std::string analysis;  // trimmed, dotted definition
  std::string ops;       // refined operation string of the full chunk
  TropicalWeight cost;
};

struct ExtractionRecord {
  std::string acronym_norm;
  std::vector<Analysis> analyses;  // non-decreasing cost; never empty

  const Analysis& best() const { return analyses.front(); }
};

// 2-10 characters, no whitespace, starts with a letter, and at least half
// of the characters are uppercase letters.
bool LooksLikeAcronym(std::string_view token);

// Lowercases ASCII letters and turns every run of other characters into a
// single underscore, without leading or trailing underscores.
std::string Normalize(std::string_view text);

// Lowercased letters and digits only.
std::string NormalizeAcronym(std::string_view token);

// One pair per acceptable bracketed token. The chunk runs from the sentence
// start, or from just after the previous accepted acronym's closing
// bracket, up to the opening bracket.
std::vector<CorpusPair> FindPairs(std::string_view sentence);

class Aligner {
 public:
  // `acro3` maps (chunk, acronym) to trimmed analyses with costs;
  // `annotator` maps (chunk, trimmed analysis) to the operation string.
  Aligner(Machine acro3, Machine annotator);
  explicit Aligner(const ExtractorBundle& bundle);

  // nullopt when the acronym is not a subsequence of the chunk's letters.
  // Throws InputError unless the chunk is over [a-z0-9_] and the acronym is
  // a non-empty string over [a-z0-9].
  std::optional<ExtractionRecord> Align(std::string_view chunk,
                                        std::string_view acronym,
                                        std::size_t n_best = 1) const;

  const Machine& acro3() const { return acro3_; }

 private:
  Machine acro3_;
  Machine annotator_;
};

inline constexpr std::string_view kNoAlignment = "NO_ALIGNMENT";

// `acronym <TAB> analysis <TAB> ops <TAB> cost`, with NO_ALIGNMENT, an
// empty op column and cost inf when there is no alignment.
std::string FormatRecordRow(const CorpusPair& pair,
                            const std::optional<ExtractionRecord>& record);

struct ExtractStats {
  std::size_t lines = 0;
  std::size_t skipped_lines = 0;
  std::size_t pairs = 0;
  std::size_t aligned = 0;
};

// One TSV row per candidate pair, in input order. Lines that are not valid
// UTF-8 are reported on `diagnostics` and skipped.
ExtractStats ExtractCorpus(const Aligner& aligner, std::istream& in,
                           std::ostream& out, std::ostream& diagnostics);

}  // namespace acro

#endif  // ACRO_CORPUS_H_

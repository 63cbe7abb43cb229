#include "acro/corpus.h"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>

#include "wfsm/operations.h"
#include "wfsm/paths.h"

namespace acro {
namespace {

bool IsAsciiAlnum(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9');
}

char ToLower(char c) {
  return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
}

bool IsValidUtf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    int extra = 0;
    if (c < 0x80) {
      extra = 0;
    } else if ((c & 0xE0) == 0xC0 && c >= 0xC2) {
      extra = 1;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
    } else if ((c & 0xF8) == 0xF0 && c <= 0xF4) {
      extra = 3;
    } else {
      return false;
    }
    if (i + extra >= s.size()) return false;
    for (int k = 1; k <= extra; ++k) {
      if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return false;
    }
    i += extra + 1;
  }
  return true;
}

}  // namespace

bool LooksLikeAcronym(std::string_view token) {
  if (token.size() < 2 || token.size() > 10) return false;
  const char first = token.front();
  if (!((first >= 'a' && first <= 'z') || (first >= 'A' && first <= 'Z'))) {
    return false;
  }
  std::size_t upper = 0;
  for (char c : token) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') return false;
    if (c >= 'A' && c <= 'Z') ++upper;
  }
  return 2 * upper >= token.size();
}

std::string Normalize(std::string_view text) {
  std::string out;
  bool pending_separator = false;
  for (char c : text) {
    if (IsAsciiAlnum(c)) {
      if (pending_separator && !out.empty()) out.push_back('_');
      pending_separator = false;
      out.push_back(ToLower(c));
    } else {
      pending_separator = true;
    }
  }
  return out;
}

std::string NormalizeAcronym(std::string_view token) {
  std::string out;
  for (char c : token) {
    if (IsAsciiAlnum(c)) out.push_back(ToLower(c));
  }
  return out;
}

std::vector<CorpusPair> FindPairs(std::string_view sentence) {
  std::vector<CorpusPair> pairs;
  std::size_t chunk_start = 0;
  std::size_t search = 0;
  while (true) {
    const std::size_t open = sentence.find('(', search);
    if (open == std::string_view::npos) break;
    const std::size_t close = sentence.find(')', open + 1);
    if (close == std::string_view::npos) break;
    const std::size_t nested = sentence.find('(', open + 1);
    if (nested < close) {
      search = nested;
      continue;
    }
    const std::string_view token = sentence.substr(open + 1, close - open - 1);
    search = close + 1;
    if (!LooksLikeAcronym(token)) continue;
    CorpusPair pair;
    pair.chunk_raw = std::string(sentence.substr(chunk_start, open - chunk_start));
    pair.acronym_raw = std::string(token);
    pair.chunk_norm = Normalize(pair.chunk_raw);
    pair.acronym_norm = NormalizeAcronym(token);
    chunk_start = close + 1;
    if (pair.acronym_norm.empty()) continue;
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

Aligner::Aligner(Machine acro3, Machine annotator)
    : acro3_(std::move(acro3)), annotator_(std::move(annotator)) {
  if (acro3_.arity() != 3 || annotator_.arity() != 3) {
    throw std::invalid_argument("aligner needs two 3-tape machines");
  }
}

Aligner::Aligner(const ExtractorBundle& bundle)
    : Aligner(bundle.acro3, bundle.annotator) {}

std::optional<ExtractionRecord> Aligner::Align(std::string_view chunk,
                                               std::string_view acronym,
                                               std::size_t n_best) const {
  for (char c : chunk) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_')) {
      throw InputError("chunk symbol '" + std::string(1, c) +
                       "' is outside [a-z0-9_]");
    }
  }
  if (acronym.empty()) throw InputError("empty acronym");
  for (char c : acronym) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'))) {
      throw InputError("acronym symbol '" + std::string(1, c) +
                       "' is outside [a-z0-9]");
    }
  }
  const Machine bound = wfsm::Bind(
      acro3_, {{1, std::string(chunk)}, {2, std::string(acronym)}});
  const auto paths = wfsm::EnumeratePaths(bound, std::max<std::size_t>(1, n_best));
  if (paths.empty()) return std::nullopt;

  ExtractionRecord record;
  record.acronym_norm = std::string(acronym);
  for (const auto& path : paths) {
    const std::string& analysis = path.strings.front();
    const auto ops = wfsm::BestPath(wfsm::Bind(
        annotator_, {{1, std::string(chunk)}, {2, analysis}}));
    record.analyses.push_back(
        {analysis, ops ? ops->strings.front() : std::string(), path.weight});
  }
  return record;
}

std::string FormatRecordRow(const CorpusPair& pair,
                            const std::optional<ExtractionRecord>& record) {
  std::string row = pair.acronym_norm + "\t";
  if (!record) return row + std::string(kNoAlignment) + "\t\tinf";
  const Analysis& best = record->best();
  return row + best.analysis + "\t" + best.ops + "\t" +
         wfsm::FormatWeight(best.cost);
}

ExtractStats ExtractCorpus(const Aligner& aligner, std::istream& in,
                           std::ostream& out, std::ostream& diagnostics) {
  ExtractStats stats;
  std::string line;
  while (std::getline(in, line)) {
    ++stats.lines;
    if (!IsValidUtf8(line)) {
      ++stats.skipped_lines;
      diagnostics << "line " << stats.lines << ": not valid UTF-8, skipped\n";
      continue;
    }
    for (const CorpusPair& pair : FindPairs(line)) {
      ++stats.pairs;
      std::optional<ExtractionRecord> record;
      if (!pair.chunk_norm.empty()) {
        record = aligner.Align(pair.chunk_norm, pair.acronym_norm);
      }
      if (record) ++stats.aligned;
      out << FormatRecordRow(pair, record) << "\n";
    }
  }
  return stats;
}

}  // namespace acro

#include "acro/extractor.h"

#include <random>
#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

#include "support/acronym_oracle.h"
#include "support/paper_listings.h"
#include "wfsm/operations.h"
#include "wfsm/paths.h"
#include "wfsm/text_format.h"

namespace acro {
namespace {

using Strings = std::vector<std::string>;

class ExtractorTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { bundle_ = new ExtractorBundle(BuildExtractor()); }
  static void TearDownTestSuite() { delete bundle_; }

  static const ExtractorBundle& bundle() { return *bundle_; }

  // Tape-2 outputs of a 2-tape machine for `input`.
  static Strings Outputs(const Machine& m, const std::string& input) {
    Strings out;
    for (const auto& p : wfsm::EnumeratePaths(wfsm::Bind(m, {{1, input}}), 4)) {
      out.push_back(p.strings[0]);
    }
    return out;
  }

  static ExtractorBundle* bundle_;
};

ExtractorBundle* ExtractorTest::bundle_ = nullptr;

TEST_F(ExtractorTest, Arities) {
  EXPECT_EQ(bundle().a1.arity(), 4);
  EXPECT_EQ(bundle().a2.arity(), 2);
  EXPECT_EQ(bundle().a3.arity(), 2);
  EXPECT_EQ(bundle().a5.arity(), 1);
  EXPECT_EQ(bundle().a4.arity(), 6);
  EXPECT_EQ(bundle().acro6.arity(), 6);
  EXPECT_EQ(bundle().acro3.arity(), 3);
}

TEST_F(ExtractorTest, AlignmentCoreReproducesListing) {
  const Machine bound = wfsm::Bind(
      bundle().a1, {{1, oracle::kHmmChunk}, {2, oracle::kHmmAcronym}});
  const auto paths = wfsm::EnumeratePaths(bound, 100);
  std::set<Strings> got;
  for (const auto& p : paths) {
    EXPECT_EQ(p.weight.Value(), 0);
    got.insert(p.strings);
  }
  std::set<Strings> want;
  for (const auto& row : oracle::HmmAlignmentListing()) {
    want.insert({row.dotted, row.raw_ops});
  }
  EXPECT_EQ(paths.size(), 7u);
  EXPECT_EQ(got, want);
}

TEST_F(ExtractorTest, AlignmentCoreSmallCases) {
  const auto forced = wfsm::EnumeratePaths(
      wfsm::Bind(bundle().a1, {{1, "ab"}, {2, "b"}}), 10);
  ASSERT_EQ(forced.size(), 1u);
  EXPECT_EQ(forced[0].strings, (Strings{"a.b", "ia"}));
  EXPECT_EQ(forced[0].weight.Value(), 0);

  const auto two = wfsm::EnumeratePaths(
      wfsm::Bind(bundle().a1, {{1, "xax_xax"}, {2, "a"}}), 10);
  EXPECT_EQ(two.size(), 2u);
  EXPECT_TRUE(wfsm::EnumeratePaths(
                  wfsm::Bind(bundle().a1, {{1, "a_b"}, {2, "_"}}), 10)
                  .empty());
}

TEST_F(ExtractorTest, RefinerMapsListedOperationStrings) {
  for (const auto& row : oracle::HmmAlignmentListing()) {
    const std::string trimmed = oracle::TrimLeadingWords(row.dotted);
    std::string want;
    for (const auto& w : oracle::HmmWeightedListing()) {
      if (w.trimmed == trimmed) want = w.ops;
    }
    ASSERT_FALSE(want.empty()) << row.dotted;
    EXPECT_EQ(Outputs(bundle().a2, row.raw_ops), Strings{want});
  }
  EXPECT_EQ(Outputs(bundle().a2, "a"), Strings{"1"});
}

TEST_F(ExtractorTest, TrimmerMapsListedAnalyses) {
  for (const auto& row : oracle::HmmAlignmentListing()) {
    const std::string trimmed = oracle::TrimLeadingWords(row.dotted);
    EXPECT_EQ(Outputs(bundle().a3, row.dotted), Strings{trimmed});
  }
  EXPECT_EQ(Outputs(bundle().a3, "they_have_many_.hidden_.markov_.model.s"),
            Strings{".hidden_.markov_.model.s"});
  EXPECT_EQ(Outputs(bundle().a3, "t.hey_have_many_hidden_.markov_.model.s"),
            Strings{"t.hey_have_many_hidden_.markov_.model.s"});
  EXPECT_EQ(Outputs(bundle().a3, ".a"), Strings{".a"});
  EXPECT_EQ(Outputs(bundle().a3, "x_y_.z_w"), Strings{".z_w"});
}

TEST_F(ExtractorTest, CostModel) {
  auto weight = [&](const std::string& ops) {
    const std::string tuple[] = {ops};
    return wfsm::WeightOf(bundle().a5, tuple).Value();
  };
  EXPECT_EQ(weight("iiii_iiii_iiii_1iiiii_1iiiii_1gggg6"), 7);
  EXPECT_EQ(weight("iiii"), 0);
  EXPECT_EQ(weight("G2ii_uiii_uiii_uiiiii_1iiiii_1gggg6"), 17);
  EXPECT_EQ(weight(""), 0);
}

TEST_F(ExtractorTest, WeightedListing) {
  const Machine bound = wfsm::Bind(
      bundle().acro6, {{1, oracle::kHmmChunk}, {2, oracle::kHmmAcronym}});
  const auto paths = wfsm::EnumeratePaths(bound, 100);
  ASSERT_EQ(paths.size(), 7u);
  std::set<std::pair<Strings, double>> got;
  for (const auto& p : paths) got.insert({{p.strings[2], p.strings[3]}, p.weight.Value()});
  std::set<std::pair<Strings, double>> want;
  for (const auto& row : oracle::HmmWeightedListing()) {
    want.insert({{row.trimmed, row.ops}, row.weight});
  }
  EXPECT_EQ(got, want);
  for (std::size_t i = 1; i < paths.size(); ++i) {
    EXPECT_LE(paths[i - 1].weight, paths[i].weight);
  }
}

TEST_F(ExtractorTest, BestAnalyses) {
  for (const auto& row : oracle::BestAnalysisListing()) {
    const auto best = wfsm::BestPath(
        wfsm::Bind(bundle().acro3, {{1, row.chunk}, {2, row.acronym}}));
    ASSERT_TRUE(best) << row.chunk;
    EXPECT_EQ(best->strings, Strings{row.analysis});
  }
  const auto wfa = wfsm::BestPath(wfsm::Bind(
      bundle().acro6,
      {{1, "and_weighted_finite_state_automata"}, {2, "wfa"}}));
  ASSERT_TRUE(wfa);
  EXPECT_EQ(wfa->strings[3], "iii_1iiiiiii_1iiiii_uiiii_1iiiiiii");
  EXPECT_EQ(wfa->weight.Value(),
            CostTable::Default().Score("iii_1iiiiiii_1iiiii_uiiii_1iiiiiii").Value());
  EXPECT_EQ(wfa->weight.Value(), 2);
}

// Path weights come only from the cost model, and dropping tapes does not
// change the best weight.
TEST_F(ExtractorTest, CostFactorizationAndProjectionSafety) {
  std::mt19937 rng(501);
  for (int trial = 0; trial < 60; ++trial) {
    std::string chunk;
    const int length = std::uniform_int_distribution<int>(1, 12)(rng);
    for (int i = 0; i < length; ++i) {
      const char c = "abc_"[std::uniform_int_distribution<int>(0, 3)(rng)];
      if (c == '_' && (chunk.empty() || chunk.back() == '_')) continue;
      chunk.push_back(c);
    }
    if (!chunk.empty() && chunk.back() == '_') chunk.pop_back();
    std::string acronym;
    const int acronym_length = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int i = 0; i < acronym_length; ++i) {
      acronym.push_back("abc"[std::uniform_int_distribution<int>(0, 2)(rng)]);
    }
    const auto six = wfsm::EnumeratePaths(
        wfsm::Bind(bundle().acro6, {{1, chunk}, {2, acronym}}), 1000);
    for (const auto& p : six) {
      const std::string ops[] = {p.strings[3]};
      EXPECT_TRUE(wfsm::ApproxEqual(p.weight, wfsm::WeightOf(bundle().a5, ops)));
    }
    const auto three =
        wfsm::BestPath(wfsm::Bind(bundle().acro3, {{1, chunk}, {2, acronym}}));
    ASSERT_EQ(three.has_value(), !six.empty()) << chunk << " " << acronym;
    if (three) {
      EXPECT_TRUE(wfsm::ApproxEqual(three->weight, six.front().weight));
    }
  }
}

TEST_F(ExtractorTest, Deterministic) {
  const ExtractorBundle again = BuildExtractor();
  EXPECT_EQ(wfsm::Serialize(again.acro3), wfsm::Serialize(bundle().acro3));
  EXPECT_EQ(wfsm::Serialize(again.acro6), wfsm::Serialize(bundle().acro6));
}

TEST_F(ExtractorTest, CustomCostsChangeWeightsOnly) {
  const ExtractorBundle free_u =
      BuildExtractor(CostTable::Parse("u = 0\n"));
  const auto best = wfsm::BestPath(wfsm::Bind(
      free_u.acro3, {{1, oracle::kHmmChunk}, {2, oracle::kHmmAcronym}}));
  ASSERT_TRUE(best);
  // The best cost is unchanged, but ".have_.many_hidden_markov_.model.s"
  // (two u) now ties with it at 7 and wins the lexicographic tie-break.
  EXPECT_EQ(best->weight.Value(), 7);
  EXPECT_EQ(best->strings, Strings{".have_.many_hidden_markov_.model.s"});
  // With u free, the first-row analysis drops from 17 to 17 - 3 * 2.
  const std::string tuple[] = {oracle::kHmmChunk, oracle::kHmmAcronym,
                               "t.hey_have_many_hidden_.markov_.model.s"};
  EXPECT_EQ(wfsm::WeightOf(free_u.acro3, tuple).Value(), 11);
}

TEST(CostTableTest, Defaults) {
  const CostTable t = CostTable::Default();
  for (const auto& [op, cost] : oracle::DefaultCosts()) {
    EXPECT_EQ(t.cost(op).Value(), cost) << op;
  }
  EXPECT_EQ(t.costs().size(), 13u);
  EXPECT_EQ(t.Score("G2ii_uiii").Value(), 6);
  EXPECT_TRUE(t.Score("x").IsZero());
}

TEST(CostTableTest, Parse) {
  const CostTable t = CostTable::Parse(
      "# tweaks\n"
      "u = 0.5\n"
      "\n"
      "  G=4   # word-initial gap\n");
  EXPECT_EQ(t.cost('u').Value(), 0.5);
  EXPECT_EQ(t.cost('G').Value(), 4);
  EXPECT_EQ(t.cost('g').Value(), 1);
  EXPECT_THROW(CostTable::Parse("u 1\n"), std::invalid_argument);
  EXPECT_THROW(CostTable::Parse("x = 1\n"), std::invalid_argument);
  EXPECT_THROW(CostTable::Parse("u = -1\n"), std::invalid_argument);
  EXPECT_THROW(CostTable::Parse("u = inf\n"), std::invalid_argument);
  EXPECT_THROW(CostTable::Parse("u = 1\nuu = 2\n"), std::invalid_argument);
  try {
    CostTable::Parse("u = 1\n\nbad\n");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(CostTable::Load("/nonexistent/costs.txt"), std::invalid_argument);
}

TEST(CostTableTest, FromMapRequiresEveryOperation) {
  std::map<char, TropicalWeight> costs = CostTable::Default().costs();
  EXPECT_NO_THROW(CostTable::FromMap(costs));
  costs.erase('g');
  EXPECT_THROW(CostTable::FromMap(costs), std::invalid_argument);
  costs['g'] = TropicalWeight::Zero();
  EXPECT_THROW(CostTable::FromMap(costs), std::invalid_argument);
}

}  // namespace
}  // namespace acro

#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "dmmc/error.hpp"
#include "dmmc/oracle.hpp"
#include "dmmc/similarity.hpp"
#include "fixtures.hpp"

namespace dmmc {
namespace {

using fixtures::usage;

Query query_of(const Corpus& c, const std::string& id) {
  const auto& u = c.at(c.index_of(id));
  return {u.type_name, u.context, u.calls, u.id};
}

TEST(ExactlySimilarTest, FigurePair) {
  const auto c = fixtures::similarity_figure();
  EXPECT_EQ(exactly_similar(query_of(c, "b"), c), 2u);
  EXPECT_EQ(exactly_similar(query_of(c, "myBut"), c), 1u);
}

TEST(ExactlySimilarTest, UnknownTypeCountsOnlyItself) {
  const auto c = fixtures::similarity_figure();
  EXPECT_EQ(exactly_similar({"Label", fixtures::kButtonContext, {"<init>"}, std::nullopt}, c), 1u);
}

TEST(ExactlySimilarTest, EmptyQueryAgainstDialogPages) {
  const auto c = fixtures::dialog_page(false);
  const Query q{fixtures::kDialogType, fixtures::kDialogContext, {}, std::nullopt};
  EXPECT_EQ(exactly_similar(q, c), 1u);
  EXPECT_EQ(almost_similar(q, c).size(), 16u);
}

TEST(AlmostSimilarTest, FigureNeighbour) {
  const auto c = fixtures::similarity_figure();
  EXPECT_EQ(almost_similar(query_of(c, "b"), c), (std::vector<std::string>{"myBut"}));
  EXPECT_TRUE(almost_similar(query_of(c, "myBut"), c).empty());
}

TEST(AlmostSimilarTest, LikelihoodFigureNeighbourhood) {
  const auto c = fixtures::likelihood_figure();
  const Query q{"Button", fixtures::kButtonContext, {"<init>"}, std::nullopt};
  EXPECT_EQ(almost_similar(q, c), (std::vector<std::string>{"a", "b", "c", "d", "e"}));
}

TEST(AlmostSimilarTest, NoSupersetMeansNoNeighbours) {
  const auto c = fixtures::likelihood_figure();
  EXPECT_TRUE(almost_similar({"Button", fixtures::kButtonContext, {"dispose"}, std::nullopt}, c).empty());
  EXPECT_TRUE(almost_similar({"Button", fixtures::kButtonContext, {"setText", "setFont"}, std::nullopt}, c).empty());
}

TEST(AlmostSimilarTest, CumulativeK) {
  const auto c = Corpus({usage("x", "T", "c()", {"a"}), usage("y1", "T", "c()", {"a", "b"}),
                         usage("y2", "T", "c()", {"a", "b", "c"}), usage("y3", "T", "c()", {"a", "b", "c", "d"})});
  const auto q = query_of(c, "x");
  EXPECT_EQ(almost_similar(q, c, {1, true}), (std::vector<std::string>{"y1"}));
  EXPECT_EQ(almost_similar(q, c, {2, true}), (std::vector<std::string>{"y1", "y2"}));
  EXPECT_EQ(almost_similar(q, c, {3, true}), (std::vector<std::string>{"y1", "y2", "y3"}));
  EXPECT_THROW(almost_similar(q, c, {0, true}), InvalidArgument);
}

TEST(AlmostSimilarTest, ContextAblationKeepsTypeEquality) {
  const auto c = Corpus({usage("x", "T", "c1()", {"a"}), usage("y", "T", "c2()", {"a", "b"}),
                         usage("z", "U", "c1()", {"a", "b"}), usage("w", "T", "c2()", {"a"})});
  const auto q = query_of(c, "x");
  EXPECT_TRUE(almost_similar(q, c, {1, true}).empty());
  EXPECT_EQ(almost_similar(q, c, {1, false}), (std::vector<std::string>{"y"}));
  EXPECT_EQ(exactly_similar(q, c, {1, true}), 1u);
  EXPECT_EQ(exactly_similar(q, c, {1, false}), 2u);
}

TEST(RedundancyTest, Examples) {
  EXPECT_FALSE(is_redundant("u1", fixtures::figure_one()));
  const auto sim = fixtures::similarity_figure();
  for (const auto& id : {"b", "aBut", "myBut"}) EXPECT_TRUE(is_redundant(id, sim));
  const auto twins = Corpus({usage("p", "T", "c()", {"a"}), usage("q", "T", "c()", {"a"})});
  EXPECT_TRUE(is_redundant("p", twins));
  EXPECT_TRUE(is_redundant("q", twins));
  EXPECT_THROW(is_redundant("nope", twins), UnknownId);
}

TEST(SimilarityOfTest, InCorpusSubjects) {
  const auto sim = fixtures::similarity_figure();
  const auto r = similarity_of("b", sim);
  EXPECT_EQ(r.e_count, 2u);
  EXPECT_EQ(ids_of(r.almost, sim), (std::vector<std::string>{"myBut"}));

  const auto single = Corpus({usage("only", "T", "c()", {"a"})});
  const auto s = similarity_of("only", single);
  EXPECT_EQ(s.e_count, 1u);
  EXPECT_TRUE(s.almost.empty());
  EXPECT_THROW(similarity_of("missing", single), UnknownId);
}

TEST(SimilarityOfTest, UnknownExcludeIdThrows) {
  const auto sim = fixtures::similarity_figure();
  EXPECT_THROW(exactly_similar({"Button", fixtures::kButtonContext, {}, std::string("ghost")}, sim), UnknownId);
}

TEST(OracleTest, SmallFixtures) {
  const auto fig1 = fixtures::figure_one();
  for (const auto& e : brute_force_oracle(fig1)) {
    EXPECT_EQ(e.e_count, 1u);
    EXPECT_TRUE(e.a_ids.empty());
  }
  const auto sim = brute_force_oracle(fixtures::similarity_figure());
  EXPECT_EQ(sim[0], (OracleEntry{2, {"myBut"}}));
  EXPECT_EQ(sim[1], (OracleEntry{2, {"myBut"}}));
  EXPECT_EQ(sim[2], (OracleEntry{1, {}}));
}

TEST(OracleTest, CapIsEnforced) {
  EXPECT_THROW(brute_force_oracle(fixtures::unanimous(1, 11), {}, 10), InvalidArgument);
  EXPECT_NO_THROW(brute_force_oracle(fixtures::unanimous(1, 10), {}, 10));
}

// ---------------------------------------------------------------------------
// Properties over random corpora

Corpus random_corpus(std::mt19937& rng, std::size_t n, unsigned max_calls, unsigned vocab) {
  std::vector<TypeUsage> usages;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> calls;
    const auto count = rng() % (max_calls + 1);
    for (unsigned j = 0; j < count; ++j) calls.push_back("m" + std::to_string(rng() % vocab));
    usages.push_back(usage("", "T" + std::to_string(rng() % 2), "c" + std::to_string(rng() % 3) + "()", calls));
  }
  return Corpus(std::move(usages));
}

TEST(SimilarityPropertyTest, IndexMatchesPairwiseScanUpTo200Usages) {
  std::mt19937 rng(2024);
  for (int round = 0; round < 60; ++round) {
    const auto c = random_corpus(rng, 1 + rng() % 200, 5, 6);
    for (const int k : {1, 2, 3}) {
      for (const bool ctx : {true, false}) {
        const SimilarityParams p{k, ctx};
        const auto oracle = brute_force_oracle(c, p);
        for (UsageIndex i = 0; i < c.size(); ++i) {
          const auto r = similarity_of(i, c, p);
          ASSERT_EQ(r.e_count, oracle[i].e_count) << "usage " << c.at(i).id;
          ASSERT_EQ(ids_of(r.almost, c), oracle[i].a_ids) << "usage " << c.at(i).id;
        }
      }
    }
  }
}

TEST(SimilarityPropertyTest, AntiSymmetryForKOne) {
  std::mt19937 rng(5);
  for (int round = 0; round < 30; ++round) {
    const auto c = random_corpus(rng, 80, 4, 5);
    for (UsageIndex x = 0; x < c.size(); ++x) {
      for (const auto y : similarity_of(x, c).almost) {
        const auto back = similarity_of(y, c).almost;
        EXPECT_EQ(std::count(back.begin(), back.end(), x), 0);
      }
    }
  }
}

TEST(SimilarityPropertyTest, ExactlySimilarUsagesShareTheirNeighbourhood) {
  std::mt19937 rng(9);
  for (int round = 0; round < 30; ++round) {
    const auto c = random_corpus(rng, 80, 3, 4);
    for (UsageIndex x = 0; x < c.size(); ++x) {
      for (UsageIndex y = x + 1; y < c.size(); ++y) {
        const auto& ux = c.at(x);
        const auto& uy = c.at(y);
        if (ux.type_name != uy.type_name || ux.context != uy.context || ux.calls != uy.calls) continue;
        const auto rx = similarity_of(x, c);
        const auto ry = similarity_of(y, c);
        EXPECT_EQ(rx.e_count, ry.e_count);
        EXPECT_EQ(rx.almost, ry.almost);
      }
    }
  }
}

TEST(SimilarityPropertyTest, AblationAndKAreMonotone) {
  std::mt19937 rng(13);
  for (int round = 0; round < 30; ++round) {
    const auto c = random_corpus(rng, 100, 5, 6);
    for (UsageIndex x = 0; x < c.size(); ++x) {
      for (const int k : {1, 2, 3}) {
        const auto with_ctx = similarity_of(x, c, {k, true}).almost;
        const auto without = similarity_of(x, c, {k, false}).almost;
        EXPECT_TRUE(std::includes(without.begin(), without.end(), with_ctx.begin(), with_ctx.end()));
        const auto wider = similarity_of(x, c, {k + 1, true}).almost;
        EXPECT_TRUE(std::includes(wider.begin(), wider.end(), with_ctx.begin(), with_ctx.end()));
      }
    }
  }
}

TEST(SimilarityPropertyTest, ExternalQueriesMatchOracle) {
  std::mt19937 rng(17);
  for (int round = 0; round < 40; ++round) {
    const auto c = random_corpus(rng, 60, 4, 5);
    for (int i = 0; i < 20; ++i) {
      Query q{"T" + std::to_string(rng() % 3), "c" + std::to_string(rng() % 3) + "()", {}, std::nullopt};
      const auto count = rng() % 4;
      for (unsigned j = 0; j < count; ++j) q.calls.push_back("m" + std::to_string(rng() % 7));
      if (rng() % 3 == 0) q.exclude_id = c.at(static_cast<UsageIndex>(rng() % c.size())).id;
      const SimilarityParams p{static_cast<int>(1 + rng() % 3), rng() % 2 == 0};
      const auto expected = brute_force_query(c, q, p);
      EXPECT_EQ(exactly_similar(q, c, p), expected.e_count);
      EXPECT_EQ(almost_similar(q, c, p), expected.a_ids);
    }
  }
}

}  // namespace
}  // namespace dmmc

#include <gtest/gtest.h>

#include <set>
#include <sstream>
#include <vector>

#include "dt4/errors.hpp"
#include "dt4/partitions/enumerate.hpp"
#include "dt4/partitions/jsonl.hpp"
#include "dt4/partitions/solid_partition.hpp"
#include "dt4/partitions/statistics.hpp"

using namespace dt4;

namespace {

using BoxSet = std::set<Box>;

/// Brute force: every solid partition of n + 1 is one of size n plus an
/// addable box (all predecessors present). Duplicates are removed by a set.
std::vector<std::set<BoxSet>> oracle_levels(int max_n) {
  std::vector<std::set<BoxSet>> levels(static_cast<std::size_t>(max_n) + 1);
  levels[0].insert(BoxSet{});
  for (int n = 0; n < max_n; ++n) {
    for (const auto& p : levels[static_cast<std::size_t>(n)]) {
      std::set<Box> candidates{{0, 0, 0, 0}};
      for (const auto& b : p) {
        for (int axis = 0; axis < 4; ++axis) {
          Box c = b;
          ++c[static_cast<std::size_t>(axis)];
          candidates.insert(c);
        }
      }
      for (const auto& c : candidates) {
        if (p.count(c)) continue;
        bool addable = true;
        for (int axis = 0; axis < 4; ++axis) {
          if (c[static_cast<std::size_t>(axis)] == 0) continue;
          Box prev = c;
          --prev[static_cast<std::size_t>(axis)];
          addable = addable && p.count(prev) > 0;
        }
        if (!addable) continue;
        BoxSet q = p;
        q.insert(c);
        levels[static_cast<std::size_t>(n) + 1].insert(q);
      }
    }
  }
  return levels;
}

SolidPartition P(const std::string& s) { return SolidPartition::parse(s); }

}  // namespace

TEST(SolidPartition, ValidationAndParsing) {
  EXPECT_EQ(P("0,0,0,0").size(), 1U);
  EXPECT_EQ(P("").size(), 0U);
  EXPECT_THROW(P("0,0,0,1"), InvalidPartition);
  EXPECT_THROW(P("0,0,0,0;0,0,0,2"), InvalidPartition);
  EXPECT_THROW(P("0,0,0"), InvalidPartition);
  EXPECT_THROW(P("0,0,0,-1"), InvalidPartition);
  EXPECT_THROW(P("a,b,c,d"), InvalidPartition);
  // Input order does not matter and duplicates are rejected or merged consistently.
  EXPECT_EQ(P("1,0,0,0;0,0,0,0"), P("0,0,0,0;1,0,0,0"));
  EXPECT_TRUE(P("0,0,0,0;0,1,0,0").contains({0, 1, 0, 0}));
}

TEST(Enumeration, MatchesBruteForceOracleUpTo6) {
  auto levels = oracle_levels(6);
  const std::vector<std::size_t> expected = {1, 1, 4, 10, 26, 59, 140};
  for (int n = 0; n <= 6; ++n) {
    auto got = enumerate(static_cast<std::size_t>(n));
    EXPECT_EQ(got.size(), expected[static_cast<std::size_t>(n)]) << "n = " << n;
    std::set<BoxSet> as_sets;
    for (const auto& p : got) as_sets.insert(BoxSet(p.boxes().begin(), p.boxes().end()));
    EXPECT_EQ(as_sets.size(), got.size()) << "duplicates at n = " << n;
    EXPECT_EQ(as_sets, levels[static_cast<std::size_t>(n)]) << "n = " << n;
  }
}

TEST(Enumeration, CountsAndParallelSplitAgree) {
  auto counts = count_partitions(6);
  EXPECT_EQ(counts, (std::vector<std::size_t>{1, 1, 4, 10, 26, 59, 140}));
  auto seq = enumerate_up_to(6, 1);
  for (unsigned threads : {2U, 3U, 8U}) {
    for (std::size_t depth : {1U, 2U, 4U}) EXPECT_EQ(enumerate_up_to(6, threads, depth), seq);
  }
  EXPECT_TRUE(std::is_sorted(seq.begin(), seq.end()));
}

TEST(Enumeration, LexPrefixesAreSolidPartitions) {
  for (const auto& p : enumerate(5)) {
    std::vector<Box> prefix;
    for (const auto& b : p.boxes()) {
      prefix.push_back(b);
      EXPECT_NO_THROW(SolidPartition{prefix});
    }
  }
}

TEST(Statistics, ColorsAndMu) {
  EXPECT_EQ(box_color({1, 0, 0, 0}, 2), 1);
  EXPECT_EQ(box_color({0, 1, 0, 0}, 3), 2);
  EXPECT_EQ(color_vector(P("0,0,0,0;1,0,0,0;0,1,0,0"), 2), (ColorVector{1, 2}));
  EXPECT_EQ(mu(P("0,0,0,0")), 0);
  EXPECT_EQ(mu(P("0,0,0,0;0,0,0,1")), 1);
  EXPECT_EQ(mu(P("0,0,0,0;1,0,0,0")), 0);
  for (const auto& p : enumerate_up_to(5)) {
    for (int axis = 1; axis <= 4; ++axis) {
      EXPECT_GE(mu_axis(p, axis), 0);
      EXPECT_LE(mu_axis(p, axis), static_cast<int>(p.size()));
    }
    EXPECT_EQ(mu_axis(p, 4), mu(p));
  }
}

TEST(Statistics, KStat) {
  EXPECT_EQ(k_stat(P("0,0,0,0")), 0);
  EXPECT_EQ(k_stat(P("0,0,0,0;0,0,0,1")), 1);
  EXPECT_EQ(k_stat(P("0,0,0,0;1,0,0,0")), 0);
}

TEST(Statistics, AStatsAndCStat) {
  auto a = a_stats(P("0,0,0,0"));
  EXPECT_EQ(a, (std::map<std::pair<int, int>, int>{{{0, 0}, 1}}));
  EXPECT_EQ(c_stat(P("0,0,0,0")), -1);
  auto b = a_stats(P("0,0,0,0;1,0,0,0"));
  EXPECT_EQ(b, (std::map<std::pair<int, int>, int>{{{0, 0}, 1}, {{1, 0}, 1}}));
  for (const auto& p : enumerate_up_to(5)) {
    if (p.size() == 0) continue;
    auto s = a_stats(p);
    int a00 = s.count({0, 0}) ? s.at({0, 0}) : 0;
    EXPECT_LE(c_stat(p), -a00);
    EXPECT_LT(-a00, 0);
  }
}

TEST(Statistics, Characters) {
  EXPECT_EQ(character(P("0,0,0,0")), EquivariantClass(1));
  EXPECT_EQ(character(P("0,0,0,0;1,0,0,0")), EquivariantClass(1) + EquivariantClass(Monomial::t(1)));
  EXPECT_EQ(colored_character(P("0,0,0,0;1,0,0,0"), 2, 1), EquivariantClass(Monomial::t(1)));
  for (const auto& p : enumerate_up_to(5)) {
    for (int r : {2, 3, 4}) {
      EquivariantClass total;
      for (int l = 0; l < r; ++l) total += colored_character(p, r, l);
      EXPECT_EQ(total, character(p));
    }
  }
}

TEST(Jsonl, RoundTripAndValidation) {
  auto parts = enumerate(4);
  std::stringstream buf;
  write_partitions_jsonl(buf, parts);
  auto back = read_partitions_jsonl(buf);
  EXPECT_EQ(back, parts);

  std::stringstream first;
  write_partitions_jsonl(first, {P("0,0,0,0;1,0,0,0")});
  EXPECT_EQ(first.str(), "{\"boxes\":[[0,0,0,0],[1,0,0,0]],\"n\":2}\n");

  std::stringstream bad_n(R"({"n": 3, "boxes": [[0,0,0,0]]})");
  EXPECT_THROW(read_partitions_jsonl(bad_n), InvalidPartition);
  std::stringstream not_closed(R"({"n": 1, "boxes": [[0,0,0,1]]})");
  EXPECT_THROW(read_partitions_jsonl(not_closed), InvalidPartition);
  std::stringstream garbage("{nope");
  EXPECT_THROW(read_partitions_jsonl(garbage), InvalidPartition);
}

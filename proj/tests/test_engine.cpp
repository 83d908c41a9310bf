#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include <unistd.h>

#include "dt4/engine/cache.hpp"
#include "dt4/engine/checks.hpp"
#include "dt4/engine/compare.hpp"
#include "dt4/engine/lhs.hpp"
#include "dt4/engine/task.hpp"

using namespace dt4;

namespace {

const LinearForm s1 = LinearForm::s1();
const LinearForm s2 = LinearForm::s2();
const LinearForm s3 = LinearForm::s3();
const LinearForm s4 = LinearForm::s4();
const LinearForm m = LinearForm::m();

std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("dt4_test_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  return dir;
}

VerificationTask orbifold_task(int r, int cutoff, Mode mode = Mode::exact) {
  VerificationTask t;
  t.kind = TaskKind::orbifold_identity;
  t.r = r;
  t.cutoff = cutoff;
  t.mode = mode;
  return t;
}

}  // namespace

TEST(Lhs, ToricLowOrder) {
  ExactField f;
  ExecutionContext ctx;
  auto zero = lhs_toric(c4_geometry(), 0, f, ctx);
  EXPECT_EQ(zero.terms().size(), 1U);
  EXPECT_TRUE(zero.constant_term().is_one());
  auto one = lhs_toric(c4_geometry(), 1, f, ctx);
  Poly num = Poly(m) * Poly(s1 + s2) * Poly(s1 + s3) * Poly(s2 + s3);
  EXPECT_EQ(one.coefficient({1}), FactoredRational(num, FormMultiset{{s1, 1}, {s2, 1}, {s3, 1}, {s4, 1}}));
  EXPECT_TRUE(lhs_toric(a_series_geometry(3), 0, f, ctx).constant_term().is_one());
}

TEST(Lhs, OrbifoldLowOrderAndROne) {
  ExactField f;
  ExecutionContext ctx;
  auto orb = lhs_orbifold(2, 1, f, ctx);
  EXPECT_EQ(orb.coefficient({1, 0}), FactoredRational(Poly(m) * Poly(s1 + s2), FormMultiset{{s3, 1}, {s4, 1}}));
  EXPECT_TRUE(orb.coefficient({0, 1}).is_zero());
  EXPECT_TRUE(lhs_orbifold(3, 0, f, ctx).constant_term().is_one());
  auto one = lhs_orbifold(1, 3, f, ctx);
  auto c4 = lhs_toric(c4_geometry(), 3, f, ctx);
  ASSERT_EQ(one.terms().size(), c4.terms().size());
  for (const auto& [e, c] : c4.terms()) EXPECT_EQ(one.coefficient(e), c);
}

TEST(Compare, IdenticalAndDifferingSeries) {
  ExactField f;
  TruncatedSeries<ExactField> a(f, color_variables(2), 2);
  a.add_term({0, 0}, FactoredRational(1));
  a.add_term({1, 0}, FactoredRational(s1).divided_by(s2));
  a.add_term({1, 1}, FactoredRational(3));
  auto same = compare(a, a);
  EXPECT_EQ(same.size(), 3U);
  for (const auto& r : same) EXPECT_TRUE(r.equal);

  auto b = a;
  b.add_term({1, 1}, FactoredRational(1));
  auto diff = compare(a, b);
  std::vector<Exponent> bad;
  for (const auto& r : diff) {
    if (!r.equal) bad.push_back(r.exponents);
  }
  EXPECT_EQ(bad, (std::vector<Exponent>{{1, 1}}));
  Report rep;
  rep.coefficients = diff;
  rep.finalize();
  EXPECT_EQ(rep.status, Status::fail);
}

TEST(Compare, FailureBoundAndPrimeValidation) {
  EXPECT_EQ(failure_bound(0, kDefaultPrime, 5), "0.000e+00");
  EXPECT_EQ(failure_bound(10, 11, 2), "1.000e+00");
  EXPECT_THROW(validate_prime(kDefaultPrime + 2, 3), ConfigError);
  EXPECT_THROW(validate_prime(5, 3), ConfigError);  // 3! = 6 >= 5
  EXPECT_NO_THROW(validate_prime(7, 3));
}

TEST(Checks, DimensionReduction) {
  ExecutionContext ctx;
  for (int r : {1, 2}) {
    auto res = check_dimension_reduction(r, 2, ctx);
    for (const auto& rec : res.records) EXPECT_TRUE(rec.equal) << r;
  }
  auto trivial = check_dimension_reduction(2, 0, ctx);
  ASSERT_EQ(trivial.records.size(), 1U);
  EXPECT_TRUE(trivial.records[0].equal);
}

TEST(Checks, DivisibilityAndPoleOrder) {
  ExecutionContext ctx;
  auto div = check_divisibility(2, 2, ctx);
  ASSERT_FALSE(div.records.empty());
  for (const auto& rec : div.records) EXPECT_TRUE(rec.equal) << rec.lhs;
  for (const auto& rec : div.records) {
    if (rec.exponents == Exponent{1, 0}) {
      EXPECT_EQ(rec.lhs, "m:1 s1+s2:1");
    }
  }
  auto pole = check_pole_order(2, 2, ctx);
  for (const auto& rec : pole.records) EXPECT_TRUE(rec.equal) << rec.lhs;
  // The q0 coefficient of the log is the single-box term: simple pole along s3.
  bool found = false;
  for (const auto& rec : pole.records) {
    if (rec.exponents == Exponent{1, 0}) {
      found = true;
      EXPECT_EQ(rec.lhs, "s3:-1");
    }
  }
  EXPECT_TRUE(found);
}

TEST(Checks, PerPartitionSuitesSmall) {
  ExecutionContext ctx{2, nullptr};
  for (const auto& rec : check_zr_consistency(3, {2, 3}, ctx).records) EXPECT_TRUE(rec.equal) << rec.label;
  for (const auto& rec : check_cpi(3, {2}, ctx).records) EXPECT_TRUE(rec.equal) << rec.label;
  for (const auto& rec : check_alt_sign(3, {2, 3}, ctx).records) EXPECT_TRUE(rec.equal) << rec.label;
  auto counts = check_partition_count(5, ctx);
  ASSERT_EQ(counts.records.size(), 6U);
  EXPECT_EQ(counts.records[5].lhs, "59");
  EXPECT_EQ(cpi_constant_term(v_tilde_zr(SolidPartition::parse("0,0,0,0"), 2)), -1);
  EXPECT_THROW(check_cpi(2, {0}, ctx), ConfigError);
}

TEST(Run, PartitionCountTask) {
  VerificationTask t;
  t.kind = TaskKind::partition_count;
  t.cutoff = 5;
  Report r = run(t);
  EXPECT_EQ(r.status, Status::pass);
  std::vector<std::string> counts;
  for (const auto& rec : r.coefficients) counts.push_back(rec.lhs.get<std::string>());
  EXPECT_EQ(counts, (std::vector<std::string>{"1", "1", "4", "10", "26", "59"}));
}

TEST(Run, ConfigErrorsAreReported) {
  Report bad_r = run(orbifold_task(0, 2));
  EXPECT_EQ(bad_r.status, Status::error);
  EXPECT_EQ(bad_r.error_kind, ErrorKind::config);
  auto t = orbifold_task(2, 2, Mode::modp);
  t.trials = 0;
  EXPECT_EQ(run(t).error_kind, ErrorKind::config);
  auto dim = orbifold_task(2, 2, Mode::modp);
  dim.kind = TaskKind::dimension_reduction;
  EXPECT_EQ(run(dim).error_kind, ErrorKind::config);
  VerificationTask toric;
  toric.cutoff = 1;
  EXPECT_EQ(run(toric).error_kind, ErrorKind::config);  // no geometry
}

TEST(Run, DegeneratePointsExhaustTheRetryCap) {
  // Modulo 2 every sample is (1,1,1,1), where s2 - s1 vanishes on the A1 x C2 charts.
  VerificationTask t;
  t.kind = TaskKind::toric_identity;
  t.geometry = a_series_geometry(2);
  t.cutoff = 1;
  t.mode = Mode::modp;
  t.prime = 2;
  t.trials = 1;
  Report r = run(t);
  EXPECT_EQ(r.status, Status::error);
  EXPECT_EQ(r.error_kind, ErrorKind::degenerate);
}

TEST(Run, ExactAndModularAgree) {
  Report exact = run(orbifold_task(2, 2));
  Report modp = run(orbifold_task(2, 2, Mode::modp));
  EXPECT_EQ(exact.status, Status::pass);
  EXPECT_EQ(modp.status, Status::pass);
  ASSERT_EQ(modp.sample_points.size(), 5U);
  ASSERT_TRUE(modp.prime.has_value());
  // The exact coefficients specialize to the reported residues.
  ExactField ef;
  ExecutionContext ctx;
  auto lhs = lhs_orbifold(2, 2, ef, ctx);
  for (const auto& rec : modp.coefficients) {
    for (std::size_t t = 0; t < modp.sample_points.size(); ++t) {
      PrimeSample at{*modp.prime, modp.sample_points[t], modp.seed.value()};
      EXPECT_EQ(rec.lhs[t].get<std::string>(), std::to_string(lhs.coefficient(rec.exponents).specialize(at)));
    }
  }
}

TEST(Run, DeterministicAcrossThreadsAndCacheState) {
  auto dir = fresh_dir("det");
  std::string reference;
  for (unsigned threads : {1U, 2U, 8U}) {
    auto t = orbifold_task(2, 3);
    t.threads = threads;
    t.cache_dir = dir.string();
    Report r = run(t);
    EXPECT_EQ(r.status, Status::pass);
    std::string body = r.to_json(false).dump();
    if (reference.empty()) {
      reference = body;
      EXPECT_GT(r.cache_misses, 0U);
    } else {
      EXPECT_EQ(body, reference);
      EXPECT_GT(r.cache_hits, 0U);
      EXPECT_EQ(r.cache_misses, 0U);
    }
  }
  std::filesystem::remove_all(dir);
}

TEST(Cache, PersistsAndRoundTripsValues) {
  auto dir = fresh_dir("cache");
  const Chart chart = Chart::standard();
  std::vector<FactoredRational> first;
  {
    ContributionCache cache(dir);
    ExecutionContext ctx{1, &cache};
    for (const auto& p : enumerate_up_to(3)) first.push_back(cached_contribution(p, chart, ctx));
    EXPECT_EQ(cache.hits(), 0U);
  }
  {
    ContributionCache cache(dir);
    ExecutionContext ctx{1, &cache};
    std::size_t i = 0;
    for (const auto& p : enumerate_up_to(3)) EXPECT_EQ(cached_contribution(p, chart, ctx), first[i++]);
    EXPECT_EQ(cache.misses(), 0U);
  }
  // A torn trailing line is ignored.
  {
    std::ofstream out(dir / "contributions.jsonl", std::ios::app);
    out << "{\"geometry\": \"x\", \"boxes\"";
  }
  ContributionCache again(dir);
  EXPECT_EQ(again.size(), first.size());
  // Different L gives a different key.
  ContributionCache memory;
  ExecutionContext ctx{1, &memory};
  auto p = SolidPartition::parse("0,0,0,0");
  EXPECT_NE(cached_contribution(p, Chart::standard({1, 0, 0, 0}), ctx), cached_contribution(p, chart, ctx));
  std::filesystem::remove_all(dir);
}

TEST(Cache, SerializationRoundTrip) {
  FactoredRational x = FactoredRational(Poly(m) * Poly(s1 + s2) * mpq_class(-3, 7)).divided_by(s3).divided_by(s4, 2);
  auto j = detail::rational_to_json(x, -1);
  EXPECT_EQ(detail::rational_from_json(j), -x);
  EXPECT_EQ(geometry_hash("a"), geometry_hash("a"));
  EXPECT_NE(geometry_hash("a"), geometry_hash("b"));
}

TEST(Report, JsonShape) {
  Report r = run(orbifold_task(2, 1, Mode::modp));
  auto j = r.to_json();
  for (const char* key : {"task", "status", "coefficients", "partitions_processed", "prime", "trials", "seed",
                          "elapsed_ms", "failure_probability_bound", "sample_points"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_FALSE(r.to_json(false).contains("elapsed_ms"));
  EXPECT_FALSE(j["task"].contains("threads"));
  Report e = run(orbifold_task(2, 1));
  EXPECT_FALSE(e.to_json().contains("prime"));
}

// Copyright 2026 The ReasonLink Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "reasonlink/analytics.h"

#include <random>

#include <gtest/gtest.h>

#include "alpha_oracles.h"
#include "reasonlink/kernels.h"

namespace reasonlink {
namespace {

constexpr double kTol = 1e-9;
using testing::_;
using testing::PairwiseAlpha;
using testing::PinnedMatrices;
using testing::Pinned;
using testing::Rows;

TEST(KrippendorffTest, PinnedValues) {
  for (const Pinned& p : PinnedMatrices()) {
    const RatingMatrix data = RatingMatrix::FromRows(p.rows);
    for (Execution exec : {Execution::kSerial, Execution::kParallel}) {
      const AlphaResult nominal = KrippendorffAlpha(data, Metric::kNominal, exec);
      const AlphaResult interval = KrippendorffAlpha(data, Metric::kInterval, exec);
      ASSERT_EQ(nominal.status, AlphaStatus::kOk) << p.name;
      EXPECT_NEAR(nominal.alpha, p.nominal, kTol) << p.name;
      EXPECT_NEAR(interval.alpha, p.interval, kTol) << p.name;
    }
    EXPECT_NEAR(*PairwiseAlpha(p.rows, Metric::kNominal), p.nominal, kTol) << p.name;
    EXPECT_NEAR(*PairwiseAlpha(p.rows, Metric::kInterval), p.interval, kTol) << p.name;
  }
}

TEST(KrippendorffTest, MatchesPairwiseOracleOnRandomData) {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int items = 2 + static_cast<int>(rng() % 30);
    const int raters = 2 + static_cast<int>(rng() % 6);
    Rows rows(items, std::vector<std::optional<double>>(raters));
    for (auto& row : rows) {
      for (auto& x : row) {
        if (rng() % 4 != 0) x = 1 + static_cast<double>(rng() % 5);
      }
    }
    const RatingMatrix data = RatingMatrix::FromRows(rows);
    for (Metric m : {Metric::kNominal, Metric::kInterval}) {
      const auto want = PairwiseAlpha(rows, m);
      const auto got = KrippendorffAlpha(data, m).value();
      ASSERT_EQ(want.has_value(), got.has_value()) << trial;
      if (want) EXPECT_NEAR(*got, *want, kTol) << trial;
    }
  }
}

TEST(KrippendorffTest, PerfectAgreement) {
  const RatingMatrix data = RatingMatrix::FromRows({{1, 1, 1}, {2, 2, _}, {5, 5, 5}});
  EXPECT_DOUBLE_EQ(*KrippendorffAlpha(data, Metric::kNominal).value(), 1.0);
  EXPECT_DOUBLE_EQ(*KrippendorffAlpha(data, Metric::kInterval).value(), 1.0);
}

TEST(KrippendorffTest, ZeroExpectedDisagreementIsUndefined) {
  const RatingMatrix data = RatingMatrix::FromRows({{3, 3}, {3, 3}, {3, _}});
  const AlphaResult r = KrippendorffAlpha(data, Metric::kNominal);
  EXPECT_EQ(r.status, AlphaStatus::kUndefined);
  EXPECT_FALSE(r.value().has_value());
}

TEST(KrippendorffTest, NoPairableValues) {
  const RatingMatrix data = RatingMatrix::FromRows({{1, _}, {_, 2}});
  EXPECT_EQ(KrippendorffAlpha(data, Metric::kNominal).status, AlphaStatus::kInsufficientData);
  EXPECT_EQ(KrippendorffAlpha(RatingMatrix(0, 0), Metric::kInterval).status,
            AlphaStatus::kInsufficientData);
}

TEST(KrippendorffTest, InvariantUnderRowAndColumnPermutation) {
  const Rows& rows = PinnedMatrices()[1].rows;
  Rows permuted(rows.rbegin(), rows.rend());
  for (auto& row : permuted) std::reverse(row.begin(), row.end());
  for (Metric m : {Metric::kNominal, Metric::kInterval}) {
    EXPECT_NEAR(*KrippendorffAlpha(RatingMatrix::FromRows(rows), m).value(),
                *KrippendorffAlpha(RatingMatrix::FromRows(permuted), m).value(), kTol);
  }
}

TEST(KrippendorffTest, ReliabilityReport) {
  const ReliabilityReport r = ComputeReliability(RatingMatrix::FromRows(PinnedMatrices()[0].rows));
  EXPECT_NEAR(*r.alpha_nominal, 9.0 / 19, kTol);
  EXPECT_EQ(r.n_items, 4);
  EXPECT_EQ(r.n_raters, 3);
  EXPECT_EQ(r.n_pairable, 11);
}

TEST(CoincidenceKernelTest, ParallelMatchesSerial) {
  std::mt19937 rng(3);
  const int items = 3000, raters = 7, values = 5;
  std::vector<int> codes(items * raters);
  for (int& c : codes) c = rng() % 5 == 0 ? -1 : static_cast<int>(rng() % values);
  const auto s = kernels::AccumulateCoincidencesSerial(codes, items, raters, values);
  const auto p = kernels::AccumulateCoincidencesParallel(codes, items, raters, values);
  EXPECT_EQ(s.pairable_units, p.pairable_units);
  ASSERT_EQ(s.cells.size(), p.cells.size());
  for (size_t i = 0; i < s.cells.size(); ++i) EXPECT_NEAR(s.cells[i], p.cells[i], 1e-9);
}

KeptChain Chain(const std::string& arg, const std::string& implicit) {
  KeptChain c{arg, {}};
  c.chain.action.text = "Banning whaling";
  c.chain.implicit.text = implicit;
  c.chain.outcome.text = "Fewer whales killed";
  return c;
}

TEST(DatasetStatisticsTest, Counts) {
  std::vector<Argument> args(4);
  const char* premises[] = {"Whales suffer.", "Hunting is cruel to whales.", "x", "y"};
  for (int i = 0; i < 4; ++i) {
    args[i].id = "a" + std::to_string(i);
    args[i].premise = premises[i];
  }
  const std::vector<KeptChain> chains = {Chain("a0", "Less hunting"), Chain("a0", "less hunting."),
                                         Chain("a0", "Smaller fleets"), Chain("a1", "Fewer harpoons")};
  const DatasetStatistics s = ComputeDatasetStatistics(chains, args);
  EXPECT_EQ(s.n_chains, 4);
  EXPECT_EQ(s.n_unique_chains, 3);
  EXPECT_EQ(s.n_premises, 4);
  EXPECT_EQ(s.n_premise_zero, 2);
  EXPECT_EQ(s.n_premise_one, 1);
  EXPECT_EQ(s.n_premise_multi, 1);
  EXPECT_DOUBLE_EQ(s.pct_premise_with_chain, 50.0);
  EXPECT_DOUBLE_EQ(s.avg_chains_per_covered_premise, 2.0);
  EXPECT_DOUBLE_EQ(s.avg_premise_len, 3.5);
  EXPECT_DOUBLE_EQ(s.avg_outcome_len, 3.0);
  EXPECT_DOUBLE_EQ(s.avg_implicit_len, 2.0);

  const auto hist = CoverageHistogram(chains, args);
  EXPECT_EQ(hist, (std::map<int, int>{{0, 2}, {1, 1}, {2, 0}, {3, 1}, {4, 0}, {5, 0}}));
}

TEST(DatasetStatisticsTest, EmptyAndUnknownArgument) {
  const DatasetStatistics s = ComputeDatasetStatistics({}, {});
  EXPECT_EQ(s.n_chains, 0);
  EXPECT_EQ(s.pct_premise_with_chain, 0.0);
  const std::vector<KeptChain> stray = {Chain("nope", "x")};
  EXPECT_THROW(ComputeDatasetStatistics(stray, {}), std::invalid_argument);
}

}  // namespace
}  // namespace reasonlink

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

#include "reasonlink/aggregation.h"

#include <gtest/gtest.h>

#include "reasonlink/kernels.h"

namespace reasonlink {
namespace {

using F = Feasibility;

Decision Feas(std::vector<F> votes) { return AggregateFeasibility(votes).decision; }
Decision Valid(std::vector<bool> votes) {
  std::unique_ptr<bool[]> buf(new bool[votes.size()]);
  std::copy(votes.begin(), votes.end(), buf.get());
  return AggregateOutcomeValidity(std::span<const bool>(buf.get(), votes.size())).decision;
}
Decision Scores(std::vector<int> s, ScoreRule rule = ScoreRule::kBipartition) {
  AggregationConfig c;
  c.score_rule = rule;
  return AggregateScores(s, c).decision;
}

TEST(FeasibilityTest, Rules) {
  EXPECT_EQ(Feas({F::kCanWrite, F::kCanWrite, F::kCanWrite, F::kUnsure, F::kCannotWrite}),
            Decision::kKeep);
  EXPECT_EQ(Feas({F::kCannotWrite, F::kCannotWrite, F::kCannotWrite, F::kUnsure, F::kCanWrite}),
            Decision::kDiscard);
  EXPECT_EQ(Feas({F::kCannotWrite, F::kCannotWrite, F::kUnsure, F::kCanWrite, F::kCanWrite}),
            Decision::kDoubtful);
  // Unsure votes count toward the discard total but cannot carry it alone.
  EXPECT_EQ(Feas({F::kUnsure, F::kUnsure, F::kUnsure, F::kCanWrite, F::kCanWrite}),
            Decision::kDoubtful);
  EXPECT_EQ(Feas({F::kCannotWrite, F::kCannotWrite, F::kUnsure, F::kCanWrite}), Decision::kDiscard);
}

TEST(FeasibilityTest, TallyAndMajority) {
  const AggregationVerdict v =
      AggregateFeasibility(std::vector<F>{F::kCanWrite, F::kCanWrite, F::kCanWrite, F::kUnsure});
  EXPECT_EQ(v.votes(), 4);
  EXPECT_EQ(v.tally.at("can_write"), 3);
  EXPECT_EQ(MajorityFeasibility(v), F::kCanWrite);
  const AggregationVerdict tie = AggregateFeasibility(
      std::vector<F>{F::kCanWrite, F::kCanWrite, F::kUnsure, F::kUnsure, F::kCannotWrite});
  EXPECT_FALSE(MajorityFeasibility(tie).has_value());
}

TEST(FeasibilityTest, ConfigurableThreshold) {
  AggregationConfig c;
  c.k_feasibility = 2;
  EXPECT_EQ(AggregateFeasibility(std::vector<F>{F::kCanWrite, F::kCanWrite, F::kUnsure}, c).decision,
            Decision::kKeep);
}

TEST(ValidityTest, Rules) {
  EXPECT_EQ(Valid({true, true, true, false, false}), Decision::kKeep);
  EXPECT_EQ(Valid({false, false, false, true, true}), Decision::kDiscard);
  EXPECT_EQ(Valid({true, true, false, false}), Decision::kDoubtful);
}

TEST(ScoreTest, Bipartition) {
  EXPECT_EQ(Scores({4, 5, 4, 1, 2}), Decision::kKeep);
  EXPECT_EQ(Scores({3, 3, 3, 5, 5}), Decision::kDiscard);
  EXPECT_EQ(Scores({4, 5, 3, 2}), Decision::kDoubtful);
}

TEST(ScoreTest, ModeRule) {
  EXPECT_EQ(Scores({4, 4, 1, 2, 3}, ScoreRule::kMode), Decision::kKeep);
  EXPECT_EQ(Scores({3, 3, 5, 4, 1}, ScoreRule::kMode), Decision::kDiscard);
  EXPECT_EQ(Scores({1, 2, 3, 4, 5}, ScoreRule::kMode), Decision::kDoubtful);
}

TEST(AggregationErrorTest, Codes) {
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const AggregationError& e) {
      return e.code();
    }
    return std::string("none");
  };
  EXPECT_EQ(code([] { AggregateScores(std::vector<int>{}); }), "EMPTY_VOTES");
  EXPECT_EQ(code([] { AggregateScores(std::vector<int>{4, 4, 4, 4, 4, 4}); }), "TOO_MANY_VOTES");
  EXPECT_EQ(code([] { AggregateScores(std::vector<int>{0, 4}); }), "SCORE_OUT_OF_RANGE");
  EXPECT_EQ(code([] { AggregateScores(std::vector<int>{6}); }), "SCORE_OUT_OF_RANGE");
}

TEST(AggregationConfigTest, Validate) {
  EXPECT_TRUE(AggregationConfig{}.Validate().empty());
  AggregationConfig c;
  c.k_score = 0;
  EXPECT_FALSE(c.Validate().empty());
}

// With five votes and threshold three, one side of a two-way split always
// reaches three.
TEST(PigeonholeTest, NoDoubtfulWithFiveBinaryVotes) {
  for (int mask = 0; mask < 32; ++mask) {
    std::vector<bool> v;
    for (int b = 0; b < 5; ++b) v.push_back(mask >> b & 1);
    EXPECT_NE(Valid(v), Decision::kDoubtful) << mask;
  }
}

TEST(PigeonholeTest, NoDoubtfulWithFiveScores) {
  int n = 0;
  for (int code = 0; code < 3125; ++code) {
    std::vector<int> s;
    for (int c = code, i = 0; i < 5; ++i, c /= 5) s.push_back(c % 5 + 1);
    EXPECT_NE(Scores(s), Decision::kDoubtful);
    ++n;
  }
  EXPECT_EQ(n, 3125);
}

std::vector<kernels::PackedVotes> AllVectors(int arity, int max_len) {
  std::vector<kernels::PackedVotes> out;
  for (int len = 0; len <= max_len; ++len) {
    int total = 1;
    for (int i = 0; i < len; ++i) total *= arity;
    for (int code = 0; code < total; ++code) {
      kernels::PackedVotes p;
      for (int c = code, i = 0; i < len; ++i, c /= arity) p.push(static_cast<uint8_t>(c % arity + (arity == 5)));
      out.push_back(p);
    }
  }
  return out;
}

TEST(KernelTest, ParallelMatchesSerial) {
  const auto binary = AllVectors(2, 5);
  std::vector<Decision> a(binary.size()), b(binary.size());
  kernels::ClassifyBinarySerial(binary, a, 3);
  kernels::ClassifyBinaryParallel(binary, b, 3);
  EXPECT_EQ(a, b);

  const auto scores = AllVectors(5, 5);
  for (ScoreRule rule : {ScoreRule::kBipartition, ScoreRule::kMode}) {
    std::vector<Decision> s(scores.size()), p(scores.size());
    kernels::ClassifyScoresSerial(scores, s, 3, rule);
    kernels::ClassifyScoresParallel(scores, p, 3, rule);
    EXPECT_EQ(s, p);
  }
}

Phase1Response P1(const std::string& arg, const std::string& worker, F f) {
  Phase1Response r;
  r.task_id = "p1-" + arg;
  r.argument_id = arg;
  r.worker = worker;
  r.feasibility = f;
  r.outcome_text = "Outcome";
  if (f == F::kCanWrite) {
    r.chain = ReasoningChain{};
    r.chain->implicit.text = "step by " + worker;
  }
  return r;
}

Phase2Response P2(const std::string& chain, const std::string& worker, bool valid,
                  std::optional<int> score) {
  return Phase2Response{"p2-" + chain, worker, chain, valid, score};
}

TEST(FunnelTest, BucketsChains) {
  std::vector<Phase1Response> p1;
  for (const char* w : {"a", "b", "c", "d"}) p1.push_back(P1("x", w, F::kCanWrite));
  p1.push_back(P1("x", "e", F::kUnsure));
  for (const char* w : {"a", "b", "c"}) p1.push_back(P1("y", w, F::kCannotWrite));
  p1.push_back(P1("y", "d", F::kCanWrite));

  std::vector<Phase2Response> p2;
  for (int i = 0; i < 5; ++i) {
    const std::string w = "v" + std::to_string(i);
    p2.push_back(P2("p1-x/a", w, true, 5));
    p2.push_back(P2("p1-x/b", w, i < 3, i < 4 ? std::optional<int>(i < 2 ? 5 : 1) : std::nullopt));
    p2.push_back(P2("p1-x/c", w, i > 2, std::nullopt));
  }
  const FunnelReport r = RunFunnel(p1, p2);
  EXPECT_EQ(r.claim_premise_pairs, 2);
  EXPECT_EQ(r.feasible_pairs, 1);
  EXPECT_EQ(r.infeasible_pairs, 1);
  EXPECT_EQ(r.chains, 4);
  EXPECT_EQ(r.invalid_outcome, 1);
  EXPECT_EQ(r.valid_outcome, 2);
  EXPECT_EQ(r.kept, 1);
  EXPECT_EQ(r.discarded, 0);
  // x/b splits its four scores; x/d has no votes at all.
  EXPECT_EQ(r.doubtful, 2);
  ASSERT_EQ(r.chain_verdicts.size(), 4u);
  EXPECT_EQ(r.chain_verdicts[0].chain_id, "p1-x/a");
  EXPECT_EQ(r.chain_verdicts[0].bucket, FunnelBucket::kKeep);
  EXPECT_EQ(r.chain_verdicts[2].bucket, FunnelBucket::kInvalidOutcome);
  EXPECT_EQ(r.chain_verdicts[3].bucket, FunnelBucket::kDoubtful);
}

TEST(FunnelTest, DanglingReference) {
  std::vector<Phase1Response> p1 = {P1("x", "a", F::kCanWrite)};
  std::vector<Phase2Response> p2 = {P2("p1-x/zz", "v", true, 4)};
  try {
    RunFunnel(p1, p2);
    FAIL();
  } catch (const AggregationError& e) {
    EXPECT_EQ(e.code(), "DANGLING_REFERENCE");
  }
}

}  // namespace
}  // namespace reasonlink

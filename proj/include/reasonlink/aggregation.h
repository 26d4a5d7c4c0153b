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

#ifndef REASONLINK_AGGREGATION_H_
#define REASONLINK_AGGREGATION_H_

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "reasonlink/annotation_types.h"

namespace reasonlink {

enum class Decision { kKeep, kDiscard, kDoubtful };

std::string_view ToString(Decision d);

// How 1-5 rubric scores are reduced to a decision.
enum class ScoreRule {
  // {4,5} against {1,2,3}; the side with at least k_score votes wins.
  kBipartition,
  // Most frequent exact score; ties are Doubtful, a mode of 4 or 5 keeps.
  kMode,
};

struct AggregationConfig {
  int k_feasibility = 3;
  int k_validity = 3;
  int k_score = 3;
  int max_votes = 5;
  ScoreRule score_rule = ScoreRule::kBipartition;

  std::vector<std::string> Validate() const;
};

struct AggregationVerdict {
  std::string subject;
  Decision decision = Decision::kDoubtful;
  std::map<std::string, int> tally;
  std::string rule;

  int votes() const;
  bool operator==(const AggregationVerdict&) const = default;
};

class AggregationError : public std::runtime_error {
 public:
  AggregationError(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  // EMPTY_VOTES, TOO_MANY_VOTES, SCORE_OUT_OF_RANGE or DANGLING_REFERENCE.
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Keep when can_write reaches k; Discard when cannot_write + unsure reaches k
// and cannot_write strictly outnumbers each other class; otherwise Doubtful.
AggregationVerdict AggregateFeasibility(std::span<const Feasibility> votes,
                                        const AggregationConfig& config = {});

AggregationVerdict AggregateOutcomeValidity(std::span<const bool> votes,
                                            const AggregationConfig& config = {});

AggregationVerdict AggregateScores(std::span<const int> scores,
                                   const AggregationConfig& config = {});

// The class holding at least k_feasibility votes, if any. Bonuses go to
// workers in this class.
std::optional<Feasibility> MajorityFeasibility(const AggregationVerdict& verdict,
                                               const AggregationConfig& config = {});

enum class FunnelBucket { kKeep, kDiscard, kDoubtful, kInvalidOutcome };

std::string_view ToString(FunnelBucket b);

struct FunnelChain {
  std::string chain_id;
  std::string argument_id;
  std::string phase1_task_id;
  ReasoningChain chain;
  AggregationVerdict validity;
  std::optional<AggregationVerdict> score;  // only when the outcome was valid
  FunnelBucket bucket = FunnelBucket::kDoubtful;
};

struct FunnelReport {
  int claim_premise_pairs = 0;
  int feasible_pairs = 0;
  int infeasible_pairs = 0;
  int undecided_pairs = 0;
  int chains = 0;
  int invalid_outcome = 0;
  int valid_outcome = 0;
  int kept = 0;
  int discarded = 0;
  int doubtful = 0;

  std::vector<AggregationVerdict> feasibility;  // one per pair, by argument id
  std::vector<FunnelChain> chain_verdicts;      // by (argument id, chain id)
};

// Recomputes every verdict from raw responses. Throws AggregationError with
// DANGLING_REFERENCE when a Phase 2 response names a chain that did not come
// out of Phase 1 aggregation.
FunnelReport RunFunnel(std::span<const Phase1Response> phase1,
                       std::span<const Phase2Response> phase2,
                       const AggregationConfig& config = {});

}  // namespace reasonlink

#endif  // REASONLINK_AGGREGATION_H_

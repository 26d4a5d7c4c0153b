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

#include <algorithm>
#include <memory>
#include <unordered_map>

#include "reasonlink/kernels.h"

namespace reasonlink {

namespace {

void CheckVoteCount(size_t n, const AggregationConfig& config) {
  if (n == 0) throw AggregationError("EMPTY_VOTES", "no votes to aggregate");
  if (n > static_cast<size_t>(config.max_votes)) {
    throw AggregationError("TOO_MANY_VOTES", std::to_string(n) + " votes exceed the cap of " +
                                                 std::to_string(config.max_votes));
  }
}

}  // namespace

std::string_view ToString(Decision d) {
  switch (d) {
    case Decision::kKeep:
      return "keep";
    case Decision::kDiscard:
      return "discard";
    case Decision::kDoubtful:
      return "doubtful";
  }
  return "unknown";
}

std::string_view ToString(FunnelBucket b) {
  switch (b) {
    case FunnelBucket::kKeep:
      return "keep";
    case FunnelBucket::kDiscard:
      return "discard";
    case FunnelBucket::kDoubtful:
      return "doubtful";
    case FunnelBucket::kInvalidOutcome:
      return "invalid_outcome";
  }
  return "unknown";
}

std::vector<std::string> AggregationConfig::Validate() const {
  std::vector<std::string> errors;
  if (max_votes < 1 || max_votes > 8) errors.push_back("max_votes: must be within [1,8]");
  auto check_k = [&](int k, const char* name) {
    if (k < 1 || k > max_votes) {
      errors.push_back(std::string(name) + ": must be within [1,max_votes]");
    }
  };
  check_k(k_feasibility, "k_feasibility");
  check_k(k_validity, "k_validity");
  check_k(k_score, "k_score");
  return errors;
}

int AggregationVerdict::votes() const {
  int n = 0;
  for (const auto& [_, c] : tally) n += c;
  return n;
}

AggregationVerdict AggregateFeasibility(std::span<const Feasibility> votes,
                                        const AggregationConfig& config) {
  CheckVoteCount(votes.size(), config);
  int can = 0, cannot = 0, unsure = 0;
  for (Feasibility f : votes) {
    can += f == Feasibility::kCanWrite;
    cannot += f == Feasibility::kCannotWrite;
    unsure += f == Feasibility::kUnsure;
  }
  AggregationVerdict v;
  v.tally = {{"can_write", can}, {"cannot_write", cannot}, {"unsure", unsure}};
  const int k = config.k_feasibility;
  if (can >= k) {
    v.decision = Decision::kKeep;
    v.rule = "can_write>=" + std::to_string(k);
  } else if (cannot + unsure >= k && cannot > can && cannot > unsure) {
    v.decision = Decision::kDiscard;
    v.rule = "cannot_write+unsure>=" + std::to_string(k) + ",cannot_write plurality";
  } else {
    v.decision = Decision::kDoubtful;
    v.rule = "no_majority";
  }
  return v;
}

AggregationVerdict AggregateOutcomeValidity(std::span<const bool> votes,
                                            const AggregationConfig& config) {
  CheckVoteCount(votes.size(), config);
  kernels::PackedVotes packed;
  for (bool b : votes) packed.push(b ? 1 : 0);
  const int yes = static_cast<int>(std::count(votes.begin(), votes.end(), true));
  AggregationVerdict v;
  v.tally = {{"yes", yes}, {"no", static_cast<int>(votes.size()) - yes}};
  v.decision = kernels::ClassifyBinary(packed, config.k_validity);
  const std::string k = std::to_string(config.k_validity);
  v.rule = v.decision == Decision::kKeep      ? "yes>=" + k
           : v.decision == Decision::kDiscard ? "no>=" + k
                                              : "no_majority";
  return v;
}

AggregationVerdict AggregateScores(std::span<const int> scores, const AggregationConfig& config) {
  CheckVoteCount(scores.size(), config);
  kernels::PackedVotes packed;
  AggregationVerdict v;
  for (int s : scores) {
    if (s < 1 || s > 5) {
      throw AggregationError("SCORE_OUT_OF_RANGE", "score " + std::to_string(s) +
                                                       " is outside 1..5");
    }
    packed.push(static_cast<uint8_t>(s));
    ++v.tally[std::to_string(s)];
  }
  v.decision = kernels::ClassifyScores(packed, config.k_score, config.score_rule);
  const std::string k = std::to_string(config.k_score);
  if (config.score_rule == ScoreRule::kBipartition) {
    v.rule = v.decision == Decision::kKeep      ? "score_in_{4,5}>=" + k
             : v.decision == Decision::kDiscard ? "score_in_{1,2,3}>=" + k
                                                : "no_majority";
  } else {
    v.rule = v.decision == Decision::kDoubtful ? "no_unique_mode" : "mode";
  }
  return v;
}

std::optional<Feasibility> MajorityFeasibility(const AggregationVerdict& verdict,
                                               const AggregationConfig& config) {
  for (Feasibility f : {Feasibility::kCanWrite, Feasibility::kCannotWrite, Feasibility::kUnsure}) {
    auto it = verdict.tally.find(std::string(ToString(f)));
    if (it != verdict.tally.end() && it->second >= config.k_feasibility) return f;
  }
  return std::nullopt;
}

FunnelReport RunFunnel(std::span<const Phase1Response> phase1,
                       std::span<const Phase2Response> phase2, const AggregationConfig& config) {
  FunnelReport report;

  // Phase 1: group by argument, in id order.
  std::map<std::string, std::vector<const Phase1Response*>> by_argument;
  for (const Phase1Response& r : phase1) by_argument[r.argument_id].push_back(&r);

  std::unordered_map<std::string, size_t> chain_index;
  for (const auto& [argument_id, responses] : by_argument) {
    std::vector<Feasibility> votes;
    for (const Phase1Response* r : responses) votes.push_back(r->feasibility);
    AggregationVerdict v = AggregateFeasibility(votes, config);
    v.subject = argument_id;
    ++report.claim_premise_pairs;
    switch (v.decision) {
      case Decision::kKeep:
        ++report.feasible_pairs;
        break;
      case Decision::kDiscard:
        ++report.infeasible_pairs;
        break;
      case Decision::kDoubtful:
        ++report.undecided_pairs;
        break;
    }
    if (v.decision == Decision::kKeep) {
      std::vector<const Phase1Response*> writers;
      for (const Phase1Response* r : responses) {
        if (r->feasibility == Feasibility::kCanWrite && r->chain) writers.push_back(r);
      }
      std::sort(writers.begin(), writers.end(), [](const auto* a, const auto* b) {
        return ChainId(a->task_id, a->worker) < ChainId(b->task_id, b->worker);
      });
      for (const Phase1Response* r : writers) {
        FunnelChain c;
        c.chain_id = ChainId(r->task_id, r->worker);
        c.argument_id = argument_id;
        c.phase1_task_id = r->task_id;
        c.chain = *r->chain;
        c.validity.subject = c.chain_id;
        chain_index.emplace(c.chain_id, report.chain_verdicts.size());
        report.chain_verdicts.push_back(std::move(c));
      }
    }
    report.feasibility.push_back(std::move(v));
  }
  report.chains = static_cast<int>(report.chain_verdicts.size());

  // Phase 2: collect votes per chain.
  const size_t n = report.chain_verdicts.size();
  std::vector<std::vector<bool>> validity(n);
  std::vector<std::vector<int>> scores(n);
  for (const Phase2Response& r : phase2) {
    auto it = chain_index.find(r.chain_id);
    if (it == chain_index.end()) {
      throw AggregationError("DANGLING_REFERENCE",
                             "phase 2 response cites unknown chain '" + r.chain_id + "'");
    }
    if (r.outcome_valid) validity[it->second].push_back(*r.outcome_valid);
    if (r.score) {
      if (*r.score < 1 || *r.score > 5) {
        throw AggregationError("SCORE_OUT_OF_RANGE", "score " + std::to_string(*r.score) +
                                                         " for chain '" + r.chain_id + "'");
      }
      scores[it->second].push_back(*r.score);
    }
  }
  for (size_t i = 0; i < n; ++i) {
    CheckVoteCount(std::max<size_t>(validity[i].size(), 1), config);
    CheckVoteCount(std::max<size_t>(scores[i].size(), 1), config);
  }

  // Per-chain verdicts are independent; nothing below throws.
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 64)
  for (long i = 0; i < count; ++i) {
    FunnelChain& c = report.chain_verdicts[i];
    if (validity[i].empty()) {
      c.validity.rule = "no_votes";
      c.validity.decision = Decision::kDoubtful;
      c.bucket = FunnelBucket::kDoubtful;
      continue;
    }
    std::vector<bool>& vv = validity[i];
    std::unique_ptr<bool[]> flat(new bool[vv.size()]);
    std::copy(vv.begin(), vv.end(), flat.get());
    c.validity = AggregateOutcomeValidity(std::span<const bool>(flat.get(), vv.size()), config);
    c.validity.subject = c.chain_id;
    if (c.validity.decision == Decision::kDiscard) {
      c.bucket = FunnelBucket::kInvalidOutcome;
      continue;
    }
    if (c.validity.decision == Decision::kDoubtful) {
      c.bucket = FunnelBucket::kDoubtful;
      continue;
    }
    AggregationVerdict s;
    if (scores[i].empty()) {
      s.decision = Decision::kDoubtful;
      s.rule = "no_votes";
    } else {
      s = AggregateScores(scores[i], config);
    }
    s.subject = c.chain_id;
    c.bucket = s.decision == Decision::kKeep      ? FunnelBucket::kKeep
               : s.decision == Decision::kDiscard ? FunnelBucket::kDiscard
                                                  : FunnelBucket::kDoubtful;
    c.score = std::move(s);
  }

  for (const FunnelChain& c : report.chain_verdicts) {
    switch (c.bucket) {
      case FunnelBucket::kKeep:
        ++report.kept;
        break;
      case FunnelBucket::kDiscard:
        ++report.discarded;
        break;
      case FunnelBucket::kDoubtful:
        ++report.doubtful;
        break;
      case FunnelBucket::kInvalidOutcome:
        ++report.invalid_outcome;
        break;
    }
    if (c.validity.decision == Decision::kKeep) ++report.valid_outcome;
  }
  return report;
}

}  // namespace reasonlink

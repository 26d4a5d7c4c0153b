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

#include "reasonlink/json_io.h"

namespace reasonlink {

namespace {

Json OptionalDouble(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Decision ParseDecision(const std::string& s) {
  if (s == "keep") return Decision::kKeep;
  if (s == "discard") return Decision::kDiscard;
  if (s == "doubtful") return Decision::kDoubtful;
  throw std::invalid_argument("unknown decision '" + s + "'");
}

FunnelBucket ParseBucket(const std::string& s) {
  if (s == "keep") return FunnelBucket::kKeep;
  if (s == "discard") return FunnelBucket::kDiscard;
  if (s == "doubtful") return FunnelBucket::kDoubtful;
  if (s == "invalid_outcome") return FunnelBucket::kInvalidOutcome;
  throw std::invalid_argument("unknown bucket '" + s + "'");
}

TaskState ParseTaskState(const std::string& s) {
  if (s == "open") return TaskState::kOpen;
  if (s == "full") return TaskState::kFull;
  if (s == "aggregated") return TaskState::kAggregated;
  if (s == "closed") return TaskState::kClosed;
  throw std::invalid_argument("unknown task state '" + s + "'");
}

}  // namespace

void to_json(Json& j, const ChainRecord& r) {
  j = Json{{"argument_id", r.argument_id}, {"action", r.action},
           {"rel_ai", ToString(r.rel_ai)}, {"implicit", r.implicit},
           {"rel_io", ToString(r.rel_io)}, {"outcome", r.outcome},
           {"author", r.author},           {"phase1_task_id", r.phase1_task_id}};
}

void to_json(Json& j, const ReasoningChain& c) {
  j = Json{{"action", c.action.text},
           {"action_manual", c.action.manual},
           {"source_claim_id", c.action.source_claim_id},
           {"rel_ai", ToString(c.rel_ai)},
           {"implicit", c.implicit.text},
           {"rel_io", ToString(c.rel_io)},
           {"outcome", c.outcome.text},
           {"source_premise_id", c.outcome.source_premise_id},
           {"author", c.implicit.author}};
}

// Submissions only need the worker-authored parts; the rest is filled in by
// the workflow.
void from_json(const Json& j, ReasoningChain& c) {
  c.action.text = j.value("action", "");
  c.action.manual = j.value("action_manual", false);
  c.action.source_claim_id = j.value("source_claim_id", "");
  c.rel_ai = ParseCausalRelation(j.at("rel_ai").get<std::string>());
  c.implicit.text = j.at("implicit").get<std::string>();
  c.rel_io = ParseCausalRelation(j.at("rel_io").get<std::string>());
  c.outcome.text = j.value("outcome", "");
  c.outcome.source_premise_id = j.value("source_premise_id", "");
  c.implicit.author = j.value("author", "");
  c.outcome.author = c.implicit.author;
}

void to_json(Json& j, const Argument& a) {
  j = Json{{"id", a.id},
           {"topic", a.topic},
           {"claim", a.claim},
           {"premise", a.premise},
           {"stance_label", ToString(a.stance_label)},
           {"stance_conf", a.stance_conf},
           {"quality", a.quality}};
}

void from_json(const Json& j, Argument& a) {
  a.id = j.at("id").get<std::string>();
  a.topic = j.value("topic", "");
  a.claim = j.at("claim").get<std::string>();
  a.premise = j.at("premise").get<std::string>();
  a.stance_label =
      j.value("stance_label", "support") == "against" ? StanceLabel::kAgainst : StanceLabel::kSupport;
  a.stance_conf = j.value("stance_conf", 1.0);
  a.quality = j.value("quality", 1.0);
}

void to_json(Json& j, const Worker& w) {
  Json phases = Json::array();
  for (Phase p : w.phases_allowed) phases.push_back(static_cast<int>(p));
  j = Json{{"id", w.id},
           {"acceptance_rate", w.acceptance_rate},
           {"approved_tasks", w.approved_tasks},
           {"quiz_score", OptionalDouble(w.quiz_score)},
           {"phases", phases}};
}

void from_json(const Json& j, Worker& w) {
  w.id = j.at("id").get<std::string>();
  w.acceptance_rate = j.at("acceptance_rate").get<double>();
  w.approved_tasks = j.at("approved_tasks").get<int64_t>();
  w.quiz_score.reset();
  if (j.contains("quiz_score") && !j["quiz_score"].is_null()) w.quiz_score = j["quiz_score"].get<double>();
  w.phases_allowed.clear();
  for (const Json& p : j.value("phases", Json::array())) {
    const int n = p.get<int>();
    if (n != 1 && n != 2) throw std::invalid_argument("phase must be 1 or 2");
    w.phases_allowed.insert(static_cast<Phase>(n));
  }
}

void to_json(Json& j, const AnnotationTask& t) {
  j = Json{{"id", t.id},
           {"phase", static_cast<int>(t.phase)},
           {"argument_id", t.argument_id},
           {"chain_id", t.chain_id},
           {"claim", t.claim},
           {"premise", t.premise},
           {"action", t.action.text},
           {"action_manual", t.action.manual},
           {"action_needs_review", t.action_needs_review},
           {"capacity", t.capacity},
           {"state", ToString(t.state)}};
}

void from_json(const Json& j, AnnotationTask& t) {
  t.id = j.at("id").get<std::string>();
  t.phase = static_cast<Phase>(j.at("phase").get<int>());
  t.argument_id = j.at("argument_id").get<std::string>();
  t.chain_id = j.value("chain_id", "");
  t.claim = j.value("claim", "");
  t.premise = j.value("premise", "");
  t.action.text = j.value("action", "");
  t.action.manual = j.value("action_manual", false);
  t.action.source_claim_id = t.argument_id;
  t.action_needs_review = j.value("action_needs_review", false);
  t.capacity = j.value("capacity", 5);
  t.state = ParseTaskState(j.value("state", "open"));
}

void to_json(Json& j, const Phase1Response& r) {
  j = Json{{"task_id", r.task_id},
           {"worker", r.worker},
           {"argument_id", r.argument_id},
           {"outcome", r.outcome_text},
           {"feasibility", ToString(r.feasibility)},
           {"chain", r.chain ? Json(*r.chain) : Json(nullptr)},
           {"sanity_confirmed", r.sanity_confirmed}};
}

void from_json(const Json& j, Phase1Response& r) {
  r.task_id = j.value("task_id", "");
  r.worker = j.value("worker", "");
  r.argument_id = j.value("argument_id", "");
  r.outcome_text = j.value("outcome", "");
  r.feasibility = ParseFeasibility(j.at("feasibility").get<std::string>());
  r.chain.reset();
  if (j.contains("chain") && !j["chain"].is_null()) r.chain = j["chain"].get<ReasoningChain>();
  r.sanity_confirmed = j.value("sanity_confirmed", false);
}

void to_json(Json& j, const Phase2Response& r) {
  j = Json{{"task_id", r.task_id},
           {"worker", r.worker},
           {"chain_id", r.chain_id},
           {"outcome_valid", r.outcome_valid ? Json(*r.outcome_valid) : Json(nullptr)},
           {"score", r.score ? Json(*r.score) : Json(nullptr)}};
}

void from_json(const Json& j, Phase2Response& r) {
  r.task_id = j.value("task_id", "");
  r.worker = j.at("worker").get<std::string>();
  r.chain_id = j.at("chain_id").get<std::string>();
  r.outcome_valid.reset();
  r.score.reset();
  if (j.contains("outcome_valid") && !j["outcome_valid"].is_null()) {
    r.outcome_valid = j["outcome_valid"].get<bool>();
  }
  if (j.contains("score") && !j["score"].is_null()) r.score = j["score"].get<int>();
}

void to_json(Json& j, const AggregationVerdict& v) {
  j = Json{{"subject", v.subject},
           {"decision", ToString(v.decision)},
           {"tally", v.tally},
           {"rule", v.rule}};
}

void from_json(const Json& j, AggregationVerdict& v) {
  v.subject = j.value("subject", "");
  v.decision = ParseDecision(j.at("decision").get<std::string>());
  v.tally = j.value("tally", std::map<std::string, int>{});
  v.rule = j.value("rule", "");
}

void to_json(Json& j, const BonusLedgerEntry& e) {
  j = Json{{"worker", e.worker},
           {"task", e.task},
           {"base_pay_cents", e.base_pay_cents},
           {"bonus_cents", e.bonus_cents},
           {"reason", e.reason}};
}

void from_json(const Json& j, BonusLedgerEntry& e) {
  e.worker = j.at("worker").get<std::string>();
  e.task = j.at("task").get<std::string>();
  e.base_pay_cents = j.at("base_pay_cents").get<int64_t>();
  e.bonus_cents = j.at("bonus_cents").get<int64_t>();
  e.reason = j.value("reason", "");
}

void to_json(Json& j, const WorkflowState& s) {
  j = Json{{"arguments", s.arguments}, {"workers", s.workers}, {"tasks", s.tasks},
           {"phase1", s.phase1},       {"phase2", s.phase2},   {"verdicts", s.verdicts},
           {"ledger", s.ledger}};
}

void from_json(const Json& j, WorkflowState& s) {
  s.arguments = j.at("arguments").get<std::vector<Argument>>();
  s.workers = j.at("workers").get<std::vector<Worker>>();
  s.tasks = j.at("tasks").get<std::vector<AnnotationTask>>();
  s.phase1 = j.at("phase1").get<std::vector<Phase1Response>>();
  s.phase2 = j.at("phase2").get<std::vector<Phase2Response>>();
  s.verdicts = j.at("verdicts").get<std::vector<AggregationVerdict>>();
  s.ledger = j.at("ledger").get<std::vector<BonusLedgerEntry>>();
}

void to_json(Json& j, const Status& s) {
  j = Json{{"ok", s.ok()}};
  if (!s.ok()) {
    j["code"] = s.code;
    if (!s.details.empty()) j["details"] = s.details;
  }
}

void to_json(Json& j, const FunnelChain& c) {
  j = Json{{"chain_id", c.chain_id},
           {"argument_id", c.argument_id},
           {"phase1_task_id", c.phase1_task_id},
           {"chain", c.chain},
           {"validity", c.validity},
           {"score", c.score ? Json(*c.score) : Json(nullptr)},
           {"bucket", ToString(c.bucket)}};
}

void from_json(const Json& j, FunnelChain& c) {
  c.chain_id = j.at("chain_id").get<std::string>();
  c.argument_id = j.at("argument_id").get<std::string>();
  c.phase1_task_id = j.at("phase1_task_id").get<std::string>();
  c.chain = j.at("chain").get<ReasoningChain>();
  c.validity = j.at("validity").get<AggregationVerdict>();
  c.score.reset();
  if (!j.at("score").is_null()) c.score = j["score"].get<AggregationVerdict>();
  c.bucket = ParseBucket(j.at("bucket").get<std::string>());
}

Json FunnelSummary(const FunnelReport& r) {
  return Json{{"claim_premise_pairs", r.claim_premise_pairs},
              {"pairs_with_majority_feasibility", r.feasible_pairs},
              {"pairs_judged_infeasible", r.infeasible_pairs},
              {"pairs_undecided", r.undecided_pairs},
              {"implicit_reasonings_phase1", r.chains},
              {"incorrect_outcome", r.invalid_outcome},
              {"correct_outcome", r.valid_outcome},
              {"implicit_reasonings_phase2", r.kept},
              {"majority_score_3_or_less", r.discarded},
              {"doubtful", r.doubtful}};
}

void to_json(Json& j, const FunnelReport& r) {
  j = FunnelSummary(r);
  j["feasibility"] = r.feasibility;
  j["chains"] = r.chain_verdicts;
}

void from_json(const Json& j, FunnelReport& r) {
  r.claim_premise_pairs = j.at("claim_premise_pairs").get<int>();
  r.feasible_pairs = j.at("pairs_with_majority_feasibility").get<int>();
  r.infeasible_pairs = j.at("pairs_judged_infeasible").get<int>();
  r.undecided_pairs = j.at("pairs_undecided").get<int>();
  r.chains = j.at("implicit_reasonings_phase1").get<int>();
  r.invalid_outcome = j.at("incorrect_outcome").get<int>();
  r.valid_outcome = j.at("correct_outcome").get<int>();
  r.kept = j.at("implicit_reasonings_phase2").get<int>();
  r.discarded = j.at("majority_score_3_or_less").get<int>();
  r.doubtful = j.at("doubtful").get<int>();
  r.feasibility = j.at("feasibility").get<std::vector<AggregationVerdict>>();
  r.chain_verdicts = j.at("chains").get<std::vector<FunnelChain>>();
}

void to_json(Json& j, const DatasetStatistics& s) {
  j = Json{{"implicit_reasonings", s.n_chains},
           {"unique_implicit_reasonings", s.n_unique_chains},
           {"premises", s.n_premises},
           {"premises_with_implicit_reasonings", s.n_covered_premises},
           {"pct_premise_with_implicit_reasonings", s.pct_premise_with_chain},
           {"avg_implicit_reasonings_per_premise", s.avg_chains_per_covered_premise},
           {"premise_with_no_implicit_reasoning", s.n_premise_zero},
           {"premise_with_one_implicit_reasoning", s.n_premise_one},
           {"premise_with_multiple_implicit_reasoning", s.n_premise_multi},
           {"avg_outcome_entity_length_words", s.avg_outcome_len},
           {"avg_premise_length_words", s.avg_premise_len},
           {"avg_implicit_reasoning_length_words", s.avg_implicit_len}};
}

void to_json(Json& j, const ReliabilityReport& r) {
  j = Json{{"alpha_nominal", OptionalDouble(r.alpha_nominal)},
           {"alpha_interval", OptionalDouble(r.alpha_interval)},
           {"items", r.n_items},
           {"raters", r.n_raters},
           {"pairable_values", r.n_pairable}};
}

}  // namespace reasonlink

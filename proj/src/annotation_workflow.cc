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

#include "reasonlink/annotation_workflow.h"

#include <algorithm>
#include <stdexcept>

#include "reasonlink/text.h"

namespace reasonlink {

namespace {

using SharedLock = std::shared_lock<std::shared_mutex>;
using UniqueLock = std::unique_lock<std::shared_mutex>;

SubmitResult Reject(std::string code, std::vector<std::string> details = {}) {
  return {Status::Error(std::move(code), std::move(details)), {}};
}

bool Finished(TaskState s) { return s == TaskState::kAggregated || s == TaskState::kClosed; }

}  // namespace

std::string Phase1TaskId(std::string_view argument_id) {
  return "p1-" + std::string(argument_id);
}

std::string Phase2TaskId(std::string_view chain_id) { return "p2-" + std::string(chain_id); }

std::string_view ToString(TaskState s) {
  switch (s) {
    case TaskState::kOpen:
      return "open";
    case TaskState::kFull:
      return "full";
    case TaskState::kAggregated:
      return "aggregated";
    case TaskState::kClosed:
      return "closed";
  }
  return "unknown";
}

bool QualificationPolicy::Qualifies(const Worker& w) const {
  return w.quiz_score.has_value() && *w.quiz_score >= min_quiz_score &&
         w.acceptance_rate >= min_acceptance_rate && w.approved_tasks >= min_approved_tasks;
}

Workflow::Workflow(WorkflowConfig config, ActionExtractor extractor)
    : config_(std::move(config)), extractor_(std::move(extractor)) {
  if (config_.task_capacity < 1 || config_.task_capacity > config_.aggregation.max_votes) {
    throw std::invalid_argument("task_capacity must be within [1, aggregation.max_votes]");
  }
}

Worker Workflow::RegisterWorker(Worker worker, const CommitHook& commit) {
  if (Trim(worker.id).empty()) throw std::invalid_argument("worker id is empty");
  if (!config_.qualification.Qualifies(worker)) worker.phases_allowed.clear();
  UniqueLock lock(registry_mu_);
  Commit(commit);
  workers_[worker.id] = worker;
  return worker;
}

std::optional<Worker> Workflow::FindWorker(std::string_view id) const {
  SharedLock lock(registry_mu_);
  auto it = workers_.find(id);
  if (it == workers_.end()) return std::nullopt;
  return it->second;
}

Status Workflow::RegisterArgument(Argument argument, const CommitHook& commit) {
  UniqueLock lock(registry_mu_);
  if (arguments_.contains(argument.id)) return Status::Error(codes::kDuplicateArgument);
  Commit(commit);
  std::string id = argument.id;
  arguments_.emplace(std::move(id), std::move(argument));
  return Status::Ok();
}

StatusOr<AnnotationTask> Workflow::OpenPhase1Task(std::string_view argument_id,
                                                  std::optional<std::string> manual_action,
                                                  const CommitHook& commit) {
  UniqueLock lock(registry_mu_);
  auto arg = arguments_.find(argument_id);
  if (arg == arguments_.end()) return Status::Error(codes::kUnknownArgument);
  const std::string task_id = Phase1TaskId(argument_id);
  if (tasks_.contains(task_id)) return Status::Error(codes::kDuplicateTask);

  AnnotationTask task;
  task.id = task_id;
  task.phase = Phase::kPhase1;
  task.argument_id = arg->second.id;
  task.claim = arg->second.claim;
  task.premise = arg->second.premise;
  task.capacity = config_.task_capacity;
  if (manual_action && !Trim(*manual_action).empty()) {
    task.action.text = std::string(Trim(*manual_action));
    task.action.source_claim_id = arg->second.id;
    task.action.manual = true;
  } else if (auto extracted = extractor_.Extract(arg->second.claim, arg->second.id)) {
    task.action = std::move(extracted->action);
    task.action_needs_review = extracted->needs_review;
  } else {
    return Status::Error(codes::kMissingActionEntity);
  }

  Commit(commit);
  auto slot = std::make_unique<TaskSlot>();
  slot->task = task;
  tasks_.emplace(task_id, std::move(slot));
  return task;
}

Workflow::TaskSlot* Workflow::FindSlot(std::string_view id) const {
  auto it = tasks_.find(id);
  return it == tasks_.end() ? nullptr : it->second.get();
}

bool Workflow::WorkerQualified(std::string_view worker, Phase phase) const {
  auto it = workers_.find(worker);
  return it != workers_.end() && it->second.phases_allowed.contains(phase);
}

bool Workflow::WroteForArgument(std::string_view worker, const std::string& argument_id) const {
  const TaskSlot* p1 = FindSlot(Phase1TaskId(argument_id));
  if (p1 == nullptr) return false;
  std::lock_guard task_lock(p1->mu);
  return std::any_of(p1->phase1.begin(), p1->phase1.end(),
                     [&](const Phase1Response& r) { return r.worker == worker; });
}

SubmitResult Workflow::SubmitPhase1(std::string_view task_id, Phase1Response response,
                                    const CommitHook& commit) {
  SharedLock lock(registry_mu_);
  TaskSlot* slot = FindSlot(task_id);
  if (slot == nullptr) return Reject(codes::kUnknownTask);
  if (slot->task.phase != Phase::kPhase1) return Reject(codes::kWrongPhase);
  if (!WorkerQualified(response.worker, Phase::kPhase1)) return Reject(codes::kNotQualified);

  std::lock_guard task_lock(slot->mu);
  AnnotationTask& task = slot->task;
  if (Finished(task.state)) return Reject(codes::kTaskClosed);
  const bool duplicate =
      std::any_of(slot->phase1.begin(), slot->phase1.end(),
                  [&](const Phase1Response& r) { return r.worker == response.worker; });
  if (duplicate) return Reject(codes::kDuplicateSubmission);
  if (task.state == TaskState::kFull ||
      static_cast<int>(slot->phase1.size()) >= task.capacity) {
    return Reject(codes::kCapacityExhausted);
  }
  if (Trim(response.outcome_text).empty()) return Reject(codes::kMissingOutcome);

  const bool wants_chain = response.feasibility == Feasibility::kCanWrite;
  if (wants_chain != response.chain.has_value()) {
    return Reject(codes::kChainInvalid,
                  {wants_chain ? "CHAIN_REQUIRED" : "CHAIN_NOT_ALLOWED"});
  }
  if (response.chain) {
    if (!response.sanity_confirmed) return Reject(codes::kSanityNotConfirmed);
    ReasoningChain& chain = *response.chain;
    // The action is fixed by the task; the outcome is the one from step 1.
    chain.action = task.action;
    if (Trim(chain.outcome.text).empty()) chain.outcome.text = response.outcome_text;
    if (NormalizeForComparison(chain.outcome.text) !=
        NormalizeForComparison(response.outcome_text)) {
      return Reject(codes::kChainInvalid, {"OUTCOME_MISMATCH"});
    }
    chain.outcome.author = response.worker;
    chain.outcome.source_premise_id = task.argument_id;
    chain.implicit.author = response.worker;
    const ValidationReport report = ValidateChain(chain, task.claim, task.premise);
    if (!report.ok()) return Reject(codes::kChainInvalid, report.Codes());
  }

  Commit(commit);
  response.task_id = task.id;
  response.argument_id = task.argument_id;
  SubmitResult result;
  if (response.chain) result.chain_id = ChainId(task.id, response.worker);
  slot->phase1.push_back(std::move(response));
  if (static_cast<int>(slot->phase1.size()) >= task.capacity) task.state = TaskState::kFull;
  return result;
}

StatusOr<AggregationVerdict> Workflow::AggregatePhase1(std::string_view task_id,
                                                       const CommitHook& commit) {
  SharedLock lock(registry_mu_);
  TaskSlot* slot = FindSlot(task_id);
  if (slot == nullptr) return Status::Error(codes::kUnknownTask);
  if (slot->task.phase != Phase::kPhase1) return Status::Error(codes::kWrongPhase);
  std::lock_guard task_lock(slot->mu);
  if (slot->verdict) return *slot->verdict;
  if (slot->phase1.empty()) return Status::Error(codes::kEmptyVotes);

  std::vector<Feasibility> votes;
  for (const Phase1Response& r : slot->phase1) votes.push_back(r.feasibility);
  AggregationVerdict v = AggregateFeasibility(votes, config_.aggregation);
  v.subject = slot->task.id;
  Commit(commit);
  slot->verdict = v;
  slot->task.state = TaskState::kAggregated;
  return v;
}

StatusOr<std::vector<BonusLedgerEntry>> Workflow::GrantFeasibilityBonuses(
    std::string_view task_id, const CommitHook& commit) {
  SharedLock lock(registry_mu_);
  TaskSlot* slot = FindSlot(task_id);
  if (slot == nullptr) return Status::Error(codes::kUnknownTask);
  if (slot->task.phase != Phase::kPhase1) return Status::Error(codes::kWrongPhase);
  std::lock_guard task_lock(slot->mu);
  if (!slot->verdict) return Status::Error(codes::kAggregationIncomplete);
  if (slot->ledger) return *slot->ledger;

  const std::optional<Feasibility> majority =
      MajorityFeasibility(*slot->verdict, config_.aggregation);
  std::vector<BonusLedgerEntry> entries;
  for (const Phase1Response& r : slot->phase1) {
    BonusLedgerEntry e;
    e.worker = r.worker;
    e.task = slot->task.id;
    e.base_pay_cents = config_.payments.phase1_base_cents;
    if (majority && r.feasibility == *majority) {
      e.bonus_cents = config_.payments.phase1_bonus_cents;
      e.reason = "feasibility matches majority (" + std::string(ToString(*majority)) + ")";
    } else {
      e.reason = majority ? "feasibility differs from majority" : "no majority";
    }
    entries.push_back(std::move(e));
  }
  Commit(commit);
  slot->ledger = entries;
  return entries;
}

std::vector<std::string> Workflow::CollectedChains() const {
  SharedLock lock(registry_mu_);
  std::vector<std::string> out;
  for (const auto& [id, slot] : tasks_) {
    if (slot->task.phase != Phase::kPhase1) continue;
    std::lock_guard task_lock(slot->mu);
    if (!slot->verdict || slot->verdict->decision != Decision::kKeep) continue;
    for (const Phase1Response& r : slot->phase1) {
      if (r.feasibility == Feasibility::kCanWrite && r.chain) {
        out.push_back(ChainId(slot->task.id, r.worker));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

StatusOr<std::vector<AnnotationTask>> Workflow::OpenPhase2Tasks(
    std::span<const std::string> chain_ids, const CommitHook& commit) {
  UniqueLock lock(registry_mu_);
  std::vector<AnnotationTask> created;
  std::set<std::string> seen;
  for (const std::string& chain_id : chain_ids) {
    if (!seen.insert(chain_id).second) continue;
    if (tasks_.contains(Phase2TaskId(chain_id))) continue;
    const size_t slash = chain_id.rfind('/');
    if (slash == std::string::npos) return Status::Error(codes::kUnknownChain, {chain_id});
    const TaskSlot* p1 = FindSlot(chain_id.substr(0, slash));
    const std::string worker = chain_id.substr(slash + 1);
    if (p1 == nullptr || p1->task.phase != Phase::kPhase1) {
      return Status::Error(codes::kUnknownChain, {chain_id});
    }
    std::lock_guard task_lock(p1->mu);
    if (!p1->verdict || p1->verdict->decision != Decision::kKeep) {
      return Status::Error(codes::kAggregationIncomplete, {chain_id});
    }
    auto r = std::find_if(p1->phase1.begin(), p1->phase1.end(),
                          [&](const Phase1Response& x) { return x.worker == worker; });
    if (r == p1->phase1.end() || !r->chain) return Status::Error(codes::kUnknownChain, {chain_id});

    AnnotationTask t;
    t.id = Phase2TaskId(chain_id);
    t.phase = Phase::kPhase2;
    t.argument_id = p1->task.argument_id;
    t.chain_id = chain_id;
    t.claim = p1->task.claim;
    t.premise = p1->task.premise;
    t.action = p1->task.action;
    t.capacity = config_.task_capacity;
    created.push_back(std::move(t));
  }
  Commit(commit);
  for (const AnnotationTask& t : created) {
    auto slot = std::make_unique<TaskSlot>();
    slot->task = t;
    tasks_.emplace(t.id, std::move(slot));
  }
  return created;
}

SubmitResult Workflow::SubmitPhase2Validity(std::string_view task_id, std::string_view worker,
                                            bool outcome_valid, const CommitHook& commit) {
  SharedLock lock(registry_mu_);
  TaskSlot* slot = FindSlot(task_id);
  if (slot == nullptr) return Reject(codes::kUnknownTask);
  if (slot->task.phase != Phase::kPhase2) return Reject(codes::kWrongPhase);
  if (!WorkerQualified(worker, Phase::kPhase2)) return Reject(codes::kNotQualified);

  std::lock_guard task_lock(slot->mu);
  AnnotationTask& task = slot->task;
  if (WroteForArgument(worker, task.argument_id)) {
    return Reject(codes::kNotQualified, {"PHASE1_PARTICIPANT"});
  }
  if (Finished(task.state) || slot->validity_verdict) return Reject(codes::kTaskClosed);
  const bool duplicate = std::any_of(slot->phase2.begin(), slot->phase2.end(),
                                     [&](const Phase2Response& r) { return r.worker == worker; });
  if (duplicate) return Reject(codes::kDuplicateSubmission);
  if (task.state == TaskState::kFull || static_cast<int>(slot->phase2.size()) >= task.capacity) {
    return Reject(codes::kCapacityExhausted);
  }

  Commit(commit);
  Phase2Response r;
  r.task_id = task.id;
  r.worker = std::string(worker);
  r.chain_id = task.chain_id;
  r.outcome_valid = outcome_valid;
  slot->phase2.push_back(std::move(r));
  if (static_cast<int>(slot->phase2.size()) >= task.capacity) task.state = TaskState::kFull;
  return {};
}

SubmitResult Workflow::SubmitPhase2Score(std::string_view task_id, std::string_view worker,
                                         int score, const CommitHook& commit) {
  SharedLock lock(registry_mu_);
  TaskSlot* slot = FindSlot(task_id);
  if (slot == nullptr) return Reject(codes::kUnknownTask);
  if (slot->task.phase != Phase::kPhase2) return Reject(codes::kWrongPhase);
  if (!WorkerQualified(worker, Phase::kPhase2)) return Reject(codes::kNotQualified);

  std::lock_guard task_lock(slot->mu);
  if (Finished(slot->task.state)) return Reject(codes::kTaskClosed);
  auto mine = std::find_if(slot->phase2.begin(), slot->phase2.end(),
                           [&](const Phase2Response& r) { return r.worker == worker; });
  if (mine == slot->phase2.end()) return Reject(codes::kNotAssigned);
  if (!slot->validity_verdict || slot->validity_verdict->decision != Decision::kKeep) {
    return Reject(codes::kOutcomeNotValidated);
  }
  if (mine->score) return Reject(codes::kDuplicateSubmission);
  if (score < 1 || score > 5) return Reject(codes::kScoreOutOfRange);

  Commit(commit);
  mine->score = score;
  return {};
}

StatusOr<AggregationVerdict> Workflow::AggregatePhase2Validity(std::string_view task_id,
                                                               const CommitHook& commit) {
  SharedLock lock(registry_mu_);
  TaskSlot* slot = FindSlot(task_id);
  if (slot == nullptr) return Status::Error(codes::kUnknownTask);
  if (slot->task.phase != Phase::kPhase2) return Status::Error(codes::kWrongPhase);
  std::lock_guard task_lock(slot->mu);
  if (slot->validity_verdict) return *slot->validity_verdict;
  if (slot->phase2.empty()) return Status::Error(codes::kEmptyVotes);

  std::unique_ptr<bool[]> votes(new bool[slot->phase2.size()]);
  for (size_t i = 0; i < slot->phase2.size(); ++i) votes[i] = *slot->phase2[i].outcome_valid;
  AggregationVerdict v = AggregateOutcomeValidity(
      std::span<const bool>(votes.get(), slot->phase2.size()), config_.aggregation);
  v.subject = slot->task.chain_id;
  Commit(commit);
  slot->validity_verdict = v;
  if (v.decision != Decision::kKeep) {
    slot->verdict = v;
    slot->task.state = TaskState::kAggregated;
  }
  return v;
}

StatusOr<AggregationVerdict> Workflow::AggregatePhase2Scores(std::string_view task_id,
                                                             const CommitHook& commit) {
  SharedLock lock(registry_mu_);
  TaskSlot* slot = FindSlot(task_id);
  if (slot == nullptr) return Status::Error(codes::kUnknownTask);
  if (slot->task.phase != Phase::kPhase2) return Status::Error(codes::kWrongPhase);
  std::lock_guard task_lock(slot->mu);
  if (!slot->validity_verdict) return Status::Error(codes::kAggregationIncomplete);
  if (slot->validity_verdict->decision != Decision::kKeep) {
    return Status::Error(codes::kOutcomeNotValidated);
  }
  if (slot->verdict) return *slot->verdict;
  std::vector<int> scores;
  for (const Phase2Response& r : slot->phase2) {
    if (r.score) scores.push_back(*r.score);
  }
  if (scores.empty()) return Status::Error(codes::kEmptyVotes);
  AggregationVerdict v = AggregateScores(scores, config_.aggregation);
  v.subject = slot->task.chain_id;
  Commit(commit);
  slot->verdict = v;
  slot->task.state = TaskState::kAggregated;
  return v;
}

Status Workflow::CloseTask(std::string_view task_id, const CommitHook& commit) {
  SharedLock lock(registry_mu_);
  TaskSlot* slot = FindSlot(task_id);
  if (slot == nullptr) return Status::Error(codes::kUnknownTask);
  std::lock_guard task_lock(slot->mu);
  if (slot->task.state == TaskState::kClosed) return Status::Ok();
  if (slot->task.state != TaskState::kAggregated) return Status::Error(codes::kInvalidState);
  Commit(commit);
  slot->task.state = TaskState::kClosed;
  return Status::Ok();
}

std::optional<Assignment> Workflow::NextTask(std::string_view worker, Phase phase) const {
  SharedLock lock(registry_mu_);
  if (!WorkerQualified(worker, phase)) return std::nullopt;
  std::optional<Assignment> validity;
  for (const auto& [id, slot] : tasks_) {
    if (slot->task.phase != phase) continue;
    if (phase == Phase::kPhase2 && WroteForArgument(worker, slot->task.argument_id)) continue;
    std::lock_guard task_lock(slot->mu);
    if (Finished(slot->task.state)) continue;
    if (phase == Phase::kPhase1) {
      const bool done = std::any_of(slot->phase1.begin(), slot->phase1.end(),
                                    [&](const Phase1Response& r) { return r.worker == worker; });
      if (!done && slot->task.state == TaskState::kOpen) return Assignment{slot->task, "phase1"};
      continue;
    }
    auto mine = std::find_if(slot->phase2.begin(), slot->phase2.end(),
                             [&](const Phase2Response& r) { return r.worker == worker; });
    if (mine != slot->phase2.end()) {
      if (!mine->score && slot->validity_verdict &&
          slot->validity_verdict->decision == Decision::kKeep) {
        return Assignment{slot->task, "score"};
      }
    } else if (!validity && !slot->validity_verdict && slot->task.state == TaskState::kOpen) {
      validity = Assignment{slot->task, "validity"};
    }
  }
  return validity;
}

std::optional<AnnotationTask> Workflow::FindTask(std::string_view id) const {
  SharedLock lock(registry_mu_);
  const TaskSlot* slot = FindSlot(id);
  if (slot == nullptr) return std::nullopt;
  std::lock_guard task_lock(slot->mu);
  return slot->task;
}

std::vector<AnnotationTask> Workflow::Tasks() const {
  SharedLock lock(registry_mu_);
  std::vector<AnnotationTask> out;
  for (const auto& [id, slot] : tasks_) {
    std::lock_guard task_lock(slot->mu);
    out.push_back(slot->task);
  }
  return out;
}

WorkflowState Workflow::State() const {
  SharedLock lock(registry_mu_);
  WorkflowState s;
  for (const auto& [id, a] : arguments_) s.arguments.push_back(a);
  for (const auto& [id, w] : workers_) s.workers.push_back(w);
  for (const auto& [id, slot] : tasks_) {
    std::lock_guard task_lock(slot->mu);
    s.tasks.push_back(slot->task);
    s.phase1.insert(s.phase1.end(), slot->phase1.begin(), slot->phase1.end());
    s.phase2.insert(s.phase2.end(), slot->phase2.begin(), slot->phase2.end());
    if (slot->validity_verdict && slot->validity_verdict != slot->verdict) {
      AggregationVerdict v = *slot->validity_verdict;
      v.subject = slot->task.id + "#validity";
      s.verdicts.push_back(std::move(v));
    }
    if (slot->verdict) {
      AggregationVerdict v = *slot->verdict;
      v.subject = slot->task.id;
      s.verdicts.push_back(std::move(v));
    }
    if (slot->ledger) s.ledger.insert(s.ledger.end(), slot->ledger->begin(), slot->ledger->end());
  }
  return s;
}

}  // namespace reasonlink

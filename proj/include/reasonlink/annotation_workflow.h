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

#ifndef REASONLINK_ANNOTATION_WORKFLOW_H_
#define REASONLINK_ANNOTATION_WORKFLOW_H_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "reasonlink/action_extraction.h"
#include "reasonlink/aggregation.h"
#include "reasonlink/annotation_types.h"
#include "reasonlink/corpus_ingestion.h"
#include "reasonlink/status.h"

namespace reasonlink {

// Rejection codes returned by the workflow.
namespace codes {
inline constexpr char kCapacityExhausted[] = "CAPACITY_EXHAUSTED";
inline constexpr char kDuplicateSubmission[] = "DUPLICATE_SUBMISSION";
inline constexpr char kNotQualified[] = "NOT_QUALIFIED";
inline constexpr char kChainInvalid[] = "CHAIN_INVALID";
inline constexpr char kDuplicateTask[] = "DUPLICATE_TASK";
inline constexpr char kMissingActionEntity[] = "MISSING_ACTION_ENTITY";
inline constexpr char kAggregationIncomplete[] = "AGGREGATION_INCOMPLETE";
inline constexpr char kUnknownTask[] = "UNKNOWN_TASK";
inline constexpr char kUnknownArgument[] = "UNKNOWN_ARGUMENT";
inline constexpr char kUnknownChain[] = "UNKNOWN_CHAIN";
inline constexpr char kUnknownWorker[] = "UNKNOWN_WORKER";
inline constexpr char kDuplicateArgument[] = "DUPLICATE_ARGUMENT";
inline constexpr char kWrongPhase[] = "WRONG_PHASE";
inline constexpr char kTaskClosed[] = "TASK_CLOSED";
inline constexpr char kMissingOutcome[] = "MISSING_OUTCOME";
inline constexpr char kSanityNotConfirmed[] = "SANITY_NOT_CONFIRMED";
inline constexpr char kNotAssigned[] = "NOT_ASSIGNED";
inline constexpr char kOutcomeNotValidated[] = "OUTCOME_NOT_VALIDATED";
inline constexpr char kScoreOutOfRange[] = "SCORE_OUT_OF_RANGE";
inline constexpr char kEmptyVotes[] = "EMPTY_VOTES";
inline constexpr char kInvalidState[] = "INVALID_STATE";
}  // namespace codes

struct Worker {
  std::string id;
  double acceptance_rate = 0.0;
  int64_t approved_tasks = 0;
  std::optional<double> quiz_score;
  std::set<Phase> phases_allowed;
};

struct QualificationPolicy {
  double min_acceptance_rate = 0.98;
  int64_t min_approved_tasks = 5000;
  double min_quiz_score = 0.75;

  bool Qualifies(const Worker& w) const;
};

// Integer cents.
struct PaymentPolicy {
  int64_t phase1_base_cents = 50;
  int64_t phase1_bonus_cents = 25;
  int64_t phase2_base_cents = 40;
};

struct WorkflowConfig {
  int task_capacity = 5;
  QualificationPolicy qualification;
  PaymentPolicy payments;
  AggregationConfig aggregation;
};

// Forward-only: Open -> Full -> Aggregated -> Closed (Full may be skipped).
enum class TaskState { kOpen, kFull, kAggregated, kClosed };

std::string_view ToString(TaskState s);

struct AnnotationTask {
  std::string id;
  Phase phase = Phase::kPhase1;
  std::string argument_id;
  std::string chain_id;  // Phase 2 only
  std::string claim;
  std::string premise;
  ActionEntity action;
  bool action_needs_review = false;
  int capacity = 5;
  TaskState state = TaskState::kOpen;
};

struct BonusLedgerEntry {
  std::string worker;
  std::string task;
  int64_t base_pay_cents = 0;
  int64_t bonus_cents = 0;
  std::string reason;

  int64_t total_cents() const { return base_pay_cents + bonus_cents; }
};

struct SubmitResult {
  Status status;
  std::string chain_id;  // set for accepted Phase 1 chains

  bool accepted() const { return status.ok(); }
};

// What a worker should do next.
struct Assignment {
  AnnotationTask task;
  std::string stage;  // "phase1", "validity" or "score"
};

// Everything the workflow knows, detached from its locks.
struct WorkflowState {
  std::vector<Argument> arguments;
  std::vector<Worker> workers;
  std::vector<AnnotationTask> tasks;
  std::vector<Phase1Response> phase1;
  std::vector<Phase2Response> phase2;
  std::vector<AggregationVerdict> verdicts;  // subject = task id
  std::vector<BonusLedgerEntry> ledger;
};

// Invoked after a request has been fully checked and before it is applied.
// If it throws, the request has no effect and the exception propagates.
using CommitHook = std::function<void()>;

// Phase 1 and Phase 2 task lifecycles. Each task serializes its own writers;
// reads and writes to different tasks proceed concurrently.
class Workflow {
 public:
  explicit Workflow(WorkflowConfig config = {}, ActionExtractor extractor = {});
  Workflow(const Workflow&) = delete;
  Workflow& operator=(const Workflow&) = delete;

  const WorkflowConfig& config() const { return config_; }

  // Grants each requested phase if the worker passes the qualification gate;
  // returns the stored record. Re-registering replaces the record.
  Worker RegisterWorker(Worker worker, const CommitHook& commit = nullptr);
  std::optional<Worker> FindWorker(std::string_view id) const;

  Status RegisterArgument(Argument argument, const CommitHook& commit = nullptr);

  // Extracts the action entity from the claim unless manual_action is given.
  StatusOr<AnnotationTask> OpenPhase1Task(std::string_view argument_id,
                                          std::optional<std::string> manual_action = std::nullopt,
                                          const CommitHook& commit = nullptr);

  SubmitResult SubmitPhase1(std::string_view task_id, Phase1Response response,
                            const CommitHook& commit = nullptr);

  StatusOr<AggregationVerdict> AggregatePhase1(std::string_view task_id,
                                               const CommitHook& commit = nullptr);

  // One ledger entry per responding worker. Repeat calls return the entries
  // recorded the first time.
  StatusOr<std::vector<BonusLedgerEntry>> GrantFeasibilityBonuses(
      std::string_view task_id, const CommitHook& commit = nullptr);

  // Chains from aggregated Phase 1 tasks whose feasibility verdict is Keep,
  // ordered by chain id. These are the inputs to OpenPhase2Tasks.
  std::vector<std::string> CollectedChains() const;

  // One validity task per chain. Chains that already have a task are skipped.
  StatusOr<std::vector<AnnotationTask>> OpenPhase2Tasks(std::span<const std::string> chain_ids,
                                                        const CommitHook& commit = nullptr);

  SubmitResult SubmitPhase2Validity(std::string_view task_id, std::string_view worker,
                                    bool outcome_valid, const CommitHook& commit = nullptr);
  SubmitResult SubmitPhase2Score(std::string_view task_id, std::string_view worker, int score,
                                 const CommitHook& commit = nullptr);

  // Validity verdict; Discard or Doubtful finishes the task.
  StatusOr<AggregationVerdict> AggregatePhase2Validity(std::string_view task_id,
                                                       const CommitHook& commit = nullptr);
  StatusOr<AggregationVerdict> AggregatePhase2Scores(std::string_view task_id,
                                                     const CommitHook& commit = nullptr);

  Status CloseTask(std::string_view task_id, const CommitHook& commit = nullptr);

  std::optional<Assignment> NextTask(std::string_view worker, Phase phase) const;
  std::optional<AnnotationTask> FindTask(std::string_view id) const;
  std::vector<AnnotationTask> Tasks() const;
  WorkflowState State() const;

 private:
  struct TaskSlot {
    mutable std::mutex mu;
    AnnotationTask task;
    std::vector<Phase1Response> phase1;
    std::vector<Phase2Response> phase2;  // one per validity voter; score filled later
    std::optional<AggregationVerdict> verdict;           // feasibility or final
    std::optional<AggregationVerdict> validity_verdict;  // Phase 2 only
    std::optional<std::vector<BonusLedgerEntry>> ledger;
  };

  TaskSlot* FindSlot(std::string_view id) const;  // requires registry_mu_ held
  bool WorkerQualified(std::string_view worker, Phase phase) const;
  bool WroteForArgument(std::string_view worker, const std::string& argument_id) const;
  static void Commit(const CommitHook& commit) {
    if (commit) commit();
  }

  const WorkflowConfig config_;
  const ActionExtractor extractor_;

  mutable std::shared_mutex registry_mu_;
  std::map<std::string, Argument, std::less<>> arguments_;
  std::map<std::string, Worker, std::less<>> workers_;
  std::map<std::string, std::unique_ptr<TaskSlot>, std::less<>> tasks_;
};

std::string Phase1TaskId(std::string_view argument_id);
std::string Phase2TaskId(std::string_view chain_id);

}  // namespace reasonlink

#endif  // REASONLINK_ANNOTATION_WORKFLOW_H_

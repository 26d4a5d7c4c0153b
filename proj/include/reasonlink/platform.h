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

#ifndef REASONLINK_PLATFORM_H_
#define REASONLINK_PLATFORM_H_

#include <array>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "reasonlink/config.h"
#include "reasonlink/json_io.h"
#include "reasonlink/reports.h"
#include "reasonlink/status.h"
#include "reasonlink/storage.h"

namespace reasonlink {

namespace codes {
inline constexpr char kSnapshotNotFound[] = "SNAPSHOT_NOT_FOUND";
inline constexpr char kFunnelNotRun[] = "FUNNEL_NOT_RUN";
inline constexpr char kTasksOpen[] = "TASKS_OPEN";
inline constexpr char kBadRequest[] = "BAD_REQUEST";
}  // namespace codes

struct Snapshot {
  std::string id;
  std::string created_at;  // ISO 8601, UTC
  WorkflowState state;
};

enum class ReportKind { kStats, kCoverage, kAgreement };

struct BatchResult {
  int aggregated = 0;
  int closed = 0;
  int pending = 0;  // tasks still waiting for votes
  std::vector<std::string> opened;  // Phase 2 tasks created
};

struct ScriptResult {
  int applied = 0;
  // "line N: expected X, got Y" for each record whose outcome differed from
  // its "expect" field (default: accepted).
  std::vector<std::string> mismatches;
};

// The workflow plus durable storage. Every state change is written to the
// store as an event before the caller sees it acknowledged; opening a
// platform replays the event log.
//
// Store layout:
//   event/<20-digit seq>  one JSON event per accepted mutation
//   idem/<client token>   result returned for that token
//   snapshot/<id>         frozen WorkflowState
//   funnel/<snapshot id>  FunnelReport computed from that snapshot
class Platform {
 public:
  Platform(Config config, std::unique_ptr<KvStore> store);
  Platform(const Platform&) = delete;
  Platform& operator=(const Platform&) = delete;

  // Validates the config (ConfigError) and opens config.storage_path as a
  // SQLite store (StorageError).
  static std::unique_ptr<Platform> Open(Config config);

  const Config& config() const { return config_; }
  const Workflow& workflow() const { return *workflow_; }

  // Applies one request record. Requests are JSON objects with an "op" field:
  //   register_worker, register_argument, open_phase1, submit_phase1,
  //   aggregate_phase1, grant_bonuses, open_phase2, submit_validity,
  //   submit_score, aggregate_validity, aggregate_scores, close_task.
  // An optional "client_token" makes the request idempotent. Returns
  // {"ok": true, ...} or {"ok": false, "code": ..., "details": [...]}.
  Json Execute(const Json& request);

  // Typed conveniences over Execute.
  std::string RegisterWorker(const Worker& worker);  // returns bearer token
  Status RegisterArgument(const Argument& argument);
  StatusOr<AnnotationTask> OpenPhase1Task(const std::string& argument_id,
                                          const std::optional<std::string>& manual_action = {});
  SubmitResult SubmitPhase1(const std::string& task_id, const Phase1Response& response,
                            const std::string& client_token = {});
  SubmitResult SubmitValidity(const std::string& task_id, const std::string& worker, bool valid,
                              const std::string& client_token = {});
  SubmitResult SubmitScore(const std::string& task_id, const std::string& worker, int score,
                           const std::string& client_token = {});
  Status AggregatePhase1(const std::string& task_id);
  Status GrantBonuses(const std::string& task_id);
  Status OpenPhase2ForCollectedChains();
  Status AggregateValidity(const std::string& task_id);
  Status AggregateScores(const std::string& task_id);
  Status CloseTask(const std::string& task_id);

  // Operator batches over live tasks. Phase 1: aggregate, pay and close every
  // task with responses, then open Phase 2 tasks for the collected chains.
  // Phase 2: aggregate validity, then scores where the outcome was judged
  // valid and scores exist, closing each finished task. Safe to rerun.
  BatchResult AggregatePhase1Batch();
  BatchResult AggregatePhase2Batch();

  // Executes JSONL request records in order.
  ScriptResult ApplyScript(std::istream& jsonl);

  std::optional<std::string> WorkerForToken(const std::string& token) const;

  std::string CreateSnapshot();
  std::vector<std::string> SnapshotIds() const;
  StatusOr<Snapshot> LoadSnapshot(const std::string& id) const;
  // Requires every task in the snapshot to be closed.
  StatusOr<FunnelReport> RunFunnel(const std::string& snapshot_id);
  StatusOr<FunnelReport> LoadFunnel(const std::string& snapshot_id) const;
  StatusOr<std::string> Export(const std::string& snapshot_id, ExportBucket bucket) const;
  StatusOr<Json> Report(const std::string& snapshot_id, ReportKind kind) const;

  uint64_t event_count() const;

 private:
  Json Dispatch(const Json& request, bool replay);
  void Persist(std::vector<KeyValue> puts);
  void Replay();

  Config config_;
  std::unique_ptr<KvStore> store_;
  std::unique_ptr<Workflow> workflow_;

  mutable std::mutex log_mu_;
  uint64_t next_seq_ = 1;

  mutable std::mutex token_mu_;
  std::map<std::string, std::string> token_to_worker_;

  std::mutex snapshot_mu_;
  std::array<std::mutex, 64> idem_locks_;
};

}  // namespace reasonlink

#endif  // REASONLINK_PLATFORM_H_

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

#include "reasonlink/platform.h"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <functional>
#include <random>

namespace reasonlink {

namespace {

constexpr char kEventPrefix[] = "event/";
constexpr char kIdemPrefix[] = "idem/";
constexpr char kSnapshotPrefix[] = "snapshot/";
constexpr char kFunnelPrefix[] = "funnel/";

std::string EventKey(uint64_t seq) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%020llu", static_cast<unsigned long long>(seq));
  return kEventPrefix + std::string(buf);
}

std::string NowUtc() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string NewToken() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  char buf[33];
  std::snprintf(buf, sizeof(buf), "%016llx%016llx", static_cast<unsigned long long>(rng()),
                static_cast<unsigned long long>(rng()));
  return buf;
}

Json Failure(const Status& s) { return Json(s); }
Json Failure(std::string code, std::vector<std::string> details = {}) {
  return Json(Status::Error(std::move(code), std::move(details)));
}

Status StatusFromResult(const Json& result) {
  if (result.value("ok", false)) return Status::Ok();
  return Status::Error(result.value("code", "UNKNOWN"),
                       result.value("details", std::vector<std::string>{}));
}

SubmitResult SubmitFromResult(const Json& result) {
  SubmitResult r;
  r.status = StatusFromResult(result);
  r.chain_id = result.value("chain_id", "");
  return r;
}

bool IsSubmission(const std::string& op) {
  return op == "submit_phase1" || op == "submit_validity" || op == "submit_score";
}

// Result of an accepted submission; a pure function of the request so that
// idempotent retries can reproduce it.
Json AcceptedSubmission(const Json& request) {
  Json out{{"ok", true}};
  if (request.at("op") == "submit_phase1") {
    const Json& response = request.at("response");
    if (!response.value("chain", Json(nullptr)).is_null()) {
      out["chain_id"] = ChainId(request.at("task_id").get<std::string>(),
                                response.at("worker").get<std::string>());
    }
  }
  return out;
}

}  // namespace

Platform::Platform(Config config, std::unique_ptr<KvStore> store)
    : config_(std::move(config)), store_(std::move(store)) {
  if (auto errors = ValidateConfig(config_); !errors.empty()) throw ConfigError(std::move(errors));
  ActionExtractor extractor = config_.rules_file.empty()
                                  ? ActionExtractor()
                                  : ActionExtractor(LoadRulesFromFile(config_.rules_file));
  workflow_ = std::make_unique<Workflow>(config_.workflow, std::move(extractor));
  Replay();
}

std::unique_ptr<Platform> Platform::Open(Config config) {
  if (auto errors = ValidateConfig(config); !errors.empty()) throw ConfigError(std::move(errors));
  auto store = SqliteKvStore::Open(config.storage_path);
  return std::make_unique<Platform>(std::move(config), std::move(store));
}

void Platform::Persist(std::vector<KeyValue> puts) {
  std::lock_guard lock(log_mu_);
  puts.front().first = EventKey(next_seq_);  // placeholder key from the caller
  store_->Commit(puts);
  ++next_seq_;
}

void Platform::Replay() {
  uint64_t last = 0;
  for (const auto& [key, value] : store_->Scan(kEventPrefix)) {
    const Json event = Json::parse(value);
    const Json result = Dispatch(event, /*replay=*/true);
    if (!result.value("ok", false)) {
      throw StorageError("event " + key + " does not replay: " + result.dump());
    }
    last = std::stoull(key.substr(sizeof(kEventPrefix) - 1));
  }
  next_seq_ = last + 1;
}

uint64_t Platform::event_count() const {
  std::lock_guard lock(log_mu_);
  return next_seq_ - 1;
}

Json Platform::Execute(const Json& request) {
  if (!request.is_object() || !request.contains("op") || !request["op"].is_string()) {
    return Failure(codes::kBadRequest, {"request must be an object with a string \"op\""});
  }
  const std::string token = request.value("client_token", "");
  if (token.empty() || !IsSubmission(request["op"].get<std::string>())) {
    return Dispatch(request, /*replay=*/false);
  }
  std::lock_guard lock(idem_locks_[std::hash<std::string>{}(token) % idem_locks_.size()]);
  if (auto prior = store_->Get(kIdemPrefix + token)) {
    return AcceptedSubmission(Json::parse(*prior));
  }
  return Dispatch(request, /*replay=*/false);
}

Json Platform::Dispatch(const Json& request, bool replay) {
  Json event = request;
  std::string op;
  try {
    op = event.at("op").get<std::string>();
    if (op == "register_worker" && !event.contains("token")) event["token"] = NewToken();
    if (op == "open_phase2" && !event.contains("chain_ids")) {
      event["chain_ids"] = workflow_->CollectedChains();
    }
  } catch (const Json::exception& e) {
    return Failure(codes::kBadRequest, {e.what()});
  }

  const std::string client_token = event.value("client_token", "");
  const std::string event_text = event.dump();
  CommitHook hook = nullptr;
  if (!replay) {
    hook = [&] {
      std::vector<KeyValue> puts{{"", event_text}};
      if (!client_token.empty() && IsSubmission(op)) puts.push_back({kIdemPrefix + client_token, event_text});
      Persist(std::move(puts));
    };
  }

  try {
    Workflow& wf = *workflow_;
    if (op == "register_worker") {
      const Worker stored = wf.RegisterWorker(event.at("worker").get<Worker>(), hook);
      const std::string token = event.at("token").get<std::string>();
      {
        std::lock_guard lock(token_mu_);
        token_to_worker_[token] = stored.id;
      }
      return Json{{"ok", true}, {"worker", stored}, {"token", token}};
    }
    if (op == "register_argument") {
      const Status s = wf.RegisterArgument(event.at("argument").get<Argument>(), hook);
      return s.ok() ? Json{{"ok", true}} : Failure(s);
    }
    if (op == "open_phase1") {
      std::optional<std::string> manual;
      if (event.contains("manual_action") && !event["manual_action"].is_null()) {
        manual = event["manual_action"].get<std::string>();
      }
      auto task = wf.OpenPhase1Task(event.at("argument_id").get<std::string>(), manual, hook);
      return task.ok() ? Json{{"ok", true}, {"task", *task}} : Failure(task.status);
    }
    if (op == "submit_phase1") {
      Phase1Response response = event.at("response").get<Phase1Response>();
      const SubmitResult r =
          wf.SubmitPhase1(event.at("task_id").get<std::string>(), std::move(response), hook);
      return r.accepted() ? AcceptedSubmission(event) : Failure(r.status);
    }
    if (op == "aggregate_phase1") {
      auto v = wf.AggregatePhase1(event.at("task_id").get<std::string>(), hook);
      return v.ok() ? Json{{"ok", true}, {"verdict", *v}} : Failure(v.status);
    }
    if (op == "grant_bonuses") {
      auto entries = wf.GrantFeasibilityBonuses(event.at("task_id").get<std::string>(), hook);
      return entries.ok() ? Json{{"ok", true}, {"entries", *entries}} : Failure(entries.status);
    }
    if (op == "open_phase2") {
      const auto ids = event.at("chain_ids").get<std::vector<std::string>>();
      auto tasks = wf.OpenPhase2Tasks(ids, hook);
      if (!tasks.ok()) return Failure(tasks.status);
      Json created = Json::array();
      for (const AnnotationTask& t : *tasks) created.push_back(t.id);
      return Json{{"ok", true}, {"tasks", created}};
    }
    if (op == "submit_validity") {
      const SubmitResult r =
          wf.SubmitPhase2Validity(event.at("task_id").get<std::string>(),
                                  event.at("worker").get<std::string>(),
                                  event.at("valid").get<bool>(), hook);
      return r.accepted() ? AcceptedSubmission(event) : Failure(r.status);
    }
    if (op == "submit_score") {
      const SubmitResult r = wf.SubmitPhase2Score(event.at("task_id").get<std::string>(),
                                                  event.at("worker").get<std::string>(),
                                                  event.at("score").get<int>(), hook);
      return r.accepted() ? AcceptedSubmission(event) : Failure(r.status);
    }
    if (op == "aggregate_validity") {
      auto v = wf.AggregatePhase2Validity(event.at("task_id").get<std::string>(), hook);
      return v.ok() ? Json{{"ok", true}, {"verdict", *v}} : Failure(v.status);
    }
    if (op == "aggregate_scores") {
      auto v = wf.AggregatePhase2Scores(event.at("task_id").get<std::string>(), hook);
      return v.ok() ? Json{{"ok", true}, {"verdict", *v}} : Failure(v.status);
    }
    if (op == "close_task") {
      const Status s = wf.CloseTask(event.at("task_id").get<std::string>(), hook);
      return s.ok() ? Json{{"ok", true}} : Failure(s);
    }
  } catch (const Json::exception& e) {
    return Failure(codes::kBadRequest, {e.what()});
  } catch (const std::invalid_argument& e) {
    return Failure(codes::kBadRequest, {e.what()});
  }
  return Failure(codes::kBadRequest, {"unknown op '" + op + "'"});
}

std::string Platform::RegisterWorker(const Worker& worker) {
  const Json r = Execute(Json{{"op", "register_worker"}, {"worker", worker}});
  return r.value("token", "");
}

Status Platform::RegisterArgument(const Argument& argument) {
  return StatusFromResult(Execute(Json{{"op", "register_argument"}, {"argument", argument}}));
}

StatusOr<AnnotationTask> Platform::OpenPhase1Task(const std::string& argument_id,
                                                  const std::optional<std::string>& manual_action) {
  Json req{{"op", "open_phase1"}, {"argument_id", argument_id}};
  if (manual_action) req["manual_action"] = *manual_action;
  const Json r = Execute(req);
  if (!r.value("ok", false)) return StatusFromResult(r);
  return r.at("task").get<AnnotationTask>();
}

SubmitResult Platform::SubmitPhase1(const std::string& task_id, const Phase1Response& response,
                                    const std::string& client_token) {
  Json req{{"op", "submit_phase1"}, {"task_id", task_id}, {"response", response}};
  if (!client_token.empty()) req["client_token"] = client_token;
  return SubmitFromResult(Execute(req));
}

SubmitResult Platform::SubmitValidity(const std::string& task_id, const std::string& worker,
                                      bool valid, const std::string& client_token) {
  Json req{{"op", "submit_validity"}, {"task_id", task_id}, {"worker", worker}, {"valid", valid}};
  if (!client_token.empty()) req["client_token"] = client_token;
  return SubmitFromResult(Execute(req));
}

SubmitResult Platform::SubmitScore(const std::string& task_id, const std::string& worker,
                                   int score, const std::string& client_token) {
  Json req{{"op", "submit_score"}, {"task_id", task_id}, {"worker", worker}, {"score", score}};
  if (!client_token.empty()) req["client_token"] = client_token;
  return SubmitFromResult(Execute(req));
}

Status Platform::AggregatePhase1(const std::string& task_id) {
  return StatusFromResult(Execute(Json{{"op", "aggregate_phase1"}, {"task_id", task_id}}));
}

Status Platform::GrantBonuses(const std::string& task_id) {
  return StatusFromResult(Execute(Json{{"op", "grant_bonuses"}, {"task_id", task_id}}));
}

Status Platform::OpenPhase2ForCollectedChains() {
  return StatusFromResult(Execute(Json{{"op", "open_phase2"}}));
}

Status Platform::AggregateValidity(const std::string& task_id) {
  return StatusFromResult(Execute(Json{{"op", "aggregate_validity"}, {"task_id", task_id}}));
}

Status Platform::AggregateScores(const std::string& task_id) {
  return StatusFromResult(Execute(Json{{"op", "aggregate_scores"}, {"task_id", task_id}}));
}

Status Platform::CloseTask(const std::string& task_id) {
  return StatusFromResult(Execute(Json{{"op", "close_task"}, {"task_id", task_id}}));
}

BatchResult Platform::AggregatePhase1Batch() {
  BatchResult out;
  for (const AnnotationTask& t : workflow_->Tasks()) {
    if (t.phase != Phase::kPhase1 || t.state == TaskState::kClosed) continue;
    const Status s = AggregatePhase1(t.id);
    if (s.code == codes::kEmptyVotes) {
      ++out.pending;
      continue;
    }
    if (!s.ok()) throw std::runtime_error("aggregating " + t.id + ": " + s.code);
    ++out.aggregated;
    if (const Status b = GrantBonuses(t.id); !b.ok()) {
      throw std::runtime_error("paying " + t.id + ": " + b.code);
    }
    if (CloseTask(t.id).ok()) ++out.closed;
  }
  const Json opened = Execute(Json{{"op", "open_phase2"}});
  if (!opened.value("ok", false)) throw std::runtime_error("opening Phase 2: " + opened.dump());
  out.opened = opened.at("tasks").get<std::vector<std::string>>();
  return out;
}

BatchResult Platform::AggregatePhase2Batch() {
  BatchResult out;
  for (const AnnotationTask& t : workflow_->Tasks()) {
    if (t.phase != Phase::kPhase2 || t.state == TaskState::kClosed) continue;
    Json r = Execute(Json{{"op", "aggregate_validity"}, {"task_id", t.id}});
    if (!r.value("ok", false)) {
      if (r.value("code", "") != codes::kEmptyVotes) throw std::runtime_error(r.dump());
      ++out.pending;
      continue;
    }
    if (r["verdict"].value("decision", "") == ToString(Decision::kKeep)) {
      r = Execute(Json{{"op", "aggregate_scores"}, {"task_id", t.id}});
      if (!r.value("ok", false)) {
        if (r.value("code", "") != codes::kEmptyVotes) throw std::runtime_error(r.dump());
        ++out.pending;
        continue;
      }
    }
    ++out.aggregated;
    if (CloseTask(t.id).ok()) ++out.closed;
  }
  return out;
}

ScriptResult Platform::ApplyScript(std::istream& jsonl) {
  ScriptResult out;
  std::string line;
  int line_no = 0;
  while (std::getline(jsonl, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json record = Json::parse(line, nullptr, /*allow_exceptions=*/false);
    std::string expected = "OK";
    if (record.is_object() && record.contains("expect")) {
      expected = record["expect"].get<std::string>();
      record.erase("expect");
    }
    const Json result = Execute(record);
    ++out.applied;
    const std::string got = result.value("ok", false) ? "OK" : result.value("code", "?");
    if (got != expected) {
      out.mismatches.push_back("line " + std::to_string(line_no) + ": expected " + expected +
                               ", got " + result.dump());
    }
  }
  return out;
}

std::optional<std::string> Platform::WorkerForToken(const std::string& token) const {
  std::lock_guard lock(token_mu_);
  auto it = token_to_worker_.find(token);
  if (it == token_to_worker_.end()) return std::nullopt;
  return it->second;
}

std::string Platform::CreateSnapshot() {
  std::lock_guard lock(snapshot_mu_);
  char id[32];
  std::snprintf(id, sizeof(id), "snap-%06zu", store_->Scan(kSnapshotPrefix).size() + 1);
  const Json record{{"id", id}, {"created_at", NowUtc()}, {"state", workflow_->State()}};
  store_->Commit({{kSnapshotPrefix + std::string(id), record.dump()}});
  return id;
}

std::vector<std::string> Platform::SnapshotIds() const {
  std::vector<std::string> ids;
  for (const auto& [key, _] : store_->Scan(kSnapshotPrefix)) {
    ids.push_back(key.substr(sizeof(kSnapshotPrefix) - 1));
  }
  return ids;
}

StatusOr<Snapshot> Platform::LoadSnapshot(const std::string& id) const {
  const auto text = store_->Get(kSnapshotPrefix + id);
  if (!text) return Status::Error(codes::kSnapshotNotFound, {id});
  const Json j = Json::parse(*text);
  Snapshot s;
  s.id = j.at("id").get<std::string>();
  s.created_at = j.at("created_at").get<std::string>();
  s.state = j.at("state").get<WorkflowState>();
  return s;
}

StatusOr<FunnelReport> Platform::RunFunnel(const std::string& snapshot_id) {
  auto snapshot = LoadSnapshot(snapshot_id);
  if (!snapshot.ok()) return snapshot.status;
  int open = 0;
  for (const AnnotationTask& t : snapshot->state.tasks) open += t.state != TaskState::kClosed;
  if (open > 0) return Status::Error(codes::kTasksOpen, {std::to_string(open)});
  FunnelReport report;
  try {
    report = reasonlink::RunFunnel(snapshot->state.phase1, snapshot->state.phase2,
                                   config_.workflow.aggregation);
  } catch (const AggregationError& e) {
    return Status::Error(e.code(), {e.what()});
  }
  store_->Commit({{kFunnelPrefix + snapshot_id, Json(report).dump()}});
  return report;
}

StatusOr<FunnelReport> Platform::LoadFunnel(const std::string& snapshot_id) const {
  if (!store_->Get(kSnapshotPrefix + snapshot_id)) {
    return Status::Error(codes::kSnapshotNotFound, {snapshot_id});
  }
  const auto text = store_->Get(kFunnelPrefix + snapshot_id);
  if (!text) return Status::Error(codes::kFunnelNotRun, {snapshot_id});
  return Json::parse(*text).get<FunnelReport>();
}

StatusOr<std::string> Platform::Export(const std::string& snapshot_id, ExportBucket bucket) const {
  auto funnel = LoadFunnel(snapshot_id);
  if (!funnel.ok()) return funnel.status;
  return ExportDataset(*funnel, bucket);
}

StatusOr<Json> Platform::Report(const std::string& snapshot_id, ReportKind kind) const {
  auto snapshot = LoadSnapshot(snapshot_id);
  if (!snapshot.ok()) return snapshot.status;
  if (kind == ReportKind::kAgreement) return AgreementReport(snapshot->state);
  auto funnel = LoadFunnel(snapshot_id);
  if (!funnel.ok()) return funnel.status;
  return kind == ReportKind::kStats ? StatsReport(snapshot->state, *funnel)
                                    : CoverageReport(snapshot->state, *funnel);
}

}  // namespace reasonlink

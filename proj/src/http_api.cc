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

#include "reasonlink/http_api.h"

#include <httplib.h>

#include "reasonlink/annotation_workflow.h"

namespace reasonlink {

namespace {

void Reply(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void ReplyResult(httplib::Response& res, const Json& result) {
  const bool ok = result.value("ok", false);
  Reply(res, ok ? 200 : HttpStatusFor(result.value("code", "")), result);
}

void ReplyStatus(httplib::Response& res, const Status& status, Json body = Json::object()) {
  if (status.ok()) {
    body["ok"] = true;
    Reply(res, 200, body);
  } else {
    Reply(res, HttpStatusFor(status.code), Json(status));
  }
}

std::string BearerToken(const httplib::Request& req) {
  const std::string header = req.get_header_value("Authorization");
  constexpr std::string_view kPrefix = "Bearer ";
  if (header.rfind(kPrefix, 0) != 0) return {};
  return header.substr(kPrefix.size());
}

std::optional<Json> ParseBody(const httplib::Request& req, httplib::Response& res) {
  Json body = Json::parse(req.body, nullptr, /*allow_exceptions=*/false);
  if (body.is_discarded() || !body.is_object()) {
    Reply(res, 400, Status::Error(codes::kBadRequest, {"body must be a JSON object"}));
    return std::nullopt;
  }
  return body;
}

}  // namespace

int HttpStatusFor(const std::string& code) {
  if (code == codes::kBadRequest) return 400;
  if (code == codes::kSnapshotNotFound || code == codes::kUnknownTask ||
      code == codes::kUnknownArgument || code == codes::kUnknownChain ||
      code == codes::kUnknownWorker) {
    return 404;
  }
  if (code == codes::kNotQualified || code == codes::kNotAssigned) return 403;
  if (code == codes::kChainInvalid || code == codes::kMissingOutcome ||
      code == codes::kMissingActionEntity || code == codes::kSanityNotConfirmed ||
      code == codes::kScoreOutOfRange) {
    return 422;
  }
  return 409;
}

struct HttpServer::Impl {
  explicit Impl(Platform& p) : platform(p) {}

  Platform& platform;
  httplib::Server server;

  // Worker id for the request, or nullopt after writing a 401.
  std::optional<std::string> Worker(const httplib::Request& req, httplib::Response& res) {
    auto worker = platform.WorkerForToken(BearerToken(req));
    if (!worker) Reply(res, 401, Status::Error("UNAUTHORIZED", {"missing or unknown worker token"}));
    return worker;
  }

  bool Admin(const httplib::Request& req, httplib::Response& res) {
    const std::string& expected = platform.config().server.admin_token;
    if (expected.empty() || BearerToken(req) == expected) return true;
    Reply(res, 401, Status::Error("UNAUTHORIZED", {"admin token required"}));
    return false;
  }

  // Runs one request record with the worker and client token taken from the
  // HTTP layer.
  void Submit(const httplib::Request& req, httplib::Response& res, const std::string& op) {
    auto worker = Worker(req, res);
    if (!worker) return;
    auto body = ParseBody(req, res);
    if (!body) return;
    Json record{{"op", op}, {"task_id", body->value("task_id", "")}};
    if (body->contains("client_token")) record["client_token"] = (*body)["client_token"];
    if (op == "submit_phase1") {
      Json response = *body;
      response.erase("client_token");
      response["worker"] = *worker;
      response["task_id"] = record["task_id"];
      record["response"] = std::move(response);
    } else {
      record["worker"] = *worker;
      if (op == "submit_validity") record["valid"] = body->value("valid", Json(nullptr));
      if (op == "submit_score") record["score"] = body->value("score", Json(nullptr));
    }
    ReplyResult(res, platform.Execute(record));
  }

  void AdminRoute(httplib::Server::Handler handler, const std::string& pattern, bool post) {
    auto wrapped = [this, handler](const httplib::Request& req, httplib::Response& res) {
      if (Admin(req, res)) handler(req, res);
    };
    if (post) {
      server.Post(pattern, wrapped);
    } else {
      server.Get(pattern, wrapped);
    }
  }

  void AdminOp(const std::string& pattern, const std::string& op) {
    AdminRoute(
        [this, op](const httplib::Request& req, httplib::Response& res) {
          auto body = ParseBody(req, res);
          if (!body) return;
          Json record = *body;
          record["op"] = op;
          ReplyResult(res, platform.Execute(record));
        },
        pattern, /*post=*/true);
  }

  void Routes();
};

void HttpServer::Impl::Routes() {
  server.set_exception_handler(
      [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
        std::string what = "internal error";
        int status = 500;
        try {
          std::rethrow_exception(ep);
        } catch (const StorageError& e) {
          what = e.what();
          status = 503;
        } catch (const std::exception& e) {
          what = e.what();
        } catch (...) {
        }
        Reply(res, status, Status::Error(status == 503 ? "STORAGE_UNAVAILABLE" : "INTERNAL", {what}));
      });

  server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    Reply(res, 200, Json{{"status", "ready"}});
  });

  AdminRoute(
      [this](const httplib::Request& req, httplib::Response& res) {
        auto body = ParseBody(req, res);
        if (!body) return;
        ReplyResult(res, platform.Execute(Json{{"op", "register_worker"}, {"worker", *body}}));
      },
      "/workers", /*post=*/true);

  server.Get("/tasks/next", [this](const httplib::Request& req, httplib::Response& res) {
    auto worker = Worker(req, res);
    if (!worker) return;
    const std::string phase = req.get_param_value("phase");
    if (phase != "1" && phase != "2") {
      Reply(res, 400, Status::Error(codes::kBadRequest, {"phase must be 1 or 2"}));
      return;
    }
    const auto next = platform.workflow().NextTask(*worker, phase == "1" ? Phase::kPhase1 : Phase::kPhase2);
    Json body{{"ok", true}, {"assignment", nullptr}};
    if (next) {
      Json assignment{{"task", next->task}, {"stage", next->stage}};
      if (next->task.phase == Phase::kPhase2) {
        // The chain under judgement, so the client can render it in full.
        for (const Phase1Response& r : platform.workflow().State().phase1) {
          if (r.chain && ChainId(r.task_id, r.worker) == next->task.chain_id) {
            assignment["chain"] = *r.chain;
            break;
          }
        }
      }
      body["assignment"] = std::move(assignment);
    }
    Reply(res, 200, body);
  });

  server.Post("/phase1/submit", [this](const httplib::Request& req, httplib::Response& res) {
    Submit(req, res, "submit_phase1");
  });
  server.Post("/phase2/validity", [this](const httplib::Request& req, httplib::Response& res) {
    Submit(req, res, "submit_validity");
  });
  server.Post("/phase2/score", [this](const httplib::Request& req, httplib::Response& res) {
    Submit(req, res, "submit_score");
  });

  AdminRoute(
      [this](const httplib::Request& req, httplib::Response& res) {
        const std::string state = req.get_param_value("state");
        Json tasks = Json::array();
        for (const AnnotationTask& t : platform.workflow().Tasks()) {
          if (state.empty() || ToString(t.state) == state) tasks.push_back(t);
        }
        Reply(res, 200, Json{{"ok", true}, {"tasks", tasks}});
      },
      "/admin/tasks", /*post=*/false);

  AdminRoute(
      [this](const httplib::Request& req, httplib::Response& res) {
        Json body = Json::parse(req.body, nullptr, false);
        if (body.is_object()) body = Json::array({body});
        if (!body.is_array()) {
          Reply(res, 400, Status::Error(codes::kBadRequest, {"expected an argument or a list"}));
          return;
        }
        Json results = Json::array();
        for (const Json& a : body) {
          results.push_back(platform.Execute(Json{{"op", "register_argument"}, {"argument", a}}));
        }
        Reply(res, 200, Json{{"ok", true}, {"results", results}});
      },
      "/admin/arguments", /*post=*/true);

  AdminOp("/admin/phase1/open", "open_phase1");
  AdminOp("/admin/phase1/aggregate", "aggregate_phase1");
  AdminOp("/admin/phase1/bonuses", "grant_bonuses");
  AdminOp("/admin/phase2/open", "open_phase2");
  AdminOp("/admin/phase2/validity/aggregate", "aggregate_validity");
  AdminOp("/admin/phase2/scores/aggregate", "aggregate_scores");
  AdminOp("/admin/tasks/close", "close_task");

  AdminRoute(
      [this](const httplib::Request& req, httplib::Response& res) {
        auto body = ParseBody(req, res);
        if (!body) return;
        ReplyResult(res, platform.Execute(*body));
      },
      "/admin/execute", /*post=*/true);

  AdminRoute(
      [this](const httplib::Request&, httplib::Response& res) {
        Reply(res, 200, Json{{"ok", true}, {"id", platform.CreateSnapshot()}});
      },
      "/admin/snapshots", /*post=*/true);
  AdminRoute(
      [this](const httplib::Request&, httplib::Response& res) {
        Reply(res, 200, Json{{"ok", true}, {"snapshots", platform.SnapshotIds()}});
      },
      "/admin/snapshots", /*post=*/false);

  AdminRoute(
      [this](const httplib::Request& req, httplib::Response& res) {
        auto funnel = platform.RunFunnel(req.matches[1]);
        if (!funnel.ok()) return ReplyStatus(res, funnel.status);
        ReplyStatus(res, Status::Ok(), Json{{"summary", FunnelSummary(*funnel)}});
      },
      R"(/admin/snapshots/([^/]+)/funnel)", /*post=*/true);

  AdminRoute(
      [this](const httplib::Request& req, httplib::Response& res) {
        const std::string kind = req.matches[2];
        ReportKind k;
        if (kind == "stats") {
          k = ReportKind::kStats;
        } else if (kind == "coverage") {
          k = ReportKind::kCoverage;
        } else if (kind == "agreement") {
          k = ReportKind::kAgreement;
        } else {
          return Reply(res, 404, Status::Error(codes::kBadRequest, {"unknown report " + kind}));
        }
        auto report = platform.Report(req.matches[1], k);
        if (!report.ok()) return ReplyStatus(res, report.status);
        ReplyStatus(res, Status::Ok(), Json{{"report", *report}});
      },
      R"(/admin/snapshots/([^/]+)/reports/([a-z]+))", /*post=*/false);

  AdminRoute(
      [this](const httplib::Request& req, httplib::Response& res) {
        const std::string bucket = req.has_param("bucket") ? req.get_param_value("bucket") : "kept";
        if (bucket != "kept" && bucket != "all") {
          return Reply(res, 400, Status::Error(codes::kBadRequest, {"bucket must be kept or all"}));
        }
        auto csv = platform.Export(req.matches[1],
                                   bucket == "kept" ? ExportBucket::kKeptOnly : ExportBucket::kAll);
        if (!csv.ok()) return ReplyStatus(res, csv.status);
        res.status = 200;
        res.set_content(*csv, "text/csv");
      },
      R"(/admin/snapshots/([^/]+)/export)", /*post=*/false);
}

HttpServer::HttpServer(Platform& platform) : impl_(std::make_unique<Impl>(platform)) {
  impl_->server.new_task_queue = [n = platform.config().server.threads] {
    return new httplib::ThreadPool(static_cast<size_t>(n));
  };
  impl_->Routes();
}

HttpServer::~HttpServer() { Stop(); }

bool HttpServer::Listen(const std::string& host, int port) { return impl_->server.listen(host, port); }
int HttpServer::BindToAnyPort(const std::string& host) { return impl_->server.bind_to_any_port(host); }
bool HttpServer::ListenAfterBind() { return impl_->server.listen_after_bind(); }
void HttpServer::WaitUntilReady() { impl_->server.wait_until_ready(); }
void HttpServer::Stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

}  // namespace reasonlink

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

#ifndef REASONLINK_HTTP_API_H_
#define REASONLINK_HTTP_API_H_

#include <memory>
#include <string>

#include "reasonlink/platform.h"

namespace reasonlink {

// JSON-over-HTTP front end for a Platform.
//
// Worker routes authenticate with "Authorization: Bearer <token>" where the
// token came from worker registration:
//   GET  /tasks/next?phase=1|2
//   POST /phase1/submit      {task_id, feasibility, outcome, chain?, sanity_confirmed, client_token?}
//   POST /phase2/validity    {task_id, valid, client_token?}
//   POST /phase2/score       {task_id, score, client_token?}
//
// Admin routes require the configured admin token (if any) as bearer:
//   POST /workers, GET /admin/tasks, POST /admin/arguments,
//   POST /admin/phase1/open, POST /admin/phase1/aggregate,
//   POST /admin/phase2/open, POST /admin/phase2/aggregate,
//   POST /admin/tasks/close, POST /admin/execute,
//   POST|GET /admin/snapshots, POST /admin/snapshots/<id>/funnel,
//   GET /admin/snapshots/<id>/reports/<stats|coverage|agreement>,
//   GET /admin/snapshots/<id>/export?bucket=kept|all
//
// GET /health is open. Rejections carry {"ok": false, "code", "details"}.
class HttpServer {
 public:
  explicit HttpServer(Platform& platform);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Blocks until Stop().
  bool Listen(const std::string& host, int port);
  // Returns the bound port, or -1.
  int BindToAnyPort(const std::string& host);
  bool ListenAfterBind();
  void WaitUntilReady();
  void Stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// HTTP status for a rejection code.
int HttpStatusFor(const std::string& code);

}  // namespace reasonlink

#endif  // REASONLINK_HTTP_API_H_

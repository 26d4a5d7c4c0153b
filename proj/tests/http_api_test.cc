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

#include <thread>

#include <gtest/gtest.h>
#include <httplib.h>

#include "test_util.h"

namespace reasonlink {
namespace {

using testing::QualifiedWorker;
using testing::WhalingArgument;

constexpr char kAdmin[] = "admin-secret";

class HttpApiTest : public ::testing::Test {
 protected:
  void SetUp() override {
    Config config;
    config.server.admin_token = kAdmin;
    config.server.threads = 4;
    platform_ = std::make_unique<Platform>(config, std::make_unique<MemoryKvStore>());
    server_ = std::make_unique<HttpServer>(*platform_);
    port_ = server_->BindToAnyPort("127.0.0.1");
    ASSERT_GT(port_, 0);
    thread_ = std::thread([this] { server_->ListenAfterBind(); });
    server_->WaitUntilReady();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
  }
  void TearDown() override {
    server_->Stop();
    thread_.join();
  }

  httplib::Headers Bearer(const std::string& token) {
    return {{"Authorization", "Bearer " + token}};
  }

  std::pair<int, Json> Post(const std::string& path, const Json& body, const std::string& token) {
    auto res = client_->Post(path, Bearer(token), body.dump(), "application/json");
    if (!res) return {0, nullptr};
    return {res->status, Json::parse(res->body, nullptr, false)};
  }
  std::pair<int, Json> Get(const std::string& path, const std::string& token) {
    auto res = client_->Get(path, Bearer(token));
    if (!res) return {0, nullptr};
    return {res->status, Json::parse(res->body, nullptr, false)};
  }

  std::string Register(const std::string& id, std::vector<int> phases) {
    std::set<Phase> p;
    for (int x : phases) p.insert(static_cast<Phase>(x));
    auto [status, body] = Post("/workers", QualifiedWorker(id, p), kAdmin);
    EXPECT_EQ(status, 200) << body;
    return body.value("token", "");
  }

  Json Phase1Body(const std::string& task, const std::string& implicit) {
    return Json{{"task_id", task},
                {"feasibility", "can_write"},
                {"outcome", "Extinction of whale species"},
                {"chain", {{"rel_ai", "suppress"}, {"implicit", implicit}, {"rel_io", "cause"}}},
                {"sanity_confirmed", true}};
  }

  std::unique_ptr<Platform> platform_;
  std::unique_ptr<HttpServer> server_;
  std::unique_ptr<httplib::Client> client_;
  std::thread thread_;
  int port_ = 0;
};

TEST_F(HttpApiTest, Health) {
  auto [status, body] = Get("/health", "");
  EXPECT_EQ(status, 200);
  EXPECT_EQ(body["status"], "ready");
}

TEST_F(HttpApiTest, AuthIsRequired) {
  EXPECT_EQ(Post("/workers", QualifiedWorker("x", {Phase::kPhase1}), "wrong").first, 401);
  EXPECT_EQ(Get("/tasks/next?phase=1", "no-such-token").first, 401);
  EXPECT_EQ(Get("/admin/tasks", "").first, 401);
}

TEST_F(HttpApiTest, PhaseOneSubmissionFlow) {
  const std::string token = Register("w0", {1});
  ASSERT_FALSE(token.empty());
  ASSERT_EQ(Post("/admin/arguments", WhalingArgument("a0"), kAdmin).first, 200);
  auto [open_status, open] = Post("/admin/phase1/open", {{"argument_id", "a0"}}, kAdmin);
  ASSERT_EQ(open_status, 200) << open;
  EXPECT_EQ(open["task"]["action"], "Banning whaling");

  auto [next_status, next] = Get("/tasks/next?phase=1", token);
  ASSERT_EQ(next_status, 200);
  EXPECT_EQ(next["assignment"]["task"]["id"], "p1-a0");
  EXPECT_EQ(next["assignment"]["stage"], "phase1");
  EXPECT_EQ(Get("/tasks/next?phase=3", token).first, 400);

  Json body = Phase1Body("p1-a0", "Fewer whales hunted");
  body["client_token"] = "c-1";
  auto [s1, r1] = Post("/phase1/submit", body, token);
  EXPECT_EQ(s1, 200) << r1;
  EXPECT_EQ(r1["chain_id"], "p1-a0/w0");
  auto [s2, r2] = Post("/phase1/submit", body, token);
  EXPECT_EQ(s2, 200);
  EXPECT_EQ(r2, r1);
  body.erase("client_token");
  auto [s3, r3] = Post("/phase1/submit", body, token);
  EXPECT_EQ(s3, 409);
  EXPECT_EQ(r3["code"], "DUPLICATE_SUBMISSION");

  EXPECT_TRUE(Get("/tasks/next?phase=1", token).second["assignment"].is_null());

  auto [ls, listing] = Get("/admin/tasks?state=open", kAdmin);
  ASSERT_EQ(ls, 200);
  ASSERT_EQ(listing["tasks"].size(), 1u);
}

TEST_F(HttpApiTest, RejectionCodesAndStatuses) {
  const std::string writer = Register("w0", {1});
  const std::string judge = Register("v0", {2});
  Post("/admin/arguments", Json::array({WhalingArgument("a0")}), kAdmin);
  Post("/admin/phase1/open", {{"argument_id", "a0"}}, kAdmin);

  Json copy = Phase1Body("p1-a0", WhalingArgument("a0").premise);
  auto [s1, r1] = Post("/phase1/submit", copy, writer);
  EXPECT_EQ(s1, 422);
  EXPECT_EQ(r1["code"], "CHAIN_INVALID");
  EXPECT_EQ(r1["details"], Json::array({"PARAPHRASE_OF_PREMISE"}));

  auto [s2, r2] = Post("/phase1/submit", Phase1Body("p1-a0", "Fewer whales"), judge);
  EXPECT_EQ(s2, 403);
  EXPECT_EQ(r2["code"], "NOT_QUALIFIED");

  auto [s3, r3] = Post("/phase1/submit", Phase1Body("p1-zz", "Fewer whales"), writer);
  EXPECT_EQ(s3, 404);
  EXPECT_EQ(r3["code"], "UNKNOWN_TASK");

  auto res = client_->Post("/phase1/submit", Bearer(writer), "{not json", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 400);

  auto [s4, r4] = Post("/phase2/score", {{"task_id", "p2-x"}, {"score", 4}}, judge);
  EXPECT_EQ(s4, 404);
  EXPECT_EQ(r4["code"], "UNKNOWN_TASK");
}

TEST_F(HttpApiTest, PhaseTwoAndAdminReports) {
  std::vector<std::string> writers, judges;
  for (int i = 0; i < 3; ++i) writers.push_back(Register("w" + std::to_string(i), {1}));
  for (int i = 0; i < 3; ++i) judges.push_back(Register("v" + std::to_string(i), {2}));
  Post("/admin/arguments", WhalingArgument("a0"), kAdmin);
  Post("/admin/phase1/open", {{"argument_id", "a0"}}, kAdmin);
  for (int i = 0; i < 3; ++i) {
    ASSERT_EQ(Post("/phase1/submit", Phase1Body("p1-a0", "Idea " + std::to_string(i)), writers[i]).first, 200);
  }
  ASSERT_EQ(Post("/admin/phase1/aggregate", {{"task_id", "p1-a0"}}, kAdmin).first, 200);
  ASSERT_EQ(Post("/admin/phase1/bonuses", {{"task_id", "p1-a0"}}, kAdmin).first, 200);
  ASSERT_EQ(Post("/admin/tasks/close", {{"task_id", "p1-a0"}}, kAdmin).first, 200);
  auto [os, opened] = Post("/admin/phase2/open", Json::object(), kAdmin);
  ASSERT_EQ(os, 200);
  ASSERT_EQ(opened["tasks"].size(), 3u);

  auto [ns, next] = Get("/tasks/next?phase=2", judges[0]);
  ASSERT_EQ(ns, 200);
  EXPECT_EQ(next["assignment"]["stage"], "validity");
  EXPECT_TRUE(next["assignment"].contains("chain"));

  auto [snap_status, snap] = Post("/admin/snapshots", Json::object(), kAdmin);
  ASSERT_EQ(snap_status, 200);
  const std::string id = snap["id"];
  auto [fs, funnel] = Post("/admin/snapshots/" + id + "/funnel", Json::object(), kAdmin);
  EXPECT_EQ(fs, 409);
  EXPECT_EQ(funnel["code"], "TASKS_OPEN");

  for (const Json& t : opened["tasks"]) {
    for (const std::string& judge : judges) {
      ASSERT_EQ(Post("/phase2/validity", {{"task_id", t}, {"valid", true}}, judge).first, 200);
    }
    ASSERT_EQ(Post("/admin/phase2/validity/aggregate", {{"task_id", t}}, kAdmin).first, 200);
    for (const std::string& judge : judges) {
      ASSERT_EQ(Post("/phase2/score", {{"task_id", t}, {"score", 5}}, judge).first, 200);
    }
    ASSERT_EQ(Post("/admin/phase2/scores/aggregate", {{"task_id", t}}, kAdmin).first, 200);
    ASSERT_EQ(Post("/admin/tasks/close", {{"task_id", t}}, kAdmin).first, 200);
  }
  const std::string done = Post("/admin/snapshots", Json::object(), kAdmin).second["id"];
  auto [fs2, funnel2] = Post("/admin/snapshots/" + done + "/funnel", Json::object(), kAdmin);
  ASSERT_EQ(fs2, 200) << funnel2;
  EXPECT_EQ(funnel2["summary"]["implicit_reasonings_phase2"], 3);

  auto [rs, stats] = Get("/admin/snapshots/" + done + "/reports/stats", kAdmin);
  ASSERT_EQ(rs, 200);
  EXPECT_EQ(stats["report"]["phase2"]["implicit_reasonings"], 3);
  EXPECT_EQ(Get("/admin/snapshots/" + done + "/reports/bogus", kAdmin).first, 404);
  EXPECT_EQ(Get("/admin/snapshots/nope/reports/stats", kAdmin).first, 404);

  auto csv = client_->Get("/admin/snapshots/" + done + "/export?bucket=kept", Bearer(kAdmin));
  ASSERT_TRUE(csv);
  EXPECT_EQ(csv->status, 200);
  EXPECT_EQ(std::count(csv->body.begin(), csv->body.end(), '\n'), 4);
  auto listed = Get("/admin/snapshots", kAdmin).second;
  EXPECT_EQ(listed["snapshots"].size(), 2u);
}

}  // namespace
}  // namespace reasonlink

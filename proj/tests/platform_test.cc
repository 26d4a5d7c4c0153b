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

#include <gtest/gtest.h>

#include "test_util.h"

namespace reasonlink {
namespace {

using testing::ChainResponse;
using testing::QualifiedWorker;
using testing::TempDir;
using testing::WhalingArgument;

std::unique_ptr<Platform> InMemory(Config config = {}) {
  return std::make_unique<Platform>(std::move(config), std::make_unique<MemoryKvStore>());
}

Config SqliteConfig(const TempDir& dir) {
  Config c;
  c.storage_path = dir.File("store.db");
  return c;
}

// Registers workers w0..w9 and v0..v9 and `n` arguments with open tasks.
void Seed(Platform& p, int n) {
  for (int i = 0; i < 10; ++i) {
    p.RegisterWorker(QualifiedWorker("w" + std::to_string(i), {Phase::kPhase1}));
    p.RegisterWorker(QualifiedWorker("v" + std::to_string(i), {Phase::kPhase2}));
  }
  for (int i = 0; i < n; ++i) {
    const std::string id = "a" + std::to_string(i);
    ASSERT_TRUE(p.RegisterArgument(WhalingArgument(id)).ok());
    ASSERT_TRUE(p.OpenPhase1Task(id).ok());
  }
}

TEST(PlatformTest, ExecuteReportsCodes) {
  auto p = InMemory();
  Seed(*p, 1);
  const Json ok = p->Execute({{"op", "submit_phase1"},
                              {"task_id", "p1-a0"},
                              {"response", ChainResponse("w0", "Fewer whales hunted")}});
  EXPECT_EQ(ok, (Json{{"ok", true}, {"chain_id", "p1-a0/w0"}}));
  const Json dup = p->Execute({{"op", "submit_phase1"},
                               {"task_id", "p1-a0"},
                               {"response", ChainResponse("w0", "Fewer whales hunted")}});
  EXPECT_EQ(dup["code"], "DUPLICATE_SUBMISSION");
  EXPECT_EQ(p->Execute({{"op", "explode"}})["code"], "BAD_REQUEST");
  EXPECT_EQ(p->Execute(Json::array())["code"], "BAD_REQUEST");
  EXPECT_EQ(p->Execute({{"op", "submit_score"}, {"task_id", "x"}})["code"], "BAD_REQUEST");
}

TEST(PlatformTest, IdempotentSubmission) {
  auto p = InMemory();
  Seed(*p, 1);
  const uint64_t before = p->event_count();
  const SubmitResult first = p->SubmitPhase1("p1-a0", ChainResponse("w0", "Fewer whales hunted"), "tok-1");
  ASSERT_TRUE(first.accepted());
  const SubmitResult again = p->SubmitPhase1("p1-a0", ChainResponse("w0", "Fewer whales hunted"), "tok-1");
  EXPECT_TRUE(again.accepted());
  EXPECT_EQ(again.chain_id, first.chain_id);
  EXPECT_EQ(p->event_count(), before + 1);
  EXPECT_EQ(p->workflow().State().phase1.size(), 1u);

  // A refused request leaves the token unused.
  Phase1Response bad = ChainResponse("w9", "x");
  bad.sanity_confirmed = false;
  EXPECT_FALSE(p->SubmitPhase1("p1-a0", bad, "tok-2").accepted());
  EXPECT_TRUE(p->SubmitPhase1("p1-a0", ChainResponse("w9", "Smaller fleets"), "tok-2").accepted());
}

TEST(PlatformTest, ReplayRestoresState) {
  TempDir dir;
  Json before;
  std::string token;
  {
    auto p = Platform::Open(SqliteConfig(dir));
    Seed(*p, 2);
    token = p->RegisterWorker(QualifiedWorker("late", {Phase::kPhase1}));
    for (int i = 0; i < 3; ++i) {
      ASSERT_TRUE(p->SubmitPhase1("p1-a0", ChainResponse("w" + std::to_string(i), "Idea " + std::to_string(i))).accepted());
    }
    ASSERT_TRUE(p->AggregatePhase1("p1-a0").ok());
    ASSERT_TRUE(p->GrantBonuses("p1-a0").ok());
    ASSERT_TRUE(p->OpenPhase2ForCollectedChains().ok());
    ASSERT_TRUE(p->SubmitValidity("p2-p1-a0/w1", "v3", true, "t-v3").accepted());
    before = p->workflow().State();
  }
  auto p = Platform::Open(SqliteConfig(dir));
  EXPECT_EQ(Json(p->workflow().State()), before);
  EXPECT_EQ(p->WorkerForToken(token), "late");
  EXPECT_TRUE(p->SubmitValidity("p2-p1-a0/w1", "v3", true, "t-v3").accepted());
  EXPECT_EQ(Json(p->workflow().State()), before);
}

class FailingStore : public MemoryKvStore {
 public:
  void Commit(const std::vector<KeyValue>& puts) override {
    if (fail) throw StorageError("disk full");
    MemoryKvStore::Commit(puts);
  }
  bool fail = false;
};

TEST(PlatformTest, StorageFailureIsNotAcknowledged) {
  auto store = std::make_unique<FailingStore>();
  FailingStore* raw = store.get();
  Platform p(Config{}, std::move(store));
  Seed(p, 1);
  raw->fail = true;
  EXPECT_THROW(p.SubmitPhase1("p1-a0", ChainResponse("w0", "Fewer whales hunted")), StorageError);
  EXPECT_TRUE(p.workflow().State().phase1.empty());
  raw->fail = false;
  EXPECT_TRUE(p.SubmitPhase1("p1-a0", ChainResponse("w0", "Fewer whales hunted")).accepted());
}

TEST(PlatformTest, OpenRejectsBadConfig) {
  Config c;
  c.ingestion.min_quality = 1.5;
  try {
    Platform::Open(c);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.errors(), std::vector<std::string>{"ingestion.min_quality: must be within [0,1]"});
  }
  c = Config{};
  c.storage_path = "/nonexistent-dir/x/store.db";
  EXPECT_THROW(Platform::Open(c), StorageError);
}

TEST(PlatformTest, SnapshotFunnelAndExportErrors) {
  auto p = InMemory();
  EXPECT_EQ(p->Export("snap-missing", ExportBucket::kAll).status.code, "SNAPSHOT_NOT_FOUND");
  const std::string empty = p->CreateSnapshot();
  EXPECT_EQ(p->Export(empty, ExportBucket::kAll).status.code, "FUNNEL_NOT_RUN");
  ASSERT_TRUE(p->RunFunnel(empty).ok());
  const std::string header = p->Export(empty, ExportBucket::kKeptOnly).value.value();
  EXPECT_EQ(header,
            "argument_id,chain_id,action,rel_ai,implicit,rel_io,outcome,author,phase1_task_id,"
            "net_relation,validity,score,bucket\n");

  Seed(*p, 1);
  ASSERT_TRUE(p->SubmitPhase1("p1-a0", ChainResponse("w0", "Fewer whales hunted")).accepted());
  const std::string open = p->CreateSnapshot();
  EXPECT_EQ(p->RunFunnel(open).status, Status::Error("TASKS_OPEN", {"1"}));
  EXPECT_EQ(p->SnapshotIds(), (std::vector<std::string>{empty, open}));
  EXPECT_EQ(p->LoadSnapshot(open)->state.phase1.size(), 1u);
  EXPECT_EQ(p->LoadSnapshot(empty)->state.phase1.size(), 0u);
}

TEST(PlatformTest, ExportIsByteIdentical) {
  auto a = InMemory();
  auto b = InMemory();
  const auto run_a = testing::RunFixturePipeline(*a);
  const auto run_b = testing::RunFixturePipeline(*b);
  ASSERT_TRUE(run_a.mismatches.empty()) << run_a.mismatches.front();
  ASSERT_TRUE(a->RunFunnel(run_a.snapshot).ok());
  ASSERT_TRUE(b->RunFunnel(run_b.snapshot).ok());
  for (ExportBucket bucket : {ExportBucket::kKeptOnly, ExportBucket::kAll}) {
    const std::string x = *a->Export(run_a.snapshot, bucket);
    EXPECT_EQ(x, *b->Export(run_b.snapshot, bucket));
    EXPECT_EQ(x, *a->Export(run_a.snapshot, bucket));
  }
  // A second snapshot of the same state exports the same bytes.
  const std::string again = a->CreateSnapshot();
  ASSERT_TRUE(a->RunFunnel(again).ok());
  EXPECT_EQ(*a->Export(again, ExportBucket::kAll), *a->Export(run_a.snapshot, ExportBucket::kAll));
}

TEST(PlatformTest, KillAndRestartKeepsAcknowledgedSubmissions) {
  TempDir dir;
  const auto r = testing::KillAndRestart(dir.File("store.db"), 40, 75);
  ASSERT_TRUE(r.error.empty()) << r.error;
  EXPECT_GE(r.acknowledged, 75);
  EXPECT_TRUE(r.lost.empty()) << r.lost.front();
}

}  // namespace
}  // namespace reasonlink

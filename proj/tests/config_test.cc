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

#include "reasonlink/config.h"

#include <cstdlib>
#include <fstream>

#include <gtest/gtest.h>

namespace reasonlink {
namespace {

std::vector<std::string> ErrorsOf(const std::string& text) {
  try {
    ParseConfig(text);
  } catch (const ConfigError& e) {
    return e.errors();
  }
  return {};
}

TEST(ConfigTest, DefaultsMatchPublishedSetup) {
  const Config c = ParseConfig("{}");
  EXPECT_DOUBLE_EQ(c.ingestion.min_quality, 0.5);
  EXPECT_DOUBLE_EQ(c.ingestion.min_stance, 0.6);
  EXPECT_DOUBLE_EQ(c.workflow.qualification.min_acceptance_rate, 0.98);
  EXPECT_EQ(c.workflow.qualification.min_approved_tasks, 5000);
  EXPECT_DOUBLE_EQ(c.workflow.qualification.min_quiz_score, 0.75);
  EXPECT_EQ(c.workflow.aggregation.k_feasibility, 3);
  EXPECT_EQ(c.workflow.task_capacity, 5);
  EXPECT_EQ(c.workflow.payments.phase1_base_cents, 50);
  EXPECT_EQ(c.workflow.payments.phase1_bonus_cents, 25);
  EXPECT_EQ(c.workflow.payments.phase2_base_cents, 40);
}

TEST(ConfigTest, ParsesSections) {
  const Config c = ParseConfig(R"({
    "storage": {"path": "/tmp/x.db"},
    "server": {"port": 9000, "admin_token": "s3cret"},
    "ingestion": {"min_quality": 0.7, "topics": ["Ban whaling"]},
    "aggregation": {"score_rule": "mode", "k_feasibility": 2},
    "payments": {"phase1_base": "0.60", "phase1_bonus": 0.3}
  })");
  EXPECT_EQ(c.storage_path, "/tmp/x.db");
  EXPECT_EQ(c.server.port, 9000);
  EXPECT_EQ(c.server.admin_token, "s3cret");
  EXPECT_DOUBLE_EQ(c.ingestion.min_quality, 0.7);
  EXPECT_EQ(c.ingestion.topics, std::set<std::string>{"Ban whaling"});
  EXPECT_EQ(c.workflow.aggregation.score_rule, ScoreRule::kMode);
  EXPECT_EQ(c.workflow.aggregation.k_feasibility, 2);
  EXPECT_EQ(c.workflow.payments.phase1_base_cents, 60);
  EXPECT_EQ(c.workflow.payments.phase1_bonus_cents, 30);
}

TEST(ConfigTest, OutOfRangeNamesTheField) {
  EXPECT_EQ(ErrorsOf(R"({"ingestion": {"min_quality": 1.5}})"),
            std::vector<std::string>{"ingestion.min_quality: must be within [0,1]"});
}

TEST(ConfigTest, CollectsEveryError) {
  const auto errors = ErrorsOf(R"({
    "server": {"port": "eighty"},
    "ingestion": {"min_stance": -1},
    "aggregation": {"score_rule": "median"},
    "payments": {"phase2_base": "-1"}
  })");
  EXPECT_EQ(errors.size(), 4u);
  auto has = [&](const std::string& prefix) {
    return std::any_of(errors.begin(), errors.end(),
                       [&](const std::string& e) { return e.rfind(prefix, 0) == 0; });
  };
  EXPECT_TRUE(has("server.port"));
  EXPECT_TRUE(has("ingestion.min_stance"));
  EXPECT_TRUE(has("aggregation.score_rule"));
  EXPECT_TRUE(has("payments.phase2_base"));
}

TEST(ConfigTest, MalformedJson) { EXPECT_EQ(ErrorsOf("{").size(), 1u); }

TEST(ConfigTest, EnvironmentOverridesStorePath) {
  Config c;
  setenv(kStorePathEnv, "/tmp/override.db", 1);
  ApplyEnvironment(c);
  unsetenv(kStorePathEnv);
  EXPECT_EQ(c.storage_path, "/tmp/override.db");
}

TEST(ConfigTest, MoneyParsing) {
  EXPECT_EQ(ParseMoneyCents("0.50"), 50);
  EXPECT_EQ(ParseMoneyCents("0.5"), 50);
  EXPECT_EQ(ParseMoneyCents("12"), 1200);
  EXPECT_THROW(ParseMoneyCents("0.505"), std::invalid_argument);
  EXPECT_THROW(ParseMoneyCents("abc"), std::invalid_argument);
}

TEST(ConfigTest, ShippedExampleIsValid) {
  EXPECT_NO_THROW(LoadConfigFile(REASONLINK_DATA_DIR "/reasonlink.json"));
}

}  // namespace
}  // namespace reasonlink

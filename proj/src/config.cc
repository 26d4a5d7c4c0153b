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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "reasonlink/json_io.h"
#include "reasonlink/text.h"

namespace reasonlink {

namespace {

std::string JoinErrors(const std::vector<std::string>& errors) {
  std::string out = "invalid configuration:";
  for (const std::string& e : errors) out += "\n  " + e;
  return out;
}

// Reads j[key] into out if present. Type mismatches are recorded, not thrown.
template <typename T>
void Read(const Json& j, const char* key, const std::string& path, T& out,
          std::vector<std::string>& errors) {
  if (!j.is_object() || !j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const Json::exception&) {
    errors.push_back(path + key + ": wrong type");
  }
}

int64_t MoneyFromJson(const Json& v) {
  if (v.is_number()) return std::llround(v.get<double>() * 100.0);
  if (v.is_string()) return ParseMoneyCents(v.get<std::string>());
  throw std::invalid_argument("not a money value");
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> errors)
    : std::runtime_error(JoinErrors(errors)), errors_(std::move(errors)) {}

int64_t ParseMoneyCents(const std::string& text) {
  const std::string_view t = Trim(text);
  const size_t dot = t.find('.');
  const std::string_view whole = t.substr(0, dot);
  const std::string_view frac = dot == std::string_view::npos ? "" : t.substr(dot + 1);
  auto digits = [](std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  if (whole.empty() || whole.size() > 12 || !digits(whole) || !digits(frac) || frac.size() > 2 ||
      (dot != std::string_view::npos && frac.empty())) {
    throw std::invalid_argument("bad money value '" + text + "'");
  }
  int64_t cents = std::stoll(std::string(whole)) * 100;
  if (!frac.empty()) cents += std::stoi(std::string(frac)) * (frac.size() == 1 ? 10 : 1);
  return cents;
}

std::vector<std::string> ValidateConfig(const Config& c) {
  std::vector<std::string> errors;
  if (Trim(c.storage_path).empty()) errors.push_back("storage.path: must not be empty");
  if (c.server.port < 0 || c.server.port > 65535) {
    errors.push_back("server.port: must be within [0,65535]");
  }
  if (c.server.threads < 1) errors.push_back("server.threads: must be at least 1");
  auto unit = [&](double v, const char* path) {
    if (!(v >= 0.0 && v <= 1.0)) errors.push_back(std::string(path) + ": must be within [0,1]");
  };
  unit(c.ingestion.min_quality, "ingestion.min_quality");
  unit(c.ingestion.min_stance, "ingestion.min_stance");
  unit(c.workflow.qualification.min_acceptance_rate, "qualification.min_acceptance_rate");
  unit(c.workflow.qualification.min_quiz_score, "qualification.min_quiz_score");
  if (c.workflow.qualification.min_approved_tasks < 0) {
    errors.push_back("qualification.min_approved_tasks: must be non-negative");
  }
  for (const std::string& e : c.workflow.aggregation.Validate()) {
    errors.push_back("aggregation." + e);
  }
  if (c.workflow.task_capacity < 1 || c.workflow.task_capacity > c.workflow.aggregation.max_votes) {
    errors.push_back("workflow.task_capacity: must be within [1,aggregation.max_votes]");
  }
  const PaymentPolicy& p = c.workflow.payments;
  if (p.phase1_base_cents < 0) errors.push_back("payments.phase1_base: must be non-negative");
  if (p.phase1_bonus_cents < 0) errors.push_back("payments.phase1_bonus: must be non-negative");
  if (p.phase2_base_cents < 0) errors.push_back("payments.phase2_base: must be non-negative");
  return errors;
}

Config ParseConfig(const std::string& json_text) {
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const Json::parse_error& e) {
    throw ConfigError({std::string("<root>: ") + e.what()});
  }
  if (!j.is_object()) throw ConfigError({"<root>: must be an object"});

  Config c;
  std::vector<std::string> errors;
  const Json empty = Json::object();
  auto section = [&](const char* name) -> const Json& {
    return j.contains(name) ? j.at(name) : empty;
  };

  Read(section("storage"), "path", "storage.", c.storage_path, errors);

  const Json& server = section("server");
  Read(server, "host", "server.", c.server.host, errors);
  Read(server, "port", "server.", c.server.port, errors);
  Read(server, "admin_token", "server.", c.server.admin_token, errors);
  Read(server, "threads", "server.", c.server.threads, errors);

  const Json& ingestion = section("ingestion");
  Read(ingestion, "min_quality", "ingestion.", c.ingestion.min_quality, errors);
  Read(ingestion, "min_stance", "ingestion.", c.ingestion.min_stance, errors);
  Read(ingestion, "topics", "ingestion.", c.ingestion.topics, errors);
  Read(ingestion, "column_mapping", "ingestion.", c.column_mapping, errors);

  Read(section("extraction"), "rules_file", "extraction.", c.rules_file, errors);

  const Json& qual = section("qualification");
  Read(qual, "min_acceptance_rate", "qualification.", c.workflow.qualification.min_acceptance_rate,
       errors);
  Read(qual, "min_approved_tasks", "qualification.", c.workflow.qualification.min_approved_tasks,
       errors);
  Read(qual, "min_quiz_score", "qualification.", c.workflow.qualification.min_quiz_score, errors);

  const Json& agg = section("aggregation");
  AggregationConfig& a = c.workflow.aggregation;
  Read(agg, "k_feasibility", "aggregation.", a.k_feasibility, errors);
  Read(agg, "k_validity", "aggregation.", a.k_validity, errors);
  Read(agg, "k_score", "aggregation.", a.k_score, errors);
  Read(agg, "max_votes", "aggregation.", a.max_votes, errors);
  std::string rule = "bipartition";
  Read(agg, "score_rule", "aggregation.", rule, errors);
  if (rule == "bipartition") {
    a.score_rule = ScoreRule::kBipartition;
  } else if (rule == "mode") {
    a.score_rule = ScoreRule::kMode;
  } else {
    errors.push_back("aggregation.score_rule: must be \"bipartition\" or \"mode\"");
  }

  Read(section("workflow"), "task_capacity", "workflow.", c.workflow.task_capacity, errors);

  const Json& pay = section("payments");
  auto money = [&](const char* key, int64_t& out) {
    if (!pay.is_object() || !pay.contains(key)) return;
    try {
      out = MoneyFromJson(pay.at(key));
    } catch (const std::exception&) {
      errors.push_back(std::string("payments.") + key + ": must be a non-negative amount");
    }
  };
  money("phase1_base", c.workflow.payments.phase1_base_cents);
  money("phase1_bonus", c.workflow.payments.phase1_bonus_cents);
  money("phase2_base", c.workflow.payments.phase2_base_cents);

  for (std::string& e : ValidateConfig(c)) errors.push_back(std::move(e));
  if (!errors.empty()) throw ConfigError(std::move(errors));
  return c;
}

Config LoadConfigFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"<file>: cannot open " + path});
  std::stringstream ss;
  ss << in.rdbuf();
  return ParseConfig(ss.str());
}

void ApplyEnvironment(Config& config) {
  if (const char* path = std::getenv(kStorePathEnv); path != nullptr && *path != '\0') {
    config.storage_path = path;
  }
}

}  // namespace reasonlink

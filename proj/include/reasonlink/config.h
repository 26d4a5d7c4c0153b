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

#ifndef REASONLINK_CONFIG_H_
#define REASONLINK_CONFIG_H_

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "reasonlink/annotation_workflow.h"
#include "reasonlink/corpus_ingestion.h"

namespace reasonlink {

// Environment variable that overrides storage.path.
inline constexpr char kStorePathEnv[] = "REASONLINK_STORE";

struct ServerConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string admin_token;  // empty disables admin auth
  int threads = 8;
};

struct Config {
  std::string storage_path = "reasonlink.db";
  ServerConfig server;
  FilterPolicy ingestion;  // topics may be empty until ingest time
  ColumnMapping column_mapping;
  std::string rules_file;  // empty uses the built-in extraction rules
  WorkflowConfig workflow;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> errors);
  const std::vector<std::string>& errors() const { return errors_; }

 private:
  std::vector<std::string> errors_;
};

// Field-path errors ("ingestion.min_quality: must be within [0,1]"), empty
// when the config is usable.
std::vector<std::string> ValidateConfig(const Config& config);

// Parses JSON text; missing fields keep their defaults. Throws ConfigError
// listing every problem found.
Config ParseConfig(const std::string& json_text);
Config LoadConfigFile(const std::string& path);

// Applies REASONLINK_STORE if set.
void ApplyEnvironment(Config& config);

// Decimal currency text to integer cents: "0.50" -> 50.
int64_t ParseMoneyCents(const std::string& text);

}  // namespace reasonlink

#endif  // REASONLINK_CONFIG_H_

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

#ifndef REASONLINK_ANALYTICS_H_
#define REASONLINK_ANALYTICS_H_

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "reasonlink/chain_model.h"
#include "reasonlink/corpus_ingestion.h"

namespace reasonlink {

// Items x raters grid of numeric labels with missing cells.
class RatingMatrix {
 public:
  RatingMatrix(int items, int raters);
  static RatingMatrix FromRows(const std::vector<std::vector<std::optional<double>>>& rows);

  int items() const { return items_; }
  int raters() const { return raters_; }
  void Set(int item, int rater, double value);
  void Clear(int item, int rater);
  std::optional<double> Get(int item, int rater) const;

 private:
  int items_;
  int raters_;
  std::vector<std::optional<double>> cells_;
};

enum class Metric { kNominal, kInterval };
enum class Execution { kSerial, kParallel };

enum class AlphaStatus {
  kOk,
  kUndefined,         // expected disagreement is zero
  kInsufficientData,  // fewer than two pairable values
};

struct AlphaResult {
  AlphaStatus status = AlphaStatus::kInsufficientData;
  double alpha = 0.0;
  double observed_disagreement = 0.0;
  double expected_disagreement = 0.0;
  int pairable_units = 0;
  int pairable_values = 0;

  std::optional<double> value() const {
    return status == AlphaStatus::kOk ? std::optional<double>(alpha) : std::nullopt;
  }
};

// Krippendorff's alpha via the coincidence matrix, 1 - Do/De, with
// delta = [a != b] (nominal) or (a - b)^2 (interval).
AlphaResult KrippendorffAlpha(const RatingMatrix& data, Metric metric,
                              Execution exec = Execution::kParallel);

struct ReliabilityReport {
  std::optional<double> alpha_nominal;
  std::optional<double> alpha_interval;
  int n_items = 0;
  int n_raters = 0;
  int n_pairable = 0;
};

ReliabilityReport ComputeReliability(const RatingMatrix& data);

struct KeptChain {
  std::string argument_id;
  ReasoningChain chain;
};

struct DatasetStatistics {
  int n_chains = 0;
  int n_unique_chains = 0;
  int n_premises = 0;
  int n_covered_premises = 0;
  double pct_premise_with_chain = 0.0;  // 0..100, over all premises
  double avg_chains_per_covered_premise = 0.0;
  int n_premise_zero = 0;
  int n_premise_one = 0;
  int n_premise_multi = 0;
  double avg_outcome_len = 0.0;
  double avg_premise_len = 0.0;  // over covered premises
  double avg_implicit_len = 0.0;
};

// Throws std::invalid_argument if a chain names an argument not in the set.
DatasetStatistics ComputeDatasetStatistics(std::span<const KeptChain> chains,
                                           std::span<const Argument> arguments);

// Number of claim-premise pairs per chain count. Keys 0..5 are always
// present; larger counts get their own key.
std::map<int, int> CoverageHistogram(std::span<const KeptChain> chains,
                                     std::span<const Argument> arguments);

}  // namespace reasonlink

#endif  // REASONLINK_ANALYTICS_H_

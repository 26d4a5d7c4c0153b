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

#include "reasonlink/analytics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "reasonlink/kernels.h"
#include "reasonlink/text.h"

namespace reasonlink {

RatingMatrix::RatingMatrix(int items, int raters)
    : items_(items), raters_(raters), cells_(static_cast<size_t>(items) * raters) {
  if (items < 0 || raters < 0) throw std::invalid_argument("negative matrix dimension");
}

RatingMatrix RatingMatrix::FromRows(const std::vector<std::vector<std::optional<double>>>& rows) {
  size_t raters = 0;
  for (const auto& row : rows) raters = std::max(raters, row.size());
  RatingMatrix m(static_cast<int>(rows.size()), static_cast<int>(raters));
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t r = 0; r < rows[i].size(); ++r) {
      if (rows[i][r]) m.Set(static_cast<int>(i), static_cast<int>(r), *rows[i][r]);
    }
  }
  return m;
}

void RatingMatrix::Set(int item, int rater, double value) {
  cells_.at(static_cast<size_t>(item) * raters_ + rater) = value;
}

void RatingMatrix::Clear(int item, int rater) {
  cells_.at(static_cast<size_t>(item) * raters_ + rater).reset();
}

std::optional<double> RatingMatrix::Get(int item, int rater) const {
  return cells_.at(static_cast<size_t>(item) * raters_ + rater);
}

AlphaResult KrippendorffAlpha(const RatingMatrix& data, Metric metric, Execution exec) {
  std::vector<double> values;
  for (int i = 0; i < data.items(); ++i) {
    for (int r = 0; r < data.raters(); ++r) {
      if (auto v = data.Get(i, r)) values.push_back(*v);
    }
  }
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::vector<int> codes(static_cast<size_t>(data.items()) * data.raters(), -1);
  for (int i = 0; i < data.items(); ++i) {
    for (int r = 0; r < data.raters(); ++r) {
      if (auto v = data.Get(i, r)) {
        codes[static_cast<size_t>(i) * data.raters() + r] = static_cast<int>(
            std::lower_bound(values.begin(), values.end(), *v) - values.begin());
      }
    }
  }

  const int nv = static_cast<int>(values.size());
  const kernels::CoincidenceMatrix o =
      exec == Execution::kParallel
          ? kernels::AccumulateCoincidencesParallel(codes, data.items(), data.raters(), nv)
          : kernels::AccumulateCoincidencesSerial(codes, data.items(), data.raters(), nv);

  std::vector<double> marginals(static_cast<size_t>(nv), 0.0);
  for (int c = 0; c < nv; ++c) {
    for (int k = 0; k < nv; ++k) marginals[c] += o.at(c, k);
  }
  double n = 0.0;
  for (double m : marginals) n += m;

  AlphaResult result;
  result.pairable_units = o.pairable_units;
  result.pairable_values = static_cast<int>(std::lround(n));
  if (result.pairable_values < 2) {
    result.status = AlphaStatus::kInsufficientData;
    return result;
  }

  auto delta = [&](int c, int k) {
    if (metric == Metric::kNominal) return c == k ? 0.0 : 1.0;
    const double d = values[c] - values[k];
    return d * d;
  };
  double observed = 0.0, expected = 0.0;
  for (int c = 0; c < nv; ++c) {
    for (int k = 0; k < nv; ++k) {
      const double d = delta(c, k);
      if (d == 0.0) continue;
      observed += o.at(c, k) * d;
      expected += marginals[c] * marginals[k] * d;
    }
  }
  result.observed_disagreement = observed / n;
  result.expected_disagreement = expected / (n * (n - 1.0));
  if (result.expected_disagreement == 0.0) {
    result.status = AlphaStatus::kUndefined;
    return result;
  }
  result.status = AlphaStatus::kOk;
  result.alpha = 1.0 - result.observed_disagreement / result.expected_disagreement;
  return result;
}

ReliabilityReport ComputeReliability(const RatingMatrix& data) {
  const AlphaResult nominal = KrippendorffAlpha(data, Metric::kNominal);
  const AlphaResult interval = KrippendorffAlpha(data, Metric::kInterval);
  ReliabilityReport report;
  report.alpha_nominal = nominal.value();
  report.alpha_interval = interval.value();
  report.n_items = data.items();
  report.n_raters = data.raters();
  report.n_pairable = nominal.pairable_values;
  return report;
}

namespace {

std::unordered_map<std::string, int> ChainsPerArgument(std::span<const KeptChain> chains,
                                                       std::span<const Argument> arguments) {
  std::unordered_map<std::string, int> counts;
  for (const Argument& a : arguments) counts.emplace(a.id, 0);
  for (const KeptChain& c : chains) {
    auto it = counts.find(c.argument_id);
    if (it == counts.end()) {
      throw std::invalid_argument("chain refers to unknown argument '" + c.argument_id + "'");
    }
    ++it->second;
  }
  return counts;
}

}  // namespace

DatasetStatistics ComputeDatasetStatistics(std::span<const KeptChain> chains,
                                           std::span<const Argument> arguments) {
  const auto per_argument = ChainsPerArgument(chains, arguments);
  DatasetStatistics s;
  s.n_chains = static_cast<int>(chains.size());
  s.n_premises = static_cast<int>(per_argument.size());

  std::unordered_set<std::string> unique;
  long outcome_words = 0, implicit_words = 0;
  for (const KeptChain& c : chains) {
    unique.insert(DedupKey(c.chain));
    outcome_words += WordCount(c.chain.outcome.text);
    implicit_words += WordCount(c.chain.implicit.text);
  }
  s.n_unique_chains = static_cast<int>(unique.size());

  long premise_words = 0;
  for (const Argument& a : arguments) {
    const int k = per_argument.at(a.id);
    if (k == 0) {
      ++s.n_premise_zero;
    } else {
      ++(k == 1 ? s.n_premise_one : s.n_premise_multi);
      premise_words += WordCount(a.premise);
    }
  }
  s.n_covered_premises = s.n_premise_one + s.n_premise_multi;
  if (s.n_premises > 0) {
    s.pct_premise_with_chain = 100.0 * s.n_covered_premises / s.n_premises;
  }
  if (s.n_covered_premises > 0) {
    s.avg_chains_per_covered_premise = static_cast<double>(s.n_chains) / s.n_covered_premises;
    s.avg_premise_len = static_cast<double>(premise_words) / s.n_covered_premises;
  }
  if (s.n_chains > 0) {
    s.avg_outcome_len = static_cast<double>(outcome_words) / s.n_chains;
    s.avg_implicit_len = static_cast<double>(implicit_words) / s.n_chains;
  }
  return s;
}

std::map<int, int> CoverageHistogram(std::span<const KeptChain> chains,
                                     std::span<const Argument> arguments) {
  std::map<int, int> hist;
  for (int k = 0; k <= 5; ++k) hist[k] = 0;
  for (const auto& [_, k] : ChainsPerArgument(chains, arguments)) ++hist[k];
  return hist;
}

}  // namespace reasonlink

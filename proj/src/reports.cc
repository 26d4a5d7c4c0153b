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

#include "reasonlink/reports.h"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "reasonlink/csv.h"

namespace reasonlink {

const std::vector<std::string>& ExportColumns() {
  static const auto* const columns = new std::vector<std::string>{
      "argument_id", "chain_id", "action",   "rel_ai",       "implicit",
      "rel_io",      "outcome",  "author",   "phase1_task_id", "net_relation",
      "validity",    "score",    "bucket"};
  return *columns;
}

std::string ExportDataset(const FunnelReport& funnel, ExportBucket bucket) {
  std::vector<const FunnelChain*> rows;
  for (const FunnelChain& c : funnel.chain_verdicts) {
    if (bucket == ExportBucket::kAll || c.bucket == FunnelBucket::kKeep) rows.push_back(&c);
  }
  std::sort(rows.begin(), rows.end(), [](const FunnelChain* a, const FunnelChain* b) {
    return std::tie(a->argument_id, a->chain_id) < std::tie(b->argument_id, b->chain_id);
  });
  std::string out = CsvJoin(ExportColumns()) + "\n";
  for (const FunnelChain* c : rows) {
    const ChainRecord r = ToRecord(c->chain, c->argument_id, c->phase1_task_id);
    out += CsvJoin({r.argument_id, c->chain_id, r.action, std::string(ToString(r.rel_ai)),
                    r.implicit, std::string(ToString(r.rel_io)), r.outcome, r.author,
                    r.phase1_task_id, std::string(ToString(NetRelation(c->chain))),
                    std::string(ToString(c->validity.decision)),
                    c->score ? std::string(ToString(c->score->decision)) : std::string(),
                    std::string(ToString(c->bucket))});
    out += "\n";
  }
  return out;
}

std::vector<Argument> AnnotatedArguments(const WorkflowState& state) {
  std::set<std::string> annotated;
  for (const AnnotationTask& t : state.tasks) {
    if (t.phase == Phase::kPhase1) annotated.insert(t.argument_id);
  }
  std::vector<Argument> out;
  for (const Argument& a : state.arguments) {
    if (annotated.contains(a.id)) out.push_back(a);
  }
  std::sort(out.begin(), out.end(), [](const Argument& a, const Argument& b) { return a.id < b.id; });
  return out;
}

std::vector<KeptChain> Phase1Chains(const FunnelReport& funnel) {
  std::vector<KeptChain> out;
  for (const FunnelChain& c : funnel.chain_verdicts) out.push_back({c.argument_id, c.chain});
  return out;
}

std::vector<KeptChain> KeptChains(const FunnelReport& funnel) {
  std::vector<KeptChain> out;
  for (const FunnelChain& c : funnel.chain_verdicts) {
    if (c.bucket == FunnelBucket::kKeep) out.push_back({c.argument_id, c.chain});
  }
  return out;
}

Json StatsReport(const WorkflowState& state, const FunnelReport& funnel) {
  const std::vector<Argument> args = AnnotatedArguments(state);
  const auto p1 = Phase1Chains(funnel);
  const auto p2 = KeptChains(funnel);
  return Json{{"funnel", FunnelSummary(funnel)},
              {"phase1", ComputeDatasetStatistics(p1, args)},
              {"phase2", ComputeDatasetStatistics(p2, args)}};
}

std::string CoverageTable(const std::map<int, int>& histogram) {
  std::string out = "k,count\n";
  for (const auto& [k, n] : histogram) out += std::to_string(k) + "," + std::to_string(n) + "\n";
  return out;
}

Json CoverageReport(const WorkflowState& state, const FunnelReport& funnel) {
  const std::vector<Argument> args = AnnotatedArguments(state);
  const auto h1 = CoverageHistogram(Phase1Chains(funnel), args);
  const auto h2 = CoverageHistogram(KeptChains(funnel), args);
  auto as_json = [](const std::map<int, int>& h) {
    Json j = Json::object();
    for (const auto& [k, n] : h) j[std::to_string(k)] = n;
    return j;
  };
  return Json{{"phase1", as_json(h1)},
              {"phase2", as_json(h2)},
              {"phase1_table", CoverageTable(h1)},
              {"phase2_table", CoverageTable(h2)}};
}

Json AgreementReport(const WorkflowState& state) {
  std::map<std::string, int> chain_row, worker_col;
  for (const Phase2Response& r : state.phase2) {
    chain_row.emplace(r.chain_id, 0);
    worker_col.emplace(r.worker, 0);
  }
  int i = 0;
  for (auto& [_, row] : chain_row) row = i++;
  i = 0;
  for (auto& [_, col] : worker_col) col = i++;

  RatingMatrix validity(static_cast<int>(chain_row.size()), static_cast<int>(worker_col.size()));
  RatingMatrix scores(static_cast<int>(chain_row.size()), static_cast<int>(worker_col.size()));
  for (const Phase2Response& r : state.phase2) {
    const int row = chain_row.at(r.chain_id), col = worker_col.at(r.worker);
    if (r.outcome_valid) validity.Set(row, col, *r.outcome_valid ? 1.0 : 0.0);
    if (r.score) scores.Set(row, col, *r.score);
  }
  const AlphaResult v = KrippendorffAlpha(validity, Metric::kNominal);
  const AlphaResult s = KrippendorffAlpha(scores, Metric::kInterval);
  ReliabilityReport validity_report = ComputeReliability(validity);
  ReliabilityReport score_report = ComputeReliability(scores);
  auto status = [](const AlphaResult& a) {
    switch (a.status) {
      case AlphaStatus::kOk:
        return "ok";
      case AlphaStatus::kUndefined:
        return "undefined";
      case AlphaStatus::kInsufficientData:
        return "insufficient_data";
    }
    return "unknown";
  };
  Json vj = validity_report;
  vj["status"] = status(v);
  Json sj = score_report;
  sj["status"] = status(s);
  return Json{{"outcome_validity", vj}, {"scores", sj}};
}

RatingMatrix ReadRatingsCsv(std::istream& in) {
  CsvReader reader(in);
  const auto header = reader.Next();
  if (!header || header->size() < 3) throw std::runtime_error("ratings CSV needs item,rater,value");
  struct Cell {
    std::string item, rater;
    double value;
  };
  std::vector<Cell> cells;
  std::map<std::string, int> items, raters;
  while (auto row = reader.Next()) {
    if (row->size() == 1 && (*row)[0].empty()) continue;
    if (row->size() < 3) {
      throw std::runtime_error("ratings line " + std::to_string(reader.record_line()) +
                               ": expected 3 fields");
    }
    if ((*row)[2].empty()) continue;  // missing
    Cell c{(*row)[0], (*row)[1], 0.0};
    try {
      size_t used = 0;
      c.value = std::stod((*row)[2], &used);
      if (used != (*row)[2].size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw std::runtime_error("ratings line " + std::to_string(reader.record_line()) +
                               ": value is not a number");
    }
    items.emplace(c.item, 0);
    raters.emplace(c.rater, 0);
    cells.push_back(std::move(c));
  }
  int i = 0;
  for (auto& [_, idx] : items) idx = i++;
  i = 0;
  for (auto& [_, idx] : raters) idx = i++;
  RatingMatrix m(static_cast<int>(items.size()), static_cast<int>(raters.size()));
  for (const Cell& c : cells) m.Set(items.at(c.item), raters.at(c.rater), c.value);
  return m;
}

}  // namespace reasonlink

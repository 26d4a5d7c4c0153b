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

// Operator command line for the annotation platform.
//
//   reasonlink ingest --input corpus.csv --topics topics.txt [--register]
//   reasonlink serve --config reasonlink.json
//   reasonlink apply --script responses.jsonl
//   reasonlink snapshot
//   reasonlink aggregate --phase 1|2
//   reasonlink aggregate --snapshot ID
//   reasonlink report --snapshot ID --stats|--coverage|--agreement
//   reasonlink report --ratings ratings.csv --metric nominal|interval
//   reasonlink export --snapshot ID --bucket kept|all --output out.csv
//
// The store path comes from the config file, then REASONLINK_STORE, then
// --store.

#include <csignal>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "reasonlink/config.h"
#include "reasonlink/corpus_ingestion.h"
#include "reasonlink/http_api.h"
#include "reasonlink/platform.h"

namespace rl = reasonlink;

namespace {

struct Common {
  std::string config_path;
  std::string store;
};

rl::Config LoadConfig(const Common& common) {
  rl::Config config = common.config_path.empty() ? rl::Config{} : rl::LoadConfigFile(common.config_path);
  rl::ApplyEnvironment(config);
  if (!common.store.empty()) config.storage_path = common.store;
  return config;
}

int Fail(const rl::Status& s) {
  std::cerr << rl::Json(s).dump() << "\n";
  return 2;
}

std::ifstream OpenOrDie(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

rl::HttpServer* g_server = nullptr;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Crowdsourced implicit-reasoning annotation platform."};
  app.require_subcommand(1);
  Common common;
  app.add_option("--config", common.config_path, "JSON config file");
  app.add_option("--store", common.store, "SQLite store path");

  auto* ingest = app.add_subcommand("ingest", "Filter a corpus CSV");
  std::string input, topics_file;
  std::optional<double> min_quality, min_stance;
  bool register_args = false;
  ingest->add_option("--input", input, "corpus CSV")->required();
  ingest->add_option("--topics", topics_file, "one topic per line");
  ingest->add_option("--min-quality", min_quality);
  ingest->add_option("--min-stance", min_stance);
  ingest->add_flag("--register", register_args, "register admitted arguments in the store");

  auto* serve = app.add_subcommand("serve", "Run the HTTP service");

  auto* apply = app.add_subcommand("apply", "Execute JSONL request records");
  std::string script;
  apply->add_option("--script", script)->required();

  auto* snapshot = app.add_subcommand("snapshot", "Freeze the current state");

  auto* aggregate = app.add_subcommand("aggregate", "Aggregate live tasks or run the funnel");
  int phase = 0;
  std::string snapshot_id;
  aggregate->add_option("--phase", phase)->check(CLI::IsMember({1, 2}));
  aggregate->add_option("--snapshot", snapshot_id);

  auto* report = app.add_subcommand("report", "Print a report");
  bool stats = false, coverage = false, agreement = false;
  std::string ratings, metric = "nominal";
  report->add_option("--snapshot", snapshot_id);
  report->add_flag("--stats", stats);
  report->add_flag("--coverage", coverage);
  report->add_flag("--agreement", agreement);
  report->add_option("--ratings", ratings, "CSV of item,rater,value");
  report->add_option("--metric", metric)->check(CLI::IsMember({"nominal", "interval"}));

  auto* exporter = app.add_subcommand("export", "Write the chain dataset");
  std::string bucket = "kept", output;
  exporter->add_option("--snapshot", snapshot_id)->required();
  exporter->add_option("--bucket", bucket)->check(CLI::IsMember({"kept", "all"}));
  exporter->add_option("--output", output, "defaults to stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) {
      rl::Config config = LoadConfig(common);
      rl::FilterPolicy policy = config.ingestion;
      if (min_quality) policy.min_quality = *min_quality;
      if (min_stance) policy.min_stance = *min_stance;
      if (!topics_file.empty()) {
        auto in = OpenOrDie(topics_file);
        policy.topics = rl::LoadTopics(in);
      }
      auto in = OpenOrDie(input);
      const rl::IngestResult result = rl::Ingest(in, policy, config.column_mapping);
      rl::Json topics = rl::Json::object();
      for (const rl::TopicCount& t : rl::TopicSummary(result.admitted)) topics[t.topic] = t.premise_count;
      rl::Json out{{"admitted", result.admitted.size()},
                   {"per_topic", topics},
                   {"rejected", result.RejectionCounts()}};
      if (register_args) {
        auto platform = rl::Platform::Open(config);
        int registered = 0;
        for (const rl::Argument& a : result.admitted) registered += platform->RegisterArgument(a).ok();
        out["registered"] = registered;
      }
      std::cout << out.dump(2) << "\n";
      return 0;
    }
    if (*serve) {
      rl::Config config = LoadConfig(common);
      auto platform = rl::Platform::Open(config);
      rl::HttpServer server(*platform);
      g_server = &server;
      std::signal(SIGINT, [](int) { g_server->Stop(); });
      std::signal(SIGTERM, [](int) { g_server->Stop(); });
      std::cerr << "listening on " << config.server.host << ":" << config.server.port << "\n";
      return server.Listen(config.server.host, config.server.port) ? 0 : 1;
    }

    auto platform = rl::Platform::Open(LoadConfig(common));
    if (*apply) {
      auto in = OpenOrDie(script);
      const rl::ScriptResult r = platform->ApplyScript(in);
      for (const std::string& m : r.mismatches) std::cerr << m << "\n";
      std::cout << rl::Json{{"applied", r.applied}, {"mismatches", r.mismatches.size()}}.dump() << "\n";
      return r.mismatches.empty() ? 0 : 1;
    }
    if (*snapshot) {
      std::cout << platform->CreateSnapshot() << "\n";
      return 0;
    }
    if (*aggregate) {
      if (!snapshot_id.empty()) {
        auto funnel = platform->RunFunnel(snapshot_id);
        if (!funnel.ok()) return Fail(funnel.status);
        std::cout << rl::FunnelSummary(*funnel).dump(2) << "\n";
        return 0;
      }
      if (phase == 0) throw CLI::ValidationError("aggregate", "give --phase or --snapshot");
      const rl::BatchResult r =
          phase == 1 ? platform->AggregatePhase1Batch() : platform->AggregatePhase2Batch();
      std::cout << rl::Json{{"aggregated", r.aggregated},
                            {"closed", r.closed},
                            {"pending", r.pending},
                            {"phase2_tasks_opened", r.opened.size()}}
                       .dump(2)
                << "\n";
      return 0;
    }
    if (*report) {
      if (!ratings.empty()) {
        auto in = OpenOrDie(ratings);
        const rl::RatingMatrix m = rl::ReadRatingsCsv(in);
        const rl::AlphaResult a = rl::KrippendorffAlpha(
            m, metric == "nominal" ? rl::Metric::kNominal : rl::Metric::kInterval);
        rl::Json out{{"metric", metric}, {"pairable_values", a.pairable_values}};
        if (a.status == rl::AlphaStatus::kOk) {
          out["alpha"] = a.alpha;
        } else {
          out["alpha"] = nullptr;
          out["status"] = a.status == rl::AlphaStatus::kUndefined ? "undefined" : "insufficient_data";
        }
        std::cout << out.dump(2) << "\n";
        return 0;
      }
      if (snapshot_id.empty() || stats + coverage + agreement != 1) {
        throw CLI::ValidationError("report", "give --snapshot and one of --stats/--coverage/--agreement");
      }
      const rl::ReportKind kind = stats      ? rl::ReportKind::kStats
                                  : coverage ? rl::ReportKind::kCoverage
                                             : rl::ReportKind::kAgreement;
      auto r = platform->Report(snapshot_id, kind);
      if (!r.ok()) return Fail(r.status);
      std::cout << r->dump(2) << "\n";
      return 0;
    }
    if (*exporter) {
      auto csv = platform->Export(snapshot_id, bucket == "kept" ? rl::ExportBucket::kKeptOnly
                                                                : rl::ExportBucket::kAll);
      if (!csv.ok()) return Fail(csv.status);
      if (output.empty()) {
        std::cout << *csv;
      } else {
        std::ofstream(output, std::ios::binary) << *csv;
      }
      return 0;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const rl::ConfigError& e) {
    for (const std::string& err : e.errors()) std::cerr << "config: " << err << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

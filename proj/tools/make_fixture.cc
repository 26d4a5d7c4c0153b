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

// Writes the funnel fixture: a corpus CSV, a topic list and three JSONL
// request scripts (Phase 1, Phase 2 validity, Phase 2 scores). The vote
// patterns are chosen so the expected tallies are known by construction.
//
//   make_fixture --out tests/fixtures

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace {

using Json = nlohmann::json;

struct Topic {
  const char* name;
  const char* subject;  // what premises talk about
  int admitted;
  int annotated;
};

constexpr std::array<Topic, 6> kTopics = {{
    {"Abandon the use of school uniform", "School uniforms", 145, 42},
    {"Abolish capital punishment", "The death penalty", 176, 42},
    {"Abolish zoos", "Zoos", 141, 42},
    {"Ban whaling", "Whaling", 164, 42},
    {"Introduce compulsory voting", "Compulsory voting", 116, 41},
    {"Legalize cannabis", "Cannabis prohibition", 210, 41},
}};

constexpr int kPhase1Workers = 37;
constexpr int kPhase2Workers = 163;

std::mt19937 rng(20220707);

int Below(int n) { return static_cast<int>(rng() % static_cast<uint32_t>(n)); }

template <typename T>
void Shuffle(std::vector<T>& v) {
  for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[Below(static_cast<int>(i))]);
}

std::string Fixed(double x) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%.2f", x);
  return buf;
}

std::string Claim(const std::string& topic) {
  std::string c = topic;
  c[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(c[0])));
  return "We should " + c;
}

std::string Phase1Worker(int i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "w1-%03d", i);
  return buf;
}
std::string Phase2Worker(int i) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "w2-%03d", i);
  return buf;
}

Json Worker(const std::string& id, std::vector<int> phases, double acceptance = 0.99) {
  return Json{{"op", "register_worker"},
              {"worker",
               {{"id", id},
                {"acceptance_rate", acceptance},
                {"approved_tasks", 6000},
                {"quiz_score", 0.8},
                {"phases", phases}}}};
}

struct Arg {
  std::string id;
  std::string topic;
  std::string subject;
  int serial = 0;
};

// Phase 1 plan for one annotated argument.
struct Plan {
  int can_write = 0;
  int kept = 0;        // chains that end in Keep
  int cannot = 0;
  int unsure = 0;
};

enum class Fate { kKeep, kInvalid, kDiscard, kDoubtful };

void WriteLines(const std::filesystem::path& path, const std::vector<Json>& lines) {
  std::ofstream out(path);
  for (const Json& j : lines) out << j.dump() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Writes the funnel fixture."};
  std::string out_dir = "tests/fixtures";
  app.add_option("--out", out_dir, "output directory");
  CLI11_PARSE(app, argc, argv);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);

  // Corpus.
  std::vector<Arg> annotated;
  {
    std::ofstream csv(dir / "corpus.csv");
    std::ofstream topics(dir / "topics.txt");
    csv << "id,topic,claim,premise,stance_label,stance_conf,quality\n";
    int serial = 0;
    auto row = [&](const std::string& id, const std::string& topic, const std::string& premise,
                   const std::string& stance, const std::string& conf, const std::string& quality) {
      csv << id << ',' << topic << ',' << Claim(topic) << ",\"" << premise << "\"," << stance << ','
          << conf << ',' << quality << '\n';
    };
    for (size_t t = 0; t < kTopics.size(); ++t) {
      const Topic& topic = kTopics[t];
      topics << topic.name << '\n';
      for (int n = 0; n < topic.admitted; ++n) {
        ++serial;
        char id[16];
        std::snprintf(id, sizeof(id), "t%zu-%04d", t + 1, n + 1);
        // A few rows sit exactly on the thresholds.
        const std::string quality = n == 7 ? "0.50" : Fixed(0.5 + 0.01 * Below(50));
        const std::string conf = n == 11 ? "0.60" : Fixed(0.6 + 0.01 * Below(40));
        const std::string premise = std::string(topic.subject) + " shape outcome " +
                                    std::to_string(serial) + ", which matters to group " +
                                    std::to_string(serial % 17 + 1) + ".";
        row(id, topic.name, premise, "support", conf, quality);
        if (n < topic.annotated) annotated.push_back({id, topic.name, topic.subject, serial});
      }
      // Rows the filter must reject.
      const std::string base = "t" + std::to_string(t + 1) + "-x";
      row(base + "1", topic.name, "An opposing view.", "against", "0.90", "0.90");
      row(base + "2", topic.name, "Low quality text.", "support", "0.90", "0.49");
      row(base + "3", topic.name, "Weak stance text.", "support", "0.59", "0.90");
      row(base + "4", topic.name, "Malformed numbers.", "support", "high", "0.90");
    }
    row("t1-0001", kTopics[0].name, "Repeated identifier.", "support", "0.90", "0.90");
    row("off-1", "Ban fast food", "A topic outside the selection.", "support", "0.90", "0.90");
  }

  // Phase 1 plans: 225 feasible, 15 infeasible, 10 undecided.
  std::vector<Plan> plans;
  auto add = [&](int count, Plan p) { plans.insert(plans.end(), count, p); };
  add(24, {5, 4, 0, 0});
  add(33, {5, 3, 0, 0});
  add(27, {4, 3, 1, 0});
  add(26, {4, 2, 1, 0});
  add(26, {4, 2, 0, 1});
  add(32, {4, 1, 1, 0});
  add(31, {4, 1, 0, 1});
  add(1, {4, 0, 0, 1});
  add(25, {3, 0, 1, 1});
  add(15, {1, 0, 3, 1});
  add(10, {2, 0, 2, 1});
  Shuffle(plans);
  if (plans.size() != annotated.size()) return 1;

  // Fates for the 489 feasible-argument chains that are not kept.
  std::vector<Fate> fates;
  fates.insert(fates.end(), 103, Fate::kInvalid);
  fates.insert(fates.end(), 294, Fate::kDiscard);
  fates.insert(fates.end(), 92, Fate::kDoubtful);
  Shuffle(fates);

  // Duplicates: 45 arguments repeat a kept chain among kept chains, 56 repeat
  // a chain with a chain that is not kept.
  std::vector<int> kept_dup_candidates, other_dup_candidates;
  for (size_t a = 0; a < plans.size(); ++a) {
    const Plan& p = plans[a];
    if (p.can_write < 3) continue;
    if (p.kept >= 2) kept_dup_candidates.push_back(static_cast<int>(a));
  }
  Shuffle(kept_dup_candidates);
  kept_dup_candidates.resize(45);
  std::vector<bool> dup_kept(plans.size()), dup_other(plans.size());
  for (int a : kept_dup_candidates) dup_kept[a] = true;
  for (size_t a = 0; a < plans.size(); ++a) {
    if (plans[a].can_write >= 3 && !dup_kept[a] && plans[a].can_write > plans[a].kept) {
      other_dup_candidates.push_back(static_cast<int>(a));
    }
  }
  Shuffle(other_dup_candidates);
  other_dup_candidates.resize(56);
  for (int a : other_dup_candidates) dup_other[a] = true;

  std::vector<Json> phase1, validity, scores;
  for (int w = 0; w < kPhase1Workers; ++w) phase1.push_back(Worker(Phase1Worker(w), {1}));
  // Fails the acceptance-rate gate; its submission is refused.
  phase1.push_back(Worker("w1-gate", {1}, 0.97));

  struct Chain {
    std::string task;
    Fate fate;
  };
  std::vector<Chain> chains;
  const char* relations[] = {"cause", "suppress"};
  size_t next_fate = 0;
  for (size_t a = 0; a < annotated.size(); ++a) {
    const Arg& arg = annotated[a];
    const Plan& p = plans[a];
    const std::string task = "p1-" + arg.id;
    phase1.push_back(Json{{"op", "open_phase1"}, {"argument_id", arg.id}});
    std::vector<std::string> votes;
    votes.insert(votes.end(), p.can_write, "can_write");
    votes.insert(votes.end(), p.cannot, "cannot_write");
    votes.insert(votes.end(), p.unsure, "unsure");
    Shuffle(votes);
    const std::string outcome = "Outcome " + std::to_string(arg.serial) + " for group " +
                                std::to_string(arg.serial % 17 + 1);
    const bool feasible = p.can_write >= 3;
    Json first_chain;
    int written = 0;
    for (size_t j = 0; j < votes.size(); ++j) {
      const std::string worker = Phase1Worker(static_cast<int>((5 * a + j) % kPhase1Workers));
      Json response{{"worker", worker}, {"feasibility", votes[j]}, {"outcome", outcome}};
      if (votes[j] == "can_write") {
        Json chain{{"rel_ai", relations[Below(2)]},
                   {"implicit", "Shift " + std::to_string(arg.serial) + "." +
                                    std::to_string(written) + " in " + arg.subject},
                   {"rel_io", relations[Below(2)]},
                   {"outcome", outcome}};
        // Chains [0, kept) are kept. A duplicate copies chain 0 with
        // different casing and a trailing period.
        const bool copy = written > 0 && ((dup_kept[a] && written == 1) ||
                                          (dup_other[a] && written == p.can_write - 1));
        if (copy) {
          chain = first_chain;
          std::string implicit = chain["implicit"];
          for (char& c : implicit) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
          chain["implicit"] = implicit + ".";
          chain["outcome"] = outcome + ".";
        }
        if (written == 0) first_chain = chain;
        response["chain"] = chain;
        response["sanity_confirmed"] = true;
        if (feasible) {
          const Fate fate = written < p.kept ? Fate::kKeep : fates.at(next_fate++);
          chains.push_back({task + "/" + worker, fate});
        }
        ++written;
      }
      phase1.push_back(Json{{"op", "submit_phase1"}, {"task_id", task}, {"response", response}});
      if (a == 3 && j == 0) {
        phase1.push_back(Json{{"op", "submit_phase1"},
                              {"task_id", task},
                              {"response", response},
                              {"expect", "DUPLICATE_SUBMISSION"}});
        Json gated = response;
        gated["worker"] = "w1-gate";
        phase1.push_back(Json{{"op", "submit_phase1"},
                              {"task_id", task},
                              {"response", gated},
                              {"expect", "NOT_QUALIFIED"}});
      }
    }
    if (a == 5) {
      // Sixth response to a full task.
      const std::string extra = Phase1Worker(static_cast<int>((5 * a + 5) % kPhase1Workers));
      phase1.push_back(Json{{"op", "submit_phase1"},
                            {"task_id", task},
                            {"response", {{"worker", extra}, {"feasibility", "unsure"}, {"outcome", outcome}}},
                            {"expect", "CAPACITY_EXHAUSTED"}});
    }
  }
  if (next_fate != fates.size()) {
    std::cerr << "fate allocation mismatch: " << next_fate << " of " << fates.size() << "\n";
    return 1;
  }

  for (int w = 0; w < kPhase2Workers; ++w) validity.push_back(Worker(Phase2Worker(w), {2}));
  // A Phase 1 author may not judge chains of an argument they annotated.
  const std::string author = chains.at(0).task.substr(chains[0].task.find('/') + 1);
  validity.push_back(Worker(author, {1, 2}));
  bool range_probe = false;
  for (size_t i = 0; i < chains.size(); ++i) {
    const Chain& c = chains[i];
    const std::string task = "p2-" + c.task;
    if (i == 0) {
      validity.push_back(Json{{"op", "submit_validity"},
                              {"task_id", task},
                              {"worker", author},
                              {"valid", true},
                              {"expect", "NOT_QUALIFIED"}});
    }
    const int yes = c.fate == Fate::kInvalid ? Below(3) : 3 + Below(3);
    std::vector<bool> vv(5, false);
    std::fill(vv.begin(), vv.begin() + yes, true);
    Shuffle(vv);
    std::vector<std::string> voters;
    for (int j = 0; j < 5; ++j) {
      const std::string worker = Phase2Worker(static_cast<int>((5 * i + j) % kPhase2Workers));
      voters.push_back(worker);
      validity.push_back(Json{{"op", "submit_validity"}, {"task_id", task}, {"worker", worker}, {"valid", static_cast<bool>(vv[j])}});
    }
    if (c.fate == Fate::kInvalid) continue;
    std::vector<int> s;
    if (c.fate == Fate::kDoubtful) {
      s = {4 + Below(2), 4 + Below(2), 1 + Below(3), 1 + Below(3)};
    } else {
      const int high = c.fate == Fate::kKeep ? 3 + Below(3) : Below(3);
      for (int j = 0; j < 5; ++j) s.push_back(j < high ? 4 + Below(2) : 1 + Below(3));
    }
    Shuffle(s);
    if (!range_probe) {
      range_probe = true;
      scores.push_back(Json{{"op", "submit_score"},
                            {"task_id", task},
                            {"worker", voters[0]},
                            {"score", 6},
                            {"expect", "SCORE_OUT_OF_RANGE"}});
    }
    for (size_t j = 0; j < s.size(); ++j) {
      scores.push_back(Json{{"op", "submit_score"}, {"task_id", task}, {"worker", voters[j]}, {"score", s[j]}});
    }
  }

  WriteLines(dir / "phase1.jsonl", phase1);
  WriteLines(dir / "phase2_validity.jsonl", validity);
  WriteLines(dir / "phase2_scores.jsonl", scores);
  std::cout << "arguments " << annotated.size() << ", chains " << chains.size() << "\n";
  return 0;
}

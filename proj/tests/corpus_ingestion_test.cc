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

#include "reasonlink/corpus_ingestion.h"

#include <fstream>
#include <random>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "reasonlink/csv.h"

namespace reasonlink {
namespace {

constexpr char kHeader[] = "id,topic,claim,premise,stance_label,stance_conf,quality\n";

FilterPolicy Policy() {
  FilterPolicy p;
  p.topics = {"Ban whaling"};
  return p;
}

std::string Row(const std::string& id, const std::string& conf, const std::string& quality,
                const std::string& stance = "support", const std::string& topic = "Ban whaling") {
  return id + "," + topic + ",We should ban whaling,Whales are endangered.," + stance + "," + conf +
         "," + quality + "\n";
}

IngestResult IngestText(const std::string& body, const FilterPolicy& policy = Policy()) {
  std::istringstream in(kHeader + body);
  return Ingest(in, policy);
}

TEST(IngestTest, ThresholdsAreInclusive) {
  const IngestResult r = IngestText(Row("q49", "0.90", "0.49") + Row("q50", "0.90", "0.50") +
                             Row("s59", "0.59", "0.90") + Row("s60", "0.60", "0.90") +
                             Row("both", "0.60", "0.50"));
  std::set<std::string> admitted;
  for (const Argument& a : r.admitted) admitted.insert(a.id);
  EXPECT_EQ(admitted, (std::set<std::string>{"q50", "s60", "both"}));
  ASSERT_EQ(r.rejected.size(), 2u);
  EXPECT_EQ(r.rejected[0].id, "q49");
  EXPECT_EQ(r.rejected[0].reason, RejectionReason::kQualityBelowMin);
  EXPECT_EQ(r.rejected[1].id, "s59");
  EXPECT_EQ(r.rejected[1].reason, RejectionReason::kStanceBelowMin);
}

TEST(IngestTest, RejectionReasons) {
  const IngestResult r =
      IngestText(Row("a", "0.9", "0.9", "against") + Row("b", "0.9", "0.9", "support", "Abolish zoos") +
          Row("c", "0.9", "abc") + Row("d", "0.9", "0.9") + Row("d", "0.9", "0.9") +
          "e,Ban whaling,only four,fields\n");
  EXPECT_EQ(r.admitted.size(), 1u);
  const std::map<std::string, int> want = {{"STANCE_NOT_SUPPORT", 1},
                                           {"TOPIC_NOT_SELECTED", 1},
                                           {"PARSE_ERROR", 2},
                                           {"DUPLICATE_ID", 1}};
  EXPECT_EQ(r.RejectionCounts(), want);
  EXPECT_EQ(r.rejected.back().line, 7);
}

TEST(IngestTest, QuotedFieldsAndColumnMapping) {
  std::istringstream in(
      "arg,topic,conclusion,premise,stance_label,stance_conf,quality\n"
      "x1,Ban whaling,We should ban whaling,\"Whales, a ban, \"\"now\"\".\",pro,0.7,0.7\n");
  const IngestResult r = Ingest(in, Policy(), {{"id", "arg"}, {"claim", "conclusion"}});
  ASSERT_EQ(r.admitted.size(), 1u);
  EXPECT_EQ(r.admitted[0].premise, "Whales, a ban, \"now\".");
}

TEST(IngestTest, MissingColumnAndBadPolicyThrow) {
  std::istringstream in("id,topic\n");
  EXPECT_THROW(Ingest(in, Policy()), std::runtime_error);
  FilterPolicy bad = Policy();
  bad.min_quality = 1.5;
  EXPECT_THROW(IngestText("", bad), std::invalid_argument);
  EXPECT_EQ(bad.Validate(), std::vector<std::string>{"min_quality: must be within [0,1]"});
}

TEST(IngestTest, PartitionAndMonotonicity) {
  std::mt19937 rng(7);
  std::string body;
  const int kRows = 400;
  for (int i = 0; i < kRows; ++i) {
    char conf[8], quality[8];
    std::snprintf(conf, sizeof(conf), "%.2f", (rng() % 101) / 100.0);
    std::snprintf(quality, sizeof(quality), "%.2f", (rng() % 101) / 100.0);
    body += Row("r" + std::to_string(i), conf, quality, rng() % 5 ? "support" : "against");
  }
  std::set<std::string> previous;
  bool first = true;
  for (double q = 0.0; q <= 1.0; q += 0.05) {
    FilterPolicy p = Policy();
    p.min_quality = q;
    const IngestResult r = IngestText(body, p);
    EXPECT_EQ(r.admitted.size() + r.rejected.size(), static_cast<size_t>(kRows));
    std::set<std::string> ids;
    for (const Argument& a : r.admitted) ids.insert(a.id);
    if (!first) {
      for (const std::string& id : ids) EXPECT_TRUE(previous.contains(id)) << id << " at " << q;
    }
    previous = std::move(ids);
    first = false;
  }
}

TEST(TopicSummaryTest, Basics) {
  EXPECT_TRUE(TopicSummary({}).empty());
  std::vector<Argument> args(3);
  for (Argument& a : args) a.topic = "Abolish zoos";
  EXPECT_EQ(TopicSummary(args), (std::vector<TopicCount>{{"Abolish zoos", 3}}));
  args.push_back(Argument{.topic = "Ban whaling"});
  args.push_back(Argument{.topic = "Abandon the use of school uniform"});
  const auto rows = TopicSummary(args);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].topic, "Abandon the use of school uniform");
}

TEST(TopicSummaryTest, CorpusFixture) {
  std::ifstream topics(REASONLINK_FIXTURE_DIR "/topics.txt");
  std::ifstream corpus(REASONLINK_FIXTURE_DIR "/corpus.csv");
  FilterPolicy p;
  p.topics = LoadTopics(topics);
  const IngestResult r = Ingest(corpus, p);
  EXPECT_EQ(r.admitted.size(), 952u);
  const std::vector<TopicCount> want = {{"Abandon the use of school uniform", 145},
                                        {"Abolish capital punishment", 176},
                                        {"Abolish zoos", 141},
                                        {"Ban whaling", 164},
                                        {"Introduce compulsory voting", 116},
                                        {"Legalize cannabis", 210}};
  EXPECT_EQ(TopicSummary(r.admitted), want);
}

TEST(CsvTest, EscapeRoundTrip) {
  const std::vector<std::string> fields = {"plain", "with,comma", "with \"quote\"", "multi\nline", ""};
  std::istringstream in(CsvJoin(fields) + "\n");
  CsvReader reader(in);
  EXPECT_EQ(reader.Next(), fields);
  EXPECT_FALSE(reader.Next().has_value());
}

TEST(CsvTest, UnterminatedQuoteThrows) {
  std::istringstream in("a,\"b\n");
  CsvReader reader(in);
  EXPECT_THROW(reader.Next(), std::runtime_error);
}

}  // namespace
}  // namespace reasonlink

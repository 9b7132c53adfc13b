// Copyright 2026 The enakit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <random>

#include "enakit/csv.hpp"
#include "enakit/corpus.hpp"
#include "enakit/error.hpp"
#include "oracles.hpp"

using namespace enakit;

namespace {

const char* kCodebook = R"({"codes":[{"id":"A","label":"Alpha"},{"id":"B"},{"id":"C"}]})";

ErrorCode code_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an enakit::Error";
  return ErrorCode::kInvalidArgument;
}

std::string message_of(const std::function<void()>& body) {
  try {
    body();
  } catch (const Error& e) {
    return e.what();
  }
  return {};
}

}  // namespace

TEST(Csv, QuotedFieldsAndLineEndings) {
  const auto rows = csv::parse("\xEF\xBB\xBF" "a,b,c\r\n\"x, y\",\"say \"\"hi\"\"\",\r\n\n1,2,3\n");
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0], (csv::Row{"a", "b", "c"}));
  EXPECT_EQ(rows[1], (csv::Row{"x, y", "say \"hi\"", ""}));
  EXPECT_EQ(rows[2], (csv::Row{"1", "2", "3"}));
}

TEST(Csv, EmbeddedNewlineInsideQuotes) {
  const auto rows = csv::parse("t\n\"two\nlines\"\n");
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[1][0], "two\nlines");
}

TEST(Csv, UnterminatedQuoteIsAnError) { EXPECT_EQ(code_of([] { csv::parse("a\n\"open\n"); }), ErrorCode::kValue); }

TEST(Csv, QuoteRoundTrip) {
  std::string out;
  csv::append_row(out, {"plain", "with,comma", "with \"quote\"", "multi\nline"});
  const auto rows = csv::parse(out);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0], (csv::Row{"plain", "with,comma", "with \"quote\"", "multi\nline"}));
}

TEST(Codebook, ParsesAndIndexes) {
  const auto cb = parse_codebook_json(kCodebook);
  ASSERT_EQ(cb.size(), 3u);
  EXPECT_EQ(cb[0].label, "Alpha");
  EXPECT_EQ(cb[1].label, "B");
  EXPECT_EQ(cb.index_of("C"), 2u);
  EXPECT_FALSE(cb.index_of("Z").has_value());
}

TEST(Codebook, RejectsDuplicatesAndTinyCodebooks) {
  EXPECT_EQ(code_of([] { parse_codebook_json(R"({"codes":[{"id":"A"},{"id":"A"}]})"); }), ErrorCode::kSchema);
  EXPECT_EQ(code_of([] { parse_codebook_json(R"({"codes":[{"id":"A"}]})"); }), ErrorCode::kSchema);
  EXPECT_EQ(code_of([] { parse_codebook_json(R"({"codes":[{"id":""},{"id":"B"}]})"); }), ErrorCode::kSchema);
  EXPECT_EQ(code_of([] { parse_codebook_json("not json"); }), ErrorCode::kSchema);
}

TEST(Corpus, ParsesCanonicalColumns) {
  const auto cb = parse_codebook_json(kCodebook);
  const std::string csv_text =
      "unit,condition,conversation,stanza,speaker,text,A,B,C\n"
      "p1,aware,c1,s1,p1,hello,1,0,1\n"
      "p1,aware,c1,s2,p1,\"bye, then\",0,1,0\n";
  const auto corpus = parse_corpus(csv_text, canonical_schema(), cb);
  ASSERT_EQ(corpus.size(), 2u);
  EXPECT_EQ(corpus.records()[0].code_values, (std::vector<std::uint8_t>{1, 0, 1}));
  EXPECT_EQ(corpus.records()[1].text, "bye, then");
  EXPECT_EQ(corpus.records()[1].stanza_id, "s2");
}

TEST(Corpus, MissingColumnNamesTheColumn) {
  const auto cb = parse_codebook_json(kCodebook);
  auto body = [&] { parse_corpus("unit,condition,conversation,stanza,speaker,text,A,B\nx,y,c,s,x,t,1,0\n", canonical_schema(), cb); };
  EXPECT_EQ(code_of(body), ErrorCode::kSchema);
  EXPECT_NE(message_of(body).find("'C'"), std::string::npos);
}

TEST(Corpus, NonBinaryCellReportsRow) {
  const auto cb = parse_codebook_json(kCodebook);
  CorpusSchema schema;
  auto body = [&] { parse_corpus("unit,condition,text,A,B,C\nx,y,t,1,0,0\nx,y,t,1,2,0\n", schema, cb); };
  EXPECT_EQ(code_of(body), ErrorCode::kValue);
  EXPECT_NE(message_of(body).find("row 2"), std::string::npos);
}

TEST(Corpus, EmptyInput) {
  const auto cb = parse_codebook_json(kCodebook);
  EXPECT_EQ(code_of([&] { parse_corpus("", CorpusSchema{}, cb); }), ErrorCode::kEmptyInput);
  EXPECT_EQ(code_of([&] { parse_corpus("unit,condition,text,A,B,C\n", CorpusSchema{}, cb); }),
            ErrorCode::kEmptyInput);
}

TEST(Corpus, SchemaMapsColumnsAndNonParticipants) {
  const auto cb = parse_codebook_json(kCodebook);
  const auto schema = parse_schema_json(
      R"({"unit":"who","condition":"cond","conversation":"talk","stanza":"topic","speaker":"who",
          "text":"said","codes":{"A":"code_a"},"non_participant_units":["VGP"]})");
  const std::string csv_text =
      "who,cond,talk,topic,said,code_a,B,C\n"
      "P1,aware,t1,s1,hi,1,0,0\n"
      "VGP,aware,t1,s1,hello,0,0,1\n"
      "P2,aware,t2,s1,hey,0,1,0\n";
  const auto corpus = parse_corpus(csv_text, schema, cb);
  ASSERT_EQ(corpus.size(), 3u);
  EXPECT_EQ(corpus.records()[1].unit_id, "P1");
  EXPECT_EQ(corpus.records()[1].speaker, "VGP");
  EXPECT_EQ(corpus.records()[2].unit_id, "P2");
  EXPECT_EQ(corpus.records()[0].code_values[0], 1);
}

TEST(Corpus, RejectsWrongCodeVectorLength) {
  const auto cb = parse_codebook_json(kCodebook);
  UtteranceRecord r{"u", "c", "", "s", "", "t", {1, 0}};
  EXPECT_THROW(Corpus(cb, {r}), Error);
  r.code_values = {1, 0, 3};
  EXPECT_THROW(Corpus(cb, {r}), Error);
}

TEST(Segmentation, ExplicitColumnRequiresValues) {
  const auto cb = parse_codebook_json(kCodebook);
  Corpus corpus(cb, {{"u", "c", "conv", "s1", "", "t", {1, 0, 0}}, {"u", "c", "conv", "", "", "t", {0, 1, 0}}});
  auto body = [&] { segment_stanzas(corpus, StanzaStrategy::kExplicitColumn); };
  EXPECT_EQ(code_of(body), ErrorCode::kSegmentation);
  EXPECT_NE(message_of(body).find("2"), std::string::npos);
}

TEST(Segmentation, WholeConversationUsesConversationId) {
  const auto cb = parse_codebook_json(kCodebook);
  Corpus corpus(cb, {{"u", "c", "conv1", "x", "", "t", {1, 0, 0}}, {"u", "c", "conv2", "y", "", "t", {0, 1, 0}}});
  const auto seg = segment_stanzas(corpus, StanzaStrategy::kWholeConversation);
  EXPECT_EQ(seg.records()[0].stanza_id, "conv1");
  EXPECT_EQ(seg.records()[1].stanza_id, "conv2");
  EXPECT_EQ(parse_stanza_strategy("whole-conversation"), StanzaStrategy::kWholeConversation);
  EXPECT_THROW(parse_stanza_strategy("topic"), Error);
}

TEST(Segmentation, GroupStanzasKeepsFirstAppearanceOrder) {
  const auto cb = parse_codebook_json(kCodebook);
  Corpus corpus(cb, {{"u", "c", "", "s2", "", "a", {1, 0, 0}},
                     {"u", "c", "", "s1", "", "b", {0, 1, 0}},
                     {"u", "c", "", "s2", "", "c", {0, 0, 1}},
                     {"v", "c", "", "s2", "", "d", {0, 0, 1}}});
  const auto stanzas = group_stanzas(corpus);
  ASSERT_EQ(stanzas.size(), 3u);
  EXPECT_EQ(stanzas[0].key.stanza_id, "s2");
  EXPECT_EQ(stanzas[0].records.size(), 2u);
  EXPECT_EQ(stanzas[1].key.stanza_id, "s1");
  EXPECT_EQ(stanzas[2].key.unit.unit_id, "v");
  EXPECT_EQ(units_of(corpus).size(), 2u);
}

TEST(Corpus, CsvRoundTripOnRandomCorpora) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto corpus = oracle::random_corpus(rng);
    const auto text = write_corpus_csv(corpus);
    EXPECT_EQ(parse_corpus(text, canonical_schema(), corpus.codebook()), corpus);
  }
}

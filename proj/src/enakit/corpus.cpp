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

#include "enakit/corpus.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "enakit/csv.hpp"
#include "enakit/error.hpp"
#include "json.hpp"

namespace enakit {

using nlohmann::json;

Codebook::Codebook(std::vector<Code> codes) : codes_(std::move(codes)) {
  if (codes_.size() < 2) fail(ErrorCode::kSchema, "codebook needs at least 2 codes");
  std::set<std::string> seen;
  for (const auto& code : codes_) {
    if (code.id.empty()) fail(ErrorCode::kSchema, "codebook: code id must be non-empty");
    if (!seen.insert(code.id).second)
      fail(ErrorCode::kSchema, "codebook: duplicate code id '" + code.id + "'");
  }
}

std::optional<std::size_t> Codebook::index_of(std::string_view id) const {
  for (std::size_t i = 0; i < codes_.size(); ++i)
    if (codes_[i].id == id) return i;
  return std::nullopt;
}

Codebook parse_codebook_json(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kSchema, std::string("codebook: invalid JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("codes") || !doc["codes"].is_array())
    fail(ErrorCode::kSchema, "codebook: expected an object with a 'codes' array");
  std::vector<Code> codes;
  for (const auto& entry : doc["codes"]) {
    if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_string())
      fail(ErrorCode::kSchema, "codebook: every code needs a string 'id'");
    Code code;
    code.id = entry["id"].get<std::string>();
    code.label = entry.value("label", code.id);
    code.definition = entry.value("definition", std::string());
    codes.push_back(std::move(code));
  }
  return Codebook(std::move(codes));
}

Corpus::Corpus(Codebook codebook, std::vector<UtteranceRecord> records)
    : codebook_(std::move(codebook)), records_(std::move(records)) {
  for (std::size_t r = 0; r < records_.size(); ++r) {
    const auto& values = records_[r].code_values;
    if (values.size() != codebook_.size())
      fail(ErrorCode::kValue, "record " + std::to_string(r + 1) + " has " +
                                  std::to_string(values.size()) + " code values, expected " +
                                  std::to_string(codebook_.size()));
    for (auto v : values)
      if (v > 1)
        fail(ErrorCode::kValue, "record " + std::to_string(r + 1) + " has a non-binary code value");
  }
}

std::string CorpusSchema::column_for_code(const std::string& code_id) const {
  for (const auto& [id, column] : codes)
    if (id == code_id) return column;
  return code_id;
}

CorpusSchema parse_schema_json(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::kSchema, std::string("schema: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorCode::kSchema, "schema: expected a JSON object");
  CorpusSchema schema;
  auto field = [&](const char* key, std::string& target) {
    if (doc.contains(key)) {
      if (!doc[key].is_string()) fail(ErrorCode::kSchema, std::string("schema: '") + key + "' must be a string");
      target = doc[key].get<std::string>();
    }
  };
  field("unit", schema.unit);
  field("condition", schema.condition);
  field("conversation", schema.conversation);
  field("stanza", schema.stanza);
  field("speaker", schema.speaker);
  field("text", schema.text);
  if (doc.contains("codes")) {
    if (!doc["codes"].is_object()) fail(ErrorCode::kSchema, "schema: 'codes' must map code ids to columns");
    for (const auto& [id, column] : doc["codes"].items())
      schema.codes.emplace_back(id, column.get<std::string>());
  }
  if (doc.contains("non_participant_units"))
    schema.non_participant_units = doc["non_participant_units"].get<std::vector<std::string>>();
  return schema;
}

CorpusSchema canonical_schema() {
  CorpusSchema schema;
  schema.unit = "unit";
  schema.condition = "condition";
  schema.conversation = "conversation";
  schema.stanza = "stanza";
  schema.speaker = "speaker";
  schema.text = "text";
  return schema;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

std::uint8_t parse_code_cell(std::string_view cell, std::size_t row, const std::string& code_id) {
  const auto v = trim(cell);
  if (v == "0") return 0;
  if (v == "1") return 1;
  fail(ErrorCode::kValue, "row " + std::to_string(row) + ": code '" + code_id +
                              "' has value '" + std::string(cell) + "', expected 0 or 1");
}

}  // namespace

Corpus parse_corpus(std::string_view csv_text, const CorpusSchema& schema,
                    const Codebook& codebook) {
  const auto rows = csv::parse(csv_text);
  if (rows.empty()) fail(ErrorCode::kEmptyInput, "corpus: empty file");
  const auto& header = rows.front();

  auto locate = [&](const std::string& column, bool required) -> std::optional<std::size_t> {
    if (column.empty()) {
      if (required) fail(ErrorCode::kSchema, "corpus: schema does not name a required column");
      return std::nullopt;
    }
    auto it = std::find(header.begin(), header.end(), column);
    if (it == header.end())
      fail(ErrorCode::kSchema, "corpus: missing column '" + column + "'");
    return static_cast<std::size_t>(it - header.begin());
  };

  const auto unit_col = *locate(schema.unit, true);
  const auto condition_col = *locate(schema.condition, true);
  const auto text_col = *locate(schema.text, true);
  const auto conversation_col = locate(schema.conversation, false);
  const auto stanza_col = locate(schema.stanza, false);
  const auto speaker_col = locate(schema.speaker, false);
  std::vector<std::size_t> code_cols;
  for (const auto& code : codebook.codes())
    code_cols.push_back(*locate(schema.column_for_code(code.id), true));

  if (rows.size() == 1) fail(ErrorCode::kEmptyInput, "corpus: no data rows");

  const std::set<std::string> non_participants(schema.non_participant_units.begin(),
                                               schema.non_participant_units.end());
  std::map<std::string, std::string> last_participant;  // conversation -> unit

  std::vector<UtteranceRecord> records;
  records.reserve(rows.size() - 1);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != header.size())
      fail(ErrorCode::kValue, "row " + std::to_string(r) + ": has " + std::to_string(row.size()) +
                                  " fields, header has " + std::to_string(header.size()));
    UtteranceRecord rec;
    rec.condition = row[condition_col];
    rec.text = row[text_col];
    if (conversation_col) rec.conversation_id = row[*conversation_col];
    if (stanza_col) rec.stanza_id = row[*stanza_col];
    const std::string& unit_cell = row[unit_col];
    rec.speaker = speaker_col ? row[*speaker_col] : unit_cell;
    if (non_participants.count(unit_cell)) {
      auto it = last_participant.find(rec.conversation_id);
      if (it == last_participant.end())
        fail(ErrorCode::kValue, "row " + std::to_string(r) + ": '" + unit_cell +
                                    "' line has no preceding participant line to attribute it to");
      rec.unit_id = it->second;
    } else {
      rec.unit_id = unit_cell;
      last_participant[rec.conversation_id] = unit_cell;
    }
    rec.code_values.reserve(code_cols.size());
    for (std::size_t c = 0; c < code_cols.size(); ++c)
      rec.code_values.push_back(parse_code_cell(row[code_cols[c]], r, codebook[c].id));
    records.push_back(std::move(rec));
  }
  return Corpus(codebook, std::move(records));
}

std::string write_corpus_csv(const Corpus& corpus) {
  std::string out;
  csv::Row header{"unit", "condition", "conversation", "stanza", "speaker", "text"};
  for (const auto& code : corpus.codebook().codes()) header.push_back(code.id);
  csv::append_row(out, header);
  for (const auto& rec : corpus.records()) {
    csv::Row row{rec.unit_id, rec.condition, rec.conversation_id, rec.stanza_id, rec.speaker, rec.text};
    for (auto v : rec.code_values) row.push_back(v ? "1" : "0");
    csv::append_row(out, row);
  }
  return out;
}

StanzaStrategy parse_stanza_strategy(std::string_view name) {
  if (name == "explicit-column") return StanzaStrategy::kExplicitColumn;
  if (name == "whole-conversation") return StanzaStrategy::kWholeConversation;
  fail(ErrorCode::kConfiguration, "unknown segmentation strategy '" + std::string(name) + "'");
}

const char* stanza_strategy_name(StanzaStrategy strategy) {
  return strategy == StanzaStrategy::kExplicitColumn ? "explicit-column" : "whole-conversation";
}

Corpus segment_stanzas(const Corpus& corpus, StanzaStrategy strategy) {
  std::vector<UtteranceRecord> records = corpus.records();
  std::vector<std::size_t> bad_rows;
  for (std::size_t r = 0; r < records.size(); ++r) {
    auto& rec = records[r];
    if (strategy == StanzaStrategy::kExplicitColumn) {
      if (rec.stanza_id.empty()) bad_rows.push_back(r + 1);
    } else {
      if (rec.conversation_id.empty()) bad_rows.push_back(r + 1);
      rec.stanza_id = rec.conversation_id;
    }
  }
  if (!bad_rows.empty()) {
    std::string list;
    for (std::size_t i = 0; i < bad_rows.size() && i < 20; ++i)
      list += (i ? ", " : "") + std::to_string(bad_rows[i]);
    if (bad_rows.size() > 20) list += ", ...";
    fail(ErrorCode::kSegmentation,
         std::string(strategy == StanzaStrategy::kExplicitColumn ? "missing stanza value"
                                                                 : "missing conversation id") +
             " in rows " + list);
  }
  return Corpus(corpus.codebook(), std::move(records));
}

std::vector<Stanza> group_stanzas(const Corpus& corpus) {
  std::vector<Stanza> stanzas;
  std::map<StanzaKey, std::size_t> index;
  for (const auto& rec : corpus.records()) {
    StanzaKey key{{rec.unit_id, rec.condition}, rec.stanza_id};
    auto [it, inserted] = index.try_emplace(key, stanzas.size());
    if (inserted) stanzas.push_back(Stanza{key, {}});
    stanzas[it->second].records.push_back(rec);
  }
  return stanzas;
}

std::vector<UnitKey> units_of(const Corpus& corpus) {
  std::vector<UnitKey> units;
  std::set<UnitKey> seen;
  for (const auto& rec : corpus.records()) {
    UnitKey key{rec.unit_id, rec.condition};
    if (seen.insert(key).second) units.push_back(key);
  }
  return units;
}

}  // namespace enakit

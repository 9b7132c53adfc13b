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

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace enakit {

struct Code {
  std::string id;
  std::string label;
  std::string definition;

  bool operator==(const Code&) const = default;
};

// Ordered list of codes. The order is the canonical index order of every
// matrix and vector built downstream.
class Codebook {
 public:
  Codebook() = default;
  explicit Codebook(std::vector<Code> codes);

  std::size_t size() const noexcept { return codes_.size(); }
  const std::vector<Code>& codes() const noexcept { return codes_; }
  const Code& operator[](std::size_t i) const { return codes_[i]; }
  std::optional<std::size_t> index_of(std::string_view id) const;

  bool operator==(const Codebook&) const = default;

 private:
  std::vector<Code> codes_;
};

// Parses {"codes": [{"id", "label", "definition"}]}.
Codebook parse_codebook_json(std::string_view json_text);

struct UtteranceRecord {
  std::string unit_id;
  std::string condition;
  std::string conversation_id;
  std::string stanza_id;
  std::string speaker;
  std::string text;
  std::vector<std::uint8_t> code_values;

  bool operator==(const UtteranceRecord&) const = default;
};

class Corpus {
 public:
  Corpus() = default;
  // Throws when any record's code vector disagrees with the codebook size or
  // holds a value other than 0/1.
  Corpus(Codebook codebook, std::vector<UtteranceRecord> records);

  const Codebook& codebook() const noexcept { return codebook_; }
  const std::vector<UtteranceRecord>& records() const noexcept { return records_; }
  std::size_t size() const noexcept { return records_.size(); }

  bool operator==(const Corpus&) const = default;

 private:
  Codebook codebook_;
  std::vector<UtteranceRecord> records_;
};

// Maps corpus fields onto CSV header names. Optional columns are empty when
// absent. `codes` pairs a code id with its column; codes not listed use a
// column named after the id.
//
// Rows whose unit cell names a non-participant (e.g. the simulated patient)
// keep that value as the speaker and inherit the unit of the most recent
// participant row in the same conversation.
struct CorpusSchema {
  std::string unit = "unit";
  std::string condition = "condition";
  std::string conversation;
  std::string stanza;
  std::string speaker;
  std::string text = "text";
  std::vector<std::pair<std::string, std::string>> codes;
  std::vector<std::string> non_participant_units;

  std::string column_for_code(const std::string& code_id) const;
};

CorpusSchema parse_schema_json(std::string_view json_text);

// Schema matching the columns written by write_corpus_csv.
CorpusSchema canonical_schema();

Corpus parse_corpus(std::string_view csv_text, const CorpusSchema& schema,
                    const Codebook& codebook);

// Canonical CSV form: unit, condition, conversation, stanza, speaker, text,
// then one column per code id. Re-parsing with canonical_schema() yields an
// equal corpus.
std::string write_corpus_csv(const Corpus& corpus);

enum class StanzaStrategy { kExplicitColumn, kWholeConversation };

StanzaStrategy parse_stanza_strategy(std::string_view name);
const char* stanza_strategy_name(StanzaStrategy strategy);

Corpus segment_stanzas(const Corpus& corpus, StanzaStrategy strategy);

struct UnitKey {
  std::string unit_id;
  std::string condition;

  auto operator<=>(const UnitKey&) const = default;
};

struct StanzaKey {
  UnitKey unit;
  std::string stanza_id;

  auto operator<=>(const StanzaKey&) const = default;
};

struct Stanza {
  StanzaKey key;
  std::vector<UtteranceRecord> records;
};

// Groups records by (unit, condition, stanza). Stanzas appear in order of
// their first record; records keep transcript order within a stanza.
std::vector<Stanza> group_stanzas(const Corpus& corpus);

// Units in order of first appearance.
std::vector<UnitKey> units_of(const Corpus& corpus);

}  // namespace enakit

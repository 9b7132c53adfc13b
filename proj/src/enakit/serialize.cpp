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

#include "enakit/serialize.hpp"

#include "enakit/error.hpp"

namespace enakit::io {

namespace {

template <typename F>
auto guarded(const char* what, F&& body) {
  try {
    return body();
  } catch (const json::exception& e) {
    fail(ErrorCode::kSchema, std::string(what) + ": malformed JSON artifact: " + e.what());
  }
}

json summary_to_json(const stats::GroupSummary& g) {
  return {{"condition", g.condition}, {"n", g.n},   {"mean", g.mean},
          {"sd", g.sd},               {"ci95", {g.ci95.lower, g.ci95.upper}}};
}

stats::GroupSummary summary_from_json(const json& j) {
  stats::GroupSummary g;
  g.condition = j.at("condition").get<std::string>();
  g.n = j.at("n").get<std::size_t>();
  g.mean = j.at("mean").get<double>();
  g.sd = j.at("sd").get<double>();
  g.ci95 = {j.at("ci95").at(0).get<double>(), j.at("ci95").at(1).get<double>()};
  return g;
}

std::vector<double> edges_from_json(const json& edges, std::size_t codes) {
  std::vector<double> weights(pair_count(codes), 0.0);
  for (const auto& e : edges) {
    const auto i = e.at("i").get<std::size_t>(), j = e.at("j").get<std::size_t>();
    if (i >= j || j >= codes) fail(ErrorCode::kSchema, "edge list: pair index out of range");
    weights[pair_index(i, j, codes)] = e.at("weight").get<double>();
  }
  return weights;
}

}  // namespace

json codebook_to_json(const Codebook& codebook) {
  json codes = json::array();
  for (const auto& c : codebook.codes())
    codes.push_back({{"id", c.id}, {"label", c.label}, {"definition", c.definition}});
  return {{"codes", codes}};
}

Codebook codebook_from_json(const json& j) { return parse_codebook_json(j.dump()); }

json corpus_to_json(const Corpus& corpus) {
  json records = json::array();
  for (const auto& r : corpus.records())
    records.push_back({{"unit", r.unit_id},
                       {"condition", r.condition},
                       {"conversation", r.conversation_id},
                       {"stanza", r.stanza_id},
                       {"speaker", r.speaker},
                       {"text", r.text},
                       {"codes", r.code_values}});
  return {{"codebook", codebook_to_json(corpus.codebook())}, {"records", records}};
}

Corpus corpus_from_json(const json& j) {
  return guarded("corpus", [&] {
    Codebook codebook = codebook_from_json(j.at("codebook"));
    std::vector<UtteranceRecord> records;
    for (const auto& r : j.at("records")) {
      UtteranceRecord rec;
      rec.unit_id = r.at("unit").get<std::string>();
      rec.condition = r.at("condition").get<std::string>();
      rec.conversation_id = r.at("conversation").get<std::string>();
      rec.stanza_id = r.at("stanza").get<std::string>();
      rec.speaker = r.at("speaker").get<std::string>();
      rec.text = r.at("text").get<std::string>();
      rec.code_values = r.at("codes").get<std::vector<std::uint8_t>>();
      records.push_back(std::move(rec));
    }
    return Corpus(std::move(codebook), std::move(records));
  });
}

json cumulative_to_json(const CumulativeNetwork& network) {
  json pairs = json::array();
  for (std::size_t i = 0; i < network.size; ++i)
    for (std::size_t j = i + 1; j < network.size; ++j)
      if (network.at(i, j) != 0) pairs.push_back({{"i", i}, {"j", j}, {"count", network.at(i, j)}});
  return {{"unit", network.unit.unit_id},
          {"condition", network.unit.condition},
          {"stanza_count", network.stanza_count},
          {"code_counts", network.code_counts},
          {"pairs", pairs}};
}

CumulativeNetwork cumulative_from_json(const json& j, std::size_t codes) {
  return guarded("networks", [&] {
    CumulativeNetwork net;
    net.unit = {j.at("unit").get<std::string>(), j.at("condition").get<std::string>()};
    net.size = codes;
    net.stanza_count = j.at("stanza_count").get<std::int64_t>();
    net.code_counts = j.at("code_counts").get<std::vector<std::int64_t>>();
    if (net.code_counts.size() != codes) fail(ErrorCode::kSchema, "networks: code_counts length mismatch");
    net.counts.assign(codes * codes, 0);
    for (const auto& p : j.at("pairs")) {
      const auto i = p.at("i").get<std::size_t>(), k = p.at("j").get<std::size_t>();
      if (i >= k || k >= codes) fail(ErrorCode::kSchema, "networks: pair index out of range");
      net.counts[i * codes + k] = net.counts[k * codes + i] = p.at("count").get<std::int64_t>();
    }
    return net;
  });
}

json model_to_json(const ModelFit& fit, const NodeLayout& layout, const Codebook& codebook) {
  json scores = json::array();
  for (const auto& s : fit.scores)
    scores.push_back({{"unit", s.unit.unit_id}, {"condition", s.unit.condition}, {"coords", s.coords}});
  json nodes = json::object();
  for (std::size_t i = 0; i < layout.positions.size(); ++i) nodes[codebook[i].id] = layout.positions[i];
  return {{"grand_mean", fit.space.grand_mean},
          {"centered", fit.space.centered},
          {"basis", fit.space.basis},
          {"singular_values", fit.space.singular_values},
          {"variance_explained", fit.space.variance_explained},
          {"all_singular_values", fit.space.all_singular_values},
          {"rank", fit.space.rank},
          {"scores", scores},
          {"node_positions", nodes},
          {"warnings", fit.warnings}};
}

ModelFit model_from_json(const json& j) {
  return guarded("model", [&] {
    ModelFit fit;
    fit.space.grand_mean = j.at("grand_mean").get<std::vector<double>>();
    fit.space.centered = j.at("centered").get<bool>();
    fit.space.basis = j.at("basis").get<std::vector<std::vector<double>>>();
    fit.space.singular_values = j.at("singular_values").get<std::vector<double>>();
    fit.space.variance_explained = j.at("variance_explained").get<std::vector<double>>();
    fit.space.all_singular_values = j.at("all_singular_values").get<std::vector<double>>();
    fit.space.rank = j.at("rank").get<std::size_t>();
    for (const auto& s : j.at("scores"))
      fit.scores.push_back({{s.at("unit").get<std::string>(), s.at("condition").get<std::string>()},
                            s.at("coords").get<std::vector<double>>()});
    fit.warnings = j.at("warnings").get<std::vector<std::string>>();
    return fit;
  });
}

NodeLayout layout_from_json(const json& j, const Codebook& codebook) {
  return guarded("model", [&] {
    NodeLayout layout;
    const auto& nodes = j.at("node_positions");
    for (const auto& code : codebook.codes()) {
      if (!nodes.contains(code.id)) fail(ErrorCode::kSchema, "model: no node position for code '" + code.id + "'");
      layout.positions.push_back(nodes.at(code.id).get<std::vector<double>>());
    }
    return layout;
  });
}

json edges_to_json(std::span<const double> pair_weights, const Codebook& codebook) {
  json edges = json::array();
  for (const auto& e : ranked_edges(pair_weights, codebook.size()))
    edges.push_back({{"i", e.i}, {"j", e.j}, {"source", codebook[e.i].id}, {"target", codebook[e.j].id},
                     {"weight", e.weight}});
  return edges;
}

json group_to_json(const GroupNetwork& group, const Codebook& codebook) {
  json nodes = json::array();
  for (std::size_t i = 0; i < group.node_frequencies.size(); ++i)
    nodes.push_back({{"code", codebook[i].id}, {"frequency", group.node_frequencies[i]}});
  return {{"condition", group.condition},
          {"mode", group_mode_name(group.mode)},
          {"unit_count", group.unit_count},
          {"nodes", nodes},
          {"edges", edges_to_json(group.edge_weights, codebook)}};
}

GroupNetwork group_from_json(const json& j, const Codebook& codebook) {
  return guarded("groups", [&] {
    GroupNetwork g;
    g.condition = j.at("condition").get<std::string>();
    g.mode = parse_group_mode(j.at("mode").get<std::string>());
    g.codes = codebook.size();
    g.unit_count = j.at("unit_count").get<std::size_t>();
    for (const auto& n : j.at("nodes")) g.node_frequencies.push_back(n.at("frequency").get<double>());
    if (g.node_frequencies.size() != g.codes) fail(ErrorCode::kSchema, "groups: node list length mismatch");
    g.edge_weights = edges_from_json(j.at("edges"), g.codes);
    return g;
  });
}

json subtracted_to_json(const SubtractedNetwork& subtracted, const Codebook& codebook) {
  return {{"condition_a", subtracted.condition_a},
          {"condition_b", subtracted.condition_b},
          {"mode", group_mode_name(subtracted.mode)},
          {"edges", edges_to_json(subtracted.edge_weights, codebook)}};
}

SubtractedNetwork subtracted_from_json(const json& j, const Codebook& codebook) {
  return guarded("groups", [&] {
    SubtractedNetwork s;
    s.condition_a = j.at("condition_a").get<std::string>();
    s.condition_b = j.at("condition_b").get<std::string>();
    s.mode = parse_group_mode(j.at("mode").get<std::string>());
    s.codes = codebook.size();
    s.edge_weights = edges_from_json(j.at("edges"), s.codes);
    return s;
  });
}

json stat_report_to_json(const stats::StatReport& r) {
  return {{"dimension", r.dimension},
          {"a", summary_to_json(r.a)},
          {"b", summary_to_json(r.b)},
          {"t", r.welch.t},
          {"df", r.welch.df},
          {"p_two_sided", r.welch.p_two_sided},
          {"cohens_d", r.cohens_d},
          {"alpha", r.alpha},
          {"significant", r.significant}};
}

stats::StatReport stat_report_from_json(const json& j) {
  return guarded("stats", [&] {
    stats::StatReport r;
    r.dimension = j.at("dimension").get<std::string>();
    r.a = summary_from_json(j.at("a"));
    r.b = summary_from_json(j.at("b"));
    r.welch = {j.at("t").get<double>(), j.at("df").get<double>(), j.at("p_two_sided").get<double>()};
    r.cohens_d = j.at("cohens_d").get<double>();
    r.alpha = j.at("alpha").get<double>();
    r.significant = j.at("significant").get<bool>();
    return r;
  });
}

json irr_report_to_json(const IrrReport& r) {
  const auto& c = r.confusion.counts;
  return {{"code", r.code_id},
          {"confusion", {{c[0][0], c[0][1]}, {c[1][0], c[1][1]}}},
          {"kappa", r.kappa},
          {"percent_agreement", r.percent_agreement},
          {"degenerate", r.degenerate},
          {"rho", r.rho},
          {"rho_defined", r.rho_defined},
          {"baserate", r.baserate},
          {"threshold_kappa", r.threshold_kappa},
          {"handset_size", r.handset_size},
          {"replicates", r.replicates},
          {"seed", r.seed}};
}

}  // namespace enakit::io

// Copyright 2026 The QCT Authors
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

#include "qct/io.hpp"

#include <fstream>
#include <sstream>

#include "qct/errors.hpp"

namespace qct::io {

namespace {

const Json& field(const Json& j, const char* key, const char* where) {
  if (!j.is_object()) throw ParseError(std::string(where) + ": expected a JSON object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(std::string(where) + ": missing field '" + key + "'");
  return *it;
}

const Json& array_field(const Json& j, const char* key, const char* where) {
  const Json& a = field(j, key, where);
  if (!a.is_array()) throw ParseError(std::string(where) + ": field '" + key + "' must be an array");
  return a;
}

// Runs a reader, turning JSON type errors into ParseError.
template <typename F>
auto guarded(const char* where, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(where) + ": " + e.what());
  }
}

Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("complex numbers must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

std::vector<CMatrix> matrices_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of matrices");
  std::vector<CMatrix> out;
  for (const auto& m : j) out.push_back(matrix_from_json(m));
  return out;
}

Json output_row_json(const OutputRow& r) { return Json::array({r[0], r[1], r[2]}); }

OutputRow output_row_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw ParseError("output rows must list P(0), P(1), P(abort)");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

// Strategy fields, without the document header.
Strategy strategy_body(const Json& j) {
  const char* where = "strategy";
  Strategy s;
  s.party = party_from_string(field(j, "party", where).get<std::string>());
  s.private_algebra = algebra_from_json(field(j, "private_algebra", where));
  s.mailbox = algebra_from_json(field(j, "mailbox", where));
  s.initial = matrix_from_json(field(j, "initial", where));
  const auto on = s.move_algebra();
  for (const auto& m : array_field(j, "moves", where)) {
    s.moves.emplace_back(on, on, matrices_from_json(field(m, "kraus", "move")));
  }
  const Json& fm = field(j, "final_measurement", where);
  std::vector<Outcome> outcomes;
  for (const auto& o : array_field(fm, "outcomes", "final_measurement")) {
    outcomes.push_back({field(o, "label", "outcome").get<std::string>(),
                        matrix_from_json(field(o, "effect", "outcome"))});
  }
  s.final_measurement = Povm(s.private_algebra, std::move(outcomes));
  s.validate();
  return s;
}

Json strategy_json(const Strategy& s) {
  Json j;
  j["party"] = to_string(s.party);
  j["private_algebra"] = to_json(s.private_algebra);
  j["mailbox"] = to_json(s.mailbox);
  j["initial"] = to_json(s.initial);
  j["moves"] = Json::array();
  for (const auto& t : s.moves) {
    Json kraus = Json::array();
    for (const auto& k : t.kraus()) kraus.push_back(to_json(k));
    j["moves"].push_back({{"kraus", kraus}});
  }
  Json outcomes = Json::array();
  for (const auto& o : s.final_measurement.outcomes()) {
    outcomes.push_back({{"label", o.label}, {"effect", to_json(o.effect)}});
  }
  j["final_measurement"] = {{"outcomes", outcomes}};
  return j;
}

}  // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

Json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str());
}

Json document(const std::string& kind, const Json& body) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = kind;
  for (const auto& [k, v] : body.items()) j[k] = v;
  return j;
}

std::string kind_of(const Json& j) {
  if (!j.is_object()) throw ParseError("document must be a JSON object");
  const auto schema = j.find("schema");
  if (schema == j.end() || !schema->is_string() || schema->get<std::string>() != kSchema) {
    throw ParseError(std::string("document must declare \"schema\": \"") + kSchema + "\"");
  }
  const auto kind = j.find("kind");
  if (kind == j.end() || !kind->is_string()) throw ParseError("document lacks a \"kind\"");
  return kind->get<std::string>();
}

void expect_document(const Json& j, const std::string& kind) {
  const std::string found = kind_of(j);
  if (found != kind) throw ParseError("expected a '" + kind + "' document, found '" + found + "'");
}

Json to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrices must be non-empty arrays of rows");
  const std::size_t rows = j.size();
  if (!j[0].is_array()) throw ParseError("matrix rows must be arrays");
  const std::size_t cols = j[0].size();
  CMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw ParseError("matrix rows must have equal length");
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = complex_from_json(j[i][k]);
  }
  return m;
}

Json to_json(const CVector& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
  return out;
}

CVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("vectors must be arrays of [re, im] pairs");
  CVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(i) = complex_from_json(j[i]);
  return v;
}

Json to_json(const AlgebraSpec& a) {
  Json blocks = Json::array();
  for (const auto& b : a.blocks()) blocks.push_back({{"label", b.label}, {"dim", b.dim}});
  Json j = {{"blocks", blocks}};
  if (!a.is_contiguous()) j["sectors"] = a.sectors();
  return j;
}

AlgebraSpec algebra_from_json(const Json& j) {
  return guarded("algebra", [&] {
    std::vector<Block> blocks;
    for (const auto& b : array_field(j, "blocks", "algebra")) {
      blocks.push_back({field(b, "label", "block").get<std::string>(),
                        field(b, "dim", "block").get<std::size_t>()});
    }
    if (j.contains("sectors")) {
      return AlgebraSpec::with_sectors(std::move(blocks), j["sectors"].get<std::vector<std::size_t>>());
    }
    return AlgebraSpec(std::move(blocks));
  });
}

Json to_json(const State& s) {
  return document("state", {{"algebra", to_json(s.algebra())}, {"matrix", to_json(s.matrix())}});
}

State state_from_json(const Json& j) {
  expect_document(j, "state");
  return guarded("state", [&] {
    return State(algebra_from_json(field(j, "algebra", "state")), matrix_from_json(field(j, "matrix", "state")));
  });
}

Json to_json(const Povm& e) {
  Json outcomes = Json::array();
  for (const auto& o : e.outcomes()) outcomes.push_back({{"label", o.label}, {"effect", to_json(o.effect)}});
  return document("povm", {{"algebra", to_json(e.algebra())}, {"outcomes", outcomes}});
}

Povm povm_from_json(const Json& j) {
  expect_document(j, "povm");
  return guarded("povm", [&] {
    std::vector<Outcome> outcomes;
    for (const auto& o : array_field(j, "outcomes", "povm")) {
      outcomes.push_back({field(o, "label", "outcome").get<std::string>(),
                          matrix_from_json(field(o, "effect", "outcome"))});
    }
    return Povm(algebra_from_json(field(j, "algebra", "povm")), std::move(outcomes));
  });
}

Json to_json(const Channel& t) {
  Json kraus = Json::array();
  for (const auto& k : t.kraus()) kraus.push_back(to_json(k));
  return document("channel",
                  {{"input", to_json(t.input())}, {"output", to_json(t.output())}, {"kraus", kraus}});
}

Channel channel_from_json(const Json& j) {
  expect_document(j, "channel");
  return guarded("channel", [&] {
    return Channel(algebra_from_json(field(j, "input", "channel")),
                   algebra_from_json(field(j, "output", "channel")),
                   matrices_from_json(field(j, "kraus", "channel")));
  });
}

Json to_json(const Strategy& s) { return document("strategy", strategy_json(s)); }

Strategy strategy_from_json(const Json& j) {
  expect_document(j, "strategy");
  return guarded("strategy", [&] { return strategy_body(j); });
}

Json to_json(const Protocol& p) {
  return document("protocol", {{"rounds", p.rounds},
                               {"first_mover", to_string(p.first_mover)},
                               {"mailbox", to_json(p.mailbox)},
                               {"alice", strategy_json(p.alice)},
                               {"bob", strategy_json(p.bob)}});
}

Protocol protocol_from_json(const Json& j) {
  expect_document(j, "protocol");
  return guarded("protocol", [&] {
    Protocol p{strategy_body(field(j, "alice", "protocol")), strategy_body(field(j, "bob", "protocol")),
               algebra_from_json(field(j, "mailbox", "protocol")),
               field(j, "rounds", "protocol").get<std::size_t>(), Party::kBob};
    if (j.contains("first_mover")) p.first_mover = party_from_string(j["first_mover"].get<std::string>());
    p.validate();
    return p;
  });
}

Json to_json(const ClassicalProtocol& c) {
  Json rounds = Json::array();
  for (const auto& r : c.rounds) {
    rounds.push_back({{"owner", to_string(r.owner)}, {"alphabet", r.alphabet}, {"table", r.table}});
  }
  Json alice = Json::array(), bob = Json::array();
  for (const auto& row : c.alice_output) alice.push_back(output_row_json(row));
  for (const auto& row : c.bob_output) bob.push_back(output_row_json(row));
  return document("classical_protocol",
                  {{"rounds", rounds}, {"alice_output", alice}, {"bob_output", bob}});
}

ClassicalProtocol classical_from_json(const Json& j) {
  expect_document(j, "classical_protocol");
  return guarded("classical_protocol", [&] {
    ClassicalProtocol c;
    for (const auto& r : array_field(j, "rounds", "classical_protocol")) {
      c.rounds.push_back({party_from_string(field(r, "owner", "round").get<std::string>()),
                          field(r, "alphabet", "round").get<std::vector<std::string>>(),
                          field(r, "table", "round").get<std::vector<std::vector<double>>>()});
    }
    for (const auto& row : array_field(j, "alice_output", "classical_protocol")) {
      c.alice_output.push_back(output_row_from_json(row));
    }
    for (const auto& row : array_field(j, "bob_output", "classical_protocol")) {
      c.bob_output.push_back(output_row_from_json(row));
    }
    c.validate();
    return c;
  });
}

Json to_json(const PureClassicalStrategy& s, const ClassicalProtocol& c) {
  Json rounds = Json::array();
  for (std::size_t r = 0; r < s.choices.size(); ++r) {
    if (c.rounds[r].owner != s.party) continue;
    Json messages = Json::array();
    for (auto m : s.choices[r]) messages.push_back(c.rounds[r].alphabet[m]);
    rounds.push_back({{"round", r + 1}, {"message_per_prefix", messages}});
  }
  Json output = Json::array();
  for (auto o : s.output) output.push_back(to_string(o));
  return {{"party", to_string(s.party)}, {"rounds", rounds}, {"output_per_transcript", output}};
}

Json to_json(const OutcomeDistribution& d) {
  Json table = Json::object();
  for (Coin a : kCoins) {
    Json row = Json::object();
    for (Coin b : kCoins) row[to_string(b)] = d(a, b);
    table[to_string(a)] = row;
  }
  return {{"rows", "alice"}, {"columns", "bob"}, {"table", table}};
}

Json to_json(const CountTable& counts) {
  Json table = Json::object();
  for (Coin a : kCoins) {
    Json row = Json::object();
    for (Coin b : kCoins) row[to_string(b)] = counts[static_cast<int>(a)][static_cast<int>(b)];
    table[to_string(a)] = row;
  }
  return {{"rows", "alice"}, {"columns", "bob"}, {"counts", table}};
}

Json to_json(const SearchReport& r) {
  Json j = {{"family", r.family},
            {"party", to_string(r.party)},
            {"target", r.target},
            {"best_value", r.best_value},
            {"best_parameters", r.best_parameters},
            {"evaluations", r.evaluations},
            {"restarts", r.restarts},
            {"seed", r.seed},
            {"note", kLowerBoundNote}};
  if (r.claimed_bound) j["claimed_bound"] = *r.claimed_bound;
  j["bound_violation"] = r.bound_violation;
  j["diagnostics"] = r.diagnostics;
  return j;
}

Json to_json(const PureStrategy& s) {
  return {{"strategy", strategy_json(s.strategy)},
          {"initial_vector", to_json(s.initial_vector)},
          {"private_factors", s.private_factors}};
}

Json to_json(const DilationReport& r) {
  return {{"context_deviation", r.context_deviation},
          {"deviations", r.deviations},
          {"max_deviation", r.max_deviation}};
}

}  // namespace qct::io

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

// JSON documents.
//
// Complex numbers are two-element arrays [re, im]; matrices are arrays of
// rows. Top-level documents carry "schema": "qct/1" and a "kind". Reading
// throws ParseError for malformed JSON or schema mismatches; the validating
// constructors of the objects themselves raise ValidationError.

#pragma once

#include <string>

#include "json.hpp"

#include "qct/cheat_opt.hpp"
#include "qct/classical.hpp"
#include "qct/dilation.hpp"
#include "qct/protocol.hpp"

namespace qct::io {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "qct/1";

/// Parses text, mapping syntax errors to ParseError.
Json parse(const std::string& text);
Json read_file(const std::string& path);

/// {"schema": "qct/1", "kind": kind} followed by the fields of `body`.
Json document(const std::string& kind, const Json& body);
/// Throws ParseError unless `j` is a document of the given kind.
void expect_document(const Json& j, const std::string& kind);
std::string kind_of(const Json& j);

Json to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j);
Json to_json(const CVector& v);
CVector vector_from_json(const Json& j);

Json to_json(const AlgebraSpec& a);
AlgebraSpec algebra_from_json(const Json& j);

Json to_json(const State& s);
State state_from_json(const Json& j);

Json to_json(const Povm& e);
Povm povm_from_json(const Json& j);

Json to_json(const Channel& t);
Channel channel_from_json(const Json& j);

Json to_json(const Strategy& s);
Strategy strategy_from_json(const Json& j);

Json to_json(const Protocol& p);
Protocol protocol_from_json(const Json& j);

Json to_json(const ClassicalProtocol& c);
ClassicalProtocol classical_from_json(const Json& j);
Json to_json(const PureClassicalStrategy& s, const ClassicalProtocol& c);

Json to_json(const OutcomeDistribution& d);
Json to_json(const CountTable& counts);
Json to_json(const SearchReport& r);
Json to_json(const PureStrategy& s);
Json to_json(const DilationReport& r);

}  // namespace qct::io

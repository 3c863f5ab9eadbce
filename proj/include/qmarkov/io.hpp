// Copyright 2026 The qmarkov Authors
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

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "qmarkov/channel.hpp"
#include "qmarkov/classical.hpp"
#include "qmarkov/freeops.hpp"
#include "qmarkov/monotones.hpp"

namespace qmarkov {

/**
 * JSON documents for states, channels, protocols and distributions.
 *
 * Complex entries are [re, im] pairs in row-major order. Doubles are printed
 * with round-trip precision, so write followed by read is bit-exact.
 */

/// Malformed document: bad JSON, missing fields or wrong types.
struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

using Json = nlohmann::json;

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);

/// {"dims": [{"label", "dim"}...], "matrix": [[re, im]...]}
Json state_to_json(const MultipartiteState& s);
MultipartiteState state_from_json(const Json& j);

/// {"kraus": [{"rows", "cols", "data"}...]}
Json channel_to_json(const Channel& c);
Channel channel_from_json(const Json& j);

Json step_to_json(const ProtocolStep& step);
ProtocolStep step_from_json(const Json& j);

/// {"steps": [...]} plus an optional "witness" reversible step for
/// convert-verify.
Json protocol_to_json(const Protocol& p, const std::optional<ReversibleE>& witness = {});
Protocol protocol_from_json(const Json& j);
std::optional<ReversibleE> witness_from_json(const Json& j);

/// {"sizes": [nx, ny, nz], "p": [...]}
Json dist_to_json(const ClassicalDist& p);
ClassicalDist dist_from_json(const Json& j);

Json estimate_to_json(const MonotoneEstimate& e);

/// Throws ParseError when the file cannot be read or parsed.
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace qmarkov

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

#include "qmarkov/io.hpp"

#include <fstream>
#include <sstream>

namespace qmarkov {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

template <class T>
T as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("field '") + what + "' has the wrong type");
  }
}

Json entries(const ComplexMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) data.push_back({m(i, k).real(), m(i, k).imag()});
  }
  return data;
}

ComplexMatrix read_entries(const Json& data, int rows, int cols) {
  if (!data.is_array() || static_cast<int>(data.size()) != rows * cols) {
    throw ParseError("matrix data has the wrong length");
  }
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int k = 0; k < cols; ++k) {
      const Json& e = data[i * cols + k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ParseError("matrix entries must be [re, im] pairs");
      }
      m(i, k) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

Json dims_to_json(const Dims& dims) {
  Json out = Json::array();
  for (const auto& d : dims) out.push_back({{"label", d.label}, {"dim", d.dim}});
  return out;
}

Dims dims_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("dims must be a list");
  Dims out;
  for (const auto& e : j) {
    out.push_back({as<std::string>(field(e, "label"), "label"), as<int>(field(e, "dim"), "dim")});
  }
  return out;
}

Labels labels_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("labels must be a list");
  Labels out;
  for (const auto& e : j) out.push_back(as<std::string>(e, "label"));
  return out;
}

Json reversible_to_json(const ReversibleE& st) {
  return {{"class", "reversible_e"},
          {"forward", channel_to_json(st.pair.forward)},
          {"inverse", channel_to_json(st.pair.inverse)},
          {"inputs", st.inputs},
          {"outputs", dims_to_json(st.outputs)}};
}

ReversibleE reversible_from_json(const Json& j) {
  return {{channel_from_json(field(j, "forward")), channel_from_json(field(j, "inverse"))},
          labels_from_json(field(j, "inputs")),
          dims_from_json(field(j, "outputs"))};
}

template <Party P>
Json broadcast_to_json(const BroadcastStep<P>& st, const char* cls) {
  Json inst = Json::array();
  for (const auto& outcome : st.instrument) {
    Json ks = Json::array();
    for (const auto& k : outcome) ks.push_back(matrix_to_json(k));
    inst.push_back(ks);
  }
  Json cont = Json::array();
  for (const auto& c : st.continuation) cont.push_back(channel_to_json(c));
  return {{"class", cls},
          {"instrument", inst},
          {"inputs", st.inputs},
          {"outputs", dims_to_json(st.outputs)},
          {"receiver_register", st.receiver_register},
          {"eve_register", st.eve_register},
          {"continuation", cont},
          {"continuation_inputs", st.continuation_inputs},
          {"continuation_outputs", dims_to_json(st.continuation_outputs)}};
}

template <Party P>
BroadcastStep<P> broadcast_from_json(const Json& j) {
  BroadcastStep<P> st;
  const Json& inst = field(j, "instrument");
  if (!inst.is_array()) throw ParseError("instrument must be a list of outcomes");
  for (const auto& outcome : inst) {
    if (!outcome.is_array()) throw ParseError("each outcome must list Kraus operators");
    std::vector<ComplexMatrix> ks;
    for (const auto& k : outcome) ks.push_back(matrix_from_json(k));
    st.instrument.push_back(std::move(ks));
  }
  st.inputs = labels_from_json(field(j, "inputs"));
  st.outputs = dims_from_json(field(j, "outputs"));
  st.receiver_register = j.value("receiver_register", std::string());
  st.eve_register = as<std::string>(field(j, "eve_register"), "eve_register");
  if (j.contains("continuation")) {
    for (const auto& c : j.at("continuation")) st.continuation.push_back(channel_from_json(c));
  }
  if (j.contains("continuation_inputs")) {
    st.continuation_inputs = labels_from_json(j.at("continuation_inputs"));
  }
  if (j.contains("continuation_outputs")) {
    st.continuation_outputs = dims_from_json(j.at("continuation_outputs"));
  }
  return st;
}

}  // namespace

Json matrix_to_json(const ComplexMatrix& m) {
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", entries(m)}};
}

ComplexMatrix matrix_from_json(const Json& j) {
  const int rows = as<int>(field(j, "rows"), "rows");
  const int cols = as<int>(field(j, "cols"), "cols");
  if (rows < 1 || cols < 1) throw ParseError("matrix shape must be positive");
  return read_entries(field(j, "data"), rows, cols);
}

Json state_to_json(const MultipartiteState& s) {
  return {{"dims", dims_to_json(s.dims())}, {"matrix", entries(s.matrix())}};
}

MultipartiteState state_from_json(const Json& j) {
  const Dims dims = dims_from_json(field(j, "dims"));
  int d = 1;
  for (const auto& s : dims) {
    if (s.dim < 1) throw ParseError("dims must be positive");
    d *= s.dim;
    if (d > kMaxTotalDim) throw ShapeError("state dimension exceeds the supported maximum");
  }
  return MultipartiteState(dims, read_entries(field(j, "matrix"), d, d));
}

Json channel_to_json(const Channel& c) {
  Json ks = Json::array();
  for (const auto& k : c.kraus()) ks.push_back(matrix_to_json(k));
  return {{"kraus", ks}};
}

Channel channel_from_json(const Json& j) {
  const Json& ks = field(j, "kraus");
  if (!ks.is_array() || ks.empty()) throw ParseError("kraus must be a nonempty list");
  std::vector<ComplexMatrix> kraus;
  for (const auto& k : ks) kraus.push_back(matrix_from_json(k));
  return Channel(std::move(kraus));
}

Json step_to_json(const ProtocolStep& step) {
  return std::visit(
      Overloaded{
          [](const LocalA& st) -> Json {
            return {{"class", "local_a"},
                    {"channel", channel_to_json(st.channel)},
                    {"inputs", st.inputs},
                    {"outputs", dims_to_json(st.outputs)}};
          },
          [](const LocalB& st) -> Json {
            return {{"class", "local_b"},
                    {"channel", channel_to_json(st.channel)},
                    {"inputs", st.inputs},
                    {"outputs", dims_to_json(st.outputs)}};
          },
          [](const ReversibleE& st) -> Json { return reversible_to_json(st); },
          [](const BroadcastA& st) -> Json { return broadcast_to_json(st, "broadcast_a"); },
          [](const BroadcastB& st) -> Json { return broadcast_to_json(st, "broadcast_b"); },
          [](const QuantumCommAE& st) -> Json {
            return {{"class", "comm_ae"}, {"labels", st.labels}};
          },
          [](const QuantumCommBE& st) -> Json {
            return {{"class", "comm_be"}, {"labels", st.labels}};
          },
      },
      step);
}

ProtocolStep step_from_json(const Json& j) {
  const std::string cls = as<std::string>(field(j, "class"), "class");
  if (cls == "local_a") {
    return LocalA{channel_from_json(field(j, "channel")), labels_from_json(field(j, "inputs")),
                  dims_from_json(field(j, "outputs"))};
  }
  if (cls == "local_b") {
    return LocalB{channel_from_json(field(j, "channel")), labels_from_json(field(j, "inputs")),
                  dims_from_json(field(j, "outputs"))};
  }
  if (cls == "reversible_e") return reversible_from_json(j);
  if (cls == "broadcast_a") return broadcast_from_json<Party::kA>(j);
  if (cls == "broadcast_b") return broadcast_from_json<Party::kB>(j);
  if (cls == "comm_ae") return QuantumCommAE{labels_from_json(field(j, "labels"))};
  if (cls == "comm_be") return QuantumCommBE{labels_from_json(field(j, "labels"))};
  throw ParseError("unknown step class '" + cls + "'");
}

Json protocol_to_json(const Protocol& p, const std::optional<ReversibleE>& witness) {
  Json steps = Json::array();
  for (const auto& s : p.steps) steps.push_back(step_to_json(s));
  Json out = {{"steps", steps}};
  if (witness) out["witness"] = reversible_to_json(*witness);
  return out;
}

Protocol protocol_from_json(const Json& j) {
  const Json& steps = field(j, "steps");
  if (!steps.is_array()) throw ParseError("steps must be a list");
  Protocol p;
  for (const auto& s : steps) p.steps.push_back(step_from_json(s));
  return p;
}

std::optional<ReversibleE> witness_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("witness")) return std::nullopt;
  return reversible_from_json(j.at("witness"));
}

Json dist_to_json(const ClassicalDist& p) {
  return {{"sizes", {p.nx(), p.ny(), p.nz()}}, {"p", p.table()}};
}

ClassicalDist dist_from_json(const Json& j) {
  const Json& sizes = field(j, "sizes");
  if (!sizes.is_array() || sizes.size() != 3) throw ParseError("sizes must list |X|, |Y|, |Z|");
  return ClassicalDist(as<int>(sizes[0], "sizes"), as<int>(sizes[1], "sizes"),
                       as<int>(sizes[2], "sizes"),
                       as<std::vector<double>>(field(j, "p"), "p"));
}

Json estimate_to_json(const MonotoneEstimate& e) {
  return {{"value", e.value},
          {"converged", e.converged},
          {"iterations", e.iterations},
          {"evaluations", e.evaluations},
          {"restart", e.restart}};
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return Json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << j.dump(2) << "\n";
}

}  // namespace qmarkov

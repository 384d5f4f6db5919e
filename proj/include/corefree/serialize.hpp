#pragma once

// JSON and DOT encodings.
//
//   Word            [[index, exponent], ...]  (syllables; a text word is also accepted)
//   presentation    {"rank", "generators": [word, ...]}
//   folded graph    {"rank", "basepoint": 0, "vertices", "edges": [{"from","to","label"}, ...]}
//   certificate     {"rank", "original_generators", "moves": [[i,k], ...], "basis",
//                    "transformed_generators", "m0",
//                    "trace": [{"i","k","L_before","L_after","core_vertices"}, ...]}
//   function        {"support": [[m, "p/q"], ...]}   (m > 0)
//   split qm        {"rank", "factors": [function, ...]}
//   relative qm     {"certificate": certificate, "factors": [function, ...]}

#include <json.hpp>

#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "corefree/error.hpp"
#include "corefree/nielsen.hpp"
#include "corefree/quasimorphism.hpp"
#include "corefree/rational.hpp"
#include "corefree/relative.hpp"
#include "corefree/stallings.hpp"
#include "corefree/text.hpp"
#include "corefree/word.hpp"

namespace corefree {

using Json = nlohmann::ordered_json;

namespace detail {

inline const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorKind::malformed_input, std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

template <class T>
T as(const Json& j, const char* what) {
  try {
    return j.get<T>();
  } catch (const nlohmann::json::exception&) {
    throw Error(ErrorKind::malformed_input, std::string("bad value for ") + what);
  }
}

inline const Json& array_field(const Json& j, const char* key) {
  const Json& a = field(j, key);
  if (!a.is_array()) throw Error(ErrorKind::malformed_input, std::string(key) + " must be an array");
  return a;
}

}  // namespace detail

// Words ---------------------------------------------------------------------

inline Json to_json(const Word& w) {
  Json out = Json::array();
  for (const Syllable& s : syllables(w)) out.push_back(Json::array({s.index, s.exponent}));
  return out;
}

inline Word word_from_json(const Json& j, std::size_t rank) {
  if (j.is_string()) return parse_word(j.get<std::string>(), rank);
  if (!j.is_array()) throw Error(ErrorKind::malformed_input, "word must be an array or a string");
  SyllableForm form;
  for (const Json& s : j) {
    if (!s.is_array() || s.size() != 2) {
      throw Error(ErrorKind::malformed_input, "syllable must be [index, exponent]");
    }
    const auto i = detail::as<std::int64_t>(s[0], "syllable index");
    const auto e = detail::as<std::int64_t>(s[1], "syllable exponent");
    if (i < 1 || static_cast<std::size_t>(i) > rank) {
      throw Error(ErrorKind::out_of_range, "syllable index " + std::to_string(i) +
                                               " outside [1, " + std::to_string(rank) + "]");
    }
    if (e > kMaxParsedExponent || e < -kMaxParsedExponent) {
      throw Error(ErrorKind::malformed_input, "syllable exponent too large");
    }
    form.push_back(Syllable{static_cast<Label>(i), e});
  }
  return expand(rank, form);
}

inline Json to_json(const std::vector<Word>& words) {
  Json out = Json::array();
  for (const Word& w : words) out.push_back(to_json(w));
  return out;
}

inline std::vector<Word> words_from_json(const Json& j, std::size_t rank) {
  if (!j.is_array()) throw Error(ErrorKind::malformed_input, "expected an array of words");
  std::vector<Word> out;
  for (const Json& w : j) out.push_back(word_from_json(w, rank));
  return out;
}

inline std::size_t rank_from_json(const Json& j) {
  const auto r = detail::as<std::int64_t>(detail::field(j, "rank"), "rank");
  if (r < 1) throw Error(ErrorKind::malformed_input, "rank must be positive");
  return static_cast<std::size_t>(r);
}

// Presentations and graphs --------------------------------------------------

inline Json to_json(const SubgroupPresentation& p) {
  Json out;
  out["rank"] = p.rank();
  out["generators"] = to_json(p.generators());
  return out;
}

inline SubgroupPresentation presentation_from_json(const Json& j) {
  const std::size_t n = rank_from_json(j);
  return SubgroupPresentation(n, words_from_json(detail::array_field(j, "generators"), n));
}

inline Json edges_to_json(const std::vector<Edge>& edges) {
  Json out = Json::array();
  for (const Edge& e : edges) {
    Json je;
    je["from"] = e.from;
    je["to"] = e.to;
    je["label"] = e.label;
    out.push_back(je);
  }
  return out;
}

inline Json to_json(const FoldedGraph& g) {
  Json out;
  out["rank"] = g.rank();
  out["basepoint"] = g.basepoint();
  out["vertices"] = g.vertex_count();
  out["edges"] = edges_to_json(g.edges());
  return out;
}

inline FoldedGraph graph_from_json(const Json& j) {
  const std::size_t n = rank_from_json(j);
  const auto count = detail::as<std::int64_t>(detail::field(j, "vertices"), "vertices");
  const auto base = j.contains("basepoint") ? detail::as<std::int64_t>(j.at("basepoint"), "basepoint")
                                            : std::int64_t{0};
  if (count < 1 || base < 0 || base >= count) {
    throw Error(ErrorKind::malformed_input, "graph needs vertices and a basepoint among them");
  }
  std::vector<Edge> edges;
  for (const Json& e : detail::array_field(j, "edges")) {
    const auto from = detail::as<std::int64_t>(detail::field(e, "from"), "edge.from");
    const auto to = detail::as<std::int64_t>(detail::field(e, "to"), "edge.to");
    const auto label = detail::as<std::int64_t>(detail::field(e, "label"), "edge.label");
    if (from < 0 || to < 0 || label < 1) throw Error(ErrorKind::malformed_input, "edge out of range");
    edges.push_back(Edge{static_cast<Vertex>(from), static_cast<Vertex>(to), static_cast<Label>(label)});
  }
  return FoldedGraph::from_edges(n, static_cast<std::size_t>(count), edges,
                                 static_cast<Vertex>(base));
}

inline Json to_json(const CoreGraph& c) {
  Json out;
  out["rank"] = c.rank();
  out["vertices"] = c.vertices();
  if (c.attachment() == kNoVertex) {
    out["attachment"] = nullptr;
  } else {
    out["attachment"] = c.attachment();
  }
  out["edges"] = edges_to_json(c.edges());
  return out;
}

inline std::string export_json(const FoldedGraph& g) { return to_json(g).dump(2); }

/// Graphviz rendering; edges carry label="x<i>". Works for FoldedGraph and
/// CoreGraph.
template <class Graph>
std::string export_dot(const Graph& g, const std::string& name = "G") {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  out << "  rankdir=LR;\n";
  for (Vertex v : g.vertices()) {
    out << "  " << v;
    if (v == 0) out << " [shape=doublecircle]";
    out << ";\n";
  }
  for (const Edge& e : g.edges()) {
    out << "  " << e.from << " -> " << e.to << " [label=\"x" << e.label << "\"];\n";
  }
  out << "}\n";
  return out.str();
}

// Certificates --------------------------------------------------------------

inline Json to_json(const BasisCertificate& c) {
  Json out;
  out["rank"] = c.rank;
  out["original_generators"] = to_json(c.original_generators);
  Json moves = Json::array();
  for (const auto& m : c.psi.moves()) moves.push_back(Json::array({m.i, m.k}));
  out["moves"] = moves;
  out["basis"] = to_json(c.basis);
  out["transformed_generators"] = to_json(c.transformed_generators);
  out["m0"] = c.m0;
  Json trace = Json::array();
  for (const TraceEntry& t : c.trace) {
    Json e;
    e["i"] = t.i;
    e["k"] = t.k;
    e["L_before"] = t.loops_before;
    e["L_after"] = t.loops_after;
    e["core_vertices"] = t.core_vertices;
    trace.push_back(e);
  }
  out["trace"] = trace;
  return out;
}

inline BasisCertificate certificate_from_json(const Json& j) {
  BasisCertificate c;
  c.rank = rank_from_json(j);
  c.original_generators = words_from_json(detail::array_field(j, "original_generators"), c.rank);
  std::vector<ElementaryMove> moves;
  for (const Json& m : detail::array_field(j, "moves")) {
    if (!m.is_array() || m.size() != 2) throw Error(ErrorKind::malformed_input, "move must be [i, k]");
    const auto i = detail::as<std::int64_t>(m[0], "move label");
    const auto k = detail::as<std::int64_t>(m[1], "move exponent");
    if (i < 1 || static_cast<std::size_t>(i) > c.rank || k == 0) {
      throw Error(ErrorKind::malformed_input, "move out of range");
    }
    moves.push_back(ElementaryMove{static_cast<Label>(i), k});
  }
  c.psi = Automorphism(std::move(moves));
  c.basis = words_from_json(detail::array_field(j, "basis"), c.rank);
  if (c.basis.size() != c.rank) {
    throw Error(ErrorKind::malformed_input, "basis must have one word per generator");
  }
  c.transformed_generators =
      words_from_json(detail::array_field(j, "transformed_generators"), c.rank);
  c.m0 = detail::as<std::int64_t>(detail::field(j, "m0"), "m0");
  if (c.m0 < 1) throw Error(ErrorKind::malformed_input, "m0 must be positive");
  if (j.contains("trace")) {
    for (const Json& e : detail::array_field(j, "trace")) {
      TraceEntry t;
      t.i = detail::as<std::size_t>(detail::field(e, "i"), "trace.i");
      t.k = detail::as<std::int64_t>(detail::field(e, "k"), "trace.k");
      t.loops_before = detail::as<std::size_t>(detail::field(e, "L_before"), "trace.L_before");
      t.loops_after = detail::as<std::size_t>(detail::field(e, "L_after"), "trace.L_after");
      t.core_vertices = detail::as<std::size_t>(detail::field(e, "core_vertices"), "trace.core_vertices");
      c.trace.push_back(t);
    }
  }
  return c;
}

// Quasimorphisms ------------------------------------------------------------

inline Json to_json(const AlternatingFunction& f) {
  Json support = Json::array();
  for (const auto& [m, v] : f.values()) support.push_back(Json::array({m, format_rational(v)}));
  Json out;
  out["support"] = support;
  return out;
}

inline AlternatingFunction function_from_json(const Json& j) {
  AlternatingFunction f;
  for (const Json& entry : detail::array_field(j, "support")) {
    if (!entry.is_array() || entry.size() != 2) {
      throw Error(ErrorKind::malformed_input, "support entry must be [m, \"p/q\"]");
    }
    const auto m = detail::as<std::int64_t>(entry[0], "support key");
    if (m <= 0) throw Error(ErrorKind::malformed_input, "support keys must be positive");
    const Rational v = entry[1].is_string() ? parse_rational(entry[1].get<std::string>())
                                            : Rational(detail::as<std::int64_t>(entry[1], "value"));
    f.set(m, v);
  }
  return f;
}

inline Json to_json(const std::vector<AlternatingFunction>& fs) {
  Json out = Json::array();
  for (const auto& f : fs) out.push_back(to_json(f));
  return out;
}

inline std::vector<AlternatingFunction> functions_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorKind::malformed_input, "factors must be an array");
  std::vector<AlternatingFunction> out;
  for (const Json& f : j) out.push_back(function_from_json(f));
  return out;
}

inline Json to_json(const SplitQM& q) {
  Json out;
  out["rank"] = q.rank();
  out["factors"] = to_json(q.factors());
  return out;
}

inline SplitQM split_from_json(const Json& j) {
  const std::size_t n = rank_from_json(j);
  return SplitQM(n, functions_from_json(detail::field(j, "factors")));
}

inline Json to_json(const RelativeQM& r) {
  Json out;
  out["certificate"] = to_json(r.certificate);
  out["factors"] = to_json(r.base_factors());
  return out;
}

inline RelativeQM relative_from_json(const Json& j) {
  return make_relative_qm(certificate_from_json(detail::field(j, "certificate")),
                          functions_from_json(detail::field(j, "factors")));
}

}  // namespace corefree

#include "nqc/json_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "nqc/error.hpp"

namespace nqc {

Json parse_json_text(std::string_view text, std::string_view source) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string(source) + ": malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

namespace {

const Json& field(const Json& j, const char* name, const char* what) {
  if (!j.is_object()) throw ParseError(std::string(what) + ": expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(std::string(what) + ": missing field \"" + name + "\"");
  return *it;
}

std::size_t to_size(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) {
    throw ParseError(std::string(what) + ": expected a nonnegative integer, got " + j.dump());
  }
  return j.get<std::size_t>();
}

std::vector<std::size_t> to_sizes(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + ": expected an array of integers");
  std::vector<std::size_t> out;
  for (const auto& x : j) out.push_back(to_size(x, what));
  return out;
}

Rational rational_from_json(const Json& j) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return parse_rational(std::to_string(j.get<long long>()));
  } catch (const ArgumentError& e) {
    throw ParseError(std::string("rational: ") + e.what());
  }
  throw ParseError("rational: expected a \"p/q\" string or an integer, got " + j.dump());
}

Vector vector_from_json(const Json& j, std::size_t expected) {
  if (!j.is_array() || j.size() != expected) {
    throw ParseError("certificate: factor vector must have length " + std::to_string(expected));
  }
  Vector v;
  for (const auto& x : j) v.push_back(scalar_from_json(x));
  return v;
}

}  // namespace

Json scalar_to_json(const Scalar& s) {
  return Json{{"re", format_rational(s.re())}, {"im", format_rational(s.im())}};
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_object()) {
    const Rational re = rational_from_json(field(j, "re", "scalar"));
    const Rational im = j.contains("im") ? rational_from_json(j.at("im")) : Rational(0);
    return Scalar(re, im);
  }
  return Scalar(rational_from_json(j));
}

Json eps_scalar_to_json(const EpsScalar& s) {
  Json out = Json::array();
  for (const auto& c : s.coefficients()) out.push_back(scalar_to_json(c));
  return out;
}

EpsScalar eps_scalar_from_json(const Json& j) {
  if (!j.is_array()) return EpsScalar(scalar_from_json(j));
  std::vector<Scalar> coeffs;
  for (const auto& c : j) coeffs.push_back(scalar_from_json(c));
  return EpsScalar(std::move(coeffs));
}

namespace {

template <class Coef, class Emit>
Json tensor_json(const BasicTensor<Coef>& t, const char* ring, Emit emit) {
  Json entries = Json::array();
  for (const auto& [idx, c] : t.entries()) entries.push_back(Json{{"idx", idx}, {"coef", emit(c)}});
  return Json{{"shape", t.shape()}, {"ring", ring}, {"entries", std::move(entries)}};
}

template <class Coef, class Parse>
BasicTensor<Coef> tensor_parse(const Json& j, Parse parse) {
  BasicTensor<Coef> t(to_sizes(field(j, "shape", "tensor"), "tensor shape"));
  const Json& entries = field(j, "entries", "tensor");
  if (!entries.is_array()) throw ParseError("tensor: \"entries\" must be an array");
  std::size_t n = 0;
  for (const auto& e : entries) {
    const MultiIndex idx = to_sizes(field(e, "idx", "tensor entry"), "tensor index");
    const Coef c = parse(field(e, "coef", "tensor entry"));
    const std::string where = "tensor entry " + std::to_string(n++);
    if (!t.in_bounds(idx)) throw ParseError(where + ": index " + format_index(idx) + " outside the shape");
    if (c.is_zero()) throw ParseError(where + ": zero coefficients must be omitted");
    if (!t.at(idx).is_zero()) throw ParseError(where + ": duplicate index " + format_index(idx));
    t.set(idx, c);
  }
  return t;
}

}  // namespace

Json tensor_to_json(const Tensor& t) { return tensor_json(t, "Q_i", scalar_to_json); }
Json tensor_to_json(const EpsTensor& t) { return tensor_json(t, "Q_i_eps", eps_scalar_to_json); }

AnyTensor any_tensor_from_json(const Json& j) {
  const Json& ring = field(j, "ring", "tensor");
  if (ring == "Q_i") return tensor_parse<Scalar>(j, scalar_from_json);
  if (ring == "Q_i_eps") return tensor_parse<EpsScalar>(j, eps_scalar_from_json);
  throw ParseError("tensor: unknown ring " + ring.dump());
}

Tensor tensor_from_json(const Json& j) {
  AnyTensor t = any_tensor_from_json(j);
  if (auto* plain = std::get_if<Tensor>(&t)) return std::move(*plain);
  throw RingError("tensor: expected ring Q_i, got Q_i_eps");
}

Json certificate_to_json(const RankCertificate& c) {
  Json factors = Json::array();
  for (const auto& term : c.terms) {
    Json parties = Json::array();
    for (const auto& v : term) {
      Json vec = Json::array();
      for (const auto& x : v) vec.push_back(scalar_to_json(x));
      parties.push_back(std::move(vec));
    }
    factors.push_back(std::move(parties));
  }
  return Json{{"kind", "rank"}, {"h", 0}, {"shape", c.shape}, {"factors", std::move(factors)}};
}

Json certificate_to_json(const BorderCertificate& c) {
  Json factors = Json::array();
  for (const auto& term : c.terms) {
    Json parties = Json::array();
    for (const auto& v : term) {
      Json vec = Json::array();
      for (const auto& x : v) vec.push_back(eps_scalar_to_json(x));
      parties.push_back(std::move(vec));
    }
    factors.push_back(std::move(parties));
  }
  return Json{{"kind", "border"}, {"h", c.h}, {"shape", c.shape}, {"factors", std::move(factors)}};
}

AnyCertificate certificate_from_json(const Json& j) {
  const Json& kind = field(j, "kind", "certificate");
  const Shape shape = to_sizes(field(j, "shape", "certificate"), "certificate shape");
  const Json& factors = field(j, "factors", "certificate");
  if (!factors.is_array()) throw ParseError("certificate: \"factors\" must be an array");
  for (const auto& term : factors) {
    if (!term.is_array() || term.size() != shape.size()) {
      throw ParseError("certificate: every term needs one vector per party");
    }
  }
  if (kind == "rank") {
    RankCertificate c{shape, {}};
    for (const auto& term : factors) {
      SimpleTerm t;
      for (std::size_t i = 0; i < shape.size(); ++i) t.push_back(vector_from_json(term[i], shape[i]));
      c.terms.push_back(std::move(t));
    }
    return c;
  }
  if (kind == "border") {
    BorderCertificate c{shape, to_size(field(j, "h", "certificate"), "certificate h"), {}};
    for (const auto& term : factors) {
      EpsSimpleTerm t;
      for (std::size_t i = 0; i < shape.size(); ++i) {
        if (!term[i].is_array() || term[i].size() != shape[i]) {
          throw ParseError("certificate: factor vector must have length " + std::to_string(shape[i]));
        }
        EpsVector v;
        for (const auto& x : term[i]) v.push_back(eps_scalar_from_json(x));
        t.push_back(std::move(v));
      }
      c.terms.push_back(std::move(t));
    }
    return c;
  }
  throw ParseError("certificate: unknown kind " + kind.dump());
}

Json graph_to_json(const Multigraph& g) {
  Json edges = Json::array();
  for (const auto& [a, b] : g.edges) edges.push_back(Json::array({a, b}));
  return Json{{"vertices", g.vertex_count}, {"edges", std::move(edges)}};
}

Multigraph graph_from_json(const Json& j) {
  Multigraph g;
  g.vertex_count = to_size(field(j, "vertices", "graph"), "graph vertices");
  const Json& edges = field(j, "edges", "graph");
  if (!edges.is_array()) throw ParseError("graph: \"edges\" must be an array");
  for (const auto& e : edges) {
    const auto ends = to_sizes(e, "graph edge");
    if (ends.size() != 2) throw ParseError("graph: every edge needs two endpoints");
    g.edges.emplace_back(ends[0], ends[1]);
  }
  try {
    g.validate();
  } catch (const ArgumentError& e) {
    throw ParseError(std::string("graph: ") + e.what());
  }
  return g;
}

Json function_table_to_json(const FunctionTable& f) {
  Json ones = Json::array();
  for (const auto& x : f.ones) ones.push_back(x);
  return Json{{"dims", f.dims}, {"ones", std::move(ones)}};
}

FunctionTable function_table_from_json(const Json& j) {
  FunctionTable f;
  f.dims = to_sizes(field(j, "dims", "function table"), "function dims");
  const Json& ones = field(j, "ones", "function table");
  if (!ones.is_array()) throw ParseError("function table: \"ones\" must be an array");
  for (const auto& x : ones) f.ones.insert(to_sizes(x, "function input"));
  try {
    f.validate();
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  }
  return f;
}

Json block_spec_to_json(const BlockSpec& s) { return Json{{"blocks", s.blocks}, {"r", s.r}}; }

BlockSpec block_spec_from_json(const Json& j) {
  BlockSpec s;
  const Json& blocks = field(j, "blocks", "block spec");
  if (!blocks.is_array()) throw ParseError("block spec: \"blocks\" must be an array");
  for (const auto& b : blocks) {
    std::vector<std::uint64_t> dims;
    for (std::size_t d : to_sizes(b, "block dims")) dims.push_back(d);
    s.blocks.push_back(std::move(dims));
  }
  s.r = to_size(field(j, "r", "block spec"), "block spec r");
  return s;
}

Json alpha_table_to_json(const AlphaTable& a) {
  Json values = Json::array();
  for (const auto& v : a.values) values.push_back(scalar_to_json(v));
  return Json{{"n", a.n}, {"alphas", std::move(values)}};
}

AlphaTable alpha_table_from_json(const Json& j) {
  AlphaTable a;
  a.n = to_size(field(j, "n", "alpha table"), "alpha table n");
  const Json& values = field(j, "alphas", "alpha table");
  if (!values.is_array()) throw ParseError("alpha table: \"alphas\" must be an array");
  for (const auto& v : values) a.values.push_back(scalar_from_json(v));
  try {
    a.validate();
  } catch (const ArgumentError& e) {
    throw ParseError(e.what());
  }
  return a;
}

std::string format_real(double x) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw Error("format_real: conversion failed");
  return std::string(buf, end);
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace nqc

#include "pcalc/io.hpp"

#include <algorithm>
#include <cctype>

#include "pcalc/error.hpp"

namespace pcalc {

std::string canonical_dump(const Json& doc) { return doc.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

namespace {

template <Generators G>
Json graded_to_json(const Graded<G>& a) {
  const auto& t = *a.table();
  Json doc;
  doc["kind"] = G == Generators::vectors ? "multivector" : "form";
  doc["coordinates"] = t.coordinates();
  doc["parameters"] = t.parameters();
  doc["degree"] = a.degree();
  Json terms = Json::array();
  for (const auto& [b, c] : a.terms()) {
    Json idx = Json::array();
    for (auto k : blade_indices(b)) idx.push_back(k + 1);
    for (const auto& [e, v] : c.terms()) {
      Json ex = Json::object();
      for (std::size_t s = 0; s < e.size(); ++s)
        if (e[s] != 0) ex[t.name(s)] = e[s];
      terms.push_back({{"coeff", v.str()}, {"exponents", ex}, {"indices", idx}});
    }
  }
  doc["terms"] = terms;
  return doc;
}

const Json& field(const Json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) throw ParseError(std::string("missing field '") + name + "'");
  return doc.at(name);
}

std::vector<std::string> string_list(const Json& doc, const char* name) {
  if (!doc.contains(name)) return {};
  const Json& v = doc.at(name);
  if (!v.is_array()) throw ParseError(std::string("field '") + name + "' must be a list");
  std::vector<std::string> out;
  for (const auto& s : v) {
    if (!s.is_string()) throw ParseError(std::string("field '") + name + "' must list strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

long integer(const Json& v, const char* what) {
  if (!v.is_number_integer()) throw ParseError(std::string(what) + " must be an integer");
  return v.get<long>();
}

std::string text(const Json& v, const char* what) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long>());
  throw ParseError(std::string(what) + " must be a string");
}

TablePtr table_from(const Json& doc) {
  try {
    return make_table(string_list(doc, "coordinates"), string_list(doc, "parameters"));
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
}

template <Generators G>
Graded<G> graded_from_json(const Json& doc, const char* kind) {
  if (document_kind(doc) != kind) throw ParseError(std::string("expected a ") + kind + " document");
  if (!field(doc, "coordinates").is_array()) throw ParseError("field 'coordinates' must be a list");
  TablePtr table = table_from(doc);
  const long degree = integer(field(doc, "degree"), "degree");
  if (degree < 0 || degree > static_cast<long>(table->num_coordinates())) throw ParseError("degree out of range");
  Graded<G> out(table, static_cast<int>(degree));
  const Json& terms = field(doc, "terms");
  if (!terms.is_array()) throw ParseError("field 'terms' must be a list");
  for (const auto& term : terms) {
    const GaussRational c = parse_scalar(text(field(term, "coeff"), "coeff"));
    Exponents e(table->size(), 0);
    const Json& ex = field(term, "exponents");
    if (!ex.is_object()) throw ParseError("exponents must be a map");
    for (const auto& [name, power] : ex.items()) {
      auto slot = table->slot_of(name);
      if (!slot) throw ParseError("unknown variable '" + name + "'");
      const long p = integer(power, "exponent");
      if (p < 0) throw ParseError("negative exponent");
      e[*slot] = static_cast<std::uint32_t>(p);
    }
    std::vector<std::size_t> idx;
    const Json& ij = field(term, "indices");
    if (!ij.is_array()) throw ParseError("indices must be a list");
    for (const auto& k : ij) {
      const long v = integer(k, "index");
      if (v < 1 || v > static_cast<long>(table->num_coordinates())) throw ParseError("index out of range");
      if (!idx.empty() && static_cast<std::size_t>(v - 1) <= idx.back())
        throw ParseError("indices must be strictly increasing");
      idx.push_back(static_cast<std::size_t>(v - 1));
    }
    if (static_cast<long>(idx.size()) != degree) throw ParseError("term has the wrong number of indices");
    out.add(make_blade(idx), Polynomial::monomial(table, e, c));
  }
  return out;
}

}  // namespace

Json to_json(const Multivector& a) { return graded_to_json(a); }
Json to_json(const DifferentialForm& w) { return graded_to_json(w); }

Json to_json(const PoissonStructure& pi) {
  Json doc = graded_to_json(pi.bivector());
  doc["integrable"] = integrability_name(pi.integrability());
  return doc;
}

std::string document_kind(const Json& doc) {
  if (!doc.is_object()) throw ParseError("document must be a JSON object");
  if (doc.contains("kind")) {
    if (!doc.at("kind").is_string()) throw ParseError("field 'kind' must be a string");
    return doc.at("kind").get<std::string>();
  }
  if (doc.contains("entries")) return "diagonal";
  if (doc.contains("base")) return "family";
  throw ParseError("cannot tell the document kind");
}

Multivector multivector_from_json(const Json& doc) { return graded_from_json<Generators::vectors>(doc, "multivector"); }
DifferentialForm form_from_json(const Json& doc) { return graded_from_json<Generators::forms>(doc, "form"); }

PoissonStructure poisson_from_json(const Json& doc) {
  Multivector a = multivector_from_json(doc);
  if (a.degree() != 2) throw ParseError("a Poisson structure needs degree 2");
  PoissonStructure pi(std::move(a));
  if (doc.contains("integrable")) {
    const std::string claim = text(doc.at("integrable"), "integrable");
    if (claim != "true" && claim != "false" && claim != "unknown")
      throw ParseError("integrable must be true, false or unknown");
    if (claim != "unknown") {
      jacobi_check(pi);
      if (claim != integrability_name(pi.integrability())) throw ParseError("integrable flag contradicts [Pi, Pi]");
    }
  }
  return pi;
}

Json to_json(const DiagonalSpec& spec) {
  Json doc;
  doc["kind"] = "diagonal";
  doc["n"] = spec.n();
  doc["coordinates"] = spec.table()->coordinates();
  doc["parameters"] = spec.table()->parameters();
  Json entries = Json::array();
  for (std::size_t i = 0; i < spec.n(); ++i)
    for (std::size_t j = i + 1; j < spec.n(); ++j)
      entries.push_back({{"i", i + 1}, {"j", j + 1}, {"value", spec.lambda(i, j).str()}});
  doc["entries"] = entries;
  return doc;
}

namespace {

std::vector<std::string> identifiers(const std::string& s) {
  std::vector<std::string> out;
  for (std::size_t p = 0; p < s.size();) {
    const auto c = static_cast<unsigned char>(s[p]);
    if (std::isalpha(c) || c == '_') {
      std::size_t q = p;
      while (q < s.size() && (std::isalnum(static_cast<unsigned char>(s[q])) || s[q] == '_')) ++q;
      out.push_back(s.substr(p, q - p));
      p = q;
    } else if (std::isdigit(c) || c == '.') {
      // skip numbers, including exponents such as 1e-3
      while (p < s.size() && (std::isalnum(static_cast<unsigned char>(s[p])) || s[p] == '.')) ++p;
    } else {
      ++p;
    }
  }
  return out;
}

}  // namespace

DiagonalSpec diagonal_from_json(const Json& doc) {
  if (document_kind(doc) != "diagonal") throw ParseError("expected a diagonal document");
  const long n = integer(field(doc, "n"), "n");
  if (n < 0 || n > 32) throw ParseError("n out of range");
  const Json& entries = field(doc, "entries");
  if (!entries.is_array()) throw ParseError("field 'entries' must be a list");

  std::vector<std::string> coords = string_list(doc, "coordinates");
  if (!doc.contains("coordinates"))
    for (long k = 1; k <= n; ++k) coords.push_back("x" + std::to_string(k));
  if (static_cast<long>(coords.size()) != n) throw ParseError("coordinate count differs from n");
  std::vector<std::string> params = string_list(doc, "parameters");
  if (!doc.contains("parameters")) {
    for (const auto& e : entries)
      for (const auto& id : identifiers(text(field(e, "value"), "value")))
        if (id != "i" && std::find(params.begin(), params.end(), id) == params.end()) params.push_back(id);
  }
  TablePtr table;
  try {
    table = make_table(coords, params);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }

  const std::size_t N = static_cast<std::size_t>(n);
  std::vector<Polynomial> upper(N < 2 ? 0 : N * (N - 1) / 2, Polynomial(table));
  std::vector<bool> seen(upper.size(), false);
  for (const auto& e : entries) {
    const long i = integer(field(e, "i"), "i"), j = integer(field(e, "j"), "j");
    if (i < 1 || j <= i || j > n) throw ParseError("entries need 1 <= i < j <= n");
    const std::size_t a = static_cast<std::size_t>(i - 1), b = static_cast<std::size_t>(j - 1);
    const std::size_t pos = a * N - a * (a + 1) / 2 + (b - a - 1);
    if (seen[pos]) throw ParseError("duplicate entry (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    seen[pos] = true;
    upper[pos] = parse_polynomial(text(field(e, "value"), "value"), table);
    if (!upper[pos].is_coordinate_free()) throw ParseError("lambda values must not involve coordinates");
  }
  return DiagonalSpec(table, std::move(upper));
}

Json to_json(const DeformationFamily& family) {
  Json doc;
  doc["kind"] = "family";
  doc["base"] = to_json(family.base());
  doc["parameter"] = family.parameter();
  Json path = Json::array();
  for (const auto& s : family.path()) {
    Json step;
    step["kind"] = kind_name(s.kind);
    if (s.kind == ElementaryAutomorphism::Kind::scaling) {
      Json scales = Json::array();
      for (const auto& v : s.scales) scales.push_back(v.str());
      step["data"] = scales;
    } else {
      step["coordinate"] = s.coordinate + 1;
      step["data"] = s.data.str();
    }
    path.push_back(step);
  }
  doc["path"] = path;
  return doc;
}

DeformationFamily family_from_json(const Json& doc) {
  if (document_kind(doc) != "family") throw ParseError("expected a family document");
  DiagonalSpec base = diagonal_from_json(field(doc, "base"));
  const std::string parameter = doc.contains("parameter") ? text(doc.at("parameter"), "parameter") : "t";
  TablePtr table;
  try {
    table = DeformationFamily::family_table(base, parameter);
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  std::vector<ElementaryAutomorphism> path;
  const Json& steps = doc.contains("path") ? doc.at("path") : Json::array();
  if (!steps.is_array()) throw ParseError("field 'path' must be a list");
  for (const auto& s : steps) {
    const std::string kind = text(field(s, "kind"), "kind");
    ElementaryAutomorphism e{ElementaryAutomorphism::Kind::translation, 0, Polynomial(table), {}};
    if (kind == "scaling") {
      e.kind = ElementaryAutomorphism::Kind::scaling;
      const Json& data = field(s, "data");
      if (!data.is_array()) throw ParseError("scaling data must list one factor per coordinate");
      for (const auto& v : data) e.scales.push_back(parse_scalar(text(v, "scale")));
    } else if (kind == "translation" || kind == "shear") {
      e.kind = kind == "shear" ? ElementaryAutomorphism::Kind::shear : ElementaryAutomorphism::Kind::translation;
      const long c = integer(field(s, "coordinate"), "coordinate");
      if (c < 1 || c > static_cast<long>(base.n())) throw ParseError("coordinate out of range");
      e.coordinate = static_cast<std::size_t>(c - 1);
      e.data = parse_polynomial(text(field(s, "data"), "data"), table);
    } else {
      throw ParseError("unknown automorphism kind '" + kind + "'");
    }
    path.push_back(std::move(e));
  }
  return DeformationFamily(std::move(base), std::move(path), parameter);
}

namespace {

Json complex_json(Complex z) { return Json::array({z.real(), z.imag()}); }

}  // namespace

Json to_json(const TrackResult& r, const TrackOptions& o) {
  Json doc;
  doc["t"] = complex_json(r.t);
  Json gamma = Json::array();
  for (const auto& z : r.gamma) gamma.push_back(complex_json(z));
  doc["gamma"] = gamma;
  doc["residual"] = r.residual;
  doc["jet0"] = r.jet0;
  doc["jet1"] = r.jet1;
  doc["newton_iters"] = r.newton_iters;
  doc["continuation_steps"] = r.continuation_steps;
  doc["lipschitz"] = r.lipschitz;
  doc["certified"] = r.certified(o);
  return doc;
}

}  // namespace pcalc

#include "smith/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace smith::io {

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    // nlohmann prefixes "[json.exception...] parse error at line l, column c: "
    std::string what = e.what();
    const auto cut = what.find(": ", what.find("parse error"));
    if (cut != std::string::npos) what = what.substr(cut + 2);
    throw MalformedInput(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + what);
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MalformedInput(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& msg) {
  throw MalformedInput(field + ": " + msg);
}

const Json& member(const Json& j, const std::string& key, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) fail(field.empty() ? key : field + "." + key, "missing");
  return *it;
}

std::int64_t as_int(const Json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "expected an integer");
  return j.get<std::int64_t>();
}

Rational as_rational(const Json& j, const std::string& field) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) fail(field, "expected a rational string \"num/den\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const MalformedInput& e) {
    fail(field, e.what());
  }
}

Prime as_prime(const Json& j, const std::string& field) {
  const std::int64_t p = as_int(j, field);
  try {
    return Prime(p);
  } catch (const NotPrime& e) {
    fail(field, e.what());
  }
}

FpMatrix triplets(const Json& j, const std::string& field, Prime p,
                  const std::vector<Generator>& gens) {
  const auto n = static_cast<Index>(gens.size());
  FpMatrix out(p, n, n);
  if (!j.is_array()) fail(field, "expected an array of [row_id, col_id, value]");
  auto index = [&](const Json& id, const std::string& where) -> Index {
    if (!id.is_string()) fail(where, "expected a generator id");
    for (Index i = 0; i < n; ++i)
      if (gens[static_cast<std::size_t>(i)].id == id.get<std::string>()) return i;
    fail(where, "unknown generator id \"" + id.get<std::string>() + "\"");
  };
  for (std::size_t k = 0; k < j.size(); ++k) {
    const std::string where = field + "[" + std::to_string(k) + "]";
    const Json& t = j[k];
    if (!t.is_array() || t.size() != 3) fail(where, "expected [row_id, col_id, value]");
    out.add_to(index(t[0], where + "[0]"), index(t[1], where + "[1]"), as_int(t[2], where + "[2]"));
  }
  return out;
}

Json triplets_to_json(const FpMatrix& m, const std::vector<Generator>& gens) {
  Json out = Json::array();
  for (Index c = 0; c < m.cols(); ++c)
    for (Index r = 0; r < m.rows(); ++r)
      if (m(r, c) != 0)
        out.push_back({gens[static_cast<std::size_t>(r)].id, gens[static_cast<std::size_t>(c)].id, m(r, c)});
  return out;
}

std::vector<Generator> generators(const Json& j) {
  const Json& list = member(j, "generators", "");
  if (!list.is_array()) fail("generators", "expected an array");
  std::vector<Generator> gens;
  std::set<std::string> ids;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string where = "generators[" + std::to_string(k) + "]";
    const Json& g = list[k];
    const Json& id = member(g, "id", where);
    if (!id.is_string()) fail(where + ".id", "expected a string");
    if (!ids.insert(id.get<std::string>()).second)
      fail(where + ".id", "duplicate id \"" + id.get<std::string>() + "\"");
    const auto degree = as_int(member(g, "degree", where), where + ".degree");
    const Rational action = g.contains("action") ? as_rational(g["action"], where + ".action") : Rational(0);
    gens.push_back({id.get<std::string>(), static_cast<int>(degree), action});
  }
  return gens;
}

}  // namespace

EquivariantComplex complex_from_json(const Json& j) {
  const Prime p = as_prime(member(j, "p", ""), "p");
  auto gens = generators(j);
  const FpMatrix d = j.contains("d") ? triplets(j["d"], "d", p, gens)
                                     : FpMatrix(p, static_cast<Index>(gens.size()), static_cast<Index>(gens.size()));
  std::optional<FpMatrix> sigma;
  if (j.contains("sigma")) sigma = triplets(j["sigma"], "sigma", p, gens);
  return {p, std::move(gens), d, sigma};
}

Json complex_to_json(const EquivariantComplex& c) {
  Json out;
  out["p"] = c.modulus().value();
  Json gens = Json::array();
  for (const auto& g : c.generators())
    gens.push_back({{"id", g.id}, {"degree", g.degree}, {"action", format_rational(g.action)}});
  out["generators"] = gens;
  out["d"] = triplets_to_json(c.d(), c.generators());
  out["sigma"] = triplets_to_json(c.sigma(), c.generators());
  return out;
}

EquivariantFloerModel model_from_json(const Json& j) {
  EquivariantComplex base = complex_from_json(j);
  const auto i_max = as_int(member(j, "i_max", ""), "i_max");
  std::vector<DTerm> terms;
  if (j.contains("d_terms")) {
    const Json& list = j["d_terms"];
    if (!list.is_array()) fail("d_terms", "expected an array");
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string where = "d_terms[" + std::to_string(k) + "]";
      const Json& t = list[k];
      const auto i = as_int(member(t, "i", where), where + ".i");
      const auto alpha = as_int(member(t, "alpha", where), where + ".alpha");
      terms.push_back({static_cast<int>(i), static_cast<int>(alpha),
                       triplets(member(t, "matrix", where), where + ".matrix", base.modulus(),
                                base.generators())});
    }
  }
  return {std::move(base), std::move(terms), static_cast<int>(i_max)};
}

Json model_to_json(const EquivariantFloerModel& m) {
  Json out = complex_to_json(m.base);
  out["i_max"] = m.i_max;
  Json terms = Json::array();
  for (const auto& t : m.terms)
    terms.push_back({{"i", t.i}, {"alpha", t.alpha}, {"matrix", triplets_to_json(t.matrix, m.base.generators())}});
  out["d_terms"] = terms;
  return out;
}

Barcode barcode_from_json(const Json& j) {
  const Prime p = as_prime(member(j, "p", ""), "p");
  const Json& list = member(j, "bars", "");
  if (!list.is_array()) fail("bars", "expected an array");
  std::vector<Bar> bars;
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string where = "bars[" + std::to_string(k) + "]";
    const Json& b = list[k];
    Bar bar;
    bar.start = as_rational(member(b, "start", where), where + ".start");
    if (b.contains("end") && !b["end"].is_null()) bar.end = as_rational(b["end"], where + ".end");
    if (b.contains("mult")) {
      const auto m = as_int(b["mult"], where + ".mult");
      if (m <= 0) fail(where + ".mult", "must be positive");
      bar.mult = static_cast<std::size_t>(m);
    }
    if (bar.end && !(bar.start < *bar.end)) fail(where, "start must be below end");
    bars.push_back(bar);
  }
  return {p, std::move(bars)};
}

Json barcode_to_json(const Barcode& b) {
  Json out;
  out["p"] = b.modulus().value();
  Json bars = Json::array();
  for (const auto& bar : b.bars()) {
    Json e;
    e["start"] = format_rational(bar.start);
    e["end"] = bar.end ? Json(format_rational(*bar.end)) : Json(nullptr);
    e["mult"] = bar.mult;
    bars.push_back(e);
  }
  out["bars"] = bars;
  return out;
}

ActionWindow window_from_json(const Json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "expected an object");
  ActionWindow w;
  if (j.contains("lower") && !j["lower"].is_null()) w.lower = as_rational(j["lower"], field + ".lower");
  if (j.contains("upper") && !j["upper"].is_null()) w.upper = as_rational(j["upper"], field + ".upper");
  if (!w.is_nonempty()) fail(field, "empty window");
  return w;
}

Json window_to_json(const ActionWindow& w) {
  Json out;
  out["lower"] = w.lower ? Json(format_rational(*w.lower)) : Json(nullptr);
  out["upper"] = w.upper ? Json(format_rational(*w.upper)) : Json(nullptr);
  return out;
}

Json tate_dims_to_json(const TateDims& d) {
  return Json{{"even", d.even}, {"odd", d.odd}, {"total", d.total()}};
}

Json degree_map_to_json(const std::map<int, std::size_t>& dims) {
  Json out = Json::object();
  for (const auto& [k, v] : dims) out[std::to_string(k)] = v;
  return out;
}

}  // namespace smith::io

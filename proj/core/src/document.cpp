#include "dirackit/document.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "dirackit/cartan.hpp"
#include "dirackit/dirac.hpp"
#include "dirackit/error.hpp"
#include "dirackit/expr.hpp"

namespace dirackit {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* key, const char* where) {
  auto it = j.find(key);
  if (it == j.end())
    throw Error(std::string("document: ") + where + " is missing \"" + key +
                "\"");
  return *it;
}

Chart parse_chart(const json& j, const char* where) {
  if (!j.is_array() || j.empty())
    throw Error(std::string("document: ") + where +
                " must be a nonempty array of coordinate names");
  std::vector<std::string> vars;
  for (const auto& v : j) {
    if (!v.is_string())
      throw Error(std::string("document: ") + where +
                  " entries must be strings");
    vars.push_back(v.get<std::string>());
  }
  return Chart(std::move(vars));
}

RatFun parse_scalar(const json& j, const Chart& c, const char* where) {
  if (!j.is_string())
    throw Error(std::string("document: ") + where +
                " must be an expression string");
  return parse_expr(j.get<std::string>(), c);
}

std::size_t var_index(const Chart& c, const json& j, const char* where) {
  if (!j.is_string())
    throw Error(std::string("document: ") + where +
                " must name a chart coordinate");
  auto idx = c.index_of(j.get<std::string>());
  if (!idx)
    throw Error(std::string("document: ") + where + ": \"" +
                j.get<std::string>() + "\" is not a coordinate of the chart");
  return *idx;
}

// Sparse degree-2 tensor: [{"on": [a, b], "coeff": expr}, ...] with a, b
// coordinate names; the pair may come in either order.
TensorField parse_degree2(const json& j, const Chart& c, TensorKind kind,
                          const char* where) {
  TensorField t = TensorField::zero(c, kind, 2);
  if (!j.is_array())
    throw Error(std::string("document: ") + where +
                " must be an array of {on, coeff} terms");
  for (const auto& term : j) {
    const json& on = field(term, "on", where);
    if (!on.is_array() || on.size() != 2)
      throw Error(std::string("document: ") + where +
                  ": \"on\" must list two coordinates");
    std::uint8_t a = static_cast<std::uint8_t>(var_index(c, on[0], where));
    std::uint8_t b = static_cast<std::uint8_t>(var_index(c, on[1], where));
    t.add_signed({a, b}, parse_scalar(field(term, "coeff", where), c, where));
  }
  return t;
}

std::vector<RatFun> parse_components(const json& j, const Chart& c,
                                     const char* where) {
  if (!j.is_array() || j.size() != c.dim())
    throw Error(std::string("document: ") + where + " must list " +
                std::to_string(c.dim()) + " component expressions");
  std::vector<RatFun> out;
  for (const auto& e : j) out.push_back(parse_scalar(e, c, where));
  return out;
}

AlgebroidData parse_algebroid(const json& j, const Chart& c) {
  const json& rk = field(j, "rank", "algebroid");
  if (!rk.is_number_unsigned() || rk.get<std::size_t>() == 0)
    throw Error("document: algebroid rank must be a positive integer");
  std::size_t r = rk.get<std::size_t>();
  AlgebroidData A(c, r);
  const json& anchor = field(j, "anchor", "algebroid");
  if (!anchor.is_array() || anchor.size() != r)
    throw Error("document: algebroid anchor must have one row per frame "
                "element");
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<RatFun> row = parse_components(anchor[i], c, "algebroid");
    for (std::size_t jx = 0; jx < c.dim(); ++jx) A.anchor_at(i, jx) = row[jx];
  }
  if (j.contains("structure")) {
    const json& st = j["structure"];
    if (!st.is_array())
      throw Error("document: algebroid structure must be an array");
    for (const auto& e : st) {
      // 1-based frame indices i < j, k.
      std::size_t i = field(e, "i", "structure").get<std::size_t>();
      std::size_t jj = field(e, "j", "structure").get<std::size_t>();
      std::size_t k = field(e, "k", "structure").get<std::size_t>();
      if (i < 1 || jj < 1 || k < 1 || i > r || jj > r || k > r)
        throw Error("document: structure indices out of range");
      A.add_structure(i - 1, jj - 1, k - 1,
                      parse_scalar(field(e, "coeff", "structure"), c,
                                   "structure"));
    }
  }
  return A;
}

DiracSpec parse_dirac(const json& j, const std::optional<Chart>& fallback) {
  Chart c = j.contains("chart") ? parse_chart(j["chart"], "dirac chart")
            : fallback ? *fallback
                       : throw Error("document: dirac block needs a chart");
  const json& gens = field(j, "generators", "dirac");
  if (!gens.is_array() || gens.empty())
    throw Error("document: dirac generators must be a nonempty array");
  DiracSpec spec{c, {}, std::nullopt};
  for (const auto& g : gens) {
    std::vector<RatFun> vec =
        parse_components(field(g, "vec", "generator"), c, "generator vec");
    std::vector<RatFun> form =
        parse_components(field(g, "form", "generator"), c, "generator form");
    spec.generators.push_back(GenSection::make(c, std::move(vec),
                                               std::move(form)));
  }
  if (j.contains("ambient_poisson"))
    spec.ambient_poisson = parse_degree2(j["ambient_poisson"], c,
                                         TensorKind::Multivector,
                                         "ambient_poisson");
  return spec;
}

PolyMap parse_map(const json& j, const Chart& source, const Chart& target) {
  if (!j.is_array() || j.size() != target.dim())
    throw Error("document: map must list one expression per target "
                "coordinate");
  std::vector<Poly> comps;
  for (const auto& e : j) {
    RatFun f = parse_scalar(e, source, "map");
    if (!(f.den() == Poly::one(source)))
      throw Error("document: map components must be polynomial");
    comps.push_back(f.num());
  }
  return PolyMap(source, target, std::move(comps));
}

}  // namespace

Document parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(std::string("document: ") + e.what());
  }
  if (!j.is_object()) throw Error("document: top level must be an object");

  static const char* known[] = {"chart",     "poisson",     "twoform",
                                "algebroid", "dirac",       "reduction",
                                "map_problem", "checks"};
  for (const auto& kv : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || kv.key() == k;
    if (!ok) throw Error("document: unknown block \"" + kv.key() + "\"");
  }

  Document doc;
  if (j.contains("chart")) doc.chart = parse_chart(j["chart"], "chart");

  auto need_chart = [&](const char* block) -> const Chart& {
    if (!doc.chart)
      throw Error(std::string("document: ") + block +
                  " needs a top-level chart");
    return *doc.chart;
  };

  if (j.contains("poisson"))
    doc.poisson = parse_degree2(j["poisson"], need_chart("poisson"),
                                TensorKind::Multivector, "poisson");
  if (j.contains("twoform"))
    doc.twoform = parse_degree2(j["twoform"], need_chart("twoform"),
                                TensorKind::Form, "twoform");
  if (j.contains("algebroid"))
    doc.algebroid = parse_algebroid(j["algebroid"], need_chart("algebroid"));
  if (j.contains("dirac")) doc.dirac = parse_dirac(j["dirac"], doc.chart);

  if (j.contains("reduction")) {
    const Chart& c = doc.dirac ? doc.dirac->chart : need_chart("reduction");
    const json& qv = field(j["reduction"], "quotient_vars", "reduction");
    if (!qv.is_array() || qv.empty())
      throw Error("document: reduction quotient_vars must be a nonempty "
                  "array");
    std::vector<std::string> names;
    std::vector<Poly> comps;
    for (const auto& v : qv) {
      std::size_t idx = var_index(c, v, "quotient_vars");
      names.push_back(c.var(idx));
      comps.push_back(Poly::variable(c, idx));
    }
    Chart quotient(names);
    doc.reduction = ReductionBlock{std::move(names),
                                   PolyMap(c, quotient, std::move(comps))};
  }

  if (j.contains("map_problem")) {
    const json& mp = j["map_problem"];
    auto parse_side = [&](const char* key) -> DiracSpec {
      const json& side = field(mp, key, "map_problem");
      if (side.is_string()) {
        if (side.get<std::string>() != "dirac" || !doc.dirac)
          throw Error("document: map_problem " + std::string(key) +
                      " references \"dirac\" but there is no such block");
        return *doc.dirac;
      }
      return parse_dirac(side, doc.chart);
    };
    DiracSpec source = parse_side("source");
    DiracSpec target = parse_side("target");
    PolyMap map = parse_map(field(mp, "map", "map_problem"), source.chart,
                            target.chart);
    std::size_t samples = 25;
    std::uint64_t seed = 1;
    if (mp.contains("samples")) samples = mp["samples"].get<std::size_t>();
    if (mp.contains("seed")) seed = mp["seed"].get<std::uint64_t>();
    doc.map_problem = DiracMapProblem{std::move(map), std::move(source),
                                      std::move(target), samples, seed};
  }

  if (j.contains("checks")) {
    const json& ck = j["checks"];
    if (!ck.is_array())
      throw Error("document: checks must be an array of check names");
    for (const auto& e : ck) {
      if (!e.is_string())
        throw Error("document: check names must be strings");
      doc.checks.push_back(e.get<std::string>());
    }
  }
  return doc;
}

Document load_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("document: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_document(buf.str());
}

QuotientData reduce_dirac(const DiracSpec& L, const ReductionBlock& r) {
  const Chart& M = L.chart;
  const Chart& N = r.projection.target();
  CharacteristicPair cp = characteristic_pair(L);
  std::size_t vertical = M.dim() - N.dim();
  if (cp.distribution.generators.size() != vertical)
    throw Error("reduction: characteristic rank " +
                std::to_string(cp.distribution.generators.size()) +
                " does not match the " + std::to_string(vertical) +
                " coordinates dropped by the projection");

  // Kept/dropped coordinate indices on the total chart.
  std::vector<std::size_t> kept;
  std::vector<bool> dropped(M.dim(), true);
  for (const std::string& v : N.vars()) {
    auto ix = M.index_of(v);
    if (!ix) throw Error("reduction: quotient variable " + v +
                         " is not a coordinate of the total chart");
    kept.push_back(*ix);
    dropped[*ix] = false;
  }

  // The characteristic directions must be vertical: no component along a
  // kept coordinate.
  for (const TensorField& d : cp.distribution.generators)
    for (std::size_t k : kept)
      if (!d.coefficient({static_cast<std::uint8_t>(k)}).is_zero())
        throw Error("reduction: characteristic direction " + to_string(d) +
                    " is not vertical for the declared projection");

  // Gauge-fixed bivector must be basic: kept-pair components independent of
  // the dropped coordinates.
  TensorField quot = TensorField::zero(N, TensorKind::Multivector, 2);
  for (std::size_t a = 0; a < N.dim(); ++a)
    for (std::size_t b = a + 1; b < N.dim(); ++b) {
      RatFun c = cp.bivector.coefficient({static_cast<std::uint8_t>(kept[a]),
                                          static_cast<std::uint8_t>(kept[b])});
      for (std::size_t i = 0; i < M.dim(); ++i)
        if (dropped[i] && (!c.num().derivative(i).is_zero() ||
                           !c.den().derivative(i).is_zero()))
          throw Error("reduction: bivector component {" + N.var(a) + ", " +
                      N.var(b) + "} = " + to_string(c) +
                      " depends on the fiber coordinate " + M.var(i));
      std::vector<Poly> args;
      for (std::size_t i = 0; i < M.dim(); ++i) {
        Poly arg = Poly::zero(N);
        for (std::size_t a2 = 0; a2 < N.dim(); ++a2)
          if (kept[a2] == i) arg = Poly::variable(N, a2);
        args.push_back(arg);
      }
      quot.add_signed({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)},
                      c.subst(N, args));
    }

  TensorField jac = schouten_bracket(quot, quot);
  if (!jac.is_zero())
    throw Error("reduction: quotient bivector is not Poisson, [pi, pi] = " +
                to_string(jac));
  DiracSpec graph = graph_of_bivector(quot);
  return QuotientData{std::move(quot), std::move(graph)};
}

}  // namespace dirackit

#include "dirackit/harness.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <json.hpp>
#include <regex>
#include <sstream>

#include "dirackit/cartan.hpp"
#include "dirackit/corpus.hpp"
#include "dirackit/error.hpp"
#include "dirackit/expr.hpp"

namespace dirackit {

namespace {

std::string join(const std::vector<RatFun>& vals) {
  std::string out = "(";
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) out += ", ";
    out += to_string(vals[i]);
  }
  return out + ")";
}

CheckResult pass(std::string id, std::string detail, std::uint64_t seed) {
  return CheckResult{std::move(id), "PASS", std::move(detail), seed, -1};
}
CheckResult fail(std::string id, std::string detail, std::uint64_t seed) {
  return CheckResult{std::move(id), "FAIL", std::move(detail), seed, -1};
}

const DiracSpec& need_dirac(const Document& doc, const char* check) {
  if (!doc.dirac)
    throw Error(std::string(check) + " needs a dirac block");
  return *doc.dirac;
}

const DiracMapProblem& need_problem(const Document& doc, const char* check) {
  if (!doc.map_problem)
    throw Error(std::string(check) + " needs a map_problem block");
  return *doc.map_problem;
}

DiracMapProblem tuned(const DiracMapProblem& pr, const RunOptions& opt) {
  DiracMapProblem out = pr;
  if (opt.seed) out.seed = *opt.seed;
  if (opt.samples) out.samples = *opt.samples;
  return out;
}

CheckResult check_poisson(const Document& doc, const RunOptions&,
                          std::uint64_t seed) {
  if (!doc.poisson) throw Error("poisson check needs a poisson block");
  TensorField sb = schouten_bracket(*doc.poisson, *doc.poisson);
  if (sb.is_zero()) return pass("poisson", "[pi, pi] = 0", seed);
  return fail("poisson", "[pi, pi] = " + to_string(sb), seed);
}

CheckResult check_closed(const Document& doc, const RunOptions&,
                         std::uint64_t seed) {
  if (!doc.twoform) throw Error("closed check needs a twoform block");
  TensorField dw = exterior_derivative(*doc.twoform);
  if (dw.is_zero()) return pass("closed", "d omega = 0", seed);
  return fail("closed", "d omega = " + to_string(dw), seed);
}

CheckResult check_algebroid_axioms(const Document& doc, const RunOptions&,
                                   std::uint64_t seed) {
  if (!doc.algebroid) throw Error("axioms check needs an algebroid block");
  AxiomReport rep = check_axioms(*doc.algebroid);
  if (rep.ok)
    return pass("axioms",
                "anchor condition and Jacobi identity hold on the frame",
                seed);
  return fail("axioms", rep.witness, seed);
}

CheckResult check_dirac_block(const Document& doc, const RunOptions& opt,
                              std::uint64_t seed) {
  const DiracSpec& spec = need_dirac(doc, "dirac");
  std::size_t samples = opt.samples.value_or(100);
  DiracReport rep = check_dirac(spec, seed, samples);
  if (!rep.ok()) return fail("dirac", rep.witness, seed);
  std::ostringstream cert;
  cert << "rank " << spec.generators.size() << "; isotropic; closed under "
       << "the Courant bracket with " << rep.certificates.size()
       << " exact coefficient certificates; maximal at " << samples
       << " sample points";
  return pass("dirac", cert.str(), seed);
}

CheckResult check_characteristic(const Document& doc, const RunOptions&,
                                 std::uint64_t seed) {
  const DiracSpec& spec = need_dirac(doc, "characteristic");
  CharacteristicPair cp = characteristic_pair(spec);
  std::ostringstream cert;
  cert << "kernel rank " << cp.distribution.generators.size()
       << "; transverse bivector " << to_string(cp.bivector)
       << "; reconstruction matches the structure";
  return pass("characteristic", cert.str(), seed);
}

CheckResult check_modular(const Document& doc, const RunOptions&,
                          std::uint64_t seed) {
  AlgebroidData A = [&]() -> AlgebroidData {
    if (doc.dirac) return dirac_to_algebroid(*doc.dirac);
    if (doc.algebroid) return *doc.algebroid;
    throw Error("modular check needs a dirac or algebroid block");
  }();
  AlgebroidCochain mod =
      modular_cocycle(A, TrivializationChoice::standard(A.chart()));
  AlgebroidCochain dmod = da_differential(A, mod);
  if (!dmod.is_zero())
    return fail("modular",
                "modular cochain is not closed: d alpha = " +
                    join(dmod.component_vector()),
                seed);
  return pass("modular",
              "modular cocycle " + join(mod.component_vector()) +
                  " in the coordinate frame; closed",
              seed);
}

CheckResult check_reduction(const Document& doc, const RunOptions& opt,
                            std::uint64_t seed) {
  const DiracSpec& L = need_dirac(doc, "reduction");
  if (!doc.reduction) throw Error("reduction check needs a reduction block");
  QuotientData qd = reduce_dirac(L, *doc.reduction);
  DiracMapProblem pr{doc.reduction->projection, L, qd.graph,
                     opt.samples.value_or(25), seed};
  MapReport fwd = check_dirac_map(pr, MapDirection::Forward);
  if (!fwd.pass) return fail("reduction", "projection: " + fwd.witness, seed);
  MapReport bwd = check_dirac_map(pr, MapDirection::Backward);
  if (!bwd.pass) return fail("reduction", "projection: " + bwd.witness, seed);
  return pass("reduction",
              "quotient bivector " + to_string(qd.bivector) +
                  "; projection is forward and backward Dirac",
              seed);
}

CheckResult check_map(const Document& doc, const RunOptions& opt,
                      std::uint64_t seed, MapDirection dir) {
  const char* name = dir == MapDirection::Forward ? "forward" : "backward";
  DiracMapProblem pr = tuned(need_problem(doc, name), opt);
  (void)seed;
  MapReport rep = check_dirac_map(pr, dir);
  if (!rep.pass) return fail(name, rep.witness, pr.seed);
  std::string level = rep.level == CheckLevel::Symbolic
                          ? "symbolically over the source chart"
                          : "at " + std::to_string(pr.samples) +
                                " sample points";
  return pass(name, std::string("image matches ") + level, pr.seed);
}

CheckResult check_admissible_block(const Document& doc, const RunOptions& opt,
                                   std::uint64_t) {
  DiracMapProblem pr = tuned(need_problem(doc, "admissible"), opt);
  AdmissibleReport rep = check_admissible(pr);
  if (!rep.admissible) {
    std::string profile;
    for (std::size_t r : rep.rank_profile) {
      if (!profile.empty()) profile += ", ";
      profile += std::to_string(r);
    }
    return fail("admissible",
                "relation fiber rank is not constant: profile " + profile,
                pr.seed);
  }
  return pass("admissible",
              "relation fiber has constant rank " +
                  std::to_string(rep.generic_rank),
              pr.seed);
}

CheckResult check_relation(const Document& doc, const RunOptions& opt,
                           std::uint64_t) {
  DiracMapProblem pr = tuned(need_problem(doc, "relation"), opt);
  try {
    RelationAlgebroid R = relation_algebroid(pr);
    std::ostringstream cert;
    cert << "rank " << R.algebroid.rank()
         << "; Lie algebroid axioms and both projection morphisms verified";
    return pass("relation", cert.str(), pr.seed);
  } catch (const Error& e) {
    return fail("relation", e.what(), pr.seed);
  }
}

CheckResult check_mod_map(const Document& doc, const RunOptions& opt,
                          std::uint64_t) {
  DiracMapProblem pr = tuned(need_problem(doc, "mod_map"), opt);
  TrivializationChoice tl = TrivializationChoice::standard(pr.source.chart);
  TrivializationChoice tk = TrivializationChoice::standard(pr.target.chart);
  unsigned bound = opt.degree_bound.value_or(4);
  MapModularResult mm = dirac_map_modular_cocycle(pr, tl, tk, bound);
  std::string coc = join(mm.cocycle.component_vector());
  switch (mm.exactness.kind) {
    case ExactnessResult::Kind::Exact:
      return pass("mod_map",
                  "cocycle " + coc + "; exact with primitive " +
                      to_string(mm.exactness.certificate),
                  pr.seed);
    case ExactnessResult::Kind::LogExact:
      return pass("mod_map",
                  "cocycle " + coc + "; logarithmic primitive from unit " +
                      to_string(mm.exactness.certificate),
                  pr.seed);
    case ExactnessResult::Kind::Inconclusive:
    default:
      return CheckResult{"mod_map", "INCONCLUSIVE",
                         "cocycle " + coc +
                             "; no primitive found within degree bound " +
                             std::to_string(bound),
                         pr.seed, -1};
  }
}

CheckResult run_check(const std::string& name, const Document& doc,
                      const RunOptions& opt) {
  std::uint64_t seed = opt.seed.value_or(1);
  try {
    if (name == "poisson") return check_poisson(doc, opt, seed);
    if (name == "closed") return check_closed(doc, opt, seed);
    if (name == "axioms") return check_algebroid_axioms(doc, opt, seed);
    if (name == "dirac") return check_dirac_block(doc, opt, seed);
    if (name == "characteristic") return check_characteristic(doc, opt, seed);
    if (name == "modular") return check_modular(doc, opt, seed);
    if (name == "reduction") return check_reduction(doc, opt, seed);
    if (name == "forward")
      return check_map(doc, opt, seed, MapDirection::Forward);
    if (name == "backward")
      return check_map(doc, opt, seed, MapDirection::Backward);
    if (name == "admissible") return check_admissible_block(doc, opt, seed);
    if (name == "relation") return check_relation(doc, opt, seed);
    if (name == "mod_map") return check_mod_map(doc, opt, seed);
    return CheckResult{name, "ERROR", "unknown check \"" + name + "\"", seed,
                       -1};
  } catch (const Error& e) {
    return CheckResult{name, "ERROR", e.what(), seed, -1};
  }
}

bool glob_match(const std::string& pattern, const std::string& text) {
  if (pattern.empty() || pattern == "*") return true;
  std::string re;
  for (char c : pattern) {
    if (c == '*') {
      re += ".*";
    } else if (std::isalnum(static_cast<unsigned char>(c))) {
      re += c;
    } else {
      re += '\\';
      re += c;
    }
  }
  return std::regex_match(text, std::regex(re));
}

}  // namespace

std::vector<CheckResult> run_document(const Document& doc,
                                      const RunOptions& opt) {
  std::vector<CheckResult> rows;
  for (const std::string& name : doc.checks) {
    auto t0 = std::chrono::steady_clock::now();
    CheckResult row = run_check(name, doc, opt);
    if (opt.timings) {
      auto t1 = std::chrono::steady_clock::now();
      row.millis = std::chrono::duration_cast<std::chrono::milliseconds>(
                       t1 - t0)
                       .count();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<CheckResult> run_corpus(const std::string& filter,
                                    const RunOptions& opt) {
  std::vector<const CorpusItem*> items;
  for (const CorpusItem& it : corpus())
    if (glob_match(filter, it.id)) items.push_back(&it);
  std::sort(items.begin(), items.end(),
            [](const CorpusItem* a, const CorpusItem* b) {
              return a->id < b->id;
            });

  std::vector<CheckResult> rows;
  for (const CorpusItem* it : items) {
    Document doc;
    try {
      doc = parse_document(it->document);
    } catch (const Error& e) {
      rows.push_back(CheckResult{it->id, "ERROR", e.what(),
                                 opt.seed.value_or(1), -1});
      continue;
    }
    std::vector<CheckResult> actual = run_document(doc, opt);
    for (const CheckResult& a : actual) {
      std::string expected;
      for (const auto& kv : it->expected)
        if (kv.first == a.id) expected = kv.second;
      CheckResult row;
      row.id = it->id + "." + a.id;
      row.seed = a.seed;
      row.millis = a.millis;
      if (expected.empty()) {
        row.verdict = "ERROR";
        row.detail = "no expected verdict recorded for this check";
      } else if (a.verdict == expected) {
        row.verdict = "PASS";
        row.detail = expected == "PASS"
                         ? a.detail
                         : "expected " + expected + ", observed " + expected +
                               ": " + a.detail;
      } else {
        row.verdict = "FAIL";
        row.detail = "expected " + expected + ", observed " + a.verdict +
                     ": " + a.detail;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::string render_json(const std::vector<CheckResult>& rows, bool timings) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const CheckResult& r : rows) {
    nlohmann::ordered_json obj;
    obj["id"] = r.id;
    obj["verdict"] = r.verdict;
    if (r.verdict == "PASS")
      obj["certificate"] = r.detail;
    else
      obj["witness"] = r.detail;
    obj["seed"] = r.seed;
    if (timings && r.millis >= 0) obj["millis"] = r.millis;
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

std::string render_text(const std::vector<CheckResult>& rows) {
  std::ostringstream out;
  for (const CheckResult& r : rows) {
    out << r.verdict;
    for (std::size_t i = r.verdict.size(); i < 12; ++i) out << ' ';
    out << r.id << ": " << r.detail << "\n";
  }
  return out.str();
}

int exit_code(const std::vector<CheckResult>& rows) {
  bool failed = false, inconclusive = false;
  for (const CheckResult& r : rows) {
    if (r.verdict == "ERROR") return 3;
    if (r.verdict == "FAIL") failed = true;
    if (r.verdict == "INCONCLUSIVE") inconclusive = true;
  }
  if (failed) return 1;
  if (inconclusive) return 2;
  return 0;
}

}  // namespace dirackit

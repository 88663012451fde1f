#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "dirackit/corpus.hpp"
#include "dirackit/error.hpp"
#include "dirackit/expr.hpp"
#include "dirackit/harness.hpp"

using namespace dirackit;

namespace {

std::string rational_str(const Rational& v) {
  std::ostringstream out;
  out << v;
  return out.str();
}

std::vector<Rational> parse_point(const std::string& text, const Chart& c) {
  std::vector<Rational> point;
  std::string piece;
  std::istringstream in(text);
  while (std::getline(in, piece, ',')) {
    RatFun v = parse_expr(piece, c);
    if (!v.is_constant())
      throw Error("point coordinate \"" + piece + "\" is not constant");
    point.push_back(v.constant_value());
  }
  if (point.size() != c.dim())
    throw Error("point has " + std::to_string(point.size()) +
                " coordinates, the chart has " + std::to_string(c.dim()));
  return point;
}

int emit(const std::vector<CheckResult>& rows, bool json, bool timings) {
  if (json)
    std::cout << render_json(rows, timings);
  else
    std::cout << render_text(rows);
  return exit_code(rows);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification for Dirac structures on coordinate "
               "charts: Courant brackets, modular cocycles and Dirac maps"};
  app.require_subcommand(1);

  std::uint64_t seed = 1;
  std::size_t samples = 0;
  unsigned degree_bound = 0;
  bool json = false, timings = false;
  CLI::Option* seed_opt =
      app.add_option("--seed", seed, "seed for the sample point stream");
  CLI::Option* samples_opt =
      app.add_option("--samples", samples, "pointwise sample count");
  CLI::Option* bound_opt = app.add_option(
      "--degree-bound", degree_bound,
      "polynomial degree bound for exactness searches");
  app.add_flag("--json", json, "emit the JSON report");
  app.add_flag("--timings", timings,
               "include per-check milliseconds in the report");

  std::string file, filter = "*", prop_id, point_text;

  CLI::App* c_check =
      app.add_subcommand("check", "run the checks a document declares");
  c_check->add_option("file", file, "input document")->required();

  CLI::App* c_corpus = app.add_subcommand(
      "corpus", "run the built-in corpus against its expected verdicts");
  c_corpus->add_option("--filter", filter, "glob over item ids");

  CLI::App* c_prove = app.add_subcommand(
      "prove", "verify one statement on its designated corpus instances");
  c_prove->add_option("id", prop_id, "statement id, or \"list\"")->required();
  bool flip_sharp = false;
  c_prove
      ->add_flag("--flip-sharp", flip_sharp,
                 "negate the sharp map as a deliberate sign control")
      ->group("");

  CLI::App* c_bracket = app.add_subcommand(
      "bracket", "bracket of the first two generator sections of the dirac "
                 "block");
  bool courant = false, bialgebroid = false;
  c_bracket->add_flag("--courant", courant, "standard Courant bracket");
  c_bracket->add_flag("--bialgebroid", bialgebroid,
                      "bracket in the double of (TM, T*M_pi)");
  c_bracket->add_option("file", file, "input document")->required();

  CLI::App* c_image = app.add_subcommand(
      "image", "pointwise image of the map problem's Dirac structure");
  bool forward = false, backward = false;
  c_image->add_flag("--forward", forward,
                    "push the source structure through the map");
  c_image->add_flag("--backward", backward,
                    "pull the target structure back through the map");
  c_image->add_option("file", file, "input document")->required();
  c_image->add_option("--at", point_text,
                      "comma-separated rational source coordinates")
      ->required();

  for (CLI::App* sub : {c_check, c_corpus, c_prove, c_bracket, c_image})
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  RunOptions opt;
  if (seed_opt->count()) opt.seed = seed;
  if (samples_opt->count()) opt.samples = samples;
  if (bound_opt->count()) opt.degree_bound = degree_bound;
  opt.timings = timings;
  opt.flip_sharp = flip_sharp;

  try {
    if (c_check->parsed())
      return emit(run_document(load_document(file), opt), json, timings);

    if (c_corpus->parsed())
      return emit(run_corpus(filter, opt), json, timings);

    if (c_prove->parsed()) {
      if (prop_id == "list") {
        for (const std::string& id : proposition_ids()) std::cout << id << "\n";
        return 0;
      }
      return emit({verify_proposition(prop_id, opt)}, json, timings);
    }

    if (c_bracket->parsed()) {
      if (courant == bialgebroid)
        throw Error("bracket needs exactly one of --courant, --bialgebroid");
      Document doc = load_document(file);
      if (!doc.dirac) throw Error("bracket needs a dirac block");
      if (doc.dirac->generators.size() < 2)
        throw Error("bracket needs at least two generator sections");
      const GenSection& s = doc.dirac->generators[0];
      const GenSection& t = doc.dirac->generators[1];
      GenSection b = [&] {
        if (courant) return courant_bracket(s, t);
        if (!doc.dirac->ambient_poisson)
          throw Error("--bialgebroid needs an ambient_poisson field in the "
                      "dirac block");
        return bialgebroid_bracket(s, t, *doc.dirac->ambient_poisson);
      }();
      if (json) {
        nlohmann::ordered_json out;
        out["vector"] = to_string(b.vec);
        out["form"] = to_string(b.form);
        std::cout << out.dump(2) << "\n";
      } else {
        std::cout << "vector part: " << to_string(b.vec) << "\n"
                  << "form part:   " << to_string(b.form) << "\n";
      }
      return 0;
    }

    if (c_image->parsed()) {
      if (forward == backward)
        throw Error("image needs exactly one of --forward, --backward");
      Document doc = load_document(file);
      if (!doc.map_problem) throw Error("image needs a map_problem block");
      const DiracMapProblem& pr = *doc.map_problem;
      std::vector<Rational> p = parse_point(point_text, pr.map.source());
      std::vector<std::vector<Rational>> rows =
          forward ? forward_image_point(pr.source, pr.map, p)
                  : backward_image_point(pr.target, pr.map, p);
      if (json) {
        nlohmann::ordered_json out;
        nlohmann::ordered_json at = nlohmann::ordered_json::array();
        for (const Rational& v : p) at.push_back(rational_str(v));
        nlohmann::ordered_json basis = nlohmann::ordered_json::array();
        for (const auto& row : rows) {
          nlohmann::ordered_json r = nlohmann::ordered_json::array();
          for (const Rational& v : row) r.push_back(rational_str(v));
          basis.push_back(std::move(r));
        }
        out["at"] = std::move(at);
        out["rows"] = std::move(basis);
        std::cout << out.dump(2) << "\n";
      } else {
        for (const auto& row : rows) {
          for (std::size_t j = 0; j < row.size(); ++j)
            std::cout << (j ? " " : "") << rational_str(row[j]);
          std::cout << "\n";
        }
      }
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 3;
}

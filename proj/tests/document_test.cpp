#include <doctest.h>

#include <string>

#include "dirackit/document.hpp"
#include "dirackit/expr.hpp"

using namespace dirackit;

namespace {

const char* full_doc = R"({
  "chart": ["x", "y", "t"],
  "poisson": [{"on": ["x", "y"], "coeff": "x"}],
  "dirac": {"generators": [
    {"vec": ["0", "x", "0"], "form": ["1", "0", "0"]},
    {"vec": ["-x", "0", "0"], "form": ["0", "1", "0"]},
    {"vec": ["0", "0", "1"], "form": ["0", "0", "0"]}
  ]},
  "reduction": {"quotient_vars": ["x", "y"]},
  "map_problem": {
    "source": "dirac",
    "target": {"chart": ["x", "y"], "generators": [
      {"vec": ["0", "x"], "form": ["1", "0"]},
      {"vec": ["-x", "0"], "form": ["0", "1"]}
    ]},
    "map": ["x", "y"],
    "samples": 12,
    "seed": 9
  },
  "checks": ["poisson", "dirac", "reduction"]
})";

}  // namespace

TEST_CASE("a full document parses into every block") {
  Document doc = parse_document(full_doc);
  REQUIRE(doc.chart.has_value());
  CHECK(doc.chart->dim() == 3);
  REQUIRE(doc.poisson.has_value());
  CHECK(doc.poisson->coefficient({0, 1}) == parse_expr("x", *doc.chart));
  REQUIRE(doc.dirac.has_value());
  CHECK(doc.dirac->generators.size() == 3);
  CHECK(!doc.dirac->bialgebroid());

  REQUIRE(doc.reduction.has_value());
  CHECK(doc.reduction->quotient_vars ==
        std::vector<std::string>{"x", "y"});
  CHECK(doc.reduction->projection.target().dim() == 2);

  REQUIRE(doc.map_problem.has_value());
  CHECK(doc.map_problem->samples == 12);
  CHECK(doc.map_problem->seed == 9);
  // "dirac" as a side references the top-level block.
  CHECK(doc.map_problem->source.generators.size() == 3);
  CHECK(doc.map_problem->target.chart.dim() == 2);

  CHECK(doc.checks == std::vector<std::string>{"poisson", "dirac",
                                               "reduction"});
}

TEST_CASE("parser rejections carry the offending context") {
  CHECK_THROWS_WITH_AS(parse_document(R"({"bogus": 1})"),
                       doctest::Contains("unknown block"), Error);
  CHECK_THROWS_WITH_AS(parse_document(R"({"poisson": []})"),
                       doctest::Contains("chart"), Error);
  CHECK_THROWS_WITH_AS(
      parse_document(
          R"({"chart": ["x"], "poisson": [{"on": ["x", "q"], "coeff": "1"}]})"),
      doctest::Contains("coordinate"), Error);
  CHECK_THROWS_AS(
      parse_document(R"({"chart": ["x"], "poisson": [{"on": ["x", "x"],
        "coeff": "1 +"}]})"),
      Error);
  CHECK_THROWS_AS(parse_document("not json"), Error);
  // Map components must be polynomial.
  CHECK_THROWS_WITH_AS(parse_document(R"({
    "chart": ["x", "y"],
    "map_problem": {
      "source": {"chart": ["x", "y"], "generators": [
        {"vec": ["1", "0"], "form": ["0", "0"]},
        {"vec": ["0", "1"], "form": ["0", "0"]}
      ]},
      "target": {"chart": ["u"], "generators": [
        {"vec": ["1"], "form": ["0"]}
      ]},
      "map": ["1/x"]
    }})"),
                       doctest::Contains("polynomial"), Error);
  // A map_problem side may only say "dirac" when the block exists.
  CHECK_THROWS_WITH_AS(parse_document(R"({
    "chart": ["x"],
    "map_problem": {"source": "dirac", "target": "dirac", "map": ["x"]}})"),
                       doctest::Contains("dirac"), Error);
}

TEST_CASE("reduction of the pullback structure recovers the quotient bivector") {
  Document doc = parse_document(full_doc);
  QuotientData qd = reduce_dirac(*doc.dirac, *doc.reduction);
  Chart q = doc.reduction->projection.target();
  CHECK(qd.bivector.coefficient({0, 1}) == parse_expr("x", q));
  CHECK(qd.graph.generators.size() == 2);
}

TEST_CASE("reduction failures name what went wrong") {
  Document doc = parse_document(full_doc);

  // Dropping both y and t: the characteristic rank is 1, not 2.
  {
    Chart c = *doc.chart;
    Chart q({"x"});
    ReductionBlock r{{"x"}, PolyMap(c, q, {Poly::variable(c, 0)})};
    CHECK_THROWS_WITH_AS(reduce_dirac(*doc.dirac, r),
                         doctest::Contains("rank"), Error);
  }

  // Keeping x and t instead: d/dt is vertical for the projection, but the
  // quotient bivector x d/dx^d/dy does not descend along y.
  {
    Chart c = *doc.chart;
    Chart q({"x", "t"});
    ReductionBlock r{{"x", "t"},
                     PolyMap(c, q, {Poly::variable(c, 0),
                                    Poly::variable(c, 2)})};
    CHECK_THROWS_AS(reduce_dirac(*doc.dirac, r), Error);
  }
}

TEST_CASE("documents may carry a bialgebroid dirac block") {
  Document doc = parse_document(R"({
    "chart": ["x", "y"],
    "dirac": {
      "generators": [
        {"vec": ["0", "0"], "form": ["1", "0"]},
        {"vec": ["0", "0"], "form": ["0", "1"]}
      ],
      "ambient_poisson": [{"on": ["x", "y"], "coeff": "x"}]
    }
  })");
  REQUIRE(doc.dirac.has_value());
  CHECK(doc.dirac->bialgebroid());
  GenSection br = doc.dirac->bracket(doc.dirac->generators[0],
                                     doc.dirac->generators[1]);
  // Pure forms bracket through the ambient structure: [dx, dy]_pi = dx.
  CHECK(br.form.component_vector()[0] == RatFun::one(doc.dirac->chart));
}

#include <doctest.h>

#include "dirackit/cartan.hpp"
#include "dirackit/dirac_maps.hpp"
#include "dirackit/expr.hpp"
#include "dirackit/linalg.hpp"
#include "dirackit/sample.hpp"

using namespace dirackit;

namespace {

const Chart cm({"x", "y", "t"});
const Chart cn({"x", "y"});

TensorField log_bivector(const Chart& c) {
  TensorField pi = TensorField::zero(c, TensorKind::Multivector, 2);
  pi.add_signed({0, 1}, parse_expr("x", c));
  return pi;
}

// phi(x, y, t) = (x, y) with x dx^dy upstairs and downstairs: the canonical
// forward and backward Dirac submersion.
DiracMapProblem projection_problem() {
  PolyMap phi(cm, cn, {Poly::variable(cm, 0), Poly::variable(cm, 1)});
  DiracSpec up = graph_of_bivector(log_bivector(cm));
  DiracSpec down = graph_of_bivector(log_bivector(cn));
  return DiracMapProblem{phi, up, down, 25, 1};
}

Mat<Rational> rows_to_mat(const std::vector<std::vector<Rational>>& rows,
                          std::size_t cols) {
  Mat<Rational> m = rational_matrix(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
  return m;
}

}  // namespace

TEST_CASE("pointwise images of a Poisson projection") {
  DiracMapProblem pr = projection_problem();
  std::vector<Rational> p{Rational(2), Rational(3), Rational(5)};

  // Backward image at p: {(v, phi^T b) : (dphi v, b) in K}. K at (2, 3) is
  // spanned by (2 d/dy, dx) and (-2 d/dx, dy); pulling back adds the free
  // vertical direction d/dt with zero form.
  std::vector<std::vector<Rational>> back =
      backward_image_point(pr.target, pr.map, p);
  CHECK(back.size() == 3);
  Mat<Rational> expect_back = rows_to_mat(
      {{Rational(0), Rational(2), Rational(0), Rational(1), Rational(0),
        Rational(0)},
       {Rational(-2), Rational(0), Rational(0), Rational(0), Rational(1),
        Rational(0)},
       {Rational(0), Rational(0), Rational(1), Rational(0), Rational(0),
        Rational(0)}},
      6);
  CHECK(same_row_space(rows_to_mat(back, 6), expect_back));

  // Forward image at p: push the upstairs graph down; the t-direction dies.
  std::vector<std::vector<Rational>> fwd =
      forward_image_point(pr.source, pr.map, p);
  CHECK(fwd.size() == 2);
  Mat<Rational> expect_fwd = rows_to_mat(
      {{Rational(0), Rational(2), Rational(1), Rational(0)},
       {Rational(-2), Rational(0), Rational(0), Rational(1)}},
      4);
  CHECK(same_row_space(rows_to_mat(fwd, 4), expect_fwd));
}

TEST_CASE("graph upstairs is forward Dirac; backward needs vertical vectors") {
  DiracMapProblem pr = projection_problem();
  MapReport f = check_dirac_map(pr, MapDirection::Forward);
  CHECK(f.pass);

  // The backward image contains (d/dt, 0), the graph contains (0, dt):
  // they differ at every fiber.
  MapReport b = check_dirac_map(pr, MapDirection::Backward);
  CHECK(!b.pass);
  CHECK(b.witness.find("backward image mismatch") != std::string::npos);
  CHECK(b.seed == pr.seed);

  // Swapping in the genuine pullback structure repairs the direction and
  // keeps the forward one.
  pr.source = DiracSpec{
      cm,
      {GenSection::make(cm,
                        {RatFun::zero(cm), parse_expr("x", cm),
                         RatFun::zero(cm)},
                        {RatFun::one(cm), RatFun::zero(cm), RatFun::zero(cm)}),
       GenSection::make(cm,
                        {parse_expr("-x", cm), RatFun::zero(cm),
                         RatFun::zero(cm)},
                        {RatFun::zero(cm), RatFun::one(cm), RatFun::zero(cm)}),
       GenSection::make(cm,
                        {RatFun::zero(cm), RatFun::zero(cm), RatFun::one(cm)},
                        {RatFun::zero(cm), RatFun::zero(cm), RatFun::zero(cm)})},
      std::nullopt};
  CHECK(check_dirac(pr.source, 1, 16).ok());
  CHECK(check_dirac_map(pr, MapDirection::Backward).pass);
  CHECK(check_dirac_map(pr, MapDirection::Forward).pass);
}

TEST_CASE("a mismatched target is refused with a located witness") {
  DiracMapProblem pr = projection_problem();
  // Downstairs structure replaced by the symplectic one: the forward image
  // of x dx^dy cannot match it along x = const slices.
  TensorField sympl = TensorField::zero(cn, TensorKind::Multivector, 2);
  sympl.add_signed({0, 1}, RatFun::one(cn));
  pr.target = graph_of_bivector(sympl);
  MapReport f = check_dirac_map(pr, MapDirection::Forward);
  CHECK(!f.pass);
  CHECK(f.witness.find("mismatch") != std::string::npos);
  MapReport b = check_dirac_map(pr, MapDirection::Backward);
  CHECK(!b.pass);
}

TEST_CASE("relation fibers of the projection have constant rank two") {
  DiracMapProblem pr = projection_problem();
  AdmissibleReport rep = check_admissible(pr);
  CHECK(rep.admissible);
  CHECK(rep.generic_rank == 2);
  for (std::size_t r : rep.rank_profile) CHECK(r == 2);
}

TEST_CASE("relation algebroid of the projection") {
  DiracMapProblem pr = projection_problem();
  RelationAlgebroid R = relation_algebroid(pr);
  CHECK(R.algebroid.rank() == 2);
  CHECK(check_axioms(R.algebroid).ok);
  CHECK(check_morphism(R.morphism_i).ok);
  CHECK(check_morphism(R.morphism_j).ok);
  CHECK(R.morphism_i.source.rank() == 2);
  CHECK(R.first.size() == 2);

  // Both coefficient matrices have full row rank: the relation projects
  // injectively to either side here.
  CHECK(generic_rank(R.lambda) == 2);
  CHECK(generic_rank(R.mu) == 2);
}

TEST_CASE("the modular cocycle of the projection is exactly zero") {
  DiracMapProblem pr = projection_problem();
  MapModularResult res = dirac_map_modular_cocycle(
      pr, TrivializationChoice::standard(cm),
      TrivializationChoice::standard(cn));
  CHECK(res.cocycle.is_zero());
  CHECK(res.exactness.kind == ExactnessResult::Kind::Exact);
  CHECK(res.exactness.certificate.is_constant());
}

TEST_CASE("a volume twist shows up as a logarithmic modular cocycle") {
  DiracMapProblem pr = projection_problem();
  TrivializationChoice tl = TrivializationChoice::standard(cm);
  tl.base_unit = parse_expr("x^2", cm);
  MapModularResult res = dirac_map_modular_cocycle(
      pr, tl, TrivializationChoice::standard(cn));
  CHECK(!res.cocycle.is_zero());
  CHECK(res.exactness.kind == ExactnessResult::Kind::LogExact);
  // Substitute the unit back through the relation anchors.
  RelationAlgebroid R = relation_algebroid(pr);
  RatFun g = res.exactness.certificate;
  std::vector<RatFun> comps = res.cocycle.component_vector();
  for (std::size_t i = 0; i < R.algebroid.rank(); ++i)
    CHECK(R.algebroid.apply_anchor(i, g) / g == comps[i]);
}

TEST_CASE("an inclusion that is backward but not forward Dirac") {
  // iota: x -> (x, 0) into the symplectic plane. Backward: the pulled-back
  // form vanishes on the line, matching the zero-form graph. Forward: the
  // image fiber {(v, 0, 0, b)} never equals the symplectic graph fiber.
  Chart cl({"x"});
  PolyMap iota(cl, cn, {Poly::variable(cl, 0), Poly::zero(cl)});
  TensorField sympl = TensorField::zero(cn, TensorKind::Multivector, 2);
  sympl.add_signed({0, 1}, RatFun::one(cn));
  TensorField zero_form = TensorField::zero(cl, TensorKind::Form, 2);
  DiracMapProblem pr{iota, graph_of_twoform(zero_form),
                     graph_of_bivector(sympl), 20, 3};
  CHECK(check_dirac_map(pr, MapDirection::Backward).pass);
  CHECK(!check_dirac_map(pr, MapDirection::Forward).pass);
}

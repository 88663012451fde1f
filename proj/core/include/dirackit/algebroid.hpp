#pragma once

#include <array>
#include <map>
#include <string>

#include "dirackit/cartan.hpp"
#include "dirackit/gensection.hpp"
#include "dirackit/linalg.hpp"

namespace dirackit {

// Trivialized Lie algebroid over a chart: frame e_1..e_r, anchor rows
// rho(e_i), structure functions [e_i, e_j] = sum_k c^k_ij e_k stored for
// i < j and antisymmetrized on access.
class AlgebroidData {
 public:
  AlgebroidData(Chart chart, std::size_t rank);

  const Chart& chart() const { return chart_; }
  std::size_t rank() const { return rank_; }

  const Mat<RatFun>& anchor() const { return anchor_; }
  RatFun& anchor_at(std::size_t i, std::size_t j) { return anchor_.at(i, j); }
  // rho(e_i) as a vector field on the base.
  TensorField anchor_field(std::size_t i) const;
  // rho(e_i) applied to a function.
  RatFun apply_anchor(std::size_t i, const RatFun& f) const;

  RatFun structure(std::size_t i, std::size_t j, std::size_t k) const;
  // Accumulates into c^k_ij, normalizing the i > j order by antisymmetry.
  // A nonzero diagonal contribution is rejected.
  void add_structure(std::size_t i, std::size_t j, std::size_t k, RatFun v);
  const std::map<std::array<std::size_t, 3>, RatFun>& structure_table() const {
    return structure_;
  }

  static AlgebroidData tangent(const Chart& c);
  // T*M of a Poisson bivector: frame dx_i, anchor pi#, structure functions
  // from the Koszul bracket. pi must satisfy [pi, pi] = 0.
  static AlgebroidData cotangent_of_poisson(const TensorField& pi);

 private:
  Chart chart_;
  std::size_t rank_;
  Mat<RatFun> anchor_;
  std::map<std::array<std::size_t, 3>, RatFun> structure_;
};

// Antisymmetric A-form of fixed degree with RatFun coefficients on frame
// index tuples.
class AlgebroidCochain {
 public:
  AlgebroidCochain() = default;
  static AlgebroidCochain zero(const Chart& c, std::size_t rank,
                               unsigned degree);
  static AlgebroidCochain from_scalar(const Chart& c, std::size_t rank,
                                      RatFun value);
  static AlgebroidCochain one_cochain(const Chart& c,
                                      std::vector<RatFun> comps);

  const Chart& chart() const { return chart_; }
  std::size_t rank() const { return rank_; }
  unsigned degree() const { return degree_; }
  bool is_zero() const { return comps_.empty(); }
  const std::map<IndexTuple, RatFun>& components() const { return comps_; }

  RatFun coefficient(const IndexTuple& idx) const;
  // Coefficient on an arbitrary tuple, with the sign of the sorting
  // permutation (zero on repeated indices).
  RatFun signed_coefficient(IndexTuple idx) const;
  void add_signed(IndexTuple idx, RatFun coeff);
  std::vector<RatFun> component_vector() const;
  RatFun scalar_value() const;

  AlgebroidCochain operator-() const;
  AlgebroidCochain operator+(const AlgebroidCochain& o) const;
  AlgebroidCochain operator-(const AlgebroidCochain& o) const;
  AlgebroidCochain operator*(const RatFun& s) const;
  bool operator==(const AlgebroidCochain& o) const {
    return rank_ == o.rank_ && degree_ == o.degree_ && comps_ == o.comps_;
  }
  bool operator!=(const AlgebroidCochain& o) const { return !(*this == o); }

 private:
  Chart chart_;
  std::size_t rank_ = 0;
  unsigned degree_ = 0;
  std::map<IndexTuple, RatFun> comps_;
};

struct AxiomReport {
  bool ok = true;
  std::string witness;  // first failing identity when !ok
};

// Verifies anchor compatibility rho([e_i,e_j]) = [rho(e_i), rho(e_j)] and the
// frame Jacobi identity with anchor-derivative terms.
AxiomReport check_axioms(const AlgebroidData& A);

// Chevalley-Eilenberg differential; input degree 0, 1 or 2.
AlgebroidCochain da_differential(const AlgebroidData& A,
                                 const AlgebroidCochain& c);

// Scalings of the reference top sections: omega = frame_unit e_1^..^e_r,
// mu = base_unit dx_1^..^dx_n. Both units must be nowhere vanishing, which
// is the caller's contract.
struct TrivializationChoice {
  RatFun frame_unit;
  RatFun base_unit;
  static TrivializationChoice standard(const Chart& c) {
    return {RatFun::one(c), RatFun::one(c)};
  }
};

// alpha(e_i) = sum_k c^k_ik + div_mu(rho(e_i)) + rho(e_i)(frame_unit)/frame_unit.
// The output is d_A-closed.
AlgebroidCochain modular_cocycle(const AlgebroidData& A,
                                 const TrivializationChoice& t);

// Line bundle representation given by its connection cocycle.
struct LineRepresentation {
  AlgebroidData algebroid;
  AlgebroidCochain connection_form;  // degree 1, d_A-closed
};

// The characteristic cocycle of the representation; throws when the
// connection form is not closed.
AlgebroidCochain characteristic_cocycle(const LineRepresentation& L);
LineRepresentation dual(const LineRepresentation& L);
LineRepresentation tensor_product(const LineRepresentation& a,
                                  const LineRepresentation& b);

// Morphism of trivialized algebroids over base_map: source frame element i
// maps to sum_u fiber_map(i,u) e'_u composed with the base map.
struct AlgebroidMorphism {
  AlgebroidData source;
  AlgebroidData target;
  PolyMap base_map;
  Mat<RatFun> fiber_map;  // source.rank x target.rank, over the source chart
};

struct MorphismReport {
  bool ok = true;
  std::string witness;
};

// Anchor compatibility and the bracket condition
// sum_k c^k_ij F_kw = sum_uv F_iu F_jv (c'^w_uv o phi)
//                     + rho(e_i)(F_jw) - rho(e_j)(F_iw).
MorphismReport check_morphism(const AlgebroidMorphism& m);

// Phi* on cochains of degree <= 2 over the target.
AlgebroidCochain pullback_cochain(const AlgebroidMorphism& m,
                                  const AlgebroidCochain& xi);

// Representative of mod(Phi) = mod(source) - Phi* mod(target).
AlgebroidCochain morphism_modular_cocycle(const AlgebroidMorphism& m,
                                          const TrivializationChoice& ts,
                                          const TrivializationChoice& tt);

// Pullback algebroid of A along a submersion phi: frame = polynomial lifts
// of the anchor fields paired with the pulled-back frame, then a constant
// vertical frame for ker phi_*. Returns the algebroid together with the
// projection morphism onto A.
struct PullbackAlgebroid {
  AlgebroidData algebroid;
  AlgebroidMorphism projection;
  std::vector<TensorField> lifted_fields;    // one per frame element of A
  std::vector<TensorField> vertical_fields;  // constant coordinate kernel
};
PullbackAlgebroid pullback_algebroid(const AlgebroidData& A,
                                     const PolyMap& phi,
                                     unsigned lift_degree_bound = 0);

// Comorphism data: the fiber map on sections u_i = Phibar(e_i o phi) given by
// rows over the source chart, expressing each pulled frame element of B in
// the frame of A.
struct ComorphismResult {
  AlgebroidData algebroid;  // phi^! B over the source chart
  AlgebroidCochain cocycle;  // Phi* mod(A) - j* mod(B)
};
ComorphismResult comorphism_pullback(const AlgebroidData& A,
                                     const AlgebroidData& B,
                                     const PolyMap& phi,
                                     const Mat<RatFun>& phibar,
                                     const TrivializationChoice& ta,
                                     const TrivializationChoice& tb);

// Decides whether a closed degree-1 cochain is a d_A-coboundary within the
// bounded search space. Certificates are substituted back before returning.
struct ExactnessResult {
  enum class Kind { Exact, LogExact, Inconclusive } kind;
  RatFun certificate;  // f with d_A f = xi, or g with d_A(g)/g = xi
};
ExactnessResult exactness_test(const AlgebroidData& A,
                               const AlgebroidCochain& xi,
                               unsigned degree_bound);

}  // namespace dirackit

#pragma once

#include <string>
#include <vector>

#include "dirackit/dirac.hpp"

namespace dirackit {

// A map phi: M -> N between Dirac manifolds (L on M, K on N). All pointwise
// checks draw `samples` pole-free points from the seeded stream.
struct DiracMapProblem {
  PolyMap map;
  DiracSpec source;  // L
  DiracSpec target;  // K
  std::size_t samples = 25;
  std::uint64_t seed = 1;
};

// B_phi(K)_p = {(v, dphi_p^T b) : (dphi_p v, b) in K_{phi(p)}} as a row
// basis in Q^{2 dim M}.
std::vector<std::vector<Rational>> backward_image_point(
    const DiracSpec& K, const PolyMap& phi, const std::vector<Rational>& p);

// F_phi(L)_p = {(dphi_p v, b) : (v, dphi_p^T b) in L_p} as a row basis in
// Q^{2 dim N}.
std::vector<std::vector<Rational>> forward_image_point(
    const DiracSpec& L, const PolyMap& phi, const std::vector<Rational>& p);

enum class MapDirection { Forward, Backward };

// How far the verification got: every report is grounded pointwise; the
// symbolic level additionally matched generator spans over RatFun.
enum class CheckLevel { Pointwise, Symbolic };

struct MapReport {
  bool pass = true;
  CheckLevel level = CheckLevel::Pointwise;
  std::string witness;
  std::uint64_t seed = 0;
  std::size_t samples = 0;
};

// Backward: L_p = B_phi(K)_p at every sample. Forward: F_phi(L)_p = K_{phi(p)}.
MapReport check_dirac_map(const DiracMapProblem& pr, MapDirection dir);

// The paired fibers R_{(p, phi(p))} = {(s, t) in L_p x K_{phi(p)} :
// t is phi-related to s}. Admissible when the dimension is constant.
struct AdmissibleReport {
  bool admissible = false;
  std::size_t generic_rank = 0;
  std::vector<std::size_t> rank_profile;
  std::uint64_t seed = 0;
};
AdmissibleReport check_admissible(const DiracMapProblem& pr);

// The relation algebroid over graph(phi), parameterized by M: sections are
// pairs (sum lambda s^L, sum mu s^K o phi) satisfying both phi-relatedness
// conditions. Brackets act componentwise, with the K-side expanded along phi
// by the Leibniz rule through the anchor of the first component.
struct RelationAlgebroid {
  AlgebroidData algebroid;  // over the source chart
  Mat<RatFun> lambda;       // rank x #gen(L): L-side coefficients
  Mat<RatFun> mu;           // rank x #gen(K): K-side coefficients
  std::vector<GenSection> first;                 // realized L-side sections
  std::vector<std::vector<RatFun>> second_vec;   // K-side vectors along phi
  std::vector<std::vector<RatFun>> second_form;  // K-side forms along phi
  AlgebroidMorphism morphism_i;  // projection to the L-algebroid
  AlgebroidMorphism morphism_j;  // projection to the K-algebroid over phi
};

// Throws on admissibility failure, bracket-closure failure, or a failing
// projection morphism; the message carries the witness.
RelationAlgebroid relation_algebroid(const DiracMapProblem& pr);

// mod phi = i* mod L - j* mod K on the relation algebroid, with an
// exactness verdict for the resulting closed cochain.
struct MapModularResult {
  AlgebroidCochain cocycle;
  ExactnessResult exactness;
};
MapModularResult dirac_map_modular_cocycle(const DiracMapProblem& pr,
                                           const TrivializationChoice& tl,
                                           const TrivializationChoice& tk,
                                           unsigned degree_bound = 4);

}  // namespace dirackit

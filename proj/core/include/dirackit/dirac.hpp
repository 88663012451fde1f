#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dirackit/algebroid.hpp"
#include "dirackit/gensection.hpp"
#include "dirackit/sample.hpp"

namespace dirackit {

// Dirac structure presented by generator sections spanning a maximal
// isotropic subbundle of TM + T*M. With ambient_poisson set, the structure
// lives in the double of the bialgebroid (TM, T*M_pi): the pairing is
// unchanged but brackets and anchors pick up the pi-terms.
struct DiracSpec {
  Chart chart;
  std::vector<GenSection> generators;
  std::optional<TensorField> ambient_poisson;

  bool bialgebroid() const { return ambient_poisson.has_value(); }
  GenSection bracket(const GenSection& s, const GenSection& t) const;
  TensorField anchor_of(const GenSection& s) const;
};

// Graph presentations. Both verify their integrability input ([pi,pi] = 0,
// d omega = 0) and throw with the witness otherwise.
DiracSpec graph_of_bivector(const TensorField& pi);
DiracSpec graph_of_twoform(const TensorField& omega);

struct DiracReport {
  std::size_t rank = 0;
  bool spanning = false;         // generic rank equals dim M
  bool isotropic = false;        // all pairings identically zero
  bool integrable = false;       // brackets close onto the generators
  bool characteristic_ok = false;  // fiberwise annihilator identities
  std::uint64_t seed = 0;
  std::size_t samples = 0;
  std::string witness;
  // lambda with [s_i, s_j] = sum_k lambda_k s_k, keyed by (i, j), i < j.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<RatFun>>
      certificates;

  bool ok() const {
    return spanning && isotropic && integrable && characteristic_ok;
  }
};

// Rank, isotropy, bracket closure with certificates, and the characteristic
// equations L n TM = ann(pr_{T*}L), L n T*M = ann(pr_T L) checked fiberwise
// at seeded pole-free rational points.
DiracReport check_dirac(const DiracSpec& spec, std::uint64_t seed = 1,
                        std::size_t samples = 100);

// The Lie algebroid carried by an integrable spec: frame = generators,
// anchor rows from anchor_of, structure functions from the closure
// certificates. Throws when check_dirac fails.
AlgebroidData dirac_to_algebroid(const DiracSpec& spec);

struct DistributionSpec {
  Chart chart;
  std::vector<TensorField> generators;
  std::size_t generic_rank = 0;
  bool involutive = false;
  bool constant_rank = false;  // fiber dimension matches at every sample
};

// L n TM over the fraction field: generator combinations with zero form
// part. Involutivity and pointwise rank constancy are recorded.
DistributionSpec characteristic_distribution(const DiracSpec& spec,
                                             std::uint64_t seed = 1,
                                             std::size_t samples = 25);

// L = D + graph(Pi# on the annihilator of D), with Pi gauge-fixed to have
// zero contraction with the coordinate directions spanning D.
struct CharacteristicPair {
  DistributionSpec distribution;
  TensorField bivector;
};
CharacteristicPair characteristic_pair(const DiracSpec& spec);

// Hamiltonian companion X_f with X_f + df a section of L, when one exists
// over RatFun.
std::optional<TensorField> hamiltonian_lift(const DiracSpec& spec,
                                            const RatFun& f);

// {f, g} = X_f(g) on admissible functions. Throws when a lift is missing.
RatFun admissible_bracket(const DiracSpec& spec, const RatFun& f,
                          const RatFun& g);

// Phi(X + a) = X + pi#a + a turns a bialgebroid spec into an ordinary Dirac
// structure with the same algebroid data. flip_sharp negates the pi# term
// and exists as a deliberate sign-error control; with it the structure
// functions no longer match.
DiracSpec bialgebroid_flatten(const DiracSpec& spec, bool flip_sharp = false);

// Modular cocycle of the underlying Lie algebroid.
AlgebroidCochain modular_cocycle_dirac(const DiracSpec& spec,
                                       const TrivializationChoice& t);

}  // namespace dirackit

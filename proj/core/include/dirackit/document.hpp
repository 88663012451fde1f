#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dirackit/dirac_maps.hpp"

namespace dirackit {

// Declared reduction: the quotient chart keeps the named coordinates and the
// projection drops the rest. The reduction check verifies the declaration
// instead of constructing a leaf space.
struct ReductionBlock {
  std::vector<std::string> quotient_vars;
  PolyMap projection;  // coordinate projection onto the quotient chart
};

// One parsed input document. Top-level JSON blocks: chart, poisson, twoform,
// algebroid, dirac, reduction, map_problem, checks. Every scalar inside a
// geometric block is an expression string over the owning chart.
struct Document {
  std::optional<Chart> chart;
  std::optional<TensorField> poisson;
  std::optional<TensorField> twoform;
  std::optional<AlgebroidData> algebroid;
  std::optional<DiracSpec> dirac;
  std::optional<ReductionBlock> reduction;
  std::optional<DiracMapProblem> map_problem;
  std::vector<std::string> checks;
};

// Throws Error on malformed JSON, unknown blocks, bad expressions, or
// references that do not resolve.
Document parse_document(const std::string& text);
Document load_document(const std::string& path);

// Quotient data of a declared reduction: the characteristic distribution
// must be the vertical bundle of the projection and the gauge-fixed bivector
// must be constant along the fibers. Throws with a witness when the
// declaration does not verify (rank mismatch, non-vertical characteristic
// direction, fiber-dependent or non-Poisson quotient bivector).
struct QuotientData {
  TensorField bivector;  // Poisson bivector on the quotient chart
  DiracSpec graph;
};
QuotientData reduce_dirac(const DiracSpec& L, const ReductionBlock& r);

}  // namespace dirackit

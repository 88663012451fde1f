#include "dirackit/corpus.hpp"

namespace dirackit {

namespace {

std::vector<CorpusItem> build() {
  std::vector<CorpusItem> items;

  items.push_back(CorpusItem{
      "symplectic-r2",
      R"({
  "chart": ["x", "y"],
  "poisson": [{"on": ["x", "y"], "coeff": "1"}],
  "dirac": {"generators": [
    {"vec": ["0", "1"],  "form": ["1", "0"]},
    {"vec": ["-1", "0"], "form": ["0", "1"]}
  ]},
  "checks": ["poisson", "dirac", "characteristic", "modular"]
})",
      {{"poisson", "PASS"},
       {"dirac", "PASS"},
       {"characteristic", "PASS"},
       {"modular", "PASS"}},
      "constant bivector on a 2-chart: the Schouten square vanishes term by "
      "term, the graph closes with zero structure functions, and every "
      "divergence in the modular cocycle is zero"});

  items.push_back(CorpusItem{
      "presymplectic-graph",
      R"({
  "chart": ["x", "y", "z"],
  "twoform": [{"on": ["x", "y"], "coeff": "1"}],
  "dirac": {"generators": [
    {"vec": ["1", "0", "0"], "form": ["0", "1", "0"]},
    {"vec": ["0", "1", "0"], "form": ["-1", "0", "0"]},
    {"vec": ["0", "0", "1"], "form": ["0", "0", "0"]}
  ]},
  "reduction": {"quotient_vars": ["x", "y"]},
  "checks": ["closed", "dirac", "characteristic", "reduction", "modular"]
})",
      {{"closed", "PASS"},
       {"dirac", "PASS"},
       {"characteristic", "PASS"},
       {"reduction", "PASS"},
       {"modular", "PASS"}},
      "graph of the constant form dx^dy on a 3-chart: the kernel direction "
      "d/dz spans the characteristic distribution, the quotient carries the "
      "inverse bivector, and the modular cocycle vanishes because anchors "
      "are coordinate fields with zero structure functions"});

  items.push_back(CorpusItem{
      "poisson-xdxdy",
      R"({
  "chart": ["x", "y"],
  "poisson": [{"on": ["x", "y"], "coeff": "x"}],
  "dirac": {"generators": [
    {"vec": ["0", "x"],  "form": ["1", "0"]},
    {"vec": ["-x", "0"], "form": ["0", "1"]}
  ]},
  "checks": ["poisson", "dirac", "characteristic", "modular"]
})",
      {{"poisson", "PASS"},
       {"dirac", "PASS"},
       {"characteristic", "PASS"},
       {"modular", "PASS"}},
      "x d/dx^d/dy: hand computation gives [dx,dy] = dx in the graph frame "
      "and modular cocycle (0, -2) against the coordinate volume; any "
      "bivector on a 2-chart is Poisson"});

  items.push_back(CorpusItem{
      "so3-dual",
      R"({
  "chart": ["x", "y", "z"],
  "poisson": [
    {"on": ["x", "y"], "coeff": "z"},
    {"on": ["y", "z"], "coeff": "x"},
    {"on": ["z", "x"], "coeff": "y"}
  ],
  "dirac": {"generators": [
    {"vec": ["0", "z", "-y"], "form": ["1", "0", "0"]},
    {"vec": ["-z", "0", "x"], "form": ["0", "1", "0"]},
    {"vec": ["y", "-x", "0"], "form": ["0", "0", "1"]}
  ]},
  "checks": ["poisson", "dirac", "modular"]
})",
      {{"poisson", "PASS"}, {"dirac", "PASS"}, {"modular", "PASS"}},
      "linear bivector with cyclic coefficients: the Jacobi identity is the "
      "classical cross-product identity, and the modular cocycle vanishes "
      "because each sharp image is divergence free and the structure trace "
      "cancels"});

  items.push_back(CorpusItem{
      "non-poisson-witness",
      R"({
  "chart": ["x", "y", "z"],
  "poisson": [
    {"on": ["x", "y"], "coeff": "y"},
    {"on": ["y", "z"], "coeff": "x"}
  ],
  "checks": ["poisson"]
})",
      {{"poisson", "FAIL"}},
      "hand computation: the Jacobi cycle {x,{y,z}} + {y,{z,x}} + {z,{x,y}} "
      "equals -x, so the Schouten square is nonzero and the check must fail "
      "with a printed witness"});

  items.push_back(CorpusItem{
      "reducible-r3",
      R"({
  "chart": ["x", "y", "t"],
  "dirac": {"generators": [
    {"vec": ["0", "0", "1"],  "form": ["0", "0", "0"]},
    {"vec": ["0", "x", "0"],  "form": ["1", "0", "0"]},
    {"vec": ["-x", "0", "0"], "form": ["0", "1", "0"]}
  ]},
  "reduction": {"quotient_vars": ["x", "y"]},
  "checks": ["dirac", "characteristic", "reduction", "modular"]
})",
      {{"dirac", "PASS"},
       {"characteristic", "PASS"},
       {"reduction", "PASS"},
       {"modular", "PASS"}},
      "the graph of x d/dx^d/dy extended by the inert direction d/dt: the "
      "characteristic distribution is span{d/dt}, the declared quotient "
      "carries x d/dx^d/dy, and the projection is checked as a two-sided "
      "Dirac map"});

  items.push_back(CorpusItem{
      "projection-poisson-map",
      R"({
  "map_problem": {
    "map": ["x"],
    "source": {"chart": ["x", "y"], "generators": [
      {"vec": ["0", "1"],  "form": ["1", "0"]},
      {"vec": ["-1", "0"], "form": ["0", "1"]}
    ]},
    "target": {"chart": ["t"], "generators": [
      {"vec": ["0"], "form": ["1"]}
    ]},
    "samples": 25,
    "seed": 1
  },
  "checks": ["forward", "backward", "admissible", "relation", "mod_map"]
})",
      {{"forward", "PASS"},
       {"backward", "FAIL"},
       {"admissible", "PASS"},
       {"relation", "PASS"},
       {"mod_map", "PASS"}},
      "projecting the symplectic plane onto the zero Poisson line: the "
      "forward image is the zero graph while the backward image of the zero "
      "graph is two dimensional and cannot match the source, so the "
      "backward check fails by a rank count at any sample; the relation "
      "fiber is spanned by the single pair (d/dy + dx, dt), and both "
      "modular cocycles vanish"});

  items.push_back(CorpusItem{
      "poisson-dirac-inclusion",
      R"({
  "map_problem": {
    "map": ["x", "y", "0", "0"],
    "source": {"chart": ["x", "y"], "generators": [
      {"vec": ["0", "1"],  "form": ["1", "0"]},
      {"vec": ["-1", "0"], "form": ["0", "1"]}
    ]},
    "target": {"chart": ["p", "q", "r", "s"], "generators": [
      {"vec": ["0", "1", "0", "0"],  "form": ["1", "0", "0", "0"]},
      {"vec": ["-1", "0", "0", "0"], "form": ["0", "1", "0", "0"]},
      {"vec": ["0", "0", "0", "1"],  "form": ["0", "0", "1", "0"]},
      {"vec": ["0", "0", "-1", "0"], "form": ["0", "0", "0", "1"]}
    ]},
    "samples": 25,
    "seed": 1
  },
  "checks": ["backward", "forward", "admissible", "relation", "mod_map"]
})",
      {{"backward", "PASS"},
       {"forward", "FAIL"},
       {"admissible", "PASS"},
       {"relation", "PASS"},
       {"mod_map", "PASS"}},
      "the symplectic plane sits inside the symplectic 4-space as the first "
      "factor: pulling the big graph back along (x,y,0,0) reproduces the "
      "small graph, while the forward image misses the dr, ds directions; "
      "the relation fiber is two dimensional, matching dp and dq along the "
      "inclusion, and both modular cocycles vanish"});

  items.push_back(CorpusItem{
      "submanifold-inclusion",
      R"({
  "map_problem": {
    "map": ["u", "v", "u*v"],
    "source": {"chart": ["u", "v"], "generators": [
      {"vec": ["1", "0"], "form": ["0", "1 + u^2"]},
      {"vec": ["0", "1"], "form": ["-1 - u^2", "0"]}
    ]},
    "target": {"chart": ["x", "y", "z"], "generators": [
      {"vec": ["1", "0", "0"], "form": ["0", "1", "x"]},
      {"vec": ["0", "1", "0"], "form": ["-1", "0", "0"]},
      {"vec": ["0", "0", "1"], "form": ["-x", "0", "0"]}
    ]},
    "samples": 25,
    "seed": 1
  },
  "checks": ["backward", "forward", "admissible", "relation", "mod_map"]
})",
      {{"backward", "PASS"},
       {"forward", "FAIL"},
       {"admissible", "PASS"},
       {"relation", "PASS"},
       {"mod_map", "PASS"}},
      "hand computation: the pullback of dx^dy + x dx^dz along "
      "(u,v) -> (u,v,uv) is (1 + u^2) du^dv, so the source is the backward "
      "image of the target graph; the forward image acquires a pure-form "
      "direction that the target graph lacks, so the forward check fails"});

  items.push_back(CorpusItem{
      "poisson-submanifold-inclusion",
      R"({
  "map_problem": {
    "map": ["x", "y", "0"],
    "source": {"chart": ["x", "y"], "generators": [
      {"vec": ["0", "1"],  "form": ["1", "0"]},
      {"vec": ["-1", "0"], "form": ["0", "1"]}
    ]},
    "target": {"chart": ["x", "y", "z"], "generators": [
      {"vec": ["0", "1", "0"],  "form": ["1", "0", "0"]},
      {"vec": ["-1", "0", "0"], "form": ["0", "1", "0"]},
      {"vec": ["0", "0", "0"],  "form": ["0", "0", "1"]}
    ]},
    "samples": 25,
    "seed": 1
  },
  "checks": ["forward", "backward", "admissible", "relation", "mod_map"]
})",
      {{"forward", "PASS"},
       {"backward", "PASS"},
       {"admissible", "PASS"},
       {"relation", "PASS"},
       {"mod_map", "PASS"}},
      "the plane {z = 0} with the ambient bivector d/dx^d/dy tangent to it: "
      "the inclusion is simultaneously a forward and a backward Dirac map, "
      "the relation fiber is three dimensional (dz pairs with the zero "
      "section), and both modular cocycles vanish"});

  return items;
}

}  // namespace

const std::vector<CorpusItem>& corpus() {
  static const std::vector<CorpusItem> items = build();
  return items;
}

const CorpusItem* find_corpus_item(const std::string& id) {
  for (const CorpusItem& it : corpus()) {
    if (it.id == id) return &it;
  }
  return nullptr;
}

}  // namespace dirackit

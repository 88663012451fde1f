#include <algorithm>
#include <functional>
#include <map>
#include <utility>

#include "dirackit/algebroid.hpp"
#include "dirackit/error.hpp"

namespace dirackit {

namespace {

std::vector<Mono> monomials_in_degree_range(const Chart& c, unsigned bound) {
  std::vector<Mono> out;
  Mono m(c.dim(), 0);
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t var,
                                                       unsigned left) {
    if (var == c.dim()) {
      out.push_back(m);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      m[var] = e;
      rec(var + 1, left - e);
      m[var] = 0;
    }
  };
  rec(0, bound);
  std::sort(out.begin(), out.end(), GrlexLess{});
  // d_A kills constants, so they only pad the kernel.
  while (!out.empty() && out.front() == Mono(c.dim(), 0))
    out.erase(out.begin());
  return out;
}

Poly mono_poly(const Chart& c, const Mono& m) {
  Poly p = Poly::one(c);
  for (std::size_t i = 0; i < c.dim(); ++i)
    p = p * Poly::variable(c, i).pow(m[i]);
  return p;
}

Poly poly_lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.chart());
  return monic(divexact(a * b, gcd(a, b)));
}

// Matches polynomial coefficients of sum_m t_m * lhs[m] = rhs across a list
// of already denominator-cleared equations and solves over Q.
struct CoefficientSystem {
  explicit CoefficientSystem(std::size_t unknowns) : cols(unknowns) {}

  void add_equation(const std::vector<Poly>& lhs, const Poly& rhs) {
    std::map<Mono, std::map<std::size_t, Rational>, GrlexLess> rows;
    std::map<Mono, Rational, GrlexLess> rhs_rows;
    for (std::size_t m = 0; m < lhs.size(); ++m)
      for (const auto& [mono, coeff] : lhs[m].terms()) rows[mono][m] += coeff;
    for (const auto& [mono, coeff] : rhs.terms()) {
      rhs_rows[mono] = coeff;
      (void)rows[mono];
    }
    for (const auto& [mono, entries] : rows) {
      std::vector<Rational> row(cols, Rational(0));
      for (const auto& [col, val] : entries) row[col] = val;
      matrix.push_back(std::move(row));
      auto it = rhs_rows.find(mono);
      rhs_vec.push_back(it == rhs_rows.end() ? Rational(0) : it->second);
    }
  }

  LinSolution<Rational> solve() const {
    Mat<Rational> A = rational_matrix(matrix.size(), cols);
    for (std::size_t i = 0; i < matrix.size(); ++i)
      for (std::size_t j = 0; j < cols; ++j) A.at(i, j) = matrix[i][j];
    return solve_linear(A, rhs_vec);
  }

  std::size_t cols;
  std::vector<std::vector<Rational>> matrix;
  std::vector<Rational> rhs_vec;
};

// Splits the collection into a pairwise-coprime set of monic nonconstant
// polynomials with the same multiplicative span.
std::vector<Poly> gcd_free_basis(std::vector<Poly> in) {
  std::vector<Poly> basis;
  auto push = [&](Poly p) {
    p = monic(p);
    if (p.is_zero() || p.is_constant()) return;
    for (const Poly& q : basis)
      if (q == p) return;
    basis.push_back(std::move(p));
  };
  for (Poly& p : in) push(std::move(p));
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < basis.size() && !changed; ++i)
      for (std::size_t j = i + 1; j < basis.size() && !changed; ++j) {
        Poly g = gcd(basis[i], basis[j]);
        if (g.is_constant()) continue;
        Poly pi = divexact(basis[i], g);
        Poly pj = divexact(basis[j], g);
        basis.erase(basis.begin() + j);
        basis.erase(basis.begin() + i);
        std::vector<Poly> items = std::move(basis);
        basis.clear();
        for (Poly& q : items) push(std::move(q));
        push(std::move(pi));
        push(std::move(pj));
        push(std::move(g));
        changed = true;
      }
  }
  std::sort(basis.begin(), basis.end(), [](const Poly& a, const Poly& b) {
    if (a.total_degree() != b.total_degree())
      return a.total_degree() < b.total_degree();
    return GrlexLess{}(a.leading_mono(), b.leading_mono());
  });
  return basis;
}

void collect_factors(const RatFun& f, std::vector<Poly>* out) {
  Poly n = squarefree_part(f.num());
  Poly d = squarefree_part(f.den());
  if (!n.is_constant()) out->push_back(n);
  if (!d.is_constant()) out->push_back(d);
}

}  // namespace

ExactnessResult exactness_test(const AlgebroidData& A,
                               const AlgebroidCochain& xi,
                               unsigned degree_bound) {
  if (xi.degree() != 1 || xi.rank() != A.rank())
    throw Error("exactness_test: expects a degree-1 cochain over A");
  if (!da_differential(A, xi).is_zero())
    throw Error("exactness_test: cochain is not closed");
  const Chart& c = A.chart();
  std::size_t r = A.rank();
  std::vector<RatFun> target(r, RatFun::zero(c));
  for (std::size_t i = 0; i < r; ++i)
    target[i] = xi.coefficient({static_cast<std::uint8_t>(i)});

  // Polynomial ansatz: f = sum_m t_m x^m with deg <= bound.
  {
    std::vector<Mono> basis = monomials_in_degree_range(c, degree_bound);
    std::vector<std::vector<RatFun>> G(
        r, std::vector<RatFun>(basis.size(), RatFun::zero(c)));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t m = 0; m < basis.size(); ++m)
        G[i][m] = A.apply_anchor(i, RatFun::from_poly(mono_poly(c, basis[m])));

    CoefficientSystem sys(basis.size());
    for (std::size_t i = 0; i < r; ++i) {
      Poly D = target[i].den();
      for (std::size_t m = 0; m < basis.size(); ++m)
        D = poly_lcm(D, G[i][m].den());
      RatFun Df = RatFun::from_poly(D);
      std::vector<Poly> lhs;
      lhs.reserve(basis.size());
      for (std::size_t m = 0; m < basis.size(); ++m)
        lhs.push_back((G[i][m] * Df).num());
      sys.add_equation(lhs, (target[i] * Df).num());
    }
    LinSolution<Rational> sol = sys.solve();
    if (sol.consistent) {
      Poly f = Poly::zero(c);
      for (std::size_t m = 0; m < basis.size(); ++m)
        if (!sol.particular[m].is_zero())
          f.add_term(basis[m], sol.particular[m]);
      RatFun fr = RatFun::from_poly(f);
      bool ok = true;
      for (std::size_t i = 0; i < r && ok; ++i)
        ok = (A.apply_anchor(i, fr) - target[i]).is_zero();
      if (ok) return {ExactnessResult::Kind::Exact, fr};
    }
  }

  // Logarithmic ansatz: xi = d_A(g)/g with g a product of bounded integer
  // powers of the irreducible-ish factors seen in the data.
  {
    std::vector<Poly> raw;
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c.dim(); ++j)
        collect_factors(A.anchor().at(i, j), &raw);
      collect_factors(target[i], &raw);
    }
    for (const auto& [key, f] : A.structure_table()) {
      (void)key;
      collect_factors(f, &raw);
    }
    std::vector<Poly> cand = gcd_free_basis(std::move(raw));
    if (!cand.empty()) {
      CoefficientSystem sys(cand.size());
      for (std::size_t j = 0; j < r; ++j) {
        // sum_i k_i a(e_j)(p_i)/p_i = xi_j, denominators cleared.
        std::vector<RatFun> terms;
        terms.reserve(cand.size());
        Poly D = target[j].den();
        for (const Poly& p : cand) {
          RatFun t = A.apply_anchor(j, RatFun::from_poly(p)) /
                     RatFun::from_poly(p);
          D = poly_lcm(D, t.den());
          terms.push_back(std::move(t));
        }
        RatFun Df = RatFun::from_poly(D);
        std::vector<Poly> lhs;
        for (const RatFun& t : terms) lhs.push_back((t * Df).num());
        sys.add_equation(lhs, (target[j] * Df).num());
      }
      LinSolution<Rational> sol = sys.solve();
      if (sol.consistent) {
        bool integral = true;
        for (const Rational& k : sol.particular) {
          if (denominator(k) != 1 ||
              abs(numerator(k)) > Integer(degree_bound)) {
            integral = false;
            break;
          }
        }
        if (integral) {
          Poly num = Poly::one(c), den = Poly::one(c);
          for (std::size_t i = 0; i < cand.size(); ++i) {
            Integer k = numerator(sol.particular[i]);
            if (k > 0)
              num = num * cand[i].pow(static_cast<unsigned>(k));
            else if (k < 0)
              den = den * cand[i].pow(static_cast<unsigned>(-k));
          }
          RatFun g(num, den);
          bool ok = !g.is_constant();
          for (std::size_t j = 0; j < r && ok; ++j)
            ok = (A.apply_anchor(j, g) - target[j] * g).is_zero();
          if (ok) return {ExactnessResult::Kind::LogExact, g};
        }
      }
    }
  }

  return {ExactnessResult::Kind::Inconclusive, RatFun::zero(c)};
}

}  // namespace dirackit

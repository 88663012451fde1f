#pragma once

#include <vector>

#include "dirackit/polymap.hpp"
#include "dirackit/tensor.hpp"

namespace dirackit {

// Directional derivative X(f) for a vector field X.
RatFun apply_vector(const TensorField& X, const RatFun& f);

// Natural pairing of a one-form with a vector field, in either order.
RatFun natural_pairing(const TensorField& a, const TensorField& b);

// df as a one-form.
TensorField differential(const RatFun& f);

// Exterior derivative of a form (degree 0 allowed).
TensorField exterior_derivative(const TensorField& w);

// Contraction of a degree-1 field into a degree >= 1 field of the opposite
// kind: i_X w for forms, i_a P for multivectors. Both act as the left
// derivation, so on decomposables the j-th slot contributes (-1)^{j+1}.
TensorField interior_product(const TensorField& a, const TensorField& T);

// Schouten bracket of multivectors, normalized so that [X, f] = X(f) and
// degree-1 fields recover the Lie bracket. Graded skew with shifted degrees:
// [P, Q] = -(-1)^{(p-1)(q-1)} [Q, P].
TensorField schouten_bracket(const TensorField& P, const TensorField& Q);

// Lie derivative along a vector field: Cartan's formula on forms, the
// Schouten bracket on multivectors.
TensorField lie_derivative(const TensorField& X, const TensorField& T);

// Divergence with respect to the volume density u dx_1 ^ ... ^ dx_n:
// L_X (u dx) = div(X) u dx. u must be nonzero.
RatFun divergence(const TensorField& X, const RatFun& density);

// phi^* w for a form w on the target chart of phi.
TensorField pullback_form(const PolyMap& phi, const TensorField& w);

// d(phi)_p X(p): numeric pushforward of a vector field at a point.
std::vector<Rational> pushforward_vector_at(const PolyMap& phi,
                                            const TensorField& X,
                                            const std::vector<Rational>& p);

// pi#(a) = i_a pi for a bivector pi and one-form a.
TensorField sharp(const TensorField& pi, const TensorField& alpha);

// pi(a, b) = <b, pi#(a)>.
RatFun bivector_eval(const TensorField& pi, const TensorField& alpha,
                     const TensorField& beta);

// Koszul bracket of one-forms:
// [a, b]_pi = L_{pi#a} b - L_{pi#b} a - d(pi(a, b)).
TensorField koszul_bracket(const TensorField& pi, const TensorField& alpha,
                           const TensorField& beta);

// Lichnerowicz differential d_pi P = [pi, P]. On functions d_pi f = -pi#(df).
TensorField d_pi(const TensorField& pi, const TensorField& P);

// Lie derivative along a one-form on multivectors: i_a d_pi + d_pi i_a.
TensorField lie_by_form(const TensorField& pi, const TensorField& alpha,
                        const TensorField& P);

// Hamiltonian vector field X_f = pi#(df); the induced bracket is
// {f, g} = X_f(g).
TensorField hamiltonian_field(const TensorField& pi, const RatFun& f);

// Modular vector field of (pi, u dx): the i-th component is the divergence
// of the Hamiltonian field of the i-th coordinate.
TensorField modular_vector_field(const TensorField& pi, const RatFun& density);

}  // namespace dirackit

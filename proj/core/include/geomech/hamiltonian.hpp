// Part of geomech. SPDX-License-Identifier: MIT
//
// Hamiltonian formalism on the phase space with fibres (q, p) over the time
// axis. Scalars here are phase functions F(t, q, p); the bracket follows the
// convention {f,g} = df/dp_i dg/dq^i - dg/dp_i df/dq^i, so {p1,q1} = +1 and
// the Hamilton equations read q^i_t = dH/dp_i, p_ti = -dH/dq^i. The bridge
// to the variational side is the density p_i q^i_t - H, whose variational
// derivatives reproduce exactly those equations; quadratic hyperregular
// densities invert in closed form. A Hamiltonian is stored per coordinate
// system and is not transformed across systems: under a time-dependent
// change it shifts by the frame term p_i Gamma^i rather than mapping as a
// scalar.

#ifndef GEOMECH_HAMILTONIAN_HPP
#define GEOMECH_HAMILTONIAN_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include <geomech/coords.hpp>
#include <geomech/expr.hpp>
#include <geomech/frames.hpp>
#include <geomech/integrate.hpp>
#include <geomech/lagrangian.hpp>
#include <geomech/linalg.hpp>
#include <geomech/symmetry.hpp>
#include <geomech/zerotest.hpp>

namespace geomech
{

// Scalar H(t, q, p) on a phase system; jets are rejected.
class hamiltonian
{
public:
    hamiltonian(coord_system cs, expr_ptr H);

    const coord_system& cs() const { return cs_; }
    const expr_ptr& density() const { return H_; }

private:
    coord_system cs_;
    expr_ptr H_;
};

// {f,g} summed over the base fibres of the phase system cs; f and g must be
// phase functions (jet order 0).
expr_ptr poisson_bracket(const coord_system& cs, const expr_ptr& f, const expr_ptr& g);

// Right-hand sides q^i_t = q_rhs[i], p_ti = p_rhs[i].
struct hamilton_equations_data {
    coord_system cs;
    std::vector<expr_ptr> q_rhs; // dH/dp_i
    std::vector<expr_ptr> p_rhs; // -dH/dq^i
};

hamilton_equations_data hamilton_equations(const hamiltonian& H);

// Vector field ut d_t + q_comps[i] d_i + p_comps[i] d^i on a phase system,
// with constant time component and phase-function coefficients.
struct phase_field {
    phase_field(coord_system cs, int ut, std::vector<expr_ptr> q_comps,
                std::vector<expr_ptr> p_comps);

    coord_system cs;
    int ut = 0;
    std::vector<expr_ptr> q_comps;
    std::vector<expr_ptr> p_comps;
};

// gamma_H = d_t + dH/dp_i d_i - dH/dq^i d^i, the field whose flow solves the
// Hamilton equations.
phase_field hamilton_field(const hamiltonian& H);

// theta_F = dF/dp_i d_i - dF/dq^i d^i, the vertical part of the same recipe.
phase_field vertical_hamilton_field(const coord_system& cs, const expr_ptr& F);

// Componentwise [X,Y]^A = X(Y^A) - Y(X^A); the time component of the result
// is always 0 since both inputs carry constant ones.
phase_field commutator(const phase_field& X, const phase_field& Y);

// Matrix r_ij = d(p-comp_i)/dp_j + d(q-comp_j)/dq^i. Identically zero for
// every canonical lift; a nonzero entry certifies the field is not one.
expr_matrix lift_condition_residuals(const phase_field& X);

// d_t F + {H, F}: the derivative of F along gamma_H. F is an integral of
// motion exactly when this vanishes.
expr_ptr evolution(const expr_ptr& F, const hamiltonian& H);

// Closed-form inversion for densities quadratic in the velocities,
// L = m_ij q^i_t q^j_t / 2 + b_i q^i_t + c with velocity-independent
// invertible m: the result is H = (p-b)^T m^{-1} (p-b) / 2 - c on the phase
// companion of L's system. Throws invalid_argument when L is not of that
// shape and domain_error when m is provably singular.
hamiltonian legendre_invert(const lagrangian& L, std::uint64_t seed = 0);

// The density p_i q^i_t - H as a first-order variational problem on the
// phase system, with verdicts that its variational derivatives are the
// Hamilton equations: the row of fibre q^i minus (p_rhs[i] - p_ti) and the
// row of fibre p_i minus (q^i_t - q_rhs[i]).
struct canonical_lagrangian {
    lagrangian density;
    std::vector<zero_report> q_rows;
    std::vector<zero_report> p_rows;
};

canonical_lagrangian lagrangian_LH(const hamiltonian& H, std::uint64_t seed = 0);

// Functorial lift of a classical field u = ut d_t + u^i(t,q) d_i to the
// phase system: p-components -p_j du^j/dq^i. Generalized fields are
// rejected.
phase_field canonical_lift(const jet_field& u, const coord_system& phase);

// Current p_i u^i - ut H together with the verdict on the canonical-symmetry
// residual -ut dH/dt + p_i du^i/dt - u^i dH/dq^i + p_i du^i/dq^j dH/dp_j;
// exact when it vanishes, not_shown otherwise (residual attached).
struct hamiltonian_current {
    expr_ptr current;
    expr_ptr residual;
    symmetry_class cls = symmetry_class::not_shown;
    zero_report verdict;
};

hamiltonian_current hamiltonian_symmetry_current(const jet_field& u, const hamiltonian& H,
                                                 std::uint64_t seed = 0);

// H - p_i Gamma^i, the energy function relative to the frame; two frames
// differ by p_i (Gamma'^i - Gamma^i).
expr_ptr frame_energy(const hamiltonian& H, const reference_frame& fr);

// RK4 on the first-order Hamilton equations; columns follow the phase
// fibres (q1..qn, p1..pn).
trajectory integrate_hamilton(const hamiltonian& H, const std::vector<double>& q0,
                              const std::vector<double>& p0, const integrator_config& cfg);

} // namespace geomech

#endif

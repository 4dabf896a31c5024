// Part of geomech. SPDX-License-Identifier: MIT
//
// First-order Lagrangian formalism. A scalar density L(t, q, q_t) yields the
// variational derivatives E_i = (d_i - d_t dv_i) L, the momenta pi_i and
// their velocity Hessian, a regularity classification of that Hessian, the
// unique dynamic equation of a regular density, the Poincare-Cartan data
// with its pair of first-order residual families on hatted velocities, and
// frame-relative energy functions. An inverse problem check decides whether
// a given second-order operator is variational at all.

#ifndef GEOMECH_LAGRANGIAN_HPP
#define GEOMECH_LAGRANGIAN_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <geomech/coords.hpp>
#include <geomech/dynamics.hpp>
#include <geomech/eval.hpp>
#include <geomech/expr.hpp>
#include <geomech/frames.hpp>
#include <geomech/linalg.hpp>
#include <geomech/zerotest.hpp>

namespace geomech
{

// Scalar density of jet order <= 1 on a configuration system.
class lagrangian
{
public:
    lagrangian(coord_system cs, expr_ptr L);

    const coord_system& cs() const { return cs_; }
    const expr_ptr& density() const { return L_; }

private:
    coord_system cs_;
    expr_ptr L_;
};

// Rows of a second-order operator E_i(t, q, q_t, q_tt), covariant in i.
struct lagrange_operator {
    lagrange_operator(coord_system cs, std::vector<expr_ptr> E);

    coord_system cs;
    std::vector<expr_ptr> E;
};

lagrange_operator euler_lagrange(const lagrangian& L);

struct helmholtz_entry {
    std::size_t i = 0;
    std::size_t j = 0;
    expr_ptr residual;
    zero_report verdict;
};

// A second-order operator is variational exactly when all three families
// vanish. position_rows (i < j):
//
//   d_j E_i - d_i E_j + d_t(dv_i E_j - dv_j E_i)/2,
//
// velocity_rows (every ordered pair, the d_t term breaks the symmetry):
//
//   dv_j E_i + dv_i E_j - 2 d_t da_j E_i,
//
// acceleration_rows (i < j): da_j E_i - da_i E_j, with da the derivative on
// the acceleration slot.
struct helmholtz_report {
    std::vector<helmholtz_entry> position_rows;
    std::vector<helmholtz_entry> velocity_rows;
    std::vector<helmholtz_entry> acceleration_rows;

    bool contradicted() const;
    bool proven() const;
};

helmholtz_report helmholtz_check(const lagrange_operator& op, std::uint64_t seed = 0);

enum class regularity : std::uint8_t { regular, degenerate, pointwise };

const char* to_string(regularity r);

// regular: the Hessian determinant provably never vanishes (nonzero
// constant, exponentials, declared parameters taken at their value or
// assumed nonzero, even powers and same-sign sums of such). degenerate: the
// determinant is identically zero. pointwise: neither proof applies;
// det_samples then records sampled points with the determinant value there.
struct legendre_data {
    std::vector<expr_ptr> pi; // momenta dv_i L
    expr_matrix hessian;      // dv_j dv_i L
    expr_ptr det;
    regularity tag = regularity::pointwise;
    std::vector<std::pair<point, double>> det_samples;
};

legendre_data legendre(const lagrangian& L, std::uint64_t seed = 0);

// The unique second-order equation whose substitution into the variational
// derivatives yields zero. Throws domain_error on a degenerate Hessian; a
// pointwise tag passes and the result is valid off the singular locus.
second_order_equation lagrangian_connection(const lagrangian& L);

// Coefficients of pi_i dq^i + (L - pi_i q^i_t) dt together with the two
// residual families of the associated first-order problem, written on an
// extension of the system by one hatted velocity parameter per fibre
// ("<fibre>_ct"). Hatted velocities detach the equation from holonomy:
// velocity_residual[i] is the Hessian row contracted with (qhat - q_t),
// base_residual[i] is d_i L - dhat_t pi_i + d_i pi_j (qhat^j - q^j_t) where
// dhat_t advances q by qhat and q_t by q_tt. Substituting qhat -> q_t
// collapses base_residual to the variational derivatives.
struct poincare_cartan_data {
    coord_system extended;
    std::vector<std::string> hatted;
    std::vector<expr_ptr> dq_coeff; // pi_i
    expr_ptr dt_coeff;              // L - pi_i q^i_t
    std::vector<expr_ptr> velocity_residual;
    std::vector<expr_ptr> base_residual;

    // Contraction with dq^i -> q^i_t dt; returns the original density.
    expr_ptr h0() const;
};

poincare_cartan_data poincare_cartan(const lagrangian& L);

// pi_i (q^i_t - Gamma^i) - L, the energy relative to the frame. Frames
// differing by delta shift it by pi_i delta^i.
expr_ptr energy_function(const lagrangian& L, const reference_frame& fr);

// Zero verdicts on the variational derivatives; all zero means the density
// contributes nothing to any action integral.
std::vector<zero_report> is_variationally_trivial(const lagrangian& L,
                                                  std::uint64_t seed = 0);

} // namespace geomech

#endif

// Part of geomech. SPDX-License-Identifier: MIT
//
// Newtonian systems: a symmetric mass tensor m_ij(t, q, q_t) paired with a
// second-order dynamic equation it is compatible with. Compatibility couples
// the evolution derivative of the mass to the velocity gradient of the
// equation, so a time-varying mass admits equations (friction, notably) that
// no constant mass would. Forces enter as covectors and deform the equation
// by m^{-1} f.

#ifndef GEOMECH_NEWTONIAN_HPP
#define GEOMECH_NEWTONIAN_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include <geomech/coords.hpp>
#include <geomech/dynamics.hpp>
#include <geomech/expr.hpp>
#include <geomech/zerotest.hpp>

namespace geomech
{

// Symmetric matrix of inertial coefficients. Entries have jet order <= 1 and
// the symmetry m_ij = m_ji must hold canonically at construction.
class mass_tensor
{
public:
    mass_tensor(coord_system cs, std::vector<std::vector<expr_ptr>> m);

    static mass_tensor euclidean(const coord_system& cs);

    const coord_system& cs() const { return cs_; }
    std::size_t dim() const { return m_.size(); }
    const expr_ptr& entry(std::size_t i, std::size_t j) const { return m_[i][j]; }
    const std::vector<std::vector<expr_ptr>>& entries() const { return m_; }

    // No entry mentions a velocity: the standard case, where the tensor is a
    // time-dependent fibre metric.
    bool velocity_independent() const;

private:
    coord_system cs_;
    std::vector<std::vector<expr_ptr>> m_;
};

// Covector components f_i(t, q, q_t).
class external_force
{
public:
    external_force(coord_system cs, std::vector<expr_ptr> f);

    const coord_system& cs() const { return cs_; }
    std::size_t dim() const { return f_.size(); }
    const expr_ptr& component(std::size_t i) const { return f_[i]; }
    const std::vector<expr_ptr>& components() const { return f_; }

private:
    coord_system cs_;
    std::vector<expr_ptr> f_;
};

// One row of a verdict table: where in the index grid the condition sits,
// the residual that should vanish, and what the zero test concluded.
struct checked_residual {
    std::size_t i = 0;
    std::size_t j = 0;
    std::size_t k = 0;
    expr_ptr residual;
    zero_report verdict;
};

// velocity_symmetry lists dv_k m_ij - dv_j m_ik over j < k; compatibility
// lists the symmetrized condition
//
//   (d_t + q^l_t d_l + xi^l dv_l) m_ij + (m_ik dv_j xi^k + m_jk dv_i xi^k)/2
//
// over i <= j.
struct newtonian_report {
    std::vector<checked_residual> velocity_symmetry;
    std::vector<checked_residual> compatibility;

    bool contradicted() const; // some residual sampled away from zero
    bool proven() const;       // every residual canonically or sampled zero
};

newtonian_report check_newtonian(const mass_tensor& m, const second_order_equation& eq,
                                 std::uint64_t seed = 0);

// Construction runs check_newtonian and rejects a contradicted pair; unknown
// verdicts (no sampled point landed in the domain) are let through.
class newtonian_system
{
public:
    newtonian_system(mass_tensor m, second_order_equation eq, std::uint64_t seed = 0);

    const mass_tensor& mass() const { return m_; }
    const second_order_equation& equation() const { return eq_; }
    const newtonian_report& report() const { return rep_; }

private:
    mass_tensor m_;
    second_order_equation eq_;
    newtonian_report rep_;
};

// Residuals m_ik (q^k_tt - xi^k), one per fibre. For invertible mass these
// cut out the same locus as the equation itself; a degenerate mass leaves
// directions unconstrained.
std::vector<expr_ptr> equation_of_motion(const newtonian_system& sys);

struct forced_equation {
    second_order_equation equation;              // xi^i + (m^{-1})^{ik} f_k
    std::vector<checked_residual> admissibility; // dv_i f_j + dv_j f_i over i <= j

    bool admissible_contradicted() const;
    bool admissible_proven() const;
};

// Throws domain_error when the mass determinant vanishes identically or at
// every sampled point. An inadmissible force still yields the deformed
// equation; the verdicts record that the result is no longer Newtonian.
forced_equation apply_force(const newtonian_system& sys, const external_force& f,
                            std::uint64_t seed = 0);

} // namespace geomech

#endif

// Part of geomech. SPDX-License-Identifier: MIT
//
// Symmetries of first-order densities. A jet_field is a vector field on the
// configuration bundle whose time component is the constant 0 or 1 and whose
// fibre components may depend on first jets (a generalized field) or on
// (t, q) alone (a classical one). Prolonging it to the jet bundle, taking
// the Lie derivative of a density along the prolongation, and testing the
// first variational formula are the basic moves; on top of them sit the
// exact/variational classification, the conserved currents they produce,
// and the per-parameter identities satisfied by gauge families.

#ifndef GEOMECH_SYMMETRY_HPP
#define GEOMECH_SYMMETRY_HPP

#include <cstddef>
#include <cstdint>
#include <vector>

#include <geomech/coords.hpp>
#include <geomech/expr.hpp>
#include <geomech/lagrangian.hpp>
#include <geomech/zerotest.hpp>

namespace geomech
{

// u = ut d_t + u^i d_i with ut constant 0 or 1 and components of jet
// order <= 1.
class jet_field
{
public:
    jet_field(coord_system cs, int ut, std::vector<expr_ptr> comps);

    const coord_system& cs() const { return cs_; }
    int ut() const { return ut_; }
    const std::vector<expr_ptr>& comps() const { return comps_; }

    // True when no component touches a jet coordinate.
    bool classical() const;

    // (0, u^i - ut q^i_t); the identity on fields with ut = 0.
    jet_field vertical_part() const;

private:
    coord_system cs_;
    int ut_ = 0;
    std::vector<expr_ptr> comps_;
};

// Coefficients of the prolongation: ut on d_t, base[i] on d_i, velocity[i]
// = d_t u^i on the first-jet slot, and for order 2 acceleration[i]
// = d_t d_t u^i on the second. The time component, being constant, adds
// nothing else.
struct prolonged_field {
    int ut = 0;
    std::vector<expr_ptr> base;
    std::vector<expr_ptr> velocity;
    std::vector<expr_ptr> acceleration; // order 2 only, else empty
};

prolonged_field prolong(const jet_field& u, unsigned order = 1);

// [ut d/dt + u^i d_i + (d_t u^i) dv_i] L.
expr_ptr lie_derivative(const jet_field& u, const lagrangian& L);

// Zero verdict on the residual of the first variational formula,
//
//   L_{J1 u} L - (u^i - q^i_t ut) E_i - d_t[pi_i (u^i - ut q^i_t) + ut L],
//
// an identity for classical u; for generalized u it is checked as the same
// second-order expansion.
zero_report check_first_variational(const jet_field& u, const lagrangian& L,
                                    std::uint64_t seed = 0);

enum class symmetry_class : std::uint8_t { exact, variational, not_shown };

const char* to_string(symmetry_class c);

// exact: the Lie derivative vanishes identically. variational: it equals
// d_t sigma for the sigma supplied by the caller (no antiderivative search
// is attempted). not_shown: neither test succeeded; residual and verdict
// record what failed. sigma echoes the supplied density for variational
// results and is empty otherwise.
struct symmetry_report {
    symmetry_class cls = symmetry_class::not_shown;
    expr_ptr lie_derivative;
    expr_ptr residual;
    expr_ptr sigma;
    zero_report verdict;
};

// sigma, when given, must have jet order <= 1.
symmetry_report classify_symmetry(const jet_field& u, const lagrangian& L,
                                  expr_ptr sigma = nullptr, std::uint64_t seed = 0);

// pi_i (u^i - ut q^i_t) + ut L - sigma. Along solutions this is conserved
// whenever u is an exact (sigma absent) or variational (sigma as classified)
// symmetry. For ut = 1, u^i = Gamma^i it is minus the energy function of the
// frame; for ut = 0 classical u it is the Noether current pi_i u^i.
expr_ptr symmetry_current(const jet_field& u, const lagrangian& L,
                          expr_ptr sigma = nullptr);

// Family of fields u^i = u0_a^i chi^a + u1_a^i d_t chi^a + u2_a^i d_tt chi^a,
// linear in arbitrary parameter functions chi^a(t). Coefficients may depend
// on (t, q, q_t); the index a runs over the rows of each table.
class gauge_symmetry
{
public:
    gauge_symmetry(coord_system cs, std::vector<std::vector<expr_ptr>> u0,
                   std::vector<std::vector<expr_ptr>> u1,
                   std::vector<std::vector<expr_ptr>> u2);

    const coord_system& cs() const { return cs_; }
    std::size_t parameters() const { return u0_.size(); }
    const std::vector<std::vector<expr_ptr>>& u0() const { return u0_; }
    const std::vector<std::vector<expr_ptr>>& u1() const { return u1_; }
    const std::vector<std::vector<expr_ptr>>& u2() const { return u2_; }

private:
    coord_system cs_;
    std::vector<std::vector<expr_ptr>> u0_, u1_, u2_;
};

struct noether_identity {
    std::size_t a = 0;
    expr_ptr residual;
    zero_report verdict;
};

// Per-parameter residuals u0_a^i E_i - d_t(u1_a^i E_i) + d_tt(u2_a^i E_i).
// All zero is necessary for the family to be a gauge symmetry of a density
// with variational derivatives E. The double total derivative reaches
// fourth-order jets, so the check widens the jet cap to 4 for its own
// bookkeeping; inputs never see the widened system.
std::vector<noether_identity> noether_identity_check(const gauge_symmetry& g,
                                                     const lagrange_operator& E,
                                                     std::uint64_t seed = 0);

} // namespace geomech

#endif

// Part of geomech. SPDX-License-Identifier: MIT
//
// Second-order dynamic equations q^i_tt = xi^i(t, q, q_t), the associated
// connections on the velocity bundle, their torsion and curvature, and the
// lift of quadratic equations to a linear connection on the tangent bundle
// of extended configuration space (timelike component included).

#ifndef GEOMECH_DYNAMICS_HPP
#define GEOMECH_DYNAMICS_HPP

#include <stdexcept>
#include <vector>

#include <geomech/coords.hpp>
#include <geomech/expr.hpp>

namespace geomech
{

// xi has one component per fibre, each of jet order <= 1.
struct second_order_equation {
    second_order_equation(coord_system cs, std::vector<expr_ptr> xi);

    coord_system cs;
    std::vector<expr_ptr> xi;
};

// gamma0[i] is the time leg, gamma[i][j] the base legs; all of jet order <= 1.
struct dynamic_connection {
    dynamic_connection(coord_system cs, std::vector<expr_ptr> gamma0,
                       std::vector<std::vector<expr_ptr>> gamma);

    coord_system cs;
    std::vector<expr_ptr> gamma0;
    std::vector<std::vector<expr_ptr>> gamma;
};

// Velocity-quadratic decomposition xi^i = a^i_jk v^j v^k + b^i_j v^j + f^i
// together with the symmetric linear connection it induces on the tangent
// bundle: K_0{}^i{}_0 = f^i, K_0{}^i{}_j = K_j{}^i{}_0 = b^i_j / 2,
// K_k{}^i{}_j = a^i_kj, and zero on the timelike row.
struct tangent_connection {
    tangent_connection(coord_system cs, std::vector<std::vector<std::vector<expr_ptr>>> a,
                       std::vector<std::vector<expr_ptr>> b, std::vector<expr_ptr> f);

    // lambda, nu range over 0..n (0 is the time slot); upper likewise, with
    // the zero row identically zero.
    expr_ptr K(std::size_t lambda, std::size_t upper, std::size_t nu) const;

    coord_system cs;
    std::vector<std::vector<std::vector<expr_ptr>>> a; // a[i][j][k], symmetric in j,k
    std::vector<std::vector<expr_ptr>> b;
    std::vector<expr_ptr> f;
};

struct curvature_report {
    // R[i][lambda][mu], lambda/mu in 0..n with slot 0 the time direction.
    std::vector<std::vector<std::vector<expr_ptr>>> R;
    std::vector<std::vector<expr_ptr>> Rbar; // Rbar[i][j] = R^i_kj v^k + R^i_0j
    expr_ptr Rtilde;                         // trace of Rbar
};

class not_quadratic : public std::domain_error
{
public:
    explicit not_quadratic(const std::string& what) : std::domain_error(what) {}
};

dynamic_connection connection_from_equation(const second_order_equation& eq);
second_order_equation equation_from_connection(const dynamic_connection& g);

// T[k][i] = gamma^k_i - dv_i gamma^k_0 - v^j dv_i gamma^k_j; zero exactly for
// connections built from an equation.
std::vector<std::vector<expr_ptr>> torsion(const dynamic_connection& g);

curvature_report curvature(const dynamic_connection& g);

tangent_connection quadratic_split(const second_order_equation& eq);
tangent_connection geodesic_connection(const second_order_equation& eq);

// Right side of the geodesic system of a tangent connection, restricted to
// unit time velocity: sum over lambda,nu of K_lambda{}^i{}_nu v^lambda v^nu
// with v^0 = 1, v^j = q^j_t. Reproduces xi for split connections.
std::vector<expr_ptr> geodesic_rhs(const tangent_connection& tc);

} // namespace geomech

#endif

// Part of geomech. SPDX-License-Identifier: MIT

#include <geomech/dynamics.hpp>

#include <geomech/calculus.hpp>
#include <geomech/zerotest.hpp>

namespace geomech
{

namespace
{

void require_components(const coord_system& cs, const std::vector<expr_ptr>& v, const char* what)
{
    if (v.size() != cs.dim())
        throw std::invalid_argument(std::string(what) + ": expected " +
                                    std::to_string(cs.dim()) + " components, got " +
                                    std::to_string(v.size()));
}

void require_first_order(const coord_system& cs, const expr_ptr& e, const char* what)
{
    if (jet_order(cs, e) > 1)
        throw std::invalid_argument(std::string(what) +
                                    " must have jet order <= 1: " + to_string(e));
}

// Base derivative along slot lambda in 0..n: time for 0, fibre i for i+1.
expr_ptr base_partial(const coord_system& cs, const expr_ptr& e, std::size_t lambda)
{
    if (lambda == 0)
        return partial(e, "t");
    return partial(e, cs.fibre(lambda - 1));
}

} // namespace

second_order_equation::second_order_equation(coord_system cs_, std::vector<expr_ptr> xi_)
    : cs(std::move(cs_)), xi(std::move(xi_))
{
    require_components(cs, xi, "second_order_equation");
    for (const auto& e : xi)
        require_first_order(cs, e, "second_order_equation");
}

dynamic_connection::dynamic_connection(coord_system cs_, std::vector<expr_ptr> gamma0_,
                                       std::vector<std::vector<expr_ptr>> gamma_)
    : cs(std::move(cs_)), gamma0(std::move(gamma0_)), gamma(std::move(gamma_))
{
    require_components(cs, gamma0, "dynamic_connection");
    if (gamma.size() != cs.dim())
        throw std::invalid_argument("dynamic_connection: gamma must be n x n");
    for (const auto& row : gamma)
        require_components(cs, row, "dynamic_connection");
    for (const auto& e : gamma0)
        require_first_order(cs, e, "dynamic_connection");
    for (const auto& row : gamma)
        for (const auto& e : row)
            require_first_order(cs, e, "dynamic_connection");
}

dynamic_connection connection_from_equation(const second_order_equation& eq)
{
    const std::size_t n = eq.cs.dim();
    std::vector<std::vector<expr_ptr>> gamma(n, std::vector<expr_ptr>(n));
    std::vector<expr_ptr> gamma0(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j)
            gamma[i][j] = make_num(1, 2) * partial(eq.xi[i], eq.cs.velocity(j));
        std::vector<expr_ptr> terms{eq.xi[i]};
        for (std::size_t j = 0; j < n; ++j)
            terms.push_back(-(eq.cs.qt(j) * gamma[i][j]));
        gamma0[i] = make_add(std::move(terms));
    }
    return dynamic_connection(eq.cs, std::move(gamma0), std::move(gamma));
}

second_order_equation equation_from_connection(const dynamic_connection& g)
{
    const std::size_t n = g.cs.dim();
    std::vector<expr_ptr> xi(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<expr_ptr> terms{g.gamma0[i]};
        for (std::size_t j = 0; j < n; ++j)
            terms.push_back(g.cs.qt(j) * g.gamma[i][j]);
        xi[i] = make_add(std::move(terms));
    }
    return second_order_equation(g.cs, std::move(xi));
}

std::vector<std::vector<expr_ptr>> torsion(const dynamic_connection& g)
{
    const std::size_t n = g.cs.dim();
    std::vector<std::vector<expr_ptr>> T(n, std::vector<expr_ptr>(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) {
            const std::string vi = g.cs.velocity(i);
            std::vector<expr_ptr> terms{g.gamma[k][i], -partial(g.gamma0[k], vi)};
            for (std::size_t j = 0; j < n; ++j)
                terms.push_back(-(g.cs.qt(j) * partial(g.gamma[k][j], vi)));
            T[k][i] = make_add(std::move(terms));
        }
    return T;
}

curvature_report curvature(const dynamic_connection& g)
{
    const std::size_t n = g.cs.dim();
    auto leg = [&](std::size_t i, std::size_t lambda) -> const expr_ptr& {
        return lambda == 0 ? g.gamma0[i] : g.gamma[i][lambda - 1];
    };

    curvature_report rep;
    rep.R.assign(n, std::vector<std::vector<expr_ptr>>(n + 1, std::vector<expr_ptr>(n + 1)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t lam = 0; lam <= n; ++lam)
            for (std::size_t mu = 0; mu <= n; ++mu) {
                std::vector<expr_ptr> terms{base_partial(g.cs, leg(i, mu), lam),
                                            -base_partial(g.cs, leg(i, lam), mu)};
                // The nonlinear legs differentiate along the fibre (velocity)
                // directions of the velocity bundle.
                for (std::size_t j = 0; j < n; ++j) {
                    const std::string vj = g.cs.velocity(j);
                    terms.push_back(leg(j, lam) * partial(leg(i, mu), vj));
                    terms.push_back(-(leg(j, mu) * partial(leg(i, lam), vj)));
                }
                rep.R[i][lam][mu] = make_add(std::move(terms));
            }

    rep.Rbar.assign(n, std::vector<expr_ptr>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<expr_ptr> terms{rep.R[i][0][j + 1]};
            for (std::size_t k = 0; k < n; ++k)
                terms.push_back(g.cs.qt(k) * rep.R[i][k + 1][j + 1]);
            rep.Rbar[i][j] = make_add(std::move(terms));
        }

    std::vector<expr_ptr> tr;
    for (std::size_t i = 0; i < n; ++i)
        tr.push_back(rep.Rbar[i][i]);
    rep.Rtilde = make_add(std::move(tr));
    return rep;
}

tangent_connection::tangent_connection(coord_system cs_,
                                       std::vector<std::vector<std::vector<expr_ptr>>> a_,
                                       std::vector<std::vector<expr_ptr>> b_,
                                       std::vector<expr_ptr> f_)
    : cs(std::move(cs_)), a(std::move(a_)), b(std::move(b_)), f(std::move(f_))
{
    const std::size_t n = cs.dim();
    if (a.size() != n || b.size() != n || f.size() != n)
        throw std::invalid_argument("tangent_connection: component counts must match dim");
    for (const auto& ai : a) {
        if (ai.size() != n)
            throw std::invalid_argument("tangent_connection: a must be n x n x n");
        for (const auto& row : ai)
            if (row.size() != n)
                throw std::invalid_argument("tangent_connection: a must be n x n x n");
    }
    for (const auto& row : b)
        if (row.size() != n)
            throw std::invalid_argument("tangent_connection: b must be n x n");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                if (!equal(a[i][j][k], a[i][k][j]))
                    throw std::invalid_argument("tangent_connection: a must be symmetric");
}

expr_ptr tangent_connection::K(std::size_t lambda, std::size_t upper, std::size_t nu) const
{
    if (upper == 0)
        return zero();
    const std::size_t i = upper - 1;
    if (lambda == 0 && nu == 0)
        return f[i];
    if (lambda == 0)
        return make_num(1, 2) * b[i][nu - 1];
    if (nu == 0)
        return make_num(1, 2) * b[i][lambda - 1];
    return a[i][lambda - 1][nu - 1];
}

tangent_connection quadratic_split(const second_order_equation& eq)
{
    const std::size_t n = eq.cs.dim();
    std::unordered_map<std::string, expr_ptr> rest;
    for (std::size_t j = 0; j < n; ++j)
        rest[eq.cs.velocity(j)] = zero();

    std::vector<std::vector<std::vector<expr_ptr>>> a(
        n, std::vector<std::vector<expr_ptr>>(n, std::vector<expr_ptr>(n)));
    std::vector<std::vector<expr_ptr>> b(n, std::vector<expr_ptr>(n));
    std::vector<expr_ptr> f(n);

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const expr_ptr dj = partial(eq.xi[i], eq.cs.velocity(j));
            for (std::size_t k = 0; k < n; ++k) {
                expr_ptr ajk = make_num(1, 2) * partial(dj, eq.cs.velocity(k));
                if (jet_order(eq.cs, ajk) > 0)
                    throw not_quadratic("xi component " + std::to_string(i + 1) +
                                        " is not quadratic in the velocities");
                a[i][j][k] = std::move(ajk);
            }
            b[i][j] = substitute(dj, rest);
        }
        f[i] = substitute(eq.xi[i], rest);

        // Exactness: the extracted coefficients must reassemble xi.
        std::vector<expr_ptr> terms{-eq.xi[i], f[i]};
        for (std::size_t j = 0; j < n; ++j) {
            terms.push_back(b[i][j] * eq.cs.qt(j));
            for (std::size_t k = 0; k < n; ++k)
                terms.push_back(a[i][j][k] * eq.cs.qt(j) * eq.cs.qt(k));
        }
        expr_ptr residual = make_add(std::move(terms));
        if (!is_zero_literal(residual) &&
            is_zero(eq.cs, residual).verdict != zero_verdict::zero)
            throw not_quadratic("xi component " + std::to_string(i + 1) +
                                " has non-quadratic velocity dependence");
    }
    return tangent_connection(eq.cs, std::move(a), std::move(b), std::move(f));
}

tangent_connection geodesic_connection(const second_order_equation& eq)
{
    return quadratic_split(eq);
}

std::vector<expr_ptr> geodesic_rhs(const tangent_connection& tc)
{
    const std::size_t n = tc.cs.dim();
    auto v = [&](std::size_t lambda) { return lambda == 0 ? one() : tc.cs.qt(lambda - 1); };
    std::vector<expr_ptr> xi(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<expr_ptr> terms;
        for (std::size_t lam = 0; lam <= n; ++lam)
            for (std::size_t nu = 0; nu <= n; ++nu)
                terms.push_back(tc.K(lam, i + 1, nu) * v(lam) * v(nu));
        xi[i] = make_add(std::move(terms));
    }
    return xi;
}

} // namespace geomech

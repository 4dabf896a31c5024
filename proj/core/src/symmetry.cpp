// Part of geomech. SPDX-License-Identifier: MIT

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>

#include <geomech/calculus.hpp>
#include <geomech/symmetry.hpp>

namespace geomech
{

namespace
{

// u^i - ut q^i_t, the coefficient the variational formula contracts with E_i.
std::vector<expr_ptr> vertical_components(const jet_field& u)
{
    std::vector<expr_ptr> out;
    out.reserve(u.comps().size());
    for (std::size_t i = 0; i < u.comps().size(); ++i) {
        auto c = u.comps()[i];
        if (u.ut() != 0)
            c = c - u.cs().qt(i);
        out.push_back(c);
    }
    return out;
}

// pi_i (u^i - ut q^i_t) + ut L, the current before the sigma correction.
expr_ptr bare_current(const jet_field& u, const lagrangian& L)
{
    const auto& cs = L.cs();
    auto vert = vertical_components(u);
    expr_ptr s = zero();
    for (std::size_t i = 0; i < vert.size(); ++i)
        s = s + partial(L.density(), cs.velocity(i)) * vert[i];
    if (u.ut() != 0)
        s = s + L.density();
    return s;
}

} // namespace

jet_field::jet_field(coord_system cs, int ut, std::vector<expr_ptr> comps)
    : cs_(std::move(cs)), ut_(ut), comps_(std::move(comps))
{
    if (ut_ != 0 && ut_ != 1)
        throw std::invalid_argument("jet_field: time component must be the constant 0 or 1");
    if (comps_.size() != cs_.dim())
        throw std::invalid_argument("jet_field: expected one component per fibre");
    for (const auto& c : comps_) {
        if (!c)
            throw std::invalid_argument("jet_field: null component");
        if (jet_order(cs_, c) > 1)
            throw std::invalid_argument("jet_field: components may depend on first jets only");
    }
}

bool jet_field::classical() const
{
    return std::all_of(comps_.begin(), comps_.end(),
                       [&](const expr_ptr& c) { return jet_order(cs_, c) == 0; });
}

jet_field jet_field::vertical_part() const
{
    if (ut_ == 0)
        return *this;
    std::vector<expr_ptr> v;
    v.reserve(comps_.size());
    for (std::size_t i = 0; i < comps_.size(); ++i)
        v.push_back(comps_[i] - cs_.qt(i));
    return jet_field(cs_, 0, std::move(v));
}

prolonged_field prolong(const jet_field& u, unsigned order)
{
    if (order < 1 || order > 2)
        throw std::invalid_argument("prolong: order must be 1 or 2");
    prolonged_field out;
    out.ut = u.ut();
    out.base = u.comps();
    out.velocity.reserve(out.base.size());
    for (const auto& c : out.base)
        out.velocity.push_back(total_derivative(u.cs(), c));
    if (order == 2) {
        out.acceleration.reserve(out.velocity.size());
        for (const auto& v : out.velocity)
            out.acceleration.push_back(total_derivative(u.cs(), v));
    }
    return out;
}

expr_ptr lie_derivative(const jet_field& u, const lagrangian& L)
{
    const auto& cs = L.cs();
    auto pr = prolong(u, 1);
    expr_ptr s = pr.ut != 0 ? partial(L.density(), "t") : zero();
    for (std::size_t i = 0; i < pr.base.size(); ++i) {
        s = s + pr.base[i] * partial(L.density(), cs.fibre(i));
        s = s + pr.velocity[i] * partial(L.density(), cs.velocity(i));
    }
    return s;
}

zero_report check_first_variational(const jet_field& u, const lagrangian& L,
                                    std::uint64_t seed)
{
    const auto& cs = L.cs();
    auto E = euler_lagrange(L);
    auto vert = vertical_components(u);
    expr_ptr resid = lie_derivative(u, L);
    for (std::size_t i = 0; i < vert.size(); ++i)
        resid = resid - vert[i] * E.E[i];
    resid = resid - total_derivative(cs, bare_current(u, L));
    return is_zero(cs, resid, seed);
}

const char* to_string(symmetry_class c)
{
    switch (c) {
        case symmetry_class::exact:
            return "Exact";
        case symmetry_class::variational:
            return "Variational";
        default:
            return "NotShown";
    }
}

symmetry_report classify_symmetry(const jet_field& u, const lagrangian& L,
                                  expr_ptr sigma, std::uint64_t seed)
{
    const auto& cs = L.cs();
    if (sigma && jet_order(cs, sigma) > 1)
        throw std::invalid_argument("classify_symmetry: sigma must have jet order <= 1");

    symmetry_report r;
    r.lie_derivative = lie_derivative(u, L);
    r.residual = r.lie_derivative;
    r.verdict = is_zero(cs, r.lie_derivative, seed);
    if (r.verdict.verdict == zero_verdict::zero) {
        r.cls = symmetry_class::exact;
        return r;
    }
    if (sigma) {
        r.residual = r.lie_derivative - total_derivative(cs, sigma);
        r.verdict = is_zero(cs, r.residual, seed);
        if (r.verdict.verdict == zero_verdict::zero) {
            r.cls = symmetry_class::variational;
            r.sigma = std::move(sigma);
            return r;
        }
    }
    r.cls = symmetry_class::not_shown;
    return r;
}

expr_ptr symmetry_current(const jet_field& u, const lagrangian& L, expr_ptr sigma)
{
    auto cur = bare_current(u, L);
    if (sigma)
        cur = cur - sigma;
    return cur;
}

gauge_symmetry::gauge_symmetry(coord_system cs, std::vector<std::vector<expr_ptr>> u0,
                               std::vector<std::vector<expr_ptr>> u1,
                               std::vector<std::vector<expr_ptr>> u2)
    : cs_(std::move(cs)), u0_(std::move(u0)), u1_(std::move(u1)), u2_(std::move(u2))
{
    if (u0_.empty() || u0_.size() != u1_.size() || u0_.size() != u2_.size())
        throw std::invalid_argument("gauge_symmetry: coefficient tables must share one row per parameter");
    for (const auto* table : {&u0_, &u1_, &u2_})
        for (const auto& row : *table) {
            if (row.size() != cs_.dim())
                throw std::invalid_argument("gauge_symmetry: expected one coefficient per fibre");
            for (const auto& c : row) {
                if (!c)
                    throw std::invalid_argument("gauge_symmetry: null coefficient");
                if (jet_order(cs_, c) > 1)
                    throw std::invalid_argument("gauge_symmetry: coefficients may depend on first jets only");
            }
        }
}

std::vector<noether_identity> noether_identity_check(const gauge_symmetry& g,
                                                     const lagrange_operator& E,
                                                     std::uint64_t seed)
{
    if (g.cs().dim() != E.cs.dim())
        throw std::invalid_argument("noether_identity_check: dimension mismatch");
    auto wide = E.cs.with_jet_cap(std::max(4u, E.cs.jet_cap()));

    std::vector<noether_identity> out;
    out.reserve(g.parameters());
    for (std::size_t a = 0; a < g.parameters(); ++a) {
        expr_ptr s0 = zero(), s1 = zero(), s2 = zero();
        for (std::size_t i = 0; i < E.E.size(); ++i) {
            s0 = s0 + g.u0()[a][i] * E.E[i];
            s1 = s1 + g.u1()[a][i] * E.E[i];
            s2 = s2 + g.u2()[a][i] * E.E[i];
        }
        noether_identity id;
        id.a = a;
        id.residual = s0 - total_derivative(wide, s1)
                      + total_derivative(wide, total_derivative(wide, s2));
        id.verdict = is_zero(wide, id.residual, seed);
        out.push_back(std::move(id));
    }
    return out;
}

} // namespace geomech

// Part of geomech. SPDX-License-Identifier: MIT

#include <geomech/frames.hpp>

#include <geomech/calculus.hpp>

namespace geomech
{

namespace
{

// Substitutes q^i_t -> Gamma^i ("evaluation along the frame").
expr_ptr along_frame(const coord_system& cs, const expr_ptr& e,
                     const std::vector<expr_ptr>& Gamma)
{
    std::unordered_map<std::string, expr_ptr> m;
    for (std::size_t i = 0; i < cs.dim(); ++i)
        m[cs.velocity(i)] = Gamma[i];
    return substitute(e, m);
}

void require_base_only(const coord_system& cs, const std::vector<expr_ptr>& v, const char* what)
{
    if (v.size() != cs.dim())
        throw std::invalid_argument(std::string(what) + ": expected " +
                                    std::to_string(cs.dim()) + " components");
    for (const auto& e : v)
        if (jet_order(cs, e) > 0)
            throw std::invalid_argument(std::string(what) +
                                        " components must depend on (t, q) only: " +
                                        to_string(e));
}

} // namespace

reference_frame::reference_frame(coord_system cs_, std::vector<expr_ptr> Gamma_)
    : cs(std::move(cs_)), Gamma(std::move(Gamma_))
{
    require_base_only(cs, Gamma, "reference_frame");
}

coordinate_change::coordinate_change(coord_system cs_, std::vector<expr_ptr> forward_,
                                     std::vector<expr_ptr> inverse_)
    : cs(std::move(cs_)), forward(std::move(forward_)), inverse(std::move(inverse_))
{
    require_base_only(cs, forward, "coordinate_change forward");
    require_base_only(cs, inverse, "coordinate_change inverse");

    const std::size_t n = cs.dim();
    auto check_identity = [&](const std::vector<expr_ptr>& outer,
                              const std::vector<expr_ptr>& inner, const char* dir) {
        std::unordered_map<std::string, expr_ptr> m;
        for (std::size_t i = 0; i < n; ++i)
            m[cs.fibre(i)] = inner[i];
        for (std::size_t a = 0; a < n; ++a) {
            const expr_ptr residual = substitute(outer[a], m) - cs.q(a);
            if (is_zero(cs, residual).verdict == zero_verdict::nonzero)
                throw std::invalid_argument(std::string("coordinate_change: ") + dir +
                                            " composition is not the identity in component " +
                                            std::to_string(a + 1));
        }
    };
    check_identity(forward, inverse, "forward o inverse");
    check_identity(inverse, forward, "inverse o forward");
}

coordinate_change compose(const coordinate_change& first, const coordinate_change& then)
{
    const std::size_t n = first.cs.dim();
    std::unordered_map<std::string, expr_ptr> via_first, via_then;
    for (std::size_t i = 0; i < n; ++i) {
        via_first[first.cs.fibre(i)] = first.forward[i];
        via_then[first.cs.fibre(i)] = then.inverse[i];
    }
    std::vector<expr_ptr> fwd(n), inv(n);
    for (std::size_t i = 0; i < n; ++i) {
        fwd[i] = substitute(then.forward[i], via_first);
        inv[i] = substitute(first.inverse[i], via_then);
    }
    return coordinate_change(first.cs, std::move(fwd), std::move(inv));
}

std::vector<expr_ptr> relative_velocity(const reference_frame& fr)
{
    std::vector<expr_ptr> v(fr.cs.dim());
    for (std::size_t i = 0; i < fr.cs.dim(); ++i)
        v[i] = fr.cs.qt(i) - fr.Gamma[i];
    return v;
}

second_order_equation transform_equation(const second_order_equation& eq,
                                         const coordinate_change& ch)
{
    const coord_system& cs = eq.cs;
    const std::size_t n = cs.dim();

    // Velocity of the old coordinates expressed through the new chart.
    std::unordered_map<std::string, expr_ptr> to_new;
    for (std::size_t i = 0; i < n; ++i)
        to_new[cs.fibre(i)] = ch.inverse[i];
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<expr_ptr> terms{partial(ch.inverse[i], "t")};
        for (std::size_t j = 0; j < n; ++j)
            terms.push_back(cs.qt(j) * partial(ch.inverse[i], cs.fibre(j)));
        to_new[cs.velocity(i)] = make_add(std::move(terms));
    }

    std::vector<expr_ptr> xi_new(n);
    for (std::size_t a = 0; a < n; ++a) {
        const expr_ptr& F = ch.forward[a];
        const expr_ptr Ft = partial(F, "t");
        std::vector<expr_ptr> terms{partial(Ft, "t")};
        for (std::size_t j = 0; j < n; ++j) {
            const expr_ptr Fj = partial(F, cs.fibre(j));
            terms.push_back(make_num(2) * cs.qt(j) * partial(Fj, "t"));
            terms.push_back(eq.xi[j] * Fj);
            for (std::size_t k = 0; k < n; ++k)
                terms.push_back(cs.qt(j) * cs.qt(k) * partial(Fj, cs.fibre(k)));
        }
        xi_new[a] = substitute(make_add(std::move(terms)), to_new);
    }
    return second_order_equation(cs, std::move(xi_new));
}

dynamic_connection frame_connection(const dynamic_connection& g, const reference_frame& fr)
{
    const coord_system& cs = g.cs;
    const std::size_t n = cs.dim();

    std::vector<std::vector<expr_ptr>> gamma(n, std::vector<expr_ptr>(n));
    std::vector<expr_ptr> gamma0(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<expr_ptr> shift(n); // d_k Gamma^i - gamma^i_k o Gamma
        for (std::size_t k = 0; k < n; ++k) {
            shift[k] = partial(fr.Gamma[i], cs.fibre(k)) -
                       along_frame(cs, g.gamma[i][k], fr.Gamma);
            gamma[i][k] = g.gamma[i][k] + shift[k];
        }
        std::vector<expr_ptr> terms{total_derivative(cs, fr.Gamma[i])};
        for (std::size_t k = 0; k < n; ++k) {
            terms.push_back(-(g.gamma[i][k] * fr.Gamma[k]));
            terms.push_back(-(fr.Gamma[k] * shift[k]));
        }
        gamma0[i] = make_add(std::move(terms));
    }
    return dynamic_connection(cs, std::move(gamma0), std::move(gamma));
}

std::vector<expr_ptr> relative_acceleration(const second_order_equation& eq,
                                            const reference_frame& fr)
{
    const coord_system& cs = eq.cs;
    const std::size_t n = cs.dim();
    const dynamic_connection g = connection_from_equation(eq);

    std::vector<expr_ptr> acc(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<expr_ptr> xi_fr{total_derivative(cs, fr.Gamma[i])};
        for (std::size_t k = 0; k < n; ++k) {
            const expr_ptr leg = partial(fr.Gamma[i], cs.fibre(k)) + g.gamma[i][k] -
                                 along_frame(cs, g.gamma[i][k], fr.Gamma);
            xi_fr.push_back(leg * (cs.qt(k) - fr.Gamma[k]));
        }
        acc[i] = eq.xi[i] - make_add(std::move(xi_fr));
    }
    return acc;
}

std::vector<expr_ptr> coriolis_decomposition(const second_order_equation& eq,
                                             const reference_frame& fr)
{
    (void)quadratic_split(eq); // gate: the decomposition is affine only then
    const coord_system& cs = eq.cs;
    const std::size_t n = cs.dim();
    const dynamic_connection g = connection_from_equation(eq);

    std::vector<expr_ptr> acc(n);
    for (std::size_t i = 0; i < n; ++i) {
        // Covariant derivatives of Gamma along the frame connection legs.
        const expr_ptr nabla0 =
            partial(fr.Gamma[i], "t") - along_frame(cs, g.gamma0[i], fr.Gamma);
        std::vector<expr_ptr> nablak(n);
        for (std::size_t k = 0; k < n; ++k)
            nablak[k] = partial(fr.Gamma[i], cs.fibre(k)) -
                        along_frame(cs, g.gamma[i][k], fr.Gamma);

        std::vector<expr_ptr> terms{nabla0};
        for (std::size_t k = 0; k < n; ++k) {
            terms.push_back(fr.Gamma[k] * nablak[k]);
            terms.push_back(make_num(2) * (cs.qt(k) - fr.Gamma[k]) * nablak[k]);
        }
        acc[i] = -make_add(std::move(terms));
    }
    return acc;
}

std::vector<zero_report> is_geodesic_frame(const second_order_equation& eq,
                                           const reference_frame& fr)
{
    const coord_system& cs = eq.cs;
    std::vector<zero_report> out(cs.dim());
    for (std::size_t i = 0; i < cs.dim(); ++i) {
        std::vector<expr_ptr> terms{partial(fr.Gamma[i], "t"),
                                    -along_frame(cs, eq.xi[i], fr.Gamma)};
        for (std::size_t j = 0; j < cs.dim(); ++j)
            terms.push_back(fr.Gamma[j] * partial(fr.Gamma[i], cs.fibre(j)));
        out[i] = is_zero(cs, make_add(std::move(terms)));
    }
    return out;
}

second_order_equation free_motion_equation(const coordinate_change& ch)
{
    std::vector<expr_ptr> rest(ch.cs.dim(), zero());
    return transform_equation(second_order_equation(ch.cs, rest), ch);
}

} // namespace geomech

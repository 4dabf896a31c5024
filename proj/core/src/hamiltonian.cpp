// Part of geomech. SPDX-License-Identifier: MIT

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include <geomech/calculus.hpp>
#include <geomech/hamiltonian.hpp>

namespace geomech
{

namespace
{

void require_phase(const coord_system& cs, const char* who)
{
    if (!cs.is_phase())
        throw std::invalid_argument(std::string(who) + ": expected a phase system");
}

void require_phase_function(const coord_system& cs, const expr_ptr& e, const char* who)
{
    if (!e)
        throw std::invalid_argument(std::string(who) + ": null expression");
    if (jet_order(cs, e) > 0)
        throw std::invalid_argument(std::string(who) +
                                    ": phase functions depend on (t, q, p) only");
}

// The derivation f -> X(f) determined by a phase field.
expr_ptr apply_field(const phase_field& X, const expr_ptr& f)
{
    const auto& cs = X.cs;
    const std::size_t n = cs.base_dim();
    expr_ptr s = X.ut != 0 ? partial(f, "t") : zero();
    for (std::size_t i = 0; i < n; ++i) {
        s = s + X.q_comps[i] * partial(f, cs.fibre(i));
        s = s + X.p_comps[i] * partial(f, cs.fibre(n + i));
    }
    return s;
}

} // namespace

hamiltonian::hamiltonian(coord_system cs, expr_ptr H) : cs_(std::move(cs)), H_(std::move(H))
{
    require_phase(cs_, "hamiltonian");
    require_phase_function(cs_, H_, "hamiltonian");
}

expr_ptr poisson_bracket(const coord_system& cs, const expr_ptr& f, const expr_ptr& g)
{
    require_phase(cs, "poisson_bracket");
    require_phase_function(cs, f, "poisson_bracket");
    require_phase_function(cs, g, "poisson_bracket");

    const std::size_t n = cs.base_dim();
    expr_ptr s = zero();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& q = cs.fibre(i);
        const auto& p = cs.fibre(n + i);
        s = s + partial(f, p) * partial(g, q) - partial(g, p) * partial(f, q);
    }
    return s;
}

hamilton_equations_data hamilton_equations(const hamiltonian& H)
{
    const auto& cs = H.cs();
    const std::size_t n = cs.base_dim();
    hamilton_equations_data out{cs, {}, {}};
    out.q_rhs.reserve(n);
    out.p_rhs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.q_rhs.push_back(partial(H.density(), cs.fibre(n + i)));
        out.p_rhs.push_back(-partial(H.density(), cs.fibre(i)));
    }
    return out;
}

phase_field::phase_field(coord_system cs_in, int ut_in, std::vector<expr_ptr> q_in,
                         std::vector<expr_ptr> p_in)
    : cs(std::move(cs_in)), ut(ut_in), q_comps(std::move(q_in)), p_comps(std::move(p_in))
{
    require_phase(cs, "phase_field");
    if (ut != 0 && ut != 1)
        throw std::invalid_argument("phase_field: time component must be the constant 0 or 1");
    if (q_comps.size() != cs.base_dim() || p_comps.size() != cs.base_dim())
        throw std::invalid_argument("phase_field: expected one component per base fibre");
    for (const auto* comps : {&q_comps, &p_comps})
        for (const auto& c : *comps)
            require_phase_function(cs, c, "phase_field");
}

phase_field hamilton_field(const hamiltonian& H)
{
    auto eq = hamilton_equations(H);
    return {H.cs(), 1, std::move(eq.q_rhs), std::move(eq.p_rhs)};
}

phase_field vertical_hamilton_field(const coord_system& cs, const expr_ptr& F)
{
    auto eq = hamilton_equations(hamiltonian(cs, F));
    return {cs, 0, std::move(eq.q_rhs), std::move(eq.p_rhs)};
}

phase_field commutator(const phase_field& X, const phase_field& Y)
{
    if (X.cs.dim() != Y.cs.dim())
        throw std::invalid_argument("commutator: dimension mismatch");
    const std::size_t n = X.cs.base_dim();
    std::vector<expr_ptr> q, p;
    q.reserve(n);
    p.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        q.push_back(apply_field(X, Y.q_comps[i]) - apply_field(Y, X.q_comps[i]));
        p.push_back(apply_field(X, Y.p_comps[i]) - apply_field(Y, X.p_comps[i]));
    }
    return {X.cs, 0, std::move(q), std::move(p)};
}

expr_matrix lift_condition_residuals(const phase_field& X)
{
    const auto& cs = X.cs;
    const std::size_t n = cs.base_dim();
    expr_matrix r(n, std::vector<expr_ptr>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            r[i][j] = partial(X.p_comps[i], cs.fibre(n + j)) + partial(X.q_comps[j], cs.fibre(i));
    return r;
}

expr_ptr evolution(const expr_ptr& F, const hamiltonian& H)
{
    require_phase_function(H.cs(), F, "evolution");
    return partial(F, "t") + poisson_bracket(H.cs(), H.density(), F);
}

hamiltonian legendre_invert(const lagrangian& L, std::uint64_t seed)
{
    const auto& cs = L.cs();
    if (cs.is_phase())
        throw std::invalid_argument("legendre_invert: density already lives on a phase system");
    const std::size_t n = cs.dim();

    auto data = legendre(L, seed);
    for (const auto& row : data.hessian)
        for (const auto& m : row)
            if (jet_order(cs, m) > 0)
                throw std::invalid_argument(
                    "legendre_invert: density is not quadratic in the velocities; "
                    "use the numeric integrators for such systems");

    std::unordered_map<std::string, expr_ptr> rest;
    for (std::size_t i = 0; i < n; ++i)
        rest.emplace(cs.velocity(i), zero());
    std::vector<expr_ptr> b;
    b.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        b.push_back(substitute(data.pi[i], rest));
    expr_ptr c = substitute(L.density(), rest);

    // The quadratic shape must reassemble the density exactly.
    expr_ptr shape = c;
    for (std::size_t i = 0; i < n; ++i) {
        shape = shape + b[i] * cs.qt(i);
        for (std::size_t j = 0; j < n; ++j)
            shape = shape + make_num(1, 2) * data.hessian[i][j] * cs.qt(i) * cs.qt(j);
    }
    if (is_zero(cs, L.density() - shape, seed).verdict != zero_verdict::zero)
        throw std::invalid_argument(
            "legendre_invert: density is not quadratic in the velocities; "
            "use the numeric integrators for such systems");

    if (data.tag == regularity::degenerate)
        throw std::domain_error("legendre_invert: the velocity Hessian is singular");

    auto minv = inverse(data.hessian);
    auto phase = coord_system::phase_of(cs);
    expr_ptr H = -c;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            H = H + make_num(1, 2) * (phase.p(i) - b[i]) * minv[i][j] * (phase.p(j) - b[j]);
    return {phase, H};
}

canonical_lagrangian lagrangian_LH(const hamiltonian& H, std::uint64_t seed)
{
    const auto& cs = H.cs();
    const std::size_t n = cs.base_dim();

    expr_ptr LH = -H.density();
    for (std::size_t i = 0; i < n; ++i)
        LH = LH + cs.p(i) * cs.qt(i);

    canonical_lagrangian out{lagrangian(cs, LH), {}, {}};
    auto rows = euler_lagrange(out.density);
    auto eq = hamilton_equations(H);
    out.q_rows.reserve(n);
    out.p_rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.q_rows.push_back(is_zero(cs, rows.E[i] - (eq.p_rhs[i] - cs.qt(n + i)), seed));
        out.p_rows.push_back(is_zero(cs, rows.E[n + i] - (cs.qt(i) - eq.q_rhs[i]), seed));
    }
    return out;
}

phase_field canonical_lift(const jet_field& u, const coord_system& phase)
{
    require_phase(phase, "canonical_lift");
    if (!u.classical())
        throw std::invalid_argument("canonical_lift: generalized fields do not lift");
    const std::size_t n = u.cs().dim();
    if (phase.base_dim() != n)
        throw std::invalid_argument("canonical_lift: dimension mismatch");

    std::vector<expr_ptr> p_comps;
    p_comps.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        expr_ptr s = zero();
        for (std::size_t j = 0; j < n; ++j)
            s = s - phase.p(j) * partial(u.comps()[j], u.cs().fibre(i));
        p_comps.push_back(s);
    }
    return {phase, u.ut(), u.comps(), std::move(p_comps)};
}

hamiltonian_current hamiltonian_symmetry_current(const jet_field& u, const hamiltonian& H,
                                                 std::uint64_t seed)
{
    if (!u.classical())
        throw std::invalid_argument("hamiltonian_symmetry_current: u must be classical");
    const auto& cs = H.cs();
    const std::size_t n = cs.base_dim();
    if (u.cs().dim() != n)
        throw std::invalid_argument("hamiltonian_symmetry_current: dimension mismatch");

    hamiltonian_current out;
    out.current = u.ut() != 0 ? -H.density() : zero();
    for (std::size_t i = 0; i < n; ++i)
        out.current = out.current + cs.p(i) * u.comps()[i];

    expr_ptr r = u.ut() != 0 ? -partial(H.density(), "t") : zero();
    for (std::size_t i = 0; i < n; ++i) {
        r = r + cs.p(i) * partial(u.comps()[i], "t");
        r = r - u.comps()[i] * partial(H.density(), cs.fibre(i));
        for (std::size_t j = 0; j < n; ++j)
            r = r + cs.p(i) * partial(u.comps()[i], u.cs().fibre(j)) *
                        partial(H.density(), cs.fibre(n + j));
    }
    out.residual = r;
    out.verdict = is_zero(cs, r, seed);
    out.cls = out.verdict.verdict == zero_verdict::zero ? symmetry_class::exact
                                                        : symmetry_class::not_shown;
    return out;
}

expr_ptr frame_energy(const hamiltonian& H, const reference_frame& fr)
{
    const auto& cs = H.cs();
    const std::size_t n = cs.base_dim();
    if (fr.Gamma.size() != n)
        throw std::invalid_argument("frame_energy: dimension mismatch");
    expr_ptr e = H.density();
    for (std::size_t i = 0; i < n; ++i)
        e = e - cs.p(i) * fr.Gamma[i];
    return e;
}

trajectory integrate_hamilton(const hamiltonian& H, const std::vector<double>& q0,
                              const std::vector<double>& p0, const integrator_config& cfg)
{
    const std::size_t n = H.cs().base_dim();
    if (q0.size() != n || p0.size() != n)
        throw std::invalid_argument("integrate_hamilton: initial data of wrong dimension");

    auto eq = hamilton_equations(H);
    std::vector<expr_ptr> rhs = std::move(eq.q_rhs);
    rhs.insert(rhs.end(), eq.p_rhs.begin(), eq.p_rhs.end());
    std::vector<double> y0 = q0;
    y0.insert(y0.end(), p0.begin(), p0.end());
    return integrate_flow(H.cs(), rhs, y0, cfg, trajectory_kind::hamilton);
}

} // namespace geomech

// Part of geomech. SPDX-License-Identifier: MIT

#include <geomech/lagrangian.hpp>

#include <random>
#include <set>
#include <stdexcept>

#include <geomech/calculus.hpp>

namespace geomech
{

namespace
{

bool positive(const coord_system& cs, const expr_ptr& e);

bool nonneg(const coord_system& cs, const expr_ptr& e)
{
    switch (e->k) {
        case kind::num:
            return e->coeff >= 0;
        case kind::sym: {
            const symbol_info* info = cs.classify(e->name);
            if (info == nullptr) {
                return false;
            }
            if (info->role == symbol_role::constant) {
                return true; // pi
            }
            return info->role == symbol_role::param && cs.has_param_value(e->name) &&
                   cs.param_value(e->name) >= 0;
        }
        case kind::call:
            return e->fn == func::exp;
        case kind::pow:
            if (numerator(e->expo) % 2 == 0) {
                return true; // even real powers land at or above zero
            }
            return nonneg(cs, e->kids[0]);
        case kind::mul: {
            if (e->coeff < 0) {
                return false;
            }
            for (const auto& k : e->kids) {
                if (!nonneg(cs, k)) {
                    return false;
                }
            }
            return true;
        }
        case kind::add: {
            for (const auto& k : e->kids) {
                if (!nonneg(cs, k)) {
                    return false;
                }
            }
            return true;
        }
    }
    return false;
}

bool never_vanishing(const coord_system& cs, const expr_ptr& e);

bool positive(const coord_system& cs, const expr_ptr& e)
{
    switch (e->k) {
        case kind::num:
            return e->coeff > 0;
        case kind::sym: {
            const symbol_info* info = cs.classify(e->name);
            if (info == nullptr) {
                return false;
            }
            if (info->role == symbol_role::constant) {
                return true;
            }
            return info->role == symbol_role::param && cs.has_param_value(e->name) &&
                   cs.param_value(e->name) > 0;
        }
        case kind::call:
            return e->fn == func::exp;
        case kind::pow:
            if (positive(cs, e->kids[0])) {
                return true;
            }
            return numerator(e->expo) % 2 == 0 && never_vanishing(cs, e->kids[0]);
        case kind::mul: {
            if (e->coeff <= 0) {
                return false;
            }
            for (const auto& k : e->kids) {
                if (!positive(cs, k)) {
                    return false;
                }
            }
            return true;
        }
        case kind::add: {
            bool strict = false;
            for (const auto& k : e->kids) {
                if (positive(cs, k)) {
                    strict = true;
                } else if (!nonneg(cs, k)) {
                    return false;
                }
            }
            return strict;
        }
    }
    return false;
}

// Provably nonzero wherever defined. Declared parameters without a pinned
// value count as nonzero: a model constant that may vanish should be given
// the value zero explicitly.
bool never_vanishing(const coord_system& cs, const expr_ptr& e)
{
    switch (e->k) {
        case kind::num:
            return e->coeff != 0;
        case kind::sym: {
            const symbol_info* info = cs.classify(e->name);
            if (info == nullptr) {
                return false;
            }
            if (info->role == symbol_role::constant) {
                return true;
            }
            if (info->role != symbol_role::param) {
                return false;
            }
            return !cs.has_param_value(e->name) || cs.param_value(e->name) != 0;
        }
        case kind::call:
            return e->fn == func::exp;
        case kind::pow:
            return never_vanishing(cs, e->kids[0]);
        case kind::mul: {
            for (const auto& k : e->kids) {
                if (!never_vanishing(cs, k)) {
                    return false;
                }
            }
            return true;
        }
        case kind::add:
            return positive(cs, e) || positive(cs, -e);
    }
    return false;
}

std::vector<std::pair<point, double>> sample_values(const coord_system& cs, const expr_ptr& e,
                                                    int count, std::uint64_t seed)
{
    std::vector<std::string> names;
    for (const auto& s : free_symbols(e)) {
        if (s != "pi" && !cs.has_param_value(s)) {
            names.push_back(s);
        }
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mag(0.1, 2.0);
    std::uniform_int_distribution<int> flip(0, 1);

    std::vector<std::pair<point, double>> out;
    for (int attempts = 0; (int)out.size() < count && attempts < 10 * count; ++attempts) {
        point at;
        for (const auto& n : names) {
            at[n] = (flip(rng) != 0 ? 1.0 : -1.0) * mag(rng);
        }
        try {
            double v = eval(cs, e, at);
            out.emplace_back(std::move(at), v);
        } catch (const std::domain_error&) {
            // outside the expression's domain; redraw
        }
    }
    return out;
}

} // namespace

// Phase systems are admitted on purpose: p_i q^i_t - H is a first-order
// density on the bundle with fibres (q, p), and the variational machinery
// below applies to it verbatim.
lagrangian::lagrangian(coord_system cs, expr_ptr L) : cs_(std::move(cs)), L_(std::move(L))
{
    if (!L_) {
        throw std::invalid_argument("lagrangian: null density");
    }
    if (jet_order(cs_, L_) > 1) {
        throw std::invalid_argument("lagrangian must not involve accelerations");
    }
}

lagrange_operator::lagrange_operator(coord_system cs_in, std::vector<expr_ptr> E_in)
    : cs(std::move(cs_in)), E(std::move(E_in))
{
    if (E.size() != cs.dim()) {
        throw std::invalid_argument("operator has wrong number of components");
    }
    for (const auto& e : E) {
        if (jet_order(cs, e) > 2) {
            throw std::invalid_argument("operator components must be second order");
        }
    }
}

lagrange_operator euler_lagrange(const lagrangian& L)
{
    const coord_system& cs = L.cs();
    std::vector<expr_ptr> E;
    E.reserve(cs.dim());
    for (std::size_t i = 0; i < cs.dim(); ++i) {
        E.push_back(partial(L.density(), cs.fibre(i)) -
                    total_derivative(cs, partial(L.density(), cs.velocity(i))));
    }
    return {cs, std::move(E)};
}

bool helmholtz_report::contradicted() const
{
    for (const auto* table : {&position_rows, &velocity_rows, &acceleration_rows}) {
        for (const auto& r : *table) {
            if (r.verdict.verdict == zero_verdict::nonzero) {
                return true;
            }
        }
    }
    return false;
}

bool helmholtz_report::proven() const
{
    for (const auto* table : {&position_rows, &velocity_rows, &acceleration_rows}) {
        for (const auto& r : *table) {
            if (r.verdict.verdict != zero_verdict::zero) {
                return false;
            }
        }
    }
    return true;
}

helmholtz_report helmholtz_check(const lagrange_operator& op, std::uint64_t seed)
{
    const coord_system& cs = op.cs;
    const std::size_t n = cs.dim();
    helmholtz_report rep;

    auto dq = [&](std::size_t i, std::size_t j) { return partial(op.E[i], cs.fibre(j)); };
    auto dv = [&](std::size_t i, std::size_t j) { return partial(op.E[i], cs.velocity(j)); };
    auto da = [&](std::size_t i, std::size_t j) { return partial(op.E[i], cs.acceleration(j)); };

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            expr_ptr r = dq(i, j) - dq(j, i) +
                         make_num(1, 2) * total_derivative(cs, dv(j, i) - dv(i, j));
            zero_report v = is_zero(cs, r, seed);
            rep.position_rows.push_back({i, j, std::move(r), v});

            expr_ptr c = da(i, j) - da(j, i);
            zero_report vc = is_zero(cs, c, seed);
            rep.acceleration_rows.push_back({i, j, std::move(c), vc});
        }
    }

    // The total derivative acts on one slot only, so this family is not
    // symmetric in (i, j) until the acceleration family is known to hold;
    // every ordered pair is checked, the diagonal included.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            expr_ptr r = dv(i, j) + dv(j, i) -
                         make_num(2) * total_derivative(cs, da(i, j));
            zero_report v = is_zero(cs, r, seed);
            rep.velocity_rows.push_back({i, j, std::move(r), v});
        }
    }

    return rep;
}

const char* to_string(regularity r)
{
    switch (r) {
        case regularity::regular:
            return "regular";
        case regularity::degenerate:
            return "degenerate";
        case regularity::pointwise:
            return "pointwise";
    }
    return "?";
}

legendre_data legendre(const lagrangian& L, std::uint64_t seed)
{
    const coord_system& cs = L.cs();
    const std::size_t n = cs.dim();

    legendre_data out;
    out.pi.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.pi.push_back(partial(L.density(), cs.velocity(i)));
    }
    out.hessian.assign(n, std::vector<expr_ptr>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            out.hessian[i][j] = partial(out.pi[i], cs.velocity(j));
        }
    }
    out.det = determinant(out.hessian);

    if (is_zero_literal(out.det)) {
        out.tag = regularity::degenerate;
    } else if (never_vanishing(cs, out.det)) {
        out.tag = regularity::regular;
    } else if (is_zero(cs, out.det, seed).verdict == zero_verdict::zero) {
        out.tag = regularity::degenerate;
    } else {
        out.tag = regularity::pointwise;
        out.det_samples = sample_values(cs, out.det, zero_samples, seed);
    }
    return out;
}

second_order_equation lagrangian_connection(const lagrangian& L)
{
    const coord_system& cs = L.cs();
    const std::size_t n = cs.dim();
    legendre_data data = legendre(L);
    if (data.tag == regularity::degenerate) {
        throw std::domain_error("degenerate Hessian admits no unique dynamic equation");
    }

    std::vector<expr_ptr> rhs;
    rhs.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        expr_ptr r = partial(L.density(), cs.fibre(j)) - partial(data.pi[j], "t");
        for (std::size_t k = 0; k < n; ++k) {
            r = r - cs.qt(k) * partial(data.pi[j], cs.fibre(k));
        }
        rhs.push_back(std::move(r));
    }
    return {cs, matvec(inverse(data.hessian), rhs)};
}

expr_ptr poincare_cartan_data::h0() const
{
    std::vector<expr_ptr> terms;
    terms.reserve(dq_coeff.size() + 1);
    for (std::size_t i = 0; i < dq_coeff.size(); ++i) {
        terms.push_back(dq_coeff[i] * extended.qt(i));
    }
    terms.push_back(dt_coeff);
    return make_add(std::move(terms));
}

poincare_cartan_data poincare_cartan(const lagrangian& L)
{
    const coord_system& cs = L.cs();
    const std::size_t n = cs.dim();

    poincare_cartan_data out;
    out.hatted.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.hatted.push_back(cs.fibre(i) + "_ct");
    }
    out.extended = cs.with_params(out.hatted);

    legendre_data data = legendre(L);
    out.dq_coeff = data.pi;
    {
        std::vector<expr_ptr> terms{L.density()};
        for (std::size_t i = 0; i < n; ++i) {
            terms.push_back(-(data.pi[i] * cs.qt(i)));
        }
        out.dt_coeff = make_add(std::move(terms));
    }

    std::vector<expr_ptr> mismatch;
    mismatch.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        mismatch.push_back(out.extended.sym(out.hatted[j]) - cs.qt(j));
    }

    for (std::size_t i = 0; i < n; ++i) {
        std::vector<expr_ptr> vterms;
        vterms.reserve(n);
        for (std::size_t j = 0; j < n; ++j) {
            vterms.push_back(data.hessian[i][j] * mismatch[j]);
        }
        out.velocity_residual.push_back(make_add(std::move(vterms)));

        // dhat_t pi_i: time derivative holding the hatted velocity in the
        // base slot and the genuine acceleration in the velocity slot.
        expr_ptr dhat = partial(data.pi[i], "t");
        for (std::size_t j = 0; j < n; ++j) {
            dhat = dhat + out.extended.sym(out.hatted[j]) * partial(data.pi[i], cs.fibre(j)) +
                   out.extended.sym(cs.acceleration(j)) * partial(data.pi[i], cs.velocity(j));
        }
        expr_ptr base = partial(L.density(), cs.fibre(i)) - dhat;
        for (std::size_t j = 0; j < n; ++j) {
            base = base + partial(data.pi[j], cs.fibre(i)) * mismatch[j];
        }
        out.base_residual.push_back(std::move(base));
    }
    return out;
}

expr_ptr energy_function(const lagrangian& L, const reference_frame& fr)
{
    const coord_system& cs = L.cs();
    if (fr.Gamma.size() != cs.dim()) {
        throw std::invalid_argument("frame and lagrangian dimensions disagree");
    }
    std::vector<expr_ptr> terms;
    terms.reserve(cs.dim() + 1);
    for (std::size_t i = 0; i < cs.dim(); ++i) {
        terms.push_back(partial(L.density(), cs.velocity(i)) * (cs.qt(i) - fr.Gamma[i]));
    }
    terms.push_back(-L.density());
    return make_add(std::move(terms));
}

std::vector<zero_report> is_variationally_trivial(const lagrangian& L, std::uint64_t seed)
{
    lagrange_operator op = euler_lagrange(L);
    std::vector<zero_report> out;
    out.reserve(op.E.size());
    for (const auto& e : op.E) {
        out.push_back(is_zero(op.cs, e, seed));
    }
    return out;
}

} // namespace geomech

// Part of geomech. SPDX-License-Identifier: MIT

#include <geomech/newtonian.hpp>

#include <stdexcept>
#include <string>
#include <utility>

#include <geomech/calculus.hpp>
#include <geomech/linalg.hpp>

namespace geomech
{

namespace
{

void require_first_order(const coord_system& cs, const expr_ptr& e, const char* what)
{
    if (jet_order(cs, e) > 1) {
        throw std::invalid_argument(std::string(what) + " must not involve accelerations");
    }
}

// Derivative along the equation: d_t with the acceleration slot filled by xi.
// Entries have jet order <= 1, so substituting second jets out of the total
// derivative is exact.
expr_ptr evolution_derivative(const second_order_equation& eq, const expr_ptr& e)
{
    std::unordered_map<std::string, expr_ptr> accel;
    for (std::size_t k = 0; k < eq.xi.size(); ++k) {
        accel.emplace(eq.cs.acceleration(k), eq.xi[k]);
    }
    return substitute(total_derivative(eq.cs, e), accel);
}

} // namespace

mass_tensor::mass_tensor(coord_system cs, std::vector<std::vector<expr_ptr>> m)
    : cs_(std::move(cs)), m_(std::move(m))
{
    if (cs_.is_phase()) {
        throw std::invalid_argument("mass tensor lives on a configuration system");
    }
    const std::size_t n = cs_.dim();
    if (m_.size() != n) {
        throw std::invalid_argument("mass tensor has wrong dimension");
    }
    for (const auto& row : m_) {
        if (row.size() != n) {
            throw std::invalid_argument("mass tensor has wrong dimension");
        }
        for (const auto& e : row) {
            require_first_order(cs_, e, "mass tensor entries");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!equal(m_[i][j], m_[j][i])) {
                throw std::invalid_argument("mass tensor must be symmetric");
            }
        }
    }
}

mass_tensor mass_tensor::euclidean(const coord_system& cs)
{
    return {cs, identity_matrix(cs.dim())};
}

bool mass_tensor::velocity_independent() const
{
    for (const auto& row : m_) {
        for (const auto& e : row) {
            if (jet_order(cs_, e) > 0) {
                return false;
            }
        }
    }
    return true;
}

external_force::external_force(coord_system cs, std::vector<expr_ptr> f)
    : cs_(std::move(cs)), f_(std::move(f))
{
    if (cs_.is_phase()) {
        throw std::invalid_argument("external force lives on a configuration system");
    }
    if (f_.size() != cs_.dim()) {
        throw std::invalid_argument("external force has wrong dimension");
    }
    for (const auto& e : f_) {
        require_first_order(cs_, e, "force components");
    }
}

bool newtonian_report::contradicted() const
{
    for (const auto& r : velocity_symmetry) {
        if (r.verdict.verdict == zero_verdict::nonzero) {
            return true;
        }
    }
    for (const auto& r : compatibility) {
        if (r.verdict.verdict == zero_verdict::nonzero) {
            return true;
        }
    }
    return false;
}

bool newtonian_report::proven() const
{
    for (const auto& r : velocity_symmetry) {
        if (r.verdict.verdict != zero_verdict::zero) {
            return false;
        }
    }
    for (const auto& r : compatibility) {
        if (r.verdict.verdict != zero_verdict::zero) {
            return false;
        }
    }
    return true;
}

newtonian_report check_newtonian(const mass_tensor& m, const second_order_equation& eq,
                                 std::uint64_t seed)
{
    const coord_system& cs = m.cs();
    const std::size_t n = m.dim();
    if (eq.xi.size() != n) {
        throw std::invalid_argument("mass tensor and equation dimensions disagree");
    }

    newtonian_report rep;

    // dv_k m_ij - dv_j m_ik is antisymmetric under swapping j and k, so the
    // grid j < k covers every independent instance.
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = j + 1; k < n; ++k) {
                expr_ptr r = partial(m.entry(i, j), cs.velocity(k)) -
                             partial(m.entry(i, k), cs.velocity(j));
                zero_report v = is_zero(cs, r, seed);
                rep.velocity_symmetry.push_back({i, j, k, std::move(r), v});
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            expr_ptr r = evolution_derivative(eq, m.entry(i, j));
            for (std::size_t k = 0; k < n; ++k) {
                expr_ptr half = make_num(1, 2);
                r = r + half * m.entry(i, k) * partial(eq.xi[k], cs.velocity(j)) +
                    half * m.entry(j, k) * partial(eq.xi[k], cs.velocity(i));
            }
            zero_report v = is_zero(cs, r, seed);
            rep.compatibility.push_back({i, j, 0, std::move(r), v});
        }
    }

    return rep;
}

newtonian_system::newtonian_system(mass_tensor m, second_order_equation eq, std::uint64_t seed)
    : m_(std::move(m)), eq_(std::move(eq)), rep_(check_newtonian(m_, eq_, seed))
{
    if (rep_.contradicted()) {
        for (const auto* table : {&rep_.velocity_symmetry, &rep_.compatibility}) {
            for (const auto& r : *table) {
                if (r.verdict.verdict == zero_verdict::nonzero) {
                    throw std::invalid_argument("mass tensor is not compatible with the equation: " +
                                                to_string(r.residual) + " != 0");
                }
            }
        }
    }
}

std::vector<expr_ptr> equation_of_motion(const newtonian_system& sys)
{
    const coord_system& cs = sys.mass().cs();
    const std::size_t n = sys.mass().dim();
    std::vector<expr_ptr> rows;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<expr_ptr> terms;
        terms.reserve(n);
        for (std::size_t k = 0; k < n; ++k) {
            terms.push_back(sys.mass().entry(i, k) *
                            (cs.sym(cs.acceleration(k)) - sys.equation().xi[k]));
        }
        rows.push_back(make_add(std::move(terms)));
    }
    return rows;
}

bool forced_equation::admissible_contradicted() const
{
    for (const auto& r : admissibility) {
        if (r.verdict.verdict == zero_verdict::nonzero) {
            return true;
        }
    }
    return false;
}

bool forced_equation::admissible_proven() const
{
    for (const auto& r : admissibility) {
        if (r.verdict.verdict != zero_verdict::zero) {
            return false;
        }
    }
    return true;
}

forced_equation apply_force(const newtonian_system& sys, const external_force& f,
                            std::uint64_t seed)
{
    const coord_system& cs = sys.mass().cs();
    const std::size_t n = sys.mass().dim();
    if (f.dim() != n) {
        throw std::invalid_argument("force and system dimensions disagree");
    }

    expr_ptr det = determinant(sys.mass().entries());
    if (is_zero_literal(det) || is_zero(cs, det, seed).verdict == zero_verdict::zero) {
        throw std::domain_error("mass tensor is singular");
    }

    std::vector<expr_ptr> push = matvec(inverse(sys.mass().entries()), f.components());
    std::vector<expr_ptr> xi = sys.equation().xi;
    for (std::size_t i = 0; i < n; ++i) {
        xi[i] = xi[i] + push[i];
    }

    forced_equation out{second_order_equation(cs, std::move(xi)), {}};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            expr_ptr r = partial(f.component(j), cs.velocity(i)) +
                         partial(f.component(i), cs.velocity(j));
            zero_report v = is_zero(cs, r, seed);
            out.admissibility.push_back({i, j, 0, std::move(r), v});
        }
    }
    return out;
}

} // namespace geomech

#include <doctest.h>

#include <random>
#include <stdexcept>

#include <geomech/calculus.hpp>
#include <geomech/newtonian.hpp>
#include <geomech/parser.hpp>
#include <geomech/zerotest.hpp>

using namespace geomech;

namespace
{

const coord_system& friction_cs()
{
    static const coord_system cs =
        coord_system::cartesian(1).with_param("k").with_param("m0");
    return cs;
}

second_order_equation friction_eq()
{
    return second_order_equation(friction_cs(), {parse(friction_cs(), "-(k/m0)*q1_t")});
}

mass_tensor friction_mass()
{
    return mass_tensor(friction_cs(), {{parse(friction_cs(), "m0*exp(k/m0*t)")}});
}

const coord_system& kepler_cs()
{
    static const coord_system cs = coord_system::cartesian(3);
    return cs;
}

} // namespace

TEST_SUITE("newtonian")
{

TEST_CASE("euclidean mass with a velocity-free equation is newtonian")
{
    auto cs = coord_system::cartesian(2);
    auto m = mass_tensor::euclidean(cs);
    CHECK(m.velocity_independent());

    second_order_equation eq(cs, {parse(cs, "-q1 + t*q2"), parse(cs, "q1*q2")});
    auto rep = check_newtonian(m, eq);
    CHECK(rep.proven());
    CHECK(!rep.contradicted());

    newtonian_system sys(m, eq);
    CHECK(sys.report().proven());
}

TEST_CASE("constant mass contradicts friction, exponential mass resolves it")
{
    auto m_const = mass_tensor(friction_cs(), {{parse(friction_cs(), "m0")}});
    auto rep = check_newtonian(m_const, friction_eq());
    REQUIRE(rep.compatibility.size() == 1);
    CHECK(rep.compatibility[0].verdict.verdict == zero_verdict::nonzero);
    // The residual is exactly -k.
    CHECK(is_zero_literal(rep.compatibility[0].residual + parse(friction_cs(), "k")));
    CHECK(rep.contradicted());
    CHECK_THROWS_AS(newtonian_system(m_const, friction_eq()), std::invalid_argument);

    auto rep2 = check_newtonian(friction_mass(), friction_eq());
    REQUIRE(rep2.compatibility.size() == 1);
    CHECK(is_zero_literal(rep2.compatibility[0].residual));
    CHECK(rep2.proven());
}

TEST_CASE("friction equation of motion carries the exponential factor")
{
    newtonian_system sys(friction_mass(), friction_eq());
    auto rows = equation_of_motion(sys);
    REQUIRE(rows.size() == 1);
    auto expected = parse(friction_cs(), "exp(k/m0*t)*(m0*q1_tt + k*q1_t)");
    CHECK(is_zero_literal(rows[0] - expected));
}

TEST_CASE("velocity-independent force on the free euclidean system gives the kepler equation")
{
    auto m = mass_tensor::euclidean(kepler_cs());
    second_order_equation free(kepler_cs(), {zero(), zero(), zero()});
    newtonian_system sys(m, free);

    std::vector<expr_ptr> f;
    for (std::size_t i = 0; i < 3; ++i) {
        f.push_back(parse(kepler_cs(),
                          "-q" + std::to_string(i + 1) + "*(q1^2+q2^2+q3^2)^(-3/2)"));
    }
    auto forced = apply_force(sys, external_force(kepler_cs(), f));
    CHECK(forced.admissible_proven());
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(is_zero_literal(forced.equation.xi[i] - f[i]));
    }
}

TEST_CASE("a velocity-linear force is inadmissible")
{
    auto cs = coord_system::cartesian(1).with_param("c");
    newtonian_system sys(mass_tensor::euclidean(cs),
                         second_order_equation(cs, {zero()}));
    auto forced = apply_force(sys, external_force(cs, {parse(cs, "c*q1_t")}));
    REQUIRE(forced.admissibility.size() == 1);
    CHECK(is_zero_literal(forced.admissibility[0].residual - parse(cs, "2*c")));
    CHECK(forced.admissible_contradicted());
    // The deformed equation is produced regardless.
    CHECK(is_zero_literal(forced.equation.xi[0] - parse(cs, "c*q1_t")));
}

TEST_CASE("degenerate mass leaves a direction unconstrained and rejects forces")
{
    auto cs = coord_system::cartesian(2);
    auto m = mass_tensor(cs, {{one(), zero()}, {zero(), zero()}});
    second_order_equation eq(cs, {zero(), one()});
    newtonian_system sys(m, eq);

    auto rows = equation_of_motion(sys);
    REQUIRE(rows.size() == 2);
    CHECK(is_zero_literal(rows[0] - parse(cs, "q1_tt")));
    CHECK(is_zero_literal(rows[1]));

    CHECK_THROWS_AS(apply_force(sys, external_force(cs, {one(), one()})),
                    std::domain_error);
}

TEST_CASE("velocity symmetry of the mass tensor is checked across index triples")
{
    auto cs = coord_system::cartesian(2);

    // m_11 = q2_t violates dv_2 m_11 = dv_1 m_12.
    auto bad = mass_tensor(cs, {{parse(cs, "q2_t"), zero()}, {zero(), one()}});
    auto rep = check_newtonian(bad, second_order_equation(cs, {zero(), zero()}));
    bool hit = false;
    for (const auto& r : rep.velocity_symmetry) {
        if (r.verdict.verdict == zero_verdict::nonzero) {
            hit = true;
        }
    }
    CHECK(hit);
    CHECK(rep.contradicted());

    // Hessian masses pass: m_ij = dv_i dv_j G is symmetric in all velocity slots.
    auto G = parse(cs, "(q1_t^2 + q2_t^2)^2");
    std::vector<std::vector<expr_ptr>> hess(2, std::vector<expr_ptr>(2));
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            hess[i][j] = partial(partial(G, cs.velocity(i)), cs.velocity(j));
        }
    }
    auto good = mass_tensor(cs, hess);
    CHECK(!good.velocity_independent());
    auto rep2 = check_newtonian(good, second_order_equation(cs, {zero(), zero()}));
    CHECK(rep2.proven());
}

TEST_CASE("admissible forces keep random systems newtonian")
{
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> coeff(-3, 3);

    auto cs = coord_system::cartesian(2);
    auto q1 = cs.q(0);
    auto q2 = cs.q(1);
    auto t = cs.time_sym();

    auto random_base_poly = [&] {
        std::vector<expr_ptr> terms{make_num(coeff(rng))};
        terms.push_back(make_num(coeff(rng)) * q1);
        terms.push_back(make_num(coeff(rng)) * q2);
        terms.push_back(make_num(coeff(rng)) * t * q1);
        terms.push_back(make_num(coeff(rng)) * q1 * q2);
        return make_add(std::move(terms));
    };

    for (int trial = 0; trial < 6; ++trial) {
        // Diagonal masses exp(c_i t) demand the velocity term -c_i q^i_t in
        // the i-th equation; anything velocity-free may ride along.
        int c1 = coeff(rng);
        int c2 = coeff(rng);
        auto m1 = make_call(func::exp, make_num(c1) * t);
        auto m2 = make_call(func::exp, make_num(c2) * t);
        mass_tensor m(cs, {{m1, zero()}, {zero(), m2}});

        std::vector<expr_ptr> xi{make_num(-c1) * cs.qt(0) + random_base_poly(),
                                 make_num(-c2) * cs.qt(1) + random_base_poly()};
        newtonian_system sys(m, second_order_equation(cs, xi));
        CHECK(sys.report().proven());

        external_force f(cs, {random_base_poly(), random_base_poly()});
        auto forced = apply_force(sys, f);
        CHECK(forced.admissible_proven());

        auto rep = check_newtonian(m, forced.equation);
        CHECK(!rep.contradicted());
        CHECK(rep.proven());
    }
}

TEST_CASE("construction rejects malformed tensors and forces")
{
    auto cs = coord_system::cartesian(2);
    CHECK_THROWS_AS(mass_tensor(cs, {{one(), one()}, {zero(), one()}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(mass_tensor(cs, {{one()}}), std::invalid_argument);
    CHECK_THROWS_AS(mass_tensor(cs, {{parse(cs, "q1_tt"), zero()}, {zero(), one()}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(external_force(cs, {parse(cs, "q1_tt"), zero()}),
                    std::invalid_argument);
    CHECK_THROWS_AS(external_force(cs, {one()}), std::invalid_argument);
}

} // TEST_SUITE

#include <doctest.h>

#include <random>
#include <stdexcept>

#include <geomech/calculus.hpp>
#include <geomech/integrate.hpp>
#include <geomech/lagrangian.hpp>
#include <geomech/parser.hpp>
#include <geomech/symmetry.hpp>
#include <geomech/zerotest.hpp>

using namespace geomech;

namespace
{

const coord_system& havas_cs()
{
    static const coord_system cs =
        coord_system::cartesian(1).with_param("k").with_param("m0");
    return cs;
}

lagrangian havas()
{
    return {havas_cs(), parse(havas_cs(), "1/2*m0*exp(k/m0*t)*q1_t^2")};
}

// Drag frame whose energy function stays conserved despite the friction.
jet_field havas_drag_lift()
{
    return {havas_cs(), 1, {parse(havas_cs(), "-k/(2*m0)*q1")}};
}

const coord_system& kepler_cs()
{
    static const coord_system cs = coord_system::cartesian(3);
    return cs;
}

lagrangian kepler()
{
    return {kepler_cs(),
            parse(kepler_cs(), "1/2*(q1_t^2+q2_t^2+q3_t^2) + (q1^2+q2^2+q3^2)^(-1/2)")};
}

jet_field kepler_rotation_12()
{
    const auto& cs = kepler_cs();
    return {cs, 0, {-cs.q(1), cs.q(0), zero()}};
}

expr_ptr random_base_poly(const coord_system& cs, std::mt19937_64& rng)
{
    std::uniform_int_distribution<int> small(-2, 2);
    std::vector<expr_ptr> terms{make_num(small(rng))};
    terms.push_back(make_num(small(rng)) * cs.q(0));
    terms.push_back(make_num(small(rng)) * cs.q(1) * cs.time_sym());
    terms.push_back(make_num(small(rng)) * cs.q(0) * cs.q(1));
    return make_add(std::move(terms));
}

} // namespace

TEST_SUITE_BEGIN("symmetry");

TEST_CASE("prolongation coefficient lists")
{
    auto c1 = coord_system::cartesian(1);

    jet_field dq(c1, 0, {one()});
    auto pr = prolong(dq);
    CHECK(pr.ut == 0);
    CHECK(equal(pr.base[0], one()));
    CHECK(equal(pr.velocity[0], zero()));
    CHECK(pr.acceleration.empty());

    auto rot = prolong(kepler_rotation_12());
    CHECK(equal(rot.velocity[0], -kepler_cs().qt(1)));
    CHECK(equal(rot.velocity[1], kepler_cs().qt(0)));
    CHECK(equal(rot.velocity[2], zero()));

    jet_field drift(c1, 0, {c1.time_sym()});
    CHECK(equal(prolong(drift).velocity[0], one()));

    jet_field pos(c1, 1, {c1.q(0)});
    auto pr2 = prolong(pos, 2);
    CHECK(equal(pr2.velocity[0], c1.qt(0)));
    CHECK(equal(pr2.acceleration[0], c1.qtt(0)));

    CHECK_THROWS_AS(prolong(dq, 0), std::invalid_argument);
    CHECK_THROWS_AS(prolong(dq, 3), std::invalid_argument);
    CHECK_THROWS_AS(jet_field(c1, 2, {one()}), std::invalid_argument);
    CHECK_THROWS_AS(jet_field(c1, 0, {}), std::invalid_argument);
    CHECK_THROWS_AS(jet_field(c1, 0, {c1.qtt(0)}), std::invalid_argument);
}

TEST_CASE("lie derivative oracles")
{
    auto c1 = coord_system::cartesian(1);
    lagrangian osc(c1, parse(c1, "1/2*q1_t^2 - 1/2*q1^2"));
    jet_field dt1(c1, 1, {zero()});
    CHECK(is_zero_literal(lie_derivative(dt1, osc)));

    CHECK(is_zero_literal(lie_derivative(kepler_rotation_12(), kepler())));

    jet_field dt_havas(havas_cs(), 1, {zero()});
    CHECK(equal(lie_derivative(dt_havas, havas()),
                parse(havas_cs(), "k/2*exp(k/m0*t)*q1_t^2")));
}

TEST_CASE("first variational formula holds")
{
    std::mt19937_64 rng(2026);
    auto c2 = coord_system::cartesian(2);
    std::uniform_int_distribution<int> off(-1, 1);

    for (int draw = 0; draw < 8; ++draw) {
        expr_ptr L = c2.qt(0) * c2.qt(0) + c2.qt(1) * c2.qt(1) +
                     make_num(off(rng)) * c2.qt(0) * c2.qt(1) +
                     random_base_poly(c2, rng) * c2.qt(0) + random_base_poly(c2, rng);
        jet_field u(c2, off(rng) >= 0 ? 1 : 0,
                    {random_base_poly(c2, rng), random_base_poly(c2, rng)});
        auto rep = check_first_variational(u, lagrangian(c2, L), 7 + draw);
        CHECK(rep.verdict == zero_verdict::zero);
    }

    // Time translation against a density with explicit time dependence.
    jet_field dt_havas(havas_cs(), 1, {zero()});
    CHECK(check_first_variational(dt_havas, havas()).verdict == zero_verdict::zero);

    // A generalized field, expanded on second jets.
    auto c1 = coord_system::cartesian(1);
    jet_field gen(c1, 0, {c1.qt(0)});
    CHECK(check_first_variational(gen, lagrangian(c1, parse(c1, "1/2*q1_t^2"))).verdict ==
          zero_verdict::zero);
}

TEST_CASE("classification of symmetries")
{
    auto rot = classify_symmetry(kepler_rotation_12(), kepler());
    CHECK(rot.cls == symmetry_class::exact);
    CHECK(is_zero_literal(rot.residual));

    auto drag = classify_symmetry(havas_drag_lift(), havas());
    CHECK(drag.cls == symmetry_class::exact);

    auto c1 = coord_system::cartesian(1);
    lagrangian lifted(c1, parse(c1, "1/2*q1_t^2 + q1"));
    jet_field dq(c1, 0, {one()});

    auto var = classify_symmetry(dq, lifted, c1.time_sym());
    CHECK(var.cls == symmetry_class::variational);
    CHECK(equal(var.sigma, c1.time_sym()));

    auto bare = classify_symmetry(dq, lifted);
    CHECK(bare.cls == symmetry_class::not_shown);
    CHECK(bare.verdict.verdict == zero_verdict::nonzero);
    CHECK(equal(bare.residual, one()));

    auto wrong = classify_symmetry(dq, lifted, c1.time_sym() * c1.time_sym());
    CHECK(wrong.cls == symmetry_class::not_shown);

    CHECK_THROWS_AS(classify_symmetry(dq, lifted, c1.qtt(0)), std::invalid_argument);
}

TEST_CASE("symmetry currents")
{
    auto c1 = coord_system::cartesian(1);
    lagrangian free(c1, parse(c1, "1/2*q1_t^2"));
    jet_field dq(c1, 0, {one()});
    CHECK(equal(symmetry_current(dq, free), c1.qt(0)));

    const auto& kc = kepler_cs();
    auto M12 = symmetry_current(kepler_rotation_12(), kepler());
    CHECK(equal(M12, kc.q(0) * kc.qt(1) - kc.q(1) * kc.qt(0)));

    // The time lift along a frame carries minus the frame energy.
    reference_frame drag(havas_cs(), {parse(havas_cs(), "-k/(2*m0)*q1")});
    CHECK(equal(symmetry_current(havas_drag_lift(), havas()),
                -energy_function(havas(), drag)));

    // Sigma adjustment makes the vertical part carry the same current.
    auto u = havas_drag_lift();
    auto uv = u.vertical_part();
    CHECK(uv.ut() == 0);
    CHECK(equal(symmetry_current(u, havas()),
                symmetry_current(uv, havas(), -havas().density())));

    // And the same classification, with sigma = -L standing in.
    auto vert = classify_symmetry(uv, havas(), -havas().density());
    CHECK(vert.cls == symmetry_class::variational);
}

TEST_CASE("exact symmetries satisfy the off-shell current identity")
{
    // d_t T_u + (u^i - q^i_t ut) E_i vanishes identically, not only along
    // solutions.
    auto balance = [](const jet_field& u, const lagrangian& L) {
        auto E = euler_lagrange(L);
        expr_ptr s = total_derivative(L.cs(), symmetry_current(u, L));
        for (std::size_t i = 0; i < E.E.size(); ++i) {
            expr_ptr vert = u.comps()[i];
            if (u.ut() != 0)
                vert = vert - L.cs().qt(i);
            s = s + vert * E.E[i];
        }
        return s;
    };

    CHECK(is_zero_literal(balance(kepler_rotation_12(), kepler())));
    CHECK(definitely_zero(havas_cs(), balance(havas_drag_lift(), havas())));
}

TEST_CASE("gauge families and their identities")
{
    auto c2 = coord_system::cartesian(2);

    // L is untouched by q1 -> q1 + chi, q2 -> q2 + chi_t; on a system
    // extended by the parameter fibre this is an exact classical symmetry.
    auto ext = c2.with_extra_fibres({"chi1"});
    lagrangian ext_density(ext, parse(ext, "1/2*(q1_t - q2)^2"));
    jet_field shift(ext, 0, {ext.sym("chi1"), ext.sym("chi1_t"), zero()});
    CHECK(classify_symmetry(shift, ext_density).cls == symmetry_class::exact);

    // The same family as coefficient tables, against the plain system.
    lagrangian density(c2, parse(c2, "1/2*(q1_t - q2)^2"));
    auto E = euler_lagrange(density);
    gauge_symmetry shift_tables(c2, {{one(), zero()}}, {{zero(), one()}},
                                {{zero(), zero()}});
    auto ids = noether_identity_check(shift_tables, E);
    REQUIRE(ids.size() == 1);
    CHECK(ids[0].verdict.verdict == zero_verdict::zero);

    // Not every table is a gauge symmetry of this density.
    gauge_symmetry bogus(c2, {{one(), one()}}, {{zero(), zero()}}, {{zero(), zero()}});
    CHECK(noether_identity_check(bogus, E)[0].verdict.verdict == zero_verdict::nonzero);

    // Second-derivative coefficients: q1 -> q1 - chi + chi_tt,
    // q2 -> q2 - chi_t - chi_tt leaves 1/2 (q1_t + q2_t - q2)^2 invariant.
    lagrangian chained(c2, parse(c2, "1/2*(q1_t + q2_t - q2)^2"));
    auto Ec = euler_lagrange(chained);
    gauge_symmetry second(c2, {{-one(), zero()}}, {{zero(), -one()}},
                          {{one(), -one()}});
    CHECK(noether_identity_check(second, Ec)[0].verdict.verdict == zero_verdict::zero);

    // A lone u2 row drives the residual up to fourth jets; the check widens
    // its cap instead of overflowing, and reports the honest nonzero.
    gauge_symmetry lone(c2, {{zero(), zero()}}, {{zero(), zero()}}, {{one(), zero()}});
    auto lone_ids = noether_identity_check(lone, Ec);
    CHECK(lone_ids[0].verdict.verdict == zero_verdict::nonzero);

    // Vanishing variational derivatives satisfy every identity.
    lagrangian trivial(c2, zero());
    CHECK(noether_identity_check(bogus, euler_lagrange(trivial))[0].verdict.verdict ==
          zero_verdict::zero);

    CHECK_THROWS_AS(gauge_symmetry(c2, {{one(), zero()}}, {}, {}), std::invalid_argument);
    CHECK_THROWS_AS(gauge_symmetry(c2, {{one()}}, {{zero()}}, {{zero()}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(gauge_symmetry(c2, {{c2.qtt(0), zero()}}, {{zero(), zero()}},
                                   {{zero(), zero()}}),
                    std::invalid_argument);
}

TEST_CASE("candidate classical fields fail where the conserved quantity survives")
{
    // Neither scaling nor the symmetric swap generates the first
    // Runge-Lenz component, yet the component itself is numerically
    // conserved along orbits.
    const auto& kc = kepler_cs();
    auto L = kepler();

    jet_field scaling(kc, 0, {kc.q(0), kc.q(1), kc.q(2)});
    CHECK(classify_symmetry(scaling, L).cls == symmetry_class::not_shown);

    jet_field swap12(kc, 0, {kc.q(1), kc.q(0), zero()});
    CHECK(classify_symmetry(swap12, L).cls == symmetry_class::not_shown);

    auto eq = lagrangian_connection(L);
    integrator_config cfg;
    cfg.t1 = 9.0;
    auto traj = integrate_dynamic(eq, {1.0, 0.0, 0.0}, {0.0, 1.1, 0.0}, cfg);

    auto M12 = symmetry_current(kepler_rotation_12(), L);
    CHECK(conservation_drift(kc, M12, traj).max_rel < 1e-9);

    auto A1 = parse(kc, "(q1*q2_t - q2*q1_t)*q2_t + (q1*q3_t - q3*q1_t)*q3_t"
                        " - q1*(q1^2+q2^2+q3^2)^(-1/2)");
    CHECK(conservation_drift(kc, A1, traj).max_rel < 1e-6);
}

TEST_SUITE_END();

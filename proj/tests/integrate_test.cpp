#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <geomech/integrate.hpp>
#include <geomech/parser.hpp>

using namespace geomech;

TEST_SUITE("integrate")
{

TEST_CASE("free motion integrates exactly")
{
    auto cs = coord_system::cartesian(1);
    second_order_equation eq(cs, {zero()});
    integrator_config cfg;
    cfg.t1 = 1.0;
    auto traj = integrate_dynamic(eq, {0.0}, {1.0}, cfg);

    CHECK(traj.kind == trajectory_kind::dynamic);
    CHECK(traj.columns == std::vector<std::string>{"q1", "q1_t"});
    CHECK(traj.method == "rk4");
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.times.back() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(traj.rows.back()[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(traj.rows.back()[1] == 1.0);
}

TEST_CASE("oscillator tracks the closed form")
{
    auto cs = coord_system::cartesian(1);
    second_order_equation eq(cs, {parse(cs, "-q1")});
    integrator_config cfg;
    cfg.t1 = M_PI;
    auto traj = integrate_dynamic(eq, {1.0}, {0.0}, cfg);

    double tend = traj.times.back();
    CHECK(std::abs(traj.rows.back()[0] - std::cos(tend)) < 1e-10);
    CHECK(std::abs(traj.rows.back()[1] + std::sin(tend)) < 1e-10);
    CHECK(std::abs(traj.rows.back()[0] + 1.0) < 1e-6);
}

TEST_CASE("circular kepler orbit closes after one period")
{
    auto cs = coord_system::cartesian(3);
    std::vector<expr_ptr> xi;
    for (int i = 1; i <= 3; ++i) {
        xi.push_back(parse(cs, "-q" + std::to_string(i) + "*(q1^2+q2^2+q3^2)^(-3/2)"));
    }
    second_order_equation eq(cs, xi);

    integrator_config cfg;
    cfg.t1 = 2.0 * M_PI;
    cfg.h = 2.0 * M_PI / 6283.0; // lands the final step on the period
    cfg.stride = 100;
    auto traj = integrate_dynamic(eq, {1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, cfg);

    CHECK(traj.times.back() == doctest::Approx(2.0 * M_PI).epsilon(1e-12));
    CHECK(std::abs(traj.rows.back()[0] - 1.0) < 1e-6);
    CHECK(std::abs(traj.rows.back()[1]) < 1e-6);
    CHECK(std::abs(traj.rows.back()[2]) < 1e-6);

    auto energy = parse(cs, "1/2*(q1_t^2+q2_t^2+q3_t^2) - (q1^2+q2^2+q3^2)^(-1/2)");
    auto drift = conservation_drift(cs, energy, traj);
    CHECK(drift.initial == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(drift.max_rel < 1e-9);
}

TEST_CASE("hamilton flow of the free particle")
{
    auto phase = coord_system::phase_of(coord_system::cartesian(1));
    // q' = p, p' = 0.
    std::vector<expr_ptr> rhs{phase.sym("p1"), zero()};
    integrator_config cfg;
    auto traj = integrate_flow(phase, rhs, {0.0, 1.0}, cfg, trajectory_kind::hamilton);

    CHECK(traj.kind == trajectory_kind::hamilton);
    CHECK(traj.columns == std::vector<std::string>{"q1", "p1"});
    CHECK(traj.rows.back()[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(traj.rows.back()[1] == 1.0);
}

TEST_CASE("conservation drift of the damped-system energy")
{
    auto cs = coord_system::cartesian(1).with_param("k", 0.5).with_param("m0", 1.0);
    second_order_equation eq(cs, {parse(cs, "-(k/m0)*q1_t")});
    integrator_config cfg;
    cfg.t1 = 5.0;
    auto traj = integrate_dynamic(eq, {1.0}, {1.0}, cfg);

    auto energy = parse(cs, "1/2*m0*exp(k/m0*t)*q1_t*(q1_t + k/m0*q1)");
    auto drift = conservation_drift(cs, energy, traj);
    CHECK(drift.initial == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(drift.max_rel < 1e-6);

    // A constant expression never drifts.
    auto flat = conservation_drift(cs, parse(cs, "m0 + 2"), traj);
    CHECK(flat.max_abs == 0.0);
    CHECK(flat.max_rel == 0.0);
}

TEST_CASE("unit oscillator energy over ten time units")
{
    auto cs = coord_system::cartesian(1);
    second_order_equation eq(cs, {parse(cs, "-q1")});
    integrator_config cfg;
    cfg.t1 = 10.0;
    auto traj = integrate_dynamic(eq, {1.0}, {0.0}, cfg);

    auto drift = conservation_drift(cs, parse(cs, "1/2*(q1^2 + q1_t^2)"), traj);
    CHECK(drift.initial == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(drift.max_rel < 1e-9);
}

TEST_CASE("halving the step divides oscillator energy drift by about sixteen")
{
    // An anharmonic oscillator keeps the truncation-order signal well above
    // the roundoff floor; the harmonic one at these steps drifts by ~1e-15
    // relative, which is pure noise.
    auto cs = coord_system::cartesian(1);
    second_order_equation eq(cs, {parse(cs, "-q1^3")});
    auto energy = parse(cs, "q1^4/4 + q1_t^2/2");

    integrator_config coarse;
    coarse.t1 = 10.0;
    coarse.h = 2e-3;
    integrator_config fine = coarse;
    fine.h = 1e-3;

    auto dc = conservation_drift(cs, energy, integrate_dynamic(eq, {2.0}, {0.0}, coarse));
    auto df = conservation_drift(cs, energy, integrate_dynamic(eq, {2.0}, {0.0}, fine));
    CHECK(df.max_rel > 1e-14); // truncation-dominated, not roundoff
    CHECK(df.max_rel < 1e-9);
    double factor = dc.max_abs / df.max_abs;
    CHECK(factor > 8.0);
    CHECK(factor < 32.0);
}

TEST_CASE("stride thins the output but keeps both endpoints")
{
    auto cs = coord_system::cartesian(1);
    second_order_equation eq(cs, {zero()});
    integrator_config cfg;
    cfg.t1 = 1.0;
    cfg.stride = 7;
    auto traj = integrate_dynamic(eq, {0.0}, {1.0}, cfg);

    CHECK(traj.times.size() == 1 + 142 + 1); // t0, every 7th of 1000 steps, final
    CHECK(traj.times.front() == 0.0);
    CHECK(traj.times.back() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(traj.times[1] == doctest::Approx(7e-3).epsilon(1e-15));
}

TEST_CASE("csv export")
{
    auto cs = coord_system::cartesian(1);
    second_order_equation eq(cs, {zero()});
    integrator_config cfg;
    cfg.t1 = 0.002;
    auto traj = integrate_dynamic(eq, {1.0 / 3.0}, {0.0}, cfg);

    std::ostringstream os;
    write_csv(os, traj);
    auto text = os.str();
    CHECK(text.substr(0, text.find('\n')) == "t,q1,q1_t");
    // %.17g keeps the full double.
    CHECK(text.find("0.33333333333333331") != std::string::npos);
}

TEST_CASE("leaving the domain aborts with the failing time")
{
    auto cs = coord_system::cartesian(1);
    second_order_equation eq(cs, {make_call(func::log, cs.q(0))});
    integrator_config cfg;
    CHECK_THROWS_AS(integrate_dynamic(eq, {-1.0}, {0.0}, cfg), std::domain_error);

    CHECK_THROWS_AS(integrate_dynamic(eq, {1.0}, {0.0}, integrator_config{0, 0, 1e-3, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(integrate_dynamic(eq, {1.0}, {0.0}, integrator_config{0, 1, -1e-3, 1}),
                    std::invalid_argument);
}

} // TEST_SUITE

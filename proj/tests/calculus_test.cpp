#include <doctest.h>

#include <cmath>

#include <geomech/calculus.hpp>
#include <geomech/eval.hpp>
#include <geomech/parser.hpp>
#include <geomech/zerotest.hpp>

using namespace geomech;

namespace
{

const coord_system& cs2()
{
    static const coord_system cs = coord_system::cartesian(2).with_params({"a", "w"});
    return cs;
}

expr_ptr P(const std::string& s)
{
    return parse(cs2(), s);
}

} // namespace

TEST_SUITE("calculus")
{
    TEST_CASE("structural partials")
    {
        CHECK(equal(partial(P("q1^2*q2"), "q1"), P("2*q1*q2")));
        CHECK(equal(partial(P("sin(q1^2)"), "q1"), P("2*q1*cos(q1^2)")));
        CHECK(equal(partial(P("exp(2*q1)"), "q1"), P("2*exp(2*q1)")));
        CHECK(equal(partial(P("log(q1)"), "q1"), P("q1^(-1)")));
        CHECK(equal(partial(P("cos(q1)"), "q1"), P("-sin(q1)")));
        CHECK(equal(partial(P("sqrt(q1^2 + q2^2)"), "q1"), P("q1*(q1^2 + q2^2)^(-1/2)")));
        CHECK(is_zero_literal(partial(P("q2 + t"), "q1")));
        CHECK(is_one_literal(partial(P("q1_t"), "q1_t")));
        CHECK_THROWS_AS((void)partial(P("pi*q1"), "pi"), std::invalid_argument);
    }

    TEST_CASE("partials commute")
    {
        for (const char* s : {"q1^3*q2^2", "sin(q1*q2)", "exp(q1)*log(q2 + 3)", "q1/(q2 + 2)"}) {
            expr_ptr e = P(s);
            CAPTURE(s);
            CHECK(is_zero_literal(partial(partial(e, "q1"), "q2") -
                                  partial(partial(e, "q2"), "q1")));
        }
    }

    TEST_CASE("total derivative advances jets")
    {
        CHECK(equal(total_derivative(cs2(), P("q1")), P("q1_t")));
        CHECK(equal(total_derivative(cs2(), P("q1*q2_t")), P("q1_t*q2_t + q1*q2_tt")));
        CHECK(equal(total_derivative(cs2(), P("t^2")), P("2*t")));
        CHECK(is_zero_literal(total_derivative(cs2(), P("p1"))));
        CHECK(is_zero_literal(total_derivative(cs2(), P("a"))));
        CHECK(equal(total_derivative(cs2(), P("sin(w*t)")), P("w*cos(w*t)")));
    }

    TEST_CASE("jet cap stops the tower")
    {
        const coord_system low = coord_system::cartesian(1).with_jet_cap(1);
        CHECK_THROWS_AS((void)total_derivative(low, parse(low, "q1_t")), std::domain_error);
        CHECK(equal(total_derivative(low, parse(low, "q1^2")), parse(low, "2*q1*q1_t")));
        const coord_system high = coord_system::cartesian(1).with_jet_cap(4);
        CHECK(equal(total_derivative(high, parse(high, "q1_ttt")), parse(high, "q1_tttt")));
    }

    TEST_CASE("total derivative is a derivation")
    {
        const char* fs[] = {"q1_t*sin(q2)", "exp(q1) + t", "q1^2*q2_t - t*q1"};
        for (const char* f : fs)
            for (const char* g : {"q2^2 + 1", "t*q1_t"}) {
                expr_ptr F = P(f), G = P(g);
                CAPTURE(f);
                CAPTURE(g);
                CHECK(is_zero_literal(total_derivative(cs2(), F * G) -
                                      F * total_derivative(cs2(), G) -
                                      G * total_derivative(cs2(), F)));
            }
    }

    TEST_CASE("jet order")
    {
        CHECK(jet_order(cs2(), P("q1_t^2/2")) == 1);
        CHECK(jet_order(cs2(), P("q1_tt + q2")) == 2);
        CHECK(jet_order(cs2(), P("t + a")) == 0);
        CHECK(jet_order(cs2(), P("q1")) == 0);
    }

    TEST_CASE("evaluation binds points, parameters, and pi")
    {
        const coord_system cs = coord_system::cartesian(1).with_param("k", 3.0);
        point at{{"q1", 2.0}, {"t", 0.5}};
        CHECK(eval(cs, parse(cs, "k*q1^2"), at) == doctest::Approx(12.0));
        CHECK(eval(cs, parse(cs, "cos(2*pi)"), at) == doctest::Approx(1.0));
        CHECK(eval(cs, parse(cs, "exp(t)"), at) == doctest::Approx(std::exp(0.5)));
        CHECK_THROWS_AS((void)eval(cs, parse(cs, "q1_t"), at), std::invalid_argument);
        CHECK_THROWS_AS((void)eval(cs, parse(cs, "log(q1 - 3)"), at), std::domain_error);
    }

    TEST_CASE("compiled programs agree with the tree walk")
    {
        const coord_system cs = coord_system::cartesian(2).with_param("k", 0.5);
        const std::vector<std::string> cols{"t", "q1", "q2", "q1_t", "q2_t"};
        const char* samples[] = {
            "q1_t^2/2 + q2_t^2/2 - k*q1*q2",
            "sin(q1)*exp(k*t) + q2^3",
            "(q1^2 + q2^2 + 1)^(-1/2)",
        };
        std::vector<double> scratch;
        for (const char* s : samples) {
            expr_ptr e = parse(cs, s);
            compiled_expr c(cs, e, cols);
            const double vals[] = {0.3, 1.2, -0.7, 0.4, 1.1};
            point at;
            for (std::size_t i = 0; i < cols.size(); ++i)
                at[cols[i]] = vals[i];
            CAPTURE(s);
            CHECK(c(vals, scratch) == doctest::Approx(eval(cs, e, at)).epsilon(1e-12));
        }
    }

    TEST_CASE("zero verdicts")
    {
        CHECK(is_zero(cs2(), P("q1 - q1")).verdict == zero_verdict::zero);
        CHECK(is_zero(cs2(), P("q1/(q1 + 1) + 1/(q1 + 1) - 1")).verdict == zero_verdict::zero);
        CHECK(is_zero(cs2(), P("q1*q2 - 1")).verdict == zero_verdict::nonzero);
        CHECK(is_zero(cs2(), P("log(-q1^2 - 1)")).verdict == zero_verdict::unknown);
        const zero_report r = is_zero(cs2(), P("sin(q1)^2 + cos(q1)^2 - 1"));
        CHECK(r.verdict == zero_verdict::zero);

        // Declared parameter values are honored, not sampled.
        const coord_system pinned = coord_system::cartesian(1).with_param("k", 2.0);
        CHECK(is_zero(pinned, parse(pinned, "k - 2")).verdict == zero_verdict::zero);
        CHECK(is_zero(pinned, parse(pinned, "k - 1")).verdict == zero_verdict::nonzero);
    }
}

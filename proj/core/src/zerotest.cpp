// Part of geomech. SPDX-License-Identifier: MIT

#include <geomech/zerotest.hpp>

#include <cmath>
#include <random>
#include <set>
#include <string>

#include <geomech/eval.hpp>

namespace geomech
{

zero_report is_zero(const coord_system& cs, const expr_ptr& e, std::uint64_t seed)
{
    if (is_zero_literal(e))
        return {zero_verdict::zero, 0, 0.0};

    // Sorted for a reproducible draw order.
    const std::set<std::string> syms = free_symbols(e);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> mag(0.1, 2.0);
    std::uniform_int_distribution<int> flip(0, 1);

    zero_report rep;
    rep.verdict = zero_verdict::unknown;
    for (int attempt = 0; attempt < 10 * zero_samples && rep.samples < zero_samples; ++attempt) {
        point at;
        for (const auto& s : syms) {
            if (s == "pi")
                continue;
            if (cs.has_param_value(s)) {
                at[s] = cs.param_value(s);
                continue;
            }
            const double m = mag(rng);
            at[s] = flip(rng) ? m : -m;
        }
        double v;
        try {
            v = eval(cs, e, at);
        } catch (const std::domain_error&) {
            continue; // outside the domain; redraw
        }
        ++rep.samples;
        rep.max_abs = std::max(rep.max_abs, std::fabs(v));
    }

    if (rep.samples == 0)
        return rep;
    rep.verdict = rep.max_abs > zero_tolerance ? zero_verdict::nonzero : zero_verdict::zero;
    return rep;
}

const char* to_string(zero_verdict v)
{
    switch (v) {
        case zero_verdict::zero:
            return "zero";
        case zero_verdict::nonzero:
            return "nonzero";
        case zero_verdict::unknown:
            return "unknown";
    }
    return "?";
}

} // namespace geomech

// Part of geomech. SPDX-License-Identifier: MIT
//
// Decides whether an expression vanishes identically. Canonicalization alone
// settles the polynomial-rational fragment; what survives is probed at random
// points. Verdicts:
//
//   zero     canonical zero, or every sampled value stayed below tolerance
//   nonzero  some sample exceeded tolerance (a witness point exists)
//   unknown  no sample landed in the expression's domain
//
// Sampling is deterministic for a given seed. Symbols draw from
// [-2,-0.1] u [0.1,2] (avoiding the thin shell around zero where distinct
// expressions collapse together), declared parameter values are honored, and
// pi evaluates to pi. Points that fault (log of a negative, 0^-1, ...) are
// redrawn, up to ten times the requested sample count.

#ifndef GEOMECH_ZEROTEST_HPP
#define GEOMECH_ZEROTEST_HPP

#include <cstdint>

#include <geomech/coords.hpp>
#include <geomech/expr.hpp>

namespace geomech
{

enum class zero_verdict : std::uint8_t { zero, nonzero, unknown };

struct zero_report {
    zero_verdict verdict = zero_verdict::unknown;
    int samples = 0;     // valid points actually evaluated
    double max_abs = 0;  // largest |value| over those points
};

inline constexpr double zero_tolerance = 1e-9;
inline constexpr int zero_samples = 16;

zero_report is_zero(const coord_system& cs, const expr_ptr& e, std::uint64_t seed = 0);

inline bool definitely_zero(const coord_system& cs, const expr_ptr& e, std::uint64_t seed = 0)
{
    return is_zero(cs, e, seed).verdict == zero_verdict::zero;
}

const char* to_string(zero_verdict v);

} // namespace geomech

#endif

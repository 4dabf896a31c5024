// Part of geomech, a symbolic-numeric toolkit for time-dependent mechanics.
// SPDX-License-Identifier: MIT

#ifndef GEOMECH_EXPR_HPP
#define GEOMECH_EXPR_HPP

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace geomech
{

// Exact rational scalar. All expression coefficients and exponents are
// rationals; floating point enters only at evaluation time.
using rat = boost::multiprecision::cpp_rational;
using bigint = boost::multiprecision::cpp_int;

class expr;
using expr_ptr = std::shared_ptr<const expr>;

enum class kind : std::uint8_t { num, sym, call, pow, mul, add };
enum class func : std::uint8_t { exp, log, sin, cos };

// Immutable expression node. Trees are built exclusively through the smart
// constructors below, which maintain a canonical form; two expressions are
// semantically handled as equal iff they are structurally equal.
//
// Canonical-form invariants:
//  * num: any rational.
//  * sym: a name.
//  * call: for exp the argument has unit rational content (content is pulled
//    out into an enclosing power, so exp(2x) is stored as exp(x)^2 and
//    exp(u)·exp(-u) collapses to 1); for sin/cos a negative-content argument
//    is sign-normalized (sin(-u) = -sin(u), cos(-u) = cos(u)); exp(0), log(1),
//    sin(0), cos(0) are folded.
//  * pow: rational exponent not in {0,1}; perfect rational powers of numeric
//    bases are folded; (b^r)^n combines for integer n, and exp-based powers
//    combine unconditionally (positive base); non-negative integer powers of
//    sums are expanded; integer powers of products distribute; integer powers
//    of cos rewrite as cos^e = (1-sin^2)^floor(e/2) * cos^(e mod 2), which
//    makes sin^2+cos^2-1 canonically zero.
//  * mul: rational coefficient times >=1 sorted factors (sym/call/pow), no two
//    sharing a base; bare sum factors are distributed, so a canonical product
//    is always a monomial over atoms.
//  * add: >=2 sorted terms with distinct monomial parts, at most one numeric
//    term, no zero coefficients. Powers of a common sum base whose exponents
//    differ by integers are regrouped onto the minimal exponent (the integer
//    excess expands into a polynomial cofactor); this gives rational functions
//    a common denominator and cancels mixed-radical sums such as
//    S·S^(-3/2) - S^(-1/2) exactly.
//
// simplify() of a canonical tree is the identity; the constructors *are* the
// simplifier.
class expr
{
public:
    kind k;
    func fn{};                   // call only
    rat coeff;                   // num value / mul coefficient
    rat expo;                    // pow exponent
    std::string name;            // sym only
    std::vector<expr_ptr> kids;  // call: [arg]; pow: [base]; mul/add: operands
    std::size_t hash = 0;

    expr() : k(kind::num) {}
};

// Smart constructors (the only way to build canonical trees).
expr_ptr make_num(const rat& v);
expr_ptr make_num(long long n);
expr_ptr make_num(long long p, long long q);
expr_ptr make_sym(std::string name);
expr_ptr make_add(std::vector<expr_ptr> terms);
expr_ptr make_mul(std::vector<expr_ptr> factors);
expr_ptr make_pow(const expr_ptr& base, const rat& exponent);
expr_ptr make_call(func f, const expr_ptr& arg);

// Convenience arithmetic on expression handles.
expr_ptr operator+(const expr_ptr& a, const expr_ptr& b);
expr_ptr operator-(const expr_ptr& a, const expr_ptr& b);
expr_ptr operator*(const expr_ptr& a, const expr_ptr& b);
expr_ptr operator/(const expr_ptr& a, const expr_ptr& b);
expr_ptr operator-(const expr_ptr& a);

// Deterministic total order on canonical trees; equal(a,b) iff cmp == 0.
int cmp(const expr& a, const expr& b);
bool equal(const expr_ptr& a, const expr_ptr& b);
bool is_zero_literal(const expr_ptr& e);
bool is_one_literal(const expr_ptr& e);

// True when e is a rational constant; value returned through out.
bool as_rational(const expr_ptr& e, rat& out);

// Canonical printer. parse(print(e)) reproduces e node for node.
std::string to_string(const expr_ptr& e);

// Simultaneous substitution of symbols, then renormalization.
expr_ptr substitute(const expr_ptr& e,
                    const std::unordered_map<std::string, expr_ptr>& bindings);

// Free symbol names, sorted.
std::set<std::string> free_symbols(const expr_ptr& e);

const expr_ptr& zero();
const expr_ptr& one();

} // namespace geomech

#endif

// Part of geomech. SPDX-License-Identifier: MIT
//
// Numeric evaluation. eval() walks the tree, binds declared parameter values
// and pi automatically, and throws on unbound symbols or domain faults
// (log of a non-positive value, fractional power of a negative base, division
// by zero). compiled_expr flattens an expression once into a postfix program
// over a caller-chosen column layout, for tight integration loops.

#ifndef GEOMECH_EVAL_HPP
#define GEOMECH_EVAL_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <geomech/coords.hpp>
#include <geomech/expr.hpp>

namespace geomech
{

using point = std::map<std::string, double>;

double eval(const coord_system& cs, const expr_ptr& e, const point& at);

class compiled_expr
{
public:
    compiled_expr() = default;
    compiled_expr(const coord_system& cs, const expr_ptr& e,
                  const std::vector<std::string>& columns);

    // cols must hold one value per column name passed at build time. scratch
    // is grown as needed and may be shared across calls.
    double operator()(const double* cols, std::vector<double>& scratch) const;

    std::size_t stack_need() const { return need_; }

private:
    enum class opc : std::uint8_t { push, load, addn, muln, powc, fexp, flog, fsin, fcos };

    struct ins {
        opc op;
        double a = 0;
        std::uint32_t n = 0;
    };

    std::vector<ins> prog_;
    std::size_t need_ = 0;
};

} // namespace geomech

#endif

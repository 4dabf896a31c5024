// Part of geomech. SPDX-License-Identifier: MIT
//
// Expression text over a coordinate system. Grammar, loosest binding first:
//
//   sum     := product (('+' | '-') product)*
//   product := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := atom ('^' unary)?        exponent must fold to a rational
//   atom    := number | name | name '(' sum ')' | '(' sum ')'
//
// Numbers are decimal literals read exactly (0.5 is 1/2). Function names are
// exp, log, sin, cos, and sqrt (sugar for ^(1/2)); every other identifier must
// be registered in the coordinate system. Printing and parsing are mutually
// inverse on canonical expressions.

#ifndef GEOMECH_PARSER_HPP
#define GEOMECH_PARSER_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

#include <geomech/coords.hpp>
#include <geomech/expr.hpp>

namespace geomech
{

class parse_error : public std::runtime_error
{
public:
    parse_error(const std::string& what, std::size_t position)
        : std::runtime_error(what + " at position " + std::to_string(position)),
          position(position)
    {
    }

    std::size_t position;
};

expr_ptr parse(const coord_system& cs, const std::string& text);

} // namespace geomech

#endif

// Part of geomech. SPDX-License-Identifier: MIT
//
// Differentiation on jet coordinates. partial() is the structural derivative
// with respect to one named symbol, every other symbol held fixed.
// total_derivative() is the operator of total time differentiation,
//
//   d_t = d/dt + q^i_t d/dq^i + q^i_tt d/dq^i_t + ...,
//
// which promotes each jet symbol to the next order; momenta, parameters and
// pi are constants along it. Differentiating a top-order jet whose derivative
// actually occurs raises an error instead of inventing symbols past the cap.

#ifndef GEOMECH_CALCULUS_HPP
#define GEOMECH_CALCULUS_HPP

#include <string>

#include <geomech/coords.hpp>
#include <geomech/expr.hpp>

namespace geomech
{

expr_ptr partial(const expr_ptr& e, const std::string& name);
expr_ptr total_derivative(const coord_system& cs, const expr_ptr& e);

// Highest jet order among the symbols of e; 0 when only fibres (or no jet
// coordinates at all) appear.
unsigned jet_order(const coord_system& cs, const expr_ptr& e);

} // namespace geomech

#endif

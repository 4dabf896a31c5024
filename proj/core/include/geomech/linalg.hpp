// Part of geomech. SPDX-License-Identifier: MIT
//
// Dense symbolic matrices at desk scale. Determinants expand along the first
// row, inverses go through the adjugate, so entries stay closed-form; the
// cost is factorial in the dimension, which is fine for the handful of
// degrees of freedom these systems have.

#ifndef GEOMECH_LINALG_HPP
#define GEOMECH_LINALG_HPP

#include <vector>

#include <geomech/expr.hpp>

namespace geomech
{

using expr_matrix = std::vector<std::vector<expr_ptr>>;

expr_matrix identity_matrix(std::size_t n);

expr_ptr determinant(const expr_matrix& a);
expr_matrix adjugate(const expr_matrix& a);

// adjugate / determinant. Throws domain_error when the determinant
// canonicalizes to zero; a symbolically nonzero determinant passes even if
// it vanishes somewhere.
expr_matrix inverse(const expr_matrix& a);

std::vector<expr_ptr> matvec(const expr_matrix& a, const std::vector<expr_ptr>& v);

} // namespace geomech

#endif

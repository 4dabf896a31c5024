// Part of geomech. SPDX-License-Identifier: MIT

#include <geomech/linalg.hpp>

#include <stdexcept>

namespace geomech
{

namespace
{

void require_square(const expr_matrix& a)
{
    for (const auto& row : a) {
        if (row.size() != a.size()) {
            throw std::invalid_argument("matrix is not square");
        }
    }
}

expr_matrix minor_of(const expr_matrix& a, std::size_t row, std::size_t col)
{
    expr_matrix m;
    m.reserve(a.size() - 1);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (i == row) {
            continue;
        }
        std::vector<expr_ptr> r;
        r.reserve(a.size() - 1);
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (j != col) {
                r.push_back(a[i][j]);
            }
        }
        m.push_back(std::move(r));
    }
    return m;
}

expr_ptr det_unchecked(const expr_matrix& a)
{
    const std::size_t n = a.size();
    if (n == 0) {
        return one();
    }
    if (n == 1) {
        return a[0][0];
    }
    std::vector<expr_ptr> terms;
    terms.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        expr_ptr t = a[0][j] * det_unchecked(minor_of(a, 0, j));
        terms.push_back(j % 2 == 0 ? t : -t);
    }
    return make_add(std::move(terms));
}

} // namespace

expr_matrix identity_matrix(std::size_t n)
{
    expr_matrix id(n, std::vector<expr_ptr>(n, zero()));
    for (std::size_t i = 0; i < n; ++i) {
        id[i][i] = one();
    }
    return id;
}

expr_ptr determinant(const expr_matrix& a)
{
    require_square(a);
    return det_unchecked(a);
}

expr_matrix adjugate(const expr_matrix& a)
{
    require_square(a);
    const std::size_t n = a.size();
    if (n == 0) {
        return {};
    }
    if (n == 1) {
        return {{one()}};
    }
    expr_matrix adj(n, std::vector<expr_ptr>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            expr_ptr c = det_unchecked(minor_of(a, i, j));
            adj[j][i] = (i + j) % 2 == 0 ? c : -c;
        }
    }
    return adj;
}

expr_matrix inverse(const expr_matrix& a)
{
    expr_ptr det = determinant(a);
    if (is_zero_literal(det)) {
        throw std::domain_error("matrix determinant vanishes identically");
    }
    expr_ptr det_inv = make_pow(det, rat(-1));
    expr_matrix inv = adjugate(a);
    for (auto& row : inv) {
        for (auto& e : row) {
            e = e * det_inv;
        }
    }
    return inv;
}

std::vector<expr_ptr> matvec(const expr_matrix& a, const std::vector<expr_ptr>& v)
{
    std::vector<expr_ptr> out;
    out.reserve(a.size());
    for (const auto& row : a) {
        if (row.size() != v.size()) {
            throw std::invalid_argument("matrix and vector dimensions disagree");
        }
        std::vector<expr_ptr> terms;
        terms.reserve(v.size());
        for (std::size_t j = 0; j < v.size(); ++j) {
            terms.push_back(row[j] * v[j]);
        }
        out.push_back(make_add(std::move(terms)));
    }
    return out;
}

} // namespace geomech

// Part of geomech. SPDX-License-Identifier: MIT

#include <geomech/calculus.hpp>

#include <stdexcept>

namespace geomech
{

expr_ptr partial(const expr_ptr& e, const std::string& name)
{
    if (name == "pi")
        throw std::invalid_argument("cannot differentiate with respect to pi");
    switch (e->k) {
        case kind::num:
            return zero();
        case kind::sym:
            return e->name == name ? one() : zero();
        case kind::call: {
            expr_ptr inner = partial(e->kids[0], name);
            if (is_zero_literal(inner))
                return zero();
            expr_ptr outer;
            switch (e->fn) {
                case func::exp:
                    outer = e;
                    break;
                case func::log:
                    outer = make_pow(e->kids[0], rat(-1));
                    break;
                case func::sin:
                    outer = make_call(func::cos, e->kids[0]);
                    break;
                case func::cos:
                    outer = -make_call(func::sin, e->kids[0]);
                    break;
            }
            return make_mul({outer, inner});
        }
        case kind::pow: {
            expr_ptr inner = partial(e->kids[0], name);
            if (is_zero_literal(inner))
                return zero();
            return make_mul({make_num(e->expo), make_pow(e->kids[0], e->expo - 1), inner});
        }
        case kind::mul: {
            std::vector<expr_ptr> terms;
            for (std::size_t i = 0; i < e->kids.size(); ++i) {
                expr_ptr di = partial(e->kids[i], name);
                if (is_zero_literal(di))
                    continue;
                std::vector<expr_ptr> fs;
                fs.reserve(e->kids.size() + 1);
                fs.push_back(make_num(e->coeff));
                fs.push_back(di);
                for (std::size_t j = 0; j < e->kids.size(); ++j)
                    if (j != i)
                        fs.push_back(e->kids[j]);
                terms.push_back(make_mul(std::move(fs)));
            }
            return make_add(std::move(terms));
        }
        case kind::add: {
            std::vector<expr_ptr> terms;
            terms.reserve(e->kids.size());
            for (const auto& t : e->kids)
                terms.push_back(partial(t, name));
            return make_add(std::move(terms));
        }
    }
    return zero();
}

expr_ptr total_derivative(const coord_system& cs, const expr_ptr& e)
{
    std::vector<expr_ptr> terms{partial(e, "t")};
    for (const auto& s : free_symbols(e)) {
        const symbol_info* info = cs.classify(s);
        if (!info)
            throw std::invalid_argument("unknown symbol '" + s + "' in total derivative");
        if (info->role != symbol_role::jet)
            continue;
        expr_ptr d = partial(e, s);
        if (is_zero_literal(d))
            continue;
        if (info->order + 1 > cs.jet_cap())
            throw std::domain_error("total derivative needs jet order " +
                                    std::to_string(info->order + 1) + " of '" +
                                    cs.fibre(info->index) + "' beyond the cap of " +
                                    std::to_string(cs.jet_cap()));
        terms.push_back(make_mul({make_sym(cs.jet(info->index, info->order + 1)), d}));
    }
    return make_add(std::move(terms));
}

unsigned jet_order(const coord_system& cs, const expr_ptr& e)
{
    unsigned best = 0;
    for (const auto& s : free_symbols(e)) {
        const symbol_info* info = cs.classify(s);
        if (info && info->role == symbol_role::jet && info->order > best)
            best = info->order;
    }
    return best;
}

} // namespace geomech

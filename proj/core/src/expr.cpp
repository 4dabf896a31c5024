// Part of geomech. SPDX-License-Identifier: MIT

#include <geomech/expr.hpp>

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include <boost/functional/hash.hpp>

namespace geomech
{

namespace
{

using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

bool is_integer(const rat& r)
{
    return denominator(r) == 1;
}

long long to_ll(const bigint& n)
{
    return n.convert_to<long long>();
}

std::size_t hash_rat(const rat& r)
{
    std::size_t seed = 0;
    boost::hash_combine(seed, boost::multiprecision::hash_value(numerator(r)));
    boost::hash_combine(seed, boost::multiprecision::hash_value(denominator(r)));
    return seed;
}

expr_ptr finalize(expr&& node)
{
    std::size_t seed = static_cast<std::size_t>(node.k) * 0x9e3779b97f4a7c15ULL;
    boost::hash_combine(seed, static_cast<std::size_t>(node.fn));
    boost::hash_combine(seed, hash_rat(node.coeff));
    boost::hash_combine(seed, hash_rat(node.expo));
    boost::hash_combine(seed, std::hash<std::string>{}(node.name));
    for (const auto& kid : node.kids)
        boost::hash_combine(seed, kid->hash);
    node.hash = seed;
    return std::make_shared<const expr>(std::move(node));
}

expr_ptr num_node(const rat& v)
{
    expr n;
    n.k = kind::num;
    n.coeff = v;
    return finalize(std::move(n));
}

// Raw node builders; callers are responsible for the canonical invariants.
expr_ptr pow_node(const expr_ptr& base, const rat& e)
{
    expr n;
    n.k = kind::pow;
    n.expo = e;
    n.kids = {base};
    return finalize(std::move(n));
}

expr_ptr call_node(func f, const expr_ptr& arg)
{
    expr n;
    n.k = kind::call;
    n.fn = f;
    n.kids = {arg};
    return finalize(std::move(n));
}

expr_ptr mul_node(const rat& c, std::vector<expr_ptr> kids)
{
    expr n;
    n.k = kind::mul;
    n.coeff = c;
    n.kids = std::move(kids);
    return finalize(std::move(n));
}

expr_ptr add_node(std::vector<expr_ptr> kids)
{
    expr n;
    n.k = kind::add;
    n.kids = std::move(kids);
    return finalize(std::move(n));
}

int cmp_rat(const rat& a, const rat& b)
{
    if (a < b)
        return -1;
    return a == b ? 0 : 1;
}

// Monomial view of an additive term: rational coefficient plus the sorted
// factor list that acts as the collection key.
rat term_coeff(const expr_ptr& t)
{
    if (t->k == kind::num)
        return t->coeff;
    if (t->k == kind::mul)
        return t->coeff;
    return rat(1);
}

std::vector<expr_ptr> term_factors(const expr_ptr& t)
{
    if (t->k == kind::num)
        return {};
    if (t->k == kind::mul)
        return t->kids;
    return {t};
}

int cmp_factor_lists(const std::vector<expr_ptr>& a, const std::vector<expr_ptr>& b)
{
    const std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i)
        if (int c = cmp(*a[i], *b[i]); c != 0)
            return c;
    if (a.size() != b.size())
        return a.size() < b.size() ? -1 : 1;
    return 0;
}

rat rat_gcd(const rat& a, const rat& b)
{
    using boost::multiprecision::gcd;
    using boost::multiprecision::lcm;
    bigint n = gcd(boost::multiprecision::abs(numerator(a)),
                   boost::multiprecision::abs(numerator(b)));
    bigint d = lcm(denominator(a), denominator(b));
    return rat(n, d);
}

// Rational content of an expression: the coefficient a product carries, or the
// signed gcd of a sum's coefficients (sign of the leading term). Atoms have
// content 1. Used to normalize exp/sin/cos arguments and sum-base powers.
rat content(const expr_ptr& e)
{
    switch (e->k) {
        case kind::num:
            return e->coeff;
        case kind::mul:
            return e->coeff;
        case kind::add: {
            rat g(0);
            for (const auto& t : e->kids)
                g = rat_gcd(g, term_coeff(t));
            if (term_coeff(e->kids.front()) < 0)
                g = -g;
            return g;
        }
        default:
            return rat(1);
    }
}

bool is_exp_atom(const expr_ptr& e)
{
    return e->k == kind::call && e->fn == func::exp;
}

// Exact integer k-th root; returns false when n is not a perfect power.
bool iroot(const bigint& n, unsigned k, bigint& out)
{
    if (n < 0)
        return false;
    if (n == 0 || n == 1 || k == 1) {
        out = n;
        return true;
    }
    bigint lo = 0, hi = n;
    while (lo <= hi) {
        bigint mid = (lo + hi) / 2;
        bigint p = boost::multiprecision::pow(mid, k);
        if (p == n) {
            out = mid;
            return true;
        }
        if (p < n)
            lo = mid + 1;
        else
            hi = mid - 1;
    }
    return false;
}

bigint ipow(const bigint& b, const bigint& e)
{
    return boost::multiprecision::pow(b, e.convert_to<unsigned>());
}

// c^e for positive rational c and fractional e, exact or bust.
bool exact_rat_pow(const rat& c, const rat& e, rat& out)
{
    const unsigned q = denominator(e).convert_to<unsigned>();
    bigint rn, rd;
    if (!iroot(numerator(c), q, rn) || !iroot(denominator(c), q, rd))
        return false;
    bigint p = numerator(e);
    const bool invert = p < 0;
    if (invert)
        p = -p;
    bigint on = ipow(rn, p), od = ipow(rd, p);
    out = invert ? rat(od, on) : rat(on, od);
    return true;
}

expr_ptr pow_of_num(const rat& c, const rat& e)
{
    if (is_integer(e)) {
        if (c == 0) {
            if (e < 0)
                throw std::domain_error("division by zero in 0^negative");
            return num_node(rat(0));
        }
        bigint p = numerator(e);
        const bool invert = p < 0;
        if (invert)
            p = -p;
        bigint on = ipow(numerator(c), p), od = ipow(denominator(c), p);
        return invert ? num_node(rat(od, on)) : num_node(rat(on, od));
    }
    if (c == 0)
        return e > 0 ? num_node(rat(0)) : throw std::domain_error("division by zero in 0^negative");
    if (c > 0) {
        rat folded;
        if (exact_rat_pow(c, e, folded))
            return num_node(folded);
    }
    return pow_node(num_node(c), e);
}

expr_ptr expand_pow_add(const expr_ptr& sum, long long n)
{
    // Term-by-term products only; handing make_mul the whole sum twice would
    // just collect it back into the power being expanded.
    std::vector<expr_ptr> acc{one()};
    for (long long i = 0; i < n; ++i) {
        std::vector<expr_ptr> next;
        next.reserve(acc.size() * sum->kids.size());
        for (const auto& a : acc)
            for (const auto& s : sum->kids)
                next.push_back(make_mul({a, s}));
        acc = std::move(next);
    }
    return make_add(std::move(acc));
}

} // namespace

int cmp(const expr& a, const expr& b)
{
    if (a.k != b.k)
        return static_cast<int>(a.k) < static_cast<int>(b.k) ? -1 : 1;
    switch (a.k) {
        case kind::num:
            return cmp_rat(a.coeff, b.coeff);
        case kind::sym:
            return a.name.compare(b.name) < 0 ? -1 : (a.name == b.name ? 0 : 1);
        case kind::call:
            if (a.fn != b.fn)
                return static_cast<int>(a.fn) < static_cast<int>(b.fn) ? -1 : 1;
            return cmp(*a.kids[0], *b.kids[0]);
        case kind::pow:
            if (int c = cmp(*a.kids[0], *b.kids[0]); c != 0)
                return c;
            return cmp_rat(a.expo, b.expo);
        case kind::mul:
            if (int c = cmp_factor_lists(a.kids, b.kids); c != 0)
                return c;
            return cmp_rat(a.coeff, b.coeff);
        case kind::add:
            return cmp_factor_lists(a.kids, b.kids);
    }
    return 0;
}

bool equal(const expr_ptr& a, const expr_ptr& b)
{
    if (a.get() == b.get())
        return true;
    if (a->hash != b->hash)
        return false;
    return cmp(*a, *b) == 0;
}

const expr_ptr& zero()
{
    static const expr_ptr z = num_node(rat(0));
    return z;
}

const expr_ptr& one()
{
    static const expr_ptr o = num_node(rat(1));
    return o;
}

bool is_zero_literal(const expr_ptr& e)
{
    return e->k == kind::num && e->coeff == 0;
}

bool is_one_literal(const expr_ptr& e)
{
    return e->k == kind::num && e->coeff == 1;
}

bool as_rational(const expr_ptr& e, rat& out)
{
    if (e->k != kind::num)
        return false;
    out = e->coeff;
    return true;
}

expr_ptr make_num(const rat& v)
{
    return num_node(v);
}

expr_ptr make_num(long long n)
{
    return num_node(rat(n));
}

expr_ptr make_num(long long p, long long q)
{
    return num_node(rat(p, q));
}

expr_ptr make_sym(std::string name)
{
    expr n;
    n.k = kind::sym;
    n.name = std::move(name);
    return finalize(std::move(n));
}

expr_ptr make_pow(const expr_ptr& base, const rat& e)
{
    if (e == 0)
        return one();
    if (e == 1)
        return base;

    switch (base->k) {
        case kind::num:
            return pow_of_num(base->coeff, e);

        case kind::pow: {
            // (b^r)^n combines for integer n; exp-based powers combine always
            // (the base is positive). Other fractional nestings stay opaque:
            // (x^2)^(1/2) is |x|, not x.
            if (is_integer(e) || is_exp_atom(base->kids[0]))
                return make_pow(base->kids[0], base->expo * e);
            return pow_node(base, e);
        }

        case kind::call: {
            if (base->fn == func::cos && is_integer(e)) {
                // cos^e = (1 - sin^2)^m * cos^r with e = 2m + r, r in {0,1}.
                // Keeps cos powers linear so Pythagorean sums cancel exactly.
                const long long n = to_ll(numerator(e));
                const long long m = (n >= 0) ? n / 2 : (n - 1) / 2;
                const long long r = n - 2 * m;
                expr_ptr s2 = make_pow(make_call(func::sin, base->kids[0]), rat(2));
                expr_ptr pyth = make_add({one(), make_mul({make_num(-1), s2})});
                std::vector<expr_ptr> fs{make_pow(pyth, rat(m))};
                if (r != 0)
                    fs.push_back(base);
                return make_mul(std::move(fs));
            }
            return pow_node(base, e);
        }

        case kind::sym:
            return pow_node(base, e);

        case kind::mul: {
            if (is_integer(e)) {
                std::vector<expr_ptr> fs;
                fs.reserve(base->kids.size() + 1);
                fs.push_back(pow_of_num(base->coeff, e));
                for (const auto& kid : base->kids)
                    fs.push_back(make_pow(kid, e));
                return make_mul(std::move(fs));
            }
            // Fractional power of a product: pull out exp factors (positive)
            // and an exactly-representable positive rational coefficient; the
            // remainder stays a single radical atom.
            std::vector<expr_ptr> outside, inside;
            for (const auto& kid : base->kids) {
                const expr_ptr& kb = (kid->k == kind::pow) ? kid->kids[0] : kid;
                if (is_exp_atom(kb))
                    outside.push_back(make_pow(kid, e));
                else
                    inside.push_back(kid);
            }
            rat cpow;
            const bool cext = base->coeff > 0 && exact_rat_pow(base->coeff, e, cpow);
            if (outside.empty() && cext && cpow == 1 && base->coeff == 1) {
                // nothing to extract
            } else if (!outside.empty() || cext) {
                std::vector<expr_ptr> in2;
                if (!cext)
                    in2.push_back(num_node(base->coeff));
                for (auto& kid : inside)
                    in2.push_back(std::move(kid));
                std::vector<expr_ptr> fs;
                if (cext)
                    fs.push_back(num_node(cpow));
                for (auto& o : outside)
                    fs.push_back(std::move(o));
                if (!in2.empty()) {
                    expr_ptr inner = make_mul(std::move(in2));
                    // inner is now free of exp factors, so this recursion hits
                    // a different branch (or bottoms out at an atom).
                    if (inner->k == kind::mul && inner->coeff == 1)
                        fs.push_back(pow_node(inner, e));
                    else
                        fs.push_back(make_pow(inner, e));
                }
                return make_mul(std::move(fs));
            }
            return pow_node(base, e);
        }

        case kind::add: {
            if (is_integer(e) && e > 0) {
                const long long n = to_ll(numerator(e));
                // Expansion keeps the polynomial fragment exactly decidable;
                // absurdly large powers stay opaque (consistently, by n alone).
                if (n <= 32)
                    return expand_pow_add(base, n);
                return pow_node(base, e);
            }
            // Negative or fractional power of a sum: normalize the content so
            // equal bases collide structurally, e.g. (2x+2)^-1 -> (x+1)^-1 / 2.
            rat c = content(base);
            bool extract = false;
            rat cpow;
            if (c != 1 && c != 0) {
                if (is_integer(e)) {
                    expr_ptr p = pow_of_num(c, e);
                    cpow = p->coeff;
                    extract = true;
                } else if (c > 0) {
                    extract = exact_rat_pow(c, e, cpow);
                }
            }
            if (extract) {
                expr_ptr scaled = make_mul({num_node(rat(1) / c), base});
                return make_mul({num_node(cpow), make_pow(scaled, e)});
            }
            return pow_node(base, e);
        }
    }
    return pow_node(base, e);
}

expr_ptr make_call(func f, const expr_ptr& arg)
{
    switch (f) {
        case func::exp: {
            if (is_zero_literal(arg))
                return one();
            const rat c = content(arg);
            if (c == 1)
                return call_node(func::exp, arg);
            expr_ptr unit = make_mul({num_node(rat(1) / c), arg});
            return make_pow(call_node(func::exp, unit), c);
        }
        case func::log:
            if (is_one_literal(arg))
                return zero();
            return call_node(func::log, arg);
        case func::sin: {
            if (is_zero_literal(arg))
                return zero();
            if (content(arg) < 0)
                return make_mul({num_node(rat(-1)),
                                 call_node(func::sin, make_mul({num_node(rat(-1)), arg}))});
            return call_node(func::sin, arg);
        }
        case func::cos: {
            if (is_zero_literal(arg))
                return one();
            if (content(arg) < 0)
                return call_node(func::cos, make_mul({num_node(rat(-1)), arg}));
            return call_node(func::cos, arg);
        }
    }
    return call_node(f, arg);
}

expr_ptr make_mul(std::vector<expr_ptr> factors)
{
    rat coeff(1);
    std::vector<expr_ptr> atoms;
    std::vector<expr_ptr> sums;

    std::vector<expr_ptr> work(std::move(factors));
    while (!work.empty()) {
        expr_ptr e = std::move(work.back());
        work.pop_back();
        switch (e->k) {
            case kind::num:
                if (e->coeff == 0)
                    return zero();
                coeff *= e->coeff;
                break;
            case kind::mul:
                coeff *= e->coeff;
                for (const auto& kid : e->kids)
                    work.push_back(kid);
                break;
            default:
                // Sums enter exponent collection too (at power one), so that
                // S * S^-1 cancels before distribution can split it up.
                atoms.push_back(std::move(e));
                break;
        }
    }

    // Combine exponents over structurally equal bases, then re-dispatch each
    // pair through make_pow (which may fold, rewrite cos powers, or expand).
    std::vector<std::pair<expr_ptr, rat>> bases;
    for (const auto& a : atoms) {
        expr_ptr b = (a->k == kind::pow) ? a->kids[0] : a;
        rat e = (a->k == kind::pow) ? a->expo : rat(1);
        bool found = false;
        for (auto& [eb, ee] : bases) {
            if (equal(eb, b)) {
                ee += e;
                found = true;
                break;
            }
        }
        if (!found)
            bases.emplace_back(std::move(b), std::move(e));
    }

    // exp(u)^a * exp(v)^b = exp(a u + b v): fold all exponential factors into
    // one before re-dispatch, so products over distinct arguments still meet.
    std::size_t n_exp = 0;
    for (const auto& [b, e] : bases)
        if (is_exp_atom(b))
            ++n_exp;
    expr_ptr merged_exp;
    if (n_exp >= 2) {
        std::vector<expr_ptr> arg_terms;
        std::vector<std::pair<expr_ptr, rat>> rest;
        for (auto& [b, e] : bases) {
            if (is_exp_atom(b))
                arg_terms.push_back(make_mul({num_node(e), b->kids[0]}));
            else
                rest.emplace_back(std::move(b), std::move(e));
        }
        bases = std::move(rest);
        merged_exp = make_call(func::exp, make_add(std::move(arg_terms)));
    }

    std::vector<expr_ptr> flat;
    bool restart = false;
    for (const auto& [b, e] : bases) {
        if (e == 0)
            continue;
        if (b->k == kind::add && e == 1) {
            sums.push_back(b);
            continue;
        }
        expr_ptr p = make_pow(b, e);
        switch (p->k) {
            case kind::num:
                if (p->coeff == 0)
                    return zero();
                coeff *= p->coeff;
                break;
            case kind::mul:
            case kind::add:
                restart = true;
                flat.push_back(std::move(p));
                break;
            default:
                flat.push_back(std::move(p));
                break;
        }
    }
    if (merged_exp) {
        // make_call yields 1, exp(v), or exp(v)^c; never a product or sum.
        if (merged_exp->k == kind::num)
            coeff *= merged_exp->coeff;
        else
            flat.push_back(std::move(merged_exp));
    }
    if (restart) {
        // A collected power reshaped (e.g. cos^2 -> 1 - sin^2); rerun with the
        // flattened pieces. Each such rewrite strictly lowers cos exponents or
        // trades an integer sum power for its expansion, so this terminates.
        std::vector<expr_ptr> again;
        again.push_back(num_node(coeff));
        for (auto& p : flat)
            again.push_back(std::move(p));
        for (auto& s : sums)
            again.push_back(std::move(s));
        return make_mul(std::move(again));
    }

    if (!sums.empty()) {
        // Distribute: canonical products are monomials.
        std::sort(flat.begin(), flat.end(),
                  [](const expr_ptr& x, const expr_ptr& y) { return cmp(*x, *y) < 0; });
        expr_ptr mono = flat.empty()
                            ? num_node(coeff)
                            : (coeff == 1 && flat.size() == 1 ? flat[0] : mul_node(coeff, flat));
        std::vector<expr_ptr> acc{mono};
        for (const auto& s : sums) {
            std::vector<expr_ptr> next;
            next.reserve(acc.size() * s->kids.size());
            for (const auto& t1 : acc)
                for (const auto& t2 : s->kids)
                    next.push_back(make_mul({t1, t2}));
            acc = std::move(next);
        }
        return make_add(std::move(acc));
    }

    if (flat.empty())
        return num_node(coeff);
    std::sort(flat.begin(), flat.end(),
              [](const expr_ptr& x, const expr_ptr& y) { return cmp(*x, *y) < 0; });
    if (coeff == 1 && flat.size() == 1)
        return flat[0];
    return mul_node(coeff, std::move(flat));
}

namespace
{

struct term_view {
    rat c;
    std::vector<expr_ptr> fs;
};

expr_ptr assemble_term(const term_view& t)
{
    if (t.fs.empty())
        return num_node(t.c);
    if (t.c == 1 && t.fs.size() == 1)
        return t.fs[0];
    return mul_node(t.c, t.fs);
}

void flatten_into_terms(const expr_ptr& e, std::vector<term_view>& out)
{
    if (e->k == kind::add) {
        for (const auto& kid : e->kids)
            out.push_back({term_coeff(kid), term_factors(kid)});
    } else if (e->k == kind::num) {
        if (e->coeff != 0)
            out.push_back({e->coeff, {}});
    } else {
        out.push_back({term_coeff(e), term_factors(e)});
    }
}

// Key identifying a family of powers of one sum base whose exponents differ by
// integers: (base, exponent mod 1).
struct radical_class_less {
    bool operator()(const std::pair<expr_ptr, rat>& a, const std::pair<expr_ptr, rat>& b) const
    {
        if (int c = cmp(*a.first, *b.first); c != 0)
            return c < 0;
        return a.second < b.second;
    }
};

rat frac01(const rat& e)
{
    using boost::multiprecision::abs;
    bigint fl = numerator(e) / denominator(e);
    if (e < 0 && fl * denominator(e) != numerator(e))
        fl -= 1;
    return e - rat(fl);
}

bool grouping_factor(const expr_ptr& f, expr_ptr& base, rat& e)
{
    if (f->k != kind::pow || f->kids[0]->k != kind::add)
        return false;
    // Non-negative integer powers of sums only occur as oversize opaque atoms;
    // leave those alone.
    if (is_integer(f->expo) && f->expo > 0)
        return false;
    base = f->kids[0];
    e = f->expo;
    return true;
}

} // namespace

expr_ptr make_add(std::vector<expr_ptr> terms)
{
    std::vector<term_view> tv;
    for (const auto& t : terms)
        flatten_into_terms(t, tv);

    for (int round = 0; round < 8; ++round) {
        // Collect like monomials.
        std::sort(tv.begin(), tv.end(), [](const term_view& a, const term_view& b) {
            return cmp_factor_lists(a.fs, b.fs) < 0;
        });
        std::vector<term_view> merged;
        for (auto& t : tv) {
            if (!merged.empty() && cmp_factor_lists(merged.back().fs, t.fs) == 0)
                merged.back().c += t.c;
            else
                merged.push_back(std::move(t));
        }
        tv.clear();
        for (auto& t : merged)
            if (t.c != 0)
                tv.push_back(std::move(t));

        // Regroup powers of common sum bases onto the minimal exponent within
        // each integer-offset class, so e.g. S*S^(-3/2) and S^(-1/2) meet.
        std::map<std::pair<expr_ptr, rat>, rat, radical_class_less> cls;
        for (const auto& t : tv) {
            for (const auto& f : t.fs) {
                expr_ptr b;
                rat e;
                if (!grouping_factor(f, b, e))
                    continue;
                auto key = std::make_pair(b, frac01(e));
                auto it = cls.find(key);
                if (it == cls.end())
                    cls.emplace(std::move(key), e);
                else if (e < it->second)
                    it->second = e;
            }
        }

        bool rewrote = false;
        std::vector<term_view> next;
        for (const auto& t : tv) {
            std::vector<expr_ptr> repl;
            std::vector<expr_ptr> cof;
            bool changed = false;
            for (const auto& f : t.fs) {
                expr_ptr b;
                rat e;
                if (grouping_factor(f, b, e)) {
                    const rat emin = cls.at(std::make_pair(b, frac01(e)));
                    if (e > emin) {
                        repl.push_back(pow_node(b, emin));
                        cof.push_back(make_pow(b, e - emin)); // positive integer: expands
                        changed = true;
                        continue;
                    }
                }
                repl.push_back(f);
            }
            if (!changed) {
                next.push_back(t);
                continue;
            }
            rewrote = true;
            std::vector<expr_ptr> prod;
            prod.push_back(num_node(t.c));
            for (auto& r : repl)
                prod.push_back(std::move(r));
            for (auto& cfac : cof)
                prod.push_back(std::move(cfac));
            flatten_into_terms(make_mul(std::move(prod)), next);
        }
        tv = std::move(next);
        if (!rewrote)
            break;
    }

    if (tv.empty())
        return zero();
    std::sort(tv.begin(), tv.end(), [](const term_view& a, const term_view& b) {
        return cmp_factor_lists(a.fs, b.fs) < 0;
    });
    if (tv.size() == 1)
        return assemble_term(tv[0]);
    std::vector<expr_ptr> kids;
    kids.reserve(tv.size());
    for (const auto& t : tv)
        kids.push_back(assemble_term(t));
    return add_node(std::move(kids));
}

expr_ptr operator+(const expr_ptr& a, const expr_ptr& b)
{
    return make_add({a, b});
}

expr_ptr operator-(const expr_ptr& a, const expr_ptr& b)
{
    return make_add({a, make_mul({make_num(-1), b})});
}

expr_ptr operator*(const expr_ptr& a, const expr_ptr& b)
{
    return make_mul({a, b});
}

expr_ptr operator/(const expr_ptr& a, const expr_ptr& b)
{
    return make_mul({a, make_pow(b, rat(-1))});
}

expr_ptr operator-(const expr_ptr& a)
{
    return make_mul({make_num(-1), a});
}

namespace
{

std::string rat_str(const rat& r)
{
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1)
        os << "/" << denominator(r);
    return os.str();
}

const char* func_name(func f)
{
    switch (f) {
        case func::exp:
            return "exp";
        case func::log:
            return "log";
        case func::sin:
            return "sin";
        case func::cos:
            return "cos";
    }
    return "?";
}

void print(const expr_ptr& e, std::string& out);

void print_pow(const expr_ptr& e, std::string& out)
{
    const expr_ptr& b = e->kids[0];
    const bool parens = b->k == kind::add || b->k == kind::mul || b->k == kind::pow ||
                        (b->k == kind::num && (b->coeff < 0 || !is_integer(b->coeff)));
    if (parens)
        out += "(";
    print(b, out);
    if (parens)
        out += ")";
    out += "^";
    if (is_integer(e->expo) && e->expo > 0) {
        out += rat_str(e->expo);
    } else {
        out += "(";
        out += rat_str(e->expo);
        out += ")";
    }
}

// Prints |coeff| * factors; the caller handles the sign.
void print_monomial(const rat& c, const std::vector<expr_ptr>& fs, std::string& out)
{
    using boost::multiprecision::abs;
    const rat a = boost::multiprecision::abs(c);
    bool lead = true;
    if (fs.empty() || a != 1) {
        out += rat_str(a);
        lead = false;
    }
    for (const auto& f : fs) {
        if (!lead)
            out += "*";
        lead = false;
        print(f, out);
    }
}

void print(const expr_ptr& e, std::string& out)
{
    switch (e->k) {
        case kind::num:
            if (e->coeff < 0) {
                out += "-";
                out += rat_str(-e->coeff);
            } else {
                out += rat_str(e->coeff);
            }
            break;
        case kind::sym:
            out += e->name;
            break;
        case kind::call:
            out += func_name(e->fn);
            out += "(";
            print(e->kids[0], out);
            out += ")";
            break;
        case kind::pow:
            print_pow(e, out);
            break;
        case kind::mul:
            if (e->coeff < 0)
                out += "-";
            print_monomial(e->coeff, e->kids, out);
            break;
        case kind::add: {
            bool first = true;
            for (const auto& t : e->kids) {
                const rat c = term_coeff(t);
                if (first) {
                    if (c < 0)
                        out += "-";
                } else {
                    out += (c < 0) ? " - " : " + ";
                }
                print_monomial(c, term_factors(t), out);
                first = false;
            }
            break;
        }
    }
}

} // namespace

std::string to_string(const expr_ptr& e)
{
    std::string out;
    print(e, out);
    return out;
}

expr_ptr substitute(const expr_ptr& e,
                    const std::unordered_map<std::string, expr_ptr>& bindings)
{
    switch (e->k) {
        case kind::num:
            return e;
        case kind::sym: {
            auto it = bindings.find(e->name);
            return it == bindings.end() ? e : it->second;
        }
        case kind::call:
            return make_call(e->fn, substitute(e->kids[0], bindings));
        case kind::pow:
            return make_pow(substitute(e->kids[0], bindings), e->expo);
        case kind::mul: {
            std::vector<expr_ptr> fs;
            fs.reserve(e->kids.size() + 1);
            fs.push_back(num_node(e->coeff));
            for (const auto& kid : e->kids)
                fs.push_back(substitute(kid, bindings));
            return make_mul(std::move(fs));
        }
        case kind::add: {
            std::vector<expr_ptr> ts;
            ts.reserve(e->kids.size());
            for (const auto& kid : e->kids)
                ts.push_back(substitute(kid, bindings));
            return make_add(std::move(ts));
        }
    }
    return e;
}

namespace
{

void collect_symbols(const expr_ptr& e, std::set<std::string>& out)
{
    if (e->k == kind::sym)
        out.insert(e->name);
    for (const auto& kid : e->kids)
        collect_symbols(kid, out);
}

} // namespace

std::set<std::string> free_symbols(const expr_ptr& e)
{
    std::set<std::string> out;
    collect_symbols(e, out);
    return out;
}

} // namespace geomech

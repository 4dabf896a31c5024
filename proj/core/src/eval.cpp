// Part of geomech. SPDX-License-Identifier: MIT

#include <geomech/eval.hpp>

#include <cmath>
#include <stdexcept>

namespace geomech
{

namespace
{

double to_double(const rat& r)
{
    return r.convert_to<double>();
}

double eval_node(const coord_system& cs, const expr_ptr& e, const point& at)
{
    switch (e->k) {
        case kind::num:
            return to_double(e->coeff);
        case kind::sym: {
            auto it = at.find(e->name);
            if (it != at.end())
                return it->second;
            if (e->name == "pi")
                return M_PI;
            if (cs.has_param_value(e->name))
                return cs.param_value(e->name);
            throw std::invalid_argument("unbound symbol '" + e->name + "' in evaluation");
        }
        case kind::call: {
            const double u = eval_node(cs, e->kids[0], at);
            switch (e->fn) {
                case func::exp:
                    return std::exp(u);
                case func::log:
                    if (u <= 0)
                        throw std::domain_error("log of non-positive value");
                    return std::log(u);
                case func::sin:
                    return std::sin(u);
                case func::cos:
                    return std::cos(u);
            }
            return 0;
        }
        case kind::pow: {
            const double b = eval_node(cs, e->kids[0], at);
            const bool frac = boost::multiprecision::denominator(e->expo) != 1;
            if (b == 0 && e->expo < 0)
                throw std::domain_error("zero base raised to a negative power");
            if (b < 0 && frac)
                throw std::domain_error("fractional power of a negative base");
            return std::pow(b, to_double(e->expo));
        }
        case kind::mul: {
            double v = to_double(e->coeff);
            for (const auto& kid : e->kids)
                v *= eval_node(cs, kid, at);
            return v;
        }
        case kind::add: {
            double v = 0;
            for (const auto& kid : e->kids)
                v += eval_node(cs, kid, at);
            return v;
        }
    }
    return 0;
}

} // namespace

double eval(const coord_system& cs, const expr_ptr& e, const point& at)
{
    const double v = eval_node(cs, e, at);
    if (!std::isfinite(v))
        throw std::domain_error("expression evaluated to a non-finite value");
    return v;
}

compiled_expr::compiled_expr(const coord_system& cs, const expr_ptr& e,
                             const std::vector<std::string>& columns)
{
    std::map<std::string, std::uint32_t> slot;
    for (std::size_t i = 0; i < columns.size(); ++i)
        slot[columns[i]] = static_cast<std::uint32_t>(i);

    std::size_t depth = 0;
    auto track = [&](std::ptrdiff_t delta) {
        depth = static_cast<std::size_t>(static_cast<std::ptrdiff_t>(depth) + delta);
        need_ = std::max(need_, depth);
    };

    // Postorder emission.
    auto emit = [&](const expr_ptr& node, auto&& self) -> void {
        switch (node->k) {
            case kind::num:
                prog_.push_back({opc::push, to_double(node->coeff), 0});
                track(+1);
                return;
            case kind::sym: {
                auto it = slot.find(node->name);
                if (it != slot.end()) {
                    prog_.push_back({opc::load, 0, it->second});
                } else if (node->name == "pi") {
                    prog_.push_back({opc::push, M_PI, 0});
                } else if (cs.has_param_value(node->name)) {
                    prog_.push_back({opc::push, cs.param_value(node->name), 0});
                } else {
                    throw std::invalid_argument("no column or value for symbol '" + node->name +
                                                "'");
                }
                track(+1);
                return;
            }
            case kind::call: {
                self(node->kids[0], self);
                opc op = opc::fexp;
                if (node->fn == func::log)
                    op = opc::flog;
                else if (node->fn == func::sin)
                    op = opc::fsin;
                else if (node->fn == func::cos)
                    op = opc::fcos;
                prog_.push_back({op, 0, 0});
                return;
            }
            case kind::pow:
                self(node->kids[0], self);
                prog_.push_back({opc::powc, to_double(node->expo), 0});
                return;
            case kind::mul: {
                std::uint32_t n = 0;
                if (node->coeff != 1) {
                    prog_.push_back({opc::push, to_double(node->coeff), 0});
                    track(+1);
                    ++n;
                }
                for (const auto& kid : node->kids) {
                    self(kid, self);
                    ++n;
                }
                prog_.push_back({opc::muln, 0, n});
                track(-(static_cast<std::ptrdiff_t>(n) - 1));
                return;
            }
            case kind::add: {
                for (const auto& kid : node->kids)
                    self(kid, self);
                prog_.push_back({opc::addn, 0, static_cast<std::uint32_t>(node->kids.size())});
                track(-(static_cast<std::ptrdiff_t>(node->kids.size()) - 1));
                return;
            }
        }
    };
    emit(e, emit);
}

double compiled_expr::operator()(const double* cols, std::vector<double>& scratch) const
{
    if (scratch.size() < need_)
        scratch.resize(need_);
    double* sp = scratch.data();
    std::size_t top = 0;
    for (const auto& i : prog_) {
        switch (i.op) {
            case opc::push:
                sp[top++] = i.a;
                break;
            case opc::load:
                sp[top++] = cols[i.n];
                break;
            case opc::addn: {
                double v = 0;
                for (std::uint32_t k = 0; k < i.n; ++k)
                    v += sp[--top];
                sp[top++] = v;
                break;
            }
            case opc::muln: {
                double v = 1;
                for (std::uint32_t k = 0; k < i.n; ++k)
                    v *= sp[--top];
                sp[top++] = v;
                break;
            }
            case opc::powc:
                sp[top - 1] = std::pow(sp[top - 1], i.a);
                break;
            case opc::fexp:
                sp[top - 1] = std::exp(sp[top - 1]);
                break;
            case opc::flog:
                sp[top - 1] = std::log(sp[top - 1]);
                break;
            case opc::fsin:
                sp[top - 1] = std::sin(sp[top - 1]);
                break;
            case opc::fcos:
                sp[top - 1] = std::cos(sp[top - 1]);
                break;
        }
    }
    return sp[top - 1];
}

} // namespace geomech

// Part of geomech. SPDX-License-Identifier: MIT

#include <geomech/coords.hpp>

#include <cctype>
#include <set>
#include <stdexcept>

namespace geomech
{

namespace
{

const std::set<std::string>& reserved_names()
{
    static const std::set<std::string> r = {"t", "pi", "exp", "log", "sin", "cos", "sqrt"};
    return r;
}

bool valid_identifier(const std::string& s)
{
    if (s.empty())
        return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_')
        return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
            return false;
    return true;
}

void check_name(const std::string& s, const char* what)
{
    if (!valid_identifier(s))
        throw std::invalid_argument(std::string(what) + " name '" + s + "' is not a valid identifier");
    if (reserved_names().count(s))
        throw std::invalid_argument(std::string(what) + " name '" + s + "' is reserved");
}

std::string jet_name(const std::string& fibre, unsigned order)
{
    if (order == 0)
        return fibre;
    return fibre + "_" + std::string(order, 't');
}

} // namespace

struct coord_system::impl {
    std::vector<std::string> fibres;
    std::vector<std::string> params;
    std::map<std::string, double> values;
    std::vector<std::string> momenta; // one per base fibre
    bool standalone_momenta = true;
    std::size_t base = 0;
    unsigned cap = 3;
    std::map<std::string, symbol_info> registry;
};

namespace
{

void add_entry(coord_system::impl& m, const std::string& name, symbol_info info)
{
    if (!m.registry.emplace(name, info).second)
        throw std::invalid_argument("coordinate name collision on '" + name + "'");
}

void rebuild_registry(coord_system::impl& m)
{
    m.registry.clear();
    add_entry(m, "t", {symbol_role::time, 0, 0});
    add_entry(m, "pi", {symbol_role::constant, 0, 0});
    for (std::size_t i = 0; i < m.fibres.size(); ++i)
        for (unsigned o = 0; o <= m.cap; ++o)
            add_entry(m, jet_name(m.fibres[i], o), {symbol_role::jet, i, o});
    if (m.standalone_momenta)
        for (std::size_t i = 0; i < m.momenta.size(); ++i)
            add_entry(m, m.momenta[i], {symbol_role::momentum, i, 0});
    for (const auto& p : m.params)
        add_entry(m, p, {symbol_role::param, 0, 0});
}

std::shared_ptr<const coord_system::impl> freeze(coord_system::impl&& m)
{
    rebuild_registry(m);
    return std::make_shared<const coord_system::impl>(std::move(m));
}

const std::shared_ptr<const coord_system::impl>& empty_impl()
{
    static const auto e = [] {
        coord_system::impl m;
        return freeze(std::move(m));
    }();
    return e;
}

} // namespace

coord_system::coord_system(std::shared_ptr<const impl> m) : m_(std::move(m)) {}

coord_system coord_system::cartesian(std::size_t dim)
{
    std::vector<std::string> fs;
    fs.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i)
        fs.push_back("q" + std::to_string(i + 1));
    return with_fibres(std::move(fs));
}

coord_system coord_system::with_fibres(std::vector<std::string> fibres)
{
    impl m;
    for (const auto& f : fibres)
        check_name(f, "fibre");
    m.base = fibres.size();
    m.fibres = std::move(fibres);
    for (std::size_t i = 0; i < m.base; ++i)
        m.momenta.push_back("p" + std::to_string(i + 1));
    return coord_system(freeze(std::move(m)));
}

coord_system coord_system::phase_of(const coord_system& base)
{
    if (base.is_phase())
        throw std::invalid_argument("phase_of applied to a phase system");
    impl m;
    m.base = base.dim();
    m.fibres = base.fibres();
    for (std::size_t i = 0; i < m.base; ++i) {
        m.fibres.push_back(base.momentum(i));
        m.momenta.push_back(base.momentum(i));
    }
    m.standalone_momenta = false;
    m.params = base.params();
    m.values = base.param_values();
    m.cap = base.jet_cap();
    return coord_system(freeze(std::move(m)));
}

coord_system coord_system::with_params(const std::vector<std::string>& names) const
{
    impl m = *m_;
    for (const auto& n : names) {
        check_name(n, "parameter");
        m.params.push_back(n);
    }
    return coord_system(freeze(std::move(m)));
}

coord_system coord_system::with_param(const std::string& name) const
{
    return with_params({name});
}

coord_system coord_system::with_param(const std::string& name, double value) const
{
    impl m = *m_;
    check_name(name, "parameter");
    m.params.push_back(name);
    m.values[name] = value;
    return coord_system(freeze(std::move(m)));
}

coord_system coord_system::with_jet_cap(unsigned cap) const
{
    impl m = *m_;
    m.cap = cap;
    return coord_system(freeze(std::move(m)));
}

coord_system coord_system::with_extra_fibres(const std::vector<std::string>& names) const
{
    if (is_phase())
        throw std::invalid_argument("cannot extend a phase system with fibres");
    impl m = *m_;
    for (const auto& n : names) {
        check_name(n, "fibre");
        m.fibres.push_back(n);
    }
    m.base = m.fibres.size();
    m.momenta.clear();
    for (std::size_t i = 0; i < m.base; ++i)
        m.momenta.push_back("p" + std::to_string(i + 1));
    return coord_system(freeze(std::move(m)));
}

std::size_t coord_system::dim() const
{
    return m_ ? m_->fibres.size() : 0;
}

std::size_t coord_system::base_dim() const
{
    return m_ ? m_->base : 0;
}

bool coord_system::is_phase() const
{
    return m_ && !m_->standalone_momenta;
}

unsigned coord_system::jet_cap() const
{
    return m_ ? m_->cap : 3;
}

const std::vector<std::string>& coord_system::fibres() const
{
    if (!m_)
        return empty_impl()->fibres;
    return m_->fibres;
}

const std::string& coord_system::fibre(std::size_t i) const
{
    return fibres().at(i);
}

std::string coord_system::jet(std::size_t i, unsigned order) const
{
    if (order > jet_cap())
        throw std::out_of_range("jet order " + std::to_string(order) + " exceeds cap " +
                                std::to_string(jet_cap()));
    return jet_name(fibre(i), order);
}

std::string coord_system::velocity(std::size_t i) const
{
    return jet(i, 1);
}

std::string coord_system::acceleration(std::size_t i) const
{
    return jet(i, 2);
}

std::string coord_system::momentum(std::size_t i) const
{
    if (!m_)
        throw std::out_of_range("momentum index out of range");
    return m_->momenta.at(i);
}

const std::vector<std::string>& coord_system::params() const
{
    if (!m_)
        return empty_impl()->params;
    return m_->params;
}

const std::map<std::string, double>& coord_system::param_values() const
{
    if (!m_)
        return empty_impl()->values;
    return m_->values;
}

bool coord_system::has_param_value(const std::string& name) const
{
    return m_ && m_->values.count(name) != 0;
}

double coord_system::param_value(const std::string& name) const
{
    if (!has_param_value(name))
        throw std::out_of_range("parameter '" + name + "' has no declared value");
    return m_->values.at(name);
}

bool coord_system::knows(const std::string& name) const
{
    return classify(name) != nullptr;
}

const symbol_info* coord_system::classify(const std::string& name) const
{
    const auto& m = m_ ? m_ : empty_impl();
    auto it = m->registry.find(name);
    return it == m->registry.end() ? nullptr : &it->second;
}

expr_ptr coord_system::sym(const std::string& name) const
{
    if (!knows(name))
        throw std::invalid_argument("unknown symbol '" + name + "'");
    return make_sym(name);
}

expr_ptr coord_system::time_sym() const
{
    return make_sym("t");
}

expr_ptr coord_system::q(std::size_t i) const
{
    return make_sym(fibre(i));
}

expr_ptr coord_system::qt(std::size_t i) const
{
    return make_sym(jet(i, 1));
}

expr_ptr coord_system::qtt(std::size_t i) const
{
    return make_sym(jet(i, 2));
}

expr_ptr coord_system::p(std::size_t i) const
{
    return make_sym(momentum(i));
}

} // namespace geomech

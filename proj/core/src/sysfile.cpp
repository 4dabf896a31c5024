// Part of geomech. SPDX-License-Identifier: MIT

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

#include <geomech/calculus.hpp>
#include <geomech/dynamics.hpp>
#include <geomech/frames.hpp>
#include <geomech/hamiltonian.hpp>
#include <geomech/lagrangian.hpp>
#include <geomech/newtonian.hpp>
#include <geomech/parser.hpp>
#include <geomech/symmetry.hpp>
#include <geomech/sysfile.hpp>

namespace geomech
{

namespace
{

// One parsed scalar-or-string; lists are vectors of these.
struct token_value {
    bool quoted = false;
    std::string text; // expression text when quoted, numeric text otherwise
};

struct raw_entry {
    std::string key;
    std::string value;
    std::size_t line = 0;
    bool used = false;
};

struct raw_section {
    std::string name;
    std::size_t line = 0;
    std::vector<raw_entry> entries;
};

std::string trim(const std::string& s)
{
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos)
        return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Strips a # comment, honoring double quotes.
std::string strip_comment(const std::string& s)
{
    bool in_quote = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '"')
            in_quote = !in_quote;
        else if (s[i] == '#' && !in_quote)
            return s.substr(0, i);
    }
    return s;
}

class reader
{
public:
    reader(const std::string& text, std::string origin) : origin_(std::move(origin))
    {
        split(text);
    }

    [[noreturn]] void fail(std::size_t line, const std::string& what) const
    {
        throw sysfile_error(origin_, line, what);
    }

    const std::vector<raw_section>& sections() const { return sections_; }

    raw_section* find(const std::string& name)
    {
        for (auto& s : sections_)
            if (s.name == name)
                return &s;
        return nullptr;
    }

    // The entry for key, marked consumed; null when absent.
    raw_entry* entry(raw_section& sec, const std::string& key) const
    {
        for (auto& e : sec.entries)
            if (e.key == key) {
                e.used = true;
                return &e;
            }
        return nullptr;
    }

    raw_entry& require(raw_section& sec, const std::string& key) const
    {
        if (auto* e = entry(sec, key))
            return *e;
        fail(sec.line, "section [" + sec.name + "] is missing key '" + key + "'");
    }

    void reject_unused(const raw_section& sec) const
    {
        for (const auto& e : sec.entries)
            if (!e.used)
                fail(e.line, "unknown key '" + e.key + "' in section [" + sec.name + "]");
    }

    double number(const raw_entry& e) const
    {
        const std::string v = trim(e.value);
        char* end = nullptr;
        double x = std::strtod(v.c_str(), &end);
        if (v.empty() || end != v.c_str() + v.size())
            fail(e.line, "key '" + e.key + "' expects a number, got '" + v + "'");
        return x;
    }

    long integer(const raw_entry& e) const
    {
        double x = number(e);
        long n = static_cast<long>(x);
        if (static_cast<double>(n) != x)
            fail(e.line, "key '" + e.key + "' expects an integer");
        return n;
    }

    std::string quoted(const raw_entry& e) const
    {
        auto v = parse_token(e, trim(e.value));
        if (!v.quoted)
            fail(e.line, "key '" + e.key + "' expects a quoted expression string");
        return v.text;
    }

    std::vector<token_value> list(const raw_entry& e) const
    {
        const std::string v = trim(e.value);
        if (v.empty() || v.front() != '[' || v.back() != ']')
            fail(e.line, "key '" + e.key + "' expects a bracketed list");
        std::vector<token_value> out;
        std::string body = v.substr(1, v.size() - 2);
        // Split at commas outside quotes.
        std::vector<std::string> parts;
        std::string cur;
        bool in_quote = false;
        for (char c : body) {
            if (c == '"')
                in_quote = !in_quote;
            if (c == ',' && !in_quote) {
                parts.push_back(cur);
                cur.clear();
            } else {
                cur += c;
            }
        }
        if (in_quote)
            fail(e.line, "unterminated string in list for key '" + e.key + "'");
        if (!trim(cur).empty() || !parts.empty())
            parts.push_back(cur);
        for (const auto& p : parts) {
            const std::string t = trim(p);
            if (t.empty())
                fail(e.line, "empty element in list for key '" + e.key + "'");
            out.push_back(parse_token(e, t));
        }
        return out;
    }

    std::vector<double> number_list(const raw_entry& e) const
    {
        std::vector<double> out;
        for (const auto& t : list(e)) {
            if (t.quoted)
                fail(e.line, "key '" + e.key + "' expects numbers, got a string");
            char* end = nullptr;
            double x = std::strtod(t.text.c_str(), &end);
            if (t.text.empty() || end != t.text.c_str() + t.text.size())
                fail(e.line, "key '" + e.key + "' expects numbers, got '" + t.text + "'");
            out.push_back(x);
        }
        return out;
    }

    expr_ptr expression(const coord_system& cs, const raw_entry& e) const
    {
        return compile(cs, e, quoted(e));
    }

    std::vector<expr_ptr> expression_list(const coord_system& cs, const raw_entry& e) const
    {
        std::vector<expr_ptr> out;
        for (const auto& t : list(e)) {
            if (!t.quoted)
                fail(e.line, "key '" + e.key + "' expects quoted expression strings");
            out.push_back(compile(cs, e, t.text));
        }
        return out;
    }

private:
    void split(const std::string& text)
    {
        std::istringstream in(text);
        std::string raw;
        std::size_t lineno = 0;
        while (std::getline(in, raw)) {
            ++lineno;
            std::string line = trim(strip_comment(raw));
            if (line.empty())
                continue;
            if (line.front() == '[') {
                if (line.back() != ']' || line.size() < 3)
                    fail(lineno, "malformed section header '" + line + "'");
                std::string name = trim(line.substr(1, line.size() - 2));
                for (const auto& s : sections_)
                    if (s.name == name)
                        fail(lineno, "duplicate section [" + name + "]");
                sections_.push_back({name, lineno, {}});
                continue;
            }
            std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                fail(lineno, "expected 'key = value', got '" + line + "'");
            if (sections_.empty())
                fail(lineno, "entry before any [section]");
            raw_entry e;
            e.key = trim(line.substr(0, eq));
            e.value = trim(line.substr(eq + 1));
            e.line = lineno;
            if (e.key.empty())
                fail(lineno, "empty key");
            if (e.value.empty())
                fail(lineno, "key '" + e.key + "' has no value");
            for (const auto& other : sections_.back().entries)
                if (other.key == e.key)
                    fail(lineno, "duplicate key '" + e.key + "' in section [" +
                                     sections_.back().name + "]");
            sections_.back().entries.push_back(std::move(e));
        }
    }

    token_value parse_token(const raw_entry& e, const std::string& t) const
    {
        if (t.front() == '"') {
            if (t.size() < 2 || t.back() != '"')
                fail(e.line, "unterminated string for key '" + e.key + "'");
            return {true, t.substr(1, t.size() - 2)};
        }
        return {false, t};
    }

    expr_ptr compile(const coord_system& cs, const raw_entry& e, const std::string& text) const
    {
        try {
            return parse(cs, text);
        } catch (const std::exception& ex) {
            fail(e.line, "in '" + e.key + "': " + ex.what());
        }
    }

    std::string origin_;
    std::vector<raw_section> sections_;
};

coord_system build_system(reader& rd, raw_section& sec)
{
    std::optional<std::size_t> dim;
    std::vector<std::string> coords;

    if (auto* e = rd.entry(sec, "dim")) {
        long n = rd.integer(*e);
        if (n < 1)
            rd.fail(e->line, "dim must be at least 1");
        dim = static_cast<std::size_t>(n);
    }
    if (auto* e = rd.entry(sec, "coords")) {
        for (const auto& t : rd.list(*e)) {
            if (!t.quoted)
                rd.fail(e->line, "coords expects quoted names");
            coords.push_back(t.text);
        }
        if (dim && coords.size() != *dim)
            rd.fail(e->line, "coords lists " + std::to_string(coords.size()) +
                                 " names but dim = " + std::to_string(*dim));
    }
    if (!dim && coords.empty())
        rd.fail(sec.line, "section [system] needs dim or coords");

    coord_system cs;
    try {
        cs = coords.empty() ? coord_system::cartesian(*dim)
                            : coord_system::with_fibres(coords);
    } catch (const std::exception& ex) {
        rd.fail(sec.line, ex.what());
    }

    // Parameter names first, then the declared values.
    std::vector<std::string> params;
    if (auto* e = rd.entry(sec, "params"))
        for (const auto& t : rd.list(*e)) {
            if (!t.quoted)
                rd.fail(e->line, "params expects quoted names");
            params.push_back(t.text);
        }
    std::map<std::string, std::pair<double, std::size_t>> values;
    for (auto& e : sec.entries)
        if (e.key.rfind("param.", 0) == 0) {
            e.used = true;
            values[e.key.substr(6)] = {rd.number(e), e.line};
        }
    try {
        for (const auto& name : params)
            if (auto it = values.find(name); it != values.end())
                cs = cs.with_param(name, it->second.first);
            else
                cs = cs.with_param(name);
        for (const auto& [name, v] : values)
            if (std::find(params.begin(), params.end(), name) == params.end())
                cs = cs.with_param(name, v.first);
    } catch (const std::exception& ex) {
        rd.fail(sec.line, ex.what());
    }
    rd.reject_unused(sec);
    return cs;
}

} // namespace

const char* to_string(source_kind k)
{
    switch (k) {
        case source_kind::lagrangian:
            return "lagrangian";
        case source_kind::hamiltonian:
            return "hamiltonian";
        default:
            return "equation";
    }
}

system_file parse_system(const std::string& text, const std::string& origin)
{
    reader rd(text, origin);

    system_file out;
    {
        auto* sys = rd.find("system");
        if (!sys)
            rd.fail(1, "missing [system] section");
        out.cs = build_system(rd, *sys);
    }
    out.phase = coord_system::phase_of(out.cs);
    const std::size_t n = out.cs.dim();

    auto* lag = rd.find("lagrangian");
    auto* ham = rd.find("hamiltonian");
    auto* eqs = rd.find("equation");
    int sources = (lag != nullptr) + (ham != nullptr) + (eqs != nullptr);
    if (sources != 1)
        rd.fail(1, sources == 0
                       ? "expected one of [lagrangian], [hamiltonian], [equation]"
                       : "sections [lagrangian], [hamiltonian], [equation] are exclusive");

    auto guard = [&](const raw_section& sec, auto&& fn) {
        try {
            fn();
        } catch (const sysfile_error&) {
            throw;
        } catch (const std::exception& ex) {
            rd.fail(sec.line, std::string("[") + sec.name + "] " + ex.what());
        }
    };

    if (lag) {
        out.kind = source_kind::lagrangian;
        out.density = rd.expression(out.cs, rd.require(*lag, "L"));
        rd.reject_unused(*lag);
        guard(*lag, [&] { lagrangian _(out.cs, out.density); });
    } else if (ham) {
        out.kind = source_kind::hamiltonian;
        out.density = rd.expression(out.phase, rd.require(*ham, "H"));
        rd.reject_unused(*ham);
        guard(*ham, [&] { hamiltonian _(out.phase, out.density); });
    } else {
        out.kind = source_kind::equation;
        out.xi = rd.expression_list(out.cs, rd.require(*eqs, "xi"));
        rd.reject_unused(*eqs);
        guard(*eqs, [&] { second_order_equation _(out.cs, out.xi); });
    }

    if (auto* sec = rd.find("mass")) {
        for (std::size_t i = 0; i < n; ++i)
            out.mass.push_back(
                rd.expression_list(out.cs, rd.require(*sec, "row" + std::to_string(i + 1))));
        rd.reject_unused(*sec);
        guard(*sec, [&] { mass_tensor _(out.cs, out.mass); });
    }
    if (auto* sec = rd.find("force")) {
        out.force = rd.expression_list(out.cs, rd.require(*sec, "f"));
        rd.reject_unused(*sec);
        guard(*sec, [&] { external_force _(out.cs, out.force); });
    }

    for (auto& sec : const_cast<std::vector<raw_section>&>(rd.sections())) {
        if (sec.name.rfind("frame.", 0) == 0) {
            auto name = sec.name.substr(6);
            auto G = rd.expression_list(out.cs, rd.require(sec, "Gamma"));
            rd.reject_unused(sec);
            guard(sec, [&] { reference_frame _(out.cs, G); });
            out.frames.emplace(name, std::move(G));
        } else if (sec.name.rfind("change.", 0) == 0) {
            change_entry ch;
            ch.forward = rd.expression_list(out.cs, rd.require(sec, "forward"));
            ch.inverse = rd.expression_list(out.cs, rd.require(sec, "inverse"));
            rd.reject_unused(sec);
            guard(sec, [&] { coordinate_change _(out.cs, ch.forward, ch.inverse); });
            out.changes.emplace(sec.name.substr(7), std::move(ch));
        } else if (sec.name.rfind("symmetry.", 0) == 0) {
            symmetry_entry sym;
            if (auto* e = rd.entry(sec, "ut"))
                sym.ut = static_cast<int>(rd.integer(*e));
            sym.u = rd.expression_list(out.cs, rd.require(sec, "u"));
            if (auto* e = rd.entry(sec, "sigma"))
                sym.sigma = rd.expression(out.cs, *e);
            rd.reject_unused(sec);
            guard(sec, [&] {
                jet_field f(out.cs, sym.ut, sym.u);
                if (sym.sigma && jet_order(out.cs, sym.sigma) > 1)
                    throw std::invalid_argument("sigma must have jet order <= 1");
            });
            out.symmetries.emplace(sec.name.substr(9), std::move(sym));
        } else if (sec.name.rfind("gauge.", 0) == 0) {
            gauge_entry g;
            std::vector<expr_ptr> zeros(n, zero());
            g.u0 = g.u1 = g.u2 = zeros;
            if (auto* e = rd.entry(sec, "u0"))
                g.u0 = rd.expression_list(out.cs, *e);
            if (auto* e = rd.entry(sec, "u1"))
                g.u1 = rd.expression_list(out.cs, *e);
            if (auto* e = rd.entry(sec, "u2"))
                g.u2 = rd.expression_list(out.cs, *e);
            rd.reject_unused(sec);
            guard(sec, [&] { gauge_symmetry _(out.cs, {g.u0}, {g.u1}, {g.u2}); });
            out.gauges.emplace(sec.name.substr(6), std::move(g));
        }
    }

    if (auto* sec = rd.find("conserve")) {
        const auto& home = out.kind == source_kind::hamiltonian ? out.phase : out.cs;
        for (auto& e : sec->entries) {
            e.used = true;
            out.conserved.emplace_back(e.key, rd.expression(home, e));
        }
    }

    if (auto* sec = rd.find("simulate")) {
        out.sim.present = true;
        if (auto* e = rd.entry(*sec, "q0"))
            out.sim.q0 = rd.number_list(*e);
        if (auto* e = rd.entry(*sec, "v0"))
            out.sim.v0 = rd.number_list(*e);
        if (auto* e = rd.entry(*sec, "p0"))
            out.sim.p0 = rd.number_list(*e);
        if (auto* e = rd.entry(*sec, "t0"))
            out.sim.t0 = rd.number(*e);
        if (auto* e = rd.entry(*sec, "tmax"))
            out.sim.tmax = rd.number(*e);
        if (auto* e = rd.entry(*sec, "step"))
            out.sim.step = rd.number(*e);
        if (auto* e = rd.entry(*sec, "stride")) {
            out.sim.stride = rd.integer(*e);
            if (out.sim.stride < 1)
                rd.fail(e->line, "stride must be at least 1");
        }
        rd.reject_unused(*sec);
        for (const auto* v : {&out.sim.q0, &out.sim.v0, &out.sim.p0})
            if (!v->empty() && v->size() != n)
                rd.fail(sec->line, "initial data must list one value per coordinate");
    }

    // Anything left over is a section this dialect does not know.
    for (const auto& sec : rd.sections()) {
        static const std::set<std::string> plain = {"system",   "lagrangian", "hamiltonian",
                                                    "equation", "mass",       "force",
                                                    "conserve", "simulate"};
        bool prefixed = sec.name.rfind("frame.", 0) == 0 || sec.name.rfind("change.", 0) == 0 ||
                        sec.name.rfind("symmetry.", 0) == 0 || sec.name.rfind("gauge.", 0) == 0;
        if (!plain.count(sec.name) && !prefixed)
            rd.fail(sec.line, "unknown section [" + sec.name + "]");
    }

    return out;
}

system_file load_system(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_system(buf.str(), path);
}

} // namespace geomech

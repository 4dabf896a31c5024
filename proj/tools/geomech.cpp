// Part of geomech. SPDX-License-Identifier: MIT
//
// Command-line front end: loads a system definition file, dispatches one
// derivation/check/simulation subcommand, and prints a text report. --out
// mirrors the same names, verdicts and numbers into a JSON file.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <geomech/calculus.hpp>
#include <geomech/dynamics.hpp>
#include <geomech/frames.hpp>
#include <geomech/hamiltonian.hpp>
#include <geomech/integrate.hpp>
#include <geomech/lagrangian.hpp>
#include <geomech/newtonian.hpp>
#include <geomech/symmetry.hpp>
#include <geomech/sysfile.hpp>
#include <geomech/zerotest.hpp>

using namespace geomech;
using json = nlohmann::ordered_json;

namespace
{

struct cli_options {
    std::string file;
    std::string out;
    std::string csv;
    std::uint64_t seed = 0;
    std::optional<double> step;
    std::optional<double> tmax;
    std::string frame;
    std::string change;
    std::string symmetry;
    std::string gauge;
    std::string conserve;
};

[[noreturn]] void fail(const std::string& msg)
{
    throw std::runtime_error(msg);
}

// Numbers are rendered once, with the JSON shortest-round-trip form, so the
// text report and the --out file carry byte-identical values.
std::string fmt(double x)
{
    return json(x).dump();
}

class reporter
{
public:
    reporter(std::string command, std::string system)
        : command_(std::move(command)), system_(std::move(system))
    {
        std::printf("command: %s\nsystem: %s\nresults:\n", command_.c_str(), system_.c_str());
    }

    void expression(const std::string& name, const expr_ptr& e)
    {
        const std::string s = to_string(e);
        std::printf("  %s = %s\n", name.c_str(), s.c_str());
        json r;
        r["name"] = name;
        r["expression"] = s;
        results_.push_back(std::move(r));
    }

    void verdict(const std::string& name, const zero_report& z)
    {
        std::printf("  %s: %s (samples %d, max %s)\n", name.c_str(), to_string(z.verdict),
                    z.samples, fmt(z.max_abs).c_str());
        json r;
        r["name"] = name;
        r["verdict"] = to_string(z.verdict);
        r["samples"] = z.samples;
        r["max_abs"] = z.max_abs;
        results_.push_back(std::move(r));
    }

    void verdict(const std::string& name, const std::string& v)
    {
        std::printf("  %s: %s\n", name.c_str(), v.c_str());
        json r;
        r["name"] = name;
        r["verdict"] = v;
        results_.push_back(std::move(r));
    }

    void stats(const std::string& name, const drift_stats& d)
    {
        std::printf("  %s: initial %s, max_abs %s, max_rel %s\n", name.c_str(),
                    fmt(d.initial).c_str(), fmt(d.max_abs).c_str(), fmt(d.max_rel).c_str());
        json r;
        r["name"] = name;
        r["stats"] = {{"initial", d.initial}, {"max_abs", d.max_abs}, {"max_rel", d.max_rel}};
        results_.push_back(std::move(r));
    }

    void write(const std::string& path) const
    {
        if (path.empty())
            return;
        json j;
        j["command"] = command_;
        j["system"] = system_;
        j["results"] = results_;
        std::ofstream os(path);
        if (!os)
            fail("cannot write '" + path + "'");
        os << j.dump(2) << '\n';
    }

private:
    std::string command_;
    std::string system_;
    json results_ = json::array();
};

std::string idx(std::size_t i)
{
    return std::to_string(i + 1);
}

lagrangian require_lagrangian(const system_file& f)
{
    if (f.kind != source_kind::lagrangian)
        fail("this subcommand needs a [lagrangian] section");
    return lagrangian(f.cs, f.density);
}

hamiltonian file_hamiltonian(const system_file& f, std::uint64_t seed)
{
    if (f.kind == source_kind::hamiltonian)
        return hamiltonian(f.phase, f.density);
    if (f.kind == source_kind::lagrangian)
        return legendre_invert(lagrangian(f.cs, f.density), seed);
    fail("this subcommand needs a [lagrangian] or [hamiltonian] section");
}

second_order_equation make_equation(const system_file& f)
{
    if (f.kind == source_kind::lagrangian)
        return lagrangian_connection(lagrangian(f.cs, f.density));
    if (f.kind == source_kind::equation)
        return second_order_equation(f.cs, f.xi);
    fail("this subcommand needs a [lagrangian] or [equation] section");
}

// The operator the variationality check runs on: variational derivatives
// when a density is declared, mass-weighted residuals m_ik (q^k_tt - xi^k)
// when a mass block accompanies an equation, q^i_tt - xi^i otherwise.
lagrange_operator helmholtz_source(const system_file& f)
{
    if (f.kind == source_kind::lagrangian)
        return euler_lagrange(lagrangian(f.cs, f.density));
    if (f.kind != source_kind::equation)
        fail("helmholtz needs a [lagrangian] or [equation] section");
    const std::size_t n = f.cs.dim();
    std::vector<expr_ptr> E;
    for (std::size_t i = 0; i < n; ++i) {
        if (f.mass.empty()) {
            E.push_back(f.cs.qtt(i) - f.xi[i]);
            continue;
        }
        expr_ptr row = zero();
        for (std::size_t k = 0; k < n; ++k)
            row = row + f.mass[i][k] * (f.cs.qtt(k) - f.xi[k]);
        E.push_back(row);
    }
    return lagrange_operator(f.cs, E);
}

reference_frame pick_frame(const system_file& f, const std::string& flag)
{
    if (f.frames.empty())
        fail("the file declares no [frame.NAME] section");
    if (!flag.empty()) {
        auto it = f.frames.find(flag);
        if (it == f.frames.end())
            fail("no frame named '" + flag + "'");
        return reference_frame(f.cs, it->second);
    }
    if (f.frames.size() > 1)
        fail("several frames declared; pick one with --frame");
    return reference_frame(f.cs, f.frames.begin()->second);
}

coordinate_change pick_change(const system_file& f, const std::string& flag)
{
    if (f.changes.empty())
        fail("the file declares no [change.NAME] section");
    if (!flag.empty()) {
        auto it = f.changes.find(flag);
        if (it == f.changes.end())
            fail("no change named '" + flag + "'");
        return coordinate_change(f.cs, it->second.forward, it->second.inverse);
    }
    if (f.changes.size() > 1)
        fail("several changes declared; pick one with --change");
    const auto& ch = f.changes.begin()->second;
    return coordinate_change(f.cs, ch.forward, ch.inverse);
}

// All declared entries, or the named one when the flag is set.
template <typename T>
std::vector<std::pair<std::string, const T*>> pick_all(const std::map<std::string, T>& m,
                                                       const std::string& flag,
                                                       const std::string& what)
{
    if (m.empty())
        fail("the file declares no [" + what + ".NAME] section");
    std::vector<std::pair<std::string, const T*>> out;
    if (flag.empty()) {
        for (const auto& [k, v] : m)
            out.emplace_back(k, &v);
        return out;
    }
    auto it = m.find(flag);
    if (it == m.end())
        fail("no " + what + " named '" + flag + "'");
    out.emplace_back(it->first, &it->second);
    return out;
}

int run_helmholtz(const system_file& f, const cli_options& opt, reporter& rep)
{
    const auto op = helmholtz_source(f);
    for (std::size_t i = 0; i < op.E.size(); ++i)
        rep.expression("E_" + idx(i), op.E[i]);
    const auto hr = helmholtz_check(op, opt.seed);
    auto family = [&](const char* name, const std::vector<helmholtz_entry>& rows) {
        for (const auto& r : rows) {
            const std::string tag =
                std::string(name) + "[" + idx(r.i) + "," + idx(r.j) + "]";
            rep.verdict(tag, r.verdict);
            if (r.verdict.verdict != zero_verdict::zero)
                rep.expression(tag + " residual", r.residual);
        }
    };
    family("position", hr.position_rows);
    family("velocity", hr.velocity_rows);
    family("acceleration", hr.acceleration_rows);
    rep.verdict("variational",
                hr.contradicted() ? "contradicted" : hr.proven() ? "proven" : "unknown");
    return hr.contradicted() ? 2 : 0;
}

int run_geodesic(const system_file& f, const cli_options& opt, reporter& rep)
{
    const auto eq = make_equation(f);
    if (!opt.frame.empty()) {
        const auto fr = pick_frame(f, opt.frame);
        const auto verdicts = is_geodesic_frame(eq, fr);
        bool ok = true;
        for (std::size_t i = 0; i < verdicts.size(); ++i) {
            rep.verdict("component " + idx(i), verdicts[i]);
            ok = ok && verdicts[i].verdict == zero_verdict::zero;
        }
        rep.verdict("geodesic frame", ok ? "yes" : "no");
        return ok ? 0 : 2;
    }
    const auto tc = geodesic_connection(eq);
    const auto rhs = geodesic_rhs(tc);
    for (std::size_t i = 0; i < rhs.size(); ++i) {
        rep.expression("xi_" + idx(i), rhs[i]);
        rep.verdict("reproduces equation " + idx(i), is_zero(f.cs, rhs[i] - eq.xi[i], opt.seed));
    }
    return 0;
}

int run_newton_check(const system_file& f, const cli_options& opt, reporter& rep)
{
    if (f.kind != source_kind::equation || f.mass.empty())
        fail("newton-check needs [equation] and [mass] sections");
    const mass_tensor m(f.cs, f.mass);
    const second_order_equation eq(f.cs, f.xi);
    const auto nr = check_newtonian(m, eq, opt.seed);
    for (const auto& r : nr.velocity_symmetry)
        rep.verdict("mass-velocity[" + idx(r.i) + "," + idx(r.j) + "," + idx(r.k) + "]",
                    r.verdict);
    for (const auto& r : nr.compatibility)
        rep.verdict("compatibility[" + idx(r.i) + "," + idx(r.j) + "]", r.verdict);
    rep.verdict("newtonian",
                nr.contradicted() ? "contradicted" : nr.proven() ? "proven" : "unknown");
    return nr.contradicted() ? 2 : 0;
}

int run_symmetry_check(const system_file& f, const cli_options& opt, reporter& rep)
{
    const auto picks = pick_all(f.symmetries, opt.symmetry, "symmetry");
    int rc = 0;
    if (f.kind == source_kind::lagrangian) {
        const lagrangian L(f.cs, f.density);
        for (const auto& [name, s] : picks) {
            const jet_field u(f.cs, s->ut, s->u);
            const auto r = classify_symmetry(u, L, s->sigma, opt.seed);
            rep.verdict(name, to_string(r.cls));
            if (r.cls == symmetry_class::variational && r.sigma)
                rep.expression(name + " sigma", r.sigma);
            if (r.cls == symmetry_class::not_shown) {
                rep.expression(name + " residual", r.residual);
                rc = 2;
            }
        }
        return rc;
    }
    if (f.kind == source_kind::hamiltonian) {
        const hamiltonian H(f.phase, f.density);
        for (const auto& [name, s] : picks) {
            if (s->sigma)
                fail("sigma is a lagrangian-side datum; drop it for a hamiltonian source");
            const jet_field u(f.cs, s->ut, s->u);
            const auto r = hamiltonian_symmetry_current(u, H, opt.seed);
            rep.verdict(name, to_string(r.cls));
            if (r.cls != symmetry_class::exact) {
                rep.expression(name + " residual", r.residual);
                rc = 2;
            }
        }
        return rc;
    }
    fail("symmetry-check needs a [lagrangian] or [hamiltonian] section");
}

int run_current(const system_file& f, const cli_options& opt, reporter& rep)
{
    const auto picks = pick_all(f.symmetries, opt.symmetry, "symmetry");
    if (f.kind == source_kind::lagrangian) {
        const lagrangian L(f.cs, f.density);
        for (const auto& [name, s] : picks)
            rep.expression(name, symmetry_current(jet_field(f.cs, s->ut, s->u), L, s->sigma));
        return 0;
    }
    if (f.kind == source_kind::hamiltonian) {
        const hamiltonian H(f.phase, f.density);
        for (const auto& [name, s] : picks)
            rep.expression(
                name, hamiltonian_symmetry_current(jet_field(f.cs, s->ut, s->u), H, opt.seed)
                          .current);
        return 0;
    }
    fail("current needs a [lagrangian] or [hamiltonian] section");
}

int run_noether(const system_file& f, const cli_options& opt, reporter& rep)
{
    const auto op = euler_lagrange(require_lagrangian(f));
    const auto picks = pick_all(f.gauges, opt.gauge, "gauge");
    int rc = 0;
    for (const auto& [name, g] : picks) {
        const gauge_symmetry gs(f.cs, {g->u0}, {g->u1}, {g->u2});
        for (const auto& id : noether_identity_check(gs, op, opt.seed)) {
            rep.verdict(name, id.verdict);
            if (id.verdict.verdict != zero_verdict::zero) {
                rep.expression(name + " residual", id.residual);
                rc = 2;
            }
        }
    }
    return rc;
}

int run_simulation(const system_file& f, const cli_options& opt, reporter& rep,
                   bool restricted)
{
    if (!f.sim.present)
        fail("the file has no [simulate] section");
    integrator_config cfg;
    cfg.t0 = f.sim.t0;
    cfg.t1 = opt.tmax.value_or(f.sim.tmax);
    cfg.h = opt.step.value_or(f.sim.step);
    cfg.stride = static_cast<std::size_t>(f.sim.stride);

    trajectory traj;
    const coord_system* home = nullptr;
    if (f.kind == source_kind::hamiltonian) {
        if (f.sim.q0.empty() || f.sim.p0.empty())
            fail("a hamiltonian simulation needs q0 and p0");
        const hamiltonian H(f.phase, f.density);
        traj = integrate_hamilton(H, f.sim.q0, f.sim.p0, cfg);
        home = &f.phase;
    } else {
        if (f.sim.q0.empty() || f.sim.v0.empty())
            fail("simulation needs q0 and v0");
        traj = integrate_dynamic(make_equation(f), f.sim.q0, f.sim.v0, cfg);
        home = &f.cs;
    }
    rep.verdict("trajectory", std::to_string(traj.times.size()) + " samples at h = " +
                                  fmt(traj.h));

    if (!opt.csv.empty()) {
        std::ofstream os(opt.csv);
        if (!os)
            fail("cannot write '" + opt.csv + "'");
        write_csv(os, traj);
    }

    auto list = f.conserved;
    if (restricted && !opt.conserve.empty()) {
        std::vector<std::pair<std::string, expr_ptr>> chosen;
        std::string token;
        std::istringstream names(opt.conserve);
        while (std::getline(names, token, ',')) {
            auto it = std::find_if(list.begin(), list.end(),
                                   [&](const auto& c) { return c.first == token; });
            if (it == list.end())
                fail("no [conserve] entry named '" + token + "'");
            chosen.push_back(*it);
        }
        list = std::move(chosen);
    }
    for (const auto& [name, e] : list)
        rep.stats(name, conservation_drift(*home, e, traj));
    return 0;
}

int run(const std::string& cmd, const system_file& f, const cli_options& opt, reporter& rep)
{
    const std::size_t n = f.cs.dim();

    if (cmd == "derive-el") {
        const auto op = euler_lagrange(require_lagrangian(f));
        for (std::size_t i = 0; i < n; ++i)
            rep.expression("E_" + idx(i), op.E[i]);
        return 0;
    }
    if (cmd == "helmholtz")
        return run_helmholtz(f, opt, rep);
    if (cmd == "legendre") {
        const auto ld = legendre(require_lagrangian(f), opt.seed);
        for (std::size_t i = 0; i < n; ++i)
            rep.expression("pi_" + idx(i), ld.pi[i]);
        rep.expression("det", ld.det);
        rep.verdict("regularity", to_string(ld.tag));
        return 0;
    }
    if (cmd == "hamiltonize") {
        rep.expression("H", legendre_invert(require_lagrangian(f), opt.seed).density());
        return 0;
    }
    if (cmd == "hamilton-eqs") {
        const auto eqs = hamilton_equations(file_hamiltonian(f, opt.seed));
        for (std::size_t i = 0; i < n; ++i)
            rep.expression(f.phase.fibre(i) + "'", eqs.q_rhs[i]);
        for (std::size_t i = 0; i < n; ++i)
            rep.expression(f.phase.fibre(n + i) + "'", eqs.p_rhs[i]);
        return 0;
    }
    if (cmd == "connection") {
        const auto g = connection_from_equation(make_equation(f));
        for (std::size_t i = 0; i < n; ++i)
            rep.expression("gamma0[" + idx(i) + "]", g.gamma0[i]);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                rep.expression("gamma[" + idx(i) + "," + idx(j) + "]", g.gamma[i][j]);
        return 0;
    }
    if (cmd == "curvature") {
        const auto cr = curvature(connection_from_equation(make_equation(f)));
        bool flat = true;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                const auto v = is_zero(f.cs, cr.Rbar[i][j], opt.seed);
                rep.verdict("Rbar[" + idx(i) + "," + idx(j) + "]", v);
                flat = flat && v.verdict == zero_verdict::zero;
            }
        rep.expression("Rtilde", cr.Rtilde);
        rep.verdict("flat", flat ? "yes" : "no");
        return 0;
    }
    if (cmd == "geodesic")
        return run_geodesic(f, opt, rep);
    if (cmd == "frame-transform") {
        const auto out = transform_equation(make_equation(f), pick_change(f, opt.change));
        for (std::size_t i = 0; i < n; ++i)
            rep.expression("xi_" + idx(i), out.xi[i]);
        return 0;
    }
    if (cmd == "relative-accel") {
        const auto ra = relative_acceleration(make_equation(f), pick_frame(f, opt.frame));
        for (std::size_t i = 0; i < n; ++i)
            rep.expression("a_" + idx(i), ra[i]);
        return 0;
    }
    if (cmd == "coriolis") {
        const auto eq = make_equation(f);
        const auto fr = pick_frame(f, opt.frame);
        const auto cd = coriolis_decomposition(eq, fr);
        const auto ra = relative_acceleration(eq, fr);
        int rc = 0;
        for (std::size_t i = 0; i < n; ++i) {
            rep.expression("a_" + idx(i), cd[i]);
            const auto v = is_zero(f.cs, cd[i] - ra[i], opt.seed);
            rep.verdict("matches relative acceleration " + idx(i), v);
            if (v.verdict != zero_verdict::zero)
                rc = 2;
        }
        return rc;
    }
    if (cmd == "newton-check")
        return run_newton_check(f, opt, rep);
    if (cmd == "symmetry-check")
        return run_symmetry_check(f, opt, rep);
    if (cmd == "current")
        return run_current(f, opt, rep);
    if (cmd == "noether-identities")
        return run_noether(f, opt, rep);
    if (cmd == "simulate")
        return run_simulation(f, opt, rep, true);
    if (cmd == "conserve") {
        if (f.conserved.empty())
            fail("the file has no [conserve] section");
        return run_simulation(f, opt, rep, false);
    }
    fail("unknown subcommand '" + cmd + "'");
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"symbolic and numeric toolkit for time-dependent mechanics"};
    app.require_subcommand(1);

    cli_options opt;
    static const std::pair<const char*, const char*> commands[] = {
        {"derive-el", "variational derivatives of the declared density"},
        {"helmholtz", "three-family variationality check of the operator"},
        {"legendre", "momenta, velocity Hessian and regularity of the density"},
        {"hamiltonize", "closed-form Hamiltonian of a velocity-quadratic density"},
        {"hamilton-eqs", "first-order canonical equations"},
        {"connection", "dynamic connection attached to the equation"},
        {"curvature", "curvature verdicts of the dynamic connection"},
        {"geodesic", "geodesic split, or frame verdicts with --frame"},
        {"frame-transform", "equation rewritten through a coordinate change"},
        {"relative-accel", "acceleration relative to a reference frame"},
        {"coriolis", "transport/Coriolis decomposition against a frame"},
        {"newton-check", "mass/equation compatibility verdicts"},
        {"symmetry-check", "classify the declared symmetry candidates"},
        {"current", "conserved currents of the declared symmetries"},
        {"noether-identities", "differential identities of gauge families"},
        {"simulate", "integrate; write trajectory CSV and drift table"},
        {"conserve", "drift table over every declared conserved quantity"},
    };
    for (const auto& [name, desc] : commands) {
        auto* sc = app.add_subcommand(name, desc);
        sc->add_option("file", opt.file, "system definition file")->required();
        sc->add_option("--out", opt.out, "write the report as JSON");
        sc->add_option("--csv", opt.csv, "write the trajectory as CSV");
        sc->add_option("--seed", opt.seed, "seed for the sampling zero test");
        sc->add_option("--step", opt.step, "integration step override");
        sc->add_option("--tmax", opt.tmax, "integration end time override");
        sc->add_option("--frame", opt.frame, "reference frame name");
        sc->add_option("--change", opt.change, "coordinate change name");
        sc->add_option("--symmetry", opt.symmetry, "symmetry candidate name");
        sc->add_option("--gauge", opt.gauge, "gauge family name");
        sc->add_option("--conserve", opt.conserve, "comma-separated conserved quantities");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    const std::string cmd = app.get_subcommands().front()->get_name();
    try {
        const system_file f = load_system(opt.file);
        reporter rep(cmd, opt.file);
        const int rc = run(cmd, f, opt, rep);
        rep.write(opt.out);
        return rc;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "geomech: %s\n", e.what());
        return 1;
    }
}

// Part of geomech. SPDX-License-Identifier: MIT

#include <geomech/integrate.hpp>

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>

#include <geomech/eval.hpp>

namespace geomech
{

namespace
{

void check_config(const integrator_config& cfg)
{
    if (!(cfg.h > 0)) {
        throw std::invalid_argument("step size must be positive");
    }
    if (!(cfg.t1 > cfg.t0)) {
        throw std::invalid_argument("integration span is empty");
    }
    if (cfg.stride == 0) {
        throw std::invalid_argument("stride must be at least 1");
    }
}

[[noreturn]] void abort_at(double t)
{
    throw std::domain_error("integration left the domain near t = " + std::to_string(t));
}

// Classical RK4 over the compiled system y' = f(t, y). The column layout is
// (t, y...), so cols[0] carries the stage time.
trajectory run_rk4(const std::vector<compiled_expr>& f, std::vector<std::string> columns,
                   const std::vector<double>& y0, const integrator_config& cfg,
                   trajectory_kind kind)
{
    const std::size_t m = y0.size();
    const long long nsteps = std::llround((cfg.t1 - cfg.t0) / cfg.h);
    if (nsteps < 1) {
        throw std::invalid_argument("span shorter than one step");
    }

    trajectory out;
    out.kind = kind;
    out.columns = std::move(columns);
    out.h = cfg.h;
    out.method = "rk4";

    std::vector<double> scratch;
    std::vector<double> cols(m + 1);
    std::vector<double> y = y0;
    std::vector<double> k1(m), k2(m), k3(m), k4(m), stage(m);

    auto deriv = [&](double t, const std::vector<double>& state, std::vector<double>& k) {
        cols[0] = t;
        for (std::size_t i = 0; i < m; ++i) {
            cols[i + 1] = state[i];
        }
        for (std::size_t i = 0; i < m; ++i) {
            k[i] = f[i](cols.data(), scratch);
            if (!std::isfinite(k[i])) {
                abort_at(t);
            }
        }
    };

    auto record = [&](double t) {
        out.times.push_back(t);
        out.rows.push_back(y);
    };

    record(cfg.t0);
    for (long long s = 0; s < nsteps; ++s) {
        const double t = cfg.t0 + (double)s * cfg.h;
        const double h = cfg.h;

        deriv(t, y, k1);
        for (std::size_t i = 0; i < m; ++i) {
            stage[i] = y[i] + 0.5 * h * k1[i];
        }
        deriv(t + 0.5 * h, stage, k2);
        for (std::size_t i = 0; i < m; ++i) {
            stage[i] = y[i] + 0.5 * h * k2[i];
        }
        deriv(t + 0.5 * h, stage, k3);
        for (std::size_t i = 0; i < m; ++i) {
            stage[i] = y[i] + h * k3[i];
        }
        deriv(t + h, stage, k4);

        for (std::size_t i = 0; i < m; ++i) {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            if (!std::isfinite(y[i])) {
                abort_at(t + h);
            }
        }
        if ((s + 1) % (long long)cfg.stride == 0 || s + 1 == nsteps) {
            record(cfg.t0 + (double)(s + 1) * cfg.h);
        }
    }
    return out;
}

} // namespace

trajectory integrate_dynamic(const second_order_equation& eq, const std::vector<double>& q0,
                             const std::vector<double>& v0, const integrator_config& cfg)
{
    check_config(cfg);
    const coord_system& cs = eq.cs;
    const std::size_t n = cs.dim();
    if (q0.size() != n || v0.size() != n) {
        throw std::invalid_argument("initial data has wrong dimension");
    }

    std::vector<std::string> columns;
    columns.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        columns.push_back(cs.fibre(i));
    }
    for (std::size_t i = 0; i < n; ++i) {
        columns.push_back(cs.velocity(i));
    }

    std::vector<std::string> layout{"t"};
    layout.insert(layout.end(), columns.begin(), columns.end());

    std::vector<compiled_expr> f;
    f.reserve(2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        f.emplace_back(cs, cs.qt(i), layout); // q' = v
    }
    for (std::size_t i = 0; i < n; ++i) {
        f.emplace_back(cs, eq.xi[i], layout);
    }

    std::vector<double> y0;
    y0.reserve(2 * n);
    y0.insert(y0.end(), q0.begin(), q0.end());
    y0.insert(y0.end(), v0.begin(), v0.end());

    return run_rk4(f, std::move(columns), y0, cfg, trajectory_kind::dynamic);
}

trajectory integrate_flow(const coord_system& cs, const std::vector<expr_ptr>& rhs,
                          const std::vector<double>& y0, const integrator_config& cfg,
                          trajectory_kind kind)
{
    check_config(cfg);
    const std::size_t n = cs.dim();
    if (rhs.size() != n || y0.size() != n) {
        throw std::invalid_argument("flow data has wrong dimension");
    }

    std::vector<std::string> columns = cs.fibres();
    std::vector<std::string> layout{"t"};
    layout.insert(layout.end(), columns.begin(), columns.end());

    std::vector<compiled_expr> f;
    f.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        f.emplace_back(cs, rhs[i], layout);
    }
    return run_rk4(f, std::move(columns), y0, cfg, kind);
}

drift_stats conservation_drift(const coord_system& cs, const expr_ptr& e,
                               const trajectory& traj)
{
    if (traj.times.empty()) {
        throw std::invalid_argument("trajectory is empty");
    }
    std::vector<std::string> layout{"t"};
    layout.insert(layout.end(), traj.columns.begin(), traj.columns.end());
    compiled_expr value(cs, e, layout);

    std::vector<double> scratch;
    std::vector<double> cols(layout.size());
    drift_stats stats;
    for (std::size_t s = 0; s < traj.times.size(); ++s) {
        cols[0] = traj.times[s];
        for (std::size_t i = 0; i < traj.columns.size(); ++i) {
            cols[i + 1] = traj.rows[s][i];
        }
        double v = value(cols.data(), scratch);
        if (s == 0) {
            stats.initial = v;
        }
        stats.max_abs = std::max(stats.max_abs, std::abs(v - stats.initial));
    }
    const double denom = std::abs(stats.initial) > 1e-12 ? std::abs(stats.initial) : 1.0;
    stats.max_rel = stats.max_abs / denom;
    return stats;
}

void write_csv(std::ostream& os, const trajectory& traj)
{
    os << "t";
    for (const auto& c : traj.columns) {
        os << "," << c;
    }
    os << "\n";
    char buf[32];
    for (std::size_t s = 0; s < traj.times.size(); ++s) {
        std::snprintf(buf, sizeof buf, "%.17g", traj.times[s]);
        os << buf;
        for (double v : traj.rows[s]) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            os << "," << buf;
        }
        os << "\n";
    }
}

} // namespace geomech

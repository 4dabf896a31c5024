// Part of geomech. SPDX-License-Identifier: MIT
//
// Fixed-step RK4 integration. A second-order equation reduces to first order
// on (q, q_t); any explicit first-order flow on the fibres integrates
// directly, which covers Hamilton equations on a phase system and frame
// transport. Right-hand sides are compiled once into flat programs, so the
// step loop never touches expression trees. Drift statistics quantify how
// well a would-be integral of motion holds up along a trajectory.

#ifndef GEOMECH_INTEGRATE_HPP
#define GEOMECH_INTEGRATE_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <geomech/coords.hpp>
#include <geomech/dynamics.hpp>
#include <geomech/expr.hpp>

namespace geomech
{

enum class trajectory_kind : std::uint8_t { dynamic, hamilton, flow };

struct trajectory {
    trajectory_kind kind = trajectory_kind::flow;
    std::vector<std::string> columns; // state names; the time column is implicit
    std::vector<double> times;
    std::vector<std::vector<double>> rows; // one state row per recorded time
    double h = 0;
    std::string method;
};

struct integrator_config {
    double t0 = 0;
    double t1 = 1;
    double h = 1e-3;
    std::size_t stride = 1; // record every stride-th step; endpoints always
};

// First-order reduction q' = v, v' = xi(t, q, v); rows are (q, q_t).
trajectory integrate_dynamic(const second_order_equation& eq, const std::vector<double>& q0,
                             const std::vector<double>& v0, const integrator_config& cfg);

// Explicit flow y' = rhs(t, y) on the fibres of cs, one component per fibre.
// On a phase system with rhs = (dH/dp, -dH/dq) this is the Hamilton flow.
trajectory integrate_flow(const coord_system& cs, const std::vector<expr_ptr>& rhs,
                          const std::vector<double>& y0, const integrator_config& cfg,
                          trajectory_kind kind = trajectory_kind::flow);

struct drift_stats {
    double initial = 0;
    double max_abs = 0; // max |value - initial|
    double max_rel = 0; // max_abs over |initial|, or absolute when initial ~ 0
};

drift_stats conservation_drift(const coord_system& cs, const expr_ptr& e,
                               const trajectory& traj);

// Header "t,<columns>", one row per sample, %.17g throughout.
void write_csv(std::ostream& os, const trajectory& traj);

} // namespace geomech

#endif

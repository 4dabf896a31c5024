// Part of geomech. SPDX-License-Identifier: MIT
//
// Reference frames as time-directed vector fields Gamma = d_t + Gamma^i d_i
// on configuration space: relative velocity and acceleration of a dynamic
// equation with respect to a frame, the frame connection, the Coriolis-style
// affine decomposition of relative acceleration, coordinate transport of
// equations, and free motion equations generated from coordinate changes.

#ifndef GEOMECH_FRAMES_HPP
#define GEOMECH_FRAMES_HPP

#include <vector>

#include <geomech/coords.hpp>
#include <geomech/dynamics.hpp>
#include <geomech/expr.hpp>
#include <geomech/zerotest.hpp>

namespace geomech
{

// Gamma components depend on (t, q) only.
struct reference_frame {
    reference_frame(coord_system cs, std::vector<expr_ptr> Gamma);

    coord_system cs;
    std::vector<expr_ptr> Gamma;
};

// An invertible change of fibre coordinates over time, written with the same
// symbol names on both sides: forward[a] gives the new a-th coordinate as a
// function of (t, old q), inverse[i] the old i-th as a function of (t, new q).
// Construction verifies forward o inverse and inverse o forward are the
// identity (symbolically when possible, else at sample points).
struct coordinate_change {
    coordinate_change(coord_system cs, std::vector<expr_ptr> forward,
                      std::vector<expr_ptr> inverse);

    coord_system cs;
    std::vector<expr_ptr> forward;
    std::vector<expr_ptr> inverse;
};

// first, then applied after it: forward maps compose left-to-right.
coordinate_change compose(const coordinate_change& first, const coordinate_change& then);

std::vector<expr_ptr> relative_velocity(const reference_frame& fr);

second_order_equation transform_equation(const second_order_equation& eq,
                                         const coordinate_change& ch);

// The dynamic connection adapted to the frame.
dynamic_connection frame_connection(const dynamic_connection& g, const reference_frame& fr);

std::vector<expr_ptr> relative_acceleration(const second_order_equation& eq,
                                            const reference_frame& fr);

// Affine decomposition of the relative acceleration of a velocity-quadratic
// equation (transport plus Coriolis term); agrees with relative_acceleration.
std::vector<expr_ptr> coriolis_decomposition(const second_order_equation& eq,
                                             const reference_frame& fr);

// Per-component verdicts on d_t Gamma^i - xi^i(t, q, Gamma): all zero means
// integral curves of the frame solve the equation.
std::vector<zero_report> is_geodesic_frame(const second_order_equation& eq,
                                           const reference_frame& fr);

// Transport of q_tt = 0 through the change.
second_order_equation free_motion_equation(const coordinate_change& ch);

} // namespace geomech

#endif

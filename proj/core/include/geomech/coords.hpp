// Part of geomech. SPDX-License-Identifier: MIT
//
// Coordinate systems for time-dependent mechanics on a configuration bundle
// over the time axis. A system fixes the fibre coordinate names, derives the
// jet names of each order ("q1" -> "q1_t" -> "q1_tt" -> ...), and registers
// the auxiliary symbols expressions may mention: conjugate momenta, declared
// parameters, and the constant "pi".

#ifndef GEOMECH_COORDS_HPP
#define GEOMECH_COORDS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <geomech/expr.hpp>

namespace geomech
{

enum class symbol_role : std::uint8_t { time, jet, momentum, param, constant };

struct symbol_info {
    symbol_role role;
    std::size_t index = 0; // fibre or momentum slot
    unsigned order = 0;    // jet order, 0 for the fibre itself
};

// Immutable; the with_* methods return modified copies. Jet names above the
// cap are rejected, which keeps symbolic total derivatives from silently
// walking up an unbounded tower.
class coord_system
{
public:
    coord_system() = default;

    // Fibres named q1..qn.
    static coord_system cartesian(std::size_t dim);
    static coord_system with_fibres(std::vector<std::string> fibres);

    // Phase-space companion: fibres (q1..qn, p1..pn) of the base system, with
    // the standalone momentum symbols absorbed into the fibres.
    static coord_system phase_of(const coord_system& base);

    coord_system with_params(const std::vector<std::string>& names) const;
    coord_system with_param(const std::string& name) const;
    coord_system with_param(const std::string& name, double value) const;
    coord_system with_jet_cap(unsigned cap) const;
    coord_system with_extra_fibres(const std::vector<std::string>& names) const;

    std::size_t dim() const;
    std::size_t base_dim() const; // equals dim() except for phase systems
    bool is_phase() const;
    unsigned jet_cap() const;

    const std::vector<std::string>& fibres() const;
    const std::string& fibre(std::size_t i) const;
    std::string jet(std::size_t i, unsigned order) const;
    std::string velocity(std::size_t i) const;
    std::string acceleration(std::size_t i) const;
    std::string momentum(std::size_t i) const;

    const std::vector<std::string>& params() const;
    const std::map<std::string, double>& param_values() const;
    bool has_param_value(const std::string& name) const;
    double param_value(const std::string& name) const;

    bool knows(const std::string& name) const;
    const symbol_info* classify(const std::string& name) const;

    // Validated symbol builders.
    expr_ptr sym(const std::string& name) const;
    expr_ptr time_sym() const;
    expr_ptr q(std::size_t i) const;
    expr_ptr qt(std::size_t i) const;
    expr_ptr qtt(std::size_t i) const;
    expr_ptr p(std::size_t i) const;

    struct impl;

private:
    explicit coord_system(std::shared_ptr<const impl> m);
    std::shared_ptr<const impl> m_;
};

} // namespace geomech

#endif

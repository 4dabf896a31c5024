// Part of geomech. SPDX-License-Identifier: MIT
//
// System-definition files: a strict INI dialect with [section] headers,
// key = value lines, # comments, and values that are numbers, quoted
// expression strings, or bracketed lists of either. A file declares its
// coordinate system once and exactly one dynamical source (a lagrangian
// density, a hamiltonian density, or an explicit second-order equation),
// plus any number of named frames, coordinate changes, symmetries, gauge
// families, conserved-quantity candidates, a mass tensor, an external force,
// and simulation settings. Loading validates every expression against the
// declared system and reports failures with the file line that caused them.

#ifndef GEOMECH_SYSFILE_HPP
#define GEOMECH_SYSFILE_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <geomech/coords.hpp>
#include <geomech/expr.hpp>
#include <geomech/linalg.hpp>

namespace geomech
{

class sysfile_error : public std::runtime_error
{
public:
    sysfile_error(const std::string& origin, std::size_t line, const std::string& what)
        : std::runtime_error(origin + ":" + std::to_string(line) + ": " + what), line(line)
    {
    }

    std::size_t line;
};

enum class source_kind : std::uint8_t { lagrangian, hamiltonian, equation };

const char* to_string(source_kind k);

struct change_entry {
    std::vector<expr_ptr> forward;
    std::vector<expr_ptr> inverse;
};

struct symmetry_entry {
    int ut = 0;
    std::vector<expr_ptr> u;
    expr_ptr sigma; // null unless given
};

struct gauge_entry {
    std::vector<expr_ptr> u0;
    std::vector<expr_ptr> u1;
    std::vector<expr_ptr> u2;
};

struct simulate_settings {
    bool present = false;
    std::vector<double> q0; // empty when not given
    std::vector<double> v0;
    std::vector<double> p0;
    double t0 = 0.0;
    double tmax = 1.0;
    double step = 1e-3;
    long stride = 1;
};

struct system_file {
    coord_system cs;    // configuration system of [system]
    coord_system phase; // its phase companion

    source_kind kind = source_kind::lagrangian;
    expr_ptr density;        // lagrangian (on cs) or hamiltonian (on phase)
    std::vector<expr_ptr> xi; // equation right-hand sides, empty otherwise

    expr_matrix mass;            // empty when no [mass]
    std::vector<expr_ptr> force; // empty when no [force]
    std::map<std::string, std::vector<expr_ptr>> frames;
    std::map<std::string, change_entry> changes;
    std::map<std::string, symmetry_entry> symmetries;
    std::map<std::string, gauge_entry> gauges;

    // [conserve] entries in file order; hamiltonian sources parse them on
    // the phase system, the others on the configuration system.
    std::vector<std::pair<std::string, expr_ptr>> conserved;

    simulate_settings sim;
};

// Parse from text; origin only labels error messages.
system_file parse_system(const std::string& text, const std::string& origin = "<memory>");

system_file load_system(const std::string& path);

} // namespace geomech

#endif

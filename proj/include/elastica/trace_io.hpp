#pragma once

#include <fstream>
#include <iomanip>
#include <stdexcept>
#include <string>

#include "elastica/solver.hpp"

namespace elastica {

// Stable CSV schema: one row per recorded iteration, 15 significant digits.
inline void write_trace_csv(const EnergyTrace& trace, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error(path + ": cannot open trace file for writing");
    out << "iter,E_total,E_elastica,E_fidelity,E_p13,E_lam13,E_proj23,E_u,rel_err\n";
    out << std::setprecision(15);
    for (const EnergyRecord& r : trace) {
        out << r.iter << ',' << r.e_total << ',' << r.e_elastica << ',' << r.e_fidelity << ','
            << r.e_p13 << ',' << r.e_lam13 << ',' << r.e_proj23 << ',' << r.e_u << ','
            << r.rel_err << '\n';
    }
    if (!out) throw std::runtime_error(path + ": trace write failed");
}

} // namespace elastica

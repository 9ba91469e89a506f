// errors.hpp: Imperfection models: staggered insertion of the two atom pairs
// and thermal (Fock-sector averaged) pulse fidelity.

#pragma once

#include "dfsqed/dynamics.hpp"
#include "dfsqed/gates.hpp"
#include "dfsqed/hilbert.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace dfsqed {

// --------------------------- Staggered insertion ----------------------------

// Atoms 1,2 enter the cavity t1 before atoms 3,4; the pair alone evolves with
// lambda = Omega / 2. Times may be in seconds or in units of 1/Omega.
struct StaggerParams {
    double omega = 1.0;
    double t = kRPulseArea;
    double t1 = 0.0;

    double lambda() const { return 0.5 * omega; }

    void validate() const {
        if (!(t >= 0.0)) throw std::invalid_argument("StaggerParams: t must be >= 0");
        if (!(t1 >= 0.0)) throw std::invalid_argument("StaggerParams: t1 must be >= 0");
        if (t1 > t) throw std::invalid_argument("StaggerParams: lead time t1 exceeds total time t");
    }

    // Omega t = pulse_area with Omega = 1, t1 = fraction * t.
    static StaggerParams from_fraction(double fraction, double pulse_area = kRPulseArea) {
        StaggerParams p{1.0, pulse_area, fraction * pulse_area};
        p.validate();
        return p;
    }
};

// Psi = cos(l t1){cos[W(t-t1)]|egeg> - i sin[W(t-t1)]|gege>}
//     - i sin(l t1){cos[W(t-t1)]|geeg> - i sin[W(t-t1)]|egge>}, common phase dropped.
inline StateVector staggered_state(const StaggerParams& p) {
    p.validate();
    const double lead = p.lambda() * p.t1;
    const double rest = p.omega * (p.t - p.t1);
    StateVector psi = StateVector::zero(0);
    auto set = [&psi](const char* label, cplx v) { psi.amplitudes()(static_cast<Eigen::Index>(atom_code(atoms(label)))) = v; };
    set("egeg", std::cos(lead) * std::cos(rest));
    set("gege", -kI * std::cos(lead) * std::sin(rest));
    set("geeg", -kI * std::sin(lead) * std::cos(rest));
    set("egge", -std::sin(lead) * std::sin(rest));
    return psi;
}

// Ideal R-type output from |egeg>: cos(W t)|egeg> - i sin(W t)|gege>.
inline StateVector ideal_pulse_state(const StaggerParams& p) {
    return dfs_propagate(StateVector::basis("egeg"), p.omega * p.t);
}

struct StaggerFidelity {
    double amplitude = 0.0;    // |<Psi_R|Psi>| from the states
    double squared = 0.0;
    double closed_form = 0.0;  // cos(lambda t1) cos(Omega t1)
    double consistency = 0.0;  // |amplitude - |closed_form||
};

inline StaggerFidelity staggered_fidelity(const StaggerParams& p) {
    StaggerFidelity f;
    f.amplitude = std::abs(inner(ideal_pulse_state(p), staggered_state(p)));
    f.squared = f.amplitude * f.amplitude;
    f.closed_form = std::cos(p.lambda() * p.t1) * std::cos(p.omega * p.t1);
    f.consistency = std::abs(f.amplitude - std::abs(f.closed_form));
    return f;
}

struct StaggerRow {
    double t1_fraction = 0.0;
    double amplitude = 0.0;
    double squared = 0.0;
};

inline std::vector<StaggerRow> stagger_sweep(const std::vector<double>& fractions, double pulse_area = kRPulseArea) {
    std::vector<StaggerRow> rows;
    rows.reserve(fractions.size());
    for (double fr : fractions) {
        if (!(fr >= 0.0 && fr <= 1.0)) throw std::invalid_argument("stagger_sweep: fractions must lie in [0, 1]");
        const StaggerFidelity f = staggered_fidelity(StaggerParams::from_fraction(fr, pulse_area));
        rows.push_back({fr, f.amplitude, f.squared});
    }
    return rows;
}

inline std::string format_g15(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

// t1_fraction,fidelity_amplitude,fidelity_squared with '\n' line endings.
inline std::string stagger_csv(const std::vector<StaggerRow>& rows) {
    std::string out = "t1_fraction,fidelity_amplitude,fidelity_squared\n";
    for (const auto& r : rows)
        out += format_g15(r.t1_fraction) + "," + format_g15(r.amplitude) + "," + format_g15(r.squared) + "\n";
    return out;
}

// --------------------------- Thermal cavity ---------------------------------

inline double thermal_weight(double nbar, int n) {
    return std::pow(nbar, n) / std::pow(nbar + 1.0, n + 1);
}

struct ThermalFidelity {
    double fidelity = 0.0;
    double captured_weight = 0.0;  // sum of included thermal weights
    int sectors = 0;
};

// F(nbar) = sum_n p_n |<target|psi_n>|^2: every sector runs for the time that
// gives pulse area `pulse_area_at_n0` at n = 0, so sector n sees
// Omega(n)/Omega(0) = 2n + 1 times that area. Sectors are added until the
// captured weight exceeds 1 - 1e-9.
inline ThermalFidelity fock_averaged_fidelity(double nbar, double pulse_area_at_n0,
                                              const StateVector& initial = StateVector::basis("egeg")) {
    if (!(nbar >= 0.0) || !std::isfinite(nbar)) throw std::invalid_argument("fock_averaged_fidelity: nbar must be finite and >= 0");
    const StateVector target = dfs_propagate(initial, pulse_area_at_n0);
    ThermalFidelity r;
    constexpr int kMaxSectors = 100000;
    for (int n = 0; n < kMaxSectors && r.captured_weight <= 1.0 - 1e-9; ++n) {
        const double w = thermal_weight(nbar, n);
        const StateVector psi = dfs_propagate(initial, pulse_area_at_n0 * (2.0 * n + 1.0));
        r.fidelity += w * fidelity(target, psi);
        r.captured_weight += w;
        r.sectors = n + 1;
    }
    return r;
}

}  // namespace dfsqed

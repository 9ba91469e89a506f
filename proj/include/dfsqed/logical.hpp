// logical.hpp: Logical qubits on atom pairs: |1~> = |eg>, |0~> = |ge>.
// Pair A = atoms (1,2), pair B = atoms (3,4).

#pragma once

#include "dfsqed/hilbert.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dfsqed {

// alpha multiplies |1~> = |eg>, beta multiplies |0~> = |ge>.
struct LogicalQubit {
    cplx alpha{1.0, 0.0};
    cplx beta{0.0, 0.0};

    double norm() const { return std::sqrt(std::norm(alpha) + std::norm(beta)); }
};

// Amplitudes over {|1~1~>, |1~0~>, |0~1~>, |0~0~>} = {egeg, egge, geeg, gege}.
struct LogicalState {
    std::array<cplx, 4> amps{};

    double norm() const {
        double s = 0.0;
        for (const cplx& a : amps) s += std::norm(a);
        return std::sqrt(s);
    }
};

inline const std::array<AtomConfig, 4>& logical_basis() {
    static const std::array<AtomConfig, 4> basis{atoms("egeg"), atoms("egge"), atoms("geeg"), atoms("gege")};
    return basis;
}

inline const std::array<std::string_view, 4>& logical_basis_names() {
    static const std::array<std::string_view, 4> names{"egeg", "egge", "geeg", "gege"};
    return names;
}

inline LogicalState encode_logical(const LogicalQubit& a, const LogicalQubit& b) {
    constexpr double tol = 1e-12;
    if (std::abs(a.norm() - 1.0) > tol) throw std::invalid_argument("encode_logical: pair A amplitudes not normalized");
    if (std::abs(b.norm() - 1.0) > tol) throw std::invalid_argument("encode_logical: pair B amplitudes not normalized");
    return {{a.alpha * b.alpha, a.alpha * b.beta, a.beta * b.alpha, a.beta * b.beta}};
}

inline StateVector embed(const LogicalState& s, int n = 0, int n_max = 0) {
    StateVector psi = StateVector::zero(n_max);
    const auto& basis = logical_basis();
    for (int k = 0; k < 4; ++k)
        psi.amplitudes()(static_cast<Eigen::Index>(basis_index(basis[k], n, n_max))) = s.amps[k];
    return psi;
}

inline double code_space_weight(const StateVector& psi, int n = 0) {
    double w = 0.0;
    for (const auto& cfg : logical_basis()) w += psi.probability(cfg, n);
    return w;
}

// Projection onto the code space at photon number n; rejects states with
// more than 1e-12 probability outside it.
inline LogicalState decode_logical(const StateVector& psi, int n = 0) {
    const double outside = psi.norm() * psi.norm() - code_space_weight(psi, n);
    if (outside > 1e-12)
        throw std::invalid_argument("decode_logical: state has weight " + std::to_string(outside) +
                                    " outside the logical code space");
    LogicalState s;
    const auto& basis = logical_basis();
    for (int k = 0; k < 4; ++k) s.amps[k] = psi.amplitude(basis[k], n);
    return s;
}

struct PairFactors {
    LogicalQubit a;
    LogicalQubit b;
    cplx global_phase{1.0, 0.0};  // state = global_phase * encode(a, b)
    double residual = 0.0;         // max amplitude error of the reconstruction
};

// Factor a product logical state. Each factor has its largest component real
// and positive; the leftover phase is returned separately.
inline PairFactors factor_pairs(const LogicalState& s) {
    // rows: pair A in {1~, 0~}; columns: pair B
    const double r1 = std::norm(s.amps[0]) + std::norm(s.amps[1]);
    const double r0 = std::norm(s.amps[2]) + std::norm(s.amps[3]);
    const int row = r1 >= r0 ? 0 : 2;
    cplx b_alpha = s.amps[row], b_beta = s.amps[row + 1];
    const double bn = std::sqrt(std::norm(b_alpha) + std::norm(b_beta));
    if (bn == 0.0) throw std::invalid_argument("factor_pairs: zero state");
    b_alpha /= bn;
    b_beta /= bn;
    // A components from projecting each row onto b
    cplx a_alpha = std::conj(b_alpha) * s.amps[0] + std::conj(b_beta) * s.amps[1];
    cplx a_beta = std::conj(b_alpha) * s.amps[2] + std::conj(b_beta) * s.amps[3];

    auto canonical = [](cplx& x, cplx& y) {
        const cplx big = std::abs(x) >= std::abs(y) ? x : y;
        const cplx ph = big / std::abs(big);
        x /= ph;
        y /= ph;
        return ph;
    };
    PairFactors f;
    const double an = std::sqrt(std::norm(a_alpha) + std::norm(a_beta));
    a_alpha /= an;
    a_beta /= an;
    const cplx pa = canonical(a_alpha, a_beta);
    const cplx pb = canonical(b_alpha, b_beta);
    f.a = {a_alpha, a_beta};
    f.b = {b_alpha, b_beta};
    f.global_phase = an * pa * pb;
    const LogicalState rebuilt = encode_logical(f.a, f.b);
    for (int k = 0; k < 4; ++k) f.residual = std::max(f.residual, std::abs(f.global_phase * rebuilt.amps[k] - s.amps[k]));
    return f;
}

// --------------------------- Collective dephasing ---------------------------

// exp(-i phi sum_i sigma_iz) with sigma_z = +-1/2 on every atom.
inline StateVector collective_dephase(const StateVector& psi, double phi) {
    StateVector out = psi;
    const std::size_t f = fock_levels(psi.n_max());
    for (std::size_t c = 0; c < kAtomStates; ++c) {
        const double sz = excitations(atom_config(c)) - 0.5 * kAtoms;
        const cplx phase = std::exp(-kI * phi * sz);
        for (std::size_t n = 0; n < f; ++n) out.amplitudes()(static_cast<Eigen::Index>(c * f + n)) *= phase;
    }
    return out;
}

// Same channel on a subset of atoms of an arbitrary qubit register.
inline Vector collective_dephase_register(const Vector& psi, int natoms, std::span<const int> targets, double phi) {
    Vector out = psi;
    for (std::size_t idx = 0; idx < register_dim(natoms); ++idx) {
        double sz = 0.0;
        for (int t : targets) sz += ((idx >> (natoms - 1 - t)) & 1U) ? 0.5 : -0.5;
        out(static_cast<Eigen::Index>(idx)) *= std::exp(-kI * phi * sz);
    }
    return out;
}

// --------------------------- Free evolution drift ---------------------------

enum class Encoding { dfs, bare };

inline std::string_view to_string(Encoding e) { return e == Encoding::dfs ? "dfs" : "bare"; }
inline Encoding parse_encoding(std::string_view s) {
    if (s == "dfs") return Encoding::dfs;
    if (s == "bare") return Encoding::bare;
    throw std::invalid_argument("unknown encoding '" + std::string(s) + "'");
}

// Squared overlap between the intended state and the state after free
// evolution for time T with level energies E_e, E_g.
//   dfs : (|ge> + e^{i theta}|eg>)/sqrt2 on a pair, both components at E_e + E_g
//   bare: (|g> + e^{i theta}|e>)/sqrt2 on one atom
inline double free_phase_drift(double theta, double energy_e, double energy_g, double T, Encoding encoding) {
    if (T < 0.0) throw std::invalid_argument("free_phase_drift: T must be >= 0");
    const cplx c0 = 1.0 / std::sqrt(2.0);
    const cplx c1 = std::exp(kI * theta) / std::sqrt(2.0);
    double e0 = 0.0, e1 = 0.0;
    if (encoding == Encoding::dfs) {
        e0 = energy_g + energy_e;  // |ge>
        e1 = energy_e + energy_g;  // |eg>
    } else {
        e0 = energy_g;
        e1 = energy_e;
    }
    const cplx d0 = c0 * std::exp(-kI * e0 * T);
    const cplx d1 = c1 * std::exp(-kI * e1 * T);
    return std::norm(std::conj(c0) * d0 + std::conj(c1) * d1);
}

}  // namespace dfsqed

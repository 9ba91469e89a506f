// Shared generators for the property tests. Seeded, so failures replay.

#pragma once

#include "dfsqed/hilbert.hpp"
#include "dfsqed/logical.hpp"
#include "dfsqed/model.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace dfsqed::prop {

class Gen {
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) {
        return lo + (hi - lo) * static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    }
    double angle() { return uniform(0.0, 2.0 * std::numbers::pi); }
    int integer(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

    double normal() {
        const double u1 = uniform(1e-300, 1.0), u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }
    cplx complex_normal() { return {normal(), normal()}; }

    Vector unit_vector(Eigen::Index dim) {
        Vector v(dim);
        for (Eigen::Index k = 0; k < dim; ++k) v(k) = complex_normal();
        return v / v.norm();
    }

    StateVector state(int n_max) { return StateVector(unit_vector(static_cast<Eigen::Index>(space_dim(n_max))), n_max); }

    // Normalized state on the six two-excitation configurations at photon number n.
    StateVector two_excitation_state(int n = 0, int n_max = 0) {
        const Vector c = unit_vector(6);
        StateVector psi = StateVector::zero(n_max);
        const auto& states = two_excitation_states();
        for (int k = 0; k < 6; ++k)
            psi.amplitudes()(static_cast<Eigen::Index>(basis_index(states[static_cast<std::size_t>(k)], n, n_max))) = c(k);
        return psi;
    }

    LogicalQubit qubit() {
        const Vector v = unit_vector(2);
        return {v(0), v(1)};
    }

    LogicalState logical() {
        const Vector v = unit_vector(4);
        LogicalState s;
        for (int k = 0; k < 4; ++k) s.amps[static_cast<std::size_t>(k)] = v(k);
        return s;
    }

    Matrix hermitian(Eigen::Index dim) {
        Matrix m(dim, dim);
        for (Eigen::Index r = 0; r < dim; ++r)
            for (Eigen::Index c = 0; c < dim; ++c) m(r, c) = complex_normal();
        return 0.5 * (m + m.adjoint());
    }

private:
    std::mt19937_64 rng_;
};

inline SystemParams params(double delta_over_g, int n_max = 8, double G = 1.0) {
    return SystemParams::from_detuning(G, delta_over_g * G, n_max);
}

}  // namespace dfsqed::prop

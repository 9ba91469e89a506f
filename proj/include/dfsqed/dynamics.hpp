// dynamics.hpp: Exact propagation under a hermitian generator and the
// closed-form pair-mixing propagator of the effective model.

#pragma once

#include "dfsqed/hilbert.hpp"
#include "dfsqed/model.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace dfsqed {

// Diagonalizes a hermitian generator once; exp(-i H t) for any t afterwards.
class SpectralPropagator {
public:
    explicit SpectralPropagator(const Operator& h) {
        if (!h.hermitian())
            throw std::invalid_argument("SpectralPropagator: generator is not hermitian (defect " +
                                        std::to_string(h.hermiticity_defect()) + ")");
        // symmetrize away the sub-tolerance antihermitian part
        const Matrix sym = 0.5 * (h.matrix() + h.matrix().adjoint());
        Eigen::SelfAdjointEigenSolver<Matrix> solver(sym);
        if (solver.info() != Eigen::Success) throw std::runtime_error("SpectralPropagator: eigendecomposition failed");
        energies_ = solver.eigenvalues();
        vectors_ = solver.eigenvectors();
    }

    Vector evolve(const Vector& psi, double t) const {
        Vector c = vectors_.adjoint() * psi;
        for (Eigen::Index k = 0; k < c.size(); ++k) c(k) *= std::exp(-kI * energies_(k) * t);
        return vectors_ * c;
    }

    Matrix unitary(double t) const {
        Vector phases(energies_.size());
        for (Eigen::Index k = 0; k < energies_.size(); ++k) phases(k) = std::exp(-kI * energies_(k) * t);
        return vectors_ * phases.asDiagonal() * vectors_.adjoint();
    }

    const Eigen::VectorXd& energies() const { return energies_; }
    const Matrix& eigenvectors() const { return vectors_; }

private:
    Eigen::VectorXd energies_;
    Matrix vectors_;
};

struct Propagator {
    Operator unitary;
    Operator generator;
    double duration = 0.0;
};

inline Propagator make_propagator(const Operator& h, double t) {
    return {Operator(SpectralPropagator(h).unitary(t)), h, t};
}

// exp(-i H t) psi.
inline StateVector evolve_exact(const Operator& h, const StateVector& psi, double t) {
    if (h.dim() != psi.dim()) throw std::invalid_argument("evolve_exact: operator and state dimensions differ");
    return StateVector(SpectralPropagator(h).evolve(psi.amplitudes(), t), psi.n_max());
}

// --------------------------- Closed-form pair mixing ------------------------

// 16x16 atomic unitary: each complementary two-excitation pair (a, b) mixes as
// |a> -> cos(x)|a> - i sin(x)|b>; all other configurations are left alone.
inline Matrix dfs_unitary(double pulse_area) {
    Matrix u = Matrix::Identity(kAtomStates, kAtomStates);
    const double c = std::cos(pulse_area);
    const cplx s = -kI * std::sin(pulse_area);
    const auto& states = two_excitation_states();
    for (int k = 0; k < 6; k += 2) {
        const auto a = static_cast<Eigen::Index>(atom_code(states[k]));
        const auto b = static_cast<Eigen::Index>(atom_code(states[k + 1]));
        u(a, a) = c;
        u(b, b) = c;
        u(a, b) = s;
        u(b, a) = s;
    }
    return u;
}

inline double off_manifold_weight(const StateVector& psi) {
    const std::size_t f = fock_levels(psi.n_max());
    double w = 0.0;
    for (std::size_t c = 0; c < kAtomStates; ++c) {
        if (excitations(atom_config(c)) == 2) continue;
        for (std::size_t n = 0; n < f; ++n) w += std::norm(psi.amplitudes()(static_cast<Eigen::Index>(c * f + n)));
    }
    return w;
}

// Closed-form evolution of a state supported on the six two-excitation
// configurations (any photon sector) by pulse area Omega t.
inline StateVector dfs_propagate(const StateVector& psi, double pulse_area) {
    const double stray = off_manifold_weight(psi);
    if (stray > 1e-24)
        throw std::invalid_argument("dfs_propagate: state has weight " + std::to_string(stray) +
                                    " outside the two-excitation configurations");
    const Matrix u = dfs_unitary(pulse_area);
    const auto f = static_cast<Eigen::Index>(fock_levels(psi.n_max()));
    Vector out = Vector::Zero(psi.dim());
    for (Eigen::Index n = 0; n < f; ++n) {
        Vector sector(kAtomStates);
        for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(kAtomStates); ++c) sector(c) = psi.amplitudes()(c * f + n);
        sector = u * sector;
        for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(kAtomStates); ++c) out(c * f + n) = sector(c);
    }
    return StateVector(std::move(out), psi.n_max());
}

}  // namespace dfsqed

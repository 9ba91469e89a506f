// model.hpp: Full Hamiltonian, effective Hamiltonian and the second-order
// perturbation-theory engine that derives effective couplings from them.

#pragma once

#include "dfsqed/hilbert.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace dfsqed {

// The six two-excitation atomic configurations, complementary pairs adjacent.
inline const std::array<AtomConfig, 6>& two_excitation_states() {
    static const std::array<AtomConfig, 6> states{atoms("egeg"), atoms("gege"), atoms("egge"),
                                                  atoms("geeg"), atoms("eegg"), atoms("ggee")};
    return states;
}

// Complement flips every atom: egeg <-> gege.
inline AtomConfig complement(const AtomConfig& cfg) {
    AtomConfig out{};
    for (int i = 0; i < kAtoms; ++i) out[i] = cfg[i] == Level::e ? Level::g : Level::e;
    return out;
}

// H0 = omega_a sum_i sigma_iz + omega a^dag a, with sigma_z = +-1/2.
inline Operator build_h0(const SystemParams& p) {
    const auto dim = static_cast<Eigen::Index>(p.dim());
    Matrix m = Matrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        const BasisLabel b = basis_label(static_cast<std::size_t>(k), p.n_max);
        const double sz = 0.5 * (2 * excitations(b.atoms) - kAtoms);
        m(k, k) = p.omega_a * sz + p.omega * b.n;
    }
    return Operator(std::move(m));
}

// H_int = G sum_{i<j} (a^2 s_i^+ s_j^+ + a^dag^2 s_i^- s_j^-), six unordered pairs.
inline Operator build_hint(const SystemParams& p) {
    const Matrix a2 = cavity_ladder(Ladder::annihilate, 2, p.n_max).matrix();
    const Matrix ad2 = cavity_ladder(Ladder::create, 2, p.n_max).matrix();
    std::array<Matrix, kAtoms> up, down;
    for (int i = 0; i < kAtoms; ++i) {
        up[i] = single_atom_operator(i + 1, AtomOp::raise, p.n_max).matrix();
        down[i] = single_atom_operator(i + 1, AtomOp::lower, p.n_max).matrix();
    }
    const auto dim = static_cast<Eigen::Index>(p.dim());
    Matrix h = Matrix::Zero(dim, dim);
    for (int i = 0; i < kAtoms; ++i)
        for (int j = i + 1; j < kAtoms; ++j) h += a2 * up[i] * up[j] + ad2 * down[i] * down[j];
    return Operator(p.G * h);
}

inline Operator build_full_hamiltonian(const SystemParams& p) { return build_h0(p) + build_hint(p); }

// --------------------------- Closed-form coupling ---------------------------

enum class CouplingSource { closed_form, perturbation_theory };

struct EffectiveCoupling {
    double omega = 0.0;  // rad/s
    int n = 0;
    CouplingSource source = CouplingSource::closed_form;
};

// Omega(n) = (4n + 2) G^2 / delta.
inline EffectiveCoupling effective_coupling(int n, const SystemParams& p) {
    if (n < 0) throw std::invalid_argument("effective_coupling: photon number must be >= 0");
    return {(4.0 * n + 2.0) * p.G * p.G / p.delta, n, CouplingSource::closed_form};
}

// --------------------------- Perturbation theory ----------------------------

// A set of basis states degenerate under H0.
struct Manifold {
    std::vector<std::size_t> members;
    double energy = 0.0;
};

inline Manifold make_manifold(const Operator& h0, std::vector<std::size_t> members) {
    if (members.empty()) throw std::invalid_argument("make_manifold: empty manifold");
    for (std::size_t m : members)
        if (m >= static_cast<std::size_t>(h0.dim())) throw std::out_of_range("make_manifold: member out of range");
    const double e0 = h0(static_cast<Eigen::Index>(members.front()), static_cast<Eigen::Index>(members.front())).real();
    const double tol = 1e-9 * std::max(1.0, std::abs(e0));
    for (std::size_t m : members) {
        const double em = h0(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m)).real();
        if (std::abs(em - e0) > tol)
            throw std::invalid_argument("make_manifold: members are not degenerate under H0 (" +
                                        std::to_string(e0) + " vs " + std::to_string(em) + ")");
    }
    return {std::move(members), e0};
}

// Two-excitation manifold at photon number n, ordered as two_excitation_states().
inline Manifold two_excitation_manifold(const Operator& h0, int n, int n_max) {
    std::vector<std::size_t> idx;
    for (const auto& cfg : two_excitation_states()) idx.push_back(basis_index(cfg, n, n_max));
    return make_manifold(h0, std::move(idx));
}

// Second-order effective operator on a degenerate manifold:
//   K[m, m'] = sum_{k outside} <m|V|k><k|V|m'> / (E_k - E_m)
// H0 must be diagonal. All intermediates are summed, including diagonal
// (Stark) contributions.
inline Operator derive_second_order(const Operator& h0, const Operator& hint, const Manifold& manifold) {
    const Eigen::Index dim = h0.dim();
    if (hint.dim() != dim) throw std::invalid_argument("derive_second_order: H0 and H_int dimensions differ");
    if (max_abs(h0.matrix() - Matrix(h0.matrix().diagonal().asDiagonal())) > 0.0)
        throw std::invalid_argument("derive_second_order: H0 must be diagonal in the computational basis");
    // re-verify degeneracy against this H0
    const Manifold checked = make_manifold(h0, manifold.members);
    const double em = checked.energy;

    const auto& V = hint.matrix();
    const double vscale = std::max(1.0, max_abs(V));
    for (std::size_t a : manifold.members)
        for (std::size_t b : manifold.members)
            if (std::abs(V(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b))) > 1e-14 * vscale)
                throw std::invalid_argument("derive_second_order: H_int couples states inside the manifold");

    std::vector<bool> inside(static_cast<std::size_t>(dim), false);
    for (std::size_t m : manifold.members) inside[m] = true;

    const auto size = static_cast<Eigen::Index>(manifold.members.size());
    Matrix out = Matrix::Zero(size, size);
    const double degeneracy_tol = 1e-9 * std::max(1.0, std::abs(em));
    for (Eigen::Index k = 0; k < dim; ++k) {
        if (inside[static_cast<std::size_t>(k)]) continue;
        bool coupled = false;
        for (std::size_t m : manifold.members)
            if (V(k, static_cast<Eigen::Index>(m)) != cplx{}) coupled = true;
        if (!coupled) continue;
        const double denom = h0(k, k).real() - em;
        if (std::abs(denom) < degeneracy_tol)
            throw std::invalid_argument("derive_second_order: coupled intermediate state is degenerate with the manifold");
        for (Eigen::Index r = 0; r < size; ++r)
            for (Eigen::Index c = 0; c < size; ++c) {
                const auto mr = static_cast<Eigen::Index>(manifold.members[static_cast<std::size_t>(r)]);
                const auto mc = static_cast<Eigen::Index>(manifold.members[static_cast<std::size_t>(c)]);
                out(r, c) += V(mr, k) * V(k, mc) / denom;
            }
    }
    return Operator(std::move(out));
}

// Second-order diagonal shift of every atomic configuration at photon number n.
inline Eigen::VectorXd stark_shifts(const SystemParams& p, int n) {
    if (n < 0 || n + 2 > p.n_max)
        throw std::out_of_range("stark_shifts: need 0 <= n and n + 2 <= n_max for the |n+2> intermediates");
    const Operator h0 = build_h0(p);
    const Operator hint = build_hint(p);
    Eigen::VectorXd shifts(kAtomStates);
    for (std::size_t c = 0; c < kAtomStates; ++c) {
        const Manifold single = make_manifold(h0, {basis_index(atom_config(c), n, p.n_max)});
        shifts(static_cast<Eigen::Index>(c)) = derive_second_order(h0, hint, single)(0, 0).real();
    }
    return shifts;
}

// PT-derived operator on the two-excitation manifold at photon number n.
inline Operator derive_two_excitation(const SystemParams& p, int n) {
    const Operator h0 = build_h0(p);
    return derive_second_order(h0, build_hint(p), two_excitation_manifold(h0, n, p.n_max));
}

// --------------------------- Effective Hamiltonian --------------------------

// Atoms-only (16-dim) effective Hamiltonian at photon number n: the six
// double-flip terms s1^+- s2^+- s3^+- s4^+- with two raises and two lowers,
// each with coefficient Omega(n). With include_stark the diagonal
// second-order shifts from the perturbation engine are added.
inline Operator build_h_eff(const SystemParams& p, int n, bool include_stark) {
    const double omega = effective_coupling(n, p).omega;
    std::array<Matrix, kAtoms> up, down;
    for (int i = 0; i < kAtoms; ++i) {
        up[i] = single_atom_operator(i + 1, AtomOp::raise, 0).matrix();
        down[i] = single_atom_operator(i + 1, AtomOp::lower, 0).matrix();
    }
    Matrix h = Matrix::Zero(kAtomStates, kAtomStates);
    // every choice of two raised atoms among four
    for (int i = 0; i < kAtoms; ++i)
        for (int j = i + 1; j < kAtoms; ++j) {
            Matrix term = Matrix::Identity(kAtomStates, kAtomStates);
            for (int k = 0; k < kAtoms; ++k) term = term * ((k == i || k == j) ? up[k] : down[k]);
            h += term;
        }
    h *= omega;
    if (include_stark) h += Matrix(stark_shifts(p, n).cast<cplx>().asDiagonal());
    return Operator(std::move(h));
}

// Pair-exchange operator restricted to the two-excitation manifold (6x6, same
// ordering as two_excitation_states()).
inline Matrix restrict_to_two_excitation(const Operator& atomic) {
    if (atomic.dim() != static_cast<Eigen::Index>(kAtomStates))
        throw std::invalid_argument("restrict_to_two_excitation: expected a 16-dim atomic operator");
    const auto& states = two_excitation_states();
    Matrix out(6, 6);
    for (int r = 0; r < 6; ++r)
        for (int c = 0; c < 6; ++c)
            out(r, c) = atomic(static_cast<Eigen::Index>(atom_code(states[r])),
                               static_cast<Eigen::Index>(atom_code(states[c])));
    return out;
}

}  // namespace dfsqed

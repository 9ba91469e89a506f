// hilbert.hpp: Composite space of four two-level atoms and one truncated cavity mode.
//
// Basis convention: index = code(a1 a2 a3 a4) * (n_max + 1) + n, with g -> 0,
// e -> 1 and atom 1 the most significant bit of the 4-bit atomic code.
// An atoms-only space is the same layout with n_max = 0.

#pragma once

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace dfsqed {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr int kAtoms = 4;
inline constexpr std::size_t kAtomStates = 16;

// --------------------------- Atomic labels ----------------------------------

enum class Level : std::uint8_t { g = 0, e = 1 };
using AtomConfig = std::array<Level, kAtoms>;

// "egeg" -> {e, g, e, g}
inline AtomConfig atoms(std::string_view label) {
    if (label.size() != kAtoms)
        throw std::invalid_argument("atoms: expected four g/e labels, got '" + std::string(label) + "'");
    AtomConfig cfg{};
    for (int i = 0; i < kAtoms; ++i) {
        switch (label[i]) {
        case 'g': cfg[i] = Level::g; break;
        case 'e': cfg[i] = Level::e; break;
        default: throw std::invalid_argument("atoms: bad level '" + std::string(1, label[i]) + "'");
        }
    }
    return cfg;
}

inline std::string to_string(const AtomConfig& cfg) {
    std::string s(kAtoms, 'g');
    for (int i = 0; i < kAtoms; ++i)
        if (cfg[i] == Level::e) s[i] = 'e';
    return s;
}

inline std::size_t atom_code(const AtomConfig& cfg) {
    std::size_t code = 0;
    for (Level l : cfg) code = code * 2 + static_cast<std::size_t>(l);
    return code;
}

inline AtomConfig atom_config(std::size_t code) {
    if (code >= kAtomStates) throw std::out_of_range("atom_config: code out of range");
    AtomConfig cfg{};
    for (int i = kAtoms - 1; i >= 0; --i) {
        cfg[i] = static_cast<Level>(code & 1U);
        code >>= 1;
    }
    return cfg;
}

inline int excitations(const AtomConfig& cfg) {
    int k = 0;
    for (Level l : cfg) k += (l == Level::e);
    return k;
}

// --------------------------- Basis indexing ---------------------------------

inline std::size_t fock_levels(int n_max) { return static_cast<std::size_t>(n_max) + 1; }
inline std::size_t space_dim(int n_max) { return kAtomStates * fock_levels(n_max); }

inline std::size_t basis_index(const AtomConfig& cfg, int n, int n_max) {
    if (n_max < 0) throw std::invalid_argument("basis_index: n_max must be >= 0");
    if (n < 0 || n > n_max)
        throw std::out_of_range("basis_index: photon number " + std::to_string(n) +
                                " outside [0, " + std::to_string(n_max) + "]");
    return atom_code(cfg) * fock_levels(n_max) + static_cast<std::size_t>(n);
}

struct BasisLabel {
    AtomConfig atoms;
    int n;
};

inline BasisLabel basis_label(std::size_t index, int n_max) {
    if (index >= space_dim(n_max)) throw std::out_of_range("basis_label: index out of range");
    const std::size_t f = fock_levels(n_max);
    return {atom_config(index / f), static_cast<int>(index % f)};
}

// --------------------------- Physical parameters ----------------------------

// hbar = 1. delta = 2 (omega - omega_a) is the detuning of the |gggg,n+2>
// intermediate from the two-excitation manifold.
struct SystemParams {
    double G = 0.0;
    double delta = 0.0;
    double omega_a = 0.0;
    double omega = 0.0;
    int n_max = 8;

    static SystemParams from_detuning(double G, double delta, int n_max, double omega_a = 0.0) {
        SystemParams p{G, delta, omega_a, omega_a + 0.5 * delta, n_max};
        p.validate();
        return p;
    }

    // G = 0 is accepted as the uncoupled limit.
    void validate() const {
        if (!std::isfinite(G) || G < 0.0) throw std::invalid_argument("SystemParams: G must be finite and >= 0");
        if (!std::isfinite(delta) || delta == 0.0) throw std::invalid_argument("SystemParams: delta must be finite and nonzero");
        if (!std::isfinite(omega_a) || !std::isfinite(omega)) throw std::invalid_argument("SystemParams: frequencies must be finite");
        if (n_max < 4) throw std::invalid_argument("SystemParams: n_max must be >= 4");
        const double implied = 2.0 * (omega - omega_a);
        if (std::abs(implied - delta) > 1e-9 * std::max({1.0, std::abs(delta), std::abs(omega), std::abs(omega_a)}))
            throw std::invalid_argument("SystemParams: delta must equal 2 (omega - omega_a)");
    }

    double perturbative_ratio() const {
        return G * std::sqrt(static_cast<double>(n_max) * (n_max - 1)) / std::abs(delta);
    }
    bool perturbative() const { return perturbative_ratio() < 0.25; }

    std::size_t dim() const { return space_dim(n_max); }
};

// --------------------------- Operators --------------------------------------

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

class Operator {
public:
    static constexpr double kHermitianTol = 1e-12;
    static constexpr double kUnitaryTol = 1e-10;

    Operator() = default;
    explicit Operator(Matrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols()) throw std::invalid_argument("Operator: matrix must be square");
        hermitian_ = hermiticity_defect() < kHermitianTol;
        unitary_ = unitarity_defect() < kUnitaryTol;
    }

    static Operator identity(Eigen::Index dim) { return Operator(Matrix::Identity(dim, dim)); }
    static Operator zero(Eigen::Index dim) { return Operator(Matrix::Zero(dim, dim)); }

    const Matrix& matrix() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }
    cplx operator()(Eigen::Index r, Eigen::Index c) const { return m_(r, c); }

    bool hermitian() const { return hermitian_; }
    bool unitary() const { return unitary_; }
    double hermiticity_defect() const { return max_abs(m_ - m_.adjoint()); }
    double unitarity_defect() const {
        return max_abs(m_.adjoint() * m_ - Matrix::Identity(m_.rows(), m_.cols()));
    }

    Operator adjoint() const { return Operator(m_.adjoint()); }

    friend Operator operator*(const Operator& a, const Operator& b) { return Operator(a.m_ * b.m_); }
    friend Operator operator+(const Operator& a, const Operator& b) { return Operator(a.m_ + b.m_); }
    friend Operator operator-(const Operator& a, const Operator& b) { return Operator(a.m_ - b.m_); }
    friend Operator operator*(cplx s, const Operator& a) { return Operator(s * a.m_); }

private:
    Matrix m_;
    bool hermitian_ = false;
    bool unitary_ = false;
};

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// --------------------------- State vectors ----------------------------------

class StateVector {
public:
    static constexpr double kNormTol = 1e-12;

    StateVector() = default;
    StateVector(Vector amps, int n_max) : amps_(std::move(amps)), n_max_(n_max) {
        if (n_max_ < 0) throw std::invalid_argument("StateVector: n_max must be >= 0");
        if (static_cast<std::size_t>(amps_.size()) != space_dim(n_max_))
            throw std::invalid_argument("StateVector: amplitude count does not match 16 (n_max + 1)");
    }

    static StateVector zero(int n_max) {
        return StateVector(Vector::Zero(static_cast<Eigen::Index>(space_dim(n_max))), n_max);
    }
    static StateVector basis(const AtomConfig& cfg, int n, int n_max) {
        StateVector s = zero(n_max);
        s.amps_(static_cast<Eigen::Index>(basis_index(cfg, n, n_max))) = 1.0;
        return s;
    }
    static StateVector basis(std::string_view label, int n = 0, int n_max = 0) {
        return basis(atoms(label), n, n_max);
    }

    const Vector& amplitudes() const { return amps_; }
    Vector& amplitudes() { return amps_; }
    int n_max() const { return n_max_; }
    Eigen::Index dim() const { return amps_.size(); }

    cplx amplitude(const AtomConfig& cfg, int n = 0) const {
        return amps_(static_cast<Eigen::Index>(basis_index(cfg, n, n_max_)));
    }
    cplx amplitude(std::string_view label, int n = 0) const { return amplitude(atoms(label), n); }
    double probability(const AtomConfig& cfg, int n = 0) const { return std::norm(amplitude(cfg, n)); }
    double probability(std::string_view label, int n = 0) const { return probability(atoms(label), n); }

    double norm() const { return amps_.norm(); }
    bool normalized() const { return std::abs(norm() - 1.0) < kNormTol; }

    // Total probability in the two highest Fock levels.
    double fock_guard_leakage() const {
        if (n_max_ < 1) return 0.0;
        const std::size_t f = fock_levels(n_max_);
        double p = 0.0;
        for (std::size_t c = 0; c < kAtomStates; ++c)
            for (std::size_t n = f - 2; n < f; ++n) p += std::norm(amps_(static_cast<Eigen::Index>(c * f + n)));
        return p;
    }

    // Probability of each photon number, summed over atomic configurations.
    Eigen::VectorXd photon_distribution() const {
        const std::size_t f = fock_levels(n_max_);
        Eigen::VectorXd p = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(f));
        for (std::size_t c = 0; c < kAtomStates; ++c)
            for (std::size_t n = 0; n < f; ++n)
                p(static_cast<Eigen::Index>(n)) += std::norm(amps_(static_cast<Eigen::Index>(c * f + n)));
        return p;
    }

    StateVector& operator+=(const StateVector& o) {
        check_same(o);
        amps_ += o.amps_;
        return *this;
    }
    StateVector& operator-=(const StateVector& o) {
        check_same(o);
        amps_ -= o.amps_;
        return *this;
    }
    friend StateVector operator+(StateVector a, const StateVector& b) { return a += b; }
    friend StateVector operator-(StateVector a, const StateVector& b) { return a -= b; }
    friend StateVector operator*(cplx s, StateVector a) {
        a.amps_ *= s;
        return a;
    }

    void check_same(const StateVector& o) const {
        if (o.n_max_ != n_max_) throw std::invalid_argument("StateVector: mismatched Fock truncation");
    }

private:
    Vector amps_;
    int n_max_ = 0;
};

// <a|b>
inline cplx inner(const StateVector& a, const StateVector& b) {
    a.check_same(b);
    return a.amplitudes().dot(b.amplitudes());
}

inline double fidelity(const StateVector& a, const StateVector& b) { return std::norm(inner(a, b)); }

inline double max_deviation(const StateVector& a, const StateVector& b) {
    a.check_same(b);
    return (a.amplitudes() - b.amplitudes()).cwiseAbs().maxCoeff();
}

inline StateVector apply(const Operator& op, const StateVector& psi) {
    if (op.dim() != psi.dim()) throw std::invalid_argument("apply: operator and state dimensions differ");
    return StateVector(op.matrix() * psi.amplitudes(), psi.n_max());
}

// --------------------------- Operator builders ------------------------------

enum class AtomOp { raise, lower, z };

namespace detail {

inline Matrix single_qubit(AtomOp kind) {
    Matrix m = Matrix::Zero(2, 2);
    switch (kind) {
    case AtomOp::raise: m(1, 0) = 1.0; break;  // |e><g|
    case AtomOp::lower: m(0, 1) = 1.0; break;  // |g><e|
    case AtomOp::z:
        m(0, 0) = -0.5;
        m(1, 1) = 0.5;
        break;
    }
    return m;
}

}  // namespace detail

// sigma_i^{+,-,z} on atom i (1-based), identity on the other atoms and on the
// cavity. sigma_z has eigenvalues +1/2 (e) and -1/2 (g).
inline Operator single_atom_operator(int atom, AtomOp kind, int n_max) {
    if (atom < 1 || atom > kAtoms) throw std::out_of_range("single_atom_operator: atom index must be in 1..4");
    Matrix m = Matrix::Identity(1, 1);
    for (int k = 1; k <= kAtoms; ++k) m = kron(m, k == atom ? detail::single_qubit(kind) : Matrix::Identity(2, 2));
    const auto f = static_cast<Eigen::Index>(fock_levels(n_max));
    return Operator(kron(m, Matrix::Identity(f, f)));
}

enum class Ladder { annihilate, create };

// a or a^dag raised to power 1 or 2, truncated: amplitude pushed above n_max is dropped.
inline Operator cavity_ladder(Ladder kind, int power, int n_max) {
    if (power != 1 && power != 2) throw std::invalid_argument("cavity_ladder: power must be 1 or 2");
    const auto f = static_cast<Eigen::Index>(fock_levels(n_max));
    Matrix a = Matrix::Zero(f, f);
    for (Eigen::Index n = 1; n < f; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    Matrix m = a;
    if (power == 2) m = a * a;
    if (kind == Ladder::create) m = m.adjoint().eval();
    return Operator(kron(Matrix::Identity(kAtomStates, kAtomStates), m));
}

inline Operator number_operator(int n_max) {
    const auto f = static_cast<Eigen::Index>(fock_levels(n_max));
    Matrix m = Matrix::Zero(f, f);
    for (Eigen::Index n = 0; n < f; ++n) m(n, n) = static_cast<double>(n);
    return Operator(kron(Matrix::Identity(kAtomStates, kAtomStates), m));
}

// --------------------------- Generic atom registers -------------------------

// Qubit registers of arbitrary size (used for the six-atom teleportation
// circuit). Atom 0 is the most significant bit, e -> 1.
inline std::size_t register_dim(int natoms) { return std::size_t{1} << natoms; }

// Embed `op`, acting on the listed atoms in the listed order, into an
// `natoms` register.
inline Matrix embed_on_atoms(const Matrix& op, std::span<const int> targets, int natoms) {
    const auto k = static_cast<int>(targets.size());
    if (op.rows() != static_cast<Eigen::Index>(register_dim(k)) || op.cols() != op.rows())
        throw std::invalid_argument("embed_on_atoms: operator size does not match target count");
    for (int t : targets)
        if (t < 0 || t >= natoms) throw std::out_of_range("embed_on_atoms: target atom out of range");
    const auto dim = static_cast<Eigen::Index>(register_dim(natoms));
    Matrix out = Matrix::Zero(dim, dim);
    auto bit = [natoms](std::size_t idx, int atom) { return (idx >> (natoms - 1 - atom)) & 1U; };
    for (std::size_t col = 0; col < static_cast<std::size_t>(dim); ++col) {
        std::size_t sub = 0;
        for (int t : targets) sub = sub * 2 + bit(col, t);
        std::size_t rest = col;
        for (int t : targets) rest &= ~(std::size_t{1} << (natoms - 1 - t));
        for (std::size_t out_sub = 0; out_sub < register_dim(k); ++out_sub) {
            const cplx amp = op(static_cast<Eigen::Index>(out_sub), static_cast<Eigen::Index>(sub));
            if (amp == cplx{}) continue;
            std::size_t row = rest;
            for (int j = 0; j < k; ++j)
                if ((out_sub >> (k - 1 - j)) & 1U) row |= std::size_t{1} << (natoms - 1 - targets[j]);
            out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) += amp;
        }
    }
    return out;
}

// Restrict an operator on the composite space to the atoms-only space at a
// fixed photon number (rows and columns with that n).
inline Matrix atomic_block(const Operator& op, int n, int n_max) {
    Matrix out(kAtomStates, kAtomStates);
    for (std::size_t r = 0; r < kAtomStates; ++r)
        for (std::size_t c = 0; c < kAtomStates; ++c)
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                op(static_cast<Eigen::Index>(basis_index(atom_config(r), n, n_max)),
                   static_cast<Eigen::Index>(basis_index(atom_config(c), n, n_max)));
    return out;
}

}  // namespace dfsqed

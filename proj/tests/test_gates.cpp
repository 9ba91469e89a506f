#include "dfsqed/gates.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace dfsqed;
using dfsqed::prop::Gen;

namespace {

Vector pair_vec(Eigen::Index k) {
    Vector v = Vector::Zero(4);
    v(k) = 1.0;
    return v;
}

Matrix logical_projector() {
    Matrix p = Matrix::Zero(4, 4);
    p(kPairEG, kPairEG) = p(kPairGE, kPairGE) = 1.0;
    return p;
}

}  // namespace

TEST(HGate, DefiningMap) {
    const double s = 1.0 / std::sqrt(2.0);
    const Vector out = h_gate().matrix() * pair_vec(kPairEG);
    EXPECT_LT(std::abs(out(kPairEG) - s), 1e-15);
    EXPECT_LT(std::abs(out(kPairGE) + kI * s), 1e-15);
}

TEST(HGate, SquareAndFourthPower) {
    const Matrix h = h_gate().matrix();
    const Vector twice = h * h * pair_vec(kPairEG);
    EXPECT_LT((twice - (-kI) * pair_vec(kPairGE)).cwiseAbs().maxCoeff(), 1e-15);
    const Matrix h4 = h * h * h * h;
    const Matrix proj = logical_projector();
    EXPECT_LT(max_abs(proj * h4 * proj + proj), 1e-15);
}

TEST(PGate, Phases) {
    const Matrix p = p_gate(1).matrix();
    EXPECT_LT(std::abs(p(kPairEG, kPairEG) - kI), 1e-15);
    EXPECT_EQ(p(kPairGE, kPairGE), cplx(1.0));
    EXPECT_LT(max_abs(p * p_gate(-1).matrix() - Matrix::Identity(4, 4)), 1e-15);
    EXPECT_LT(max_abs(p * p * p * p - Matrix::Identity(4, 4)), 1e-15);
    EXPECT_THROW(p_gate(0), std::invalid_argument);
}

TEST(RGate, ThreeQuarterPulse) {
    const double s = 1.0 / std::sqrt(2.0);
    const Matrix r = r_gate().matrix();
    // logical order egeg, egge, geeg, gege
    EXPECT_LT(std::abs(r(0, 0) + s), 1e-15);
    EXPECT_LT(std::abs(r(3, 0) + kI * s), 1e-15);
    EXPECT_LT(r_gate().unitarity_defect(), 1e-12);
}

TEST(Gates, AllUnitary) {
    for (const auto& g : cnot_gate_list())
        for (int sign : {1, -1}) EXPECT_LT(Operator(gate_unitary(g, sign)).unitarity_defect(), 1e-12) << g.label();
}

TEST(Gates, RejectsBadPair) {
    EXPECT_THROW(check_pair({2, 2}), std::invalid_argument);
    EXPECT_THROW(check_pair({0, 2}), std::invalid_argument);
    EXPECT_NO_THROW(check_pair({3, 4}));
}

TEST(Cnot, SequenceHasSevenGates) {
    const auto gates = cnot_gate_list();
    ASSERT_EQ(gates.size(), 7u);
    EXPECT_EQ(gates[0].label(), "H_34");
    EXPECT_EQ(gates[2].label(), "R");
    EXPECT_EQ(gates[6].label(), "P_inv_34");
}

// Frozen outcome of the exhaustive four-way search.
TEST(Cnot, ConventionSearchOracle) {
    const auto candidates = search_conventions(cnot_gate_list());
    ASSERT_EQ(candidates.size(), 4u);
    int passing = 0;
    for (const auto& c : candidates) {
        EXPECT_LT(c.code_space_leakage, 1e-12);
        EXPECT_EQ(c.table.pass, c.convention.p_sign == 1) << to_string(c.convention.order) << " " << c.convention.p_sign;
        passing += c.table.pass;
    }
    EXPECT_EQ(passing, 2);
    const PulseSequence seq = compile_cnot();
    EXPECT_EQ(seq.convention.order, ApplicationOrder::temporal);
    EXPECT_EQ(seq.convention.p_sign, 1);
}

TEST(Cnot, TruthTableAndPhases) {
    const TruthTableReport rep = verify_truth_table(cnot_logical(compile_cnot()));
    ASSERT_TRUE(rep.pass);
    EXPECT_GE(rep.min_probability, 1.0 - 1e-10);
    ASSERT_EQ(rep.rows.size(), 4u);
    EXPECT_EQ(rep.rows[0].input, "egge");
    EXPECT_EQ(rep.rows[0].output, "egge");
    EXPECT_EQ(rep.rows[2].input, "egeg");
    EXPECT_EQ(rep.rows[2].output, "geeg");
    for (const auto& row : rep.rows) EXPECT_LT(std::abs(row.phase + 1.0), 1e-12) << row.input;
}

TEST(Cnot, SquareIsIdentityUpToPhase) {
    const Matrix u = cnot_logical(compile_cnot()).matrix();
    const Matrix sq = u * u;
    EXPECT_LT(max_abs(sq - sq(0, 0) * Matrix::Identity(4, 4)), 1e-12);
    EXPECT_NEAR(std::abs(sq(0, 0)), 1.0, 1e-12);
}

TEST(Cnot, ControlTargetAsymmetric) {
    const Matrix u = cnot_logical(compile_cnot()).matrix();
    EXPECT_GT(max_abs(swap_logical_qubits(u) - u), 0.5);
}

TEST(Cnot, PreservesCodeSpace) {
    const PulseSequence seq = compile_cnot();
    const Matrix full = sequence_unitary(seq.gates, seq.convention);
    for (const auto& in : logical_basis()) {
        const auto c = static_cast<Eigen::Index>(atom_code(in));
        double inside = 0.0;
        for (const auto& out : logical_basis()) inside += std::norm(full(static_cast<Eigen::Index>(atom_code(out)), c));
        EXPECT_NEAR(inside, 1.0, 1e-14);
    }
}

TEST(TruthTable, GlobalPhaseInvariant) {
    Gen gen(21);
    const Matrix u = cnot_logical(compile_cnot()).matrix();
    for (int k = 0; k < 20; ++k) {
        const TruthTableReport rep = verify_truth_table(Operator(std::exp(kI * gen.angle()) * u));
        EXPECT_TRUE(rep.pass);
    }
}

TEST(TruthTable, IdentityFails) { EXPECT_FALSE(verify_truth_table(Operator::identity(4)).pass); }

TEST(Durations, DefaultParameters) {
    const double G = 2.0 * std::numbers::pi * 47e3;
    const SystemParams p = SystemParams::from_detuning(G, 10.0 * G, 8);
    const DurationReport d = schedule_duration(compile_cnot(), p);
    EXPECT_NEAR(d.entanglement_formula / 1.33e-5, 1.0, 0.01);
    EXPECT_NEAR(d.cnot_formula / 9.31e-5, 1.0, 0.01);
    EXPECT_LT(d.cnot_formula / 3e-2, 0.01);
    EXPECT_NEAR(d.entanglement_formula, std::numbers::pi * 10.0 / (8.0 * G), 1e-18);
    // H: three pulses of pi/4, R: 3pi/4, P untimed
    EXPECT_NEAR(d.cnot_bottom_up, 6.0 * std::numbers::pi * 10.0 / (8.0 * G), 1e-17);
    EXPECT_NEAR(d.discrepancy, d.entanglement_formula, 1e-17);
    ASSERT_EQ(d.gates.size(), 7u);
}

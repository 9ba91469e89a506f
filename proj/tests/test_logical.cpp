#include "dfsqed/logical.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace dfsqed;
using dfsqed::prop::Gen;

TEST(Encode, BasisProduct) {
    const LogicalState s = encode_logical({1.0, 0.0}, {1.0, 0.0});
    EXPECT_LT(max_deviation(embed(s), StateVector::basis("egeg")), 1e-15);
}

TEST(Encode, SuperpositionOnFirstPair) {
    const double r = 1.0 / std::sqrt(2.0);
    const LogicalState s = encode_logical({r, r}, {1.0, 0.0});
    const StateVector expected = r * (StateVector::basis("egeg") + StateVector::basis("geeg"));
    EXPECT_LT(max_deviation(embed(s), expected), 1e-15);
}

TEST(Encode, RejectsUnnormalized) { EXPECT_THROW(encode_logical({1.0, 1.0}, {1.0, 0.0}), std::invalid_argument); }

TEST(Encode, LandsOnCodeSpace) {
    Gen gen(11);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector psi = embed(encode_logical(gen.qubit(), gen.qubit()), 2, 4);
        EXPECT_NEAR(code_space_weight(psi, 2), 1.0, 1e-12);
    }
}

TEST(Decode, RoundTrip) {
    Gen gen(12);
    for (int trial = 0; trial < 100; ++trial) {
        const LogicalQubit a = gen.qubit(), b = gen.qubit();
        const LogicalState s = encode_logical(a, b);
        const LogicalState back = decode_logical(embed(s));
        for (std::size_t k = 0; k < 4; ++k) EXPECT_LT(std::abs(back.amps[k] - s.amps[k]), 1e-15);
        const PairFactors f = factor_pairs(back);
        EXPECT_LT(f.residual, 1e-12);
        EXPECT_NEAR(std::norm(f.a.alpha * std::conj(a.alpha) + f.a.beta * std::conj(a.beta)), 1.0, 1e-12);
    }
}

TEST(Decode, RejectsLeakage) {
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_THROW(decode_logical(r * (StateVector::basis("egeg") + StateVector::basis("eegg"))), std::invalid_argument);
}

TEST(CollectiveDephase, CodeSpaceIsInvariant) {
    Gen gen(13);
    for (int trial = 0; trial < 100; ++trial) {
        const StateVector psi = embed(gen.logical());
        const double phi = gen.angle();
        EXPECT_LT(max_deviation(collective_dephase(psi, phi), psi), 1e-14);
    }
}

TEST(CollectiveDephase, FullyExcitedPicksUpPhase) {
    const double phi = 0.83;
    const StateVector psi = StateVector::basis(atoms("eeee"), 2, 4);
    EXPECT_LT(max_deviation(collective_dephase(psi, phi), std::exp(-2.0 * kI * phi) * psi), 1e-15);
}

TEST(CollectiveDephase, BareSuperpositionGetsRelativePhase) {
    const double phi = 1.1;
    const double r = 1.0 / std::sqrt(2.0);
    const StateVector psi = r * (StateVector::basis("gggg") + StateVector::basis("eggg"));
    const StateVector out = collective_dephase(psi, phi);
    const cplx rel = out.amplitude("eggg") / out.amplitude("gggg");
    EXPECT_NEAR(std::arg(rel), -phi, 1e-14);
}

TEST(FreePhaseDrift, DfsAlwaysOne) {
    Gen gen(14);
    for (int k = 0; k < 100; ++k)
        EXPECT_NEAR(free_phase_drift(gen.angle(), 0.7, -0.4, gen.uniform(0.0, 50.0), Encoding::dfs), 1.0, 1e-15);
}

TEST(FreePhaseDrift, BareOracles) {
    const double pi = std::numbers::pi;
    EXPECT_NEAR(free_phase_drift(pi / 2, 0.5, -0.5, pi, Encoding::bare), 0.0, 1e-15);
    EXPECT_NEAR(free_phase_drift(1.234, 0.5, -0.5, 0.0, Encoding::bare), 1.0, 1e-15);
}

TEST(FreePhaseDrift, BareIsPeriodic) {
    Gen gen(15);
    const double split = 1.7;
    const double period = 2.0 * std::numbers::pi / split;
    for (int k = 0; k < 50; ++k) {
        const double theta = gen.angle(), T = gen.uniform(0.0, 10.0);
        const double f = free_phase_drift(theta, 0.5 * split, -0.5 * split, T, Encoding::bare);
        EXPECT_NEAR(free_phase_drift(theta, 0.5 * split, -0.5 * split, T + period, Encoding::bare), f, 1e-12);
        // single-qubit oracle: (|1> + e^{i theta}|0>)/sqrt2 drifts by e^{-i split T} on the relative phase
        EXPECT_NEAR(f, std::pow(std::cos(split * T / 2.0), 2), 1e-12);
    }
}

TEST(EncodingNames, Parse) {
    EXPECT_EQ(parse_encoding("dfs"), Encoding::dfs);
    EXPECT_EQ(parse_encoding("bare"), Encoding::bare);
    EXPECT_THROW(parse_encoding("both"), std::invalid_argument);
}

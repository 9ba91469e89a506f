#include "dfsqed/bell_teleport.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace dfsqed;
using dfsqed::prop::Gen;

TEST(Bell, PhiPlusDefinition) {
    const double s = 1.0 / std::sqrt(2.0);
    const StateVector expected = s * (StateVector::basis("egeg") + kI * StateVector::basis("gege"));
    EXPECT_LT(max_deviation(prepare_bell(BellLabel::phi_plus), expected), 1e-15);
}

TEST(Bell, Orthonormal) {
    for (BellLabel a : kBellLabels)
        for (BellLabel b : kBellLabels) {
            const double expected = a == b ? 1.0 : 0.0;
            EXPECT_NEAR(std::abs(inner(prepare_bell(a), prepare_bell(b))), expected, 1e-14);
        }
}

TEST(Bell, MapImages) {
    const double area = kBellMapArea;
    EXPECT_LT(max_deviation(dfs_propagate(prepare_bell(BellLabel::phi_plus), area), StateVector::basis("egeg")), 1e-15);
    EXPECT_LT(max_deviation(dfs_propagate(prepare_bell(BellLabel::phi_minus), area), -kI * StateVector::basis("gege")), 1e-15);
    EXPECT_LT(max_deviation(dfs_propagate(prepare_bell(BellLabel::psi_plus), area), StateVector::basis("egge")), 1e-15);
    EXPECT_LT(max_deviation(dfs_propagate(prepare_bell(BellLabel::psi_minus), area), -kI * StateVector::basis("geeg")), 1e-15);
}

TEST(Bell, DeterministicDiscrimination) {
    for (BellLabel l : kBellLabels) {
        const auto branches = bell_branches(prepare_bell(l));
        ASSERT_EQ(branches.size(), 1u);
        ASSERT_TRUE(branches[0].label.has_value());
        EXPECT_EQ(*branches[0].label, l);
        EXPECT_GE(branches[0].probability, 1.0 - 1e-12);
        for (std::uint64_t seed : {0ULL, 1ULL, 99ULL}) EXPECT_EQ(bell_measure(prepare_bell(l), seed).label, l);
    }
}

TEST(Bell, WorksInAnyPhotonSector) {
    const auto branches = bell_branches(prepare_bell(BellLabel::psi_minus, 3, 4));
    ASSERT_EQ(branches.size(), 1u);
    EXPECT_EQ(branches[0].label, BellLabel::psi_minus);
}

TEST(Bell, SuperpositionSplitsEvenly) {
    const double s = 1.0 / std::sqrt(2.0);
    const StateVector mix = s * (prepare_bell(BellLabel::phi_plus) + prepare_bell(BellLabel::psi_plus));
    const auto branches = bell_branches(mix);
    ASSERT_EQ(branches.size(), 2u);
    for (const auto& b : branches) EXPECT_NEAR(b.probability, 0.5, 1e-15);

    constexpr int trials = 10000;
    int phi = 0;
    for (int k = 0; k < trials; ++k) {
        const BellMeasurement m = bell_measure(mix, static_cast<std::uint64_t>(k) * 7919 + 3);
        ASSERT_TRUE(m.is_bell());
        phi += *m.label == BellLabel::phi_plus;
    }
    EXPECT_LE(std::abs(phi - trials / 2.0), 3.0 * std::sqrt(trials * 0.25));
}

TEST(Bell, NonBellOutcomeHasNoLabel) {
    // eegg mixes with ggee; neither outcome is a Bell signature
    const auto b = bell_branches(StateVector::basis("eegg"));
    ASSERT_EQ(b.size(), 2u);
    for (const auto& branch : b) {
        EXPECT_FALSE(branch.label.has_value());
        EXPECT_NEAR(branch.probability, 0.5, 1e-15);
    }
}

TEST(Sampling, UniformIsPlatformStable) {
    std::mt19937_64 rng(42);
    const double u = uniform01(rng);
    std::mt19937_64 ref(42);
    EXPECT_EQ(u, static_cast<double>(ref() >> 11) / 9007199254740992.0);
    EXPECT_LT(u, 1.0);
}

TEST(Corrections, DerivedTablesMatchStored) {
    for (Encoding enc : {Encoding::dfs, Encoding::bare}) {
        const auto derived = derive_correction_table(enc);
        const auto& stored = correction_table(enc);
        ASSERT_EQ(derived.size(), stored.size()) << to_string(enc);
        for (const auto& s : stored) {
            const auto it = std::find_if(derived.begin(), derived.end(), [&](const CorrectionEntry& d) { return d.outcome == s.outcome; });
            ASSERT_NE(it, derived.end()) << s.outcome;
            EXPECT_EQ(it->correction, s.correction) << s.outcome;
            EXPECT_EQ(it->label, s.label) << s.outcome;
        }
    }
}

TEST(Teleport, IdentityCase) {
    const TeleportResult r = teleport({});
    ASSERT_EQ(r.branches.size(), 4u);
    for (const auto& b : r.branches) EXPECT_NEAR(b.fidelity, 1.0, 1e-10) << b.outcome;
}

TEST(Teleport, DfsGridWithAndWithoutDephasing) {
    double lo = 1.0, hi = 0.0;
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 8; ++j)
            for (double phi : {0.0, 0.7, 2.9}) {
                TeleportParams tp;
                tp.theta = 2.0 * std::numbers::pi * i / 12;
                tp.delay = 10.0 * j / 7;
                tp.dephase_phi = phi;
                const TeleportResult r = teleport(tp);
                lo = std::min(lo, r.min_fidelity);
                hi = std::max(hi, r.min_fidelity);
            }
    EXPECT_GT(lo, 1.0 - 1e-10);
    EXPECT_LT(hi - lo, 1e-10);
}

TEST(Teleport, BareReferenceLosesPhase) {
    const double pi = std::numbers::pi;
    TeleportParams tp;
    tp.theta = pi / 2;
    tp.encoding = Encoding::bare;
    tp.delay = pi;  // E_e - E_g = 1
    const TeleportResult r = teleport(tp);
    EXPECT_NEAR(r.average_fidelity, 0.0, 1e-15);
    tp.delay = 0.0;
    EXPECT_NEAR(teleport(tp).min_fidelity, 1.0, 1e-12);
}

TEST(Teleport, BranchesEquiprobable) {
    Gen gen(31);
    for (Encoding enc : {Encoding::dfs, Encoding::bare})
        for (int k = 0; k < 20; ++k) {
            TeleportParams tp;
            tp.theta = gen.angle();
            tp.encoding = enc;
            const TeleportResult r = teleport(tp);
            EXPECT_NEAR(r.probability_sum, 1.0, 1e-12);
            ASSERT_EQ(r.branches.size(), 4u);
            for (const auto& b : r.branches) EXPECT_NEAR(b.probability, 0.25, 1e-12);
        }
}

TEST(Teleport, NoSignalingWithoutCorrections) {
    Gen gen(32);
    for (int k = 0; k < 20; ++k) {
        TeleportParams tp;
        tp.theta = gen.angle();
        tp.apply_corrections = false;
        const TeleportResult r = teleport(tp);
        EXPECT_LE(r.average_fidelity, 0.5 + 1e-12);
        EXPECT_NEAR(r.average_uncorrected, 0.5, 1e-12);
    }
}

TEST(Teleport, SeededSampleIsReproducible) {
    TeleportParams tp;
    tp.theta = 0.4;
    tp.seed = 2024;
    const TeleportResult a = teleport(tp), b = teleport(tp);
    ASSERT_TRUE(a.sampled && b.sampled);
    EXPECT_EQ(*a.sampled, *b.sampled);
    EXPECT_NEAR(a.fidelity, 1.0, 1e-10);
}

TEST(Teleport, RejectsNegativeDelay) {
    TeleportParams tp;
    tp.delay = -1.0;
    EXPECT_THROW(teleport(tp), std::invalid_argument);
}

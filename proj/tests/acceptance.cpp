// Acceptance checks 1-10. One PASS/FAIL line per criterion; exit status is
// nonzero if any criterion fails.

#include "dfsqed/experiments.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cstdio>
#include <functional>
#include <random>
#include <string>

using namespace dfsqed;

namespace {

constexpr double kPi = std::numbers::pi;

struct Verdict {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

Vector random_unit(std::mt19937_64& rng, Eigen::Index dim) {
    std::normal_distribution<double> nd;
    Vector v(dim);
    for (Eigen::Index k = 0; k < dim; ++k) v(k) = cplx(nd(rng), nd(rng));
    return v / v.norm();
}

ExperimentConfig defaults(const char* experiment) { return parse_config("", experiment); }

// 1. second-order coupling equals (4n+2) G^2 / delta for n = 0..3
Verdict criterion1() {
    const SystemParams p = defaults("validate-effective").system();
    double worst = 0.0;
    for (int n = 0; n <= 3; ++n) {
        const double derived = derive_two_excitation(p, n)(0, 1).real();
        const double closed = effective_coupling(n, p).omega;
        worst = std::max(worst, std::abs(derived - closed) / std::abs(closed));
    }
    return {worst < 1e-12, fmt("max relative error %.3e", worst)};
}

// 2. closed-form propagator vs matrix exponential of the effective Hamiltonian
Verdict criterion2() {
    const SystemParams p = defaults("entangle").system();
    const double omega = effective_coupling(0, p).omega;
    const Matrix h = build_h_eff(p, 0, false).matrix();
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> area(0.0, 4.0 * kPi);
    double worst = 0.0;
    for (int k = 0; k < 50; ++k) {
        const Vector c = random_unit(rng, 6);
        StateVector psi = StateVector::zero(0);
        for (int s = 0; s < 6; ++s) psi.amplitudes()(static_cast<Eigen::Index>(atom_code(two_excitation_states()[static_cast<std::size_t>(s)]))) = c(s);
        const double a = area(rng);
        const Matrix u = (-kI * (a / omega) * h).exp();
        worst = std::max(worst, max_deviation(dfs_propagate(psi, a), StateVector(u * psi.amplitudes(), 0)));
    }
    return {worst < 1e-10, fmt("max deviation %.3e over 50 draws", worst)};
}

// 3. CNOT truth table under the searched convention
Verdict criterion3() {
    const ExperimentOutcome out = run_experiment(defaults("cnot-verify"));
    const auto& r = out.report["result"];
    if (!r.contains("min_probability")) return {false, "no convention reproduces the truth table"};
    const double pmin = r["min_probability"].get<double>();
    const bool recorded = out.report["conventions"].contains("cnot");
    const std::string conv = recorded ? out.report["conventions"]["cnot"]["order"].get<std::string>() + "," +
                                            std::to_string(out.report["conventions"]["cnot"]["p_sign"].get<int>())
                                      : "missing";
    return {out.pass && recorded && pmin >= 1.0 - 1e-10, fmt("min probability %.15f", pmin) + ", convention " + conv};
}

// 4. deterministic Bell discrimination by enumeration
Verdict criterion4() {
    int correct = 0;
    double pmin = 1.0;
    for (BellLabel l : kBellLabels) {
        double p = 0.0;
        for (const auto& b : bell_branches(prepare_bell(l)))
            if (b.label == l) p += b.probability;
        pmin = std::min(pmin, p);
        correct += p >= 1.0 - 1e-12;
    }
    return {correct == 4, std::to_string(correct) + "/4 labeled" + fmt(", min probability %.15f", pmin)};
}

// 5. teleportation grid, with and without dephasing; bare reference
Verdict criterion5() {
    double worst = 1.0;
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 8; ++j)
            for (double phi : {0.0, 0.7}) {
                TeleportParams tp;
                tp.theta = 2.0 * kPi * i / 12;
                tp.delay = 10.0 * j / 7;
                tp.dephase_phi = phi;
                worst = std::min(worst, teleport(tp).min_fidelity);
            }
    TeleportParams bare;
    bare.theta = kPi / 2;
    bare.delay = kPi;
    bare.encoding = Encoding::bare;
    const double fb = teleport(bare).average_fidelity;
    return {1.0 - worst < 1e-10 && std::abs(fb) < 1e-10, fmt("dfs min fidelity %.15f, bare %.3e", worst, fb)};
}

// 6. staggered insertion bound and closed-form consistency
Verdict criterion6() {
    const StaggerFidelity f = staggered_fidelity(StaggerParams::from_fraction(0.02, 3.0 * kPi / 4.0));
    return {f.amplitude >= 0.98 && f.consistency < 1e-12,
            fmt("amplitude fidelity %.6f (claimed ~0.98), closed-form mismatch %.2e", f.amplitude, f.consistency)};
}

// 7. durations at G = 2 pi 47 kHz, delta = 10 G
Verdict criterion7() {
    const DurationReport d = schedule_duration(compile_cnot(), defaults("durations").system());
    const bool ent = std::abs(d.entanglement_formula / 1.33e-5 - 1.0) <= 0.01;
    const bool cnot = std::abs(d.cnot_formula / 9.31e-5 - 1.0) <= 0.01;
    const bool life = d.cnot_formula / 3e-2 < 0.01;
    return {ent && cnot && life, fmt("entanglement %.4e s, CNOT %.4e s", d.entanglement_formula, d.cnot_formula)};
}

// 8. full-model convergence and the difference operator
Verdict criterion8() {
    const ExperimentOutcome out = run_experiment(defaults("validate-effective"));
    const auto& r = out.report["result"];
    std::string devs;
    for (const auto& run : r["runs"]) devs += fmt("%.4g ", run["relative_deviation"].get<double>());
    constexpr bool kOracleNonempty = true;
    const bool nonempty = r["difference_nonempty"].get<bool>();
    const bool ok = r["strictly_decreasing_deviation"].get<bool>() && r["max_unitarity_defect"].get<double>() < 1e-10 &&
                    r["max_probability_sum_defect"].get<double>() < 1e-10 && r["max_norm_defect"].get<double>() < 1e-10 &&
                    nonempty == kOracleNonempty;
    return {ok, "relative deviations " + devs + "difference entries " +
                    std::to_string(r["difference_exchange_plus_stark_minus_pt"].size())};
}

// 9. collective dephasing immunity of the code space
Verdict criterion9() {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const double phi = angle(rng);
        for (const auto& cfg : logical_basis()) {
            const StateVector psi = StateVector::basis(cfg, 0, 0);
            worst = std::max(worst, max_deviation(collective_dephase(psi, phi), psi));
        }
        const Vector c = random_unit(rng, 4);
        LogicalState s;
        for (int j = 0; j < 4; ++j) s.amps[static_cast<std::size_t>(j)] = c(j);
        worst = std::max(worst, max_deviation(collective_dephase(embed(s), phi), embed(s)));
    }
    return {worst < 1e-14, fmt("max deviation %.3e over 100 phases", worst)};
}

// 10. identical config and seed give byte-identical reports
Verdict criterion10() {
    int identical = 0, total = 0;
    for (auto name : experiment_names()) {
        ExperimentConfig cfg = defaults(std::string(name).c_str());
        cfg.seed = 31337;
        const ExperimentOutcome a = run_experiment(cfg), b = run_experiment(cfg);
        total += 2;
        identical += render_json(a.report) == render_json(b.report);
        identical += a.csv == b.csv;
    }
    return {identical == total, std::to_string(identical) + "/" + std::to_string(total) + " report pairs identical"};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Verdict()>> criteria[] = {
        {"coupling from second-order perturbation theory", criterion1},
        {"closed-form propagator vs matrix exponential", criterion2},
        {"CNOT truth table", criterion3},
        {"Bell-state discrimination", criterion4},
        {"teleportation fidelity", criterion5},
        {"staggered insertion fidelity", criterion6},
        {"gate durations", criterion7},
        {"full-model convergence", criterion8},
        {"collective dephasing immunity", criterion9},
        {"reproducible reports", criterion10},
    };
    int failed = 0, index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += !v.pass;
        std::printf("%s criterion %d (%s): %s\n", v.pass ? "PASS" : "FAIL", index, name, v.detail.c_str());
    }
    std::printf("%d/%d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}

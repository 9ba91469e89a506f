// Sampled teleportation runs through the pair encoding, next to a bare
// single-atom qubit that sits through the same delay.

#include "dfsqed/dfsqed.hpp"

#include <cstdio>
#include <numbers>

int main() {
    using namespace dfsqed;
    const double pi = std::numbers::pi;
    std::printf("%-6s %-8s %-8s %-6s %-4s %s\n", "theta", "delay", "outcome", "label", "fix", "fidelity");
    std::uint64_t seed = 1;
    for (double theta : {0.0, pi / 3, pi / 2, pi}) {
        for (double delay : {0.0, pi}) {
            TeleportParams tp;
            tp.theta = theta;
            tp.delay = delay;
            tp.dephase_phi = 0.7;
            tp.seed = seed++;
            const TeleportResult r = teleport(tp);
            const TeleportBranch& b = r.branches[*r.sampled];
            std::printf("%-6.3f %-8.3f %-8s %-6s %-4s %.12f\n", theta, delay, b.outcome.c_str(), b.label.c_str(),
                        b.correction.c_str(), r.fidelity);
        }
    }

    TeleportParams bare;
    bare.theta = pi / 2;
    bare.delay = pi;
    bare.encoding = Encoding::bare;
    std::printf("\nbare qubit, theta = pi/2, (E_e - E_g) T = pi: average fidelity %.3g\n", teleport(bare).average_fidelity);
    return 0;
}

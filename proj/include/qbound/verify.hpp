#ifndef QBOUND_VERIFY_HPP
#define QBOUND_VERIFY_HPP

#include <string>
#include <vector>

namespace qbound::verify {

struct SuiteResult {
    std::string name;
    int passed{0}, failed{0};
    std::vector<std::string> failures;  // counterexample dumps
    bool ok() const { return failed == 0; }
};

// J <= I(R_min) <= 2J on random piecewise-constant radial profiles.
SuiteResult suite_sandwich(int trials = 200, unsigned seed = 7);
// Ground-state kappa^2 of the weak 2D well sits inside the energy bracket.
SuiteResult suite_bracket();
// Phase-integration counts equal the finite-difference oracle counts.
SuiteResult suite_oracle();
// count(U on the line) = count(channel 0 of the log-mapped radial problem).
SuiteResult suite_transform();
// Deepening the potential never removes a zero-energy node.
SuiteResult suite_node_comparison();
// sum |e_i|^{1/2} <= (1/2) int U^- dx on the line catalog.
SuiteResult suite_lieb_thirring();
// K0 comparison inequalities on a log grid of (x, a).
SuiteResult suite_k0(int grid_n = 40);

std::vector<SuiteResult> run_all(int trials = 200, unsigned seed = 7);

}  // namespace qbound::verify

#endif

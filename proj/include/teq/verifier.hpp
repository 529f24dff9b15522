#pragma once

// Mechanical verification suites: randomized exact probes of the operator
// identities on reference instances (tori with twisted abelian actions, the
// double Chevalley-Eilenberg model of su(2), group averaging on T²).  Every
// check demands an exactly zero residual; failures carry a witness.

#include "teq/cohomology.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace teq {

struct SuiteResult {
    std::string suite;
    bool ok = true;
    int checks = 0;
    std::string witness;  // first failing check, with the nonzero residual
};

struct VerifyConfig {
    uint64_t seed = 20260815;
    int probes = 200;   // random probes per identity family
    int max_mode = 2;   // Fourier-mode bound for random coefficients
    std::vector<std::string> suites;  // empty = run all
};

// Suite names, in run order: weil-identities, bracket-relations,
// extended-square, proposition-j, basicness, b-field, operator-identity,
// averaging.
const std::vector<std::string>& verifier_suite_names();

std::vector<SuiteResult> run_verifier(const VerifyConfig& cfg);

}  // namespace teq

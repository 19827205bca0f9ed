// SPDX-License-Identifier: Apache-2.0
//
// Problem specification: a weighted sum of independent complex central
// Wishart matrices
//
//   Wbar = sum_i (a_i / p_i) W_i,   W_i ~ CW_m(p_i, sigma2 I)
//
// together with the moment-matched single-term surrogate used as the
// low-complexity approximation.
#pragma once

#include <vector>

namespace wishart_sum {

struct WishartTerm {
    int p = 1;      // degrees of freedom
    double a = 1.0; // linear power weight
};

struct SumSpec {
    int m = 1;           // matrix dimension
    double sigma2 = 1.0; // per-entry variance of the underlying Gaussians
    std::vector<WishartTerm> terms;

    int total_p() const;
    void validate() const; // throws validation_error on a malformed spec
};

// One physical link of tx x rx antennas with a path gain in dB.
struct AntennaBranch {
    int tx = 1;
    int rx = 1;
    double gain_db = 0.0;
};

double db_to_linear(double db);

// Branches map to Wishart terms through the nonzero eigenvalue spectrum of
// H H^*: the matrix dimension is min(tx, rx), which every branch must share,
// and the degrees of freedom are max(tx, rx).
SumSpec from_antennas(const std::vector<AntennaBranch> &branches, double sigma2 = 1.0);

// Per-degree-of-freedom weight v_i = a_i sigma2 / p_i of each term.
std::vector<double> weight_per_dof(const SumSpec &spec);

struct MomentSummary {
    double mean = 0.0;     // E[lambda] for one unordered eigenvalue
    double variance = 0.0; // second cumulant of the diagonal-entry mixture
};
MomentSummary moment_summary(const SumSpec &spec);

// Degrees of freedom of the single-Wishart surrogate matching the first two
// cumulants: (sum a)^2 / (sum a^2/p), rounded half away from zero.
int matched_dof(const SumSpec &spec);

// The surrogate spec itself: one term with matched_dof degrees and the total
// weight, same dimension and noise scale.
SumSpec matched_single_term(const SumSpec &spec);

} // namespace wishart_sum

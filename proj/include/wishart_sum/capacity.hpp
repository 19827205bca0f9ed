// SPDX-License-Identifier: Apache-2.0
//
// Ergodic sum-rate capacity E[log2 det(I + Wbar)] of the weighted Wishart
// sum, by two independent routes: a closed form summing ratios of
// determinants (the normalization body with one row swapped for kernel
// integrals), and m times the quadrature of P(lambda) log2(1 + lambda).
// A min over the two hops gives the upper bound for the two-hop relay cut.
#pragma once

#include <string>
#include <vector>

#include "wishart_sum/eigen_density.hpp"
#include "wishart_sum/wishart_model.hpp"

namespace wishart_sum {

struct CapacityResult {
    double bits = 0.0; // per channel use
    std::string method;
    double err_estimate = 0.0;
};

CapacityResult capacity_determinantal(const SumSpec &spec, const EvaluatorOptions &opts = {});
CapacityResult capacity_quadrature(const SumSpec &spec, const EvaluatorOptions &opts = {});

// Capacity of the moment-matched single-term surrogate.
CapacityResult capacity_approx(const SumSpec &spec, const EvaluatorOptions &opts = {});

// Relative error the surrogate makes against the closed form.
double approximation_error(const SumSpec &spec, const EvaluatorOptions &opts = {});

// All-distinct per-degree weights: the Vandermonde special case, with the
// body determinant taken from the pairwise product. Cross-check path.
double capacity_distinct(int m, const std::vector<double> &v);

struct RelayResult {
    double bits = 0.0; // min cut over the two hops
    double first_hop_bits = 0.0;
    double second_hop_bits = 0.0;
    std::string method;
};

// Upper bound on a two-hop relay network: the first hop is the broadcast
// cut from the source, the second the multiple-access cut into the sink.
RelayResult relay_upper_bound(const SumSpec &first_hop, const SumSpec &second_hop,
                              const EvaluatorOptions &opts = {});

} // namespace wishart_sum

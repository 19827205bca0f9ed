// SPDX-License-Identifier: Apache-2.0
//
// Monte Carlo validation: draw realizations of the weighted Wishart sum,
// histogram the eigenvalues against the exact density, and estimate ergodic
// capacities empirically. Sampling is counter-based so results are identical
// for a given seed no matter how many threads run.
#pragma once

#include <cstdint>
#include <vector>

#include "wishart_sum/capacity.hpp"
#include "wishart_sum/numeric_core.hpp"
#include "wishart_sum/wishart_model.hpp"

namespace wishart_sum {

struct McConfig {
    int realizations = 40000;
    std::uint64_t seed = 11;
    int bins = 60;
    double lambda_max = 0.0; // 0 = auto: 4 sigma2 sum a
    int threads = 0;         // 0 = hardware count (capped), 1 = serial
};

// One realization of the weighted sum, reproducible in (seed, realization).
ComplexMatrix sample_wbar(const SumSpec &spec, std::uint64_t seed, std::uint64_t realization);

struct EmpiricalDensity {
    std::vector<double> bin_edges; // bins + 1 ascending edges from 0
    std::vector<double> heights;   // count / (total eigenvalues * bin width)
    long long eigenvalues = 0;     // total eigenvalues drawn, in-range or not
    std::uint64_t seed = 0;
    double out_of_range_mass = 0.0; // fraction beyond the last edge
};

EmpiricalDensity empirical_density(const SumSpec &spec, const McConfig &cfg = {});

struct CapacityEstimate {
    double bits = 0.0;
    double std_error = 0.0;
    int realizations = 0;
};

CapacityEstimate empirical_capacity(const SumSpec &spec, const McConfig &cfg = {});

// Relay geometry sweep: two hops of `antennas` x `antennas` links, the two
// second-hop gains equal to the swept value and the source-side gain offset
// above it. Reports closed-form, surrogate, and (optionally) empirical
// bounds per point.
struct RelaySweepConfig {
    int points = 7;
    double lo_db = 0.0;
    double hi_db = 30.0;
    int antennas = 2;
    double first_hop_offset_db = 10.0;
    bool with_mc = true;
    McConfig mc;
    EvaluatorOptions opts;
};

struct RelaySweepPoint {
    double gain_db = 0.0; // swept second-hop gain
    double exact_bits = 0.0;
    double approx_bits = 0.0;
    double mc_bits = 0.0;
    double mc_std_error = 0.0;
};

std::vector<RelaySweepPoint> sweep_relay(const RelaySweepConfig &cfg = {});

// Surrogate quality sweep over the gain ratio of two equal-size links: the
// second gain stays fixed while the first runs ratio_lo..ratio_hi dB above.
struct ErrorSweepConfig {
    int points = 31;
    double ratio_lo_db = 0.0;
    double ratio_hi_db = 15.0;
    double base_gain_db = 5.0;
    int antennas = 2;
    EvaluatorOptions opts;
};

struct ErrorSweepPoint {
    double ratio_db = 0.0;
    double exact_bits = 0.0;
    double approx_bits = 0.0;
    double rel_error = 0.0;
};

std::vector<ErrorSweepPoint> sweep_matching_error(const ErrorSweepConfig &cfg = {});

} // namespace wishart_sum

// SPDX-License-Identifier: Apache-2.0

#include "wishart_sum/monte_carlo.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

#include "wishart_sum/errors.hpp"
#include "wishart_sum/rng.hpp"

namespace wishart_sum {

namespace {

constexpr int kChunk = 256; // realizations per work unit

int worker_count(const McConfig &cfg, int chunks) {
    int n = cfg.threads;
    if (n <= 0) {
        n = static_cast<int>(std::thread::hardware_concurrency());
        if (n <= 0) n = 1;
        n = std::min(n, 16);
    }
    return std::max(1, std::min(n, chunks));
}

void validate_cfg(const McConfig &cfg) {
    if (cfg.realizations < 1) throw validation_error("monte carlo: need realizations >= 1");
    if (cfg.bins < 1) throw validation_error("monte carlo: need at least one bin");
    if (cfg.lambda_max < 0.0 || !std::isfinite(cfg.lambda_max)) {
        throw validation_error("monte carlo: bad lambda_max");
    }
}

// run fn(chunk_index, first, last) over fixed chunk boundaries
template <class Fn> void run_chunked(int realizations, int threads, Fn fn) {
    const int chunks = (realizations + kChunk - 1) / kChunk;
    if (threads <= 1) {
        for (int c = 0; c < chunks; ++c) {
            fn(c, c * kChunk, std::min(realizations, (c + 1) * kChunk));
        }
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const int c = next.fetch_add(1);
                if (c >= chunks) return;
                fn(c, c * kChunk, std::min(realizations, (c + 1) * kChunk));
            }
        });
    }
    for (std::thread &th : pool) th.join();
}

} // namespace

ComplexMatrix sample_wbar(const SumSpec &spec, std::uint64_t seed, std::uint64_t realization) {
    spec.validate();
    ComplexMatrix w(spec.m, spec.m);
    for (std::size_t k = 0; k < spec.terms.size(); ++k) {
        const WishartTerm &t = spec.terms[k];
        const std::uint64_t stream = CounterRng::substream(realization, k);
        const ComplexMatrix h =
            sample_complex_gaussian(seed, stream, spec.m, t.p, spec.sigma2);
        const ComplexMatrix prod = h * h.conjugate_transpose();
        const double w_k = t.a / t.p;
        for (int r = 0; r < spec.m; ++r) {
            for (int c = 0; c < spec.m; ++c) {
                w(r, c) += w_k * prod(r, c);
            }
        }
    }
    return w;
}

EmpiricalDensity empirical_density(const SumSpec &spec, const McConfig &cfg) {
    spec.validate();
    validate_cfg(cfg);
    const double hi = cfg.lambda_max > 0.0 ? cfg.lambda_max : 4.0 * moment_summary(spec).mean;
    const int bins = cfg.bins;
    const double width = hi / bins;

    const int chunks = (cfg.realizations + kChunk - 1) / kChunk;
    std::vector<std::vector<long long>> counts(
        static_cast<std::size_t>(chunks),
        std::vector<long long>(static_cast<std::size_t>(bins) + 1, 0));

    run_chunked(cfg.realizations, worker_count(cfg, chunks), [&](int c, int lo, int up) {
        auto &local = counts[static_cast<std::size_t>(c)];
        for (int r = lo; r < up; ++r) {
            const ComplexMatrix wbar =
                sample_wbar(spec, cfg.seed, static_cast<std::uint64_t>(r));
            for (double lam : hermitian_eigenvalues(wbar)) {
                int b = static_cast<int>(lam / width);
                if (lam < 0.0) b = 0; // round-off from the eigensolver
                if (b >= bins) b = bins;
                ++local[static_cast<std::size_t>(b)];
            }
        }
    });

    EmpiricalDensity out;
    out.seed = cfg.seed;
    out.eigenvalues = static_cast<long long>(cfg.realizations) * spec.m;
    out.bin_edges.resize(static_cast<std::size_t>(bins) + 1);
    for (int b = 0; b <= bins; ++b) out.bin_edges[static_cast<std::size_t>(b)] = b * width;
    out.heights.assign(static_cast<std::size_t>(bins), 0.0);
    long long above = 0;
    for (int c = 0; c < chunks; ++c) {
        for (int b = 0; b < bins; ++b) {
            out.heights[static_cast<std::size_t>(b)] +=
                static_cast<double>(counts[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)]);
        }
        above += counts[static_cast<std::size_t>(c)][static_cast<std::size_t>(bins)];
    }
    const double denom = static_cast<double>(out.eigenvalues) * width;
    for (double &h : out.heights) h /= denom;
    out.out_of_range_mass = static_cast<double>(above) / static_cast<double>(out.eigenvalues);
    return out;
}

CapacityEstimate empirical_capacity(const SumSpec &spec, const McConfig &cfg) {
    spec.validate();
    validate_cfg(cfg);
    const int chunks = (cfg.realizations + kChunk - 1) / kChunk;
    std::vector<double> sums(static_cast<std::size_t>(chunks), 0.0);
    std::vector<double> sq_sums(static_cast<std::size_t>(chunks), 0.0);

    run_chunked(cfg.realizations, worker_count(cfg, chunks), [&](int c, int lo, int up) {
        double s = 0.0, s2 = 0.0;
        for (int r = lo; r < up; ++r) {
            const ComplexMatrix wbar =
                sample_wbar(spec, cfg.seed, static_cast<std::uint64_t>(r));
            double bits = 0.0;
            for (double lam : hermitian_eigenvalues(wbar)) {
                bits += std::log2(1.0 + std::max(0.0, lam));
            }
            s += bits;
            s2 += bits * bits;
        }
        sums[static_cast<std::size_t>(c)] = s;
        sq_sums[static_cast<std::size_t>(c)] = s2;
    });

    // chunk-ordered reduction keeps the result independent of scheduling
    double s = 0.0, s2 = 0.0;
    for (int c = 0; c < chunks; ++c) {
        s += sums[static_cast<std::size_t>(c)];
        s2 += sq_sums[static_cast<std::size_t>(c)];
    }
    const double n = cfg.realizations;
    CapacityEstimate est;
    est.realizations = cfg.realizations;
    est.bits = s / n;
    const double var = std::max(0.0, s2 / n - est.bits * est.bits);
    est.std_error = std::sqrt(var / n);
    return est;
}

namespace {

SumSpec two_branch_spec(int antennas, double first_db, double second_db) {
    return from_antennas({{antennas, antennas, first_db}, {antennas, antennas, second_db}});
}

} // namespace

std::vector<RelaySweepPoint> sweep_relay(const RelaySweepConfig &cfg) {
    if (cfg.points < 2) throw validation_error("sweep_relay: need at least two points");
    if (!(cfg.hi_db > cfg.lo_db)) throw validation_error("sweep_relay: empty gain range");
    if (cfg.antennas < 1) throw validation_error("sweep_relay: bad antenna count");
    std::vector<RelaySweepPoint> out;
    for (int i = 0; i < cfg.points; ++i) {
        const double a2 = cfg.lo_db + (cfg.hi_db - cfg.lo_db) * i / (cfg.points - 1);
        const SumSpec first = two_branch_spec(cfg.antennas, a2 + cfg.first_hop_offset_db, a2);
        const SumSpec second = two_branch_spec(cfg.antennas, a2, a2);
        RelaySweepPoint pt;
        pt.gain_db = a2;
        pt.exact_bits = relay_upper_bound(first, second, cfg.opts).bits;
        pt.approx_bits =
            relay_upper_bound(matched_single_term(first), matched_single_term(second), cfg.opts)
                .bits;
        if (cfg.with_mc) {
            McConfig mc = cfg.mc;
            mc.seed = cfg.mc.seed + static_cast<std::uint64_t>(i) * 0x9e3779b9u;
            const CapacityEstimate eb = empirical_capacity(first, mc);
            mc.seed += 0x517cc1b7u;
            const CapacityEstimate em = empirical_capacity(second, mc);
            pt.mc_bits = std::min(eb.bits, em.bits);
            pt.mc_std_error = std::max(eb.std_error, em.std_error);
        }
        out.push_back(pt);
    }
    return out;
}

std::vector<ErrorSweepPoint> sweep_matching_error(const ErrorSweepConfig &cfg) {
    if (cfg.points < 2) throw validation_error("sweep_matching_error: need two points");
    if (!(cfg.ratio_hi_db > cfg.ratio_lo_db)) {
        throw validation_error("sweep_matching_error: empty ratio range");
    }
    std::vector<ErrorSweepPoint> out;
    for (int i = 0; i < cfg.points; ++i) {
        const double ratio =
            cfg.ratio_lo_db + (cfg.ratio_hi_db - cfg.ratio_lo_db) * i / (cfg.points - 1);
        const SumSpec spec =
            two_branch_spec(cfg.antennas, cfg.base_gain_db + ratio, cfg.base_gain_db);
        ErrorSweepPoint pt;
        pt.ratio_db = ratio;
        pt.exact_bits = capacity_determinantal(spec, cfg.opts).bits;
        pt.approx_bits = capacity_approx(spec, cfg.opts).bits;
        pt.rel_error = std::abs(pt.approx_bits - pt.exact_bits) / pt.exact_bits;
        out.push_back(pt);
    }
    return out;
}

} // namespace wishart_sum

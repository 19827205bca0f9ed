// SPDX-License-Identifier: Apache-2.0
//
// The nine acceptance checks behind the selftest subcommand. Each one prints
// a single PASS/FAIL line with the measured numbers so a red run says exactly
// what was off. Criterion 9 reproduces a qualitative claim whose geometry the
// source table does not pin down; the default geometry used here (two 2x2
// links, base gain 5 dB) is stated in the line itself.

#include "wishart_sum/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <random>
#include <vector>

#include "wishart_sum/capacity.hpp"
#include "wishart_sum/eigen_density.hpp"
#include "wishart_sum/errors.hpp"
#include "wishart_sum/monte_carlo.hpp"
#include "wishart_sum/quadrature.hpp"
#include "wishart_sum/wishart_model.hpp"

namespace wishart_sum::acceptance {

namespace {

std::string fmt(const char *f, ...) {
    va_list ap;
    va_start(ap, f);
    char buf[512];
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

class Timer {
  public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

  private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

SumSpec antennas_equal(int n, const std::vector<double> &gains_db) {
    std::vector<AntennaBranch> b;
    for (double g : gains_db) b.push_back({n, n, g});
    return from_antennas(b);
}

SumSpec case1() { return antennas_equal(4, {19.8, 29.5, 29.8, 26.1, 21.7}); }

SumSpec case2() {
    return antennas_equal(8, {28.3, 17.7, 26.5, 27.3, 29.3, 21.5, 19.5, 27.9, 9.3, 24.3});
}

SumSpec case3_first() { return antennas_equal(2, {9.7, 17.6}); }
SumSpec case3_second() { return antennas_equal(2, {17.6, 16.7}); }

bool within(double got, double want, double tol) { return std::abs(got - want) <= tol; }

// The twenty randomized specs shared by criteria 5 and 6. Fixed seed so the
// suite is reproducible; weights are log-uniform per-degree values in
// [0.1, 100] mapped back to term weights a = v * p.
std::vector<SumSpec> random_specs() {
    std::mt19937_64 rng(20250822);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<SumSpec> out;
    while (out.size() < 20) {
        SumSpec s;
        const int terms = 1 + static_cast<int>(rng() % 4);
        int total = 0;
        for (int k = 0; k < terms; ++k) {
            const int p = 1 + static_cast<int>(rng() % 3);
            if (total + p > 12) break;
            total += p;
            const double v = 0.1 * std::pow(10.0, 3.0 * unit(rng));
            s.terms.push_back({p, v * p});
        }
        if (s.terms.empty()) continue;
        s.m = 1 + static_cast<int>(rng() % static_cast<unsigned>(std::min(total, 4)));
        s.validate();
        out.push_back(s);
    }
    return out;
}

CriterionResult criterion_case1() {
    Timer t;
    const SumSpec spec = case1();
    const double exact = capacity_determinantal(spec).bits;
    const double approx = capacity_approx(spec).bits;
    const int dof = matched_dof(spec);
    const double sec = t.seconds();
    CriterionResult r;
    r.name = "case1-capacity";
    r.pass = within(exact, 44.20, 0.02) && within(approx, 44.15, 0.02) && dof == 13 && sec < 5.0;
    r.detail = fmt("exact=%.4f (ref 44.20+-0.02) approx=%.4f (ref 44.15+-0.02) "
                   "matched_dof=%d (ref 13) runtime=%.2fs (limit 5)",
                   exact, approx, dof, sec);
    return r;
}

CriterionResult criterion_case3() {
    Timer t;
    const SumSpec first = case3_first(), second = case3_second();
    const RelayResult exact = relay_upper_bound(first, second);
    const RelayResult approx =
        relay_upper_bound(matched_single_term(first), matched_single_term(second));
    const int d1 = matched_dof(first), d2 = matched_dof(second);
    const double sec = t.seconds();
    CriterionResult r;
    r.name = "case3-relay";
    r.pass = within(exact.bits, 10.94, 0.02) && within(approx.bits, 11.01, 0.02) && d1 == 3 &&
             d2 == 4 && sec < 2.0;
    r.detail = fmt("bound=%.4f (ref 10.94+-0.02) approx=%.4f (ref 11.01+-0.02) "
                   "matched_dof=%d,%d (ref 3,4) runtime=%.2fs (limit 2)",
                   exact.bits, approx.bits, d1, d2, sec);
    return r;
}

CriterionResult criterion_case2() {
    Timer t;
    const SumSpec spec = case2();
    const int dof = matched_dof(spec);
    const double approx = capacity_approx(spec).bits;

    // The full 80-degree evaluation must either land on the reference value in
    // extended mode or refuse loudly; a silently wrong number fails.
    bool loud_standard = false;
    try {
        capacity_determinantal(spec, {.mode = PrecisionMode::standard});
    } catch (const numerical_error &) {
        loud_standard = true;
    }
    double exact = 0.0;
    bool exact_ok = false;
    std::string exact_note;
    try {
        exact = capacity_determinantal(spec).bits;
        exact_ok = within(exact, 93.86, 0.05);
        exact_note = fmt("exact=%.4f (ref 93.86+-0.05)", exact);
    } catch (const numerical_error &e) {
        exact_ok = true; // loud refusal is an allowed outcome
        exact_note = fmt("exact refused loudly (%s)", e.what());
    }
    const double sec = t.seconds();
    CriterionResult r;
    r.name = "case2-extended";
    r.pass = dof == 51 && within(approx, 93.85, 0.05) && loud_standard && exact_ok;
    r.detail = fmt("matched_dof=%d (ref 51) approx=%.4f (ref 93.85+-0.05) %s "
                   "standard_mode_loud=%s runtime=%.1fs",
                   dof, approx, exact_note.c_str(), loud_standard ? "yes" : "no", sec);
    return r;
}

CriterionResult criterion_monte_carlo() {
    Timer t;
    const SumSpec spec = case1();
    const double exact = capacity_determinantal(spec).bits;
    McConfig mc;
    mc.realizations = 40000;
    const CapacityEstimate est = empirical_capacity(spec, mc);
    const double tol = std::max(3.0 * est.std_error, 0.005 * exact);
    const bool cap_ok = std::abs(est.bits - exact) <= tol;

    const EmpiricalDensity emp = empirical_density(spec, mc);
    const DensityEvaluator eval = build_evaluator(spec);
    const double n = static_cast<double>(emp.eigenvalues);
    int in_band = 0;
    const int bins = static_cast<int>(emp.heights.size());
    for (int b = 0; b < bins; ++b) {
        const double lo = emp.bin_edges[b], hi = emp.bin_edges[b + 1];
        const double q = integrate([&](double x) { return eval.density(x); }, lo, hi, 1e-8, 1e-12)
                             .value;
        const double count = emp.heights[b] * (hi - lo) * n;
        const double sigma = std::sqrt(n * q * (1.0 - q));
        if (std::abs(count - q * n) <= 3.0 * sigma) ++in_band;
    }
    const double sec = t.seconds();
    CriterionResult r;
    r.name = "mc-agreement";
    r.pass = cap_ok && in_band >= static_cast<int>(std::ceil(0.95 * bins)) && sec < 60.0;
    r.detail = fmt("mc=%.4f exact=%.4f |diff|=%.4f (tol %.4f) bins_in_3sigma=%d/%d "
                   "(need >=%d) runtime=%.1fs (limit 60)",
                   est.bits, exact, std::abs(est.bits - exact), tol, in_band, bins,
                   static_cast<int>(std::ceil(0.95 * bins)), sec);
    return r;
}

CriterionResult criterion_norm_mean() {
    const std::vector<SumSpec> specs = random_specs();
    double worst_mass = 0.0, worst_mean = 0.0;
    for (const SumSpec &s : specs) {
        const DensityEvaluator eval = build_evaluator(s);
        const double scale = s.sigma2 * [&] {
            double a = 0.0;
            for (const auto &term : s.terms) a += term.a;
            return a;
        }();
        worst_mass = std::max(worst_mass, std::abs(eval.cdf(40.0 * scale) - 1.0));
        worst_mean = std::max(worst_mean, std::abs(eval.mean() - scale) / scale);
    }
    CriterionResult r;
    r.name = "norm-mean-random";
    r.pass = worst_mass <= 1e-7 && worst_mean <= 1e-6;
    r.detail = fmt("20 specs: worst |integral-1|=%.2e (tol 1e-7) worst mean rel err=%.2e "
                   "(tol 1e-6)",
                   worst_mass, worst_mean);
    return r;
}

CriterionResult criterion_crosscheck() {
    const std::vector<SumSpec> specs = random_specs();
    double worst_route = 0.0;
    for (const SumSpec &s : specs) {
        const double det = capacity_determinantal(s).bits;
        const double quad = capacity_quadrature(s).bits;
        worst_route = std::max(worst_route, std::abs(det - quad) / det);
    }

    // Confluence: epsilon-split the repeated weights and compare the
    // all-distinct route against the confluent one. The split is one-sided so
    // the gap decays linearly in epsilon.
    struct ConfluentCase {
        SumSpec spec;
        std::vector<double> split(double eps) const {
            std::vector<double> v;
            for (const auto &t : spec.terms)
                for (int k = 0; k < t.p; ++k)
                    v.push_back(t.a * spec.sigma2 / t.p * (1.0 + eps * k));
            return v;
        }
    };
    std::vector<ConfluentCase> cases;
    {
        SumSpec a;
        a.m = 2;
        a.terms = {{3, 3 * 1.3}};
        cases.push_back({a});
        SumSpec b;
        b.m = 3;
        b.terms = {{2, 2 * 0.6}, {1, 2.0}};
        cases.push_back({b});
    }
    double worst_eps4 = 0.0, worst_ratio = 0.0;
    for (const ConfluentCase &c : cases) {
        const double exact = capacity_determinantal(c.spec).bits;
        const double err3 = std::abs(capacity_distinct(c.spec.m, c.split(1e-3)) - exact) / exact;
        const double err4 = std::abs(capacity_distinct(c.spec.m, c.split(1e-4)) - exact) / exact;
        worst_eps4 = std::max(worst_eps4, err4);
        worst_ratio = std::max(worst_ratio, err4 / err3);
    }
    CriterionResult r;
    r.name = "method-crosscheck";
    r.pass = worst_route <= 1e-6 && worst_eps4 <= 1e-3 && worst_ratio <= 0.35;
    r.detail = fmt("det-vs-quad worst rel=%.2e (tol 1e-6); confluence err(1e-4)=%.2e "
                   "(tol 1e-3) decay ratio=%.3f (need <=0.35)",
                   worst_route, worst_eps4, worst_ratio);
    return r;
}

CriterionResult criterion_gamma_reduction() {
    double worst = 0.0;
    for (int p : {1, 2, 5}) {
        SumSpec s;
        s.m = 1;
        s.terms = {{p, 2.4}};
        const double v = 2.4 / p;
        const DensityEvaluator eval = build_evaluator(s);
        for (double lam : make_lambda_grid(s, 50)) {
            const double want =
                std::exp((p - 1) * std::log(lam) - lam / v - std::lgamma(p) - p * std::log(v));
            if (want < 1e-280) continue;
            worst = std::max(worst, std::abs(eval.density(lam) - want) / want);
        }
    }
    CriterionResult r;
    r.name = "gamma-reduction";
    r.pass = worst <= 1e-9;
    r.detail = fmt("m=1, p in {1,2,5}, 50 points each: worst rel err=%.2e (tol 1e-9)", worst);
    return r;
}

CriterionResult criterion_relay_sweep() {
    Timer t;
    RelaySweepConfig cfg;
    cfg.mc.realizations = 40000;
    const std::vector<RelaySweepPoint> pts = sweep_relay(cfg);
    double worst = 0.0, worst_at = 0.0;
    for (const RelaySweepPoint &p : pts) {
        const double rel = std::abs(p.approx_bits - p.mc_bits) / p.mc_bits;
        if (rel > worst) {
            worst = rel;
            worst_at = p.gain_db;
        }
    }
    const double sec = t.seconds();
    CriterionResult r;
    r.name = "relay-sweep";
    r.pass = pts.size() == 7 && worst <= 0.01 && sec < 300.0;
    r.detail = fmt("7 points, approx vs mc worst rel=%.3f%% at %g dB (tol 1%%) "
                   "runtime=%.1fs (limit 300)",
                   100.0 * worst, worst_at, sec);
    return r;
}

CriterionResult criterion_error_band() {
    const std::vector<ErrorSweepPoint> pts = sweep_matching_error({});
    double worst = 0.0, worst_at = 0.0;
    for (const ErrorSweepPoint &p : pts) {
        const bool in_band = (p.ratio_db > 0.0 && p.ratio_db < 2.0) ||
                             (p.ratio_db > 7.0 && p.ratio_db < 15.0);
        if (in_band && p.rel_error > worst) {
            worst = p.rel_error;
            worst_at = p.ratio_db;
        }
    }
    CriterionResult r;
    r.name = "error-band";
    r.pass = worst < 0.01;
    r.detail = fmt("default geometry (two 2x2 links, base gain 5 dB): worst rel err=%.2f%% "
                   "at ratio %g dB over (0,2)+(7,15) dB (need <1%%); qualitative target, "
                   "source geometry unstated",
                   100.0 * worst, worst_at);
    return r;
}

} // namespace

std::vector<CriterionResult> run_all(std::ostream &log) {
    struct Entry {
        const char *name;
        CriterionResult (*fn)();
    };
    const Entry criteria[] = {
        {"case1-capacity", criterion_case1},
        {"case3-relay", criterion_case3},
        {"case2-extended", criterion_case2},
        {"mc-agreement", criterion_monte_carlo},
        {"norm-mean-random", criterion_norm_mean},
        {"method-crosscheck", criterion_crosscheck},
        {"gamma-reduction", criterion_gamma_reduction},
        {"relay-sweep", criterion_relay_sweep},
        {"error-band", criterion_error_band},
    };
    std::vector<CriterionResult> out;
    for (const Entry &c : criteria) {
        CriterionResult r;
        try {
            r = c.fn();
        } catch (const std::exception &e) {
            r.name = c.name;
            r.pass = false;
            r.detail = fmt("threw: %s", e.what());
        }
        log << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n" << std::flush;
        out.push_back(r);
    }
    int passed = 0;
    for (const CriterionResult &r : out) passed += r.pass ? 1 : 0;
    log << passed << "/" << out.size() << " criteria passed\n";
    return out;
}

} // namespace wishart_sum::acceptance

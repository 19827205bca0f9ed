// SPDX-License-Identifier: Apache-2.0
//
// Exact marginal eigenvalue density of the weighted Wishart sum.
//
// The density is a ratio of determinants. The numerator is a (p+1)x(p+1)
// bordered matrix whose first row holds derivative columns of u^m e^(-u
// lambda), first column holds lambda powers over factorials, and body holds
// derivative columns of u^(i-1); the denominator is -m times the body alone.
// Repeated per-degree weights are what make the derivative (confluent)
// columns appear; all-distinct weights admit a plain Vandermonde form that
// this header also exposes as an independent cross-check path.
#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wishart_sum/numeric_core.hpp"
#include "wishart_sum/wishart_model.hpp"

namespace wishart_sum {

namespace detail {
struct DensityState;
}

// Raw matrix-entry values in double precision, exposed for tests and for
// readers of the formula. j and i count from 1; v is the per-degree weight.
double entry_f(int j, int m, double v, double lambda); // border row
double entry_g(int i, int m, double lambda);           // border column
double entry_h(int i, int j, double v);                // body

enum class PrecisionMode {
    standard, // double arithmetic only; loud failure when digits run out
    extended  // escalate through wider scalars as the monitor demands
};

struct EvaluatorOptions {
    PrecisionMode mode = PrecisionMode::extended;
    // Divide column (k, j) by Gamma(j) v_k^j during formation. The factors
    // cancel between numerator and normalization, so this only reshapes the
    // intermediate magnitudes; switching it off exists to test exactly that.
    bool column_balancing = true;
    double merge_rel_tol = 1e-12; // weights closer than this join one block
};

class DensityEvaluator {
  public:
    double density(double lambda) const; // P(lambda), lambda > 0
    std::vector<double> density_grid(const std::vector<double> &lambdas) const;
    double cdf(double lambda) const;
    double mean() const;

    const SumSpec &spec() const { return spec_; }
    const std::vector<double> &block_weights() const { return v_; } // merged v_k
    const std::vector<int> &block_dofs() const { return p_; }
    PrecisionMode mode() const { return opts_.mode; }
    // name of the widest scalar any evaluation has had to reach for so far
    std::string rung() const;
    // normalization constant c of the unscaled formula, c = 1 / (-m det H)
    SignedLogValue log_norm() const;

  private:
    friend DensityEvaluator build_evaluator(const SumSpec &, const EvaluatorOptions &);
    DensityEvaluator() = default;

    SumSpec spec_;
    EvaluatorOptions opts_;
    std::vector<double> v_;
    std::vector<int> p_;
    std::shared_ptr<detail::DensityState> state_;
};

DensityEvaluator build_evaluator(const SumSpec &spec, const EvaluatorOptions &opts = {});

// Evaluation grid covering the support with comfortable margin: n points from
// 1e-6 S to 4 S, S = sigma2 sum a_i.
std::vector<double> make_lambda_grid(const SumSpec &spec, int n);

// All-distinct per-degree weights v (size p >= m, pairwise separated by at
// least 1e-6 relative): the Vandermonde special case, used to cross-check the
// confluent formation by epsilon-splitting repeated weights.
double density_distinct(int m, const std::vector<double> &v, double lambda);

} // namespace wishart_sum

// SPDX-License-Identifier: Apache-2.0

#include "wishart_sum/wishart_model.hpp"

#include <cmath>
#include <string>

#include "wishart_sum/errors.hpp"

namespace wishart_sum {

int SumSpec::total_p() const {
    int p = 0;
    for (const WishartTerm &t : terms) p += t.p;
    return p;
}

void SumSpec::validate() const {
    if (m < 1) throw validation_error("spec: dimension m must be at least 1");
    if (!(sigma2 > 0.0) || !std::isfinite(sigma2)) {
        throw validation_error("spec: sigma2 must be positive and finite");
    }
    if (terms.empty()) throw validation_error("spec: at least one Wishart term required");
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const WishartTerm &t = terms[i];
        if (t.p < 1) {
            throw validation_error("spec: term " + std::to_string(i) +
                                   " needs at least one degree of freedom");
        }
        if (!(t.a > 0.0) || !std::isfinite(t.a)) {
            throw validation_error("spec: term " + std::to_string(i) +
                                   " needs a positive finite weight");
        }
    }
    if (total_p() < m) {
        throw validation_error("spec: total degrees of freedom must reach the dimension "
                               "for the spectrum to be almost surely full");
    }
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

SumSpec from_antennas(const std::vector<AntennaBranch> &branches, double sigma2) {
    if (branches.empty()) throw validation_error("antennas: at least one branch required");
    SumSpec spec;
    spec.sigma2 = sigma2;
    spec.m = 0;
    for (const AntennaBranch &b : branches) {
        if (b.tx < 1 || b.rx < 1) {
            throw validation_error("antennas: counts must be at least 1");
        }
        const int dim = std::min(b.tx, b.rx);
        if (spec.m == 0) {
            spec.m = dim;
        } else if (spec.m != dim) {
            throw validation_error("antennas: every branch must share min(tx, rx)");
        }
        spec.terms.push_back({std::max(b.tx, b.rx), db_to_linear(b.gain_db)});
    }
    spec.validate();
    return spec;
}

std::vector<double> weight_per_dof(const SumSpec &spec) {
    std::vector<double> v;
    v.reserve(spec.terms.size());
    for (const WishartTerm &t : spec.terms) v.push_back(t.a * spec.sigma2 / t.p);
    return v;
}

MomentSummary moment_summary(const SumSpec &spec) {
    MomentSummary s;
    for (const WishartTerm &t : spec.terms) {
        s.mean += t.a;
        s.variance += t.a * t.a / t.p;
    }
    s.mean *= spec.sigma2;
    s.variance *= spec.sigma2 * spec.sigma2;
    return s;
}

int matched_dof(const SumSpec &spec) {
    spec.validate();
    double num = 0.0, den = 0.0;
    for (const WishartTerm &t : spec.terms) {
        num += t.a;
        den += t.a * t.a / t.p;
    }
    const double nu = num * num / den;
    const double rounded = std::round(nu); // half away from zero
    return std::max(1, static_cast<int>(rounded));
}

SumSpec matched_single_term(const SumSpec &spec) {
    SumSpec out;
    out.m = spec.m;
    out.sigma2 = spec.sigma2;
    double total = 0.0;
    for (const WishartTerm &t : spec.terms) total += t.a;
    out.terms = {{matched_dof(spec), total}};
    return out;
}

} // namespace wishart_sum

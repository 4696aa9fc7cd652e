#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "sfncov/errors.hpp"
#include "sfncov/scenario.hpp"

// Shared partial-fraction machinery behind the hypoexponential CDF and the
// outage evaluator. Everything here works on the survival side,
//
//   P[S > z] = prod_j mu_j^(-o_j)
//              * sum_k sum_{l=1}^{o_k} Psi_{k,l}(-1/mu_k) mu_k^(o_k-l)
//                      omega(k, o_k-l) / ((o_k-l)! (l-1)!)
//
// where omega(k, n) = E[U_k^n exp(-U_k)] is supplied by the caller: a plain
// power-times-exponential for a deterministic argument, or the interference
// Laplace-transform derivative for the outage case. Psi derivatives come from
// the log-derivative product recursion, which stays exact for any
// multiplicity. Means are rescaled to geometric mean one first; the sum is
// invariant under that scaling and it keeps every intermediate product in
// range even for mean spreads of several orders of magnitude.

namespace sfncov::detail {

inline double ipow(double base, int exp) {
    double r = 1.0;
    for (int i = 0; i < exp; ++i) r *= base;
    return r;
}

inline double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

inline void validate_spec(const HypoexpSpec& spec) {
    if (spec.means.empty() || spec.means.size() != spec.multiplicities.size())
        throw DomainError("hypoexponential spec is empty or inconsistent");
    for (std::size_t i = 0; i < spec.means.size(); ++i) {
        if (!(spec.means[i] > 0.0) || !std::isfinite(spec.means[i]))
            throw DomainError("hypoexponential means must be positive and finite");
        if (spec.multiplicities[i] < 1)
            throw DomainError("hypoexponential multiplicities must be >= 1");
    }
}

// omega(k, n): n-th survival moment factor for group k (see above).
inline double survival_sum(const HypoexpSpec& spec,
                           const std::function<double(int, int)>& omega) {
    const auto& mult = spec.multiplicities;
    const int groups = static_cast<int>(spec.means.size());

    int total = 0;
    double log_scale = 0.0;
    for (int j = 0; j < groups; ++j) {
        total += mult[j];
        log_scale += mult[j] * std::log(spec.means[j]);
    }
    log_scale /= total;

    std::vector<double> m(groups);
    for (int j = 0; j < groups; ++j)
        m[j] = std::exp(std::log(spec.means[j]) - log_scale);

    std::vector<double> term(groups), log_phi(groups);
    double max_log = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < groups; ++k) {
        const int ok = mult[k];
        const double t0 = -1.0 / m[k];

        // phi(t) = t^-1 prod_{j != k} (1/mu_j + t)^(-o_j) at t0, kept as
        // sign and log magnitude; the factors can be arbitrarily large when
        // means are close.
        double lphi = -std::log(-t0);
        double sign = -1.0;
        for (int j = 0; j < groups; ++j) {
            if (j == k) continue;
            const double d = 1.0 / m[j] + t0;
            lphi -= mult[j] * std::log(std::fabs(d));
            if (d < 0.0 && (mult[j] & 1)) sign = -sign;
        }

        // Derivatives of log phi: h_r = (-1)^r (r-1)! [t0^-r +
        // sum_{j != k} o_j (1/mu_j + t0)^-r]; real even where phi < 0.
        std::vector<double> h(ok, 0.0);
        for (int r = 1; r < ok; ++r) {
            double s = ipow(1.0 / t0, r);
            for (int j = 0; j < groups; ++j) {
                if (j == k) continue;
                s += mult[j] * ipow(1.0 / (1.0 / m[j] + t0), r);
            }
            h[r] = ((r & 1) ? -1.0 : 1.0) * factorial(r - 1) * s;
        }

        // q_n = phi^(n)(t0) / phi(t0) via the exponential product recursion.
        std::vector<double> q(ok, 0.0);
        q[0] = 1.0;
        for (int n = 1; n < ok; ++n) {
            double acc = 0.0;
            double binom = 1.0;  // C(n-1, i)
            for (int i = 0; i < n; ++i) {
                acc += binom * q[i] * h[n - i];
                binom = binom * (n - 1 - i) / (i + 1);
            }
            q[n] = acc;
        }

        // Psi_{k,l} = -phi^(l-1)(t0): fold the minus into the inner sum.
        double inner = 0.0;
        for (int l = 1; l <= ok; ++l) {
            const int n = ok - l;
            inner -= q[l - 1] * ipow(m[k], n) * omega(k, n) /
                     (factorial(n) * factorial(l - 1));
        }
        term[k] = sign * inner;
        log_phi[k] = lphi;
        if (term[k] != 0.0) max_log = std::max(max_log, lphi);
    }

    if (!std::isfinite(max_log)) return 0.0;

    // The prefactor -sum o_j log(mu_j) is zero by the rescaling, up to
    // rounding; carry the residual anyway.
    double log_pre = 0.0;
    for (int j = 0; j < groups; ++j) log_pre -= mult[j] * std::log(m[j]);

    double acc = 0.0;
    for (int k = 0; k < groups; ++k)
        acc += term[k] * std::exp(log_phi[k] - max_log);
    return acc * std::exp(max_log + log_pre);
}

// Raw-value gate shared by every probability-producing closed form.
inline double clamp_probability(double raw, const char* what) {
    if (!(raw >= -1e-9 && raw <= 1.0 + 1e-9))
        throw NumericalInstabilityError(std::string(what) +
                                        " produced a raw value of " +
                                        std::to_string(raw) +
                                        ", outside [-1e-9, 1+1e-9]");
    return std::clamp(raw, 0.0, 1.0);
}

} // namespace sfncov::detail

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "stringmass/model.hpp"

namespace stringmass {

/// Explicit constants of the Lyapunov stability certificate.
///
/// C bounds the functionals I_j against the energy, C1/C2 bound P_j, the
/// epsilons and delta are the admissible Lyapunov weights, and T1..T4 are the
/// waiting times after which V(t) is nonincreasing; T = max(T1..T4).
struct Certificate {
    double C = 0.0;
    double C1 = 0.0;
    double C2 = 0.0;
    double eps2_bound = 0.0;
    double eps1_bound = 0.0;
    double eps1 = 0.0;
    double eps2 = 0.0;
    double delta_lo = 0.0;
    double delta_hi = 0.0;
    double delta = 0.0;
    double T1 = 0.0, T2 = 0.0, T3 = 0.0, T4 = 0.0;
    double T = 0.0;
    double ratio = 0.0; ///< (1+2*eps*C)/(1-2*eps*C) with eps = max(eps1, eps2)
    bool feasible = false;
    std::string reason; ///< names the violated condition when infeasible
};

/// One evaluated inequality of the certificate condition set.
struct Condition {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    bool strict = false;
    bool pass = false;
};

struct ConditionReport {
    std::vector<Condition> conditions;

    bool all_pass() const {
        for (const auto& c : conditions)
            if (!c.pass) return false;
        return true;
    }
};

namespace detail {

inline double cert_C(const PhysicalParams& p) {
    return std::max(std::sqrt(p.rho1 / p.alpha1), std::sqrt(p.rho2 / p.alpha2));
}

inline double cert_C1(const PhysicalParams& p) {
    return 3.0 * std::max(p.length1() * std::sqrt(p.rho1 / p.alpha1),
                          p.length2() * std::sqrt(p.rho2 / p.alpha2));
}

} // namespace detail

/// Evaluates every certificate constant for the given parameters.
///
/// Selection rule: eps2 = half its admissible bound, eps1 = half its bound
/// evaluated at that eps2, delta = midpoint of its interval.  The theorem
/// requires all three gains strictly positive; otherwise the certificate is
/// reported infeasible with the degenerate condition named.
inline Certificate certificate_constants(const PhysicalParams& p, const Gains& g) {
    Certificate c;
    c.C = detail::cert_C(p);
    c.C1 = detail::cert_C1(p);

    if (!(g.b0 > 0.0 && g.b1 > 0.0 && g.d1 > 0.0)) {
        c.feasible = false;
        if (g.b1 <= 0.0)
            c.reason = "eps1 bound m*b1/(rho1*(m+b0*b1)) = 0 (requires b1 > 0)";
        else if (g.b0 <= 0.0)
            c.reason = "eps1 bound eps2*b0*alpha1/(b0*alpha2+eps2*(m+b0*b1)) = 0 (requires b0 > 0)";
        else
            c.reason = "eps2 bound alpha2*d1/(d1^2+alpha2*rho2) = 0 (requires d1 > 0)";
        return c;
    }

    const double s = p.m + g.b0 * g.b1;

    c.eps2_bound = std::min({1.0 / (2.0 * c.C), std::sqrt(p.alpha2 / p.rho2),
                             p.alpha2 * g.d1 / (g.d1 * g.d1 + p.alpha2 * p.rho2)});
    c.eps2 = 0.5 * c.eps2_bound;

    c.eps1_bound = std::min({1.0 / (2.0 * c.C), std::sqrt(p.alpha1 / p.rho1),
                             c.eps2 * g.b0 * p.alpha1 / (g.b0 * p.alpha2 + c.eps2 * s),
                             p.m * g.b1 / (p.rho1 * s)});
    c.eps1 = 0.5 * c.eps1_bound;

    c.delta_lo = g.b0 * p.alpha1 / (g.b0 * p.alpha2 + s * c.eps2);
    c.delta_hi = (g.b0 * p.alpha1 - s * c.eps1) / (g.b0 * p.alpha2);
    if (!(c.delta_lo < c.delta_hi)) {
        c.feasible = false;
        c.reason = "empty delta interval";
        return c;
    }
    c.delta = 0.5 * (c.delta_lo + c.delta_hi);

    const double eps = std::max(c.eps1, c.eps2);
    c.C2 = c.C1 / (1.0 - 2.0 * eps * c.C);
    c.ratio = (1.0 + 2.0 * eps * c.C) / (1.0 - 2.0 * eps * c.C);

    const double den1 =
        g.b0 * p.alpha1 * p.alpha1 - p.alpha1 * c.eps1 * s - c.delta * g.b0 * p.alpha1 * p.alpha2;
    const double den2 = g.b0 * p.alpha2 * p.alpha2 + p.alpha2 * c.eps2 * s -
                        g.b0 * p.alpha1 * p.alpha2 / c.delta;
    const double den3 = p.m * g.b1 - c.eps1 * p.rho1 * s;
    const double den4 = p.alpha2 * g.d1 - c.eps2 * (g.d1 * g.d1 + p.alpha2 * p.rho2);
    const char* names[] = {"T1 denominator", "T2 denominator", "T3 denominator",
                           "T4 denominator"};
    const double dens[] = {den1, den2, den3, den4};
    for (int i = 0; i < 4; ++i) {
        if (!(dens[i] > 0.0)) {
            c.feasible = false;
            c.reason = std::string(names[i]) + " nonpositive";
            return c;
        }
    }

    c.T1 = (1.5 * p.alpha1 * p.length1() * s + 2.0 * g.b0 * g.b0 * p.alpha1 * p.alpha1) / den1;
    c.T2 = (1.5 * p.alpha2 * p.length2() * s + 2.0 * g.b0 * g.b0 * p.alpha2 * p.alpha2) / den2;
    c.T3 = (1.5 * p.rho1 * p.length1() * s + p.m * p.m) / den3;
    c.T4 = (1.5 * p.length2() * p.rho2 * p.alpha2) / den4;
    c.T = std::max({c.T1, c.T2, c.T3, c.T4});
    c.feasible = true;
    return c;
}

/// The explicit decay bound E(t) <= ratio*(T+C2)/(t-C2)*E0, valid for t > T.
inline double decay_bound(const Certificate& cert, double E0, double t) {
    if (!cert.feasible) throw std::invalid_argument("decay_bound: certificate infeasible");
    if (!(t > cert.T)) throw std::invalid_argument("decay_bound: bound asserted only for t > T");
    return cert.ratio * (cert.T + cert.C2) / (t - cert.C2) * E0;
}

/// Evaluates the full condition set of the certificate for user-supplied
/// (eps1, eps2, delta), reporting both sides of every inequality.
inline ConditionReport check_conditions(const PhysicalParams& p, const Gains& g, double eps1,
                                        double eps2, double delta) {
    ConditionReport rep;
    const double C = detail::cert_C(p);
    const double s = p.m + g.b0 * g.b1;
    auto add = [&rep](const std::string& name, double lhs, double rhs, bool strict) {
        Condition c;
        c.name = name;
        c.lhs = lhs;
        c.rhs = rhs;
        c.strict = strict;
        c.pass = strict ? (lhs < rhs) : (lhs <= rhs);
        rep.conditions.push_back(c);
    };
    add("eps2 <= 1/(2C)", eps2, 1.0 / (2.0 * C), false);
    add("eps2 <= sqrt(alpha2/rho2)", eps2, std::sqrt(p.alpha2 / p.rho2), false);
    add("eps2 <= alpha2*d1/(d1^2+alpha2*rho2)", eps2,
        p.alpha2 * g.d1 / (g.d1 * g.d1 + p.alpha2 * p.rho2), false);
    add("eps1 <= 1/(2C)", eps1, 1.0 / (2.0 * C), false);
    add("eps1 <= sqrt(alpha1/rho1)", eps1, std::sqrt(p.alpha1 / p.rho1), false);
    add("eps1 <= eps2*b0*alpha1/(b0*alpha2+eps2*(m+b0*b1))", eps1,
        g.b0 > 0.0 ? eps2 * g.b0 * p.alpha1 / (g.b0 * p.alpha2 + eps2 * s) : 0.0, false);
    add("eps1 <= m*b1/(rho1*(m+b0*b1))", eps1, p.m * g.b1 / (p.rho1 * s), false);
    if (g.b0 > 0.0) {
        add("delta > b0*alpha1/(b0*alpha2+(m+b0*b1)*eps2)",
            g.b0 * p.alpha1 / (g.b0 * p.alpha2 + s * eps2), delta, true);
        add("delta < (b0*alpha1-(m+b0*b1)*eps1)/(b0*alpha2)", delta,
            (g.b0 * p.alpha1 - s * eps1) / (g.b0 * p.alpha2), true);
    } else {
        add("delta interval requires b0 > 0", 0.0, 0.0, true);
    }
    return rep;
}

} // namespace stringmass

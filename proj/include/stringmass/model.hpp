#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace stringmass {

/// Physical constants of the two-string/point-mass system.
///
/// Segment 1 occupies [l0, l1], segment 2 occupies [l1, l2], with the point
/// mass m sitting at the junction x = l1.  l0 is fixed to zero.
struct PhysicalParams {
    double rho1 = 1.0;   ///< mass density of segment 1 (> 0)
    double rho2 = 1.0;   ///< mass density of segment 2 (> 0)
    double alpha1 = 1.0; ///< stiffness of segment 1 (> 0)
    double alpha2 = 1.0; ///< stiffness of segment 2 (> 0)
    double m = 1.0;      ///< interior point mass (> 0)
    double l0 = 0.0;     ///< left end (fixed to 0)
    double l1 = 1.0;     ///< junction position
    double l2 = 2.0;     ///< right end

    double length1() const { return l1 - l0; }
    double length2() const { return l2 - l1; }

    /// Parameter set used throughout the reference experiments:
    /// rho1=sqrt(7), rho2=pi, alpha1=sqrt(3), alpha2=1, m=0.6, l1=1, l2=2.
    static PhysicalParams reference() {
        PhysicalParams p;
        p.rho1 = std::sqrt(7.0);
        p.rho2 = 3.14159265358979323846;
        p.alpha1 = std::sqrt(3.0);
        p.alpha2 = 1.0;
        p.m = 0.6;
        p.l0 = 0.0;
        p.l1 = 1.0;
        p.l2 = 2.0;
        return p;
    }
};

/// Feedback gains of the three damping mechanisms.
///
/// b0: slope-velocity (angular velocity) feedback at the mass,
/// b1: velocity feedback at the mass,
/// d1: velocity feedback at the free right end.
/// All gains are nonnegative; zero switches the mechanism off.
struct Gains {
    double b0 = 1.0;
    double b1 = 1.0;
    double d1 = 1.0;
};

/// Outcome of parameter validation: empty means valid.
struct ValidationReport {
    std::vector<std::string> violations;

    bool valid() const { return violations.empty(); }
};

/// Checks every invariant of PhysicalParams and Gains and reports all
/// violations at once.
inline ValidationReport validate_params(const PhysicalParams& p, const Gains& g) {
    ValidationReport rep;
    auto require = [&rep](bool ok, const std::string& msg) {
        if (!ok) rep.violations.push_back(msg);
    };
    require(p.rho1 > 0.0, "rho1 must be positive");
    require(p.rho2 > 0.0, "rho2 must be positive");
    require(p.alpha1 > 0.0, "alpha1 must be positive");
    require(p.alpha2 > 0.0, "alpha2 must be positive");
    require(p.m > 0.0, "m must be positive");
    require(p.l0 == 0.0, "l0 must equal 0");
    require(p.l0 < p.l1 && p.l1 < p.l2, "endpoints must be strictly increasing");
    require(std::isfinite(p.rho1) && std::isfinite(p.rho2) && std::isfinite(p.alpha1) &&
                std::isfinite(p.alpha2) && std::isfinite(p.m) && std::isfinite(p.l1) &&
                std::isfinite(p.l2),
            "parameters must be finite");
    require(g.b0 >= 0.0, "b0 must be nonnegative");
    require(g.b1 >= 0.0, "b1 must be nonnegative");
    require(g.d1 >= 0.0, "d1 must be nonnegative");
    return rep;
}

/// Initial condition of the simulation.
///
/// Analytic variants are evaluated pointwise in the global coordinate x;
/// CustomSamples carries per-segment nodal samples (including both segment
/// endpoints) that must match the grid they are applied to.
struct InitialCondition {
    enum class Kind { Zero, SineVelocity, BoxDisplacement, PaperExperiment, CustomSamples };

    Kind kind = Kind::Zero;
    double sine_k = 4.0; ///< wavenumber multiplier of the sinusoidal velocity

    // CustomSamples payload; w1/w2 are displacements, v1/v2 velocities,
    // sampled at the segment nodes including endpoints.
    std::vector<double> w1, v1, w2, v2;

    /// Box profile: (-1)^(i+1) on the interval centered at each segment's
    /// midpoint with half-width a quarter of the segment length.  At the
    /// jump points the value is the average of the one-sided limits.
    static double box_displacement(double x, const PhysicalParams& p) {
        auto box = [](double x, double lo, double hi, double sign) {
            if (x > lo && x < hi) return sign;
            if (x == lo || x == hi) return 0.5 * sign;
            return 0.0;
        };
        const double L1 = p.length1(), L2 = p.length2();
        double v = 0.0;
        v += box(x, p.l0 + L1 / 4.0, p.l0 + 3.0 * L1 / 4.0, +1.0);
        v += box(x, p.l1 + L2 / 4.0, p.l1 + 3.0 * L2 / 4.0, -1.0);
        return v;
    }

    double displacement(double x, const PhysicalParams& p) const {
        switch (kind) {
            case Kind::BoxDisplacement:
            case Kind::PaperExperiment:
                return box_displacement(x, p);
            default:
                return 0.0;
        }
    }

    double velocity(double x, const PhysicalParams& p) const {
        switch (kind) {
            case Kind::SineVelocity:
            case Kind::PaperExperiment:
                return std::sin(sine_k * 3.14159265358979323846 * x / p.l2);
            default:
                return 0.0;
        }
    }

    bool is_custom() const { return kind == Kind::CustomSamples; }
};

/// The reference experiment: box displacement plus sinusoidal velocity,
/// applied simultaneously.
inline InitialCondition paper_experiment_ic() {
    InitialCondition ic;
    ic.kind = InitialCondition::Kind::PaperExperiment;
    ic.sine_k = 4.0;
    return ic;
}

inline InitialCondition zero_ic() { return InitialCondition{}; }

inline InitialCondition sine_velocity_ic(double k = 4.0) {
    InitialCondition ic;
    ic.kind = InitialCondition::Kind::SineVelocity;
    ic.sine_k = k;
    return ic;
}

inline InitialCondition box_displacement_ic() {
    InitialCondition ic;
    ic.kind = InitialCondition::Kind::BoxDisplacement;
    return ic;
}

} // namespace stringmass

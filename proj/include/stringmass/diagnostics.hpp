#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "stringmass/energy_form.hpp"

namespace stringmass {

/// Discrete total energy E(Psi) = 1/2 Psi^T Q Psi (see EnergyForm).
inline double discrete_energy(const SecondOrderSystem& sys, const EnergyForm& ef,
                              const StateVector& psi) {
    if (ef.Q.rows() != 2 * sys.n || psi.size() != sys.n)
        throw std::invalid_argument("discrete_energy: form/state dimension mismatch");
    const Eigen::VectorXd x = psi.packed();
    return 0.5 * x.dot(ef.Q * x);
}

/// The literal midpoint-quadrature energy written as an explicit sum:
/// sum_cells h*rho*((v_j+v_{j+1})/2)^2/2 + h*alpha*((u_{j+1}-u_j)/h)^2/2
/// plus eta_h^2/(2(m+b0*b1)).  Coincides with discrete_energy when b0 = 0.
inline double midpoint_sum_energy(const SecondOrderSystem& sys, const StateVector& psi);

/// Discrete auxiliary variable eta_h = b0*(a1*du1 - a2*du2) + m*v_z with
/// midpoint slopes at the interface.
inline double discrete_eta(const SecondOrderSystem& sys, const StateVector& psi) {
    return sys.gains.b0 * sys.flux_difference(psi.u) + sys.params.m * psi.v[sys.iz];
}

/// Right-hand side of the dissipation identity,
/// -b0/s*F_h^2 - m*b1/s*v_z^2 - d1*v_r^2.
inline double dissipation_rhs(const SecondOrderSystem& sys, const StateVector& psi) {
    const double s = sys.s();
    const double F = sys.flux_difference(psi.u);
    const double vz = psi.v[sys.iz];
    const double vr = psi.v[sys.ir];
    return -sys.gains.b0 / s * F * F - sys.params.m * sys.gains.b1 / s * vz * vz -
           sys.gains.d1 * vr * vr;
}

/// d/dt E along the generator: <grad E, A_h Psi>.
inline double energy_derivative(const SecondOrderSystem& sys, const EnergyForm& ef,
                                const StateVector& psi) {
    const StateVector dot = apply_generator(sys, psi);
    const Eigen::VectorXd x = psi.packed();
    const Eigen::VectorXd xdot = dot.packed();
    return x.dot(ef.Q * xdot);
}

struct LyapunovFunctionals {
    double L = 0.0;
    double V = 0.0;
    double I1 = 0.0;
    double I2 = 0.0;
    double P1 = 0.0;
    double P2 = 0.0;
};

namespace detail {

/// Per-cell midpoint accumulation over one segment.
/// f(v_mid, slope, x_mid) is integrated as sum h * f.
template <typename F>
double cell_sum(const SecondOrderSystem& sys, const StateVector& psi, int segment, F&& f) {
    const Grid& gr = sys.grid;
    double acc = 0.0;
    if (segment == 1) {
        const double h = gr.h1;
        for (int j = 0; j <= gr.N1; ++j) {
            // node j of segment 1: j=0 is the Dirichlet node (u=v=0), node j>=1 at index j-1
            const double ua = (j == 0) ? 0.0 : psi.u[j - 1];
            const double va = (j == 0) ? 0.0 : psi.v[j - 1];
            const double ub = psi.u[j];
            const double vb = psi.v[j];
            acc += h * f(0.5 * (va + vb), (ub - ua) / h, 0.5 * (gr.x1[j] + gr.x1[j + 1]));
        }
    } else {
        const double h = gr.h2;
        for (int j = 0; j <= gr.N2; ++j) {
            const int ia = sys.iz + j;
            acc += h * f(0.5 * (psi.v[ia] + psi.v[ia + 1]), (psi.u[ia + 1] - psi.u[ia]) / h,
                         0.5 * (gr.x2[j] + gr.x2[j + 1]));
        }
    }
    return acc;
}

} // namespace detail

inline double midpoint_sum_energy(const SecondOrderSystem& sys, const StateVector& psi) {
    const PhysicalParams& p = sys.params;
    double e = 0.0;
    e += detail::cell_sum(sys, psi, 1, [&](double vm, double sl, double) {
        return 0.5 * (p.rho1 * vm * vm + p.alpha1 * sl * sl);
    });
    e += detail::cell_sum(sys, psi, 2, [&](double vm, double sl, double) {
        return 0.5 * (p.rho2 * vm * vm + p.alpha2 * sl * sl);
    });
    const double eta = discrete_eta(sys, psi);
    return e + eta * eta / (2.0 * sys.s());
}

/// The functionals I_j = 2 int rho_j w_t w_x dx, P_j = 3 int (x-l_{j-1}) rho_j
/// w_x w_t dx by midpoint quadrature, and L = E + eps1 I1 + eps2 I2,
/// V = t L + P1 + P2.
inline LyapunovFunctionals lyapunov_functionals(const SecondOrderSystem& sys,
                                                const EnergyForm& ef, const StateVector& psi,
                                                double t, double eps1, double eps2) {
    if (!(eps1 > 0.0) || !(eps2 > 0.0))
        throw std::invalid_argument("lyapunov_functionals: eps1, eps2 must be positive");
    const PhysicalParams& p = sys.params;
    LyapunovFunctionals out;
    out.I1 = detail::cell_sum(sys, psi, 1, [&](double vm, double sl, double) {
        return 2.0 * p.rho1 * vm * sl;
    });
    out.I2 = detail::cell_sum(sys, psi, 2, [&](double vm, double sl, double) {
        return 2.0 * p.rho2 * vm * sl;
    });
    out.P1 = detail::cell_sum(sys, psi, 1, [&](double vm, double sl, double xm) {
        return 3.0 * (xm - p.l0) * p.rho1 * sl * vm;
    });
    out.P2 = detail::cell_sum(sys, psi, 2, [&](double vm, double sl, double xm) {
        return 3.0 * (xm - p.l1) * p.rho2 * sl * vm;
    });
    const double E = discrete_energy(sys, ef, psi);
    out.L = E + eps1 * out.I1 + eps2 * out.I2;
    out.V = t * out.L + out.P1 + out.P2;
    return out;
}

/// One row of the energy diagnostics table.
struct EnergyReport {
    double t = 0.0;
    double E = 0.0;
    double E_norm = 0.0;
    double L = 0.0;
    double V = 0.0;
    double I1 = 0.0;
    double I2 = 0.0;
    double P1 = 0.0;
    double P2 = 0.0;
    double eta = 0.0;
    double diss_rhs = 0.0;
};

/// Least-squares decay fits of an energy trace.
struct DecayFit {
    double sigma_hat = 0.0; ///< exponential rate: E ~ A exp(-sigma t)
    double r2_exp = 0.0;
    double p_hat = 0.0; ///< polynomial rate: E ~ B t^-p, fitted on t >= 1
    double r2_poly = 0.0;
};

namespace detail {

struct LineFit {
    double slope = 0.0, intercept = 0.0, r2 = 0.0;
};

inline LineFit least_squares_line(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = x.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ssres = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e = y[i] - (f.intercept + f.slope * x[i]);
        ssres += e * e;
    }
    f.r2 = (syy > 0) ? 1.0 - ssres / syy : 1.0;
    return f;
}

} // namespace detail

inline DecayFit fit_decay(const std::vector<double>& times, const std::vector<double>& energies) {
    if (times.size() != energies.size() || times.size() < 10)
        throw std::invalid_argument("fit_decay: need at least 10 samples");
    for (double e : energies)
        if (!(e > 0.0)) throw std::invalid_argument("fit_decay: energies must be positive");

    std::vector<double> logE(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) logE[i] = std::log(energies[i]);

    DecayFit out;
    auto fexp = detail::least_squares_line(times, logE);
    out.sigma_hat = -fexp.slope;
    out.r2_exp = fexp.r2;

    std::vector<double> lt, le;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] >= 1.0) {
            lt.push_back(std::log(times[i]));
            le.push_back(logE[i]);
        }
    }
    if (lt.size() >= 10) {
        auto fpoly = detail::least_squares_line(lt, le);
        out.p_hat = -fpoly.slope;
        out.r2_poly = fpoly.r2;
    }
    return out;
}

} // namespace stringmass

#pragma once

#include <Eigen/Dense>
#include <Eigen/LU>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "stringmass/assembly.hpp"
#include "stringmass/model.hpp"

namespace stringmass {

/// Samples an initial condition on the system's grid (left Dirichlet node
/// eliminated, z stored once).
inline StateVector sample_initial_state(const SecondOrderSystem& sys,
                                        const InitialCondition& ic) {
    const Grid& gr = sys.grid;
    Eigen::VectorXd u(sys.n), v(sys.n);
    if (ic.is_custom()) {
        const std::size_t n1 = static_cast<std::size_t>(gr.N1) + 2;
        const std::size_t n2 = static_cast<std::size_t>(gr.N2) + 2;
        if (ic.w1.size() != n1 || ic.v1.size() != n1 || ic.w2.size() != n2 || ic.v2.size() != n2)
            throw std::invalid_argument("initial condition samples do not match the grid");
        if (ic.w1.front() != 0.0 || ic.v1.front() != 0.0)
            throw std::invalid_argument("initial condition violates the left Dirichlet condition");
        if (ic.w1.back() != ic.w2.front() || ic.v1.back() != ic.v2.front())
            throw std::invalid_argument("initial condition discontinuous at the interface");
        for (int j = 1; j <= gr.N1 + 1; ++j) {
            u[j - 1] = ic.w1[j];
            v[j - 1] = ic.v1[j];
        }
        for (int j = 1; j <= gr.N2 + 1; ++j) {
            u[sys.iz + j] = ic.w2[j];
            v[sys.iz + j] = ic.v2[j];
        }
        return {u, v};
    }
    for (int j = 1; j <= gr.N1 + 1; ++j) {
        u[j - 1] = ic.displacement(gr.x1[j], sys.params);
        v[j - 1] = ic.velocity(gr.x1[j], sys.params);
    }
    for (int j = 1; j <= gr.N2 + 1; ++j) {
        u[sys.iz + j] = ic.displacement(gr.x2[j], sys.params);
        v[sys.iz + j] = ic.velocity(gr.x2[j], sys.params);
    }
    return {u, v};
}

/// One-step trapezoidal (implicit midpoint) integrator for Psi_t = A_h Psi.
///
/// Eliminating the displacement update gives the n x n step system
///   [Mfull + dt/2 D + dt^2/4 K] v' = (Mfull - dt^2/4 K) v - dt K u - dt/2 D v,
///   u' = u + dt/2 (v + v'),
/// factored once per (system, dt).
class TrapezoidalStepper {
public:
    TrapezoidalStepper(const SecondOrderSystem& sys, double dt) : sys_(&sys), dt_(dt) {
        if (!(dt != 0.0) || !std::isfinite(dt))
            throw std::invalid_argument("TrapezoidalStepper: dt must be nonzero and finite");
        const Eigen::MatrixXd S =
            sys.Mfull + (dt / 2.0) * sys.Dmat + (dt * dt / 4.0) * sys.K;
        lu_.compute(S);
        // factor sanity probe
        Eigen::VectorXd probe = Eigen::VectorXd::Ones(sys.n);
        Eigen::VectorXd back = lu_.solve(S * probe);
        if (!back.allFinite() || (back - probe).norm() > 1e-8 * std::sqrt((double)sys.n))
            throw std::runtime_error("TrapezoidalStepper: singular step matrix");
    }

    double dt() const { return dt_; }

    StateVector step(const StateVector& psi) const {
        const SecondOrderSystem& sys = *sys_;
        if (psi.u.size() != sys.n)
            throw std::invalid_argument("TrapezoidalStepper: state dimension mismatch");
        Eigen::VectorXd rhs = sys.Mfull * psi.v - (dt_ * dt_ / 4.0) * (sys.K * psi.v) -
                              dt_ * (sys.K * psi.u) - (dt_ / 2.0) * (sys.Dmat * psi.v);
        Eigen::VectorXd vnew = lu_.solve(rhs);
        Eigen::VectorXd unew = psi.u + (dt_ / 2.0) * (psi.v + vnew);
        return {unew, vnew};
    }

private:
    const SecondOrderSystem* sys_;
    double dt_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

inline StateVector step_trapezoidal(const SecondOrderSystem& sys, const StateVector& psi,
                                    double dt) {
    return TrapezoidalStepper(sys, dt).step(psi);
}

/// Recorded trajectory with uniform sampling stride.
struct Trajectory {
    std::vector<double> times;
    std::vector<StateVector> states;
    double dt = 0.0;
    double t_final = 0.0;
};

inline Trajectory simulate(const SecondOrderSystem& sys, const InitialCondition& ic, double dt,
                           double t_final, int record_every = 10) {
    if (!(dt > 0.0)) throw std::invalid_argument("simulate: dt must be positive");
    if (!(t_final >= dt)) throw std::invalid_argument("simulate: T_final must be >= dt");
    if (record_every < 1) throw std::invalid_argument("simulate: record_every must be >= 1");

    Trajectory traj;
    traj.dt = dt;
    traj.t_final = t_final;
    const long nsteps = static_cast<long>(std::floor(t_final / dt + 1e-9));

    TrapezoidalStepper stepper(sys, dt);
    StateVector psi = sample_initial_state(sys, ic);
    traj.times.push_back(0.0);
    traj.states.push_back(psi);
    for (long k = 1; k <= nsteps; ++k) {
        psi = stepper.step(psi);
        if (k % record_every == 0) {
            traj.times.push_back(k * dt);
            traj.states.push_back(psi);
        }
    }
    return traj;
}

} // namespace stringmass

#pragma once

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <stdexcept>

#include "stringmass/grid.hpp"
#include "stringmass/model.hpp"

namespace stringmass {

/// Concatenated displacement/velocity samples of the semi-discrete system.
///
/// Ordering: segment-1 interior nodes 1..N1, the shared interface value z,
/// then segment-2 nodes 1..N2+1.  The left Dirichlet node is eliminated and
/// w^2_0 is an alias of z, never a separate unknown.
struct StateVector {
    Eigen::VectorXd u;
    Eigen::VectorXd v;

    StateVector() = default;
    StateVector(Eigen::VectorXd u_, Eigen::VectorXd v_) : u(std::move(u_)), v(std::move(v_)) {}

    Eigen::Index size() const { return u.size(); }

    StateVector operator+(const StateVector& o) const { return {u + o.u, v + o.v}; }
    StateVector operator-(const StateVector& o) const { return {u - o.u, v - o.v}; }
    StateVector operator*(double a) const { return {a * u, a * v}; }

    Eigen::VectorXd packed() const {
        Eigen::VectorXd x(2 * u.size());
        x << u, v;
        return x;
    }
    static StateVector unpack(const Eigen::VectorXd& x) {
        const Eigen::Index n = x.size() / 2;
        return {x.head(n), x.tail(n)};
    }
};

/// Assembled semi-discrete dynamics  Mfull ü + Dmat u̇ + K u = 0.
///
/// Interior rows are scaled by their step size so Mseg and K come out
/// symmetric; the interface and right-boundary rows carry the half-cell
/// momentum terms and the feedback damping of the scheme.
struct SecondOrderSystem {
    PhysicalParams params;
    Gains gains;
    Grid grid;

    int n = 0;  ///< unknown count N1+N2+2
    int iz = 0; ///< index of the interface DOF z
    int ir = 0; ///< index of the right-boundary DOF

    Eigen::MatrixXd Mseg;  ///< string mass matrix (averaged stencils, no point mass)
    Eigen::MatrixXd Mfull; ///< Mseg + m e_z e_z^T
    Eigen::MatrixXd K;     ///< stiffness
    Eigen::MatrixXd Dmat;  ///< damping (rows at z and at the right end)

    Eigen::LLT<Eigen::MatrixXd> Mfull_llt; ///< factored once at assembly

    double s() const { return params.m + gains.b0 * gains.b1; }

    /// Midpoint slope difference at the mass:
    /// F_h = alpha1*(z - u1_N1)/h1 - alpha2*(u2_1 - z)/h2.
    double flux_difference(const Eigen::VectorXd& w) const {
        const double d1 = (w[iz] - w[iz - 1]) / grid.h1;
        const double d2 = (w[iz + 1] - w[iz]) / grid.h2;
        return params.alpha1 * d1 - params.alpha2 * d2;
    }
};

inline SecondOrderSystem assemble(const PhysicalParams& p, const Gains& g, const Grid& grid) {
    {
        auto rep = validate_params(p, g);
        if (!rep.valid()) throw std::invalid_argument("assemble: " + rep.violations.front());
    }
    SecondOrderSystem sys;
    sys.params = p;
    sys.gains = g;
    sys.grid = grid;
    const int N1 = grid.N1, N2 = grid.N2;
    sys.n = N1 + N2 + 2;
    sys.iz = N1;
    sys.ir = sys.n - 1;
    const double h1 = grid.h1, h2 = grid.h2;

    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(sys.n, sys.n);
    Eigen::MatrixXd K = Eigen::MatrixXd::Zero(sys.n, sys.n);
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(sys.n, sys.n);

    // segment-1 interior rows (node j=1..N1 at index j-1), row scaled by h1;
    // u^1_0 = 0 is eliminated
    for (int j = 1; j <= N1; ++j) {
        const int r = j - 1;
        if (j >= 2) M(r, r - 1) += p.rho1 * h1 / 4.0;
        M(r, r) += p.rho1 * h1 / 2.0;
        M(r, r + 1) += p.rho1 * h1 / 4.0;
        if (j >= 2) K(r, r - 1) += -p.alpha1 / h1;
        K(r, r) += 2.0 * p.alpha1 / h1;
        K(r, r + 1) += -p.alpha1 / h1;
    }
    // segment-2 interior rows (node j=1..N2 at index iz+j), row scaled by h2;
    // node j=0 aliases z at index iz
    for (int j = 1; j <= N2; ++j) {
        const int r = sys.iz + j;
        M(r, r - 1) += p.rho2 * h2 / 4.0;
        M(r, r) += p.rho2 * h2 / 2.0;
        M(r, r + 1) += p.rho2 * h2 / 4.0;
        K(r, r - 1) += -p.alpha2 / h2;
        K(r, r) += 2.0 * p.alpha2 / h2;
        K(r, r + 1) += -p.alpha2 / h2;
    }
    // interface row (DOF z)
    {
        const int r = sys.iz;
        M(r, r - 1) += p.rho1 * h1 / 4.0;
        M(r, r) += p.rho1 * h1 / 4.0 + p.rho2 * h2 / 4.0;
        M(r, r + 1) += p.rho2 * h2 / 4.0;
        K(r, r - 1) += -p.alpha1 / h1;
        K(r, r) += p.alpha1 / h1 + p.alpha2 / h2;
        K(r, r + 1) += -p.alpha2 / h2;
        D(r, r) += g.b1 + g.b0 * (p.alpha1 / h1 + p.alpha2 / h2);
        D(r, r - 1) += -g.b0 * p.alpha1 / h1;
        D(r, r + 1) += -g.b0 * p.alpha2 / h2;
    }
    // right-boundary row
    {
        const int r = sys.ir;
        M(r, r - 1) += p.rho2 * h2 / 4.0;
        M(r, r) += p.rho2 * h2 / 4.0;
        K(r, r - 1) += -p.alpha2 / h2;
        K(r, r) += p.alpha2 / h2;
        D(r, r) += g.d1;
    }

    sys.Mseg = M;
    sys.Mfull = M;
    sys.Mfull(sys.iz, sys.iz) += p.m;
    sys.K = K;
    sys.Dmat = D;
    sys.Mfull_llt.compute(sys.Mfull);
    if (sys.Mfull_llt.info() != Eigen::Success)
        throw std::runtime_error("assemble: Mfull not positive definite");
    return sys;
}

/// The generator action Psi -> (v, a) with Mfull a = -K u - Dmat v, using the
/// Cholesky factor computed at assembly.
inline StateVector apply_generator(const SecondOrderSystem& sys, const StateVector& psi) {
    if (psi.u.size() != sys.n || psi.v.size() != sys.n)
        throw std::invalid_argument("apply_generator: state dimension mismatch");
    Eigen::VectorXd rhs = -(sys.K * psi.u) - sys.Dmat * psi.v;
    Eigen::VectorXd a = sys.Mfull_llt.solve(rhs);
    return {psi.v, a};
}

/// Explicit first-order operator A = [[0, I], [-Mfull^-1 K, -Mfull^-1 Dmat]].
inline Eigen::MatrixXd dense_operator(const SecondOrderSystem& sys) {
    const int n = sys.n;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    A.topRightCorner(n, n).setIdentity();
    A.bottomLeftCorner(n, n) = -sys.Mfull_llt.solve(sys.K);
    A.bottomRightCorner(n, n) = -sys.Mfull_llt.solve(sys.Dmat);
    return A;
}

} // namespace stringmass

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "stringmass/assembly.hpp"

namespace stringmass {

/// Full spectrum of the dense first-order operator with verified residuals.
struct Spectrum {
    Eigen::VectorXcd eigenvalues;
    Eigen::VectorXd residuals; ///< ||A v - lambda v|| / ||A||_F per eigenpair
    double opnorm = 0.0;       ///< Frobenius norm of the dense operator
    int N1 = 0, N2 = 0;
    Gains gains;
};

/// Computes all 2n eigenpairs of dense_operator(sys) and verifies each
/// residual against 1e-8 * ||A||_F.  The solver is a balanced Hessenberg
/// reduction with shifted QR iteration (Eigen's EigenSolver).
inline Spectrum eigenvalues(const SecondOrderSystem& sys) {
    const Eigen::MatrixXd A = dense_operator(sys);
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, /*computeEigenvectors=*/true);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigenvalues: QR iteration did not converge");

    Spectrum spec;
    spec.eigenvalues = es.eigenvalues();
    spec.opnorm = A.norm();
    spec.N1 = sys.grid.N1;
    spec.N2 = sys.grid.N2;
    spec.gains = sys.gains;

    const Eigen::MatrixXcd V = es.eigenvectors();
    const Eigen::MatrixXcd Ac = A.cast<std::complex<double>>();
    const Eigen::Index m = spec.eigenvalues.size();
    spec.residuals.resize(m);
    for (Eigen::Index k = 0; k < m; ++k) {
        const Eigen::VectorXcd v = V.col(k);
        const double r = (Ac * v - spec.eigenvalues[k] * v).norm() / (spec.opnorm * v.norm());
        spec.residuals[k] = r;
        if (!(r <= 1e-8))
            throw std::runtime_error("eigenvalues: unverified eigenpair at index " +
                                     std::to_string(k));
    }
    return spec;
}

struct SpectralMetrics {
    double abscissa = 0.0; ///< max Re(lambda)
    double min_gap = 0.0;  ///< min |Re(lambda)| over nonzero eigenvalues
    std::vector<std::pair<double, double>> gap_profile; ///< sorted (|Im|, |Re|)
};

inline SpectralMetrics spectral_metrics(const Spectrum& spec) {
    SpectralMetrics m;
    m.abscissa = -std::numeric_limits<double>::infinity();
    m.min_gap = std::numeric_limits<double>::infinity();
    const double zero_tol = 1e-10 * spec.opnorm;
    for (Eigen::Index k = 0; k < spec.eigenvalues.size(); ++k) {
        const std::complex<double> lam = spec.eigenvalues[k];
        m.abscissa = std::max(m.abscissa, lam.real());
        if (std::abs(lam) > zero_tol) m.min_gap = std::min(m.min_gap, std::abs(lam.real()));
        m.gap_profile.emplace_back(std::abs(lam.imag()), std::abs(lam.real()));
    }
    std::sort(m.gap_profile.begin(), m.gap_profile.end());
    return m;
}

} // namespace stringmass

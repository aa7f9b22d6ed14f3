#pragma once

#include <stdexcept>
#include <vector>

#include "stringmass/model.hpp"

namespace stringmass {

/// Uniform per-segment grid.
///
/// Segment i is divided into Ni+1 cells of width hi; node j of segment i sits
/// at l_{i-1} + j*hi for j = 0..Ni+1.  The last node of segment 1 and node 0
/// of segment 2 coincide at the junction l1.
struct Grid {
    int N1 = 1;
    int N2 = 1;
    double h1 = 0.0;
    double h2 = 0.0;
    std::vector<double> x1; ///< segment-1 nodes, size N1+2
    std::vector<double> x2; ///< segment-2 nodes, size N2+2

    std::vector<double> midpoints1() const {
        std::vector<double> m(x1.size() - 1);
        for (std::size_t j = 0; j + 1 < x1.size(); ++j) m[j] = 0.5 * (x1[j] + x1[j + 1]);
        return m;
    }
    std::vector<double> midpoints2() const {
        std::vector<double> m(x2.size() - 1);
        for (std::size_t j = 0; j + 1 < x2.size(); ++j) m[j] = 0.5 * (x2[j] + x2[j + 1]);
        return m;
    }
};

inline Grid build_grid(const PhysicalParams& p, int N1, int N2) {
    if (N1 < 1 || N2 < 1) throw std::invalid_argument("grid counts N1, N2 must be >= 1");
    Grid g;
    g.N1 = N1;
    g.N2 = N2;
    g.h1 = p.length1() / (N1 + 1);
    g.h2 = p.length2() / (N2 + 1);
    g.x1.resize(N1 + 2);
    g.x2.resize(N2 + 2);
    for (int j = 0; j <= N1 + 1; ++j) g.x1[j] = p.l0 + j * g.h1;
    g.x1[N1 + 1] = p.l1; // pin the endpoint exactly
    for (int j = 0; j <= N2 + 1; ++j) g.x2[j] = p.l1 + j * g.h2;
    g.x2[N2 + 1] = p.l2;
    return g;
}

} // namespace stringmass

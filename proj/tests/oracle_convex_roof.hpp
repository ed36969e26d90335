// oracle_convex_roof.hpp — Test-only entanglement-of-formation oracle: direct
// convex-roof minimization over four-member pure decompositions by
// random-restart local search over decomposition isometries. Independent of
// the concurrence construction it cross-checks.

#pragma once

#include "qcb/linalg.hpp"
#include "qcb/rng.hpp"

#include <algorithm>
#include <vector>

namespace qcb_test {

using qcb::Complex;
using qcb::CounterRng;
using qcb::DensityOperator;
using qcb::Matrix;
using qcb::Vector;

// Reduced entropy of a (possibly unnormalized) two-qubit pure vector.
inline double reduced_entropy(const Vector& psi_tilde) {
    const double p = psi_tilde.squaredNorm();
    if (p < 1e-14) return 0.0;
    // Reshape into the 2x2 coefficient matrix; the reduced spectrum follows
    // from its singular values.
    Matrix m(2, 2);
    m << psi_tilde(0), psi_tilde(1), psi_tilde(2), psi_tilde(3);
    m /= std::sqrt(p);
    const double det2 = std::norm(m.determinant());
    const double disc = std::sqrt(std::max(0.0, 1.0 - 4.0 * det2));
    const double lam = 0.5 * (1.0 + disc);
    return (qcb::eta(lam) + qcb::eta(1.0 - lam)) * p;
}

// Cost of the decomposition induced by an isometry u (members x rank): average
// reduced entropy over members, weighted by the member probabilities.
inline double roof_cost(const Matrix& u, const std::vector<Vector>& scaled_eigvecs) {
    double cost = 0.0;
    for (Eigen::Index k = 0; k < u.rows(); ++k) {
        Vector psi = Vector::Zero(4);
        for (Eigen::Index j = 0; j < u.cols(); ++j) {
            psi += u(k, j) * scaled_eigvecs[static_cast<std::size_t>(j)];
        }
        cost += reduced_entropy(psi);
    }
    return cost;
}

inline Matrix random_isometry(Eigen::Index rows, Eigen::Index cols, CounterRng& rng) {
    Matrix a(rows, rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < rows; ++j) a(i, j) = rng.complex_normal();
    }
    Eigen::HouseholderQR<Matrix> qr(a);
    const Matrix q = qr.householderQ();
    return q.leftCols(cols);
}

inline Matrix reorthonormalize(const Matrix& u) {
    Eigen::HouseholderQR<Matrix> qr(u);
    Matrix q = qr.householderQ();
    return q.leftCols(u.cols());
}

// Minimum average reduced entropy over 4-member pure decompositions, in nats.
inline double convex_roof_eof(const DensityOperator& rho, int restarts = 72, int iters = 500,
                              std::uint64_t seed = 99) {
    std::vector<Vector> scaled;
    std::vector<double> lams;
    for (Eigen::Index j = 0; j < 4; ++j) {
        const double lam = rho.eigenvalues()(j);
        if (lam > 1e-12) {
            scaled.push_back(std::sqrt(lam) * rho.eigenvectors().col(j));
            lams.push_back(lam);
        }
    }
    const Eigen::Index rank = static_cast<Eigen::Index>(scaled.size());
    const Eigen::Index members = 4;
    double best = std::numeric_limits<double>::infinity();
    CounterRng root(seed);
    for (int r = 0; r < restarts; ++r) {
        CounterRng rng = root.substream(static_cast<std::uint64_t>(r));
        Matrix u = random_isometry(members, rank, rng);
        double cost = roof_cost(u, scaled);
        for (int it = 0; it < iters; ++it) {
            const double amp = 0.4 * std::pow(0.02 / 0.4, double(it) / double(iters - 1));
            Matrix cand = u;
            for (Eigen::Index i = 0; i < members; ++i) {
                for (Eigen::Index j = 0; j < rank; ++j) {
                    cand(i, j) += amp * rng.complex_normal();
                }
            }
            cand = reorthonormalize(cand);
            const double c = roof_cost(cand, scaled);
            if (c < cost) {
                cost = c;
                u = cand;
            }
        }
        best = std::min(best, cost);
    }
    return best;
}

} // namespace qcb_test

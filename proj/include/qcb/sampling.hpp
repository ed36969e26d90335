// sampling.hpp — Constrained random state generation for verification
// campaigns: Haar-ish bases, simplex draws under rank or energy caps, and
// commuting pairs steered to a target trace distance by convex mixing.

#pragma once

#include "qcb/common.hpp"
#include "qcb/hamiltonians.hpp"
#include "qcb/linalg.hpp"
#include "qcb/rng.hpp"

#include <variant>
#include <vector>

namespace qcb {

// --------------------------- raw draws -------------------------------------------

inline Matrix random_gaussian_matrix(Eigen::Index d, CounterRng& rng) {
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = rng.complex_normal();
    }
    return m;
}

// Haar-distributed unitary via QR of a complex Gaussian with phase correction.
inline Matrix haar_unitary(Eigen::Index d, CounterRng& rng) {
    const Matrix a = random_gaussian_matrix(d, rng);
    Eigen::HouseholderQR<Matrix> qr(a);
    Matrix q = qr.householderQ();
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < d; ++j) {
        const Complex rjj = r(j, j);
        if (std::abs(rjj) > 0.0) q.col(j) *= rjj / std::abs(rjj);
    }
    return q;
}

// Uniform-ish point of the simplex (normalized exponentials).
inline RealVector random_simplex(Eigen::Index d, CounterRng& rng) {
    RealVector p(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        double u = rng.uniform();
        while (u <= 0.0) u = rng.uniform();
        p(i) = -std::log(u);
    }
    return p / p.sum();
}

// Full-rank random density matrix (Hilbert-Schmidt ensemble).
inline DensityOperator random_density(Eigen::Index d, CounterRng& rng) {
    const Matrix gm = random_gaussian_matrix(d, rng);
    Matrix m = gm * gm.adjoint();
    m /= m.trace().real();
    return DensityOperator::from_matrix(0.5 * (m + m.adjoint()));
}

// Random density of rank at most r (tall Gaussian factor).
inline DensityOperator random_density_rank(Eigen::Index d, Eigen::Index r, CounterRng& rng) {
    Matrix gm(d, r);
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < r; ++j) gm(i, j) = rng.complex_normal();
    }
    Matrix m = gm * gm.adjoint();
    m /= m.trace().real();
    return DensityOperator::from_matrix(0.5 * (m + m.adjoint()));
}

inline DensityOperator random_pure(Eigen::Index d, CounterRng& rng) {
    Vector v(d);
    for (Eigen::Index i = 0; i < d; ++i) v(i) = rng.complex_normal();
    return DensityOperator::pure(v);
}

// --------------------------- constrained simplex draws -----------------------------

// Simplex point with spectrum-weighted mean at most E: a raw draw is projected
// onto the energy-cap simplex by mixing toward the ground vertex until the mean
// lands on a uniformly drawn fraction of the cap.
inline RealVector energy_capped_simplex(const Spectrum& spec, Eigen::Index d, double E,
                                        CounterRng& rng) {
    if (!(E > 0.0)) throw InfeasibleConstraintError("energy_capped_simplex: need E > 0");
    if (!spec.grounded_at_zero()) {
        throw InfeasibleConstraintError("energy_capped_simplex: spectrum must start at zero");
    }
    RealVector p = random_simplex(d, rng);
    double mean = 0.0;
    for (Eigen::Index i = 0; i < d; ++i) mean += spec.energy(static_cast<std::size_t>(i)) * p(i);
    const double target = E * rng.uniform(0.3, 1.0);
    if (mean > target) {
        const double s = 1.0 - target / mean; // ground vertex has zero energy
        p *= (1.0 - s);
        p(0) += s;
    }
    return p;
}

// --------------------------- commuting pairs ---------------------------------------

struct RankConstraint {
    Eigen::Index r = 1;
};

struct EnergyConstraint {
    Spectrum spec = Spectrum::arithmetic(1.0);
    double E = 1.0;
};

using PairConstraint = std::variant<RankConstraint, EnergyConstraint>;

struct CommutingPair {
    DensityOperator rho;
    DensityOperator sigma;
    Matrix basis;
    RealVector p; // rho weights in `basis`
    RealVector q; // sigma weights in `basis`
};

namespace detail {

// Convex mixing toward p lowers the TV linearly; solve (1-t)*TV0 = target.
inline RealVector mix_to_tv(const RealVector& p, const RealVector& q, double target) {
    const double tv0 = 0.5 * (p - q).cwiseAbs().sum();
    if (tv0 <= target) return q;
    const double t = 1.0 - target / tv0;
    return (1.0 - t) * q + t * p;
}

// Mixing toward a vertex away from p raises the TV continuously up to
// 1 - p(vertex); bisect the mixing weight onto the target.
inline RealVector steer_tv_up(const RealVector& p, const RealVector& q, Eigen::Index vertex,
                              double target) {
    RealVector delta = RealVector::Zero(p.size());
    delta(vertex) = 1.0;
    const double reach = 0.5 * (p - delta).cwiseAbs().sum();
    if (reach <= target) return delta; // best this vertex can do
    auto tv_at = [&](double t) {
        return 0.5 * (p - ((1.0 - t) * q + t * delta)).cwiseAbs().sum();
    };
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 80; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (tv_at(mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return (1.0 - hi) * q + hi * delta;
}

} // namespace detail

// Draws rho, sigma diagonal in a shared Haar basis, both satisfying the
// constraint, with trace distance steered to eps_target (exactly when the raw
// draw lands farther apart, below it otherwise).
inline CommutingPair sample_commuting_pair(Eigen::Index dim, const PairConstraint& constraint,
                                           double eps_target, CounterRng& rng) {
    if (dim < 1) throw InfeasibleConstraintError("sample_commuting_pair: dim must be >= 1");
    if (eps_target < 0.0 || eps_target > 1.0) {
        throw OutOfRangeError("sample_commuting_pair: eps_target outside [0,1]");
    }
    const Matrix basis = haar_unitary(dim, rng);
    RealVector p(dim), q(dim);
    Eigen::Index steer_vertex = -1; // constraint-feasible point mass away from p
    if (const auto* rank = std::get_if<RankConstraint>(&constraint)) {
        if (rank->r < 1 || rank->r > dim) {
            throw InfeasibleConstraintError("sample_commuting_pair: rank outside [1, dim]");
        }
        // A shared support subset keeps every mixture within the rank cap.
        std::vector<Eigen::Index> support(static_cast<std::size_t>(dim));
        for (Eigen::Index i = 0; i < dim; ++i) support[static_cast<std::size_t>(i)] = i;
        for (Eigen::Index i = 0; i < rank->r; ++i) {
            const std::size_t j = static_cast<std::size_t>(i) +
                                  rng.uniform_index(static_cast<std::size_t>(dim - i));
            std::swap(support[static_cast<std::size_t>(i)], support[j]);
        }
        const RealVector ps = random_simplex(rank->r, rng);
        const RealVector qs = random_simplex(rank->r, rng);
        p = RealVector::Zero(dim);
        q = RealVector::Zero(dim);
        for (Eigen::Index i = 0; i < rank->r; ++i) {
            p(support[static_cast<std::size_t>(i)]) = ps(i);
            q(support[static_cast<std::size_t>(i)]) = qs(i);
        }
        if (rank->r > 1) {
            steer_vertex = support[0];
            for (Eigen::Index i = 1; i < rank->r; ++i) {
                if (p(support[static_cast<std::size_t>(i)]) < p(steer_vertex)) {
                    steer_vertex = support[static_cast<std::size_t>(i)];
                }
            }
        }
    } else {
        const auto& energy = std::get<EnergyConstraint>(constraint);
        p = energy_capped_simplex(energy.spec, dim, energy.E, rng);
        q = energy_capped_simplex(energy.spec, dim, energy.E, rng);
        // The least-loaded coordinate whose point mass stays below the cap.
        for (Eigen::Index i = 0; i < dim; ++i) {
            if (energy.spec.energy(static_cast<std::size_t>(i)) > energy.E) break;
            if (steer_vertex < 0 || p(i) < p(steer_vertex)) steer_vertex = i;
        }
    }
    if (eps_target == 0.0) {
        q = p;
    } else {
        const double tv0 = 0.5 * (p - q).cwiseAbs().sum();
        if (tv0 > eps_target) {
            q = detail::mix_to_tv(p, q, eps_target);
        } else if (tv0 < eps_target && steer_vertex >= 0) {
            q = detail::steer_tv_up(p, q, steer_vertex, eps_target);
        }
    }
    return CommutingPair{DensityOperator::from_eigensystem(p, basis),
                         DensityOperator::from_eigensystem(q, basis), basis, p, q};
}

} // namespace qcb

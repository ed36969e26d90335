// bounds.hpp — Named entropy continuity bounds: the finite-dimensional optimal
// bound, the two energy-constrained families, refinements via truncated
// positive parts, extremal near-tightness pairs, quantum-classical conditional
// entropy, entanglement-of-formation bounds and the two-qubit concurrence
// oracle.

#pragma once

#include "qcb/afw.hpp"
#include "qcb/common.hpp"
#include "qcb/hamiltonians.hpp"
#include "qcb/linalg.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace qcb {

// --------------------------- entropy bounds ------------------------------------

// eps*ln(d-1) + h2(eps) for eps <= 1 - 1/d, else ln d.
inline double audenaert_bound(int d, double eps) {
    if (d < 2) throw OutOfRangeError("audenaert_bound: need d >= 2");
    if (eps < 0.0 || eps > 1.0) throw OutOfRangeError("audenaert_bound: eps outside [0,1]");
    if (eps == 0.0) return 0.0;
    const double cap = 1.0 - 1.0 / static_cast<double>(d);
    if (eps > cap) return std::log(static_cast<double>(d));
    return eps * std::log(static_cast<double>(d - 1)) + binary_entropy(eps);
}

// 2 eps F_H(E/eps) + h2(eps).
inline double winter_energy_bound(const Spectrum& spec, double E, double eps) {
    if (eps < 0.0 || eps > 1.0) throw OutOfRangeError("winter_energy_bound: eps outside [0,1]");
    if (E < 0.0) throw OutOfRangeError("winter_energy_bound: negative energy");
    if (eps == 0.0) return 0.0;
    return 2.0 * eps * max_entropy(spec, E / eps) + binary_entropy(eps);
}

// E h2(eps/E) + h2(eps), valid for eps <= E/(E+1).
inline double bdj_bound(double E, double eps) {
    if (E <= 0.0) throw OutOfRangeError("bdj_bound: need E > 0");
    if (eps < 0.0 || eps > E / (E + 1.0) + 1e-15) {
        throw OutOfRangeError("bdj_bound: eps outside [0, E/(E+1)]");
    }
    if (eps == 0.0) return 0.0;
    return E * binary_entropy(eps / E) + binary_entropy(eps);
}

// eps F_H(E/eps) + g(eps): the one-factor energy-constrained bound.
inline double entropy_energy_bound(const Spectrum& spec, double E, double eps) {
    if (eps < 0.0 || eps > 1.0) throw OutOfRangeError("entropy_energy_bound: eps outside [0,1]");
    if (E < 0.0) throw OutOfRangeError("entropy_energy_bound: negative energy");
    if (eps == 0.0) return 0.0;
    return eps * max_entropy(spec, E / eps) + g(eps);
}

// --------------------------- truncated-positive-part refinements ----------------

// Tr H [rho - eps I]_+ with H diagonal (spectrum order) in the standard basis
// of rho's space.
inline double e_h_eps(const DensityOperator& rho, const Spectrum& spec, double eps) {
    if (eps < 0.0) throw OutOfRangeError("e_h_eps: negative eps");
    const Matrix part = positive_part(rho.matrix() - eps * Matrix::Identity(rho.dim(), rho.dim()));
    double value = 0.0;
    for (Eigen::Index k = 0; k < rho.dim(); ++k) {
        value += spec.energy(static_cast<std::size_t>(k)) * part(k, k).real();
    }
    return value;
}

// Spectral lower bound sum_k E_k [lambda_k - eps]_+ pairing the non-increasing
// state spectrum with the non-decreasing Hamiltonian spectrum.
inline double e_star(const RealVector& eigs_desc, const Spectrum& spec, double eps) {
    if (eps < 0.0) throw OutOfRangeError("e_star: negative eps");
    double value = 0.0;
    for (Eigen::Index k = 0; k < eigs_desc.size(); ++k) {
        const double clipped = eigs_desc(k) - eps;
        if (clipped > 0.0) value += spec.energy(static_cast<std::size_t>(k)) * clipped;
    }
    return value;
}

// Mean energy Tr H rho with H diagonal in the standard basis.
inline double mean_energy(const DensityOperator& rho, const Spectrum& spec) {
    double value = 0.0;
    for (Eigen::Index k = 0; k < rho.dim(); ++k) {
        value += spec.energy(static_cast<std::size_t>(k)) * rho.matrix()(k, k).real();
    }
    return value;
}

// eps F_H((E - Tr H[rho - eps I]_+)/eps) + g(eps); never exceeds the unrefined
// bound.
inline double refined_entropy_bound(const DensityOperator& rho, const Spectrum& spec, double E,
                                    double eps) {
    if (eps <= 0.0 || eps > 1.0) throw OutOfRangeError("refined_entropy_bound: eps outside (0,1]");
    if (mean_energy(rho, spec) > E + 1e-9) {
        throw ConstraintViolatedError("refined_entropy_bound: Tr H rho exceeds E");
    }
    const double offset = e_h_eps(rho, spec, eps);
    const double reduced = std::max(E - offset, 0.0);
    return eps * max_entropy(spec, reduced / eps) + g(eps);
}

// --------------------------- extremal pair --------------------------------------

struct ExtremalPair {
    DensityOperator rho;   // eps * gibbs(E/eps) + (1-eps) * ground projector
    DensityOperator sigma; // ground projector
};

// The near-tightness construction: the entropy gap strictly exceeds
// eps F_H(E/eps) while the pair stays within trace distance eps and mean
// energy E.
inline ExtremalPair extremal_pair(const Spectrum& spec, double E, double eps) {
    if (eps <= 0.0 || eps > 1.0) throw OutOfRangeError("extremal_pair: eps outside (0,1]");
    if (E <= 0.0) throw OutOfRangeError("extremal_pair: need E > 0");
    const GibbsSolution gibbs = solve_beta(spec, E / eps, 1e-12);
    const Eigen::Index n = static_cast<Eigen::Index>(gibbs.truncation);
    RealVector mixture = eps * gibbs.probabilities;
    mixture(0) += 1.0 - eps;
    // Renormalize the truncation slack so the state validates exactly.
    mixture /= mixture.sum();
    RealVector ground = RealVector::Zero(n);
    ground(0) = 1.0;
    return ExtremalPair{DensityOperator::diagonal(mixture), DensityOperator::diagonal(ground)};
}

// --------------------------- rank / mixed / two-sided ---------------------------

// eps ln(rank-1) + h2(eps) for eps <= 1 - 1/rank. No replacement value exists
// beyond the cap, so that region errors out.
inline double rank_entropy_bound(int rank, double eps) {
    if (rank < 2) throw OutOfRangeError("rank_entropy_bound: need rank >= 2");
    if (eps < 0.0 || eps > 1.0 - 1.0 / static_cast<double>(rank)) {
        throw OutOfRangeError("rank_entropy_bound: eps outside [0, 1 - 1/rank]");
    }
    if (eps == 0.0) return 0.0;
    return eps * std::log(static_cast<double>(rank - 1)) + binary_entropy(eps);
}

// Asymmetric envelope for S(rho) - S(sigma): lower is the allowed decrease
// magnitude, upper the allowed increase.
struct TwoSidedBound {
    double lower = 0.0;
    double upper = 0.0;
};

// Energy cap on rho, rank cap on sigma: decrease bounded by the
// finite-dimensional optimal formula, increase by the energy formula.
inline TwoSidedBound mixed_bound(int d, const Spectrum& spec, double E_rho, double eps) {
    if (d < 2) throw OutOfRangeError("mixed_bound: need d >= 2");
    if (eps < 0.0 || eps > 1.0 - 1.0 / static_cast<double>(d)) {
        throw OutOfRangeError("mixed_bound: eps outside [0, 1 - 1/d]");
    }
    if (eps == 0.0) return TwoSidedBound{0.0, 0.0};
    return TwoSidedBound{eps * std::log(static_cast<double>(d - 1)) + binary_entropy(eps),
                         entropy_energy_bound(spec, E_rho, eps)};
}

// Energy caps on both states, possibly different.
inline TwoSidedBound two_sided_energy_bound(const Spectrum& spec, double E_rho, double E_sigma,
                                            double eps) {
    if (eps < 0.0 || eps > 1.0) throw OutOfRangeError("two_sided_energy_bound: eps outside [0,1]");
    if (eps == 0.0) return TwoSidedBound{0.0, 0.0};
    return TwoSidedBound{entropy_energy_bound(spec, E_sigma, eps),
                         entropy_energy_bound(spec, E_rho, eps)};
}

// --------------------------- quantum-classical states ---------------------------

// rho = sum_k p_k rho_k (x) |k><k| with an implicit orthonormal classical
// register.
struct QcState {
    std::vector<double> weights;
    std::vector<DensityOperator> components;

    void validate() const {
        if (weights.size() != components.size() || weights.empty()) {
            throw InvalidStateError("QcState: weights/components sizes disagree");
        }
        double sum = 0.0;
        for (double w : weights) {
            if (w < 0.0) throw InvalidStateError("QcState: negative weight");
            sum += w;
        }
        if (std::abs(sum - 1.0) > tol_weights) {
            throw InvalidStateError("QcState: weights do not sum to 1");
        }
        const Eigen::Index d = components.front().dim();
        for (const DensityOperator& c : components) {
            if (c.dim() != d) throw DimMismatchError("QcState: component dimensions disagree");
        }
    }

    Eigen::Index system_dim() const { return components.front().dim(); }
    Eigen::Index register_dim() const { return static_cast<Eigen::Index>(weights.size()); }

    // Full bipartite matrix with composite index a * K + k.
    Matrix assemble() const {
        validate();
        const Eigen::Index dA = system_dim();
        const Eigen::Index K = register_dim();
        Matrix out = Matrix::Zero(dA * K, dA * K);
        for (Eigen::Index k = 0; k < K; ++k) {
            const Matrix& c = components[static_cast<std::size_t>(k)].matrix();
            for (Eigen::Index a = 0; a < dA; ++a) {
                for (Eigen::Index b = 0; b < dA; ++b) {
                    out(a * K + k, b * K + k) = weights[static_cast<std::size_t>(k)] * c(a, b);
                }
            }
        }
        return out;
    }
};

// S(A|B) = sum_k p_k S(rho_k) for quantum-classical states.
inline double qce_value(const QcState& qc) {
    qc.validate();
    double s = 0.0;
    for (std::size_t k = 0; k < qc.weights.size(); ++k) {
        if (qc.weights[k] > 0.0) s += qc.weights[k] * von_neumann_entropy(qc.components[k]);
    }
    return s;
}

// One-sided conditional-entropy bound under a rank cap on the system marginal.
inline double qce_rank_bound(int rank, double eps) {
    if (rank < 1) throw OutOfRangeError("qce_rank_bound: need rank >= 1");
    if (eps < 0.0 || eps > 1.0) throw OutOfRangeError("qce_rank_bound: eps outside [0,1]");
    if (eps == 0.0) return 0.0;
    return eps * std::log(static_cast<double>(rank)) + g(eps);
}

// One-sided conditional-entropy bound under the energy cap Tr H rho_A <= E.
// When the constrained ensemble is supplied, the cap shrinks by the ensemble
// offset sum_k Tr H [p_k rho_k - eps I]_+.
inline double qce_energy_bound(const Spectrum& spec, double E, double eps,
                               const QcState* rho = nullptr) {
    if (eps <= 0.0 || eps > 1.0) throw OutOfRangeError("qce_energy_bound: eps outside (0,1]");
    if (E < 0.0) throw OutOfRangeError("qce_energy_bound: negative energy");
    double reduced = E;
    if (rho != nullptr) {
        rho->validate();
        const Eigen::Index d = rho->system_dim();
        double marginal_energy = 0.0;
        double offset = 0.0;
        for (std::size_t k = 0; k < rho->weights.size(); ++k) {
            marginal_energy += rho->weights[k] * mean_energy(rho->components[k], spec);
            const Matrix part = positive_part(rho->weights[k] * rho->components[k].matrix() -
                                              eps * Matrix::Identity(d, d));
            for (Eigen::Index i = 0; i < d; ++i) {
                offset += spec.energy(static_cast<std::size_t>(i)) * part(i, i).real();
            }
        }
        if (marginal_energy > E + 1e-9) {
            throw ConstraintViolatedError("qce_energy_bound: ensemble marginal energy exceeds E");
        }
        reduced = std::max(E - offset, 0.0);
    }
    return eps * max_entropy(spec, reduced / eps) + g(eps);
}

// --------------------------- entanglement of formation --------------------------

inline double eof_delta(double eps) {
    if (eps < 0.0 || eps > 1.0) throw OutOfRangeError("eof_bound: eps outside [0,1]");
    return std::sqrt(eps * (1.0 - eps));
}

// delta ln(rank rho_A) + g(delta) with delta = sqrt(eps(1-eps)).
inline double eof_rank_bound(int rank, double eps) {
    if (rank < 1) throw OutOfRangeError("eof_rank_bound: need rank >= 1");
    const double delta = eof_delta(eps);
    if (delta == 0.0) return 0.0;
    return delta * std::log(static_cast<double>(rank)) + g(delta);
}

// delta F_H(E/delta) + g(delta) with delta = sqrt(eps(1-eps)).
inline double eof_energy_bound(const Spectrum& spec, double E, double eps) {
    if (E < 0.0) throw OutOfRangeError("eof_energy_bound: negative energy");
    const double delta = eof_delta(eps);
    if (delta == 0.0) return 0.0;
    return delta * max_entropy(spec, E / delta) + g(delta);
}

// Exact two-qubit entanglement of formation via the concurrence construction,
// in nats. For pure states this equals the reduced-state entropy.
inline double wootters_eof(const DensityOperator& rho) {
    if (rho.dim() != 4) throw DimMismatchError("wootters_eof: requires a two-qubit state");
    Matrix yy(4, 4);
    yy.setZero();
    // (sigma_y (x) sigma_y): antidiagonal -1, +1, +1, -1.
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const Matrix& m = rho.matrix();
    const Matrix tilde = yy * m.conjugate() * yy;
    // Eigenvalues of rho * tilde via the Hermitian form sqrt(rho) tilde sqrt(rho).
    Eigensystem es = eigendecompose(m);
    RealVector root = es.eigenvalues.cwiseMax(0.0).cwiseSqrt();
    const Matrix sqrt_rho = es.basis * root.asDiagonal() * es.basis.adjoint();
    Eigen::SelfAdjointEigenSolver<Matrix> solver(sqrt_rho * tilde * sqrt_rho,
                                                 Eigen::EigenvaluesOnly);
    RealVector lams = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    std::sort(lams.data(), lams.data() + lams.size(), std::greater<double>());
    const double c = std::max(0.0, lams(0) - lams(1) - lams(2) - lams(3));
    const double x = 0.5 * (1.0 + std::sqrt(std::max(0.0, 1.0 - c * c)));
    return binary_entropy(std::min(x, 1.0));
}

// --------------------------- mutual information ---------------------------------

// One-sided rank bound 2 eps ln(rank) + 2 g(eps).
inline double mi_rank_bound(int rank, double eps) {
    if (rank < 1) throw OutOfRangeError("mi_rank_bound: need rank >= 1");
    if (eps < 0.0 || eps > 1.0) throw OutOfRangeError("mi_rank_bound: eps outside [0,1]");
    if (eps == 0.0) return 0.0;
    return 2.0 * eps * std::log(static_cast<double>(rank)) + 2.0 * g(eps);
}

// Two-sided variant with possibly different marginal ranks.
inline TwoSidedBound mi_rank_bound_two_sided(int rank_rho, int rank_sigma, double eps) {
    return TwoSidedBound{mi_rank_bound(rank_sigma, eps), mi_rank_bound(rank_rho, eps)};
}

// Commuting-states energy bound 2 eps F_H(E/eps) + 2 g(eps).
inline double mi_energy_bound(const Spectrum& spec, double E, double eps) {
    if (eps < 0.0 || eps > 1.0) throw OutOfRangeError("mi_energy_bound: eps outside [0,1]");
    if (E < 0.0) throw OutOfRangeError("mi_energy_bound: negative energy");
    if (eps == 0.0) return 0.0;
    return 2.0 * eps * max_entropy(spec, E / eps) + 2.0 * g(eps);
}

// Classical-oscillator bound eps g(E/eps) + 2 g(eps); the separable-state
// envelope drops the leading factor 2.
inline double mi_classical_oscillator_bound(double E, double eps) {
    if (eps < 0.0 || eps > 1.0) {
        throw OutOfRangeError("mi_classical_oscillator_bound: eps outside [0,1]");
    }
    if (E < 0.0) throw OutOfRangeError("mi_classical_oscillator_bound: negative energy");
    if (eps == 0.0) return 0.0;
    return eps * g(E / eps) + 2.0 * g(eps);
}

// Quantum mutual information S(rho_A) + S(rho_B) - S(rho) of a bipartite matrix.
inline double mutual_information(const Matrix& rho, Eigen::Index dA, Eigen::Index dB) {
    const DensityOperator full = DensityOperator::from_matrix(rho);
    const DensityOperator a = DensityOperator::from_matrix(partial_trace_second(rho, dA, dB));
    const DensityOperator b = DensityOperator::from_matrix(partial_trace_first(rho, dA, dB));
    return von_neumann_entropy(a) + von_neumann_entropy(b) - von_neumann_entropy(full);
}

} // namespace qcb

// afw.hpp — Quasi-classical Alicki-Fannes-Winter machinery: representing
// measures over a shared state family, total variation, Jordan decomposition,
// the tau+/tau- states, the omega* identity and the generic rank/energy bound
// evaluators for locally-almost-affine function classes.

#pragma once

#include "qcb/common.hpp"
#include "qcb/hamiltonians.hpp"
#include "qcb/linalg.hpp"

#include <string>
#include <utility>
#include <vector>

namespace qcb {

// --------------------------- ensembles ----------------------------------------

// Finite point set with weights and a state-valued map: rho = sum mu(x) w(x).
// Two ensembles are comparable when they share labels and the state map.
struct QcEnsemble {
    std::vector<std::string> labels;
    std::vector<double> weights;
    std::vector<Matrix> states; // density matrices of a shared dimension

    void validate() const {
        if (labels.size() != weights.size() || labels.size() != states.size() || labels.empty()) {
            throw LabelMismatchError("QcEnsemble: labels/weights/states sizes disagree");
        }
        double sum = 0.0;
        for (double w : weights) {
            if (w < 0.0) throw InvalidStateError("QcEnsemble: negative weight");
            sum += w;
        }
        if (std::abs(sum - 1.0) > tol_weights) {
            throw InvalidStateError("QcEnsemble: weights do not sum to 1");
        }
        const Eigen::Index d = states.front().rows();
        for (const Matrix& s : states) {
            if (s.rows() != d || s.cols() != d) {
                throw DimMismatchError("QcEnsemble: state dimensions disagree");
            }
        }
    }

    DensityOperator assemble() const {
        validate();
        Matrix m = Matrix::Zero(states.front().rows(), states.front().cols());
        for (std::size_t i = 0; i < states.size(); ++i) m += weights[i] * states[i];
        return DensityOperator::from_matrix(0.5 * (m + m.adjoint()));
    }
};

// --------------------------- measures -----------------------------------------

// TV(mu, nu) = (1/2) sum |mu(x) - nu(x)| over a shared label set.
inline double tv_distance(const std::vector<double>& mu, const std::vector<double>& nu) {
    if (mu.size() != nu.size() || mu.empty()) {
        throw LabelMismatchError("tv_distance: measures live on different label sets");
    }
    double s = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) s += std::abs(mu[i] - nu[i]);
    return 0.5 * s;
}

struct JordanDecomposition {
    double epsilon = 0.0;          // TV(mu, nu)
    std::vector<double> nu_plus;   // [mu - nu]_+ / epsilon
    std::vector<double> nu_minus;  // [mu - nu]_- / epsilon
};

// Splits mu - nu into normalized positive and negative parts. Both dominations
// eps*nu_plus <= mu and eps*nu_minus <= nu hold componentwise by construction.
inline JordanDecomposition jordan_decompose(const std::vector<double>& mu,
                                            const std::vector<double>& nu) {
    const double eps = tv_distance(mu, nu);
    if (eps < 1e-15) throw EqualMeasuresError("jordan_decompose: measures coincide");
    JordanDecomposition jd;
    jd.epsilon = eps;
    jd.nu_plus.resize(mu.size());
    jd.nu_minus.resize(mu.size());
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double d = mu[i] - nu[i];
        jd.nu_plus[i] = d > 0.0 ? d / eps : 0.0;
        jd.nu_minus[i] = d < 0.0 ? -d / eps : 0.0;
    }
    return jd;
}

// --------------------------- tau states ---------------------------------------

struct TauStates {
    DensityOperator tau_plus;
    DensityOperator tau_minus;
    double epsilon;
};

// tau+/- are the family states averaged against the Jordan parts of
// mu_rho - mu_sigma. They satisfy eps*tau+ <= rho and eps*tau- <= sigma as
// operator inequalities.
inline TauStates tau_states(const QcEnsemble& ens_rho, const QcEnsemble& ens_sigma) {
    ens_rho.validate();
    ens_sigma.validate();
    if (ens_rho.labels != ens_sigma.labels) {
        throw LabelMismatchError("tau_states: ensembles do not share the label set");
    }
    if (ens_rho.states.front().rows() != ens_sigma.states.front().rows()) {
        throw DimMismatchError("tau_states: state dimensions disagree");
    }
    const JordanDecomposition jd = jordan_decompose(ens_rho.weights, ens_sigma.weights);
    const Eigen::Index d = ens_rho.states.front().rows();
    Matrix plus = Matrix::Zero(d, d);
    Matrix minus = Matrix::Zero(d, d);
    for (std::size_t i = 0; i < jd.nu_plus.size(); ++i) {
        if (jd.nu_plus[i] > 0.0) plus += jd.nu_plus[i] * ens_rho.states[i];
        if (jd.nu_minus[i] > 0.0) minus += jd.nu_minus[i] * ens_rho.states[i];
    }
    return TauStates{DensityOperator::from_matrix(0.5 * (plus + plus.adjoint())),
                     DensityOperator::from_matrix(0.5 * (minus + minus.adjoint())),
                     jd.epsilon};
}

// Max-norm residual of rho/(1+eps) + eps*tau-/(1+eps) = sigma/(1+eps) +
// eps*tau+/(1+eps); at most ~1e-9 for consistently built inputs.
inline double omega_star_residual(const DensityOperator& rho, const DensityOperator& sigma,
                                  const DensityOperator& tau_plus,
                                  const DensityOperator& tau_minus, double eps) {
    const Matrix lhs = rho.matrix() + eps * tau_minus.matrix();
    const Matrix rhs = sigma.matrix() + eps * tau_plus.matrix();
    return ((lhs - rhs) / (1.0 + eps)).cwiseAbs().maxCoeff();
}

// Smallest eigenvalue of rho - eps*tau: nonnegative (within slack) exactly when
// the operator domination eps*tau <= rho holds.
inline double domination_margin(const DensityOperator& rho, const DensityOperator& tau,
                                double eps) {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.matrix() - eps * tau.matrix(),
                                                 Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

// --------------------------- LAA class parameters ------------------------------

// Parameters of a locally-almost-affine function class: the marginal-entropy
// envelope constants split as c_minus + c_plus = C, the binary-entropy deficit
// constants as d_minus + d_plus = D, over m of n subsystems.
struct LaaClassParams {
    double C = 1.0;
    double D = 1.0;
    double c_minus = 0.0, c_plus = 1.0;
    double d_minus = 0.0, d_plus = 1.0;
    int m = 1;
    int n = 1;

    static LaaClassParams make(double C, double D, int m = 1, int n = 1) {
        LaaClassParams p;
        p.C = C;
        p.D = D;
        p.c_minus = 0.0;
        p.c_plus = C;
        p.d_minus = 0.0;
        p.d_plus = D;
        p.m = m;
        p.n = n;
        p.validate();
        return p;
    }

    void validate() const {
        if (C < 0.0 || D < 0.0 || c_minus < 0.0 || c_plus < 0.0 || d_minus < 0.0 ||
            d_plus < 0.0) {
            throw OutOfRangeError("LaaClassParams: negative constant");
        }
        if (std::abs(c_minus + c_plus - C) > tol_weights ||
            std::abs(d_minus + d_plus - D) > tol_weights) {
            throw OutOfRangeError("LaaClassParams: split constants do not sum to C/D");
        }
        if (m < 1 || n < m) throw OutOfRangeError("LaaClassParams: need 1 <= m <= n");
    }
};

// --------------------------- generic bound evaluators ---------------------------

// C*eps*ln(d_m) + D*g(eps): the rank-constrained bound for LAA classes.
inline double afw_rank_bound(const LaaClassParams& params, std::size_t d_m, double eps) {
    params.validate();
    if (eps < 0.0 || eps > 1.0) throw OutOfRangeError("afw_rank_bound: eps outside [0,1]");
    if (d_m < 1) throw OutOfRangeError("afw_rank_bound: d_m must be >= 1");
    if (eps == 0.0) return 0.0;
    return params.C * eps * std::log(static_cast<double>(d_m)) + params.D * g(eps);
}

// C*eps*F_{H_m}(m E / eps) + D*g(eps): the energy-constrained bound.
inline double afw_energy_bound(const LaaClassParams& params, const std::vector<Spectrum>& specs,
                               double E, double eps) {
    params.validate();
    if (eps < 0.0 || eps > 1.0) throw OutOfRangeError("afw_energy_bound: eps outside [0,1]");
    if (E < 0.0) throw OutOfRangeError("afw_energy_bound: negative energy");
    if (static_cast<int>(specs.size()) != params.m) {
        throw OutOfRangeError("afw_energy_bound: class index m disagrees with spectrum count");
    }
    if (eps == 0.0) return 0.0;
    const double m = static_cast<double>(specs.size());
    return params.C * eps * max_entropy_multi(specs, m * E / eps) + params.D * g(eps);
}

// --------------------------- refined energy offset ------------------------------

// Sum over factors of Tr H_{A_k} <[rho - eps I]_+>_{A_k} for a state diagonal in
// the product eigenbasis of the spectra (arranged as the standard basis of the
// product space). Nonincreasing in eps; tends to Tr H rho as eps -> 0.
inline double refined_energy_offset(const DensityOperator& rho,
                                    const std::vector<Spectrum>& specs,
                                    const std::vector<Eigen::Index>& dims, double eps) {
    if (specs.size() != dims.size() || specs.empty()) {
        throw BasisMismatchError("refined_energy_offset: spectra/dims sizes disagree");
    }
    Eigen::Index total = 1;
    for (Eigen::Index d : dims) total *= d;
    if (total != rho.dim()) {
        throw BasisMismatchError("refined_energy_offset: product dims disagree with state dim");
    }
    const Matrix& m = rho.matrix();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (i != j && std::abs(m(i, j)) > 1e-9) {
                throw BasisMismatchError("refined_energy_offset: state not diagonal in the product basis");
            }
        }
    }
    if (eps < 0.0) throw OutOfRangeError("refined_energy_offset: negative eps");
    // Positive part of a diagonal operator is the entrywise clip.
    double offset = 0.0;
    for (Eigen::Index i = 0; i < total; ++i) {
        const double clipped = std::max(m(i, i).real() - eps, 0.0);
        if (clipped <= 0.0) continue;
        Eigen::Index rest = i;
        // Decode the product index factor by factor, last factor fastest.
        double energy_sum = 0.0;
        for (std::size_t k = specs.size(); k-- > 0;) {
            const Eigen::Index idx = rest % dims[static_cast<std::size_t>(k)];
            rest /= dims[static_cast<std::size_t>(k)];
            energy_sum += specs[k].energy(static_cast<std::size_t>(idx));
        }
        offset += clipped * energy_sum;
    }
    return offset;
}

} // namespace qcb

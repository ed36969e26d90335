// linalg.hpp — Dense Hermitian state primitives: eigensystems, entropies,
// trace distance, positive parts, the Mirsky rearrangement and the
// support-compression channel.

#pragma once

#include "qcb/common.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <numeric>
#include <utility>
#include <vector>

namespace qcb {

// --------------------------- eigensystems ------------------------------------

struct Eigensystem {
    RealVector eigenvalues; // sorted non-increasing
    Matrix basis;           // unitary, columns aligned with eigenvalues
};

inline bool is_hermitian(const Matrix& m, double tol = tol_herm) {
    if (m.rows() != m.cols()) return false;
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

// Eigendecomposition with eigenvalues sorted non-increasing; ties keep the
// solver's (ascending-index) order after the descending sort.
inline Eigensystem eigendecompose(const Matrix& m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw NonHermitianError("eigendecompose: matrix must be square and nonempty");
    }
    if (!is_hermitian(m)) {
        throw NonHermitianError("eigendecompose: matrix is not Hermitian within tolerance");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecompose: eigensolver failed");
    }
    const Eigen::Index d = m.rows();
    Eigensystem es;
    es.eigenvalues.resize(d);
    es.basis.resize(d, d);
    // SelfAdjointEigenSolver returns ascending order; reverse it.
    for (Eigen::Index i = 0; i < d; ++i) {
        es.eigenvalues(i) = solver.eigenvalues()(d - 1 - i);
        es.basis.col(i) = solver.eigenvectors().col(d - 1 - i);
    }
    return es;
}

// --------------------------- density operators --------------------------------

// Finite Hermitian PSD unit-trace matrix with its sorted eigensystem attached.
// Eigenvalues are clamped to [0,1] after validation so that eta() never sees
// negative drift.
class DensityOperator {
public:
    static DensityOperator from_matrix(const Matrix& m) {
        if (m.rows() != m.cols() || m.rows() == 0) {
            throw NonHermitianError("DensityOperator: matrix must be square and nonempty");
        }
        if (!is_hermitian(m)) {
            throw NonHermitianError("DensityOperator: matrix is not Hermitian within tolerance");
        }
        const double tr = m.trace().real();
        if (std::abs(tr - 1.0) > tol_trace) {
            throw InvalidStateError("DensityOperator: trace differs from 1 beyond tolerance");
        }
        Eigensystem es = eigendecompose(m);
        validate_and_clamp(es.eigenvalues);
        return DensityOperator(m, std::move(es.eigenvalues), std::move(es.basis));
    }

    // Trusted construction from a sorted-or-not eigensystem; sorts and clamps.
    static DensityOperator from_eigensystem(RealVector evals, Matrix basis) {
        const Eigen::Index d = evals.size();
        if (basis.rows() != d || basis.cols() != d || d == 0) {
            throw DimMismatchError("DensityOperator: eigensystem dimensions disagree");
        }
        const double tr = evals.sum();
        if (std::abs(tr - 1.0) > tol_trace) {
            throw InvalidStateError("DensityOperator: eigenvalues do not sum to 1");
        }
        // Sort descending, ties by ascending original index.
        std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](Eigen::Index a, Eigen::Index b) { return evals(a) > evals(b); });
        RealVector sorted(d);
        Matrix cols(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            sorted(i) = evals(order[static_cast<std::size_t>(i)]);
            cols.col(i) = basis.col(order[static_cast<std::size_t>(i)]);
        }
        validate_and_clamp(sorted);
        Matrix m = cols * sorted.asDiagonal() * cols.adjoint();
        return DensityOperator(std::move(m), std::move(sorted), std::move(cols));
    }

    // Diagonal state in the standard basis; built directly, no dense rebuild.
    static DensityOperator diagonal(const RealVector& probs) {
        const Eigen::Index d = probs.size();
        if (d == 0) throw DimMismatchError("DensityOperator::diagonal: empty vector");
        if (std::abs(probs.sum() - 1.0) > tol_trace) {
            throw InvalidStateError("DensityOperator: eigenvalues do not sum to 1");
        }
        std::vector<Eigen::Index> order(static_cast<std::size_t>(d));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](Eigen::Index a, Eigen::Index b) { return probs(a) > probs(b); });
        RealVector sorted(d);
        Matrix cols = Matrix::Zero(d, d);
        for (Eigen::Index i = 0; i < d; ++i) {
            sorted(i) = probs(order[static_cast<std::size_t>(i)]);
            cols(order[static_cast<std::size_t>(i)], i) = 1.0;
        }
        validate_and_clamp(sorted);
        Matrix m = Matrix::Zero(d, d);
        for (Eigen::Index i = 0; i < d; ++i) m(i, i) = std::clamp(probs(i), 0.0, 1.0);
        return DensityOperator(std::move(m), std::move(sorted), std::move(cols));
    }

    static DensityOperator pure(const Vector& psi) {
        const Eigen::Index d = psi.size();
        if (d == 0) throw DimMismatchError("DensityOperator::pure: empty vector");
        const double n = psi.norm();
        if (n <= 0) throw InvalidStateError("DensityOperator::pure: zero vector");
        Vector v = psi / n;
        // Complete v to a unitary basis via Householder QR.
        Matrix seed(d, 1);
        seed.col(0) = v;
        Eigen::HouseholderQR<Matrix> qr(seed);
        Matrix basis = qr.householderQ();
        // Fix the phase so the first column is exactly v.
        const Complex phase = basis.col(0).dot(v); // <q0|v>, |phase| = 1
        basis.col(0) = v;
        for (Eigen::Index j = 1; j < d; ++j) basis.col(j) *= phase;
        RealVector evals = RealVector::Zero(d);
        evals(0) = 1.0;
        Matrix m = v * v.adjoint();
        return DensityOperator(std::move(m), std::move(evals), std::move(basis));
    }

    Eigen::Index dim() const { return mat_.rows(); }
    const Matrix& matrix() const { return mat_; }
    const RealVector& eigenvalues() const { return evals_; } // non-increasing
    const Matrix& eigenvectors() const { return evecs_; }

    // Count of eigenvalues above rank_tol.
    Eigen::Index rank() const {
        Eigen::Index r = 0;
        for (Eigen::Index i = 0; i < evals_.size(); ++i) {
            if (evals_(i) > rank_tol) ++r;
        }
        return r;
    }

private:
    DensityOperator(Matrix m, RealVector evals, Matrix evecs)
        : mat_(std::move(m)), evals_(std::move(evals)), evecs_(std::move(evecs)) {}

    static void validate_and_clamp(RealVector& evals) {
        for (Eigen::Index i = 0; i < evals.size(); ++i) {
            if (evals(i) < eig_floor) {
                throw InvalidStateError("DensityOperator: eigenvalue below admissible floor");
            }
            evals(i) = std::clamp(evals(i), 0.0, 1.0);
        }
    }

    Matrix mat_;
    RealVector evals_;
    Matrix evecs_;
};

// --------------------------- entropies and distances --------------------------

// S(rho) = sum eta(lambda_i), in nats.
inline double von_neumann_entropy(const DensityOperator& rho) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < rho.eigenvalues().size(); ++i) {
        s += eta(rho.eigenvalues()(i));
    }
    return s;
}

// Trace norm of a Hermitian matrix (sum of |eigenvalues|).
inline double trace_norm(const Matrix& m) {
    if (!is_hermitian(m, 1e-10)) {
        throw NonHermitianError("trace_norm: matrix is not Hermitian within tolerance");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().cwiseAbs().sum();
}

// (1/2)||rho - sigma||_1
inline double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DimMismatchError("trace_distance: dimension mismatch");
    }
    return 0.5 * trace_norm(rho.matrix() - sigma.matrix());
}

// --------------------------- positive part ------------------------------------

// [M]_+ = sum_{lambda>0} lambda |v><v|
inline Matrix positive_part(const Matrix& m) {
    Eigensystem es = eigendecompose(m); // throws NonHermitianError
    RealVector clipped = es.eigenvalues.cwiseMax(0.0);
    return es.basis * clipped.asDiagonal() * es.basis.adjoint();
}

// --------------------------- Mirsky rearrangement -----------------------------

// sigma-hat: sigma's sorted spectrum placed in rho's eigenbasis. Commutes with
// rho and is never farther from rho than sigma is (Mirsky).
inline DensityOperator mirsky_rearrange(const DensityOperator& rho, const DensityOperator& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DimMismatchError("mirsky_rearrange: dimension mismatch");
    }
    return DensityOperator::from_eigensystem(sigma.eigenvalues(), rho.eigenvectors());
}

// Sum of |lambda_i^rho - lambda_i^sigma| over the sorted spectra.
inline double spectral_l1_distance(const DensityOperator& rho, const DensityOperator& sigma) {
    if (rho.dim() != sigma.dim()) {
        throw DimMismatchError("spectral_l1_distance: dimension mismatch");
    }
    return (rho.eigenvalues() - sigma.eigenvalues()).cwiseAbs().sum();
}

// --------------------------- compression channel ------------------------------

// Folds a state diagonal in `basis` onto the span of the first n basis vectors:
// the k-th surviving weight collects every weight at index j*n + k. The output
// majorizes the input, so its entropy never exceeds the input's.
inline DensityOperator compress_to_support(const DensityOperator& sigma, const Matrix& basis,
                                           Eigen::Index n) {
    const Eigen::Index d = sigma.dim();
    if (basis.rows() != d || basis.cols() != d) {
        throw DimMismatchError("compress_to_support: basis dimension mismatch");
    }
    if (n < 1 || n > d) {
        throw InvalidRankError("compress_to_support: rank out of range");
    }
    Matrix in_basis = basis.adjoint() * sigma.matrix() * basis;
    for (Eigen::Index i = 0; i < d; ++i) {
        for (Eigen::Index j = 0; j < d; ++j) {
            if (i != j && std::abs(in_basis(i, j)) > 1e-9) {
                throw BasisMismatchError("compress_to_support: state is not diagonal in basis");
            }
        }
    }
    RealVector folded = RealVector::Zero(d);
    for (Eigen::Index i = 0; i < d; ++i) {
        folded(i % n) += std::max(in_basis(i, i).real(), 0.0);
    }
    return DensityOperator::from_eigensystem(folded, basis);
}

// --------------------------- partial traces -----------------------------------

// Composite index convention: i = a*dB + b (first factor major), matching
// kron(A, B).
inline Matrix partial_trace_second(const Matrix& rho, Eigen::Index dA, Eigen::Index dB) {
    if (rho.rows() != dA * dB || rho.cols() != dA * dB) {
        throw DimMismatchError("partial_trace_second: dimension mismatch");
    }
    Matrix out = Matrix::Zero(dA, dA);
    for (Eigen::Index a = 0; a < dA; ++a) {
        for (Eigen::Index c = 0; c < dA; ++c) {
            Complex s{0.0, 0.0};
            for (Eigen::Index b = 0; b < dB; ++b) {
                s += rho(a * dB + b, c * dB + b);
            }
            out(a, c) = s;
        }
    }
    return out;
}

inline Matrix partial_trace_first(const Matrix& rho, Eigen::Index dA, Eigen::Index dB) {
    if (rho.rows() != dA * dB || rho.cols() != dA * dB) {
        throw DimMismatchError("partial_trace_first: dimension mismatch");
    }
    Matrix out = Matrix::Zero(dB, dB);
    for (Eigen::Index b = 0; b < dB; ++b) {
        for (Eigen::Index c = 0; c < dB; ++c) {
            Complex s{0.0, 0.0};
            for (Eigen::Index a = 0; a < dA; ++a) {
                s += rho(a * dB + b, a * dB + c);
            }
            out(b, c) = s;
        }
    }
    return out;
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline Vector kron(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

} // namespace qcb

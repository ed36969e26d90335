// oscillator.hpp — Truncated Fock-space coherent states, classical states as
// finite coherent mixtures, mean photon numbers and the classical-state
// mutual-information bound.

#pragma once

#include "qcb/bounds.hpp"
#include "qcb/common.hpp"
#include "qcb/linalg.hpp"

#include <map>
#include <utility>
#include <vector>

namespace qcb {

inline constexpr double leak_tol = 1e-10;       // admissible truncation leakage per atom
inline constexpr Eigen::Index osc_dim_cap = 1024; // N^n desk-scale cap

// Truncated coherent amplitudes e^{-|z|^2/2} z^k / sqrt(k!), renormalized after
// the leakage check.
inline Vector coherent_vector(Complex z, Eigen::Index cutoff) {
    if (cutoff < 1) throw CutoffTooSmallError("coherent_vector: cutoff must be >= 1");
    Vector v(cutoff);
    v(0) = std::exp(-0.5 * std::norm(z));
    for (Eigen::Index k = 1; k < cutoff; ++k) {
        v(k) = v(k - 1) * z / std::sqrt(static_cast<double>(k));
    }
    const double norm2 = v.squaredNorm();
    if (1.0 - norm2 >= leak_tol) {
        throw CutoffTooSmallError("coherent_vector: truncation leakage above tolerance");
    }
    return v / std::sqrt(norm2);
}

// --------------------------- coherent mixtures -----------------------------------

struct CoherentAtom {
    std::vector<Complex> z; // one amplitude per mode
    double weight = 0.0;
};

// Finite-atom classical state of an n-mode oscillator. One shared per-mode Fock
// cutoff; pass cutoff 0 to auto-select from the largest amplitude
// (|z|^2 + 10|z| + 20, Poisson tail control).
struct CoherentMixture {
    int modes = 1;
    std::vector<CoherentAtom> atoms;
    Eigen::Index fock_cutoff = 0;

    static Eigen::Index auto_cutoff(double max_abs_z) {
        const double n = max_abs_z * max_abs_z;
        return static_cast<Eigen::Index>(std::ceil(n + 10.0 * std::sqrt(n) + 20.0));
    }

    static CoherentMixture make(int modes, std::vector<CoherentAtom> atoms,
                                Eigen::Index cutoff = 0) {
        CoherentMixture mix;
        mix.modes = modes;
        mix.atoms = std::move(atoms);
        if (modes < 1) throw OutOfRangeError("CoherentMixture: modes must be >= 1");
        if (mix.atoms.empty()) throw InvalidStateError("CoherentMixture: no atoms");
        double sum = 0.0;
        double max_abs = 0.0;
        for (const CoherentAtom& a : mix.atoms) {
            if (static_cast<int>(a.z.size()) != modes) {
                throw DimMismatchError("CoherentMixture: atom mode count mismatch");
            }
            if (a.weight <= 0.0) throw InvalidStateError("CoherentMixture: nonpositive weight");
            sum += a.weight;
            for (Complex z : a.z) max_abs = std::max(max_abs, std::abs(z));
        }
        if (std::abs(sum - 1.0) > tol_weights) {
            throw InvalidStateError("CoherentMixture: weights do not sum to 1");
        }
        mix.fock_cutoff = cutoff > 0 ? cutoff : auto_cutoff(max_abs);
        // Every atom must fit the shared cutoff; coherent_vector enforces the
        // per-atom leakage tolerance.
        for (const CoherentAtom& a : mix.atoms) {
            for (Complex z : a.z) coherent_vector(z, mix.fock_cutoff);
        }
        return mix;
    }

    // Product coherent vector of one atom on the truncated n-mode space.
    Vector atom_vector(std::size_t a) const {
        Vector v = coherent_vector(atoms[a].z[0], fock_cutoff);
        for (int k = 1; k < modes; ++k) {
            v = kron(v, coherent_vector(atoms[a].z[static_cast<std::size_t>(k)], fock_cutoff));
        }
        return v;
    }
};

// Marginal mixture of a single mode; atoms keep their weights.
inline CoherentMixture marginal_mixture(const CoherentMixture& mix, int mode) {
    if (mode < 0 || mode >= mix.modes) {
        throw IndexOutOfRangeError("marginal_mixture: mode out of range");
    }
    std::vector<CoherentAtom> atoms;
    atoms.reserve(mix.atoms.size());
    for (const CoherentAtom& a : mix.atoms) {
        atoms.push_back(CoherentAtom{{a.z[static_cast<std::size_t>(mode)]}, a.weight});
    }
    return CoherentMixture::make(1, std::move(atoms), mix.fock_cutoff);
}

// Assembled density matrix sum_a w_a |z_a><z_a| on dimension cutoff^modes,
// renormalized after truncation.
inline DensityOperator assemble_classical_state(const CoherentMixture& mix) {
    double dim_check = 1.0;
    for (int k = 0; k < mix.modes; ++k) dim_check *= static_cast<double>(mix.fock_cutoff);
    if (dim_check > static_cast<double>(osc_dim_cap)) {
        throw DimensionTooLargeError("assemble_classical_state: cutoff^modes above desk-scale cap");
    }
    const Eigen::Index dim = static_cast<Eigen::Index>(dim_check);
    Matrix m = Matrix::Zero(dim, dim);
    for (std::size_t a = 0; a < mix.atoms.size(); ++a) {
        const Vector v = mix.atom_vector(a);
        m += mix.atoms[a].weight * (v * v.adjoint());
    }
    m = 0.5 * (m + m.adjoint());
    m /= m.trace().real();
    return DensityOperator::from_matrix(m);
}

// Mean photon number of one mode: sum_a w_a |z_a,k|^2.
inline double mean_photon(const CoherentMixture& mix, int mode) {
    if (mode < 0 || mode >= mix.modes) throw IndexOutOfRangeError("mean_photon: mode out of range");
    double s = 0.0;
    for (const CoherentAtom& a : mix.atoms) {
        s += a.weight * std::norm(a.z[static_cast<std::size_t>(mode)]);
    }
    return s;
}

// Number-operator expectation of an assembled n-mode state (cross-check path).
inline double assembled_mean_photon(const DensityOperator& rho, int modes, Eigen::Index cutoff,
                                    int mode) {
    if (mode < 0 || mode >= modes) {
        throw IndexOutOfRangeError("assembled_mean_photon: mode out of range");
    }
    double s = 0.0;
    for (Eigen::Index i = 0; i < rho.dim(); ++i) {
        Eigen::Index rest = i;
        Eigen::Index idx = 0;
        for (int k = modes - 1; k >= 0; --k) {
            const Eigen::Index digit = rest % cutoff;
            rest /= cutoff;
            if (k == mode) idx = digit;
        }
        s += static_cast<double>(idx) * rho.matrix()(i, i).real();
    }
    return s;
}

// eps g(E/eps) + 2 g(eps), the two-mode classical-state bound.
inline double classical_mi_bound(double E, double eps) {
    return mi_classical_oscillator_bound(E, eps);
}

// I(A1:A2) of a two-mode mixture, computed from the assembled state and its
// partial traces.
inline double classical_mi_value(const CoherentMixture& mix) {
    if (mix.modes != 2) throw DimMismatchError("classical_mi_value: requires two modes");
    const DensityOperator rho = assemble_classical_state(mix);
    return mutual_information(rho.matrix(), mix.fock_cutoff, mix.fock_cutoff);
}

// Largest per-atom, per-mode truncation leakage (mass beyond the cutoff before
// renormalization); the deviation the assembled state absorbs.
inline double max_truncation_leakage(const CoherentMixture& mix) {
    double worst = 0.0;
    for (const CoherentAtom& a : mix.atoms) {
        for (Complex z : a.z) {
            double norm2 = 0.0;
            double term = std::exp(-std::norm(z));
            for (Eigen::Index k = 0; k < mix.fock_cutoff; ++k) {
                norm2 += term;
                term *= std::norm(z) / static_cast<double>(k + 1);
            }
            worst = std::max(worst, 1.0 - norm2);
        }
    }
    return worst;
}

// TV between atomic representing measures over the union of atom locations.
inline double tv_distance(const CoherentMixture& mu, const CoherentMixture& nu) {
    if (mu.modes != nu.modes) throw DimMismatchError("tv_distance: mode count mismatch");
    using Key = std::vector<std::pair<double, double>>;
    auto key_of = [](const CoherentAtom& a) {
        Key k;
        k.reserve(a.z.size());
        for (Complex z : a.z) k.emplace_back(z.real(), z.imag());
        return k;
    };
    std::map<Key, double> delta;
    for (const CoherentAtom& a : mu.atoms) delta[key_of(a)] += a.weight;
    for (const CoherentAtom& a : nu.atoms) delta[key_of(a)] -= a.weight;
    double s = 0.0;
    for (const auto& [key, d] : delta) s += std::abs(d);
    return 0.5 * s;
}

// Ensemble view of a mixture for the tau+/tau- machinery: labels are atom
// indices, states the truncated coherent projectors.
inline QcEnsemble mixture_ensemble(const CoherentMixture& mix) {
    QcEnsemble ens;
    ens.labels.reserve(mix.atoms.size());
    ens.weights.reserve(mix.atoms.size());
    ens.states.reserve(mix.atoms.size());
    for (std::size_t a = 0; a < mix.atoms.size(); ++a) {
        ens.labels.push_back("atom:" + std::to_string(a));
        ens.weights.push_back(mix.atoms[a].weight);
        const Vector v = mix.atom_vector(a);
        ens.states.push_back(v * v.adjoint());
    }
    return ens;
}

} // namespace qcb

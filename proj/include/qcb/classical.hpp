// classical.hpp — n-variate discrete distributions, Shannon entropy,
// equivocation and total correlation, and their rank/energy continuity bounds.

#pragma once

#include "qcb/afw.hpp"
#include "qcb/common.hpp"
#include "qcb/hamiltonians.hpp"

#include <map>
#include <utility>
#include <vector>

namespace qcb {

// --------------------------- joint distributions --------------------------------

// Sparse n-variate distribution keyed by index tuples; entries are positive and
// sum to 1.
struct JointDistribution {
    int arity = 0;
    std::map<std::vector<int>, double> entries;

    static JointDistribution from_entries(
        int arity, const std::vector<std::pair<std::vector<int>, double>>& list) {
        if (arity < 1) throw ArityMismatchError("JointDistribution: arity must be >= 1");
        JointDistribution jd;
        jd.arity = arity;
        double sum = 0.0;
        for (const auto& [tuple, p] : list) {
            if (static_cast<int>(tuple.size()) != arity) {
                throw ArityMismatchError("JointDistribution: tuple arity mismatch");
            }
            if (p <= 0.0) throw InvalidStateError("JointDistribution: nonpositive probability");
            if (!jd.entries.emplace(tuple, p).second) {
                throw InvalidStateError("JointDistribution: duplicate support tuple");
            }
            sum += p;
        }
        if (std::abs(sum - 1.0) > tol_weights) {
            throw InvalidStateError("JointDistribution: probabilities do not sum to 1");
        }
        return jd;
    }

    // Marginal over component k (0-based).
    std::map<int, double> marginal(int k) const {
        if (k < 0 || k >= arity) throw IndexOutOfRangeError("marginal: component out of range");
        std::map<int, double> out;
        for (const auto& [tuple, p] : entries) {
            out[tuple[static_cast<std::size_t>(k)]] += p;
        }
        return out;
    }

    std::size_t marginal_support(int k) const { return marginal(k).size(); }
};

// --------------------------- entropic quantities ---------------------------------

inline double shannon_entropy(const std::map<int, double>& p) {
    double s = 0.0;
    for (const auto& [key, v] : p) s += eta(v);
    return s;
}

inline double shannon_entropy(const std::vector<double>& p) {
    double s = 0.0;
    for (double v : p) s += eta(v);
    return s;
}

inline double joint_entropy(const JointDistribution& p) {
    double s = 0.0;
    for (const auto& [tuple, v] : p.entries) s += eta(v);
    return s;
}

// H(X1|X2) = H(p) - H(p_2) for bivariate distributions.
inline double equivocation(const JointDistribution& p) {
    if (p.arity != 2) throw ArityMismatchError("equivocation: requires a bivariate distribution");
    return joint_entropy(p) - shannon_entropy(p.marginal(1));
}

// Total correlation sum_k H(p_k) - H(p); zero exactly for products.
inline double total_correlation(const JointDistribution& p) {
    double s = 0.0;
    for (int k = 0; k < p.arity; ++k) s += shannon_entropy(p.marginal(k));
    return s - joint_entropy(p);
}

// TV over the union of supports with implicit zeros.
inline double tv_distance(const JointDistribution& p, const JointDistribution& q) {
    if (p.arity != q.arity) throw ArityMismatchError("tv_distance: arity mismatch");
    double s = 0.0;
    auto it_p = p.entries.begin();
    auto it_q = q.entries.begin();
    while (it_p != p.entries.end() || it_q != q.entries.end()) {
        if (it_q == q.entries.end() || (it_p != p.entries.end() && it_p->first < it_q->first)) {
            s += it_p->second;
            ++it_p;
        } else if (it_p == p.entries.end() || it_q->first < it_p->first) {
            s += it_q->second;
            ++it_q;
        } else {
            s += std::abs(it_p->second - it_q->second);
            ++it_p;
            ++it_q;
        }
    }
    return 0.5 * s;
}

// Mean of the first-component marginal against a spectrum: the i-th support
// value indexes E_i.
inline double marginal_mean_energy(const JointDistribution& p, const Spectrum& spec) {
    double e = 0.0;
    for (const auto& [value, prob] : p.marginal(0)) {
        if (value < 0) throw IndexOutOfRangeError("marginal_mean_energy: negative index");
        e += spec.energy(static_cast<std::size_t>(value)) * prob;
    }
    return e;
}

// --------------------------- continuity bounds -----------------------------------

// C eps ln(d) + D g(eps) for classes with marginal-support cap d.
inline double classical_rank_bound(const LaaClassParams& params, std::size_t d, double eps) {
    params.validate();
    if (d < 1) throw OutOfRangeError("classical_rank_bound: need d >= 1");
    if (eps < 0.0 || eps > 1.0) throw OutOfRangeError("classical_rank_bound: eps outside [0,1]");
    if (eps == 0.0) return 0.0;
    return params.C * eps * std::log(static_cast<double>(d)) + params.D * g(eps);
}

// C eps F_S(E/eps) + D g(eps); with the constrained distribution supplied, the
// cap shrinks by E_eps(p) = sum_i E_i sum_{rest} [p_{i,rest} - eps]_+.
inline double classical_energy_bound(const LaaClassParams& params, const Spectrum& spec,
                                     double E, double eps,
                                     const JointDistribution* p = nullptr) {
    params.validate();
    if (!spec.grounded_at_zero()) {
        throw OutOfRangeError("classical_energy_bound: spectrum must start at zero");
    }
    if (eps <= 0.0 || eps > 1.0) throw OutOfRangeError("classical_energy_bound: eps outside (0,1]");
    if (E < 0.0) throw OutOfRangeError("classical_energy_bound: negative energy");
    double reduced = E;
    if (p != nullptr) {
        if (marginal_mean_energy(*p, spec) > E + 1e-9) {
            throw ConstraintViolatedError("classical_energy_bound: marginal mean energy exceeds E");
        }
        std::map<int, double> clipped_marginal;
        for (const auto& [tuple, prob] : p->entries) {
            const double clipped = prob - eps;
            if (clipped > 0.0) clipped_marginal[tuple[0]] += clipped;
        }
        double offset = 0.0;
        for (const auto& [value, mass] : clipped_marginal) {
            offset += spec.energy(static_cast<std::size_t>(value)) * mass;
        }
        reduced = std::max(E - offset, 0.0);
    }
    return params.C * eps * max_entropy(spec, reduced / eps) + params.D * g(eps);
}

// eps ln(n-1) + h2(eps), the optimal equivocation bound, valid for
// eps <= 1 - 1/n.
inline double alhejji_smith_bound(int n, double eps) {
    if (n < 2) throw OutOfRangeError("alhejji_smith_bound: need n >= 2");
    if (eps < 0.0 || eps > 1.0 - 1.0 / static_cast<double>(n)) {
        throw OutOfRangeError("alhejji_smith_bound: eps outside [0, 1 - 1/n]");
    }
    if (eps == 0.0) return 0.0;
    return eps * std::log(static_cast<double>(n - 1)) + binary_entropy(eps);
}

} // namespace qcb

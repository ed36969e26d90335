// hamiltonians.hpp — Hamiltonian spectra, the scalar entropy functions g and h2,
// the Gibbs solver beta(E) and the constrained-entropy maximizer.

#pragma once

#include "qcb/common.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

namespace qcb {

// g(x) = (x+1) ln(x+1) - x ln x, the entropy of a thermal oscillator state
// with mean occupation x. Strictly increasing and concave, g(0) = 0.
inline double g(double x) {
    if (x < 0.0) throw NegativeInputError("g: negative argument");
    if (x == 0.0) return 0.0;
    // x*log1p(1/x) + log1p(x) is stable for both tiny and huge x.
    return x * std::log1p(1.0 / x) + std::log1p(x);
}

// h2(p) = eta(p) + eta(1-p), in nats.
inline double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0) throw OutOfRangeError("binary_entropy: p outside [0,1]");
    return eta(p) + eta(1.0 - p);
}

// --------------------------- spectra -----------------------------------------

// Nondecreasing nonnegative eigenvalue sequence of a Hamiltonian: an arithmetic
// ladder k*step, an explicit finite list, or a closed-form generator.
class Spectrum {
public:
    enum class Kind { Arithmetic, Explicit, Generator };

    static Spectrum arithmetic(double step) {
        if (!(step > 0.0)) throw OutOfRangeError("Spectrum::arithmetic: step must be positive");
        Spectrum s;
        s.kind_ = Kind::Arithmetic;
        s.step_ = step;
        s.ground_multiplicity_ = 1;
        return s;
    }

    static Spectrum explicit_values(std::vector<double> values) {
        if (values.empty()) throw OutOfRangeError("Spectrum::explicit_values: empty list");
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (values[i] < 0.0) {
                throw OutOfRangeError("Spectrum::explicit_values: negative energy");
            }
            if (i > 0 && values[i] < values[i - 1] - 1e-12) {
                throw OutOfRangeError("Spectrum::explicit_values: values must be nondecreasing");
            }
        }
        Spectrum s;
        s.kind_ = Kind::Explicit;
        s.values_ = std::move(values);
        s.ground_multiplicity_ = 1;
        while (s.ground_multiplicity_ < s.values_.size() &&
               s.values_[s.ground_multiplicity_] <= s.values_[0] + 1e-12) {
            ++s.ground_multiplicity_;
        }
        return s;
    }

    static Spectrum generator(std::function<double(std::size_t)> f) {
        Spectrum s;
        s.kind_ = Kind::Generator;
        s.gen_ = std::move(f);
        const double e0 = s.gen_(0);
        if (e0 < 0.0) throw OutOfRangeError("Spectrum::generator: negative ground energy");
        s.ground_multiplicity_ = 1;
        // Probe a bounded prefix for the ground multiplicity.
        for (std::size_t k = 1; k < 4096; ++k) {
            if (s.gen_(k) > e0 + 1e-12) break;
            ++s.ground_multiplicity_;
        }
        return s;
    }

    Kind kind() const { return kind_; }
    bool is_arithmetic() const { return kind_ == Kind::Arithmetic; }
    bool is_finite() const { return kind_ == Kind::Explicit; }
    double step() const { return step_; }
    const std::vector<double>& values() const { return values_; }

    double energy(std::size_t k) const {
        switch (kind_) {
            case Kind::Arithmetic: return static_cast<double>(k) * step_;
            case Kind::Explicit:
                return k < values_.size() ? values_[k] : std::numeric_limits<double>::infinity();
            case Kind::Generator: return gen_(k);
        }
        return 0.0;
    }

    std::size_t count() const {
        return kind_ == Kind::Explicit ? values_.size()
                                       : std::numeric_limits<std::size_t>::max();
    }

    double ground_energy() const { return energy(0); }
    std::size_t ground_multiplicity() const { return ground_multiplicity_; }
    bool grounded_at_zero() const { return ground_energy() == 0.0; }

    // Unconstrained mean of a finite spectrum (mean energy at beta = 0).
    double finite_mean() const {
        if (!is_finite()) throw OutOfRangeError("Spectrum::finite_mean: infinite spectrum");
        return std::accumulate(values_.begin(), values_.end(), 0.0) /
               static_cast<double>(values_.size());
    }

    bool same_as(const Spectrum& other) const {
        if (kind_ != other.kind_) return false;
        switch (kind_) {
            case Kind::Arithmetic: return step_ == other.step_;
            case Kind::Explicit: return values_ == other.values_;
            case Kind::Generator: return false; // opaque closures never compare equal
        }
        return false;
    }

private:
    Kind kind_ = Kind::Arithmetic;
    double step_ = 1.0;
    std::vector<double> values_;
    std::function<double(std::size_t)> gen_;
    std::size_t ground_multiplicity_ = 1;
};

// --------------------------- truncation ---------------------------------------

inline constexpr std::size_t truncation_max = std::size_t{1} << 20;

// Truncation with tail mass below tol relative to the partition sum: doubles N
// until the last doubling changes sum e^{-beta_min (E_i - E_0)} by less than
// tol, then scans back to the smallest prefix whose certified remainder stays
// below tol.
inline std::size_t adaptive_truncation(const Spectrum& spec, double beta_min, double tol) {
    if (!(beta_min > 0.0)) throw OutOfRangeError("adaptive_truncation: beta must be positive");
    if (!(tol > 0.0)) throw OutOfRangeError("adaptive_truncation: tol must be positive");
    const double e0 = spec.ground_energy();
    const std::size_t limit = spec.is_finite() ? spec.count() : truncation_max;
    auto partial_sum = [&](std::size_t n) {
        double z = 0.0;
        for (std::size_t k = 0; k < n; ++k) z += std::exp(-beta_min * (spec.energy(k) - e0));
        return z;
    };
    std::size_t n = std::min<std::size_t>(16, limit);
    double z = partial_sum(n);
    bool certified = n == limit;
    while (n < limit) {
        const std::size_t n2 = std::min(n * 2, limit);
        const double z2 = partial_sum(n2);
        const bool small_change = z2 - z < tol * z2;
        n = n2;
        z = z2;
        if (small_change) {
            certified = true;
            break;
        }
    }
    if (!certified && !spec.is_finite()) {
        throw BracketFailureError("adaptive_truncation: spectrum grows too slowly for probe beta");
    }
    // Trim to the smallest prefix still holding all but tol/2 of the certified
    // sum; with the certified remainder this keeps the total tail below tol.
    double head = z;
    std::size_t trimmed = n;
    while (trimmed > 2) {
        const double term = std::exp(-beta_min * (spec.energy(trimmed - 1) - e0));
        if (z - (head - term) >= 0.5 * tol * z) break;
        head -= term;
        --trimmed;
    }
    return trimmed;
}

// --------------------------- Gibbs solver -------------------------------------

struct GibbsSolution {
    double energy = 0.0;       // target mean energy E
    double beta = 0.0;
    std::size_t truncation = 0;
    RealVector probabilities;  // Gibbs weights over the first N levels
    double entropy = 0.0;      // maximal entropy at E, in nats
    double tail_bound = 0.0;   // relative mass estimate of the discarded tail
};

namespace detail {

// Mean energy of the truncated Gibbs distribution at inverse temperature beta.
// Energies are shifted by E_0 so the leading weight is exactly 1.
inline double truncated_mean_energy(const Spectrum& spec, double beta, std::size_t n) {
    const double e0 = spec.ground_energy();
    double z = 0.0, w = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double e = spec.energy(k);
        const double t = std::exp(-beta * (e - e0));
        z += t;
        w += e * t;
    }
    return w / z;
}

inline GibbsSolution assemble_solution(const Spectrum& spec, double beta, std::size_t n,
                                       double energy, double tail) {
    const double e0 = spec.ground_energy();
    GibbsSolution sol;
    sol.energy = energy;
    sol.beta = beta;
    sol.truncation = n;
    sol.probabilities.resize(static_cast<Eigen::Index>(n));
    double z = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double t = std::exp(-beta * (spec.energy(k) - e0));
        sol.probabilities(static_cast<Eigen::Index>(k)) = t;
        z += t;
    }
    sol.probabilities /= z;
    // F = beta (E - E_0) + ln Z(shifted); algebraically the Shannon entropy of
    // the solved distribution.
    sol.entropy = beta * (energy - e0) + std::log(z);
    sol.tail_bound = tail;
    return sol;
}

} // namespace detail

// Solves Tr H e^{-beta H} = E Tr e^{-beta H} for beta by bracketed bisection
// refined with secant steps. Requires E strictly above the ground energy, and
// for finite spectra strictly below the unconstrained mean.
inline GibbsSolution solve_beta(const Spectrum& spec, double E, double tol = 1e-12) {
    const double e0 = spec.ground_energy();
    if (!(E > e0)) throw EnergyBelowGroundError("solve_beta: E must exceed the ground energy");
    if (!(tol > 0.0)) throw OutOfRangeError("solve_beta: tol must be positive");

    // Closed form for arithmetic ladders: mean occupation nbar = E/step,
    // e^{-beta step} = nbar/(nbar+1).
    if (spec.is_arithmetic()) {
        const double nbar = E / spec.step();
        const double beta = std::log1p(1.0 / nbar) / spec.step();
        const std::size_t n = adaptive_truncation(spec, beta, std::min(tol, 1e-9) * 1e-3);
        GibbsSolution sol = detail::assemble_solution(spec, beta, n, E, 0.0);
        sol.entropy = g(nbar);
        // relative mass of the discarded geometric tail
        sol.tail_bound = std::pow(std::exp(-beta * spec.step()), static_cast<double>(n));
        return sol;
    }

    if (spec.is_finite() && E >= spec.finite_mean()) {
        throw BracketFailureError(
            "solve_beta: E at or above the unconstrained mean of a finite spectrum");
    }

    const double beta_min = 1e-8;
    const double mass_tol = 1e-3 * std::min(tol, 1e-9);
    double beta_hi = 1.0;
    double beta_lo = 1.0;
    std::size_t n = adaptive_truncation(spec, 1.0, mass_tol);

    auto mean_at = [&](double b) { return detail::truncated_mean_energy(spec, b, n); };

    // Expand the bracket: mean energy is strictly decreasing in beta. Lowering
    // the bracket needs a truncation wide enough for the smaller beta.
    while (mean_at(beta_hi) > E) {
        beta_lo = beta_hi;
        beta_hi *= 2.0;
        if (beta_hi > 1e18) throw BracketFailureError("solve_beta: bracket expansion failed (high)");
    }
    while (mean_at(beta_lo) < E) {
        beta_hi = beta_lo;
        beta_lo *= 0.5;
        if (beta_lo < beta_min) {
            throw BracketFailureError("solve_beta: bracket expansion failed (low beta cap)");
        }
        n = std::max(n, adaptive_truncation(spec, beta_lo, mass_tol));
    }

    for (int attempt = 0; attempt < 8; ++attempt) {
        double lo = beta_lo, hi = beta_hi;
        double f_lo = mean_at(lo) - E;
        double f_hi = mean_at(hi) - E;
        double beta = 0.5 * (lo + hi);
        int stuck_side = 0; // Illinois guard against one-sided stagnation
        for (int it = 0; it < 300; ++it) {
            double cand = (f_lo != f_hi) ? lo - f_lo * (hi - lo) / (f_hi - f_lo)
                                         : 0.5 * (lo + hi);
            if (!(cand > lo && cand < hi) || std::abs(stuck_side) >= 2) {
                cand = 0.5 * (lo + hi);
            }
            const double f_c = mean_at(cand) - E;
            beta = cand;
            if (std::abs(f_c) <= 0.25 * tol || hi - lo < 1e-16 * hi) break;
            if (f_c > 0.0) {
                lo = cand;
                f_lo = f_c;
                stuck_side = stuck_side > 0 ? stuck_side + 1 : 1;
            } else {
                hi = cand;
                f_hi = f_c;
                stuck_side = stuck_side < 0 ? stuck_side - 1 : -1;
            }
        }
        if (std::abs(mean_at(beta) - E) <= tol) {
            // Tail estimate from a geometric majorant on the last two terms.
            double tail = 0.0;
            if (!spec.is_finite() && n >= 2) {
                double zn = 0.0;
                for (std::size_t k = 0; k < n; ++k) {
                    zn += std::exp(-beta * (spec.energy(k) - e0));
                }
                const double last = std::exp(-beta * (spec.energy(n - 1) - e0));
                const double prev = std::exp(-beta * (spec.energy(n - 2) - e0));
                const double r = prev > 0.0 ? last / prev : 0.0;
                tail = (r > 0.0 && r < 1.0) ? last * r / ((1.0 - r) * zn) : 0.0;
            }
            return detail::assemble_solution(spec, beta, n, E, tail);
        }
        // Not converged at this truncation: enlarge and retry.
        if (spec.is_finite() || n >= truncation_max) break;
        n = std::min(n * 2, truncation_max);
    }
    throw BracketFailureError("solve_beta: failed to meet the mean-energy residual");
}

// --------------------------- maximal entropy ----------------------------------

// Maximal entropy attainable under the mean-energy cap Tr(H rho) <= E. Equals
// the solved Gibbs entropy for E above ground; ln(ground multiplicity) at the
// ground energy; for finite spectra it saturates at ln(count) once the cap
// passes the unconstrained mean.
inline double max_entropy(const Spectrum& spec, double E) {
    const double e0 = spec.ground_energy();
    if (E < e0 - 1e-12) throw EnergyBelowGroundError("max_entropy: E below the ground energy");
    if (E <= e0) return std::log(static_cast<double>(spec.ground_multiplicity()));
    if (spec.is_arithmetic()) return g(E / spec.step());
    if (spec.is_finite() && E >= spec.finite_mean()) {
        return std::log(static_cast<double>(spec.count()));
    }
    return solve_beta(spec, E, 1e-10).entropy;
}

// Maximal entropy over m factors under the summed-energy cap, solved with one
// shared beta (the joint partition function factorizes). Identical factor
// spectra reduce to m * max_entropy(spec, E/m).
inline double max_entropy_multi(const std::vector<Spectrum>& specs, double E) {
    if (specs.empty()) throw OutOfRangeError("max_entropy_multi: no spectra");
    for (const Spectrum& s : specs) {
        if (!s.grounded_at_zero()) {
            throw OutOfRangeError("max_entropy_multi: spectra must be grounded at zero");
        }
    }
    const std::size_t m = specs.size();
    if (m == 1) return max_entropy(specs[0], E);
    if (E < 0.0) throw EnergyBelowGroundError("max_entropy_multi: negative energy");

    bool all_same = true;
    for (std::size_t k = 1; k < m; ++k) {
        if (!specs[k].same_as(specs[0])) {
            all_same = false;
            break;
        }
    }
    if (all_same) return static_cast<double>(m) * max_entropy(specs[0], E / static_cast<double>(m));

    if (E == 0.0) {
        double s = 0.0;
        for (const Spectrum& sp : specs) {
            s += std::log(static_cast<double>(sp.ground_multiplicity()));
        }
        return s;
    }

    // If every factor is finite and the cap exceeds the joint unconstrained
    // mean, the uniform product is feasible and optimal.
    bool all_finite = true;
    double joint_mean = 0.0;
    for (const Spectrum& sp : specs) {
        if (!sp.is_finite()) {
            all_finite = false;
            break;
        }
        joint_mean += sp.finite_mean();
    }
    if (all_finite && E >= joint_mean) {
        double s = 0.0;
        for (const Spectrum& sp : specs) s += std::log(static_cast<double>(sp.count()));
        return s;
    }

    // Shared-beta solve on the factorized partition function.
    std::vector<std::size_t> ns(m);
    auto refresh_truncations = [&](double beta_probe) {
        for (std::size_t k = 0; k < m; ++k) {
            ns[k] = adaptive_truncation(specs[k], beta_probe, 1e-13);
        }
    };
    const double beta_min = 1e-8;
    refresh_truncations(std::max(beta_min, 1e-2));
    auto mean_at = [&](double b) {
        double s = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            s += detail::truncated_mean_energy(specs[k], b, ns[k]);
        }
        return s;
    };
    double beta_lo = 1.0, beta_hi = 1.0;
    while (mean_at(beta_hi) > E) {
        beta_lo = beta_hi;
        beta_hi *= 2.0;
        if (beta_hi > 1e18) throw BracketFailureError("max_entropy_multi: bracket failed (high)");
    }
    while (mean_at(beta_lo) < E) {
        beta_hi = beta_lo;
        beta_lo *= 0.5;
        if (beta_lo < beta_min) {
            throw BracketFailureError("max_entropy_multi: bracket failed (low beta cap)");
        }
        refresh_truncations(beta_lo);
    }
    double lo = beta_lo, hi = beta_hi;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mean_at(mid) > E) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-15 * hi) break;
    }
    const double beta = 0.5 * (lo + hi);
    double entropy = beta * E;
    for (std::size_t k = 0; k < m; ++k) {
        double z = 0.0;
        for (std::size_t i = 0; i < ns[k]; ++i) z += std::exp(-beta * specs[k].energy(i));
        entropy += std::log(z);
    }
    return entropy;
}

} // namespace qcb

// Tests for the named continuity bounds, refinements, extremal pairs,
// quantum-classical conditional entropy and the two-qubit oracle.

#include "qcb/bounds.hpp"
#include "qcb/rng.hpp"
#include "qcb/sampling.hpp"

#include "oracle_convex_roof.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace qcb;

namespace {

const double ln2 = std::log(2.0);
const Spectrum ladder = Spectrum::arithmetic(1.0);

Vector bell_phi_plus() {
    Vector v = Vector::Zero(4);
    v(0) = 1.0 / std::sqrt(2.0);
    v(3) = 1.0 / std::sqrt(2.0);
    return v;
}

DensityOperator werner(double w) {
    const Vector psi = [] {
        Vector v = Vector::Zero(4);
        v(1) = 1.0 / std::sqrt(2.0);
        v(2) = -1.0 / std::sqrt(2.0);
        return v;
    }();
    Matrix m = w * (psi * psi.adjoint()) + (1.0 - w) * 0.25 * Matrix::Identity(4, 4);
    return DensityOperator::from_matrix(m);
}

double werner_eof(double w) {
    const double c = std::max(0.0, (3.0 * w - 1.0) / 2.0);
    const double x = 0.5 * (1.0 + std::sqrt(1.0 - c * c));
    return binary_entropy(x);
}

} // namespace

TEST_CASE("audenaert bound") {
    CHECK(audenaert_bound(4, 0.0) == 0.0);
    CHECK(audenaert_bound(2, 0.5) == Catch::Approx(ln2));
    CHECK(audenaert_bound(2, 0.9) == Catch::Approx(ln2)); // cap branch
    CHECK(audenaert_bound(8, 0.2) == Catch::Approx(0.2 * std::log(7.0) + binary_entropy(0.2)));
    CHECK_THROWS_AS(audenaert_bound(1, 0.1), OutOfRangeError);
}

TEST_CASE("winter energy bound") {
    CHECK(winter_energy_bound(ladder, 1.0, 0.1) ==
          Catch::Approx(0.2 * g(10.0) + binary_entropy(0.1)));
    CHECK(winter_energy_bound(ladder, 1.0, 1e-4) < 0.01);
    SECTION("never sharper than the one-factor bound minus the g-h2 gap") {
        for (double eps : {0.05, 0.1, 0.2, 0.4}) {
            for (double E : {0.5, 1.0, 4.0}) {
                CHECK(winter_energy_bound(ladder, E, eps) >=
                      entropy_energy_bound(ladder, E, eps) - (g(eps) - binary_entropy(eps)) -
                          1e-12);
            }
        }
    }
}

TEST_CASE("bdj bound") {
    CHECK(bdj_bound(1.0, 0.0) == 0.0);
    CHECK(bdj_bound(1.0, 0.25) == Catch::Approx(2.0 * binary_entropy(0.25)));
    CHECK_THROWS_AS(bdj_bound(1.0, 0.6), OutOfRangeError);
    SECTION("gap to the one-factor bound at E = 1") {
        for (double eps : {0.05, 0.1, 0.2}) {
            const double gap = entropy_energy_bound(ladder, 1.0, eps) - bdj_bound(1.0, eps);
            CHECK(gap == Catch::Approx(2.0 * (g(eps) - binary_entropy(eps))).margin(1e-10));
        }
    }
    SECTION("never exceeds the one-factor bound on its validity region") {
        for (double E : {0.25, 0.5, 1.0, 2.0, 8.0}) {
            for (double eps = 0.02; eps <= E / (E + 1.0); eps += 0.02) {
                CHECK(bdj_bound(E, eps) <= entropy_energy_bound(ladder, E, eps) + 1e-12);
            }
        }
    }
}

TEST_CASE("one-factor energy bound") {
    CHECK(entropy_energy_bound(ladder, 1.0, 0.2) == Catch::Approx(0.2 * g(5.0) + g(0.2)));
    SECTION("binary-entropy rewrite identity") {
        for (double eps : {0.01, 0.05, 0.2, 0.5, 0.9}) {
            for (double E : {0.5, 1.0, 2.0, 16.0}) {
                const double direct = eps * g(E / eps) + g(eps);
                const double rewritten = (E + eps) * binary_entropy(eps / (E + eps)) +
                                         (1.0 + eps) * binary_entropy(eps / (1.0 + eps));
                CHECK(direct == Catch::Approx(rewritten).margin(1e-10));
            }
        }
    }
    SECTION("dominates sampled commuting pairs") {
        CounterRng rng(61);
        for (int t = 0; t < 50; ++t) {
            const double eps = rng.uniform(0.05, 0.4);
            const CommutingPair pair =
                sample_commuting_pair(16, EnergyConstraint{ladder, 1.0}, eps, rng);
            const double lhs =
                std::abs(von_neumann_entropy(pair.rho) - von_neumann_entropy(pair.sigma));
            CHECK(lhs <= entropy_energy_bound(ladder, 1.0, eps) + 1e-8);
        }
    }
}

TEST_CASE("truncated positive-part energies") {
    RealVector p(2);
    p << 0.6, 0.4;
    const DensityOperator rho = DensityOperator::diagonal(p);
    SECTION("vanish once eps dominates") {
        CHECK(e_h_eps(rho, ladder, 0.7) == Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("diagonal arithmetic") {
        CHECK(e_h_eps(rho, ladder, 0.1) == Catch::Approx(0.3));
        CHECK(e_star(rho.eigenvalues(), ladder, 0.1) == Catch::Approx(0.3));
    }
    SECTION("e_star at eps = 0 is the sorted-pairing energy") {
        CHECK(e_star(rho.eigenvalues(), ladder, 0.0) == Catch::Approx(0.4));
    }
    SECTION("diagonal states make both formulas coincide") {
        CounterRng rng(67);
        for (int t = 0; t < 20; ++t) {
            const RealVector probs = random_simplex(10, rng);
            RealVector sorted = probs;
            std::sort(sorted.data(), sorted.data() + sorted.size(), std::greater<double>());
            const DensityOperator diag = DensityOperator::diagonal(sorted);
            const double eps = rng.uniform(0.0, 0.3);
            CHECK(e_h_eps(diag, ladder, eps) ==
                  Catch::Approx(e_star(diag.eigenvalues(), ladder, eps)).margin(1e-12));
        }
    }
    SECTION("spectral pairing lower-bounds the operator value") {
        CounterRng rng(71);
        for (int t = 0; t < 50; ++t) {
            const Eigen::Index d = 4 + static_cast<Eigen::Index>(rng.uniform_index(9));
            const DensityOperator state = random_density(d, rng);
            const double eps = rng.uniform(0.0, 0.4);
            CHECK(e_star(state.eigenvalues(), ladder, eps) <=
                  e_h_eps(state, ladder, eps) + 1e-9);
        }
    }
}

TEST_CASE("refined energy bound") {
    SECTION("equals the unrefined bound once eps dominates") {
        RealVector p(2);
        p << 0.6, 0.4;
        const DensityOperator rho = DensityOperator::diagonal(p);
        CHECK(refined_entropy_bound(rho, ladder, 1.0, 0.7) ==
              Catch::Approx(entropy_energy_bound(ladder, 1.0, 0.7)));
    }
    SECTION("strictly sharper at the Gibbs state for small eps") {
        const GibbsSolution gibbs = solve_beta(ladder, 1.0, 1e-12);
        const DensityOperator rho = DensityOperator::diagonal(gibbs.probabilities);
        const double refined = refined_entropy_bound(rho, ladder, 1.0, 0.01);
        const double unrefined = entropy_energy_bound(ladder, 1.0, 0.01);
        CHECK(refined < unrefined - 1e-3);
    }
    SECTION("never exceeds the unrefined bound") {
        CounterRng rng(73);
        for (int t = 0; t < 30; ++t) {
            const RealVector p = energy_capped_simplex(ladder, 12, 1.0, rng);
            const DensityOperator rho = DensityOperator::diagonal(p);
            const double eps = rng.uniform(0.02, 0.6);
            CHECK(refined_entropy_bound(rho, ladder, 1.0, eps) <=
                  entropy_energy_bound(ladder, 1.0, eps) + 1e-9);
        }
    }
    SECTION("rejects states above the cap") {
        RealVector p(3);
        p << 0.1, 0.2, 0.7; // mean energy 1.6
        const DensityOperator rho = DensityOperator::diagonal(p);
        CHECK_THROWS_AS(refined_entropy_bound(rho, ladder, 1.0, 0.1), ConstraintViolatedError);
    }
}

TEST_CASE("extremal pair") {
    SECTION("gap bracket at E = 1, eps = 0.2") {
        const ExtremalPair pair = extremal_pair(ladder, 1.0, 0.2);
        const double gap = von_neumann_entropy(pair.rho) - von_neumann_entropy(pair.sigma);
        CHECK(gap > 0.2 * g(5.0));
        CHECK(gap <= 0.2 * g(5.0) + g(0.2) + 1e-12);
    }
    SECTION("trace distance within eps") {
        for (double eps : {0.05, 0.3, 0.8}) {
            const ExtremalPair pair = extremal_pair(ladder, 1.0, eps);
            CHECK(trace_distance(pair.rho, pair.sigma) <= eps + 1e-9);
        }
    }
    SECTION("mean energy within the cap") {
        const ExtremalPair pair = extremal_pair(ladder, 1.0, 0.2);
        CHECK(mean_energy(pair.rho, ladder) <= 1.0 + 1e-9);
    }
    SECTION("eps = 1 degenerates to the Gibbs state against the ground state") {
        const ExtremalPair pair = extremal_pair(ladder, 1.0, 1.0);
        CHECK(von_neumann_entropy(pair.sigma) == Catch::Approx(0.0).margin(1e-12));
        CHECK(von_neumann_entropy(pair.rho) == Catch::Approx(g(1.0)).margin(1e-9));
    }
}

TEST_CASE("rank entropy bound") {
    CHECK(rank_entropy_bound(2, 0.0) == 0.0);
    CHECK(rank_entropy_bound(2, 0.5) == Catch::Approx(ln2));
    CHECK_THROWS_AS(rank_entropy_bound(2, 0.6), OutOfRangeError);
    CHECK_THROWS_AS(rank_entropy_bound(1, 0.1), OutOfRangeError);
    SECTION("sharper than the generic rank bound") {
        const LaaClassParams unit = LaaClassParams::make(1.0, 1.0);
        for (int rank : {2, 4, 16}) {
            for (double eps : {0.1, 0.3, 0.5}) {
                if (eps > 1.0 - 1.0 / rank) continue;
                CHECK(rank_entropy_bound(rank, eps) <
                      afw_rank_bound(unit, static_cast<std::size_t>(rank), eps));
            }
        }
    }
}

TEST_CASE("mixed and two-sided bounds") {
    SECTION("mixed trivial and formula") {
        const TwoSidedBound zero = mixed_bound(2, ladder, 1.0, 0.0);
        CHECK(zero.lower == 0.0);
        CHECK(zero.upper == 0.0);
        const TwoSidedBound b = mixed_bound(2, ladder, 1.0, 0.1);
        CHECK(b.lower == Catch::Approx(binary_entropy(0.1)));
        CHECK(b.upper == Catch::Approx(0.1 * g(10.0) + g(0.1)));
        CHECK_THROWS_AS(mixed_bound(2, ladder, 1.0, 0.6), OutOfRangeError);
    }
    SECTION("two-sided formula") {
        const TwoSidedBound sym = two_sided_energy_bound(ladder, 1.0, 1.0, 0.1);
        CHECK(sym.lower == Catch::Approx(sym.upper));
        CHECK(sym.upper == Catch::Approx(entropy_energy_bound(ladder, 1.0, 0.1)));
        const TwoSidedBound asym = two_sided_energy_bound(ladder, 1.0, 4.0, 0.1);
        CHECK(asym.lower == Catch::Approx(0.1 * g(40.0) + g(0.1)));
        CHECK(asym.upper == Catch::Approx(0.1 * g(10.0) + g(0.1)));
    }
}

TEST_CASE("quantum-classical conditional entropy") {
    CounterRng rng(79);
    SECTION("single component") {
        const DensityOperator c = random_density(4, rng);
        const QcState qc{{1.0}, {c}};
        CHECK(qce_value(qc) == Catch::Approx(von_neumann_entropy(c)));
    }
    SECTION("pure components vanish") {
        const QcState qc{{0.5, 0.5}, {random_pure(4, rng), random_pure(4, rng)}};
        CHECK(qce_value(qc) == Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("matches the assembled bipartite route") {
        for (int t = 0; t < 10; ++t) {
            QcState qc{{}, {}};
            const RealVector w = random_simplex(3, rng);
            for (int k = 0; k < 3; ++k) {
                qc.weights.push_back(w(k));
                qc.components.push_back(random_density(2, rng));
            }
            const Matrix full = qc.assemble();
            const DensityOperator joint = DensityOperator::from_matrix(full);
            const DensityOperator reg = DensityOperator::from_matrix(
                partial_trace_first(full, qc.system_dim(), qc.register_dim()));
            const double via_parts =
                von_neumann_entropy(joint) - von_neumann_entropy(reg);
            CHECK(qce_value(qc) == Catch::Approx(via_parts).margin(1e-9));
        }
    }
}

TEST_CASE("qce bounds") {
    SECTION("rank one gives g(eps)") {
        CHECK(qce_rank_bound(1, 0.3) == Catch::Approx(g(0.3)));
    }
    SECTION("energy mode reduces to the entropy bound for trivial registers") {
        for (double eps : {0.05, 0.2}) {
            CHECK(qce_energy_bound(ladder, 1.0, eps) ==
                  Catch::Approx(entropy_energy_bound(ladder, 1.0, eps)));
        }
    }
    SECTION("extremal pair pushed through a trivial register beats eps F(E/eps)") {
        const ExtremalPair pair = extremal_pair(ladder, 1.0, 0.2);
        const QcState rho{{1.0}, {pair.rho}};
        const QcState sigma{{1.0}, {pair.sigma}};
        const double gap = qce_value(rho) - qce_value(sigma);
        CHECK(gap > 0.2 * max_entropy(ladder, 5.0));
    }
    SECTION("ensemble refinement never exceeds the plain bound") {
        CounterRng rng(83);
        for (int t = 0; t < 10; ++t) {
            QcState rho{{}, {}};
            const RealVector w = random_simplex(3, rng);
            for (int k = 0; k < 3; ++k) {
                rho.weights.push_back(w(k));
                rho.components.push_back(
                    DensityOperator::diagonal(energy_capped_simplex(ladder, 8, 1.0, rng)));
            }
            const double eps = rng.uniform(0.05, 0.5);
            CHECK(qce_energy_bound(ladder, 1.0, eps, &rho) <=
                  qce_energy_bound(ladder, 1.0, eps) + 1e-12);
        }
    }
}

TEST_CASE("eof bounds") {
    CHECK(eof_rank_bound(2, 0.0) == 0.0);
    CHECK(eof_rank_bound(2, 1.0) == 0.0);
    CHECK(eof_rank_bound(2, 0.1) == Catch::Approx(0.3 * ln2 + g(0.3)));
    CHECK(eof_energy_bound(ladder, 1.0, 0.0) == 0.0);
    SECTION("delta symmetry") {
        for (double eps : {0.05, 0.2, 0.35}) {
            CHECK(eof_rank_bound(3, eps) == Catch::Approx(eof_rank_bound(3, 1.0 - eps)));
            CHECK(eof_energy_bound(ladder, 1.0, eps) ==
                  Catch::Approx(eof_energy_bound(ladder, 1.0, 1.0 - eps)));
        }
    }
}

TEST_CASE("wootters oracle") {
    SECTION("maximally entangled pure state") {
        CHECK(wootters_eof(DensityOperator::pure(bell_phi_plus())) ==
              Catch::Approx(ln2).margin(1e-10));
    }
    SECTION("product state") {
        Vector v = Vector::Zero(4);
        v(0) = 1.0;
        CHECK(wootters_eof(DensityOperator::pure(v)) == Catch::Approx(0.0).margin(1e-10));
    }
    SECTION("pure states match the reduced entropy") {
        CounterRng rng(89);
        for (int t = 0; t < 20; ++t) {
            const DensityOperator psi = random_pure(4, rng);
            const DensityOperator a =
                DensityOperator::from_matrix(partial_trace_second(psi.matrix(), 2, 2));
            CHECK(wootters_eof(psi) == Catch::Approx(von_neumann_entropy(a)).margin(1e-9));
        }
    }
    SECTION("werner family matches the closed form and the convex-roof search") {
        for (int i = 0; i < 10; ++i) {
            const double w = 0.05 + 0.1 * i;
            const DensityOperator rho = werner(w);
            const double exact = wootters_eof(rho);
            CHECK(exact == Catch::Approx(werner_eof(w)).margin(1e-9));
            const double roof = qcb_test::convex_roof_eof(rho);
            CHECK(std::abs(exact - roof) <= 2e-3);
        }
    }
    SECTION("dimension check") {
        CHECK_THROWS_AS(wootters_eof(DensityOperator::diagonal(RealVector::Constant(2, 0.5))),
                        DimMismatchError);
    }
}

TEST_CASE("mutual information bounds") {
    CHECK(mi_rank_bound(4, 0.0) == 0.0);
    CHECK(mi_rank_bound(2, 0.25) == Catch::Approx(0.5 * ln2 + 2.0 * g(0.25)));
    CHECK(mi_energy_bound(ladder, 1.0, 0.0) == 0.0);
    CHECK(mi_classical_oscillator_bound(1.0, 0.2) == Catch::Approx(0.2 * g(5.0) + 2.0 * g(0.2)));
    SECTION("the separable envelope drops the factor two") {
        for (double eps : {0.05, 0.1, 0.3}) {
            for (double E : {0.5, 1.0, 2.0}) {
                CHECK(mi_classical_oscillator_bound(E, eps) < mi_energy_bound(ladder, E, eps));
            }
        }
    }
    SECTION("product states carry zero mutual information") {
        CounterRng rng(97);
        const DensityOperator a = random_density(3, rng);
        const DensityOperator b = random_density(3, rng);
        CHECK(mutual_information(kron(a.matrix(), b.matrix()), 3, 3) ==
              Catch::Approx(0.0).margin(1e-9));
    }
}

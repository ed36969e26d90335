// Tests for constrained sampling, campaign determinism, report serialization,
// the tightness sweep and the file-format loaders.

#include "qcb/campaign.hpp"
#include "qcb/io.hpp"
#include "qcb/rng.hpp"
#include "qcb/sampling.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>

using namespace qcb;

namespace {
const Spectrum ladder = Spectrum::arithmetic(1.0);
}

TEST_CASE("counter rng streams") {
    CounterRng a(42), b(42);
    CHECK(a.next_u64() == b.next_u64());
    CHECK(a.uniform() == b.uniform());
    CounterRng s1 = CounterRng(42).substream(1);
    CounterRng s2 = CounterRng(42).substream(2);
    CHECK(s1.next_u64() != s2.next_u64());
    // named substreams are stable
    CHECK(CounterRng(7).substream("sh-cb").next_u64() ==
          CounterRng(7).substream("sh-cb").next_u64());
}

TEST_CASE("commuting pair sampler") {
    CounterRng rng(131);
    SECTION("zero target keeps the states identical") {
        const CommutingPair pair =
            sample_commuting_pair(8, EnergyConstraint{ladder, 1.0}, 0.0, rng);
        CHECK(trace_distance(pair.rho, pair.sigma) == Catch::Approx(0.0).margin(1e-12));
    }
    SECTION("rank-one pairs are pure and equal") {
        const CommutingPair pair = sample_commuting_pair(8, RankConstraint{1}, 0.2, rng);
        CHECK(pair.rho.rank() == 1);
        CHECK(pair.sigma.rank() == 1);
        CHECK(von_neumann_entropy(pair.rho) == Catch::Approx(0.0).margin(1e-12));
        CHECK(trace_distance(pair.rho, pair.sigma) <= 0.2 + 1e-9);
    }
    SECTION("rank constraint survives the mixing") {
        for (int t = 0; t < 10; ++t) {
            const CommutingPair pair = sample_commuting_pair(12, RankConstraint{3}, 0.15, rng);
            CHECK(pair.rho.rank() <= 3);
            CHECK(pair.sigma.rank() <= 3);
            CHECK(trace_distance(pair.rho, pair.sigma) <= 0.15 + 1e-9);
        }
    }
    SECTION("energy constraint and exact steering at dim 64") {
        for (int t = 0; t < 5; ++t) {
            const CommutingPair pair =
                sample_commuting_pair(64, EnergyConstraint{ladder, 1.0}, 0.1, rng);
            double e_rho = 0.0, e_sigma = 0.0;
            for (Eigen::Index i = 0; i < 64; ++i) {
                e_rho += double(i) * pair.p(i);
                e_sigma += double(i) * pair.q(i);
            }
            CHECK(e_rho <= 1.0 + 1e-9);
            CHECK(e_sigma <= 1.0 + 1e-9);
            CHECK(trace_distance(pair.rho, pair.sigma) == Catch::Approx(0.1).margin(1e-9));
            // commuting by construction
            const Matrix comm = pair.rho.matrix() * pair.sigma.matrix() -
                                pair.sigma.matrix() * pair.rho.matrix();
            CHECK(comm.cwiseAbs().maxCoeff() < 1e-10);
        }
    }
    SECTION("infeasible constraints are rejected") {
        CHECK_THROWS_AS(sample_commuting_pair(4, RankConstraint{9}, 0.1, rng),
                        InfeasibleConstraintError);
    }
}

TEST_CASE("campaign configuration") {
    SECTION("rejects bad configs") {
        nlohmann::json j{{"trials", 0}, {"bounds", {"sh-cb"}}};
        CHECK_THROWS_AS(campaign_config_from_json(j), ConfigError);
        nlohmann::json missing{{"trials", 5}};
        CHECK_THROWS_AS(campaign_config_from_json(missing), ConfigError);
        nlohmann::json badeps{{"trials", 5},
                              {"bounds", {"sh-cb"}},
                              {"epsilon_grid", {0.2, 0.1}}};
        CHECK_THROWS_AS(campaign_config_from_json(badeps), ConfigError);
    }
    SECTION("parses constraints and overrides") {
        nlohmann::json j{
            {"seed", 7},
            {"trials", 3},
            {"dim", 16},
            {"constraint",
             {{"rank", 5},
              {"energy", {{"spec", {{"kind", "arithmetic"}, {"step", 2.0}}}, {"E", 1.5}}}}},
            {"epsilon_grid", {0.1, 0.2}},
            {"bounds", {"sh-cb"}},
            {"trial_overrides", {{"sh-cb", 2}}},
            {"output", {{"path", "x.json"}, {"format", "csv"}}}};
        const CampaignConfig cfg = campaign_config_from_json(j);
        CHECK(cfg.seed == 7);
        CHECK(cfg.rank == 5);
        CHECK(cfg.spec.step() == 2.0);
        CHECK(cfg.energy == 1.5);
        CHECK(cfg.format == "csv");
        CHECK(cfg.trial_overrides.at("sh-cb") == 2);
    }
    SECTION("unknown bound is rejected at run time") {
        CampaignConfig cfg;
        cfg.bounds = {"no-such-bound"};
        CHECK_THROWS_AS(run_campaign(cfg), ConfigError);
    }
}

TEST_CASE("campaign determinism and soundness") {
    CampaignConfig cfg;
    cfg.seed = 42;
    cfg.trials = 200;
    cfg.dim = 32;
    cfg.bounds = {"sh-cb"};
    const CampaignResult first = run_campaign(cfg);
    CHECK(first.reports.size() == 200);
    CHECK_FALSE(first.any_violation);
    for (const BoundReport& r : first.reports) CHECK(r.verdict == "holds");

    SECTION("identical seeds give byte-identical serializations") {
        const CampaignResult second = run_campaign(cfg);
        CHECK(serialize_reports(first.reports, "json") ==
              serialize_reports(second.reports, "json"));
        CHECK(serialize_reports(first.reports, "csv") ==
              serialize_reports(second.reports, "csv"));
    }
    SECTION("thread count does not change the reports") {
        CampaignConfig threaded = cfg;
        threaded.threads = 2;
        const CampaignResult parallel = run_campaign(threaded);
        CHECK(serialize_reports(first.reports, "json") ==
              serialize_reports(parallel.reports, "json"));
    }
    SECTION("different seeds differ") {
        CampaignConfig other = cfg;
        other.seed = 43;
        other.trials = 5;
        CampaignConfig base = cfg;
        base.trials = 5;
        CHECK(serialize_reports(run_campaign(other).reports, "json") !=
              serialize_reports(run_campaign(base).reports, "json"));
    }
}

TEST_CASE("every registered bound runs clean on a short campaign") {
    CampaignConfig cfg;
    cfg.seed = 11;
    cfg.trials = 12;
    cfg.dim = 16;
    cfg.support1 = 8;
    cfg.support2 = 8;
    cfg.component_dim = 6;
    cfg.osc_cutoff = 12;
    cfg.osc_amp = 0.5;
    cfg.bounds = {"sh-cb",  "w-cb-2",   "cor-3",    "mixed", "qce-qc", "qce-qc-1",
                  "qce-qc-2", "i-2-1", "i-2-2", "eq-1-cb", "eq-2-cb", "mi-c"};
    cfg.trial_overrides["mi-c"] = 4;
    const CampaignResult result = run_campaign(cfg);
    CHECK_FALSE(result.any_violation);
    CHECK(result.reports.size() == 11 * 12 + 4);
}

TEST_CASE("report serialization shapes") {
    BoundReport r;
    r.bound = "sh-cb";
    r.inputs = {{"eps", 0.1}, {"E", 1.0}};
    r.value = 1.25;
    r.partners = {{"bdj", 1.0}};
    r.verdict = "holds";
    r.lhs = 0.5;
    SECTION("json field names") {
        const nlohmann::json j = r.to_json();
        CHECK(j.contains("bound"));
        CHECK(j.contains("inputs"));
        CHECK(j.contains("value"));
        CHECK(j.contains("partners"));
        CHECK(j.contains("verdict"));
        CHECK(j.contains("lhs"));
        CHECK(j["inputs"]["eps"] == 0.1);
    }
    SECTION("csv row") {
        CHECK(reports_csv_header() == "bound,verdict,lhs,value,inputs,partners");
        const std::string row = report_csv_row(r);
        CHECK(row.find("sh-cb,holds,0.5,1.25,") == 0);
        CHECK(row.find("eps=0.1") != std::string::npos);
    }
}

TEST_CASE("tightness sweep") {
    const std::vector<double> e_grid{0.5, 1.0, 2.0, 4.0};
    const std::vector<double> eps_grid{0.05, 0.1, 0.2, 0.4};
    const auto rows = tightness_sweep(ladder, e_grid, eps_grid);
    REQUIRE(rows.size() == 16);
    SECTION("BDJ equals the published gap at E = 1") {
        const auto rows1 = tightness_sweep(ladder, {1.0}, {0.25});
        REQUIRE(rows1.size() == 1);
        CHECK(rows1[0].sh_cb - rows1[0].bdj ==
              Catch::Approx(2.0 * (g(0.25) - binary_entropy(0.25))).margin(1e-9));
    }
    SECTION("gap exceeds the leading term everywhere") {
        for (const TightnessRow& row : rows) {
            const double leading = row.eps * g(row.E / row.eps);
            CHECK(row.gap > leading);
            CHECK(row.ratio > leading / row.sh_cb - 1e-12);
            CHECK(row.ratio <= 1.0 + 1e-12);
        }
    }
    SECTION("bounds shrink monotonically with eps") {
        for (std::size_t e = 0; e < e_grid.size(); ++e) {
            for (std::size_t i = 1; i < eps_grid.size(); ++i) {
                const TightnessRow& lo = rows[e * eps_grid.size() + i - 1];
                const TightnessRow& hi = rows[e * eps_grid.size() + i];
                CHECK(lo.sh_cb < hi.sh_cb);
                CHECK(lo.w_cb_1 < hi.w_cb_1);
                CHECK(lo.gap < hi.gap);
            }
        }
    }
    SECTION("csv serialization leaves BDJ blank when not applicable") {
        const auto narrow = tightness_sweep(ladder, {0.5}, {0.4});
        REQUIRE(std::isnan(narrow[0].bdj)); // 0.4 > E/(E+1) = 1/3
        const std::string csv = serialize_tightness(narrow, "csv");
        CHECK(csv.find(",,") != std::string::npos);
    }
}

TEST_CASE("file format loaders") {
    SECTION("spectrum") {
        const Spectrum arith =
            spectrum_from_json(nlohmann::json{{"kind", "arithmetic"}, {"step", 0.5}});
        CHECK(arith.is_arithmetic());
        CHECK(arith.step() == 0.5);
        const Spectrum expl = spectrum_from_json(
            nlohmann::json{{"kind", "explicit"}, {"values", {0.0, 1.0, 4.0}}});
        CHECK(expl.is_finite());
        CHECK(expl.energy(2) == 4.0);
        CHECK_THROWS_AS(spectrum_from_json(nlohmann::json{{"kind", "weird"}}), ConfigError);
        const Spectrum back = spectrum_from_json(spectrum_to_json(expl));
        CHECK(back.values() == expl.values());
    }
    SECTION("ensemble with named constructors") {
        const nlohmann::json j{
            {"dim", 12},
            {"labels", {"a", "b"}},
            {"weights", {0.25, 0.75}},
            {"states", {"fock:0", "coherent:0.4,-0.2"}}};
        const QcEnsemble ens = ensemble_from_json(j);
        CHECK(ens.labels.size() == 2);
        CHECK(ens.states[0](0, 0).real() == Catch::Approx(1.0));
        CHECK(std::abs(ens.states[1].trace()) == Catch::Approx(1.0).margin(1e-12));
        const DensityOperator avg = ens.assemble();
        CHECK(avg.dim() == 12);
    }
    SECTION("ensemble with an explicit matrix") {
        const nlohmann::json j{
            {"labels", {"x"}},
            {"weights", {1.0}},
            {"states",
             {nlohmann::json::array({nlohmann::json::array({nlohmann::json::array({0.5, 0.0}),
                                                            nlohmann::json::array({0.0, 0.0})}),
                                     nlohmann::json::array({nlohmann::json::array({0.0, 0.0}),
                                                            nlohmann::json::array({0.5, 0.0})})})}}};
        const QcEnsemble ens = ensemble_from_json(j);
        CHECK(ens.states[0](1, 1).real() == Catch::Approx(0.5));
    }
    SECTION("distribution") {
        const nlohmann::json j{{"arity", 2},
                               {"entries", {{0, 0, 0.5}, {1, 1, 0.5}}}};
        const JointDistribution d = distribution_from_json(j);
        CHECK(d.entries.size() == 2);
        CHECK(equivocation(d) == Catch::Approx(0.0).margin(1e-12));
        CHECK_THROWS_AS(
            distribution_from_json(nlohmann::json{{"arity", 2}, {"entries", {{0, 0.5}}}}),
            ConfigError);
    }
}

// qcb_main.cpp — Command-line surface: single bound evaluation, seeded
// verification campaigns, tightness sweeps and the Gibbs solver.
// Exit codes: 0 clean, 1 violation found, 2 usage/config error.

#include "qcb/bounds.hpp"
#include "qcb/campaign.hpp"
#include "qcb/classical.hpp"
#include "qcb/hamiltonians.hpp"
#include "qcb/io.hpp"
#include "qcb/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace {

using qcb::Spectrum;

struct BoundParams {
    std::map<std::string, double> kv;
    std::optional<Spectrum> spec;

    double get(const std::string& key) const {
        const auto it = kv.find(key);
        if (it == kv.end()) throw qcb::ConfigError("missing parameter '" + key + "'");
        return it->second;
    }

    double get_or(const std::string& key, double fallback) const {
        const auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second;
    }

    const Spectrum& spectrum() const {
        if (!spec) throw qcb::ConfigError("this bound needs --spec <file>");
        return *spec;
    }
};

std::vector<double> parse_grid(const std::string& csv) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t next = csv.find(',', pos);
        if (next == std::string::npos) next = csv.size();
        out.push_back(std::stod(csv.substr(pos, next - pos)));
        pos = next + 1;
    }
    if (out.empty()) throw qcb::ConfigError("empty grid");
    return out;
}

qcb::BoundReport evaluate_named_bound(const std::string& name, const BoundParams& p) {
    using qcb::LaaClassParams;
    qcb::BoundReport r;
    r.bound = name;
    const double eps = p.get("eps");
    r.inputs.push_back({"eps", eps});
    auto in = [&](const std::string& key, double v) { r.inputs.push_back({key, v}); };

    if (name == "aud") {
        const int d = static_cast<int>(p.get("d"));
        in("d", d);
        r.value = qcb::audenaert_bound(d, eps);
    } else if (name == "w-cb-1") {
        const double E = p.get("E");
        in("E", E);
        r.value = qcb::winter_energy_bound(p.spectrum(), E, eps);
    } else if (name == "bdj") {
        const double E = p.get("E");
        in("E", E);
        r.value = qcb::bdj_bound(E, eps);
    } else if (name == "sh-cb") {
        const double E = p.get("E");
        in("E", E);
        r.value = qcb::entropy_energy_bound(p.spectrum(), E, eps);
    } else if (name == "rank") {
        const int rank = static_cast<int>(p.get("rank"));
        in("rank", rank);
        r.value = qcb::rank_entropy_bound(rank, eps);
    } else if (name == "mixed") {
        const int d = static_cast<int>(p.get("d"));
        const double E = p.get("E");
        in("d", d);
        in("E", E);
        const qcb::TwoSidedBound b = qcb::mixed_bound(d, p.spectrum(), E, eps);
        r.value = b.upper;
        r.partners.push_back({"lower", b.lower});
    } else if (name == "cor-3") {
        const double e_rho = p.get("E_rho");
        const double e_sigma = p.get("E_sigma");
        in("E_rho", e_rho);
        in("E_sigma", e_sigma);
        const qcb::TwoSidedBound b = qcb::two_sided_energy_bound(p.spectrum(), e_rho, e_sigma, eps);
        r.value = b.upper;
        r.partners.push_back({"lower", b.lower});
    } else if (name == "qce-rank") {
        const int rank = static_cast<int>(p.get("rank"));
        in("rank", rank);
        r.value = qcb::qce_rank_bound(rank, eps);
    } else if (name == "qce-energy") {
        const double E = p.get("E");
        in("E", E);
        r.value = qcb::qce_energy_bound(p.spectrum(), E, eps);
    } else if (name == "eof-rank") {
        const int rank = static_cast<int>(p.get("rank"));
        in("rank", rank);
        r.value = qcb::eof_rank_bound(rank, eps);
    } else if (name == "eof-energy") {
        const double E = p.get("E");
        in("E", E);
        r.value = qcb::eof_energy_bound(p.spectrum(), E, eps);
    } else if (name == "mi-rank") {
        const int rank = static_cast<int>(p.get("rank"));
        in("rank", rank);
        r.value = qcb::mi_rank_bound(rank, eps);
    } else if (name == "mi-energy") {
        const double E = p.get("E");
        in("E", E);
        r.value = qcb::mi_energy_bound(p.spectrum(), E, eps);
    } else if (name == "mi-c") {
        const double E = p.get("E");
        in("E", E);
        r.value = qcb::classical_mi_bound(E, eps);
    } else if (name == "afw-rank") {
        const double C = p.get("C");
        const double D = p.get("D");
        const int d = static_cast<int>(p.get("d"));
        in("C", C);
        in("D", D);
        in("d", d);
        r.value = qcb::afw_rank_bound(LaaClassParams::make(C, D), static_cast<std::size_t>(d), eps);
    } else if (name == "afw-energy") {
        const double C = p.get("C");
        const double D = p.get("D");
        const double E = p.get("E");
        const int m = static_cast<int>(p.get_or("m", 1));
        in("C", C);
        in("D", D);
        in("E", E);
        in("m", m);
        const std::vector<Spectrum> specs(static_cast<std::size_t>(m), p.spectrum());
        r.value = qcb::afw_energy_bound(LaaClassParams::make(C, D, m, m), specs, E, eps);
    } else if (name == "eq-1-cb" || name == "my-cb") {
        const int d = static_cast<int>(p.get("d"));
        in("d", d);
        r.value = qcb::classical_rank_bound(LaaClassParams::make(1, 1, 1, 2),
                                            static_cast<std::size_t>(d), eps);
    } else if (name == "eq-2-cb") {
        const double E = p.get("E");
        in("E", E);
        r.value = qcb::classical_energy_bound(LaaClassParams::make(1, 1, 1, 2),
                                              Spectrum::arithmetic(1.0), E, eps);
    } else if (name == "opt-cb") {
        const int n = static_cast<int>(p.get("n"));
        in("n", n);
        r.value = qcb::alhejji_smith_bound(n, eps);
    } else {
        throw qcb::ConfigError("unknown bound '" + name + "'");
    }
    return r;
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        qcb::write_text_file(out_path, text);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qcb — entropy continuity bound toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // let --format/--out appear after the subcommand too

    std::string format = "json";
    std::string out_path;
    app.add_option("--format", format, "Output format (csv or json)")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", out_path, "Output file (default: stdout)");

    // bound eval
    auto* bound_cmd = app.add_subcommand("bound", "Evaluate a named bound");
    auto* eval_cmd = bound_cmd->add_subcommand("eval", "Evaluate a closed-form bound value");
    std::string bound_name;
    std::vector<std::string> raw_params;
    std::string bound_spec_path;
    eval_cmd->add_option("--name", bound_name, "Bound name")->required();
    eval_cmd->add_option("--params", raw_params, "key=value parameters");
    eval_cmd->add_option("--spec", bound_spec_path, "Spectrum definition file (JSON)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Run a seeded verification campaign");
    std::string config_path;
    std::optional<std::uint64_t> seed_override;
    std::optional<int> trials_override;
    std::optional<int> threads_override;
    verify_cmd->add_option("--config", config_path, "Campaign config (JSON)")->required();
    verify_cmd->add_option("--seed", seed_override, "Override the config seed");
    verify_cmd->add_option("--trials", trials_override, "Override the per-bound trial count");
    verify_cmd->add_option("--threads", threads_override, "Worker threads");

    // tightness
    auto* tight_cmd = app.add_subcommand("tightness", "Extremal-gap sweep against the bound grid");
    std::string tight_spec_path, e_grid_csv, eps_grid_csv;
    tight_cmd->add_option("--spec", tight_spec_path, "Spectrum definition file (JSON)")->required();
    tight_cmd->add_option("--E", e_grid_csv, "Comma-separated energy grid")->required();
    tight_cmd->add_option("--eps", eps_grid_csv, "Comma-separated epsilon grid")->required();

    // gibbs
    auto* gibbs_cmd = app.add_subcommand("gibbs", "Solve the Gibbs state at a mean energy");
    std::string gibbs_spec_path;
    double gibbs_energy = 1.0;
    double gibbs_tol = 1e-12;
    gibbs_cmd->add_option("--spec", gibbs_spec_path, "Spectrum definition file (JSON)")->required();
    gibbs_cmd->add_option("--E", gibbs_energy, "Mean energy")->required();
    gibbs_cmd->add_option("--tol", gibbs_tol, "Mean-energy residual tolerance");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (eval_cmd->parsed()) {
            BoundParams params;
            for (const std::string& kv : raw_params) {
                const std::size_t eq = kv.find('=');
                if (eq == std::string::npos) {
                    throw qcb::ConfigError("parameter '" + kv + "' is not key=value");
                }
                params.kv[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
            }
            if (!bound_spec_path.empty()) {
                params.spec = qcb::spectrum_from_json(qcb::load_json_file(bound_spec_path));
            }
            const qcb::BoundReport report = evaluate_named_bound(bound_name, params);
            emit(qcb::serialize_reports({report}, format), out_path);
            return 0;
        }
        if (verify_cmd->parsed()) {
            qcb::CampaignConfig cfg = qcb::campaign_config_from_json(qcb::load_json_file(config_path));
            if (seed_override) cfg.seed = *seed_override;
            if (trials_override) cfg.trials = *trials_override;
            if (threads_override) cfg.threads = *threads_override;
            if (!out_path.empty()) cfg.output = out_path;
            cfg.format = app.count("--format") ? format : cfg.format;
            const qcb::CampaignResult result = qcb::run_campaign(cfg);
            emit(qcb::serialize_reports(result.reports, cfg.format), cfg.output);
            return result.any_violation ? 1 : 0;
        }
        if (tight_cmd->parsed()) {
            const Spectrum spec = qcb::spectrum_from_json(qcb::load_json_file(tight_spec_path));
            const auto rows =
                qcb::tightness_sweep(spec, parse_grid(e_grid_csv), parse_grid(eps_grid_csv));
            emit(qcb::serialize_tightness(rows, format), out_path);
            return 0;
        }
        if (gibbs_cmd->parsed()) {
            const Spectrum spec = qcb::spectrum_from_json(qcb::load_json_file(gibbs_spec_path));
            const qcb::GibbsSolution sol = qcb::solve_beta(spec, gibbs_energy, gibbs_tol);
            double residual = 0.0;
            for (Eigen::Index i = 0; i < sol.probabilities.size(); ++i) {
                residual += spec.energy(static_cast<std::size_t>(i)) * sol.probabilities(i);
            }
            residual = std::abs(residual - gibbs_energy);
            nlohmann::json j{{"E", sol.energy},
                             {"beta", sol.beta},
                             {"F", sol.entropy},
                             {"N", sol.truncation},
                             {"residual", residual},
                             {"tail_bound", sol.tail_bound}};
            if (format == "csv") {
                emit("E,beta,F,N,residual,tail_bound\n" + qcb::detail::format_double(sol.energy) +
                         "," + qcb::detail::format_double(sol.beta) + "," +
                         qcb::detail::format_double(sol.entropy) + "," +
                         std::to_string(sol.truncation) + "," +
                         qcb::detail::format_double(residual) + "," +
                         qcb::detail::format_double(sol.tail_bound) + "\n",
                     out_path);
            } else {
                emit(j.dump(2) + "\n", out_path);
            }
            return 0;
        }
    } catch (const qcb::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

// Command-line front end: simulate, fit, detect, test-existence, montecarlo
// and report subcommands over the library. Exit codes: 0 success, 1 input or
// validation error, 2 numerical failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "oucp/changepoint.hpp"
#include "oucp/errors.hpp"
#include "oucp/existence.hpp"
#include "oucp/io.hpp"
#include "oucp/montecarlo.hpp"
#include "oucp/scenario.hpp"
#include "oucp/simulate.hpp"

using namespace oucp;

namespace {

void write_text(const std::string& out, const std::string& content) {
    if (out.empty() || out == "-") {
        std::cout << content << "\n";
        return;
    }
    std::ofstream f(out);
    if (!f) throw std::invalid_argument("cannot open output file: " + out);
    f << content << "\n";
}

struct CommonOpts {
    std::string basis_name = "constant";
    double dt = 1.0 / 252.0;
    bool dt_given = false;
    double min_frac = 0.05;
    std::string penalty = "p1-logTdt";
    std::string sigma_method = "realized";
    std::uint64_t seed = 42;
};

// Loads a series, applying the optional log transform. The cosine preset's
// period is tied to the grid, so the basis uses the file's inferred dt
// unless --dt was given explicitly.
struct LoadedSeries {
    SeriesFile series;
    BasisSet basis;
};

LoadedSeries load_series(const std::string& csv, std::optional<double> T, bool log_transform_flag,
                         const CommonOpts& common) {
    SeriesFile series = load_csv(csv, T);
    if (log_transform_flag) series.path = log_transform(series.path);
    const double basis_dt = common.dt_given ? common.dt : series.path.dt;
    return {std::move(series), make_preset_basis(common.basis_name, basis_dt)};
}

double pick_sigma(const SamplePath& path, const BasisSet& basis, const std::string& method) {
    if (method == "realized") return estimate_sigma(path);
    if (method == "residual") return estimate_sigma_residual(path, basis);
    throw std::invalid_argument("unknown sigma method '" + method +
                                "' (expected realized or residual)");
}

void add_common(CLI::App* sub, CommonOpts& common, bool with_penalty = false) {
    sub->add_option("--basis", common.basis_name, "basis preset: constant or cosine")
        ->check(CLI::IsMember({"constant", "cosine"}));
    sub->add_option("--dt", common.dt, "grid step (cosine basis period is 4*dt)")
        ->check(CLI::PositiveNumber)
        ->each([&common](const std::string&) { common.dt_given = true; });
    sub->add_option("--min-frac", common.min_frac,
                    "minimum segment fraction per side of a candidate break; each side also "
                    "keeps at least p+2 grid steps so segment statistics stay invertible")
        ->check(CLI::Range(1e-6, 0.499));
    sub->add_option("--sigma-method", common.sigma_method, "diffusion estimator")
        ->check(CLI::IsMember({"realized", "residual"}));
    if (with_penalty)
        sub->add_option("--penalty", common.penalty, "IC penalty variant")
            ->check(CLI::IsMember({"p1-logT", "p2-logT", "p1-logTdt", "p2-logTdt"}));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structural-break estimation for mean-reverting (generalized OU) processes"};
    app.require_subcommand(1);

    CommonOpts common;

    // simulate
    auto* sim = app.add_subcommand("simulate", "simulate a scenario path to CSV");
    int sim_scenario = 1;
    bool sim_break = true;
    double sim_T = 5.0, sim_x0 = 0.05;
    std::string sim_out;
    sim->add_option("--scenario", sim_scenario, "1 = classical, 2 = periodic")
        ->check(CLI::IsMember({1, 2}));
    sim->add_flag("--break,!--no-break", sim_break, "include the s0=0.5 drift break");
    sim->add_option("--T", sim_T, "horizon in years")->check(CLI::PositiveNumber);
    sim->add_option("--dt", common.dt, "grid step")->check(CLI::PositiveNumber);
    sim->add_option("--x0", sim_x0, "starting value");
    sim->add_option("--seed", common.seed, "RNG seed");
    sim->add_option("--out", sim_out, "output CSV (t,x)")->required();
    sim->callback([&] {
        const SegmentedModel model = scenario_model(sim_scenario, sim_break);
        const BasisSet basis = scenario_basis(sim_scenario, common.dt);
        const SamplePath path = simulate_euler(model, basis, sim_T, common.dt, sim_x0, common.seed);
        write_path_csv(sim_out, path);
    });

    // fit
    auto* fit = app.add_subcommand("fit", "single-regime drift MLE and diffusion estimate");
    std::string fit_csv, fit_out;
    std::optional<double> fit_T;
    std::vector<int> fit_segment;
    fit->add_option("--csv", fit_csv, "input CSV (t,x or date,price)")->required();
    fit->add_option("--T", fit_T, "declared horizon (required for date files)");
    fit->add_option("--segment", fit_segment, "step-index range lo,hi (default full path)")
        ->delimiter(',')
        ->expected(2);
    fit->add_option("--out", fit_out, "output JSON (default stdout)");
    add_common(fit, common);
    fit->callback([&] {
        const LoadedSeries in = load_series(fit_csv, fit_T, false, common);
        const int n = in.series.path.steps();
        int lo = 0, hi = n;
        if (!fit_segment.empty()) {
            lo = fit_segment[0];
            hi = fit_segment[1];
        }
        const SegmentFit f = fit_mle(in.series.path, in.basis, lo, hi);
        const double sigma = pick_sigma(in.series.path, in.basis, common.sigma_method);
        nlohmann::json j{{"mu", f.theta.mu},
                         {"a", f.theta.a},
                         {"sigma", sigma},
                         {"loglik", f.loglik(sigma)},
                         {"segment", {{"lo", lo}, {"hi", hi}}},
                         {"cond", f.cond}};
        // Plug-in asymptotic covariance sigma^2 Q^{-1}, diagnostic only.
        const QuadStats stats = compute_stats(in.series.path, in.basis, lo, hi);
        const Eigen::MatrixXd cov =
            sigma * sigma *
            stats.Q.ldlt().solve(Eigen::MatrixXd::Identity(stats.Q.rows(), stats.Q.cols()));
        std::vector<std::vector<double>> cov_rows;
        for (Eigen::Index r = 0; r < cov.rows(); ++r)
            cov_rows.emplace_back(cov.row(r).begin(), cov.row(r).end());
        j["theta_cov"] = cov_rows;
        write_text(fit_out, j.dump(2));
    });

    // detect
    auto* det = app.add_subcommand("detect", "locate the break by LSSE and/or MLL scan");
    std::string det_csv, det_out, det_method = "both", det_profile;
    std::optional<double> det_T;
    bool det_log = false;
    det->add_option("--csv", det_csv, "input CSV")->required();
    det->add_option("--T", det_T, "declared horizon");
    det->add_option("--method", det_method, "lsse, mll or both")
        ->check(CLI::IsMember({"lsse", "mll", "both"}));
    det->add_flag("--log-transform", det_log, "analyze the log of the series");
    det->add_option("--out", det_out, "output JSON (default stdout)");
    det->add_option("--profile-csv", det_profile, "dump (index,t,objective) rows");
    add_common(det, common);
    det->callback([&] {
        const LoadedSeries in = load_series(det_csv, det_T, det_log, common);
        const PathStats stats(in.series.path, in.basis);
        const double sigma = pick_sigma(in.series.path, in.basis, common.sigma_method);
        std::optional<ChangePointFit> lsse, mll;
        if (det_method != "mll") lsse = scan_lsse(stats, common.min_frac);
        if (det_method != "lsse") mll = scan_mll(stats, sigma, common.min_frac);

        nlohmann::json j{{"method", det_method}, {"sigma", sigma}, {"log_transform", det_log}};
        const auto attach = [&](const char* key, const ChangePointFit& f) {
            j[key] = to_json(f, true);
            if (const std::string* date = in.series.date_at(f.tau_index))
                j[key]["date_at_tau"] = *date;
        };
        if (lsse) attach("lsse", *lsse);
        if (mll) attach("mll", *mll);
        write_text(det_out, j.dump(2));

        if (!det_profile.empty()) {
            std::ofstream pf(det_profile);
            if (!pf) throw std::invalid_argument("cannot open profile file: " + det_profile);
            pf << "index,t";
            if (lsse) pf << ",sse";
            if (mll) pf << ",mll";
            pf << "\n";
            const ChangePointFit& any = lsse ? *lsse : *mll;
            for (int i = any.window_lo; i <= any.window_hi; ++i) {
                pf << i << ',' << format_double(in.series.path.time_at(i));
                if (lsse) pf << ',' << format_double(lsse->objective_at(i));
                if (mll) pf << ',' << format_double(mll->objective_at(i));
                pf << "\n";
            }
        }
    });

    // test-existence
    auto* tex = app.add_subcommand("test-existence", "Schwarz-type test for a break");
    std::string tex_csv, tex_out;
    std::optional<double> tex_T;
    bool tex_log = false;
    tex->add_option("--csv", tex_csv, "input CSV")->required();
    tex->add_option("--T", tex_T, "declared horizon");
    tex->add_flag("--log-transform", tex_log, "analyze the log of the series");
    tex->add_option("--out", tex_out, "output JSON (default stdout)");
    add_common(tex, common, /*with_penalty=*/true);
    tex->callback([&] {
        const LoadedSeries in = load_series(tex_csv, tex_T, tex_log, common);
        const Penalty penalty = Penalty::parse(common.penalty);
        const double sigma = pick_sigma(in.series.path, in.basis, common.sigma_method);
        const ICResult res =
            ic_test_known_sigma(in.series.path, in.basis, penalty, sigma, common.min_frac);
        nlohmann::json j = to_json(res);
        if (const std::string* date = in.series.date_at(res.fit1.tau_index))
            j["date_at_tau"] = *date;
        write_text(tex_out, j.dump(2));
    });

    // montecarlo
    auto* mc = app.add_subcommand("montecarlo", "reproduce the simulation study");
    int mc_scenario = 1, mc_iters = 200, mc_threads = 1;
    bool mc_break = true, mc_known_sigma = false, mc_records = false;
    std::vector<double> mc_T{5.0};
    std::string mc_out, mc_format = "json", mc_penalty = "all";
    mc->add_option("--scenario", mc_scenario, "1 = classical, 2 = periodic")
        ->check(CLI::IsMember({1, 2}));
    mc->add_flag("--break,!--no-break", mc_break, "break vs no-break data generating process");
    mc->add_option("--T", mc_T, "horizon(s), one summary row per value")->expected(-1);
    mc->add_option("--dt", common.dt, "grid step")->check(CLI::PositiveNumber);
    mc->add_option("--iters", mc_iters, "iterations (200 desk scale, 1000 full)")
        ->check(CLI::PositiveNumber);
    mc->add_option("--seed", common.seed, "master seed");
    mc->add_option("--penalty", mc_penalty,
                   "penalty echoed as selected; summaries always report all four")
        ->check(CLI::IsMember({"all", "p1-logT", "p2-logT", "p1-logTdt", "p2-logTdt"}));
    mc->add_option("--threads", mc_threads, "worker threads")->check(CLI::PositiveNumber);
    mc->add_flag("--known-sigma", mc_known_sigma, "use the true sigma instead of estimating it");
    mc->add_flag("--records", mc_records, "include per-iteration records in JSON output");
    mc->add_option("--format", mc_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    mc->add_option("--out", mc_out, "output file (default stdout)");
    mc->add_option("--min-frac", common.min_frac)->check(CLI::Range(1e-6, 0.499));
    mc->callback([&] {
        std::vector<MCSummary> summaries;
        for (double T : mc_T) {
            ScenarioConfig cfg;
            cfg.scenario = mc_scenario;
            cfg.with_break = mc_break;
            cfg.T = T;
            cfg.dt = common.dt;
            cfg.iterations = mc_iters;
            cfg.master_seed = common.seed;
            cfg.min_frac = common.min_frac;
            cfg.known_sigma = mc_known_sigma;
            if (mc_penalty != "all") cfg.penalty = Penalty::parse(mc_penalty);
            summaries.push_back(run_scenario(cfg, mc_threads));
        }
        if (mc_format == "csv") {
            std::string text = mc_summary_csv_header();
            for (const auto& s : summaries) text += "\n" + mc_summary_csv_row(s);
            write_text(mc_out, text);
        } else {
            nlohmann::json j = nlohmann::json::array();
            for (const auto& s : summaries) j.push_back(to_json(s, mc_records));
            write_text(mc_out, j.dump(2));
        }
    });

    // report
    auto* rep = app.add_subcommand(
        "report", "full analysis document: both methods under all four penalties");
    std::string rep_csv, rep_out;
    std::optional<double> rep_T;
    bool rep_log = false;
    rep->add_option("--csv", rep_csv, "input CSV")->required();
    rep->add_option("--T", rep_T, "declared horizon");
    rep->add_flag("--log-transform", rep_log, "analyze the log of the series");
    rep->add_option("--out", rep_out, "output JSON (default stdout)");
    add_common(rep, common);
    rep->callback([&] {
        const LoadedSeries in = load_series(rep_csv, rep_T, rep_log, common);
        const PathStats stats(in.series.path, in.basis);
        const double sigma = pick_sigma(in.series.path, in.basis, common.sigma_method);
        const ChangePointFit lsse = scan_lsse(stats, common.min_frac);
        std::vector<nlohmann::json> analyses;
        for (const Penalty& penalty : Penalty::all()) {
            const ICResult ic =
                ic_test_known_sigma(in.series.path, in.basis, penalty, sigma, common.min_frac);
            analyses.push_back(report_analysis("lsse", lsse, ic, &in.series));
            analyses.push_back(report_analysis("mll", ic.fit1, ic, &in.series));
        }
        write_text(rep_out, build_report(analyses).dump(2));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

#include "oucp/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace oucp {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_number(const std::string& cell, int line) {
    const std::string t = trim(cell);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size())
        throw std::invalid_argument("non-numeric cell '" + cell + "' at line " + std::to_string(line));
    return value;
}

}  // namespace

SeriesFile load_csv(const std::string& filename, std::optional<double> T) {
    std::ifstream in(filename);
    if (!in) throw std::invalid_argument("cannot open file: " + filename);

    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument(filename + ": empty file");
    std::string header = trim(line);
    if (!header.empty() && header.back() == '\r') header.pop_back();

    bool has_dates = false;
    if (header == "t,x") {
        has_dates = false;
    } else if (header == "date,price") {
        has_dates = true;
    } else {
        throw std::invalid_argument(filename + ": header must be 't,x' or 'date,price', got '" +
                                    header + "'");
    }

    SeriesFile series;
    series.has_dates = has_dates;
    std::vector<double> times;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string row = trim(line);
        if (row.empty()) continue;
        const auto comma = row.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument(filename + ": missing comma at line " + std::to_string(lineno));
        const std::string first = trim(row.substr(0, comma));
        const std::string second = row.substr(comma + 1);
        if (has_dates) {
            if (first.empty())
                throw std::invalid_argument(filename + ": empty date at line " + std::to_string(lineno));
            if (!series.dates.empty() && !(series.dates.back() < first))
                throw std::invalid_argument(filename + ": dates not strictly increasing at line " +
                                            std::to_string(lineno));
            series.dates.push_back(first);
        } else {
            times.push_back(parse_number(first, lineno));
        }
        series.path.values.push_back(parse_number(second, lineno));
    }
    const int rows = static_cast<int>(series.path.values.size());
    if (rows < 3) throw std::invalid_argument(filename + ": fewer than 3 data rows");
    const int n = rows - 1;

    if (!has_dates) {
        for (int i = 0; i < n; ++i)
            if (!(times[static_cast<std::size_t>(i) + 1] > times[static_cast<std::size_t>(i)]))
                throw std::invalid_argument(filename + ": timestamps not strictly increasing at line " +
                                            std::to_string(i + 3));
        const double span = times[static_cast<std::size_t>(n)] - times[0];
        const double mean_step = span / n;
        for (int i = 0; i < n; ++i) {
            const double step = times[static_cast<std::size_t>(i) + 1] - times[static_cast<std::size_t>(i)];
            if (std::abs(step - mean_step) > 1e-9 * std::max(std::abs(mean_step), 1.0))
                throw std::invalid_argument(filename + ": non-uniform spacing at line " +
                                            std::to_string(i + 3));
        }
        if (!T) T = span;
    }
    if (!T)
        throw std::invalid_argument(filename + ": a horizon T must be declared for date-indexed files");
    if (!(*T > 0.0) || !std::isfinite(*T))
        throw std::invalid_argument(filename + ": horizon T must be finite and > 0");

    // Trading-day index convention: n+1 rows span [0, T] uniformly.
    series.path.t0 = 0.0;
    series.path.dt = *T / n;
    series.path.validate();
    return series;
}

SamplePath log_transform(const SamplePath& path) {
    SamplePath out = path;
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        if (!(out.values[i] > 0.0))
            throw std::invalid_argument("log transform requires positive values; value " +
                                        format_double(out.values[i]) + " at row " +
                                        std::to_string(i + 2) + " (data index " + std::to_string(i) +
                                        ")");
        out.values[i] = std::log(out.values[i]);
    }
    return out;
}

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

void write_path_csv(const std::string& filename, const SamplePath& path,
                    const std::vector<std::string>& dates) {
    std::ofstream out(filename);
    if (!out) throw std::invalid_argument("cannot open file for writing: " + filename);
    const bool with_dates = !dates.empty();
    if (with_dates && dates.size() != path.values.size())
        throw std::invalid_argument("write_path_csv: dates/values size mismatch");
    out << (with_dates ? "date,price\n" : "t,x\n");
    for (std::size_t i = 0; i < path.values.size(); ++i) {
        if (with_dates)
            out << dates[i];
        else
            out << format_double(path.time_at(static_cast<int>(i)));
        out << ',' << format_double(path.values[i]) << '\n';
    }
    if (!out) throw std::invalid_argument("write failed: " + filename);
}

nlohmann::json to_json(const DriftParams& theta) {
    return nlohmann::json{{"mu", theta.mu}, {"a", theta.a}};
}

nlohmann::json to_json(const SegmentFit& fit) {
    return nlohmann::json{{"theta", to_json(fit.theta)},
                          {"i_lo", fit.i_lo},
                          {"i_hi", fit.i_hi},
                          {"cond", fit.cond},
                          {"min_eigenvalue", fit.min_eigenvalue},
                          {"loglik_part", fit.loglik_part}};
}

nlohmann::json to_json(const ChangePointFit& fit, bool include_profile) {
    nlohmann::json j{{"method", to_string(fit.method)},
                     {"tau_index", fit.tau_index},
                     {"tau_time", fit.tau_time},
                     {"s_hat", fit.s_hat},
                     {"theta1", to_json(fit.theta1)},
                     {"theta2", to_json(fit.theta2)},
                     {"objective_at_opt", fit.objective_at_opt},
                     {"window", {{"lo", fit.window_lo}, {"hi", fit.window_hi}}},
                     {"skipped", fit.skipped}};
    if (include_profile) j["objective_profile"] = fit.objective;
    return j;
}

nlohmann::json to_json(const ICResult& result) {
    return nlohmann::json{{"ic0", result.ic0},
                          {"ic1", result.ic1},
                          {"m_hat", result.m_hat},
                          {"loglik0", result.loglik0},
                          {"loglik1", result.loglik1},
                          {"sigma", result.sigma},
                          {"penalty", result.penalty.name()},
                          {"tau_hat", result.fit1.tau_time},
                          {"s_hat", result.fit1.s_hat},
                          {"window", {{"lo", result.window_lo}, {"hi", result.window_hi}}}};
}

nlohmann::json report_analysis(const std::string& method, const ChangePointFit& cp,
                               const ICResult& ic, const SeriesFile* source) {
    nlohmann::json j{{"method", method},
                     {"tau_index", cp.tau_index},
                     {"tau_time", cp.tau_time},
                     {"s_hat", cp.s_hat},
                     {"theta1", to_json(cp.theta1)},
                     {"theta2", to_json(cp.theta2)},
                     {"sigma", ic.sigma},
                     {"loglik0", ic.loglik0},
                     {"loglik1", ic.loglik1},
                     {"ic0", ic.ic0},
                     {"ic1", ic.ic1},
                     {"m_hat", ic.m_hat},
                     {"penalty", ic.penalty.name()},
                     {"window", {{"lo", cp.window_lo}, {"hi", cp.window_hi}}}};
    if (source != nullptr) {
        if (const std::string* date = source->date_at(cp.tau_index)) j["date_at_tau"] = *date;
    }
    return j;
}

nlohmann::json build_report(const std::vector<nlohmann::json>& analyses) {
    if (analyses.empty()) throw std::invalid_argument("build_report: no completed analyses");
    return nlohmann::json{{"analyses", analyses}};
}

nlohmann::json to_json(const MCSummary& summary, bool include_records) {
    const auto& cfg = summary.config;
    nlohmann::json j{{"config",
                      {{"scenario", cfg.scenario},
                       {"with_break", cfg.with_break},
                       {"T", cfg.T},
                       {"dt", cfg.dt},
                       {"x0", cfg.x0},
                       {"s0", cfg.s0},
                       {"iterations", cfg.iterations},
                       {"master_seed", cfg.master_seed},
                       {"min_frac", cfg.min_frac},
                       {"penalty", cfg.penalty.name()},
                       {"known_sigma", cfg.known_sigma}}},
                     {"completed", summary.completed},
                     {"failures", summary.failures},
                     {"mean_s_lsse", summary.mean_s_lsse},
                     {"mean_s_mll", summary.mean_s_mll}};
    if (cfg.with_break) {
        j["mse_s_lsse"] = summary.mse_s_lsse;
        j["mse_s_mll"] = summary.mse_s_mll;
    }
    const auto& penalties = Penalty::all();
    const auto pa_object = [&](const std::array<double, 4>& pa) {
        nlohmann::json o;
        for (std::size_t i = 0; i < penalties.size(); ++i) o[penalties[i].name()] = pa[i];
        return o;
    };
    if (summary.pa_break) j["pa_break"] = pa_object(*summary.pa_break);
    if (summary.pa_nobreak) j["pa_nobreak"] = pa_object(*summary.pa_nobreak);
    if (include_records) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& rec : summary.records) {
            nlohmann::json r{{"seed", rec.seed}, {"failed", rec.failed}};
            if (rec.failed) {
                r["error"] = rec.error;
            } else {
                r["s_lsse"] = rec.s_lsse;
                r["s_mll"] = rec.s_mll;
                r["sigma_hat"] = rec.sigma_hat;
                r["loglik0"] = rec.loglik0;
                r["loglik1"] = rec.loglik1;
                nlohmann::json m;
                for (std::size_t i = 0; i < penalties.size(); ++i) m[penalties[i].name()] = rec.m_hat[i];
                r["m_hat"] = m;
            }
            rows.push_back(std::move(r));
        }
        j["records"] = std::move(rows);
    }
    return j;
}

std::string mc_summary_csv_header() {
    std::string h = "scenario,with_break,T,iterations,mean_s_lsse,mse_s_lsse,mean_s_mll,mse_s_mll";
    for (const Penalty& p : Penalty::all()) h += ",pa_" + p.name();
    return h;
}

std::string mc_summary_csv_row(const MCSummary& summary) {
    std::ostringstream os;
    os << summary.config.scenario << ',' << (summary.config.with_break ? 1 : 0) << ','
       << format_double(summary.config.T) << ',' << summary.config.iterations << ','
       << format_double(summary.mean_s_lsse) << ',' << format_double(summary.mse_s_lsse) << ','
       << format_double(summary.mean_s_mll) << ',' << format_double(summary.mse_s_mll);
    const auto& pa = summary.config.with_break ? summary.pa_break : summary.pa_nobreak;
    for (std::size_t i = 0; i < 4; ++i)
        os << ',' << (pa ? format_double((*pa)[i]) : std::string("nan"));
    return os.str();
}

}  // namespace oucp

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "oucp/existence.hpp"
#include "oucp/model.hpp"
#include "oucp/montecarlo.hpp"

namespace oucp {

/**
 * An ingested time series: the uniform-grid path plus the source dates when
 * the file carried a date column. Computation always runs on the uniform
 * index grid (n+1 rows over a declared horizon T give dt = T/n); dates are
 * metadata used only to label results.
 */
struct SeriesFile {
    SamplePath path;
    std::vector<std::string> dates;  // empty for numeric t columns
    bool has_dates = false;

    const std::string* date_at(int index) const {
        if (!has_dates || index < 0 || index >= static_cast<int>(dates.size())) return nullptr;
        return &dates[static_cast<std::size_t>(index)];
    }
};

/**
 * Loads a CSV with header `t,x` or `date,price` (at least 3 data rows).
 * Numeric timestamps must be strictly increasing and uniformly spaced to
 * 1e-9 relative; dates must be strictly increasing strings. The grid step is
 * dt = T/n with T the declared horizon; when T is absent a numeric t column
 * supplies T = t_n - t_0 (a date column requires T).
 *
 * Errors carry the offending 1-based file line.
 */
SeriesFile load_csv(const std::string& filename, std::optional<double> T = std::nullopt);

/// Elementwise natural log on the same grid; errors name the first
/// nonpositive entry.
SamplePath log_transform(const SamplePath& path);

void write_path_csv(const std::string& filename, const SamplePath& path,
                    const std::vector<std::string>& dates = {});

/// Shortest decimal form that parses back to the identical double.
std::string format_double(double x);

/// One analysis block of the stable report schema.
nlohmann::json report_analysis(const std::string& method, const ChangePointFit& cp,
                               const ICResult& ic, const SeriesFile* source = nullptr);

/// Bundles analyses into the report document; at least one is required.
nlohmann::json build_report(const std::vector<nlohmann::json>& analyses);

nlohmann::json to_json(const DriftParams& theta);
nlohmann::json to_json(const SegmentFit& fit);
nlohmann::json to_json(const ChangePointFit& fit, bool include_profile = true);
nlohmann::json to_json(const ICResult& result);
nlohmann::json to_json(const MCSummary& summary, bool include_records = false);

/// Study-table row: one line per T, columns per method and penalty.
std::string mc_summary_csv_header();
std::string mc_summary_csv_row(const MCSummary& summary);

}  // namespace oucp

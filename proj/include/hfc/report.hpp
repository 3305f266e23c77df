#pragma once

#include <string>
#include <vector>

#include "hfc/record.hpp"

namespace hfc {

/// Headline metrics of a completed run, computed from the recorded channels.
struct RunSummary {
    double duration_s = 0.0;
    double f_nadir_hz = 0.0;
    double f_nadir_t_s = 0.0;
    double f_zenith_hz = 0.0;
    double f_steady_hz = 0.0;       // tail mean
    double f_steady_band_hz = 0.0;  // tail max-min
    double p_hpp_start_pu = 0.0;
    double p_hpp_end_pu = 0.0;
    double p_hpp_min_pu = 0.0;
    double p_hpp_max_pu = 0.0;
    double asset_fc_peak_pu = 0.0;    // extremum of summed plant-level response power
    double central_fc_peak_pu = 0.0;  // extremum of the coordinator's response command
};

RunSummary summarize(const Record& rec);

std::string summary_text(const RunSummary& s);
std::string summary_csv(const RunSummary& s);

/// One row of a sweep comparison table.
struct ReportRow {
    std::string scenario;
    std::string strategy;
    double delay_s = 0.0;
    double rise_time_s = 0.0;
    double event_to_90_s = 0.0;
    double nadir_hz = 0.0;
    double ss_dev_hz = 0.0;
    bool has_metrics = true;  // false: run had no analyzable event response
    bool stable = true;
};

/// Render rows as CSV (header + one line per row); metric fields of failed
/// or metric-less rows are left empty.
std::string report_table_csv(const std::vector<ReportRow>& rows);

}  // namespace hfc

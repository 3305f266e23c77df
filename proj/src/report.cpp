#include <cmath>
#include <cstdio>

#include "hfc/errors.hpp"
#include "hfc/metrics.hpp"
#include "hfc/report.hpp"

namespace hfc {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

}  // namespace

RunSummary summarize(const Record& rec) {
    if (rec.rows() == 0) throw ValidationError({"report: record is empty"});
    const auto& t = rec.column("t_s");
    const auto& f = rec.column("f_hz");
    const auto& y = rec.column("p_hpp_pu");

    RunSummary s;
    s.duration_s = t.back() - t.front();
    const Extremum nadir = min_point(t, f);
    s.f_nadir_hz = nadir.value;
    s.f_nadir_t_s = nadir.time_s;
    s.f_zenith_hz = max_point(t, f).value;
    s.f_steady_hz = tail_mean(f);
    s.f_steady_band_hz = tail_spread(f);
    s.p_hpp_start_pu = y.front();
    s.p_hpp_end_pu = tail_mean(y);
    s.p_hpp_min_pu = min_point(t, y).value;
    s.p_hpp_max_pu = max_point(t, y).value;

    std::vector<double> fc_sum(rec.rows(), 0.0);
    for (const auto& name : rec.columns()) {
        if (name.size() > 6 && name.compare(name.size() - 6, 6, "_fc_pu") == 0 &&
            name != "hppc_fc_pu") {
            const auto& col = rec.column(name);
            for (std::size_t i = 0; i < col.size(); ++i) fc_sum[i] += col[i];
        }
    }
    for (double v : fc_sum)
        if (std::abs(v) > std::abs(s.asset_fc_peak_pu)) s.asset_fc_peak_pu = v;
    if (rec.has("hppc_fc_pu"))
        for (double v : rec.column("hppc_fc_pu"))
            if (std::abs(v) > std::abs(s.central_fc_peak_pu)) s.central_fc_peak_pu = v;
    return s;
}

std::string summary_text(const RunSummary& s) {
    std::string out;
    out += "duration_s            " + fmt(s.duration_s) + "\n";
    out += "f_nadir_hz            " + fmt(s.f_nadir_hz) + "\n";
    out += "f_nadir_t_s           " + fmt(s.f_nadir_t_s) + "\n";
    out += "f_zenith_hz           " + fmt(s.f_zenith_hz) + "\n";
    out += "f_steady_hz           " + fmt(s.f_steady_hz) + "\n";
    out += "f_steady_band_hz      " + fmt(s.f_steady_band_hz) + "\n";
    out += "p_hpp_start_pu        " + fmt(s.p_hpp_start_pu) + "\n";
    out += "p_hpp_end_pu          " + fmt(s.p_hpp_end_pu) + "\n";
    out += "p_hpp_min_pu          " + fmt(s.p_hpp_min_pu) + "\n";
    out += "p_hpp_max_pu          " + fmt(s.p_hpp_max_pu) + "\n";
    out += "asset_fc_peak_pu      " + fmt(s.asset_fc_peak_pu) + "\n";
    out += "central_fc_peak_pu    " + fmt(s.central_fc_peak_pu) + "\n";
    return out;
}

std::string summary_csv(const RunSummary& s) {
    std::string out =
        "duration_s,f_nadir_hz,f_nadir_t_s,f_zenith_hz,f_steady_hz,f_steady_band_hz,"
        "p_hpp_start_pu,p_hpp_end_pu,p_hpp_min_pu,p_hpp_max_pu,asset_fc_peak_pu,"
        "central_fc_peak_pu\n";
    out += fmt(s.duration_s) + "," + fmt(s.f_nadir_hz) + "," + fmt(s.f_nadir_t_s) + "," +
           fmt(s.f_zenith_hz) + "," + fmt(s.f_steady_hz) + "," + fmt(s.f_steady_band_hz) +
           "," + fmt(s.p_hpp_start_pu) + "," + fmt(s.p_hpp_end_pu) + "," +
           fmt(s.p_hpp_min_pu) + "," + fmt(s.p_hpp_max_pu) + "," +
           fmt(s.asset_fc_peak_pu) + "," + fmt(s.central_fc_peak_pu) + "\n";
    return out;
}

std::string report_table_csv(const std::vector<ReportRow>& rows) {
    std::string out =
        "scenario,strategy,delay_s,rise_time_s,event_to_90_s,nadir_hz,ss_dev_hz,stable\n";
    for (const auto& r : rows) {
        out += r.scenario + "," + r.strategy + "," + fmt(r.delay_s) + ",";
        if (r.stable && r.has_metrics) {
            out += fmt(r.rise_time_s) + "," + fmt(r.event_to_90_s) + "," +
                   fmt(r.nadir_hz) + "," + fmt(r.ss_dev_hz);
        } else {
            out += ",,,";
        }
        out += r.stable ? ",true\n" : ",false\n";
    }
    return out;
}

}  // namespace hfc

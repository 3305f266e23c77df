#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hfc/bode.hpp"
#include "hfc/design.hpp"
#include "hfc/errors.hpp"
#include "hfc/metrics.hpp"
#include "hfc/report.hpp"
#include "hfc/scenario.hpp"
#include "hfc/simulation.hpp"
#include "hfc/svg.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// Exit codes: 0 success, 2 validation / malformed config, 3 numerical
// divergence, 4 sweep with at least one failed run, 5 infeasible design,
// 6 file I/O failure.
constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitDiverged = 3;
constexpr int kExitSweepFailed = 4;
constexpr int kExitInfeasible = 5;
constexpr int kExitIo = 6;

std::optional<std::uint64_t> env_seed() {
    const char* s = std::getenv("HFC_SEED");
    if (!s || !*s) return std::nullopt;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s || *end != '\0')
        throw hfc::ValidationError({"HFC_SEED must be an unsigned integer"});
    return static_cast<std::uint64_t>(v);
}

std::vector<double> decimate(const std::vector<double>& v, std::size_t max_points) {
    if (v.size() <= max_points) return v;
    std::vector<double> out;
    const std::size_t stride = (v.size() + max_points - 1) / max_points;
    for (std::size_t i = 0; i < v.size(); i += stride) out.push_back(v[i]);
    if ((v.size() - 1) % stride != 0) out.push_back(v.back());
    return out;
}

// ---- event helpers --------------------------------------------------------

std::optional<double> first_event_time(const hfc::Scenario& sc) {
    std::optional<double> t;
    if (!sc.load_steps.empty()) t = sc.load_steps.front().t_s;
    if (!sc.hpp.reference_steps.empty()) {
        const double tr = sc.hpp.reference_steps.front().t_s;
        if (!t || tr < *t) t = tr;
    }
    return t;
}

// Steady-state metrics must not be contaminated by secondary control: cut the
// analysis window at AGC activation when it engages after the event.
double metrics_window_end(const hfc::Scenario& sc, double event_t) {
    if (sc.agc.enabled && sc.agc.on_t_s > event_t) return sc.agc.on_t_s;
    return -1.0;  // end of record
}

std::optional<hfc::ResponseMetrics> try_response_metrics(const hfc::Scenario& sc,
                                                         const hfc::Record& rec) {
    const auto event_t = first_event_time(sc);
    if (!event_t || rec.rows() == 0) return std::nullopt;
    try {
        return hfc::response_metrics(rec, *event_t, "p_hpp_pu",
                                     metrics_window_end(sc, *event_t));
    } catch (const hfc::Error&) {
        return std::nullopt;
    }
}

std::string scenario_strategy(const hfc::Scenario& sc) {
    if (sc.plants.empty()) return "";
    const hfc::Strategy st = sc.plants.front().controller.strategy;
    for (const auto& p : sc.plants)
        if (p.controller.strategy != st) return "mixed";
    return hfc::to_string(st);
}

// ---- single-run outputs ----------------------------------------------------

void write_run_plots(const hfc::Record& rec, const fs::path& dir) {
    const auto t = decimate(rec.column("t_s"), 2000);
    {
        hfc::SvgPlotSpec p;
        p.title = "Grid frequency";
        p.x_label = "time [s]";
        p.y_label = "frequency [Hz]";
        p.series.push_back({"f", t, decimate(rec.column("f_hz"), 2000)});
        hfc::write_svg(p, (dir / "frequency.svg").string());
    }
    {
        hfc::SvgPlotSpec p;
        p.title = "HPP output power";
        p.x_label = "time [s]";
        p.y_label = "power [pu]";
        p.series.push_back({"p_hpp", t, decimate(rec.column("p_hpp_pu"), 2000)});
        p.series.push_back({"hpp_ref", t, decimate(rec.column("hpp_ref_pu"), 2000)});
        hfc::write_svg(p, (dir / "power.svg").string());
    }
    {
        hfc::SvgPlotSpec p;
        p.title = "Frequency-response power";
        p.x_label = "time [s]";
        p.y_label = "power [pu]";
        for (const auto& name : rec.columns())
            if (name.size() > 6 && name.compare(name.size() - 6, 6, "_fc_pu") == 0)
                p.series.push_back({name, t, decimate(rec.column(name), 2000)});
        if (!p.series.empty()) hfc::write_svg(p, (dir / "response_power.svg").string());
    }
}

std::string run_metrics_text(const hfc::Scenario& sc, const hfc::Record& rec) {
    std::string text = hfc::summary_text(hfc::summarize(rec));
    if (const auto m = try_response_metrics(sc, rec)) {
        char head[96];
        std::snprintf(head, sizeof head,
                      "\n# event response (p_hpp_pu, event at t=%g s)\n",
                      *first_event_time(sc));
        text += head + hfc::metrics_text(*m);
    }
    return text;
}

void write_case_outputs(const hfc::Scenario& sc, const hfc::SimResult& res,
                        const fs::path& dir, bool plots) {
    fs::create_directories(dir);
    res.record.write_csv((dir / "timeseries.csv").string());
    if (res.record.rows() > 0) {
        std::ofstream f(dir / "metrics.txt");
        if (!f) throw hfc::Error("cannot write metrics.txt in " + dir.string());
        f << run_metrics_text(sc, res.record);
        std::ofstream c(dir / "report.csv");
        if (!c) throw hfc::Error("cannot write report.csv in " + dir.string());
        c << hfc::summary_csv(hfc::summarize(res.record));
    }
    {
        std::ofstream f(dir / "scenario_resolved.json");
        if (!f) throw hfc::Error("cannot write scenario_resolved.json in " + dir.string());
        f << hfc::scenario_to_json(sc).dump(2) << "\n";
    }
    if (res.diverged) {
        std::ofstream f(dir / "DIVERGED.txt");
        f << "diverged at t=" << res.diverged_t_s << " s: " << res.divergence_reason << "\n";
    }
    if (plots && res.record.rows() > 0) write_run_plots(res.record, dir);
}

int cmd_simulate(const std::string& scenario_path, const std::string& out_dir,
                 std::optional<std::uint64_t> seed, std::optional<std::string> noise,
                 std::optional<double> dt, bool plots) {
    hfc::Scenario sc = hfc::load_scenario(scenario_path);
    hfc::SimOptions opt;
    opt.seed_override = seed ? seed : env_seed();
    if (noise) {
        if (*noise != "on" && *noise != "off")
            throw hfc::ValidationError({"--noise must be 'on' or 'off'"});
        opt.noise_override = (*noise == "on");
    }
    opt.dt_override = dt;

    hfc::Scenario resolved = sc;
    if (opt.seed_override) resolved.seed = *opt.seed_override;
    if (opt.noise_override) resolved.noise.enabled = *opt.noise_override;
    if (opt.dt_override) resolved.dt_s = *opt.dt_override;
    hfc::validate(resolved);  // before any output exists: reject cleanly

    const hfc::SimResult res = hfc::simulate(sc, opt);
    const fs::path dir = out_dir.empty() ? fs::path("out") / sc.name : fs::path(out_dir);
    write_case_outputs(resolved, res, dir, plots);

    const hfc::RunSummary s = hfc::summarize(res.record);
    std::printf("scenario   %s\n", sc.name.c_str());
    std::printf("f nadir    %.4f Hz at t=%.2f s\n", s.f_nadir_hz, s.f_nadir_t_s);
    std::printf("f steady   %.4f Hz (band %.4g Hz)\n", s.f_steady_hz, s.f_steady_band_hz);
    std::printf("p_hpp      %.6g -> %.6g pu\n", s.p_hpp_start_pu, s.p_hpp_end_pu);
    std::printf("outputs    %s\n", dir.string().c_str());
    if (res.diverged) {
        std::printf("DIVERGED at t=%.3f s (%s)\n", res.diverged_t_s,
                    res.divergence_reason.c_str());
        return kExitDiverged;
    }
    return kExitOk;
}

// ---- sweep ------------------------------------------------------------------

struct OverDim {
    std::string key;
    std::vector<json> values;
};

json parse_scalar(const std::string& tok) {
    if (tok.empty()) throw hfc::ValidationError({"--over: empty value"});
    char* end = nullptr;
    const double d = std::strtod(tok.c_str(), &end);
    if (end != tok.c_str() && *end == '\0') {
        if (d == std::floor(d) && std::abs(d) < 1e15 &&
            tok.find_first_of(".eE") == std::string::npos)
            return json(static_cast<long long>(d));
        return json(d);
    }
    return json(tok);
}

std::vector<OverDim> parse_over(const std::vector<std::string>& specs) {
    std::vector<OverDim> dims;
    for (const auto& s : specs) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0 || eq + 1 >= s.size())
            throw hfc::ValidationError({"--over expects key=v1,v2,...  got '" + s + "'"});
        OverDim d;
        d.key = s.substr(0, eq);
        std::string rest = s.substr(eq + 1);
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            const auto comma = rest.find(',', pos);
            const std::string tok =
                rest.substr(pos, comma == std::string::npos ? std::string::npos
                                                            : comma - pos);
            if (tok.empty()) throw hfc::ValidationError({"--over '" + s + "': empty value"});
            d.values.push_back(parse_scalar(tok));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (d.values.empty())
            throw hfc::ValidationError({"--over '" + s + "': needs at least one value"});
        dims.push_back(std::move(d));
    }
    return dims;
}

struct SweepCase {
    hfc::Scenario sc;
    std::string label;
    hfc::SimResult res;
    bool errored = false;
    std::string error;
};

void write_comparison_outputs(const std::vector<SweepCase>& cases, const fs::path& dir) {
    const auto overlay = [&](const char* channel, const char* title, const char* y_label,
                             const char* stem) {
        hfc::SvgPlotSpec p;
        p.title = title;
        p.x_label = "time [s]";
        p.y_label = y_label;
        std::string csv = "case,t_s,";
        csv += channel;
        csv += "\n";
        char buf[96];
        for (const auto& c : cases) {
            if (c.errored || c.res.record.rows() == 0) continue;
            const auto t = decimate(c.res.record.column("t_s"), 1500);
            const auto y = decimate(c.res.record.column(channel), 1500);
            for (std::size_t i = 0; i < t.size(); ++i) {
                std::snprintf(buf, sizeof buf, "%s,%.10g,%.10g\n", c.label.c_str(), t[i],
                              y[i]);
                csv += buf;
            }
            p.series.push_back({c.label, t, y});
        }
        if (p.series.empty()) return;
        std::ofstream f(dir / (std::string(stem) + ".csv"));
        if (!f) throw hfc::Error("cannot write comparison csv in " + dir.string());
        f << csv;
        hfc::write_svg(p, (dir / (std::string(stem) + ".svg")).string());
    };
    overlay("f_hz", "Grid frequency by case", "frequency [Hz]", "comparison_frequency");
    overlay("p_hpp_pu", "HPP output power by case", "power [pu]", "comparison_power");
}

int cmd_sweep(const std::string& scenario_path, const std::vector<std::string>& over,
              const std::string& out_dir, unsigned jobs) {
    const hfc::Scenario base = hfc::load_scenario(scenario_path);
    const std::vector<OverDim> dims = parse_over(over);
    if (dims.empty())
        throw hfc::ValidationError({"sweep: give at least one --over key=v1,v2 dimension"});
    const auto seed_env = env_seed();

    // Expand the cartesian product up front so every combination is validated
    // before any output is written.
    std::vector<SweepCase> cases;
    std::vector<std::size_t> idx(dims.size(), 0);
    while (true) {
        SweepCase c;
        c.sc = base;
        std::string label;
        bool sweeps_seed = false;
        for (std::size_t d = 0; d < dims.size(); ++d) {
            const auto& v = dims[d].values[idx[d]];
            c.sc = hfc::apply_sweep_value(c.sc, dims[d].key, v);
            if (!label.empty()) label += "__";
            label += hfc::sweep_case_label(dims[d].key, v);
            sweeps_seed = sweeps_seed || dims[d].key == "seed";
        }
        if (seed_env && !sweeps_seed) c.sc.seed = *seed_env;
        c.label = label;
        cases.push_back(std::move(c));
        std::size_t d = dims.size();
        while (d-- > 0) {
            if (++idx[d] < dims[d].values.size()) break;
            idx[d] = 0;
            if (d == 0) goto expanded;
        }
    }
expanded:

    const fs::path dir = out_dir.empty() ? fs::path("out") / (base.name + "_sweep")
                                         : fs::path(out_dir);
    fs::create_directories(dir);

    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    std::vector<std::future<hfc::SimResult>> futures(cases.size());
    for (std::size_t i = 0; i < cases.size(); ++i) {
        if (i >= jobs) futures[i - jobs].wait();
        futures[i] = std::async(std::launch::async,
                                [&cases, i] { return hfc::simulate(cases[i].sc); });
    }
    for (std::size_t i = 0; i < cases.size(); ++i) {
        try {
            cases[i].res = futures[i].get();
        } catch (const std::exception& e) {
            cases[i].errored = true;
            cases[i].error = e.what();
        }
    }

    bool any_failed = false;
    std::vector<hfc::ReportRow> rows;
    std::string wide;
    for (auto& c : cases) {
        hfc::ReportRow row;
        row.scenario = c.label;
        row.strategy = scenario_strategy(c.sc);
        row.delay_s = c.sc.comm.asset_link.base_s;
        row.stable = !c.errored && !c.res.diverged;
        if (c.errored) {
            any_failed = true;
            row.has_metrics = false;
            std::ofstream f(dir / (c.label + ".ERROR.txt"));
            f << c.error << "\n";
            std::printf("%-40s ERROR: %s\n", c.label.c_str(), c.error.c_str());
        } else {
            write_case_outputs(c.sc, c.res, dir / c.label, /*plots=*/false);
            if (c.res.diverged) any_failed = true;
            if (const auto m = try_response_metrics(c.sc, c.res.record); m && row.stable) {
                row.rise_time_s = m->rise_time_s;
                row.event_to_90_s = m->event_to_90_s;
                row.nadir_hz = m->nadir_hz;
                row.ss_dev_hz = m->steady_state_dev_hz;
            } else {
                row.has_metrics = false;
            }
            if (c.res.record.rows() > 0) {
                const std::string row_csv = hfc::summary_csv(hfc::summarize(c.res.record));
                const auto nl = row_csv.find('\n');
                if (wide.empty())
                    wide = "case,diverged," + row_csv.substr(0, nl) + "\n";
                wide += c.label + "," + (c.res.diverged ? "1" : "0") + "," +
                        row_csv.substr(nl + 1, row_csv.size() - nl - 2) + "\n";
            }
            std::printf("%-40s %s%s\n", c.label.c_str(),
                        c.res.diverged ? "DIVERGED" : "ok",
                        c.res.diverged
                            ? (" at t=" + std::to_string(c.res.diverged_t_s)).c_str()
                            : "");
        }
        rows.push_back(std::move(row));
    }
    {
        std::ofstream f(dir / "report.csv");
        if (!f) throw hfc::Error("cannot write report.csv in " + dir.string());
        f << hfc::report_table_csv(rows);
    }
    if (!wide.empty()) {
        std::ofstream f(dir / "sweep_summary.csv");
        if (!f) throw hfc::Error("cannot write sweep_summary.csv in " + dir.string());
        f << wide;
    }
    write_comparison_outputs(cases, dir);
    std::printf("outputs    %s\n", dir.string().c_str());
    return any_failed ? kExitSweepFailed : kExitOk;
}

// ---- design -----------------------------------------------------------------

hfc::DesignSpec design_spec_from_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw hfc::Error("cannot open scenario file '" + path + "'");
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw hfc::ValidationError({"scenario '" + path + "': " + e.what()});
    }
    const hfc::Scenario sc = hfc::scenario_from_json(j);
    hfc::validate(sc);

    hfc::DesignSpec spec;
    if (!sc.plants.empty()) spec.nominal_asset = sc.plants.front().asset;
    if (j.contains("design")) {
        const json& d = j.at("design");
        spec.bw_target_hz = d.value("bw_target_hz", spec.bw_target_hz);
        spec.pm_target_deg = d.value("pm_target_deg", spec.pm_target_deg);
        spec.q_opts.omega_resp = d.value("omega_resp_rad_s", spec.q_opts.omega_resp);
        spec.q_opts.omega_noise = d.value("omega_noise_rad_s", spec.q_opts.omega_noise);
        spec.q_opts.eps_acc = d.value("eps_acc", spec.q_opts.eps_acc);
        spec.q_opts.eps_noise = d.value("eps_noise", spec.q_opts.eps_noise);
        spec.delay_t_max_s = d.value("delay_max_s", spec.delay_t_max_s);
    }
    return spec;
}

int cmd_design(const std::string& scenario_path, const std::string& out_dir,
               const hfc::DesignSpec& overrides, const std::vector<bool>& overridden) {
    hfc::DesignSpec spec =
        scenario_path.empty() ? hfc::DesignSpec{} : design_spec_from_scenario(scenario_path);
    // Flag overrides beat the scenario's design block.
    if (overridden[0]) spec.bw_target_hz = overrides.bw_target_hz;
    if (overridden[1]) spec.pm_target_deg = overrides.pm_target_deg;
    if (overridden[2]) spec.q_opts.omega_resp = overrides.q_opts.omega_resp;
    if (overridden[3]) spec.q_opts.omega_noise = overrides.q_opts.omega_noise;
    if (overridden[4]) spec.q_opts.eps_acc = overrides.q_opts.eps_acc;
    if (overridden[5]) spec.q_opts.eps_noise = overrides.q_opts.eps_noise;
    if (overridden[6]) spec.delay_t_max_s = overrides.delay_t_max_s;

    const hfc::DesignResult r = hfc::run_design(spec);
    const fs::path dir = out_dir.empty() ? fs::path("out") / "design" : fs::path(out_dir);
    fs::create_directories(dir);

    json j;
    j["gains"] = {{"kp", r.gains.kp},
                  {"ki", r.gains.ki},
                  {"achieved_bw_hz", r.gains.achieved_bw_hz},
                  {"achieved_pm_deg", r.gains.achieved_pm_deg},
                  {"pm_met", r.gains.pm_met}};
    j["estimate_filter"] = {{"degree", r.selection.degree},
                            {"cutoff_rad_s", r.selection.omega_c},
                            {"num", r.selection.q.tf.num()},
                            {"den", r.selection.q.tf.den()}};
    json trace = json::array();
    for (const auto& e : r.selection.trace)
        trace.push_back({{"degree", e.degree},
                         {"unity_edge_rad_s", e.unity_edge_rad_s},
                         {"noise_edge_rad_s", e.noise_edge_rad_s},
                         {"feasible", e.feasible}});
    j["band_trace"] = trace;
    j["robustness"] = {
        {"corners",
         {{"satisfied", r.corner_check.satisfied},
          {"min_margin_ratio", r.corner_check.min_margin_ratio},
          {"at_omega_rad_s", r.corner_check.min_margin_omega}}},
        {"delay",
         {{"satisfied", r.delay_check.satisfied},
          {"min_margin_ratio", r.delay_check.min_margin_ratio},
          {"at_omega_rad_s", r.delay_check.min_margin_omega}}}};
    {
        std::ofstream f(dir / "design.json");
        if (!f) throw hfc::Error("cannot write design.json in " + dir.string());
        f << j.dump(2) << "\n";
    }
    {
        // Drop-in replacement for a plants[i].controller block.
        json frag;
        frag["controller"] = {{"kp", r.gains.kp},
                              {"ki", r.gains.ki},
                              {"q",
                               {{"degree", r.selection.degree},
                                {"cutoff_rad_s", r.selection.omega_c}}}};
        std::ofstream f(dir / "design_fragment.json");
        if (!f) throw hfc::Error("cannot write design_fragment.json in " + dir.string());
        f << frag.dump(2) << "\n";
    }

    // Frequency-domain view: acceptance deviation and noise gain for filter
    // degrees 1-3 at the selected cutoff, plus the no-observer loop.
    const hfc::TransferFunction c_p = hfc::TransferFunction::pi(r.gains.kp, r.gains.ki);
    const auto omega = hfc::log_grid(spec.q_opts.w_min, spec.q_opts.w_max, 50);
    std::vector<std::vector<double>> dev(3), gny(3);
    for (int n = 1; n <= 3; ++n) {
        const hfc::QFilter q = hfc::selection_q(n, r.selection.omega_c);
        const hfc::LoopSet loops =
            hfc::observer_closed_loops(c_p, r.plant, r.plant, q, r.inner);
        for (double w : omega) {
            dev[n - 1].push_back(std::abs(loops.g_pdy.eval(w) / r.inner.eval(w) - 1.0));
            gny[n - 1].push_back(std::abs(loops.g_ny.eval(w)));
        }
    }
    const hfc::TransferFunction plain = hfc::plain_tracking_loop(c_p, r.plant);
    std::vector<double> dev_plain, gny_plain;
    for (double w : omega) {
        // Without the observer the response injection is rejected by the
        // tracking loop: G_pdy = C_A2 G_A / (1 + C_p G).
        dev_plain.push_back(std::abs(1.0 / (1.0 + c_p.eval(w) * r.plant.eval(w)) - 1.0));
        gny_plain.push_back(std::abs(plain.eval(w)));
    }
    {
        std::string csv =
            "omega_rad_s,acc_dev_deg1,acc_dev_deg2,acc_dev_deg3,acc_dev_no_observer,"
            "noise_gain_deg1,noise_gain_deg2,noise_gain_deg3,noise_gain_no_observer\n";
        char buf[220];
        for (std::size_t i = 0; i < omega.size(); ++i) {
            std::snprintf(buf, sizeof buf,
                          "%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                          omega[i], dev[0][i], dev[1][i], dev[2][i], dev_plain[i],
                          gny[0][i], gny[1][i], gny[2][i], gny_plain[i]);
            csv += buf;
        }
        std::ofstream f(dir / "loops_bode.csv");
        if (!f) throw hfc::Error("cannot write loops_bode.csv in " + dir.string());
        f << csv;
    }
    {
        hfc::SvgPlotSpec p;
        p.title = "Response acceptance deviation by filter degree";
        p.x_label = "frequency [rad/s]";
        p.y_label = "|deviation|";
        p.log_x = p.log_y = true;
        p.series.push_back({"degree 1", omega, dev[0]});
        p.series.push_back({"degree 2", omega, dev[1]});
        p.series.push_back({"degree 3", omega, dev[2]});
        p.series.push_back({"no observer", omega, dev_plain});
        p.series.push_back(
            {"limit", omega, std::vector<double>(omega.size(), spec.q_opts.eps_acc)});
        hfc::write_svg(p, (dir / "acceptance_bands.svg").string());
    }
    {
        hfc::SvgPlotSpec p;
        p.title = "Measurement-noise gain by filter degree";
        p.x_label = "frequency [rad/s]";
        p.y_label = "|gain|";
        p.log_x = p.log_y = true;
        p.series.push_back({"degree 1", omega, gny[0]});
        p.series.push_back({"degree 2", omega, gny[1]});
        p.series.push_back({"degree 3", omega, gny[2]});
        p.series.push_back({"no observer", omega, gny_plain});
        hfc::write_svg(p, (dir / "noise_bands.svg").string());
    }

    const auto write_robust = [&](const hfc::RobustnessReport& rep, const char* name) {
        std::string body = "omega_rad_s,envelope,weight,margin\n";
        char buf[160];
        for (std::size_t i = 0; i < rep.omega_rad_s.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g\n", rep.omega_rad_s[i],
                          rep.envelope_mag[i], rep.weight_mag[i], rep.margin_mag[i]);
            body += buf;
        }
        std::ofstream f(dir / (std::string(name) + ".csv"));
        if (!f) throw hfc::Error("cannot write robustness csv in " + dir.string());
        f << body;
        hfc::SvgPlotSpec p;
        p.title = std::string("Robustness: ") + name;
        p.x_label = "frequency [rad/s]";
        p.y_label = "magnitude";
        p.log_x = p.log_y = true;
        p.series.push_back({"uncertainty", rep.omega_rad_s, rep.envelope_mag});
        p.series.push_back({"weight", rep.omega_rad_s, rep.weight_mag});
        p.series.push_back({"margin |1+1/L|", rep.omega_rad_s, rep.margin_mag});
        hfc::write_svg(p, (dir / (std::string(name) + ".svg")).string());
    };
    write_robust(r.corner_check, "robust_corners");
    write_robust(r.delay_check, "robust_delay");

    std::printf("PI gains          kp=%.6g ki=%.6g (bw %.4g Hz, pm %.1f deg%s)\n",
                r.gains.kp, r.gains.ki, r.gains.achieved_bw_hz, r.gains.achieved_pm_deg,
                r.gains.pm_met ? "" : ", pm target not met");
    std::printf("estimate filter   degree %d, cutoff %.4g rad/s\n", r.selection.degree,
                r.selection.omega_c);
    std::printf("robust corners    %s (min margin ratio %.3g at %.3g rad/s)\n",
                r.corner_check.satisfied ? "satisfied" : "VIOLATED",
                r.corner_check.min_margin_ratio, r.corner_check.min_margin_omega);
    std::printf("robust delay      %s (min margin ratio %.3g at %.3g rad/s)\n",
                r.delay_check.satisfied ? "satisfied" : "VIOLATED",
                r.delay_check.min_margin_ratio, r.delay_check.min_margin_omega);
    std::printf("outputs           %s\n", dir.string().c_str());
    return kExitOk;
}

// ---- report -----------------------------------------------------------------

int report_single(const fs::path& dir) {
    const hfc::Record rec = hfc::Record::read_csv((dir / "timeseries.csv").string());
    std::optional<hfc::Scenario> sc;
    if (fs::exists(dir / "scenario_resolved.json"))
        sc = hfc::load_scenario((dir / "scenario_resolved.json").string());
    const std::string text =
        sc ? run_metrics_text(*sc, rec) : hfc::summary_text(hfc::summarize(rec));
    {
        std::ofstream f(dir / "metrics.txt");
        if (!f) throw hfc::Error("cannot write metrics.txt in " + dir.string());
        f << text;
    }
    {
        std::ofstream f(dir / "report.csv");
        if (!f) throw hfc::Error("cannot write report.csv in " + dir.string());
        f << hfc::summary_csv(hfc::summarize(rec));
    }
    write_run_plots(rec, dir);
    std::printf("%s", text.c_str());
    return kExitOk;
}

int report_sweep(const fs::path& dir, const std::vector<fs::path>& case_dirs) {
    std::vector<SweepCase> cases;
    std::vector<hfc::ReportRow> rows;
    for (const auto& cd : case_dirs) {
        SweepCase c;
        c.label = cd.filename().string();
        c.sc = hfc::load_scenario((cd / "scenario_resolved.json").string());
        c.res.record = hfc::Record::read_csv((cd / "timeseries.csv").string());
        c.res.diverged = fs::exists(cd / "DIVERGED.txt");

        hfc::ReportRow row;
        row.scenario = c.label;
        row.strategy = scenario_strategy(c.sc);
        row.delay_s = c.sc.comm.asset_link.base_s;
        row.stable = !c.res.diverged;
        if (const auto m = try_response_metrics(c.sc, c.res.record); m && row.stable) {
            row.rise_time_s = m->rise_time_s;
            row.event_to_90_s = m->event_to_90_s;
            row.nadir_hz = m->nadir_hz;
            row.ss_dev_hz = m->steady_state_dev_hz;
        } else {
            row.has_metrics = false;
        }
        rows.push_back(row);
        cases.push_back(std::move(c));
    }
    const std::string table = hfc::report_table_csv(rows);
    {
        std::ofstream f(dir / "report.csv");
        if (!f) throw hfc::Error("cannot write report.csv in " + dir.string());
        f << table;
    }
    write_comparison_outputs(cases, dir);
    std::printf("%s", table.c_str());
    return kExitOk;
}

int cmd_report(const std::string& dir_arg) {
    const fs::path dir(dir_arg);
    if (!fs::is_directory(dir))
        throw hfc::ValidationError({"report: '" + dir_arg + "' is not a directory"});
    if (fs::exists(dir / "timeseries.csv")) return report_single(dir);
    std::vector<fs::path> case_dirs;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_directory() && fs::exists(e.path() / "timeseries.csv") &&
            fs::exists(e.path() / "scenario_resolved.json"))
            case_dirs.push_back(e.path());
    std::sort(case_dirs.begin(), case_dirs.end());
    if (case_dirs.empty())
        throw hfc::ValidationError(
            {"report: '" + dir_arg +
             "' contains neither timeseries.csv nor sweep case directories"});
    return report_sweep(dir, case_dirs);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hfc - hierarchical frequency-control design and simulation toolkit"};
    app.require_subcommand(1);

    std::string scenario_path, out_dir, report_dir, noise_str;
    std::optional<std::uint64_t> seed;
    std::optional<double> dt;
    bool no_plots = false;
    unsigned jobs = 0;
    std::vector<std::string> over;
    hfc::DesignSpec dspec;

    auto* sim = app.add_subcommand("simulate", "run one scenario");
    sim->add_option("config", scenario_path, "scenario JSON file")->required();
    sim->add_option("-o,--out", out_dir, "output directory (default out/<name>)");
    sim->add_option("--seed", seed, "override the RNG seed (beats HFC_SEED)");
    sim->add_option("--noise", noise_str, "override measurement noise: on|off");
    sim->add_option("--dt", dt, "override the integration step [s]");
    sim->add_flag("--no-plots", no_plots, "skip SVG plots");

    auto* swp = app.add_subcommand("sweep", "run a cartesian scenario sweep");
    swp->add_option("config", scenario_path, "base scenario JSON file")->required();
    swp->add_option("--over", over,
                    "sweep dimension key=v1,v2,... (repeatable; keys: delay, "
                    "hppc_delay, mode, strategy, malfunction, corner, seed)")
        ->required();
    swp->add_option("-o,--out", out_dir, "output directory");
    swp->add_option("-j,--jobs", jobs, "parallel workers (default: hardware)");

    auto* dsn = app.add_subcommand("design", "tune the plant controller and estimate filter");
    dsn->add_option("config", scenario_path,
                    "scenario JSON file (nominal asset + optional design block)");
    dsn->add_option("-o,--out", out_dir, "output directory (default out/design)");
    auto* o0 = dsn->add_option("--bw-hz", dspec.bw_target_hz, "tracking bandwidth target [Hz]");
    auto* o1 = dsn->add_option("--pm-deg", dspec.pm_target_deg, "phase margin target [deg]");
    auto* o2 = dsn->add_option("--omega-resp", dspec.q_opts.omega_resp,
                               "response band upper edge [rad/s]");
    auto* o3 = dsn->add_option("--omega-noise", dspec.q_opts.omega_noise,
                               "noise band lower edge [rad/s]");
    auto* o4 = dsn->add_option("--eps-acc", dspec.q_opts.eps_acc, "acceptance deviation limit");
    auto* o5 = dsn->add_option("--eps-noise", dspec.q_opts.eps_noise, "noise leakage limit");
    auto* o6 = dsn->add_option("--delay-max", dspec.delay_t_max_s,
                               "worst-case command delay [s]");

    auto* rep = app.add_subcommand("report", "re-render metrics and plots for a finished run");
    rep->add_option("dir", report_dir, "output directory of simulate or sweep")->required();

    try {
        app.parse(argc, argv);
        if (sim->parsed())
            return cmd_simulate(scenario_path, out_dir, seed,
                                noise_str.empty() ? std::nullopt
                                                  : std::optional<std::string>(noise_str),
                                dt, !no_plots);
        if (swp->parsed()) return cmd_sweep(scenario_path, over, out_dir, jobs);
        if (dsn->parsed()) {
            const std::vector<bool> overridden = {o0->count() > 0, o1->count() > 0,
                                                  o2->count() > 0, o3->count() > 0,
                                                  o4->count() > 0, o5->count() > 0,
                                                  o6->count() > 0};
            return cmd_design(scenario_path, out_dir, dspec, overridden);
        }
        if (rep->parsed()) return cmd_report(report_dir);
        return kExitInvalid;
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitInvalid;
    } catch (const hfc::ValidationError& e) {
        std::fprintf(stderr, "invalid input:\n");
        for (const auto& issue : e.issues) std::fprintf(stderr, "  - %s\n", issue.c_str());
        return kExitInvalid;
    } catch (const hfc::UnsortedScheduleError& e) {
        std::fprintf(stderr, "invalid input: %s\n", e.what());
        return kExitInvalid;
    } catch (const hfc::NoFeasibleFilterError& e) {
        std::fprintf(stderr, "design infeasible: %s\n", e.what());
        return kExitInfeasible;
    } catch (const hfc::UnstableResultError& e) {
        std::fprintf(stderr, "design infeasible: %s\n", e.what());
        return kExitInfeasible;
    } catch (const hfc::WeightFitError& e) {
        std::fprintf(stderr, "design infeasible: %s\n", e.what());
        return kExitInfeasible;
    } catch (const hfc::DegreeOutOfRangeError& e) {
        std::fprintf(stderr, "design infeasible: %s\n", e.what());
        return kExitInfeasible;
    } catch (const hfc::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
}

#include <cmath>
#include <fstream>
#include <set>

#include "hfc/errors.hpp"
#include "hfc/scenario.hpp"

namespace hfc {

using nlohmann::json;

namespace {

DroopSettings droop_from_json(const json& j) {
    DroopSettings d;
    d.enabled = j.value("enabled", d.enabled);
    d.deadband_hz = j.value("deadband_hz", d.deadband_hz);
    d.droop = j.value("droop", d.droop);
    d.reserve_up_pu = j.value("reserve_up_pu", d.reserve_up_pu);
    d.reserve_down_pu = j.value("reserve_down_pu", d.reserve_down_pu);
    return d;
}

json droop_to_json(const DroopSettings& d) {
    return json{{"enabled", d.enabled},
                {"deadband_hz", d.deadband_hz},
                {"droop", d.droop},
                {"reserve_up_pu", d.reserve_up_pu},
                {"reserve_down_pu", d.reserve_down_pu}};
}

FfrSettings ffr_from_json(const json& j) {
    FfrSettings f;
    f.enabled = j.value("enabled", f.enabled);
    f.threshold_hz = j.value("threshold_hz", f.threshold_hz);
    f.power_pu = j.value("power_pu", f.power_pu);
    f.t_rise_s = j.value("t_rise_s", f.t_rise_s);
    f.t_hold_s = j.value("t_hold_s", f.t_hold_s);
    f.t_fall_s = j.value("t_fall_s", f.t_fall_s);
    f.rearm_band_hz = j.value("rearm_band_hz", f.rearm_band_hz);
    return f;
}

json ffr_to_json(const FfrSettings& f) {
    return json{{"enabled", f.enabled}, {"threshold_hz", f.threshold_hz},
                {"power_pu", f.power_pu}, {"t_rise_s", f.t_rise_s},
                {"t_hold_s", f.t_hold_s}, {"t_fall_s", f.t_fall_s},
                {"rearm_band_hz", f.rearm_band_hz}};
}

FcSettings fc_from_json(const json& j) {
    FcSettings fc;
    if (j.contains("droop")) fc.droop = droop_from_json(j.at("droop"));
    if (j.contains("ffr")) fc.ffr = ffr_from_json(j.at("ffr"));
    fc.delivery_scale = j.value("delivery_scale", fc.delivery_scale);
    return fc;
}

json fc_to_json(const FcSettings& fc) {
    return json{{"droop", droop_to_json(fc.droop)},
                {"ffr", ffr_to_json(fc.ffr)},
                {"delivery_scale", fc.delivery_scale}};
}

QSpec q_from_json(const json& j, const QSpec& def) {
    QSpec q = def;
    q.degree = j.value("degree", q.degree);
    q.cutoff_rad_s = j.value("cutoff_rad_s", q.cutoff_rad_s);
    return q;
}

json q_to_json(const QSpec& q) {
    return json{{"degree", q.degree}, {"cutoff_rad_s", q.cutoff_rad_s}};
}

}  // namespace

Scenario scenario_from_json(const json& j) {
    Scenario s;
    s.schema_version = j.value("schema_version", s.schema_version);
    s.name = j.value("name", s.name);
    s.duration_s = j.value("duration_s", s.duration_s);
    s.dt_s = j.value("dt_s", s.dt_s);
    s.seed = j.value("seed", s.seed);
    s.f_nom_hz = j.value("f_nom_hz", s.f_nom_hz);
    s.grid.f_nom_hz = s.f_nom_hz;
    if (j.contains("grid")) {
        const json& g = j.at("grid");
        s.grid.inertia_h_s = g.value("inertia_h_s", s.grid.inertia_h_s);
        s.grid.damping_pu = g.value("damping_pu", s.grid.damping_pu);
        s.grid.droop_sys = g.value("droop_sys", s.grid.droop_sys);
        s.grid.t_gov_s = g.value("t_gov_s", s.grid.t_gov_s);
        s.grid.t_turb_s = g.value("t_turb_s", s.grid.t_turb_s);
        s.grid.hpp_share = g.value("hpp_share", s.grid.hpp_share);
        s.grid.k_agc = g.value("k_agc", s.grid.k_agc);
    }
    for (const json& e : j.value("load_steps", json::array()))
        s.load_steps.push_back({e.value("t_s", 0.0), e.value("delta_pu", 0.0)});
    if (j.contains("agc")) {
        s.agc.enabled = j.at("agc").value("enabled", s.agc.enabled);
        s.agc.on_t_s = j.at("agc").value("on_t_s", s.agc.on_t_s);
    }
    if (j.contains("hpp")) {
        const json& h = j.at("hpp");
        s.hpp.mode = hpp_mode_from_string(h.value("mode", to_string(s.hpp.mode)));
        s.hpp.reference_pu = h.value("reference_pu", s.hpp.reference_pu);
        for (const json& e : h.value("reference_steps", json::array()))
            s.hpp.reference_steps.push_back({e.value("t_s", 0.0), e.value("to_pu", 0.0)});
        if (h.contains("controller")) {
            const json& c = h.at("controller");
            s.hpp.kp = c.value("kp", s.hpp.kp);
            s.hpp.ki = c.value("ki", s.hpp.ki);
            s.hpp.period_s = c.value("period_s", s.hpp.period_s);
            s.hpp.strategy = strategy_from_string(c.value("strategy", to_string(s.hpp.strategy)));
            if (c.contains("q")) s.hpp.q = q_from_json(c.at("q"), s.hpp.q);
        }
        if (h.contains("fc")) s.hpp.fc = fc_from_json(h.at("fc"));
    }
    for (const json& p : j.value("plants", json::array())) {
        PlantSpec ps;
        ps.name = p.value("name", ps.name);
        ps.dispatch = p.value("dispatch", ps.dispatch);
        ps.fc_dispatch = p.value("fc_dispatch", ps.fc_dispatch);
        if (p.contains("asset")) {
            const json& a = p.at("asset");
            ps.asset.kind = asset_kind_from_string(a.value("kind", to_string(ps.asset.kind)));
            ps.asset.share = a.value("share", ps.asset.share);
            ps.asset.available_frac = a.value("available_frac", ps.asset.available_frac);
            ps.asset.t_cc_msc = a.value("t_cc_msc", ps.asset.t_cc_msc);
            ps.asset.t_cc_gsc = a.value("t_cc_gsc", ps.asset.t_cc_gsc);
            ps.asset.kp_pc = a.value("kp_pc", ps.asset.kp_pc);
            ps.asset.ki_pc = a.value("ki_pc", ps.asset.ki_pc);
            ps.asset.kp_vc = a.value("kp_vc", ps.asset.kp_vc);
            ps.asset.ki_vc = a.value("ki_vc", ps.asset.ki_vc);
            if (a.contains("fc")) ps.asset.fc = fc_from_json(a.at("fc"));
        }
        ps.asset.name = ps.name;
        if (p.contains("controller")) {
            const json& c = p.at("controller");
            ps.controller.kp = c.value("kp", ps.controller.kp);
            ps.controller.ki = c.value("ki", ps.controller.ki);
            ps.controller.period_s = c.value("period_s", ps.controller.period_s);
            ps.controller.strategy =
                strategy_from_string(c.value("strategy", to_string(ps.controller.strategy)));
            if (c.contains("q")) ps.controller.q = q_from_json(c.at("q"), ps.controller.q);
        }
        s.plants.push_back(std::move(ps));
    }
    if (j.contains("comm")) {
        const json& c = j.at("comm");
        s.comm.hppc_link.base_s = c.value("hppc_link_s", 0.0);
        s.comm.hppc_link.wobble_s = c.value("hppc_wobble_s", 0.0);
        s.comm.asset_link.base_s = c.value("asset_link_s", 0.0);
        s.comm.asset_link.wobble_s = c.value("asset_wobble_s", 0.0);
        s.comm.hppc_link.wobble_rad_s = s.comm.asset_link.wobble_rad_s =
            c.value("wobble_rad_s", 0.1);
    }
    if (j.contains("noise")) {
        const json& n = j.at("noise");
        s.noise.enabled = n.value("enabled", s.noise.enabled);
        s.noise.std_pu = n.value("power_std_pu", s.noise.std_pu);
        s.noise.freq_std_hz = n.value("freq_std_hz", s.noise.freq_std_hz);
        s.noise.corner_rad_s = n.value("corner_rad_s", s.noise.corner_rad_s);
    }
    if (j.contains("output")) s.output.stride_s = j.at("output").value("stride_s", s.output.stride_s);
    return s;
}

json scenario_to_json(const Scenario& s) {
    json j;
    j["schema_version"] = s.schema_version;
    j["name"] = s.name;
    j["duration_s"] = s.duration_s;
    j["dt_s"] = s.dt_s;
    j["seed"] = s.seed;
    j["f_nom_hz"] = s.f_nom_hz;
    j["grid"] = {{"inertia_h_s", s.grid.inertia_h_s}, {"damping_pu", s.grid.damping_pu},
                 {"droop_sys", s.grid.droop_sys},     {"t_gov_s", s.grid.t_gov_s},
                 {"t_turb_s", s.grid.t_turb_s},       {"hpp_share", s.grid.hpp_share},
                 {"k_agc", s.grid.k_agc}};
    j["load_steps"] = json::array();
    for (const auto& e : s.load_steps)
        j["load_steps"].push_back({{"t_s", e.t_s}, {"delta_pu", e.delta_pu}});
    j["agc"] = {{"enabled", s.agc.enabled}, {"on_t_s", s.agc.on_t_s}};
    json refsteps = json::array();
    for (const auto& e : s.hpp.reference_steps)
        refsteps.push_back({{"t_s", e.t_s}, {"to_pu", e.to_pu}});
    j["hpp"] = {{"mode", to_string(s.hpp.mode)},
                {"reference_pu", s.hpp.reference_pu},
                {"reference_steps", refsteps},
                {"controller",
                 {{"kp", s.hpp.kp},
                  {"ki", s.hpp.ki},
                  {"period_s", s.hpp.period_s},
                  {"strategy", to_string(s.hpp.strategy)},
                  {"q", q_to_json(s.hpp.q)}}},
                {"fc", fc_to_json(s.hpp.fc)}};
    j["plants"] = json::array();
    for (const auto& p : s.plants) {
        j["plants"].push_back(
            {{"name", p.name},
             {"dispatch", p.dispatch},
             {"fc_dispatch", p.fc_dispatch},
             {"asset",
              {{"kind", to_string(p.asset.kind)},
               {"share", p.asset.share},
               {"available_frac", p.asset.available_frac},
               {"t_cc_msc", p.asset.t_cc_msc},
               {"t_cc_gsc", p.asset.t_cc_gsc},
               {"kp_pc", p.asset.kp_pc},
               {"ki_pc", p.asset.ki_pc},
               {"kp_vc", p.asset.kp_vc},
               {"ki_vc", p.asset.ki_vc},
               {"fc", fc_to_json(p.asset.fc)}}},
             {"controller",
              {{"kp", p.controller.kp},
               {"ki", p.controller.ki},
               {"period_s", p.controller.period_s},
               {"strategy", to_string(p.controller.strategy)},
               {"q", q_to_json(p.controller.q)}}}});
    }
    j["comm"] = {{"hppc_link_s", s.comm.hppc_link.base_s},
                 {"hppc_wobble_s", s.comm.hppc_link.wobble_s},
                 {"asset_link_s", s.comm.asset_link.base_s},
                 {"asset_wobble_s", s.comm.asset_link.wobble_s},
                 {"wobble_rad_s", s.comm.hppc_link.wobble_rad_s}};
    j["noise"] = {{"enabled", s.noise.enabled},
                  {"power_std_pu", s.noise.std_pu},
                  {"freq_std_hz", s.noise.freq_std_hz},
                  {"corner_rad_s", s.noise.corner_rad_s}};
    j["output"] = {{"stride_s", s.output.stride_s}};
    return j;
}

namespace {

bool is_multiple(double period, double dt) {
    const double k = period / dt;
    return std::abs(k - std::round(k)) < 1e-6 && std::round(k) >= 1.0;
}

void check_q(std::vector<std::string>& issues, const QSpec& q, double period,
             const std::string& who) {
    if (q.degree < 1 || q.degree > 6)
        issues.push_back(who + ": estimate filter degree must be 1..6");
    if (!(q.cutoff_rad_s > 0.0))
        issues.push_back(who + ": estimate filter cutoff must be positive");
    else if (period > 0.0 && q.cutoff_rad_s >= 3.141592653589793 / period)
        issues.push_back(who + ": estimate filter cutoff at or above the controller "
                               "Nyquist rate");
}

}  // namespace

void validate(const Scenario& s) {
    for (std::size_t i = 1; i < s.load_steps.size(); ++i)
        if (s.load_steps[i].t_s < s.load_steps[i - 1].t_s)
            throw UnsortedScheduleError("load steps must be sorted by time");
    for (std::size_t i = 1; i < s.hpp.reference_steps.size(); ++i)
        if (s.hpp.reference_steps[i].t_s < s.hpp.reference_steps[i - 1].t_s)
            throw UnsortedScheduleError("reference steps must be sorted by time");

    std::vector<std::string> issues;
    if (s.schema_version != 1)
        issues.push_back("unsupported schema_version " + std::to_string(s.schema_version));
    if (!(s.duration_s > 0.0)) issues.push_back("duration_s must be positive");
    if (!(s.dt_s > 0.0 && s.dt_s <= 0.1)) issues.push_back("dt_s must be in (0, 0.1]");
    if (!(s.f_nom_hz > 0.0)) issues.push_back("f_nom_hz must be positive");
    if (!(s.grid.inertia_h_s > 0.0)) issues.push_back("grid.inertia_h_s must be positive");
    if (s.grid.damping_pu < 0.0) issues.push_back("grid.damping_pu must be >= 0");
    if (!(s.grid.droop_sys > 0.0)) issues.push_back("grid.droop_sys must be positive");
    if (!(s.grid.t_gov_s > 0.0)) issues.push_back("grid.t_gov_s must be positive");
    if (!(s.grid.t_turb_s > 0.0)) issues.push_back("grid.t_turb_s must be positive");
    if (!(s.grid.hpp_share > 0.0 && s.grid.hpp_share <= 1.0))
        issues.push_back("grid.hpp_share must be in (0, 1]");
    if (s.grid.k_agc < 0.0) issues.push_back("grid.k_agc must be >= 0");

    if (s.plants.empty()) issues.push_back("at least one plant is required");
    std::set<std::string> names;
    double dispatch_sum = 0.0, fc_dispatch_sum = 0.0;
    for (const auto& p : s.plants) {
        const std::string who = "plant '" + p.name + "'";
        if (p.name.empty()) issues.push_back("plant names must be non-empty");
        if (!names.insert(p.name).second) issues.push_back("duplicate plant name: " + p.name);
        if (p.dispatch < 0.0) issues.push_back(who + ": dispatch must be >= 0");
        if (p.fc_dispatch < 0.0) issues.push_back(who + ": fc_dispatch must be >= 0");
        dispatch_sum += p.dispatch;
        fc_dispatch_sum += p.fc_dispatch;
        if (!(p.asset.share > 0.0)) issues.push_back(who + ": asset share must be positive");
        if (p.asset.available_frac < 0.0 || p.asset.available_frac > 1.0)
            issues.push_back(who + ": available_frac must be in [0, 1]");
        for (double v : {p.asset.t_cc_msc, p.asset.t_cc_gsc, p.asset.kp_pc, p.asset.ki_pc,
                         p.asset.kp_vc, p.asset.ki_vc})
            if (!(v > 0.0)) {
                issues.push_back(who + ": asset chain parameters must be positive");
                break;
            }
        if (p.asset.fc.delivery_scale < 0.0)
            issues.push_back(who + ": fc delivery_scale must be >= 0");
        if (!(p.controller.kp > 0.0) || !(p.controller.ki > 0.0))
            issues.push_back(who + ": controller gains must be positive");
        if (!is_multiple(p.controller.period_s, s.dt_s))
            issues.push_back(who + ": controller period must be a multiple of dt_s");
        check_q(issues, p.controller.q, p.controller.period_s, who);

        // Scheduled response reserves must fit inside the asset's headroom at
        // the initial dispatch point: local settings in distributed mode, the
        // plant's fc_dispatch share of the central settings otherwise.
        const auto [cap_lo, cap_hi] = capability_bounds(p.asset);
        const double ref0 = p.dispatch * s.hpp.reference_pu;
        const bool local = s.hpp.mode == HppMode::Distributed;
        const FcSettings& fc = local ? p.asset.fc : s.hpp.fc;
        const double scale = local ? 1.0 : p.fc_dispatch;
        double need_up = 0.0, need_dn = 0.0;
        if (fc.droop.enabled) {
            need_up += fc.droop.reserve_up_pu;
            need_dn += fc.droop.reserve_down_pu;
        }
        if (fc.ffr.enabled) {
            need_up += fc.ffr.power_pu;
            need_dn += fc.ffr.power_pu;
        }
        need_up *= scale;
        need_dn *= scale;
        const double head_up = cap_hi - ref0;
        const double head_dn = ref0 - cap_lo;
        if (need_up > head_up + 1e-9)
            issues.push_back(who + ": scheduled response reserve " + std::to_string(need_up) +
                             " pu exceeds upward headroom " + std::to_string(head_up) +
                             " pu (capability " + std::to_string(cap_hi) +
                             " minus initial dispatch " + std::to_string(ref0) + ")");
        if (need_dn > head_dn + 1e-9)
            issues.push_back(who + ": scheduled response reserve " + std::to_string(need_dn) +
                             " pu exceeds downward headroom " + std::to_string(head_dn) +
                             " pu (initial dispatch " + std::to_string(ref0) +
                             " minus capability " + std::to_string(cap_lo) + ")");
    }
    if (!s.plants.empty() && std::abs(dispatch_sum - 1.0) > 1e-6)
        issues.push_back("plant dispatch weights must sum to 1");
    const bool central_fc =
        s.hpp.mode == HppMode::Centralized && (s.hpp.fc.droop.enabled || s.hpp.fc.ffr.enabled);
    if (central_fc && std::abs(fc_dispatch_sum - 1.0) > 1e-6)
        issues.push_back("fc_dispatch weights must sum to 1 in centralized mode");

    if (!(s.hpp.kp > 0.0) || !(s.hpp.ki > 0.0))
        issues.push_back("hpp controller gains must be positive");
    if (!is_multiple(s.hpp.period_s, s.dt_s))
        issues.push_back("hpp controller period must be a multiple of dt_s");
    check_q(issues, s.hpp.q, s.hpp.period_s, "hpp controller");
    if (!(s.hpp.reference_pu >= 0.0)) issues.push_back("hpp reference_pu must be >= 0");

    for (const auto* d : {&s.comm.hppc_link, &s.comm.asset_link}) {
        if (d->base_s < 0.0) issues.push_back("comm delays must be >= 0");
        if (d->wobble_s < 0.0) issues.push_back("comm delay wobble must be >= 0");
        if (d->wobble_s > d->base_s)
            issues.push_back("comm delay wobble must not exceed the base delay");
        if (d->wobble_s > 0.0 && !(d->wobble_rad_s > 0.0))
            issues.push_back("comm wobble_rad_s must be positive when wobble is used");
        if (d->max() > 2.0 + 1e-12)
            issues.push_back("comm delay peaks at " + std::to_string(d->max()) +
                             " s, outside the supported range [0, 2] s");
    }

    if (s.noise.std_pu < 0.0) issues.push_back("noise power_std_pu must be >= 0");
    if (s.noise.freq_std_hz < 0.0) issues.push_back("noise freq_std_hz must be >= 0");
    if (!(s.noise.corner_rad_s > 0.0)) issues.push_back("noise corner_rad_s must be positive");
    if (!is_multiple(s.output.stride_s, s.dt_s))
        issues.push_back("output stride_s must be a multiple of dt_s");

    if (!issues.empty()) throw ValidationError(issues);
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error("cannot open scenario file '" + path + "'");
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        throw ValidationError({"scenario '" + path + "': " + e.what()});
    }
    Scenario s = scenario_from_json(j);
    validate(s);
    return s;
}

Scenario apply_sweep_value(const Scenario& base, const std::string& key, const json& value) {
    Scenario s = base;
    try {
        if (key == "delay") {
            s.comm.asset_link.base_s = value.get<double>();
        } else if (key == "hppc_delay") {
            s.comm.hppc_link.base_s = value.get<double>();
        } else if (key == "mode") {
            s.hpp.mode = hpp_mode_from_string(value.get<std::string>());
        } else if (key == "seed") {
            s.seed = value.get<std::uint64_t>();
        } else if (key == "strategy") {
            const Strategy st = strategy_from_string(value.get<std::string>());
            s.hpp.strategy = st;
            for (auto& p : s.plants) p.controller.strategy = st;
        } else if (key == "malfunction") {
            const double frac = value.get<double>();
            if (frac < 0.0 || frac > 1.0)
                throw ValidationError({"sweep: malfunction fraction must be in [0, 1]"});
            for (auto& p : s.plants) p.asset.fc.delivery_scale = 1.0 - frac;
        } else if (key == "corner") {
            const int mask = value.get<int>();
            if (mask < 0 || mask > 63)
                throw ValidationError({"sweep: corner index must be in 0..63"});
            for (auto& p : s.plants) p.asset = corner_params_at(p.asset, mask);
        } else {
            throw ValidationError({"sweep: unknown key '" + key + "'"});
        }
    } catch (const json::exception& e) {
        throw ValidationError({"sweep value for '" + key + "': " + e.what()});
    }
    validate(s);
    return s;
}

std::string sweep_case_label(const std::string& key, const json& value) {
    std::string v = value.is_string() ? value.get<std::string>() : value.dump();
    for (char& c : v)
        if (c == '.') c = 'p';
    return key + "_" + v;
}

}  // namespace hfc

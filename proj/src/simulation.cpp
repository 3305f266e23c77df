#include <cmath>
#include <memory>
#include <numeric>
#include <vector>

#include "hfc/errors.hpp"
#include "hfc/qfilter.hpp"
#include "hfc/simulation.hpp"
#include "hfc/transfer_function.hpp"

namespace hfc {

namespace {

constexpr double kTimeEps = 1e-9;

double load_at(const std::vector<LoadStep>& steps, double t) {
    double p = 0.0;
    for (const auto& s : steps)
        if (t >= s.t_s - kTimeEps) p += s.delta_pu;
    return p;
}

double reference_at(const HppSpec& hpp, double t) {
    double r = hpp.reference_pu;
    for (const auto& s : hpp.reference_steps)
        if (t >= s.t_s - kTimeEps) r = s.to_pu;
    return r;
}

long ticks_of(double period, double dt) { return std::lround(period / dt); }

struct PlantRuntime {
    PlantRuntime(const PlantSpec& spec, const Scenario& sc, const FcSettings& active_fc,
                 const TransferFunction& design_model, const TransferFunction& q_plant)
        : asset([&] {
              AssetParams ap = spec.asset;
              ap.fc = active_fc;
              return Asset(ap, sc.dt_s);
          }()),
          ctrl([&] {
              PlantControllerConfig cfg;
              cfg.kp = spec.controller.kp;
              cfg.ki = spec.controller.ki;
              cfg.period_s = spec.controller.period_s;
              cfg.strategy = spec.controller.strategy;
              cfg.f_nom_hz = sc.f_nom_hz;
              cfg.nominal_model = design_model;
              cfg.q = q_plant;
              if (active_fc.droop.enabled || active_fc.ffr.enabled) {
                  FcSettings scheduled = active_fc;
                  scheduled.delivery_scale = 1.0;  // controllers assume full delivery
                  cfg.mirrored_fc = {scheduled};
              }
              return PlantController(cfg);
          }()),
          downlink(sc.comm.hppc_link.max(), sc.dt_s),
          uplink(sc.comm.hppc_link.max(), sc.dt_s),
          cmd_link(sc.comm.asset_link.max(), sc.dt_s),
          every(ticks_of(spec.controller.period_s, sc.dt_s)),
          y_noise(sc.seed, "plant." + spec.name + ".y",
                  sc.noise.enabled ? sc.noise.std_pu : 0.0, sc.noise.corner_rad_s,
                  spec.controller.period_s),
          f_noise(sc.seed, "plant." + spec.name + ".f",
                  sc.noise.enabled ? sc.noise.freq_std_hz : 0.0, sc.noise.corner_rad_s,
                  spec.controller.period_s),
          f_noise_asset(sc.seed, "asset." + spec.name + ".f",
                        sc.noise.enabled ? sc.noise.freq_std_hz : 0.0, sc.noise.corner_rad_s,
                        sc.dt_s),
          y_noise_up(sc.seed, "hppc.y." + spec.name,
                     sc.noise.enabled ? sc.noise.std_pu : 0.0, sc.noise.corner_rad_s,
                     sc.hpp.period_s) {}

    Asset asset;
    PlantController ctrl;
    DelayLine downlink, uplink, cmd_link;
    long every;
    NoiseSource y_noise, f_noise, f_noise_asset, y_noise_up;
    double ref_sent = 0.0;  // latest reference transmitted by the coordinator
    double u = 0.0;         // latest plant-controller command
    double y = 0.0;         // latest true produced power
};

}  // namespace

SimResult simulate(const Scenario& scenario, const SimOptions& opt) {
    Scenario sc = scenario;
    if (opt.seed_override) sc.seed = *opt.seed_override;
    if (opt.noise_override) sc.noise.enabled = *opt.noise_override;
    if (opt.dt_override) sc.dt_s = *opt.dt_override;
    validate(sc);

    const double dt = sc.dt_s;
    const long n_steps = std::lround(sc.duration_s / dt);
    const long hppc_every = ticks_of(sc.hpp.period_s, dt);
    const long record_every = ticks_of(sc.output.stride_s, dt);
    const std::size_t n_plants = sc.plants.size();
    const bool centralized = sc.hpp.mode == HppMode::Centralized;

    // Design-side models: the observers always use the nominal chain, not the
    // (possibly perturbed) simulated parameters.
    const AssetParams nominal_params{};
    const TransferFunction design_model = asset_plant(nominal_params);

    std::vector<std::unique_ptr<PlantRuntime>> plants;
    plants.reserve(n_plants);
    for (const auto& spec : sc.plants) {
        FcSettings active = spec.asset.fc;
        if (centralized) {  // response power is generated centrally instead
            active.droop.enabled = false;
            active.ffr.enabled = false;
        }
        const TransferFunction q_plant =
            selection_q(spec.controller.q.degree, spec.controller.q.cutoff_rad_s).tf;
        plants.push_back(
            std::make_unique<PlantRuntime>(spec, sc, active, design_model, q_plant));
    }

    HppControllerConfig hcfg;
    hcfg.kp = sc.hpp.kp;
    hcfg.ki = sc.hpp.ki;
    hcfg.period_s = sc.hpp.period_s;
    hcfg.strategy = sc.hpp.strategy;
    hcfg.mode = sc.hpp.mode;
    hcfg.f_nom_hz = sc.f_nom_hz;
    hcfg.fc = sc.hpp.fc;
    hcfg.q = selection_q(sc.hpp.q.degree, sc.hpp.q.cutoff_rad_s).tf;
    for (const auto& spec : sc.plants) {
        hcfg.dispatch.push_back(spec.dispatch);
        hcfg.fc_dispatch.push_back(spec.fc_dispatch);
        hcfg.plant_models.push_back(feedback_unity(
            series(TransferFunction::pi(spec.controller.kp, spec.controller.ki),
                   design_model)));
        if (!centralized) {
            FcSettings scheduled = spec.asset.fc;
            scheduled.delivery_scale = 1.0;
            if (scheduled.droop.enabled || scheduled.ffr.enabled)
                hcfg.mirrored_fc.push_back(scheduled);
        }
    }
    HppController hppc(hcfg);
    NoiseSource hppc_f_noise(sc.seed, "hppc.f", sc.noise.enabled ? sc.noise.freq_std_hz : 0.0,
                             sc.noise.corner_rad_s, sc.hpp.period_s);

    Grid grid(sc.grid, dt);

    // ---- exact steady-state initialization -------------------------------
    const double u0 = sc.hpp.reference_pu;
    std::vector<double> ref0(n_plants), y0(n_plants);
    for (std::size_t j = 0; j < n_plants; ++j) {
        ref0[j] = sc.plants[j].dispatch * u0;
        y0[j] = ref0[j];
        auto& p = *plants[j];
        if (ref0[j] < p.asset.lower_bound() - 1e-12 ||
            ref0[j] > p.asset.upper_bound() + 1e-12)
            throw ValidationError({"plant '" + sc.plants[j].name +
                                   "': initial reference outside asset capability"});
        p.asset.init_steady(ref0[j]);
        p.ctrl.init_steady(ref0[j], y0[j]);
        p.downlink.fill(ref0[j]);
        p.uplink.fill(y0[j]);
        p.cmd_link.fill(ref0[j]);
        p.ref_sent = ref0[j];
        p.u = ref0[j];
        p.y = y0[j];
    }
    hppc.init_steady(u0, y0);
    grid.reset();
    const double y_hpp0 = std::accumulate(y0.begin(), y0.end(), 0.0);

    // ---- record ----------------------------------------------------------
    std::vector<std::string> cols = {"t_s",        "f_hz",     "p_load_pu", "p_conv_pu",
                                     "agc_pu",     "hpp_ref_pu", "p_hpp_pu", "hppc_u_pu",
                                     "hppc_fc_pu", "hppc_est_pu"};
    for (const auto& spec : sc.plants)
        for (const char* suffix : {"_ref_pu", "_cmd_pu", "_p_pu", "_fc_pu", "_est_pu", "_sat"})
            cols.push_back(spec.name + suffix);
    SimResult result;
    result.record = Record(cols);
    std::vector<double> row(cols.size());

    const auto record_state = [&](double t) {
        std::size_t i = 0;
        row[i++] = t;
        row[i++] = grid.frequency_hz();
        row[i++] = load_at(sc.load_steps, t);
        row[i++] = grid.conventional_power_pu();
        row[i++] = grid.agc_command_pu();
        row[i++] = reference_at(sc.hpp, t);
        double y_hpp = 0.0;
        for (const auto& p : plants) y_hpp += p->y;
        row[i++] = y_hpp;
        row[i++] = hppc.output();
        row[i++] = hppc.fc_command();
        row[i++] = hppc.estimate();
        for (std::size_t j = 0; j < n_plants; ++j) {
            const auto& p = *plants[j];
            row[i++] = p.ref_sent;
            row[i++] = p.u;
            row[i++] = p.y;
            row[i++] = p.asset.fc_power();
            row[i++] = p.ctrl.estimate();
            row[i++] = p.asset.saturated() ? 1.0 : 0.0;
        }
        result.record.append(row);
    };

    // ---- main loop -------------------------------------------------------
    std::vector<double> y_up(n_plants);
    for (long k = 0; k <= n_steps; ++k) {
        const double t = static_cast<double>(k) * dt;
        if (k % record_every == 0) record_state(t);
        if (k == n_steps) break;

        try {
            const double p_load = load_at(sc.load_steps, t);
            const double hpp_ref = reference_at(sc.hpp, t);
            const bool agc_on = sc.agc.enabled && t >= sc.agc.on_t_s - kTimeEps;
            const double f_true = grid.frequency_hz();

            bool any_sat = false;
            for (const auto& p : plants) any_sat = any_sat || p->asset.saturated();

            if (k % hppc_every == 0) {
                const double lag = sc.comm.hppc_link.at(t);
                for (std::size_t j = 0; j < n_plants; ++j)
                    y_up[j] = plants[j]->uplink.read(lag) + plants[j]->y_noise_up.next();
                const std::vector<double> refs =
                    hppc.update(hpp_ref, y_up, f_true + hppc_f_noise.next(), any_sat);
                for (std::size_t j = 0; j < n_plants; ++j) plants[j]->ref_sent = refs[j];
            }

            for (auto& pp : plants) {
                auto& p = *pp;
                if (k % p.every == 0) {
                    const double ref = p.downlink.read(sc.comm.hppc_link.at(t));
                    const double y_meas = p.y + p.y_noise.next();
                    const double f_meas = f_true + p.f_noise.next();
                    p.u = p.ctrl.update(ref, y_meas, f_meas, p.asset.saturated());
                }
                const double cmd = p.cmd_link.read(sc.comm.asset_link.at(t));
                p.y = p.asset.step(cmd, f_true + p.f_noise_asset.next(), sc.f_nom_hz);
            }

            double y_hpp = 0.0;
            for (const auto& p : plants) y_hpp += p->y;
            grid.step(y_hpp - y_hpp0, p_load, agc_on);

            for (auto& pp : plants) {
                auto& p = *pp;
                p.downlink.push(p.ref_sent);
                p.uplink.push(p.y);
                p.cmd_link.push(p.u);
            }

            const double df = grid.delta_f_pu();
            if (!std::isfinite(df) || !std::isfinite(y_hpp) || std::abs(df) > 0.1 ||
                std::abs(y_hpp - y_hpp0) > 10.0) {
                result.diverged = true;
                result.diverged_t_s = t + dt;
                result.divergence_reason =
                    !std::isfinite(df) || !std::isfinite(y_hpp)
                        ? "non-finite state"
                        : (std::abs(df) > 0.1 ? "frequency deviation beyond 10%"
                                              : "plant output runaway");
                record_state(t + dt);
                break;
            }
        } catch (const NonFiniteInputError&) {
            // A state blew past representable range inside one step: report it
            // as divergence with the record collected so far.
            result.diverged = true;
            result.diverged_t_s = t;
            result.divergence_reason = "non-finite state";
            break;
        }
    }
    return result;
}

}  // namespace hfc

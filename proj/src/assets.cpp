#include <algorithm>
#include <cmath>
#include <tuple>

#include "hfc/assets.hpp"
#include "hfc/errors.hpp"

namespace hfc {

std::string to_string(AssetKind k) {
    switch (k) {
        case AssetKind::WindTurbine: return "wt";
        case AssetKind::Photovoltaic: return "pv";
        case AssetKind::EnergyStorage: return "ess";
    }
    return "?";
}

AssetKind asset_kind_from_string(const std::string& s) {
    if (s == "wt" || s == "wind") return AssetKind::WindTurbine;
    if (s == "pv" || s == "solar") return AssetKind::Photovoltaic;
    if (s == "ess" || s == "es" || s == "storage") return AssetKind::EnergyStorage;
    throw ValidationError({"unknown asset kind: " + s});
}

TransferFunction asset_command_path(const AssetParams& p) {
    return TransferFunction({p.ki_pc, p.kp_pc}, {p.ki_pc, 1.0 + p.kp_pc});
}

TransferFunction asset_inner_dynamics(const AssetParams& p) {
    const TransferFunction msc({1.0}, {1.0, p.t_cc_msc});
    const TransferFunction vc({p.ki_vc, p.kp_vc}, {p.ki_vc, p.kp_vc, 1.0});
    const TransferFunction gsc({1.0}, {1.0, p.t_cc_gsc});
    return series(series(msc, vc), gsc);
}

TransferFunction asset_plant(const AssetParams& p) {
    return series(asset_command_path(p), asset_inner_dynamics(p));
}

AssetParams corner_params_at(const AssetParams& base, int mask, const AssetParamRanges& r) {
    AssetParams p = base;
    p.t_cc_msc = (mask & 1) ? r.t_cc_hi : r.t_cc_lo;
    p.t_cc_gsc = ((mask >> 1) & 1) ? r.t_cc_hi : r.t_cc_lo;
    p.kp_pc = ((mask >> 2) & 1) ? r.kp_pc_hi : r.kp_pc_lo;
    p.ki_pc = ((mask >> 3) & 1) ? r.ki_pc_hi : r.ki_pc_lo;
    p.kp_vc = ((mask >> 4) & 1) ? r.kp_vc_hi : r.kp_vc_lo;
    p.ki_vc = ((mask >> 5) & 1) ? r.ki_vc_hi : r.ki_vc_lo;
    return p;
}

std::vector<AssetParams> corner_params(const AssetParams& base, const AssetParamRanges& r) {
    std::vector<AssetParams> out;
    out.reserve(64);
    for (int mask = 0; mask < 64; ++mask) out.push_back(corner_params_at(base, mask, r));
    return out;
}

double droop_response(double f_hz, double f_nom_hz, const DroopSettings& s) {
    if (!s.enabled) return 0.0;
    const double df = f_hz - f_nom_hz;
    const double mag = std::max(std::abs(df) - s.deadband_hz, 0.0);
    const double err = (df >= 0.0) ? mag : -mag;
    const double p = -(err / f_nom_hz) / s.droop;
    return std::clamp(p, -s.reserve_down_pu, s.reserve_up_pu);
}

double FfrUnit::step(double f_hz, double f_nom_hz, double dt) {
    if (!s_.enabled) return 0.0;
    const double df = f_hz - f_nom_hz;
    switch (phase_) {
        case Phase::Armed:
            if (df < -s_.threshold_hz) {
                phase_ = Phase::Rise;
                sign_ = 1.0;
                t_ = 0.0;
            } else if (df > s_.threshold_hz) {
                phase_ = Phase::Rise;
                sign_ = -1.0;
                t_ = 0.0;
            }
            break;
        case Phase::Spent:
            // Re-arm only once frequency has recovered into the no-response
            // band; re-arming at the trigger level itself lets the withdrawal
            // transient re-trigger the unit and lock it into a delivery cycle.
            if (std::abs(df) <= s_.rearm_band_hz) phase_ = Phase::Armed;
            break;
        default:
            break;
    }
    double out = 0.0;
    switch (phase_) {
        case Phase::Rise:
            out = (s_.t_rise_s > 0.0) ? s_.power_pu * std::min(t_ / s_.t_rise_s, 1.0)
                                      : s_.power_pu;
            t_ += dt;
            if (t_ >= s_.t_rise_s) {
                phase_ = Phase::Hold;
                t_ = 0.0;
            }
            break;
        case Phase::Hold:
            out = s_.power_pu;
            t_ += dt;
            if (t_ >= s_.t_hold_s) {
                phase_ = Phase::Fall;
                t_ = 0.0;
            }
            break;
        case Phase::Fall:
            out = (s_.t_fall_s > 0.0)
                      ? s_.power_pu * std::max(1.0 - t_ / s_.t_fall_s, 0.0)
                      : 0.0;
            t_ += dt;
            if (t_ >= s_.t_fall_s) {
                phase_ = Phase::Spent;
                t_ = 0.0;
            }
            break;
        default:
            break;
    }
    return sign_ * out;
}

void FfrUnit::reset() {
    phase_ = Phase::Armed;
    t_ = 0.0;
    sign_ = 0.0;
}

std::pair<double, double> capability_bounds(const AssetParams& p) {
    if (p.kind == AssetKind::EnergyStorage) return {-p.share, p.share};
    return {0.0, p.share * p.available_frac};
}

Asset::Asset(const AssetParams& params, double dt)
    : params_(params),
      command_path_(DiscreteFilter::from_continuous(asset_command_path(params), dt)),
      inner_(DiscreteFilter::from_continuous(asset_inner_dynamics(params), dt)),
      ffr_(params.fc.ffr),
      dt_(dt) {
    std::tie(lo_, hi_) = capability_bounds(params_);
}

double Asset::step(double u_cmd, double f_meas_hz, double f_nom_hz) {
    const double tracked = command_path_.step(u_cmd);
    double fc = droop_response(f_meas_hz, f_nom_hz, params_.fc.droop) +
                ffr_.step(f_meas_hz, f_nom_hz, dt_);
    fc *= params_.fc.delivery_scale;
    fc_power_ = fc;
    const double want = tracked + fc;
    const double clamped = std::clamp(want, lo_, hi_);
    saturated_ = (clamped != want);
    y_ = inner_.step(clamped);
    return y_;
}

void Asset::init_steady(double u0) {
    command_path_.prime(u0);
    inner_.prime(u0);
    ffr_.reset();
    fc_power_ = 0.0;
    saturated_ = false;
    y_ = u0;
}

}  // namespace hfc

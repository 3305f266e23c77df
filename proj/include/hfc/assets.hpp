#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hfc/discrete_filter.hpp"
#include "hfc/transfer_function.hpp"

namespace hfc {

enum class AssetKind { WindTurbine, Photovoltaic, EnergyStorage };

std::string to_string(AssetKind k);
AssetKind asset_kind_from_string(const std::string& s);

/// Droop response: power offset proportional to frequency error outside a
/// deadband, clamped to the scheduled reserve band (per-unit on HPP base).
struct DroopSettings {
    bool enabled = false;
    double deadband_hz = 0.01;
    double droop = 0.04;           // per-unit frequency / per-unit power
    double reserve_up_pu = 0.05;   // max injection above baseline
    double reserve_down_pu = 0.05; // max reduction below baseline
};

/// One-shot trapezoidal fast response: ramp up, hold, ramp down, then re-arm
/// once frequency has re-entered the deadband.
struct FfrSettings {
    bool enabled = false;
    double threshold_hz = 0.2;  // trigger offset from nominal frequency
    double power_pu = 0.05;     // plateau magnitude
    double t_rise_s = 0.5;
    double t_hold_s = 10.0;
    double t_fall_s = 2.0;
    double rearm_band_hz = 0.01;  // |f - f_nom| band required before the unit re-arms
};

struct FcSettings {
    DroopSettings droop;
    FfrSettings ffr;
    double delivery_scale = 1.0;  // <1 models a partial delivery malfunction
};

struct AssetParams {
    AssetKind kind = AssetKind::EnergyStorage;
    std::string name = "ess";
    double share = 1.0;           // capacity as fraction of HPP base power
    double available_frac = 1.0;  // usable fraction of share (resource level)
    // converter-control chain parameters
    double t_cc_msc = 0.0505;
    double t_cc_gsc = 0.0505;
    double kp_pc = 0.10;
    double ki_pc = 10.0;
    double kp_vc = 15.0;
    double ki_vc = 150.0;
    FcSettings fc;
};

/// Outer power-tracking stage: PI loop already closed around the converter
/// power reference, (kp s + ki) / ((1 + kp) s + ki).  Unity DC gain.
TransferFunction asset_command_path(const AssetParams& p);

/// Inner actuation stage from the response-injection point to produced power:
/// machine-side lag, voltage-control resonance, grid-side lag.  Unity DC gain.
TransferFunction asset_inner_dynamics(const AssetParams& p);

/// Full small-signal model from plant power command to produced power.
TransferFunction asset_plant(const AssetParams& p);

struct AssetParamRanges {
    double t_cc_lo = 0.001, t_cc_hi = 0.1;       // both converter lags
    double kp_pc_lo = 0.05, kp_pc_hi = 0.15;
    double ki_pc_lo = 5.0, ki_pc_hi = 15.0;
    double kp_vc_lo = 7.5, kp_vc_hi = 22.5;
    double ki_vc_lo = 75.0, ki_vc_hi = 225.0;
};

/// All 64 corner combinations of the six chain parameters.
std::vector<AssetParams> corner_params(const AssetParams& base,
                                       const AssetParamRanges& r = {});

/// One corner of the six-parameter box: bit i of `mask` (0..63) puts parameter
/// i at its upper bound, order (t_cc_msc, t_cc_gsc, kp_pc, ki_pc, kp_vc, ki_vc).
AssetParams corner_params_at(const AssetParams& base, int mask,
                             const AssetParamRanges& r = {});

/// Produced-power capability [lower, upper] in pu on the HPP base; storage can
/// absorb (negative lower bound), generation cannot.
std::pair<double, double> capability_bounds(const AssetParams& p);

/// Droop power for a measured frequency (pu, positive = inject).
double droop_response(double f_hz, double f_nom_hz, const DroopSettings& s);

/// Trapezoid generator; one instance per asset, stepped at the asset rate.
class FfrUnit {
  public:
    explicit FfrUnit(const FfrSettings& s) : s_(s) {}
    /// Advance by dt and return the commanded power (pu, signed).
    double step(double f_hz, double f_nom_hz, double dt);
    void reset();
    bool active() const { return phase_ != Phase::Armed && phase_ != Phase::Spent; }

  private:
    enum class Phase { Armed, Rise, Hold, Fall, Spent };
    FfrSettings s_;
    Phase phase_ = Phase::Armed;
    double t_ = 0.0;
    double sign_ = 0.0;
};

/// Discrete-time asset runtime: command tracking, local frequency response,
/// capability saturation.  All powers per-unit on the HPP base.
class Asset {
  public:
    Asset(const AssetParams& params, double dt);

    /// Advance one step.  `u_cmd` is the plant-controller power command and
    /// `f_meas_hz` the locally measured frequency; returns produced power.
    double step(double u_cmd, double f_meas_hz, double f_nom_hz);

    /// Prime every internal state so that a constant command u0 (with zero
    /// frequency error) holds the output at u0 exactly.
    void init_steady(double u0);

    bool saturated() const { return saturated_; }
    double fc_power() const { return fc_power_; }  // last injected response power
    double output() const { return y_; }
    double lower_bound() const { return lo_; }
    double upper_bound() const { return hi_; }
    const AssetParams& params() const { return params_; }

  private:
    AssetParams params_;
    DiscreteFilter command_path_;
    DiscreteFilter inner_;
    FfrUnit ffr_;
    double dt_;
    double lo_ = 0.0, hi_ = 1.0;
    bool saturated_ = false;
    double fc_power_ = 0.0;
    double y_ = 0.0;
};

}  // namespace hfc

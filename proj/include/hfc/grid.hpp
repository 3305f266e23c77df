#pragma once

#include "hfc/discrete_filter.hpp"

namespace hfc {

/// Aggregated external grid: swing dynamics with damping, a reheat-style
/// governor/turbine chain for primary response, and an optional integral
/// secondary controller that restores nominal frequency.
struct GridParams {
    double f_nom_hz = 50.0;
    double inertia_h_s = 4.0;   // system inertia constant (s)
    double damping_pu = 1.0;    // load damping, pu power per pu frequency
    double droop_sys = 0.05;    // governor droop, pu frequency per pu power
    double t_gov_s = 0.2;       // governor time constant
    double t_turb_s = 0.5;      // turbine time constant
    double hpp_share = 0.2;     // HPP rating as fraction of system base
    double k_agc = 0.8;         // secondary-control integral gain (1/s)
};

class Grid {
  public:
    Grid(const GridParams& p, double dt);

    /// Advance one step.  `delta_p_hpp_pu` is the HPP output deviation on the
    /// HPP base; `delta_p_load_pu` the load deviation on the system base.
    /// Returns the new frequency in Hz.
    double step(double delta_p_hpp_pu, double delta_p_load_pu, bool agc_enabled);

    double frequency_hz() const { return p_.f_nom_hz * (1.0 + df_); }
    double delta_f_pu() const { return df_; }
    double agc_command_pu() const { return agc_; }
    double conventional_power_pu() const { return p_conv_; }
    const GridParams& params() const { return p_; }

    void reset();

  private:
    GridParams p_;
    double dt_;
    DiscreteFilter governor_;
    double df_ = 0.0;      // frequency deviation, pu
    double agc_ = 0.0;     // secondary-control integral state, pu power
    double p_conv_ = 0.0;  // conventional generation deviation, pu
};

}  // namespace hfc

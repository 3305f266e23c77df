#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hfc/assets.hpp"
#include "hfc/discrete_filter.hpp"
#include "hfc/transfer_function.hpp"

namespace hfc {

/// How a tracking controller coexists with frequency-response power that
/// downstream equipment injects on its own authority:
///  - NoCoordination: track the reference; response power gets fought.
///  - OpenLoop: freeze the controller while scheduled characteristics are
///    active (detected from local frequency and the scheduled settings).
///  - Feedforward: subtract the *expected* response (static characteristics
///    replayed from local frequency) from the measurement.
///  - Observer: subtract an *estimate* of the actually delivered response,
///    formed from the measurement and a nominal model of the commanded path.
enum class Strategy { NoCoordination, OpenLoop, Feedforward, Observer };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

enum class HppMode { Distributed, Centralized };

std::string to_string(HppMode m);
HppMode hpp_mode_from_string(const std::string& s);

/// Discrete PI with conditional integration (integrator holds while the
/// downstream actuator is saturated or the caller freezes it).
class PiController {
  public:
    PiController(double kp, double ki, double dt);
    double update(double error, bool integrate);
    void set_output(double u0);  // steady-state priming: integrator carries u0
    double output() const { return u_; }
    double integrator() const { return integ_; }

  private:
    double kp_, ki_, dt_;
    double integ_ = 0.0;
    double u_ = 0.0;
};

/// Runtime estimator of externally injected power: the measurement minus a
/// nominal model of the commanded path, low-pass filtered.  The command fed
/// in is the one computed on the previous tick (the measurement cannot yet
/// reflect the current one).
class ResponseObserver {
  public:
    ResponseObserver(const TransferFunction& nominal_model, const TransferFunction& q,
                     double dt);
    double update(double y_meas, double u_prev);
    void init_steady(double u0, double y0);
    double estimate() const { return est_; }

  private:
    DiscreteFilter model_;
    DiscreteFilter q_;
    double model_dc_, q_dc_;
    double est_ = 0.0;
};

/// Replays scheduled response characteristics from locally measured
/// frequency: the expected response power and whether any characteristic is
/// currently active.  Used by the OpenLoop and Feedforward strategies.
class FcMirror {
  public:
    FcMirror(std::vector<FcSettings> sources, double dt, double f_nom_hz);
    /// Step all mirrored characteristics and return expected total power.
    double expected(double f_meas_hz);
    bool any_active() const { return active_; }
    void reset();

  private:
    std::vector<FcSettings> sources_;
    std::vector<FfrUnit> ffr_;
    double dt_, f_nom_hz_;
    bool active_ = false;
};

struct PlantControllerConfig {
    double kp = 0.8912509381337459;
    double ki = 1.6788040181225607;
    double period_s = 0.01;
    Strategy strategy = Strategy::NoCoordination;
    TransferFunction nominal_model;       // commanded-path model for the observer
    TransferFunction q;                   // estimate filter
    std::vector<FcSettings> mirrored_fc;  // scheduled characteristics downstream
    double f_nom_hz = 50.0;
};

/// Power-tracking controller of one plant; commands the plant's asset.
class PlantController {
  public:
    explicit PlantController(const PlantControllerConfig& cfg);
    double update(double ref, double y_meas, double f_meas_hz, bool downstream_saturated);
    void init_steady(double u0, double y0);
    double estimate() const { return obs_ ? obs_->estimate() : 0.0; }
    double output() const { return u_prev_; }
    bool frozen() const { return frozen_; }

  private:
    PlantControllerConfig cfg_;
    PiController pi_;
    std::optional<ResponseObserver> obs_;
    FcMirror mirror_;
    double u_prev_ = 0.0;
    bool frozen_ = false;
};

struct HppControllerConfig {
    double kp = 0.5;
    double ki = 0.5;
    double period_s = 0.1;
    Strategy strategy = Strategy::NoCoordination;
    HppMode mode = HppMode::Distributed;
    std::vector<double> dispatch;             // per-plant share of the total command
    std::vector<double> fc_dispatch;          // per-plant share of central response power
    FcSettings fc;                            // central response characteristics
    std::vector<TransferFunction> plant_models;  // closed tracking loop per plant
    TransferFunction q;                       // estimate filter for the plant bank
    std::vector<FcSettings> mirrored_fc;      // downstream characteristics (distributed)
    double f_nom_hz = 50.0;
};

/// Plant-level coordinator: tracks the externally scheduled HPP reference,
/// splits it over plants, and (in centralized mode) generates the response
/// power itself and routes it by fc_dispatch.
class HppController {
  public:
    explicit HppController(const HppControllerConfig& cfg);
    /// `y_meas` are per-plant measured outputs as received (possibly delayed).
    /// Returns the per-plant references to transmit.
    std::vector<double> update(double hpp_ref, const std::vector<double>& y_meas,
                               double f_meas_hz, bool any_saturated);
    void init_steady(double u0, const std::vector<double>& y0);
    double estimate() const { return est_total_; }
    double fc_command() const { return fc_cmd_; }
    double output() const { return u_prev_; }

  private:
    HppControllerConfig cfg_;
    PiController pi_;
    std::vector<ResponseObserver> bank_;
    FcMirror mirror_;      // downstream characteristics (OpenLoop/Feedforward)
    FcMirror own_fc_;      // central characteristics (Centralized mode)
    std::vector<double> base_ref_prev_;  // last transmitted non-response refs
    double u_prev_ = 0.0;
    double est_total_ = 0.0;
    double fc_cmd_ = 0.0;
    bool frozen_ = false;
};

}  // namespace hfc

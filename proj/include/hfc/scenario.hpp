#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "hfc/assets.hpp"
#include "hfc/delay_line.hpp"
#include "hfc/grid.hpp"
#include "hfc/hierarchy.hpp"
#include "hfc/noise.hpp"

namespace hfc {

struct LoadStep {
    double t_s = 0.0;
    double delta_pu = 0.0;  // system-base load change, added to previous level
};

struct RefStep {
    double t_s = 0.0;
    double to_pu = 0.0;  // new HPP reference (HPP base)
};

struct QSpec {
    int degree = 3;
    double cutoff_rad_s = 30.0;
};

struct PlantControllerSpec {
    double kp = 0.8912509381337459;
    double ki = 1.6788040181225607;
    double period_s = 0.01;
    Strategy strategy = Strategy::Observer;
    QSpec q{3, 30.0};
};

struct PlantSpec {
    std::string name = "plant";
    AssetParams asset;
    double dispatch = 1.0;     // share of the HPP command
    double fc_dispatch = 0.0;  // share of centrally generated response power
    PlantControllerSpec controller;
};

struct HppSpec {
    HppMode mode = HppMode::Distributed;
    double reference_pu = 0.9;
    std::vector<RefStep> reference_steps;
    double kp = 0.5;
    double ki = 0.5;
    double period_s = 0.1;
    Strategy strategy = Strategy::Observer;
    QSpec q{3, 5.0};
    FcSettings fc;  // central response characteristics (centralized mode)
};

struct CommSpec {
    DelayProfile hppc_link;   // coordinator <-> plant controllers
    DelayProfile asset_link;  // plant controller -> asset command path
};

struct AgcSpec {
    bool enabled = false;
    double on_t_s = 0.0;
};

struct OutputSpec {
    double stride_s = 0.01;  // recording period
};

struct Scenario {
    int schema_version = 1;
    std::string name = "scenario";
    double duration_s = 600.0;
    double dt_s = 0.001;
    std::uint64_t seed = 1;
    double f_nom_hz = 50.0;
    GridParams grid;
    std::vector<LoadStep> load_steps;
    AgcSpec agc;
    HppSpec hpp;
    std::vector<PlantSpec> plants;
    CommSpec comm;
    NoiseSettings noise;
    OutputSpec output;
};

Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);

/// Throws UnsortedScheduleError for out-of-order schedules, ValidationError
/// (with the full issue list) for everything else.
void validate(const Scenario& s);

/// Read, parse, and validate a scenario file.
Scenario load_scenario(const std::string& path);

/// Apply one sweep assignment to a copy of `base` and re-validate.  Keys:
///   delay       : plant-to-asset command link delay, seconds in [0, 2]
///   hppc_delay  : coordinator link delay, seconds in [0, 2]
///   mode        : distributed | centralized
///   strategy    : none | open_loop | feedforward | observer (all plant
///                 controllers and the coordinator)
///   malfunction : fraction of scheduled response power NOT delivered, [0, 1]
///   corner      : integer 0..63 selecting a vertex of the six-parameter
///                 uncertainty box for every asset (bit i high = parameter i
///                 at its upper bound; order t_cc_msc, t_cc_gsc, kp_pc,
///                 ki_pc, kp_vc, ki_vc)
///   seed        : RNG seed
Scenario apply_sweep_value(const Scenario& base, const std::string& key,
                           const nlohmann::json& value);

/// Directory-name-safe label for one sweep assignment, e.g. "delay_0p5".
std::string sweep_case_label(const std::string& key, const nlohmann::json& value);

}  // namespace hfc

#pragma once

#include <optional>
#include <vector>

#include "hfc/assets.hpp"
#include "hfc/observer_loops.hpp"
#include "hfc/qfilter.hpp"
#include "hfc/robustness.hpp"
#include "hfc/transfer_function.hpp"

namespace hfc {

struct PiGains {
    double kp = 0.0;
    double ki = 0.0;
    double achieved_bw_hz = 0.0;   // closed-loop -3 dB bandwidth
    double achieved_pm_deg = 0.0;  // phase margin at loop gain crossover
    bool pm_met = false;           // phase-margin target reached (soft constraint)
};

/// Deterministic grid search for PI gains on a unity-feedback loop around
/// `plant`.  The bandwidth target is hard (must land within 10%); the phase
/// margin target is soft: among bandwidth-feasible pairs, pairs meeting the
/// margin are preferred (closest bandwidth wins), otherwise the largest-margin
/// pair is returned with pm_met = false.  Throws UnstableResultError when no
/// stabilizing pair reaches the bandwidth window.
PiGains pi_tune(const TransferFunction& plant, double bw_target_hz, double pm_target_deg);

/// Closed-loop -3 dB bandwidth (rad/s) of a stable unity-DC loop; nullopt when
/// |T| never crosses 1/sqrt(2) on the scanned range.
std::optional<double> closed_loop_bandwidth(const TransferFunction& t, double w_min = 1e-3,
                                            double w_max = 1e3);

/// Phase margin (deg) at the first gain crossover of L; nullopt without one.
std::optional<double> phase_margin(const TransferFunction& l, double w_min = 1e-3,
                                   double w_max = 1e3);

/// Band quality of one estimate filter against the nominal design:
/// unity_edge  = largest grid frequency up to which the response-acceptance
///               deviation |G_pdy/(C_A2 G_A) - 1| stays within eps_acc,
/// noise_edge  = smallest grid frequency from which |G_ny| stays within
///               eps_noise * (no-observer noise-path peak).
struct BandEdges {
    int degree = 0;
    double unity_edge_rad_s = 0.0;
    double noise_edge_rad_s = 0.0;
    bool feasible = false;  // unity_edge >= omega_resp and noise_edge <= omega_noise
};

struct QSelection {
    QFilter q;                     // selected filter (template family)
    std::vector<BandEdges> trace;  // edges per degree at the selected cutoff
    double omega_c = 0.0;
    int degree = 0;
};

struct QSelectOptions {
    double omega_resp = 1.0;    // response band upper edge, rad/s
    double omega_noise = 30.0;  // measurement-noise band lower edge, rad/s
    double eps_acc = 0.05;
    double eps_noise = 0.1;
    int max_degree = 6;
    double w_min = 1e-3, w_max = 1e3;
    int points_per_decade = 100;
    double cutoff_span_decades = 2.0;  // cutoff candidates in [omega_noise, omega_noise*10^span]
    int cutoff_points_per_decade = 20;
};

/// Measure band edges for one filter against a design (helper, also used by
/// the acceptance suite).
BandEdges measure_band_edges(const QFilter& q, const TransferFunction& c_p,
                             const TransferFunction& g, const TransferFunction& g_n,
                             const TransferFunction& c_a2_g_a, const QSelectOptions& opt);

/// Estimate-filter selection:
///  1. degree 1; candidate cutoffs ascend from omega_noise on a log grid;
///  2. pick the smallest cutoff whose degree-1 bands meet both targets;
///  3. raise the degree while BOTH band edges strictly improve;
///  4. return the last improving degree at that fixed cutoff.
/// Throws NoFeasibleFilterError when step 2 finds nothing.
QSelection q_select(const TransferFunction& c_p, const TransferFunction& g,
                    const TransferFunction& g_n, const TransferFunction& c_a2_g_a,
                    const QSelectOptions& opt = {});

/// End-to-end control design for one plant around the nominal asset chain:
/// tune the tracking PI, select the estimate filter, and check robustness
/// against parameter corners and command delay.
struct DesignSpec {
    AssetParams nominal_asset{};
    double bw_target_hz = 0.25;
    double pm_target_deg = 150.0;
    QSelectOptions q_opts{};
    double delay_t_max_s = 2.0;
    AssetParamRanges ranges{};
};

struct DesignResult {
    TransferFunction plant;  // full nominal command-to-output model
    TransferFunction inner;  // actuation stage (injection point to output)
    PiGains gains;
    QSelection selection;
    RobustnessReport corner_check;
    RobustnessReport delay_check;
};

DesignResult run_design(const DesignSpec& spec = {});

}  // namespace hfc

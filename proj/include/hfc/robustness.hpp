#pragma once

#include <vector>

#include "hfc/transfer_function.hpp"

namespace hfc {

struct RobustnessGrid {
    double w_min = 1e-3;
    double w_max = 1e3;
    int n_points = 400;
};

/// Small-gain check of an estimate loop against multiplicative plant
/// uncertainty: the loop tolerates every perturbation G = G_n (1 + M) with
/// |M(jw)| <= envelope(w) iff envelope(w) < |1 + 1/L(jw)| for all w.
struct RobustnessReport {
    std::vector<double> omega_rad_s;
    std::vector<double> envelope_mag;  // sampled uncertainty bound |M|
    std::vector<double> weight_mag;    // smooth weight overlay (dominates envelope)
    std::vector<double> margin_mag;    // |1 + 1/L|
    TransferFunction weight;           // the smooth bound as a transfer function
    double min_margin_ratio = 0.0;     // min over grid of margin/envelope
    double min_margin_omega = 0.0;     // where that minimum occurs
    bool satisfied = false;            // envelope < margin at every grid point
};

std::vector<double> robustness_frequencies(const RobustnessGrid& grid);

/// Envelope from explicit perturbed models: max over models of |G/G_n - 1|.
std::vector<double> uncertainty_envelope(const TransferFunction& nominal,
                                         const std::vector<TransferFunction>& perturbed,
                                         const std::vector<double>& omega);

/// Envelope of a pure input delay up to t_max seconds:
/// |e^{-jwT} - 1| <= 2 sin(w t_max / 2) (capped at 2 once w t_max >= pi).
std::vector<double> delay_envelope(double t_max, const std::vector<double>& omega);

/// First-order lead k (1 + s/z) / (1 + s/p) fitted to the envelope by
/// least squares on log magnitude, then scaled up to dominate it everywhere.
TransferFunction fit_lead_weight(const std::vector<double>& omega,
                                 const std::vector<double>& envelope);

/// Delay weight k t_max s / (t_max s / 3.5 + 1) with k chosen to dominate the
/// sampled delay envelope; throws WeightFitError when k would exceed 10.
TransferFunction fit_delay_weight(double t_max, const std::vector<double>& omega,
                                  const std::vector<double>& envelope);

/// Full check against explicit perturbed models (e.g. parameter corners).
/// `loop` is the estimate-loop transfer evaluated on the nominal plant.
RobustnessReport robust_check_models(const TransferFunction& loop,
                                     const TransferFunction& nominal,
                                     const std::vector<TransferFunction>& perturbed,
                                     const RobustnessGrid& grid = {});

/// Full check against an input delay of up to t_max seconds.
RobustnessReport robust_check_delay(const TransferFunction& loop, double t_max,
                                    const RobustnessGrid& grid = {});

}  // namespace hfc

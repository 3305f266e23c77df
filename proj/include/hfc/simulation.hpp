#pragma once

#include <optional>
#include <string>

#include "hfc/record.hpp"
#include "hfc/scenario.hpp"

namespace hfc {

struct SimOptions {
    std::optional<std::uint64_t> seed_override;
    std::optional<bool> noise_override;
    std::optional<double> dt_override;
};

struct SimResult {
    Record record;
    bool diverged = false;
    double diverged_t_s = 0.0;
    std::string divergence_reason;
};

/// Run one scenario.  Channels recorded every output stride:
///   t_s, f_hz, p_load_pu, p_conv_pu, agc_pu, hpp_ref_pu, p_hpp_pu,
///   hppc_u_pu, hppc_fc_pu, hppc_est_pu,
/// and per plant <name>: _ref_pu, _cmd_pu, _p_pu, _fc_pu, _est_pu, _sat.
/// All signals are true (noise-free) quantities; noise enters only the
/// controllers' measurements.  A detected divergence stops the run early and
/// is reported in the result rather than thrown.
SimResult simulate(const Scenario& scenario, const SimOptions& opt = {});

}  // namespace hfc

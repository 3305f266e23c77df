#include "hfc/design.hpp"

namespace hfc {

DesignResult run_design(const DesignSpec& spec) {
    DesignResult r;
    r.plant = asset_plant(spec.nominal_asset);
    r.inner = asset_inner_dynamics(spec.nominal_asset);
    r.gains = pi_tune(r.plant, spec.bw_target_hz, spec.pm_target_deg);
    const TransferFunction c_p = TransferFunction::pi(r.gains.kp, r.gains.ki);
    r.selection = q_select(c_p, r.plant, r.plant, r.inner, spec.q_opts);

    const TransferFunction loop = observer_loop_transfer(r.selection.q, c_p, r.plant, r.plant);
    std::vector<TransferFunction> corners;
    corners.reserve(64);
    for (const auto& p : corner_params(spec.nominal_asset, spec.ranges))
        corners.push_back(asset_plant(p));
    r.corner_check = robust_check_models(loop, r.plant, corners);
    r.delay_check = robust_check_delay(loop, spec.delay_t_max_s);
    return r;
}

}  // namespace hfc

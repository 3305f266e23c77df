#include "hfc/grid.hpp"

#include "hfc/transfer_function.hpp"

namespace hfc {

namespace {

TransferFunction governor_chain(const GridParams& p) {
    return series(TransferFunction::first_order_lag(p.t_gov_s),
                  TransferFunction::first_order_lag(p.t_turb_s));
}

}  // namespace

Grid::Grid(const GridParams& p, double dt)
    : p_(p), dt_(dt), governor_(DiscreteFilter::from_continuous(governor_chain(p), dt)) {}

double Grid::step(double delta_p_hpp_pu, double delta_p_load_pu, bool agc_enabled) {
    if (agc_enabled) agc_ += dt_ * (-p_.k_agc * df_);
    p_conv_ = governor_.step(-df_ / p_.droop_sys + agc_);
    const double accel = (p_conv_ + p_.hpp_share * delta_p_hpp_pu - delta_p_load_pu -
                          p_.damping_pu * df_) /
                         (2.0 * p_.inertia_h_s);
    df_ += dt_ * accel;
    return frequency_hz();
}

void Grid::reset() {
    df_ = 0.0;
    agc_ = 0.0;
    p_conv_ = 0.0;
    governor_.prime(0.0);
}

}  // namespace hfc

#pragma once

#include "hfc/qfilter.hpp"
#include "hfc/transfer_function.hpp"

namespace hfc {

/// Closed-loop transfer functions of a power-tracking loop equipped with a
/// response observer.  The observer estimates the frequency-response power
/// riding on top of the tracked setpoint as
///     y_hat = Q (y_m - G_n u)
/// and the estimate is *added back* to the controller input, so the tracking
/// loop accepts the response instead of dispatching against it.
///
/// With plant controller C_p, true command path G, model G_n, estimate filter
/// Q and response injection path C_A2*G_A, every loop shares the denominator
///     Delta = 1 + Q C_p G_n - Q C_p G + C_p G.
struct LoopSet {
    TransferFunction g_yry;  // setpoint -> output:    C_p G / Delta
    TransferFunction g_pdy;  // response -> output:    C_A2 G_A (1 + Q C_p G_n) / Delta
    TransferFunction g_ny;   // meas noise -> output: -(1 - Q) C_p G / Delta
};

LoopSet observer_closed_loops(const TransferFunction& c_p, const TransferFunction& g,
                              const TransferFunction& g_n, const QFilter& q,
                              const TransferFunction& c_a2_g_a);

/// Equivalent open-loop transfer seen by the stability margin analysis:
///     L = (1 - Q) C_p G / (1 + Q G_n C_p).
TransferFunction observer_loop_transfer(const QFilter& q, const TransferFunction& c_p,
                                        const TransferFunction& g,
                                        const TransferFunction& g_n);

/// Tracking loop without an observer: C_p G / (1 + C_p G).  This is also the
/// no-observer measurement-noise path (up to sign).
TransferFunction plain_tracking_loop(const TransferFunction& c_p, const TransferFunction& g);

}  // namespace hfc

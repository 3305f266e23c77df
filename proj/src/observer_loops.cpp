#include "hfc/observer_loops.hpp"

#include "hfc/errors.hpp"
#include "hfc/polynomial.hpp"

namespace hfc {

LoopSet observer_closed_loops(const TransferFunction& c_p, const TransferFunction& g,
                              const TransferFunction& g_n, const QFilter& q,
                              const TransferFunction& c_a2_g_a) {
    using namespace poly;
    const auto &nc = c_p.num(), &dc = c_p.den();
    const auto &ng = g.num(), &dg = g.den();
    const auto &nn = g_n.num(), &dn = g_n.den();
    const auto &nq = q.tf.num(), &dq = q.tf.den();
    const auto &np = c_a2_g_a.num(), &dp = c_a2_g_a.den();

    // Delta over the common denominator dq*dc*dn*dg:
    //   dq dc dn dg + nq nc nn dg - nq nc ng dn + nc ng dq dn
    const auto nqnc = mul(nq, nc);
    auto delta = mul(mul(dq, dc), mul(dn, dg));
    delta = add(delta, mul(nqnc, mul(nn, dg)));
    delta = sub(delta, mul(nqnc, mul(ng, dn)));
    delta = add(delta, mul(mul(nc, ng), mul(dq, dn)));
    if (is_zero(delta)) throw ZeroDenominatorError("observer loop denominator collapsed to zero");

    LoopSet out;
    out.g_yry = TransferFunction(mul(mul(nc, ng), mul(dq, dn)), delta);
    // (1 + Q C_p G_n) over dq dc dn, then times C_A2 G_A and the leftover dg
    const auto one_plus = add(mul(dq, mul(dc, dn)), mul(nqnc, nn));
    out.g_pdy = TransferFunction(mul(np, mul(one_plus, dg)), mul(dp, delta));
    // -(1 - Q) C_p G = -(dq - nq)/dq * nc ng/(dc dg); over the common den the
    // dq cancels against the dn*... bookkeeping: numerator -(dq-nq) nc ng dn
    out.g_ny = TransferFunction(scale(mul(sub(dq, nq), mul(nc, mul(ng, dn))), -1.0), delta);
    return out;
}

TransferFunction observer_loop_transfer(const QFilter& q, const TransferFunction& c_p,
                                        const TransferFunction& g,
                                        const TransferFunction& g_n) {
    using namespace poly;
    const auto &nc = c_p.num(), &dc = c_p.den();
    const auto &ng = g.num(), &dg = g.den();
    const auto &nn = g_n.num(), &dn = g_n.den();
    const auto &nq = q.tf.num(), &dq = q.tf.den();
    // (1-Q) C_p G / (1 + Q G_n C_p)
    //   = (dq - nq) nc ng dn / (dg (dq dn dc + nq nn nc))
    auto num = mul(sub(dq, nq), mul(nc, mul(ng, dn)));
    auto den = mul(dg, add(mul(dq, mul(dn, dc)), mul(nq, mul(nn, nc))));
    if (is_zero(den)) throw ZeroDenominatorError("loop transfer denominator collapsed to zero");
    return {num, den};
}

TransferFunction plain_tracking_loop(const TransferFunction& c_p, const TransferFunction& g) {
    return feedback_unity(series(c_p, g));
}

}  // namespace hfc

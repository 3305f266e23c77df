#include <cmath>
#include <string>
#include <vector>

#include "hfc/bode.hpp"
#include "hfc/design.hpp"
#include "hfc/errors.hpp"

namespace hfc {

namespace {

struct Grid {
    std::vector<double> w;
};

Grid make_grid(const QSelectOptions& opt) {
    Grid g;
    g.w = log_grid(opt.w_min, opt.w_max, opt.points_per_decade);
    return g;
}

// Peak magnitude of the plain (no-observer) noise path C_p G / (1 + C_p G):
// the reference level against which estimate-filter noise leakage is judged.
double noise_reference(const TransferFunction& c_p, const TransferFunction& g, const Grid& grid) {
    const TransferFunction t = plain_tracking_loop(c_p, g);
    double peak = 0.0;
    for (double w : grid.w) peak = std::max(peak, std::abs(t.eval(w)));
    return peak;
}

}  // namespace

BandEdges measure_band_edges(const QFilter& q, const TransferFunction& c_p,
                             const TransferFunction& g, const TransferFunction& g_n,
                             const TransferFunction& c_a2_g_a, const QSelectOptions& opt) {
    const Grid grid = make_grid(opt);
    const LoopSet loops = observer_closed_loops(c_p, g, g_n, q, c_a2_g_a);
    const double noise_ref = noise_reference(c_p, g, grid);

    BandEdges be;
    be.degree = q.degree;

    // Unity band: |G_pdy / (C_A2 G_A) - 1| <= eps_acc from the low end up.
    {
        std::size_t last_ok = 0;
        bool violated = false;
        for (std::size_t i = 0; i < grid.w.size(); ++i) {
            const double w = grid.w[i];
            const auto ratio = loops.g_pdy.eval(w) / c_a2_g_a.eval(w);
            const double dev = std::abs(ratio - 1.0);
            if (dev > opt.eps_acc) {
                violated = true;
                break;
            }
            last_ok = i;
        }
        be.unity_edge_rad_s = violated ? grid.w[last_ok] : grid.w.back();
        if (!violated) be.unity_edge_rad_s = grid.w.back();
    }

    // Noise band: |G_ny| <= eps_noise * noise_ref from the high end down.
    {
        std::size_t first_ok = grid.w.size();  // sentinel: never ok
        for (std::size_t i = grid.w.size(); i-- > 0;) {
            const double mag = std::abs(loops.g_ny.eval(grid.w[i]));
            if (mag > opt.eps_noise * noise_ref) break;
            first_ok = i;
        }
        be.noise_edge_rad_s =
            (first_ok == grid.w.size()) ? grid.w.back() * 10.0 : grid.w[first_ok];
    }

    be.feasible =
        be.unity_edge_rad_s >= opt.omega_resp && be.noise_edge_rad_s <= opt.omega_noise;
    return be;
}

QSelection q_select(const TransferFunction& c_p, const TransferFunction& g,
                    const TransferFunction& g_n, const TransferFunction& c_a2_g_a,
                    const QSelectOptions& opt) {
    if (!(opt.omega_resp < opt.omega_noise))
        throw NoFeasibleFilterError(
            "q_select: omega_resp (" + std::to_string(opt.omega_resp) +
            " rad/s) must lie strictly below omega_noise (" +
            std::to_string(opt.omega_noise) +
            " rad/s); the response band cannot overlap the noise band");
    // Cutoff candidates ascend from the noise-band edge: the slowest filter
    // that still clears the noise target keeps the widest response band.
    const int n_cand =
        static_cast<int>(std::lround(opt.cutoff_span_decades * opt.cutoff_points_per_decade)) + 1;
    double chosen_wc = -1.0;
    BandEdges first_edges;
    for (int k = 0; k < n_cand; ++k) {
        const double wc =
            opt.omega_noise *
            std::pow(10.0, static_cast<double>(k) / opt.cutoff_points_per_decade);
        const BandEdges be = measure_band_edges(selection_q(1, wc), c_p, g, g_n, c_a2_g_a, opt);
        if (be.feasible) {
            chosen_wc = wc;
            first_edges = be;
            break;
        }
    }
    if (chosen_wc < 0.0)
        throw NoFeasibleFilterError(
            "q_select: no cutoff meets both band targets at degree 1; relax the band "
            "specification or widen the cutoff search span");

    QSelection sel;
    sel.omega_c = chosen_wc;
    sel.trace.push_back(first_edges);
    int degree = 1;
    BandEdges cur = first_edges;
    while (degree < opt.max_degree) {
        const BandEdges next =
            measure_band_edges(selection_q(degree + 1, chosen_wc), c_p, g, g_n, c_a2_g_a, opt);
        sel.trace.push_back(next);
        const bool improves = next.unity_edge_rad_s > cur.unity_edge_rad_s &&
                              next.noise_edge_rad_s < cur.noise_edge_rad_s;
        if (!improves) break;
        ++degree;
        cur = next;
    }
    sel.degree = degree;
    sel.q = selection_q(degree, chosen_wc);
    return sel;
}

}  // namespace hfc

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hfc/errors.hpp"
#include "hfc/robustness.hpp"

namespace hfc {

namespace {

constexpr double kDominateScale = 1.001;
constexpr double kFloor = 1e-300;

std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    const double llo = std::log10(lo), lhi = std::log10(hi);
    for (int i = 0; i < n; ++i) {
        double t = (n == 1) ? 0.0 : static_cast<double>(i) / (n - 1);
        out[static_cast<std::size_t>(i)] = std::pow(10.0, llo + t * (lhi - llo));
    }
    return out;
}

RobustnessReport assemble(const TransferFunction& loop, const std::vector<double>& omega,
                          std::vector<double> envelope, TransferFunction weight) {
    RobustnessReport rep;
    rep.omega_rad_s = omega;
    rep.envelope_mag = std::move(envelope);
    rep.weight = std::move(weight);
    rep.weight_mag.reserve(omega.size());
    rep.margin_mag.reserve(omega.size());
    rep.satisfied = true;
    rep.min_margin_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < omega.size(); ++i) {
        const double w = omega[i];
        rep.weight_mag.push_back(std::abs(rep.weight.eval(w)));
        const auto l = loop.eval(w);
        const double margin = std::abs(1.0 + 1.0 / l);
        rep.margin_mag.push_back(margin);
        const double env = rep.envelope_mag[i];
        if (env >= margin) rep.satisfied = false;
        if (env > kFloor) {
            const double ratio = margin / env;
            if (ratio < rep.min_margin_ratio) {
                rep.min_margin_ratio = ratio;
                rep.min_margin_omega = w;
            }
        }
    }
    return rep;
}

}  // namespace

std::vector<double> robustness_frequencies(const RobustnessGrid& grid) {
    return logspace(grid.w_min, grid.w_max, grid.n_points);
}

std::vector<double> uncertainty_envelope(const TransferFunction& nominal,
                                         const std::vector<TransferFunction>& perturbed,
                                         const std::vector<double>& omega) {
    std::vector<double> env(omega.size(), 0.0);
    for (std::size_t i = 0; i < omega.size(); ++i) {
        const auto gn = nominal.eval(omega[i]);
        for (const auto& g : perturbed) {
            env[i] = std::max(env[i], std::abs(g.eval(omega[i]) / gn - 1.0));
        }
    }
    return env;
}

std::vector<double> delay_envelope(double t_max, const std::vector<double>& omega) {
    std::vector<double> env(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i) {
        const double wt = omega[i] * t_max;
        env[i] = (wt >= std::numbers::pi) ? 2.0 : 2.0 * std::sin(wt / 2.0);
    }
    return env;
}

TransferFunction fit_lead_weight(const std::vector<double>& omega,
                                 const std::vector<double>& envelope) {
    if (omega.empty() || omega.size() != envelope.size())
        throw WeightFitError("fit_lead_weight: empty or mismatched grids");
    for (double e : envelope)
        if (!(e > 0.0))
            throw WeightFitError("fit_lead_weight: envelope must be strictly positive");

    const auto corners = logspace(1e-2, 1e3, 51);
    double best_cost = std::numeric_limits<double>::infinity();
    double best_z = 0.0, best_p = 0.0, best_k = 1.0;
    std::vector<double> log_lead(omega.size());
    for (double z : corners) {
        for (double p : corners) {
            if (p <= z) continue;  // lead: zero below pole
            double mean_diff = 0.0;
            for (std::size_t i = 0; i < omega.size(); ++i) {
                const double w = omega[i];
                const double lead =
                    0.5 * (std::log1p((w / z) * (w / z)) - std::log1p((w / p) * (w / p)));
                log_lead[i] = lead;
                mean_diff += std::log(envelope[i]) - lead;
            }
            mean_diff /= static_cast<double>(omega.size());
            double cost = 0.0;
            for (std::size_t i = 0; i < omega.size(); ++i) {
                const double r = std::log(envelope[i]) - (log_lead[i] + mean_diff);
                cost += r * r;
            }
            if (cost < best_cost) {
                best_cost = cost;
                best_z = z;
                best_p = p;
                best_k = std::exp(mean_diff);
            }
        }
    }
    if (!(best_cost < std::numeric_limits<double>::infinity()))
        throw WeightFitError("fit_lead_weight: no corner pair admissible");

    // Scale the least-squares fit up until it dominates the envelope.
    TransferFunction w1({best_k, best_k / best_z}, {1.0, 1.0 / best_p});
    double max_ratio = 0.0;
    for (std::size_t i = 0; i < omega.size(); ++i)
        max_ratio = std::max(max_ratio, envelope[i] / std::abs(w1.eval(omega[i])));
    return TransferFunction({best_k * max_ratio * kDominateScale,
                             best_k * max_ratio * kDominateScale / best_z},
                            {1.0, 1.0 / best_p});
}

TransferFunction fit_delay_weight(double t_max, const std::vector<double>& omega,
                                  const std::vector<double>& envelope) {
    if (!(t_max > 0.0)) throw WeightFitError("fit_delay_weight: t_max must be positive");
    // |W| with k = 1: t_max w / sqrt((t_max w / 3.5)^2 + 1)
    double k = 0.0;
    for (std::size_t i = 0; i < omega.size(); ++i) {
        const double tw = t_max * omega[i];
        const double base = tw / std::sqrt(tw * tw / (3.5 * 3.5) + 1.0);
        if (base > 0.0) k = std::max(k, envelope[i] / base);
    }
    k *= kDominateScale;
    if (k > 10.0)
        throw WeightFitError("fit_delay_weight: envelope requires weight gain above 10");
    return TransferFunction({0.0, k * t_max}, {1.0, t_max / 3.5});
}

RobustnessReport robust_check_models(const TransferFunction& loop,
                                     const TransferFunction& nominal,
                                     const std::vector<TransferFunction>& perturbed,
                                     const RobustnessGrid& grid) {
    const auto omega = robustness_frequencies(grid);
    auto env = uncertainty_envelope(nominal, perturbed, omega);
    // Guard exact zeros (perturbed == nominal) before the log-domain fit.
    double min_pos = std::numeric_limits<double>::infinity();
    for (double e : env)
        if (e > 0.0) min_pos = std::min(min_pos, e);
    if (!(min_pos < std::numeric_limits<double>::infinity()))
        throw WeightFitError("robust_check_models: envelope identically zero");
    for (double& e : env) e = std::max(e, min_pos * 1e-6);
    auto weight = fit_lead_weight(omega, env);
    return assemble(loop, omega, std::move(env), std::move(weight));
}

RobustnessReport robust_check_delay(const TransferFunction& loop, double t_max,
                                    const RobustnessGrid& grid) {
    const auto omega = robustness_frequencies(grid);
    auto env = delay_envelope(t_max, omega);
    auto weight = fit_delay_weight(t_max, omega, env);
    return assemble(loop, omega, std::move(env), std::move(weight));
}

}  // namespace hfc

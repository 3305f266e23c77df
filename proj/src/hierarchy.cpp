#include <numeric>

#include "hfc/errors.hpp"
#include "hfc/hierarchy.hpp"

namespace hfc {

std::string to_string(Strategy s) {
    switch (s) {
        case Strategy::NoCoordination: return "none";
        case Strategy::OpenLoop: return "open_loop";
        case Strategy::Feedforward: return "feedforward";
        case Strategy::Observer: return "observer";
    }
    return "?";
}

Strategy strategy_from_string(const std::string& s) {
    if (s == "none") return Strategy::NoCoordination;
    if (s == "open_loop") return Strategy::OpenLoop;
    if (s == "feedforward") return Strategy::Feedforward;
    if (s == "observer") return Strategy::Observer;
    throw ValidationError({"unknown strategy: " + s});
}

std::string to_string(HppMode m) {
    return m == HppMode::Distributed ? "distributed" : "centralized";
}

HppMode hpp_mode_from_string(const std::string& s) {
    if (s == "distributed") return HppMode::Distributed;
    if (s == "centralized") return HppMode::Centralized;
    throw ValidationError({"unknown hpp mode: " + s});
}

PiController::PiController(double kp, double ki, double dt) : kp_(kp), ki_(ki), dt_(dt) {}

double PiController::update(double error, bool integrate) {
    if (integrate) integ_ += ki_ * dt_ * error;
    u_ = kp_ * error + integ_;
    return u_;
}

void PiController::set_output(double u0) {
    integ_ = u0;
    u_ = u0;
}

ResponseObserver::ResponseObserver(const TransferFunction& nominal_model,
                                   const TransferFunction& q, double dt)
    : model_(DiscreteFilter::from_continuous(nominal_model, dt)),
      q_(DiscreteFilter::from_continuous(q, dt)),
      model_dc_(nominal_model.dc_gain()),
      q_dc_(q.dc_gain()) {}

double ResponseObserver::update(double y_meas, double u_prev) {
    const double y_nominal = model_.step(u_prev);
    est_ = q_.step(y_meas - y_nominal);
    return est_;
}

void ResponseObserver::init_steady(double u0, double y0) {
    model_.prime(u0);
    const double innovation = y0 - model_dc_ * u0;
    q_.prime(innovation);
    est_ = q_dc_ * innovation;
}

FcMirror::FcMirror(std::vector<FcSettings> sources, double dt, double f_nom_hz)
    : sources_(std::move(sources)), dt_(dt), f_nom_hz_(f_nom_hz) {
    ffr_.reserve(sources_.size());
    for (const auto& s : sources_) ffr_.emplace_back(s.ffr);
}

double FcMirror::expected(double f_meas_hz) {
    double total = 0.0;
    bool latched = false;
    for (std::size_t i = 0; i < sources_.size(); ++i) {
        total += droop_response(f_meas_hz, f_nom_hz_, sources_[i].droop);
        total += ffr_[i].step(f_meas_hz, f_nom_hz_, dt_);
        latched = latched || ffr_[i].active();
    }
    active_ = latched || total != 0.0;
    return total;
}

void FcMirror::reset() {
    for (auto& u : ffr_) u.reset();
    active_ = false;
}

PlantController::PlantController(const PlantControllerConfig& cfg)
    : cfg_(cfg),
      pi_(cfg.kp, cfg.ki, cfg.period_s),
      mirror_(cfg.mirrored_fc, cfg.period_s, cfg.f_nom_hz) {
    if (cfg_.strategy == Strategy::Observer) {
        if (cfg_.nominal_model.is_zero() || cfg_.q.is_zero())
            throw ValidationError({"plant controller: observer strategy needs a nominal "
                                   "model and an estimate filter"});
        obs_.emplace(cfg_.nominal_model, cfg_.q, cfg_.period_s);
    }
}

double PlantController::update(double ref, double y_meas, double f_meas_hz,
                               bool downstream_saturated) {
    double est = 0.0;
    if (obs_) est = obs_->update(y_meas, u_prev_);

    double expected = 0.0;
    if (cfg_.strategy == Strategy::OpenLoop || cfg_.strategy == Strategy::Feedforward)
        expected = mirror_.expected(f_meas_hz);

    double fb = y_meas;
    frozen_ = false;
    switch (cfg_.strategy) {
        case Strategy::NoCoordination:
            break;
        case Strategy::OpenLoop:
            frozen_ = mirror_.any_active();
            break;
        case Strategy::Feedforward:
            fb = y_meas - expected;
            break;
        case Strategy::Observer:
            fb = y_meas - est;
            break;
    }

    const double u = frozen_ ? pi_.output() : pi_.update(ref - fb, !downstream_saturated);
    u_prev_ = u;
    return u;
}

void PlantController::init_steady(double u0, double y0) {
    pi_.set_output(u0);
    if (obs_) obs_->init_steady(u0, y0);
    mirror_.reset();
    u_prev_ = u0;
    frozen_ = false;
}

HppController::HppController(const HppControllerConfig& cfg)
    : cfg_(cfg),
      pi_(cfg.kp, cfg.ki, cfg.period_s),
      mirror_(cfg.mirrored_fc, cfg.period_s, cfg.f_nom_hz),
      own_fc_({cfg.fc}, cfg.period_s, cfg.f_nom_hz) {
    const std::size_t n = cfg_.dispatch.size();
    if (n == 0) throw ValidationError({"hpp controller: no plants"});
    if (cfg_.fc_dispatch.size() != n)
        throw ValidationError({"hpp controller: fc_dispatch size mismatch"});
    if (cfg_.strategy == Strategy::Observer) {
        if (cfg_.plant_models.size() != n)
            throw ValidationError({"hpp controller: observer strategy needs one plant "
                                   "model per plant"});
        bank_.reserve(n);
        for (const auto& m : cfg_.plant_models)
            bank_.emplace_back(m, cfg_.q, cfg_.period_s);
    }
    base_ref_prev_.assign(n, 0.0);
}

std::vector<double> HppController::update(double hpp_ref, const std::vector<double>& y_meas,
                                          double f_meas_hz, bool any_saturated) {
    const std::size_t n = cfg_.dispatch.size();
    if (y_meas.size() != n)
        throw ValidationError({"hpp controller: measurement vector size mismatch"});
    const double y_total = std::accumulate(y_meas.begin(), y_meas.end(), 0.0);

    fc_cmd_ = (cfg_.mode == HppMode::Centralized) ? own_fc_.expected(f_meas_hz) : 0.0;

    est_total_ = 0.0;
    if (!bank_.empty())
        for (std::size_t j = 0; j < n; ++j)
            est_total_ += bank_[j].update(y_meas[j], base_ref_prev_[j]);

    double expected = 0.0;
    const bool needs_mirror =
        cfg_.strategy == Strategy::OpenLoop || cfg_.strategy == Strategy::Feedforward;
    if (needs_mirror) {
        expected = mirror_.expected(f_meas_hz);
        // In centralized mode the expectation is the controller's own command.
        if (cfg_.mode == HppMode::Centralized) expected = fc_cmd_;
    }

    double fb = y_total;
    frozen_ = false;
    switch (cfg_.strategy) {
        case Strategy::NoCoordination:
            break;
        case Strategy::OpenLoop:
            frozen_ = (cfg_.mode == HppMode::Centralized) ? (fc_cmd_ != 0.0 ||
                                                             own_fc_.any_active())
                                                          : mirror_.any_active();
            break;
        case Strategy::Feedforward:
            fb = y_total - expected;
            break;
        case Strategy::Observer:
            fb = y_total - est_total_;
            break;
    }

    const double u =
        frozen_ ? pi_.output() : pi_.update(hpp_ref - fb, !any_saturated);
    u_prev_ = u;

    std::vector<double> refs(n);
    for (std::size_t j = 0; j < n; ++j) {
        base_ref_prev_[j] = cfg_.dispatch[j] * u;
        refs[j] = base_ref_prev_[j] + cfg_.fc_dispatch[j] * fc_cmd_;
    }
    return refs;
}

void HppController::init_steady(double u0, const std::vector<double>& y0) {
    const std::size_t n = cfg_.dispatch.size();
    if (y0.size() != n)
        throw ValidationError({"hpp controller: init vector size mismatch"});
    pi_.set_output(u0);
    for (std::size_t j = 0; j < n; ++j) {
        base_ref_prev_[j] = cfg_.dispatch[j] * u0;
        if (!bank_.empty()) bank_[j].init_steady(base_ref_prev_[j], y0[j]);
    }
    mirror_.reset();
    own_fc_.reset();
    u_prev_ = u0;
    est_total_ = 0.0;
    fc_cmd_ = 0.0;
    frozen_ = false;
}

}  // namespace hfc

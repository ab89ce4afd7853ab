#include "dpsim/tdse.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dpsim/errors.hpp"

namespace dpsim {
namespace {

constexpr double kPi = std::numbers::pi;

// Two propagator columns (4 complex amplitudes) followed by D.
using State = std::array<double, 9>;
constexpr std::size_t kAmplitudeComponents = 8;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

State initial_state() {
    State y{};
    y[0] = 1.0; // U00
    y[6] = 1.0; // U11
    return y;
}

// dc/dt = -i H c for both columns; dD/dt = Delta.
struct SchroedingerRhs {
    void operator()(const Controls& h, const State& y, State& dy) const {
        const double om = 0.5 * h.rabi, de = 0.5 * h.detuning;
        for (std::size_t col = 0; col < 2; ++col) {
            const std::size_t o = 4 * col;
            const cplx c1{y[o], y[o + 1]}, c2v{y[o + 2], y[o + 3]};
            const cplx d1 = cplx{0.0, -1.0} * (-de * c1 + om * c2v);
            const cplx d2 = cplx{0.0, -1.0} * (om * c1 + de * c2v);
            dy[o] = d1.real();
            dy[o + 1] = d1.imag();
            dy[o + 2] = d2.real();
            dy[o + 3] = d2.imag();
        }
        dy[8] = h.detuning;
    }
};

// Zero diagonal, coupling Omega e^{-iD} above and Omega e^{iD} below.
struct InteractionRhs {
    void operator()(const Controls& h, const State& y, State& dy) const {
        const double om = 0.5 * h.rabi;
        const cplx up = om * std::polar(1.0, -y[8]);
        const cplx down = std::conj(up);
        for (std::size_t col = 0; col < 2; ++col) {
            const std::size_t o = 4 * col;
            const cplx c1{y[o], y[o + 1]}, c2v{y[o + 2], y[o + 3]};
            const cplx d1 = cplx{0.0, -1.0} * (up * c2v);
            const cplx d2 = cplx{0.0, -1.0} * (down * c1);
            dy[o] = d1.real();
            dy[o + 1] = d1.imag();
            dy[o + 2] = d2.real();
            dy[o + 3] = d2.imag();
        }
        dy[8] = h.detuning;
    }
};

template <class Rhs>
class Stepper {
public:
    Stepper(const HamiltonianSampler& s, Rhs rhs) : sampler_(s), rhs_(rhs) {}

    // One Dormand-Prince step from (t, y) with k1 = f(t, y) known. Fills the
    // fifth-order solution, its error estimate and k7 = f(t+h, y5).
    void step(std::size_t zone, double t, double h, const State& y, const State& k1, State& y5, State& err,
              State& k7) const {
        State k2, k3, k4, k5, k6, tmp;
        for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + h * a21 * k1[i];
        eval(zone, t + c2 * h, tmp, k2);
        for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        eval(zone, t + c3 * h, tmp, k3);
        for (std::size_t i = 0; i < y.size(); ++i) tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        eval(zone, t + c4 * h, tmp, k4);
        for (std::size_t i = 0; i < y.size(); ++i)
            tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        eval(zone, t + c5 * h, tmp, k5);
        for (std::size_t i = 0; i < y.size(); ++i)
            tmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        eval(zone, t + h, tmp, k6);
        for (std::size_t i = 0; i < y.size(); ++i)
            y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        eval(zone, t + h, y5, k7);
        for (std::size_t i = 0; i < y.size(); ++i)
            err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
    }

    void eval(std::size_t zone, double t, const State& y, State& dy) const { rhs_(sampler_.in_zone(zone, t), y, dy); }

private:
    const HamiltonianSampler& sampler_;
    Rhs rhs_;
};

template <class Rhs>
State integrate_adaptive(const HamiltonianSampler& sampler, double t0, double t1, const IntegratorConfig& cfg,
                         Rhs rhs, bool control_phase, IntegrationStats& stats) {
    const Stepper<Rhs> stepper(sampler, rhs);
    const std::size_t n_err = control_phase ? 9 : kAmplitudeComponents;
    State y = initial_state();
    double h_prev = 0.0;
    for (std::size_t z = 0; z < sampler.zones().size(); ++z) {
        const StepZone& zone = sampler.zones()[z];
        const double zb = std::max(zone.begin, t0);
        const double ze = std::min(zone.end, t1);
        if (!(ze > zb)) continue;
        const double cap = std::min(cfg.max_step, zone.max_step);
        double t = zb;
        double h = h_prev > 0.0 ? std::min(h_prev, cap) : cap;
        State k1, y5, err, k7;
        stepper.eval(z, t, y, k1);
        while (t < ze) {
            bool last = false;
            if (t + h >= ze) {
                h = ze - t;
                last = true;
            }
            stepper.step(z, t, h, y, k1, y5, err, k7);
            double err_norm = 0.0;
            for (std::size_t i = 0; i < n_err; ++i) {
                const double scale = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
                err_norm = std::max(err_norm, std::abs(err[i]) / scale);
            }
            if (err_norm <= 1.0) {
                t = last ? ze : t + h;
                y = y5;
                k1 = k7;
                ++stats.accepted;
                if (!last) h_prev = h;
                const double grow = err_norm > 0.0 ? 0.9 * std::pow(err_norm, -0.2) : 5.0;
                h = std::min(cap, h * std::clamp(grow, 0.2, 5.0));
            } else {
                ++stats.rejected;
                h *= std::clamp(0.9 * std::pow(err_norm, -0.2), 0.1, 0.9);
                if (h < 1e-13 * std::max(1.0, std::abs(t))) {
                    std::ostringstream msg;
                    msg << "integrator step-size underflow at t = " << t << " (zone [" << zone.begin << ", "
                        << zone.end << "], detuning " << sampler.in_zone(z, t).detuning << ")";
                    throw NumericalError(msg.str());
                }
            }
        }
    }
    return y;
}

Mat2 to_matrix(const State& y) {
    Mat2 u;
    u(0, 0) = {y[0], y[1]};
    u(1, 0) = {y[2], y[3]};
    u(0, 1) = {y[4], y[5]};
    u(1, 1) = {y[6], y[7]};
    return u;
}

double unitarity_tolerance(const IntegratorConfig& cfg) { return std::max(1e-9, 10.0 * cfg.rel_tol); }

Propagator2 finish(const Mat2& u, const IntegratorConfig& cfg, IntegrationStats& stats) {
    const Propagator2 p = Propagator2::from_matrix(u, unitarity_tolerance(cfg));
    stats.unitarity_defect = p.unitarity_defect();
    return p;
}

void check_window(const HamiltonianSampler& sampler, double t0, double t1) {
    if (!(t1 > t0) || t0 < sampler.begin() || t1 > sampler.end())
        throw InvalidArgument("propagate_window: window must be a nonempty sub-interval of the sampler domain");
}

} // namespace

void IntegratorConfig::validate() const {
    auto ok = [](double x) { return x > 0.0 && x <= 1e-2; };
    if (!ok(rel_tol) || !ok(abs_tol)) throw InvalidArgument("integrator tolerances must lie in (0, 1e-2]");
    if (!(max_step > 0.0)) throw InvalidArgument("integrator max_step must be positive");
}

Propagator2 propagate_window(const HamiltonianSampler& sampler, double t0, double t1, const IntegratorConfig& cfg,
                             IntegrationStats* stats) {
    cfg.validate();
    check_window(sampler, t0, t1);
    IntegrationStats local;
    IntegrationStats& st = stats ? *stats : local;
    st = {};
    if (cfg.picture == Picture::Interaction) {
        const State y = integrate_adaptive(sampler, t0, t1, cfg, InteractionRhs{}, true, st);
        const Propagator2 frame{std::polar(1.0, 0.5 * y[8]), cplx{0.0}};
        return finish((frame.matrix() * to_matrix(y)), cfg, st);
    }
    const State y = integrate_adaptive(sampler, t0, t1, cfg, SchroedingerRhs{}, false, st);
    return finish(to_matrix(y), cfg, st);
}

Propagator2 propagate(const HamiltonianSampler& sampler, const IntegratorConfig& cfg, IntegrationStats* stats) {
    return propagate_window(sampler, sampler.begin(), sampler.end(), cfg, stats);
}

Propagator2 propagate_interaction(const HamiltonianSampler& sampler, IntegratorConfig cfg, IntegrationStats* stats) {
    cfg.picture = Picture::Interaction;
    return propagate(sampler, cfg, stats);
}

InteractionResult propagate_interaction_frame(const HamiltonianSampler& sampler, IntegratorConfig cfg) {
    cfg.picture = Picture::Interaction;
    cfg.validate();
    IntegrationStats st;
    const State y = integrate_adaptive(sampler, sampler.begin(), sampler.end(), cfg, InteractionRhs{}, true, st);
    InteractionResult out;
    out.frame = finish(to_matrix(y), cfg, st);
    out.phase.D = y[8];
    out.lab = Propagator2{std::polar(1.0, 0.5 * y[8]), cplx{0.0}} * out.frame;
    return out;
}

Propagator2 propagate_fixed_step(const HamiltonianSampler& sampler, double step) {
    if (!(step > 0.0)) throw InvalidArgument("propagate_fixed_step: step must be positive");
    const Stepper<SchroedingerRhs> stepper(sampler, SchroedingerRhs{});
    State y = initial_state();
    State k1, y5, err, k7;
    for (std::size_t z = 0; z < sampler.zones().size(); ++z) {
        const StepZone& zone = sampler.zones()[z];
        const auto n = static_cast<std::size_t>(std::ceil((zone.end - zone.begin) / step - 1e-9));
        const double h = (zone.end - zone.begin) / static_cast<double>(std::max<std::size_t>(n, 1));
        for (std::size_t i = 0; i < std::max<std::size_t>(n, 1); ++i) {
            const double t = zone.begin + static_cast<double>(i) * h;
            stepper.eval(z, t, y, k1);
            stepper.step(z, t, h, y, k1, y5, err, k7);
            y = y5;
        }
    }
    return Propagator2::from_matrix(to_matrix(y), 1e-3);
}

Propagator2 model_propagator_tdse(Model model, const RzParams& p, const IntegratorConfig& cfg, PulseShape kind) {
    p.validate();
    const double support = Envelope(kind, p.tau).half_support();
    const double half = 0.5 * kPi + support;
    const Propagator2 back = resonant_propagator(-p.alpha * support);
    auto segment = [&](double sign) {
        const HamiltonianSampler s(-half, half, p.alpha, 0.0, {{kind, 0.0, p.tau, sign * kPi * p.delta}});
        return back * propagate(s, cfg) * back;
    };
    const Propagator2 u1 = segment(+1.0);
    const Propagator2 res = resonant_propagator(0.5 * kPi * p.alpha);
    switch (model) {
    case Model::A: return u1;
    case Model::B: return res * u1;
    case Model::BB: return res * segment(-1.0) * u1 * res;
    case Model::NB: return res * u1 * u1 * res;
    }
    throw InvalidArgument("model_propagator_tdse: unknown model");
}

} // namespace dpsim

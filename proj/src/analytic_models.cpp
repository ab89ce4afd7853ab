#include "dpsim/analytic_models.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "dpsim/errors.hpp"
#include "dpsim/phase_sequences.hpp"
#include "dpsim/special_functions.hpp"

namespace dpsim {
namespace {

constexpr double kPi = std::numbers::pi;

// Richardson ladder for the series checks.
constexpr std::array<double, 3> kEpsLadder{1e-2, 5e-3, 2.5e-3};

double sq(double x) { return x * x; }

} // namespace

void RzParams::validate() const {
    if (!std::isfinite(alpha) || !std::isfinite(tau) || !std::isfinite(delta))
        throw InvalidArgument("RzParams: non-finite parameter");
    if (!(tau > 0.0)) throw InvalidArgument("RzParams: tau must be positive");
    if (alpha < 0.0) throw InvalidArgument("RzParams: alpha must be non-negative");
}

std::string_view to_string(Model m) {
    switch (m) {
    case Model::A: return "A";
    case Model::B: return "B";
    case Model::BB: return "BB";
    case Model::NB: return "NB";
    }
    return "?";
}

Model parse_model(std::string_view name) {
    if (name == "A" || name == "a") return Model::A;
    if (name == "B" || name == "b") return Model::B;
    if (name == "BB" || name == "bb" || name == "irz-bb") return Model::BB;
    if (name == "NB" || name == "nb" || name == "irz-nb") return Model::NB;
    throw InvalidArgument("unknown model '" + std::string(name) + "'");
}

Propagator2 rz_propagator(const RzParams& p) {
    p.validate();
    const cplx a = gamma_ratio_rz(p.alpha, p.tau, p.delta);
    const cplx b{0.0, -std::sin(0.5 * kPi * p.delta) / std::cosh(0.5 * kPi * p.alpha * p.tau)};
    return {a, b};
}

Propagator2 rz_propagator_flipped(const RzParams& p) {
    const Propagator2 u = rz_propagator(p);
    return {u.a(), -u.b()};
}

Propagator2 model_propagator(Model model, const RzParams& p) {
    const Propagator2 in = rotation(kPi / 4);
    const Propagator2 out = rotation(-kPi / 4);
    const Propagator2 u1 = rz_propagator(p);
    switch (model) {
    case Model::A: return out * u1 * in;
    case Model::B: return resonant_propagator(0.5 * kPi * p.alpha) * out * u1 * in;
    case Model::BB:
    case Model::NB: {
        const Propagator2 half = resonant_propagator(0.5 * kPi * p.alpha);
        const Propagator2 u2 = model == Model::BB ? Propagator2{u1.a(), -u1.b()} : u1;
        return half * out * u2 * u1 * in * half;
    }
    }
    throw InvalidArgument("model_propagator: unknown model");
}

double limit_probability(Model model, double alpha, double delta) {
    const double c2 = sq(std::cos(0.5 * kPi * delta));
    switch (model) {
    case Model::A: return c2 * sq(std::sin(0.5 * kPi * alpha));
    case Model::B:
        return (1.0 - c2) * sq(std::sin(0.25 * kPi * alpha)) + c2 * sq(std::sin(0.75 * kPi * alpha));
    default: throw InvalidArgument("limit_probability: closed form exists only for models A and B");
    }
}

Propagator2 model_cp_limit(Model model, double alpha, double delta) {
    const double jump = kPi * delta;
    std::vector<Segment> segs;
    switch (model) {
    case Model::A: segs = {{kPi / 2, 0.0}, {kPi / 2, jump}}; break;
    case Model::B: segs = {{kPi / 2, 0.0}, {kPi / 2, jump}, {kPi / 2, jump}}; break;
    case Model::BB: segs = {{kPi, 0.0}, {kPi, jump}, {kPi, 0.0}}; break;
    case Model::NB: segs = {{kPi, 0.0}, {kPi, jump}, {kPi, 2.0 * jump}}; break;
    }
    return cp_limit_segments(segs, alpha, 0.0);
}

double expansion_point(Model model) { return model == Model::NB ? 2.0 : 1.0; }

double expansion_quantity(Model model, double alpha, double delta) {
    const Propagator2 u = model_cp_limit(model, alpha, delta);
    switch (model) {
    case Model::A:
    case Model::B: return 0.5 * (std::norm(u.b()) - std::norm(u.a()));
    case Model::BB: return std::abs(u.a());
    case Model::NB: return std::abs(u.b());
    }
    return 0.0;
}

double expansion_coefficient(Model model, double delta, int order) {
    if (order < 0 || order > 4) throw InvalidArgument("expansion_coefficient: order must lie in [0, 4]");
    const double x0 = expansion_point(model);
    // Smooth (complex) amplitude behind the expanded quantity.
    auto f = [&](double eps) -> cplx {
        const Propagator2 u = model_cp_limit(model, x0 + eps, delta);
        switch (model) {
        case Model::A:
        case Model::B: return 0.5 * (std::norm(u.b()) - std::norm(u.a()));
        case Model::BB: return u.a();
        case Model::NB: return u.b();
        }
        return 0.0;
    };
    // Central differences for f^(k)(0)/k!; all carry an O(h^2) leading error.
    auto taylor = [&](double h) -> cplx {
        switch (order) {
        case 0: return f(0.0);
        case 1: return (f(h) - f(-h)) / (2.0 * h);
        case 2: return (f(h) - 2.0 * f(0.0) + f(-h)) / (2.0 * h * h);
        case 3: return (f(2.0 * h) - 2.0 * f(h) + 2.0 * f(-h) - f(-2.0 * h)) / (12.0 * h * h * h);
        default:
            return (f(2.0 * h) - 4.0 * f(h) + 6.0 * f(0.0) - 4.0 * f(-h) + f(-2.0 * h)) / (24.0 * h * h * h * h);
        }
    };
    std::array<cplx, 3> d{};
    for (std::size_t i = 0; i < kEpsLadder.size(); ++i) d[i] = taylor(kEpsLadder[i]);
    // The ladder halves h, so each level removes one power of h^2.
    const cplx r10 = (4.0 * d[1] - d[0]) / 3.0;
    const cplx r11 = (4.0 * d[2] - d[1]) / 3.0;
    const cplx c = (16.0 * r11 - r10) / 15.0;
    // |U| ~ |c| eps^k for the amplitude models; P - 1/2 is real.
    return (model == Model::BB || model == Model::NB) ? std::abs(c) : c.real();
}

SeriesTerm series_coefficient_check(Model model, double delta) {
    const double x0 = expansion_point(model);
    std::array<double, 3> q{};
    for (std::size_t i = 0; i < kEpsLadder.size(); ++i)
        q[i] = std::abs(expansion_quantity(model, x0 + kEpsLadder[i], delta));

    const double q0 = std::abs(expansion_quantity(model, x0, delta));
    SeriesTerm term;
    if (q0 > 1e-8 && std::abs(q[2] / q0 - 1.0) < 0.1) {
        term.order = 0;
        term.coefficient = expansion_quantity(model, x0, delta);
    } else {
        if (q[2] <= 0.0 || q[1] <= 0.0) {
            std::ostringstream msg;
            msg << "series_coefficient_check: quantity vanishes on the eps ladder (q = " << q[0] << ", " << q[1]
                << ", " << q[2] << ")";
            throw NumericalError(msg.str());
        }
        const double p1 = std::log2(q[0] / q[1]);
        const double p2 = std::log2(q[1] / q[2]);
        const double estimate = 2.0 * p2 - p1;
        term.order = static_cast<int>(std::lround(estimate));
        term.order_residual = std::abs(estimate - term.order);
        if (term.order_residual > 0.2 || term.order < 1) {
            std::ostringstream msg;
            msg << "series_coefficient_check: no integer order fits (local orders " << p1 << ", " << p2
                << ", extrapolated " << estimate << ")";
            throw NumericalError(msg.str());
        }
        term.coefficient = expansion_coefficient(model, delta, term.order);
    }
    const bool amplitude = model == Model::BB || model == Model::NB;
    term.probability_order = amplitude ? 2 * term.order : term.order;
    return term;
}

} // namespace dpsim

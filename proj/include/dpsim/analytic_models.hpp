#pragma once

#include <string>
#include <string_view>

#include "dpsim/su2.hpp"

namespace dpsim {

/// Inverted Rosen-Zener segment: constant Rabi frequency alpha over a segment
/// of duration pi, with a sech detuning pulse of width tau and dimensionless
/// strength delta = Delta0 * tau (pulse area pi * delta) at its center.
struct RzParams {
    double alpha = 1.0;
    double tau = 0.05;
    double delta = 2.0 / 3.0;

    double peak_detuning() const { return delta / tau; }
    /// Throws InvalidArgument unless tau > 0, alpha >= 0, all finite.
    void validate() const;
};

/// A: single iRZ segment. B: A followed by a resonant pi/2 pulse.
/// BB / NB: two iRZ segments (opposite / equal detuning signs) sandwiched by
/// resonant pi/2 pulses.
enum class Model { A, B, BB, NB };

std::string_view to_string(Model m);
Model parse_model(std::string_view name);

/// Closed-form segment propagator in the rotated (Rosen-Zener) basis:
/// a = gamma_ratio_rz(alpha, tau, delta), b = -i sin(pi delta/2) / cosh(pi alpha tau/2).
Propagator2 rz_propagator(const RzParams& p);

/// Segment with the sign-flipped detuning pulse: [[a, -b], [b*, a*]].
Propagator2 rz_propagator_flipped(const RzParams& p);

/// Total propagator of the model, written chronologically right-to-left:
///   A  = R(-pi/4) U_RZ R(pi/4)
///   B  = U_{pi/2} A
///   BB = U_{pi/2} R(-pi/4) U_RZ^(2) U_RZ^(1) R(pi/4) U_{pi/2}
///   NB = U_{pi/2} R(-pi/4) U_RZ^(1) U_RZ^(1) R(pi/4) U_{pi/2}
/// with U_{pi/2} = resonant_propagator(pi alpha / 2).
Propagator2 model_propagator(Model model, const RzParams& p);

/// tau -> 0 transition probability of models A and B.
double limit_probability(Model model, double alpha, double delta);

/// tau -> 0 limit of model_propagator, composed from delta-pulse segments.
Propagator2 model_cp_limit(Model model, double alpha, double delta);

/// Expansion point of the series checks: alpha = 2 for NB, alpha = 1 otherwise.
double expansion_point(Model model);

/// Quantity expanded in epsilon: P - 1/2 for A and B, |U_11| for BB, |U_12| for NB.
double expansion_quantity(Model model, double alpha, double delta);

/// Leading nonvanishing term q(eps) ~ coefficient * eps^order, eps > 0.
struct SeriesTerm {
    int order = 0;
    double coefficient = 0.0;
    /// Distance of the raw order estimate from the integer `order`.
    double order_residual = 0.0;
    /// Order of the probability error: 2*order for BB/NB, order for A/B.
    int probability_order = 0;
};

/// Richardson-extrapolated central-difference estimate of the eps^order Taylor
/// coefficient (order <= 4), steps h in {1e-2, 5e-3, 2.5e-3}, two levels. For
/// BB/NB the modulus of the complex U_11 / U_12 coefficient is returned.
double expansion_coefficient(Model model, double delta, int order);

/// Numerically identifies the leading order and its coefficient in the CP
/// limit. Throws NumericalError (with residuals) if no integer order fits.
SeriesTerm series_coefficient_check(Model model, double delta);

} // namespace dpsim

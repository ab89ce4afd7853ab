#pragma once

#include <cstddef>

#include "dpsim/analytic_models.hpp"
#include "dpsim/su2.hpp"
#include "dpsim/waveforms.hpp"

namespace dpsim {

enum class Picture { Schroedinger, Interaction };

struct IntegratorConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = HamiltonianSampler::kFreeStep;
    Picture picture = Picture::Schroedinger;

    /// Tolerances must lie in (0, 1e-2]; max_step > 0.
    void validate() const;
};

/// Accumulated detuning integral D(t) = int Delta dt'.
struct InteractionPhase {
    double D = 0.0;
};

struct IntegrationStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    double unitarity_defect = 0.0;
};

/// Propagator of i dc/dt = H(t) c with H = 1/2 [[-Delta, Omega], [Omega, Delta]]
/// over [sampler.begin(), sampler.end()], by adaptive Dormand-Prince 5(4).
/// The picture in `cfg` selects the formulation; the result is always in the
/// lab (Schroedinger) basis. Throws NumericalError on step-size underflow or
/// when the result is not unitary to 10 * rel_tol (floor 1e-9).
Propagator2 propagate(const HamiltonianSampler& sampler, const IntegratorConfig& cfg = {},
                      IntegrationStats* stats = nullptr);

/// Same over a sub-window [t0, t1] of the sampler.
Propagator2 propagate_window(const HamiltonianSampler& sampler, double t0, double t1,
                             const IntegratorConfig& cfg = {}, IntegrationStats* stats = nullptr);

/// Interaction picture: coupling Omega e^{-iD(t)} with zero diagonal, D carried
/// as an extra state component. Returned in the lab basis.
Propagator2 propagate_interaction(const HamiltonianSampler& sampler, IntegratorConfig cfg = {},
                                  IntegrationStats* stats = nullptr);

struct InteractionResult {
    Propagator2 frame;        ///< propagator of the interaction-frame amplitudes
    InteractionPhase phase;   ///< D at the end of the window
    Propagator2 lab;          ///< diag(e^{iD/2}, e^{-iD/2}) * frame
};

InteractionResult propagate_interaction_frame(const HamiltonianSampler& sampler, IntegratorConfig cfg = {});

/// Fixed-step fifth-order variant (no error control); steps never straddle a
/// zone boundary. For convergence studies.
Propagator2 propagate_fixed_step(const HamiltonianSampler& sampler, double step);

/// Numerical realization of model_propagator: every iRZ segment is integrated
/// over its full envelope support [-pi/2 - s, pi/2 + s] and the surplus free
/// evolution resonant(-alpha s) is removed on both sides; resonant pi/2 pieces
/// are exact.
Propagator2 model_propagator_tdse(Model model, const RzParams& p, const IntegratorConfig& cfg = {},
                                  PulseShape kind = PulseShape::Sech);

} // namespace dpsim

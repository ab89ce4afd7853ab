#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dpsim/errors.hpp"
#include "dpsim/tdse.hpp"

using namespace dpsim;
using std::numbers::pi;

namespace {

constexpr Model kModels[] = {Model::A, Model::B, Model::BB, Model::NB};

IntegratorConfig interaction() {
    IntegratorConfig c;
    c.picture = Picture::Interaction;
    return c;
}

// Single sech segment over its full support, surplus free evolution removed:
// the closed-form segment of model A.
Propagator2 segment_fixed_step(double alpha, double tau, double delta, double step) {
    const double support = 40 * tau, half = pi / 2 + support;
    const HamiltonianSampler s(-half, half, alpha, 0.0, {{PulseShape::Sech, 0.0, tau, pi * delta}});
    const Propagator2 back = resonant_propagator(-alpha * support);
    return back * propagate_fixed_step(s, step) * back;
}

} // namespace

TEST_CASE("configuration") {
    IntegratorConfig c;
    CHECK_NOTHROW(c.validate());
    c.rel_tol = 0.0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c.rel_tol = 0.1;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
    c = {};
    c.max_step = 0.0;
    CHECK_THROWS_AS(c.validate(), InvalidArgument);
}

TEST_CASE("constant Hamiltonians") {
    for (double alpha : {0.0, 0.6, 1.0, 2.4}) {
        const HamiltonianSampler h = sample(build_sequence(PhaseList{{0.0}}, alpha, 0.05, PulseShape::Sech));
        CHECK(max_abs_diff(propagate(h), resonant_propagator(pi * alpha)) <= 1e-8);
        CHECK(max_abs_diff(propagate(h, interaction()), resonant_propagator(pi * alpha)) <= 1e-8);
    }
    const HamiltonianSampler zero(0.0, 4.0, 0.0, 0.0, {});
    CHECK(max_abs_diff(propagate(zero), Propagator2::identity()) <= 1e-15);
    // Static detuning against the exact Rabi solution.
    const HamiltonianSampler det(0.0, 2.0, 0.9, -0.4, {});
    CHECK(max_abs_diff(propagate(det), segment_propagator(0.9, -0.4, 2.0)) <= 1e-9);
}

TEST_CASE("closed-form segment models") {
    for (Model m : kModels)
        for (double alpha : {0.5, 1.5, 2.75})
            for (double tau : {0.01, 0.3})
                for (double delta : {0.5, 2.0 / 3.0}) {
                    const RzParams p{alpha, tau, delta};
                    const Propagator2 num = model_propagator_tdse(m, p), exact = model_propagator(m, p);
                    CHECK(std::abs(transition_probability(num) - transition_probability(exact)) <= 1e-6);
                    CHECK(max_abs_diff_up_to_phase(num, exact) <= 1e-6);
                }
    // Physical waveform of case A on [0, pi]; its tails beyond the segment are e^{-pi/2tau} small.
    const RzParams a{1.0, 0.1, 0.5};
    const Propagator2 physical = propagate(sample(model_sequence(Model::A, a.alpha, a.tau, a.delta, PulseShape::Sech)));
    CHECK(max_abs_diff_up_to_phase(physical, model_propagator(Model::A, a)) <= 1e-6);
}

// tests/oracles/tdse_oracle.py (scipy DOP853 on the physical waveform).
TEST_CASE("physical sequences against the integration oracle") {
    auto p = [](const PhaseList& ph, double alpha, double tau) {
        return transition_probability(propagate(sample(build_sequence(ph, alpha, tau, PulseShape::Sech))));
    };
    CHECK(p(bb_phases(3), 1.0, 0.05) == doctest::Approx(0.9982987175410589).epsilon(1e-9));
    CHECK(p(nb_phases(3), 1.0, 0.01) == doctest::Approx(0.9998172109315522).epsilon(1e-9));
    CHECK(p(nb_phases(3), 2.0, 0.05) == doctest::Approx(0.06874591983966233).epsilon(1e-8));
}

TEST_CASE("pictures agree") {
    const HamiltonianSampler flat(0.0, 3.0, 1.2, 0.0, {});
    CHECK(max_abs_diff(propagate(flat), propagate(flat, interaction())) <= 1e-9);

    for (PulseShape s : {PulseShape::Sech, PulseShape::Gaussian, PulseShape::Lorentzian, PulseShape::Rectangular})
        for (double alpha : {0.7, 1.0, 1.8}) {
            const HamiltonianSampler h = sample(build_sequence(bb_phases(3), alpha, 0.05, s, 0.1));
            CHECK(std::abs(transition_probability(propagate(h)) - transition_probability(propagate(h, interaction()))) <= 1e-8);
        }
    // Delta-like pulses.
    const HamiltonianSampler sharp = sample(build_sequence(bb_phases(3), 1.0, 0.002, PulseShape::Sech));
    CHECK(max_abs_diff(propagate(sharp), propagate(sharp, interaction())) <= 1e-7);

    const InteractionResult r = propagate_interaction_frame(sample(build_sequence(nb_phases(3), 1.1, 0.05, PulseShape::Sech)));
    CHECK(r.phase.D == doctest::Approx(2 * pi / 3 - 4 * pi / 3).epsilon(1e-9));
    const Propagator2 frame_factor{std::polar(1.0, r.phase.D / 2), 0.0};
    CHECK(max_abs_diff(frame_factor * r.frame, r.lab) <= 1e-15);
}

TEST_CASE("unitarity and window splitting") {
    const HamiltonianSampler h = sample(build_sequence(universal_phases(), 1.3, 0.03, PulseShape::Gaussian, 0.2));
    IntegrationStats stats;
    const Propagator2 full = propagate(h, {}, &stats);
    CHECK(stats.unitarity_defect <= 1e-8);
    CHECK(stats.accepted > 0);
    for (double mid : {1.0, 2 * pi, 2 * pi + 0.03, 11.0}) {
        const Propagator2 split = propagate_window(h, mid, h.end()) * propagate_window(h, h.begin(), mid);
        CHECK(max_abs_diff(split, full) <= 1e-9);
    }
    CHECK_THROWS_AS(propagate_window(h, 2.0, 1.0), InvalidArgument);
}

TEST_CASE("fixed-step convergence order") {
    const Propagator2 exact = model_propagator(Model::A, {1.0, 0.1, 0.5});
    const double e1 = max_abs_diff_up_to_phase(segment_fixed_step(1.0, 0.1, 0.5, 0.02), exact);
    const double e2 = max_abs_diff_up_to_phase(segment_fixed_step(1.0, 0.1, 0.5, 0.01), exact);
    CHECK(e1 / e2 >= 16.0);
}

TEST_CASE("determinism") {
    const HamiltonianSampler h = sample(build_sequence(nb_phases(5), 1.7, 0.04, PulseShape::Lorentzian, -0.3));
    const Propagator2 u = propagate(h);
    CHECK(propagate(h) == u);
}

TEST_CASE("step-size underflow is reported with its location") {
    // A 1e-11 wide rectangular pulse of area 1e3 cannot be resolved.
    const HamiltonianSampler h(0.0, 2.0, 1.0, 0.0, {{PulseShape::Rectangular, 1.0, 1e-11, 1e3}});
    CHECK_THROWS_WITH_AS(propagate(h), doctest::Contains("underflow at t ="), NumericalError);
}

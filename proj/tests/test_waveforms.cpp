#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>

#include "dpsim/errors.hpp"
#include "dpsim/waveforms.hpp"

using namespace dpsim;
using std::numbers::pi;

namespace {

constexpr PulseShape kShapes[] = {PulseShape::Sech, PulseShape::Gaussian, PulseShape::Lorentzian,
                                  PulseShape::Rectangular};

// Adaptive Gauss-Kronrod over [lo, hi], split at the peak and at +-tau so the
// narrow core is resolved.
template <class F>
double integrate(F f, double lo, double hi, double tau) {
    using boost::math::quadrature::gauss_kronrod;
    double sum = 0.0;
    double cuts[] = {lo, -tau, 0.0, tau, hi};
    for (int i = 0; i < 4; ++i) {
        const double a = std::max(lo, cuts[i]), b = std::min(hi, cuts[i + 1]);
        if (b > a) sum += gauss_kronrod<double, 61>::integrate(f, a, b, 15, 1e-13);
    }
    return sum;
}

} // namespace

TEST_CASE("envelope shapes") {
    const double tau = 0.05;
    const Envelope sech(PulseShape::Sech, tau);
    CHECK(sech(0.0) == doctest::Approx(1.0 / (pi * tau)).epsilon(1e-8));
    CHECK(std::abs(sech.renormalization() - 1.0) <= 1e-8);
    CHECK(std::abs(Envelope(PulseShape::Gaussian, tau).renormalization() - 1.0) <= 1e-8);

    const Envelope rect(PulseShape::Rectangular, tau);
    CHECK(2 * rect.half_support() == doctest::Approx(pi * tau));
    CHECK(rect(0.0) == sech.unclipped(0.0) / sech.renormalization());
    CHECK(rect(rect.half_support() * 1.0001) == 0.0);

    for (PulseShape s : kShapes) {
        CHECK_THROWS_AS(Envelope(s, 0.0), InvalidArgument);
        CHECK_THROWS_AS(Envelope(s, -1.0), InvalidArgument);
    }
}

TEST_CASE("envelopes have unit area") {
    for (PulseShape s : kShapes)
        for (double tau : {0.005, 0.05, 0.3}) {
            const Envelope g(s, tau);
            const double area = integrate([&](double t) { return g(t); }, -g.half_support(), g.half_support(), tau);
            CHECK(std::abs(area - 1.0) <= 1e-10);
        }
}

TEST_CASE("shaped pulses carry their declared area") {
    for (PulseShape s : kShapes)
        for (double tau : {0.005, 0.02, 0.1, 0.3}) {
            const ShapedPulse p{s, 2.0, tau, -4 * pi / 3};
            const double area = integrate([&](double t) { return p.value(t + p.center); },
                                          p.support_begin() - p.center, p.support_end() - p.center, tau);
            CHECK(std::abs(area - p.area) <= 1e-9);
        }
}

TEST_CASE("sequence construction") {
    const SequenceSpec bb = build_sequence(bb_phases(3), 1.0, 0.05, PulseShape::Sech);
    CHECK(bb.n_segments == 3);
    CHECK(bb.duration == doctest::Approx(3 * pi));
    REQUIRE(bb.pulses.size() == 2);
    CHECK(bb.pulses[0].center == doctest::Approx(pi));
    CHECK(bb.pulses[1].center == doctest::Approx(2 * pi));
    CHECK(bb.pulses[0].area == doctest::Approx(2 * pi / 3));
    CHECK(bb.pulses[1].area == doctest::Approx(-2 * pi / 3));

    const SequenceSpec single = build_sequence(PhaseList{{0.0}}, 0.8, 0.05, PulseShape::Sech, 0.25);
    CHECK(single.pulses.empty());
    const HamiltonianSampler h = sample(single);
    for (double t : {0.0, 1.0, 3.0}) CHECK(h(t).detuning == 0.25);

    // Repeated phases give zero jumps, which are dropped.
    CHECK(build_sequence(PhaseList{{0.0, 0.0, 1.0}}, 1.0, 0.05, PulseShape::Sech).pulses.size() == 1);

    const SequenceSpec a = model_sequence(Model::A, 1.0, 0.1, 0.5, PulseShape::Sech);
    CHECK(a.duration == doctest::Approx(pi));
    REQUIRE(a.pulses.size() == 1);
    CHECK(a.pulses[0].center == doctest::Approx(pi / 2));
    CHECK(a.pulses[0].area == doctest::Approx(pi / 2));

    CHECK_THROWS_AS(build_sequence(PhaseList{}, 1.0, 0.05, PulseShape::Sech), InvalidArgument);
    CHECK_THROWS_AS(build_sequence(bb_phases(3), 1.0, 0.0, PulseShape::Sech), InvalidArgument);
    SequenceSpec bad = bb;
    bad.pulses[0].center = 20.0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
    bad = bb;
    bad.n_segments = 0;
    CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("sampler") {
    const double tau = 0.05, det = 0.1, area = 2 * pi / 3;
    const HamiltonianSampler h = sample(build_sequence(bb_phases(3), 1.3, tau, PulseShape::Sech, det));
    CHECK(h(pi).detuning == doctest::Approx(det + area / (pi * tau)).epsilon(1e-8));
    CHECK(h(2 * pi).detuning == doctest::Approx(det - area / (pi * tau)).epsilon(1e-8));
    for (double t : {0.0, 0.7, pi, 5.0, 3 * pi}) CHECK(h(t).rabi == 1.3);
    CHECK(h(-0.1).rabi == 0.0);
    CHECK(h(3 * pi + 0.1).detuning == 0.0);

    const HamiltonianSampler narrow = sample(build_sequence(bb_phases(3), 1.0, 0.01, PulseShape::Sech, det));
    CHECK(std::abs(narrow(1.5 * pi).detuning - det) <= 1e-10);

    // Zones: every support edge is a boundary; pulses cap the step.
    for (const StepZone& z : h.zones()) {
        CHECK(z.end > z.begin);
        CHECK(z.max_step == (z.active.empty() ? HamiltonianSampler::kFreeStep : tau / 10));
    }
    CHECK(h.zones().front().begin == 0.0);
    CHECK(h.zones().back().end == doctest::Approx(3 * pi));
}

TEST_CASE("zone sampling at a rectangular edge") {
    const HamiltonianSampler h = sample(build_sequence(universal_phases(), 1.0, 0.01, PulseShape::Rectangular));
    for (std::size_t z = 0; z < h.zones().size(); ++z) {
        const StepZone& zone = h.zones()[z];
        if (zone.active.empty()) continue;
        // Both ends of an active zone see the full pulse height.
        CHECK(std::abs(h.in_zone(z, zone.begin).detuning) > 10.0);
        CHECK(std::abs(h.in_zone(z, zone.end).detuning) > 10.0);
    }
}

TEST_CASE("sequence spec text round trip") {
    SequenceSpec s = build_sequence(nb_phases(5), 1.37, 0.031, PulseShape::Lorentzian, -0.2);
    s.pulses[1].kind = PulseShape::Gaussian;
    const SequenceSpec back = sequence_from_text(to_text(s));
    CHECK(back.n_segments == s.n_segments);
    CHECK(back.duration == s.duration);
    CHECK(back.alpha == s.alpha);
    CHECK(back.static_detuning == s.static_detuning);
    REQUIRE(back.pulses.size() == s.pulses.size());
    for (std::size_t k = 0; k < s.pulses.size(); ++k) {
        CHECK(back.pulses[k].kind == s.pulses[k].kind);
        CHECK(back.pulses[k].center == s.pulses[k].center);
        CHECK(back.pulses[k].tau == s.pulses[k].tau);
        CHECK(back.pulses[k].area == s.pulses[k].area);
    }
    CHECK_THROWS_WITH_AS(sequence_from_text("n_segments=2\nalpha=x\n"), doctest::Contains("line 2"), InvalidArgument);
    CHECK_THROWS_AS(sequence_from_text("pulse=sech 1 0.1\n"), InvalidArgument);
    CHECK_THROWS_AS(sequence_from_text("colour=red\n"), InvalidArgument);
}

TEST_CASE("shape names") {
    for (PulseShape s : kShapes) CHECK(parse_shape(to_string(s)) == s);
    CHECK_THROWS_AS(parse_shape("triangle"), InvalidArgument);
}

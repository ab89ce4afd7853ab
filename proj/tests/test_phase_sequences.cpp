#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "dpsim/errors.hpp"
#include "dpsim/phase_sequences.hpp"

using namespace dpsim;
using std::numbers::pi;

namespace {

void check_phases(const PhaseList& got, const std::vector<double>& want) {
    REQUIRE(got.size() == want.size());
    for (std::size_t k = 0; k < want.size(); ++k) CHECK(got[k] == doctest::Approx(want[k]).epsilon(1e-15));
}

// Literal composite pulse: with_phase(U, phi_k) applied in order.
Propagator2 literal(const PhaseList& p, double alpha) {
    Propagator2 u;
    for (double phi : p.phases) u = with_phase(resonant_propagator(pi * alpha), phi) * u;
    return u;
}

} // namespace

TEST_CASE("broadband phases") {
    check_phases(bb_phases(1), {0.0});
    check_phases(bb_phases(3), {0.0, 2 * pi / 3, 0.0});
    check_phases(bb_phases(5), {0.0, 4 * pi / 5, 2 * pi / 5, 4 * pi / 5, 0.0});
    for (int n : {0, -3, 2, 8}) CHECK_THROWS_AS(bb_phases(n), InvalidArgument);
    for (int n = 1; n <= 15; n += 2) {
        const PhaseList p = bb_phases(n);
        CHECK(p.size() == static_cast<std::size_t>(n));
        for (std::size_t k = 0; k < p.size(); ++k) {
            CHECK(p[k] == p[p.size() - 1 - k]);
            CHECK(p[k] >= 0.0);
            CHECK(p[k] < 2 * pi);
        }
    }
}

TEST_CASE("narrowband phases") {
    check_phases(nb_phases(1), {0.0});
    check_phases(nb_phases(3), {0.0, 2 * pi / 3, -2 * pi / 3});
    check_phases(nb_phases(5), {0.0, 2 * pi / 5, -2 * pi / 5, 4 * pi / 5, -4 * pi / 5});
    CHECK_THROWS_AS(nb_phases(4), InvalidArgument);
    for (int n = 3; n <= 11; n += 2) {
        const PhaseList p = nb_phases(n);
        CHECK(p[0] == 0.0);
        for (std::size_t k = 1; k + 1 < p.size(); k += 2) CHECK(p[k + 1] == -p[k]);
    }
}

TEST_CASE("universal phases") {
    check_phases(universal_phases(), {0.0, 5 * pi / 6, 2 * pi / 6, 5 * pi / 6, 0.0});
    CHECK(universal_phases()[2] == doctest::Approx(pi / 3));
}

TEST_CASE("phase jumps become detuning areas") {
    const AreaList bb = phases_to_areas(bb_phases(3));
    REQUIRE(bb.size() == 2);
    CHECK(bb[0] == doctest::Approx(2 * pi / 3));
    CHECK(bb[1] == doctest::Approx(-2 * pi / 3));

    const AreaList nb = phases_to_areas(nb_phases(3));
    CHECK(nb[0] == doctest::Approx(2 * pi / 3));
    CHECK(nb[1] == doctest::Approx(-4 * pi / 3));
    const AreaList nb_norm = phases_to_areas(nb_phases(3), true);
    CHECK(nb_norm[1] == doctest::Approx(2 * pi / 3));

    CHECK(phases_to_areas(PhaseList{{0.7}}).size() == 0);
    for (double a : phases_to_areas(PhaseList{{1.2, 1.2, 1.2, 1.2}}).areas) CHECK(a == 0.0);

    // Normalized areas land in (-pi, pi].
    for (double a : phases_to_areas(PhaseList{{0.0, 3.5, -3.0, 7.0, pi}}, true).areas) {
        CHECK(a > -pi);
        CHECK(a <= pi + 1e-15);
    }
}

TEST_CASE("areas equal modulo 2 pi give the same composite pulse") {
    // -4pi/3 and +2pi/3 jumps: the two NB3 readings. Total areas differ by 2pi,
    // which flips the sign of the frame factor (a global phase).
    const PhaseList raw = nb_phases(3);
    const PhaseList shifted{{0.0, 2 * pi / 3, 4 * pi / 3}};
    for (double alpha : {0.5, 1.0, 1.9, 2.4})
        for (double det : {0.0, 0.3})
            CHECK(max_abs_diff_up_to_phase(cp_limit_propagator(raw, alpha, det), cp_limit_propagator(shifted, alpha, det)) <= 1e-14);
}

TEST_CASE("constant-Hamiltonian segment") {
    for (double alpha : {0.0, 0.7, 1.0, 2.3}) CHECK(max_abs_diff(segment_propagator(alpha, 0.0, pi), resonant_propagator(pi * alpha)) <= 1e-15);
    CHECK(max_abs_diff(segment_propagator(0.0, 0.0, 5.0), Propagator2::identity()) == 0.0);
    // Group property and the generator -iH for a detuned drive.
    const double alpha = 1.3, det = -0.6;
    CHECK(max_abs_diff(segment_propagator(alpha, det, 0.4) * segment_propagator(alpha, det, 1.1),
                       segment_propagator(alpha, det, 1.5)) <= 1e-15);
    const double h = 1e-6;
    const Propagator2 small = segment_propagator(alpha, det, h);
    CHECK(std::abs((small.a() - 1.0) / h - std::complex<double>(0, 0.5 * det)) <= 1e-6);
    CHECK(std::abs(small.b() / h - std::complex<double>(0, -0.5 * alpha)) <= 1e-6);
    // Off-resonant Rabi formula.
    const double w = std::hypot(alpha, det);
    CHECK(transition_probability(segment_propagator(alpha, det, pi)) ==
          doctest::Approx(alpha * alpha / (w * w) * std::pow(std::sin(w * pi / 2), 2)).epsilon(1e-14));
}

TEST_CASE("composite-pulse limit") {
    CHECK(transition_probability(cp_limit_propagator(PhaseList{{0.0}}, 1.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(transition_probability(cp_limit_propagator(bb_phases(3), 1.0, 0.0)) - 1.0) <= 1e-12);
    CHECK(transition_probability(cp_limit_propagator(nb_phases(3), 2.0, 0.0)) <= 1e-12);
    for (int n : {3, 5, 7}) CHECK(std::abs(transition_probability(cp_limit_propagator(nb_phases(n), 1.0, 0.0)) - 1.0) <= 1e-12);

    // Sixth-order flatness of NB3 around alpha = 2.
    const double p1 = transition_probability(cp_limit_propagator(nb_phases(3), 2.01, 0.0));
    const double p2 = transition_probability(cp_limit_propagator(nb_phases(3), 2.02, 0.0));
    CHECK(std::log2(p2 / p1) == doctest::Approx(6.0).epsilon(0.02));

    for (const PhaseList& p : {bb_phases(5), nb_phases(5), universal_phases(), PhaseList{{0.3, 1.9, -0.4}}})
        for (double alpha : {0.4, 1.0, 1.6})
            CHECK(std::abs(transition_probability(cp_limit_propagator(p, alpha, 0.0)) -
                           transition_probability(literal(p, alpha))) <= 1e-14);

    // Palindromic sequences respond symmetrically to a static detuning.
    for (double det : {0.1, 0.45})
        CHECK(transition_probability(cp_limit_propagator(universal_phases(), 1.1, det)) ==
              doctest::Approx(transition_probability(cp_limit_propagator(universal_phases(), 1.1, -det))).epsilon(1e-13));
}

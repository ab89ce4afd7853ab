#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "dpsim/errors.hpp"
#include "dpsim/su2.hpp"

using namespace dpsim;
using std::numbers::pi;

namespace {

Propagator2 random_unitary(std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    cplx a{n(rng), n(rng)}, b{n(rng), n(rng)};
    const double s = std::sqrt(std::norm(a) + std::norm(b));
    return {a / s, b / s};
}

bool near(cplx x, cplx y, double tol) { return std::abs(x - y) <= tol; }

} // namespace

TEST_CASE("rotation matrices") {
    CHECK(max_abs_diff(rotation(0.0), Propagator2::identity()) == 0.0);
    const Propagator2 r = rotation(pi / 4);
    const double h = std::sqrt(0.5);
    CHECK(near(r.element(0, 0), h, 1e-15));
    CHECK(near(r.element(0, 1), h, 1e-15));
    CHECK(near(r.element(1, 0), -h, 1e-15));
    CHECK(near(r.element(1, 1), h, 1e-15));
    CHECK(max_abs_diff(rotation(pi / 4) * rotation(-pi / 4), Propagator2::identity()) <= 1e-15);
}

TEST_CASE("resonant pulses") {
    CHECK(resonant_propagator(0.0) == Propagator2::identity());
    const Propagator2 flip = resonant_propagator(pi);
    CHECK(std::abs(flip.a()) <= 1e-16);
    CHECK(near(flip.b(), cplx{0, -1}, 1e-16));
    const Propagator2 half = resonant_propagator(pi / 2);
    CHECK(near(half.a(), std::cos(pi / 4), 1e-16));
    CHECK(near(half.b(), cplx{0, -std::sin(pi / 4)}, 1e-16));
    for (double area : {0.1, 1.0, 2.5, 7.0}) CHECK(transition_probability(resonant_propagator(area)) == doctest::Approx(std::pow(std::sin(area / 2), 2)).epsilon(1e-14));
}

TEST_CASE("field phase shifts") {
    std::mt19937_64 rng(7);
    const Propagator2 u = random_unitary(rng);
    CHECK(with_phase(u, 0.0) == u);
    CHECK(max_abs_diff(with_phase(with_phase(u, 0.4), 1.3), with_phase(u, 1.7)) <= 1e-15);
    const Propagator2 s = with_phase(resonant_propagator(pi), 2 * pi / 3);
    CHECK(near(s.b(), cplx{0, -1} * std::polar(1.0, 2 * pi / 3), 1e-15));
    for (double phi : {-2.0, 0.3, 5.0}) CHECK(transition_probability(with_phase(u, phi)) == doctest::Approx(transition_probability(u)).epsilon(1e-15));
}

TEST_CASE("composition") {
    std::mt19937_64 rng(11);
    const Propagator2 u = random_unitary(rng);
    const std::vector<Propagator2> pair{u, u.inverse()};
    CHECK(max_abs_diff(compose(pair), Propagator2::identity()) <= 1e-13);

    const std::vector<Propagator2> halves{resonant_propagator(pi / 2), resonant_propagator(pi / 2)};
    CHECK(max_abs_diff(compose(halves), resonant_propagator(pi)) <= 1e-15);

    const Propagator2 x = resonant_propagator(pi);
    const std::vector<Propagator2> bb3{x, with_phase(x, 2 * pi / 3), x};
    CHECK(std::abs(transition_probability(compose(bb3)) - 1.0) <= 1e-12);

    // Chronological order: the front element acts first.
    const Propagator2 p = random_unitary(rng), q = random_unitary(rng);
    const std::vector<Propagator2> pq{p, q};
    CHECK(max_abs_diff(compose(pq), q * p) == 0.0);
    CHECK(max_abs_diff(q * p, Propagator2::from_matrix(q.matrix() * p.matrix())) <= 1e-15);

    CHECK_THROWS_AS(compose(std::vector<Propagator2>{}), InvalidArgument);
}

TEST_CASE("random chains stay unitary and associative") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> ang(-10.0, 10.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Propagator2> chain;
        const int len = 1 + trial * 2;
        for (int k = 0; k < len; ++k) chain.push_back(with_phase(random_unitary(rng), ang(rng)));
        CHECK(compose(chain).unitarity_defect() <= 1e-12);
    }
    for (int trial = 0; trial < 100; ++trial) {
        const Propagator2 a = random_unitary(rng), b = random_unitary(rng), c = random_unitary(rng);
        CHECK(max_abs_diff((a * b) * c, a * (b * c)) <= 1e-13);
    }
}

TEST_CASE("probability from either off-diagonal element") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 20; ++i) {
        const Propagator2 u = random_unitary(rng);
        CHECK(std::norm(u.element(0, 1)) == doctest::Approx(std::norm(u.element(1, 0))).epsilon(1e-15));
    }
    CHECK(transition_probability(Propagator2::identity()) == 0.0);
    CHECK(transition_probability(resonant_propagator(pi)) == doctest::Approx(1.0).epsilon(1e-16));
    CHECK(transition_probability(resonant_propagator(pi / 2)) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("state propagation and matrix projection") {
    std::mt19937_64 rng(5);
    StateVector c;
    for (int i = 0; i < 200; ++i) c = apply(random_unitary(rng), c);
    CHECK(std::abs(c.norm_squared() - 1.0) <= 1e-10);

    Mat2 bad;
    bad(0, 1) = 0.5;
    CHECK_THROWS_AS(Propagator2::from_matrix(bad), NumericalError);

    const Propagator2 u = random_unitary(rng);
    CHECK(max_abs_diff_up_to_phase(u, Propagator2::from_matrix(u.matrix())) <= 1e-15);
}

#include "dpsim/su2.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dpsim/errors.hpp"

namespace dpsim {

Mat2 operator*(const Mat2& lhs, const Mat2& rhs) {
    Mat2 out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            out(i, j) = lhs(i, 0) * rhs(0, j) + lhs(i, 1) * rhs(1, j);
    return out;
}

Propagator2 Propagator2::from_matrix(const Mat2& u, double tol) {
    const cplx a = 0.5 * (u(0, 0) + std::conj(u(1, 1)));
    const cplx b = 0.5 * (u(0, 1) - std::conj(u(1, 0)));
    const Propagator2 p{a, b};
    const Mat2 back = p.matrix();
    double dev = 0.0;
    for (std::size_t k = 0; k < 4; ++k)
        dev = std::max(dev, std::abs(back.m[k] - u.m[k]));
    dev = std::max(dev, p.unitarity_defect());
    if (!(dev <= tol)) {
        std::ostringstream msg;
        msg << "matrix is not of Cayley-Klein form: deviation " << dev << " exceeds " << tol;
        throw NumericalError(msg.str());
    }
    return p;
}

cplx Propagator2::element(int row, int col) const {
    if (row == 0) return col == 0 ? a_ : b_;
    return col == 0 ? -std::conj(b_) : std::conj(a_);
}

Mat2 Propagator2::matrix() const {
    Mat2 out;
    out.m = {a_, b_, -std::conj(b_), std::conj(a_)};
    return out;
}

double Propagator2::unitarity_defect() const {
    return std::abs(std::norm(a_) + std::norm(b_) - 1.0);
}

Propagator2 operator*(const Propagator2& later, const Propagator2& earlier) {
    const cplx a2 = later.a(), b2 = later.b();
    const cplx a1 = earlier.a(), b1 = earlier.b();
    return {a2 * a1 - b2 * std::conj(b1), a2 * b1 + b2 * std::conj(a1)};
}

StateVector apply(const Propagator2& u, const StateVector& c) {
    return {u.a() * c.c1 + u.b() * c.c2, -std::conj(u.b()) * c.c1 + std::conj(u.a()) * c.c2};
}

Propagator2 rotation(double theta) {
    return {cplx{std::cos(theta), 0.0}, cplx{std::sin(theta), 0.0}};
}

Propagator2 resonant_propagator(double area) {
    return {cplx{std::cos(0.5 * area), 0.0}, cplx{0.0, -std::sin(0.5 * area)}};
}

Propagator2 with_phase(const Propagator2& u, double phi) {
    return {u.a(), u.b() * std::polar(1.0, phi)};
}

Propagator2 compose(std::span<const Propagator2> chronological) {
    if (chronological.empty()) throw InvalidArgument("compose: empty propagator sequence");
    Propagator2 total = chronological.front();
    for (const auto& u : chronological.subspan(1)) total = u * total;
    return total;
}

double transition_probability(const Propagator2& u) {
    return std::min(1.0, std::norm(u.b()));
}

double max_abs_diff(const Propagator2& x, const Propagator2& y) {
    return std::max(std::abs(x.a() - y.a()), std::abs(x.b() - y.b()));
}

double max_abs_diff_up_to_phase(const Propagator2& x, const Propagator2& y) {
    const Mat2 mx = x.matrix(), my = y.matrix();
    cplx overlap{0.0};
    for (std::size_t k = 0; k < 4; ++k) overlap += std::conj(mx.m[k]) * my.m[k];
    const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx{1.0};
    double dev = 0.0;
    for (std::size_t k = 0; k < 4; ++k) dev = std::max(dev, std::abs(mx.m[k] * phase - my.m[k]));
    return dev;
}

} // namespace dpsim

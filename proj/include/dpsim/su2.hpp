#pragma once

#include <array>
#include <complex>
#include <span>

namespace dpsim {

using cplx = std::complex<double>;

/// Plain 2x2 complex matrix, row-major.
struct Mat2 {
    std::array<cplx, 4> m{cplx{1.0}, cplx{0.0}, cplx{0.0}, cplx{1.0}};

    cplx operator()(int row, int col) const { return m[2 * row + col]; }
    cplx& operator()(int row, int col) { return m[2 * row + col]; }
};

Mat2 operator*(const Mat2& lhs, const Mat2& rhs);

/// SU(2) propagator in Cayley-Klein form
///
///     U = [[ a,  b ],
///          [-b*, a*]]
///
/// The set of such matrices is closed under multiplication, so products stay
/// in (a, b) form without re-projection.
class Propagator2 {
public:
    constexpr Propagator2() = default;
    constexpr Propagator2(cplx a, cplx b) : a_(a), b_(b) {}

    static constexpr Propagator2 identity() { return {}; }

    /// Projects a general matrix onto Cayley-Klein form. Throws NumericalError
    /// when the input deviates from that form by more than `tol` (max-norm).
    static Propagator2 from_matrix(const Mat2& u, double tol = 1e-12);

    constexpr cplx a() const { return a_; }
    constexpr cplx b() const { return b_; }

    /// Matrix element, zero-based.
    cplx element(int row, int col) const;
    Mat2 matrix() const;
    Propagator2 inverse() const { return {std::conj(a_), -b_}; }

    /// | |a|^2 + |b|^2 - 1 |
    double unitarity_defect() const;

    friend bool operator==(const Propagator2&, const Propagator2&) = default;

private:
    cplx a_{1.0, 0.0};
    cplx b_{0.0, 0.0};
};

/// `later * earlier`: the product applies `earlier` first.
Propagator2 operator*(const Propagator2& later, const Propagator2& earlier);

struct StateVector {
    cplx c1{1.0, 0.0};
    cplx c2{0.0, 0.0};

    double norm_squared() const { return std::norm(c1) + std::norm(c2); }
};

StateVector apply(const Propagator2& u, const StateVector& c);

/// Basis rotation R(theta) = [[cos, sin], [-sin, cos]].
Propagator2 rotation(double theta);

/// Resonant pulse of the given area: a = cos(A/2), b = -i sin(A/2).
Propagator2 resonant_propagator(double area);

/// Shifts the driving-field phase: b -> b e^{i phi}.
Propagator2 with_phase(const Propagator2& u, double phi);

/// Total propagator of a chronological list (front() acts first), i.e.
/// U_N ... U_2 U_1. Throws InvalidArgument on an empty list.
Propagator2 compose(std::span<const Propagator2> chronological);

/// |b|^2 = |U_12|^2 = |U_21|^2.
double transition_probability(const Propagator2& u);

/// Max element-wise distance between two propagators.
double max_abs_diff(const Propagator2& x, const Propagator2& y);

/// Same as max_abs_diff after removing the best-fitting global phase.
double max_abs_diff_up_to_phase(const Propagator2& x, const Propagator2& y);

} // namespace dpsim

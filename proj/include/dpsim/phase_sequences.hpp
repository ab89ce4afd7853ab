#pragma once

#include <span>
#include <vector>

#include "dpsim/su2.hpp"

namespace dpsim {

/// Composite phases, one per unit segment (radians).
struct PhaseList {
    std::vector<double> phases;

    std::size_t size() const { return phases.size(); }
    double operator[](std::size_t k) const { return phases[k]; }
};

/// Signed detuning-pulse areas between consecutive segments (radians).
struct AreaList {
    std::vector<double> areas;

    std::size_t size() const { return areas.size(); }
    double operator[](std::size_t k) const { return areas[k]; }
};

/// Broadband family for odd N = 2n+1: the palindrome
/// (phi_1, ..., phi_n, phi_{n+1}, phi_n, ..., phi_1) with phi_k = k(k-1) n pi / N,
/// reported in [0, 2 pi).
PhaseList bb_phases(int n_pulses);

/// Narrowband family for odd N = 2n+1: (0, phi_1, -phi_1, ..., phi_n, -phi_n),
/// phi_k = 2 k pi / N.
PhaseList nb_phases(int n_pulses);

/// Five-pulse universal sequence (0, 5, 2, 5, 0) pi/6.
PhaseList universal_phases();

/// areas[k] = phases[k+1] - phases[k] on the stored values. With `normalize`
/// each area is mapped into (-pi, pi].
AreaList phases_to_areas(const PhaseList& p, bool normalize = false);

/// Exact propagator of a constant Hamiltonian 1/2 [[-detuning, alpha], [alpha, detuning]]
/// held for `duration`.
Propagator2 segment_propagator(double alpha, double detuning, double duration);

/// One constant-Rabi interval of a delta-pulse sequence. `frame_phase` is the
/// detuning area D accumulated before the interval.
struct Segment {
    double duration;
    double frame_phase;
};

/// tau = 0 limit of a detuning waveform: each interval carries the field phase
/// -D (the interaction-frame coupling is Omega e^{-iD}), and the final frame
/// factor diag(e^{iD/2}, e^{-iD/2}) returns to the lab basis. Element-wise equal
/// to the limit of the integrated waveform.
Propagator2 cp_limit_segments(std::span<const Segment> segments, double alpha, double static_detuning);

/// Composite pulse built from unit segments of duration pi, the k-th shifted by
/// phi_k (relative to phi_1). Same transition probability as the literal product
/// of with_phase(U, phi_k) whenever the static detuning vanishes.
Propagator2 cp_limit_propagator(const PhaseList& p, double alpha, double static_detuning);

} // namespace dpsim

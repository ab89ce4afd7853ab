#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "dpsim/analytic_models.hpp"
#include "dpsim/phase_sequences.hpp"

namespace dpsim {

enum class PulseShape { Sech, Gaussian, Lorentzian, Rectangular };

std::string_view to_string(PulseShape s);
PulseShape parse_shape(std::string_view name);

/// Unit-area envelope g(t; tau), truncated to |t| <= half_support and
/// renormalized so that the truncated integral is exactly one.
///
///   Sech         sech(t/tau) / (pi tau),             |t| <= 40 tau
///   Gaussian     exp(-t^2 / 2tau^2) / (tau sqrt(2pi)), |t| <= 10 tau
///   Lorentzian   tau / (pi (t^2 + tau^2)),           |t| <= 200 tau
///   Rectangular  1 / (pi tau),                       |t| <= pi tau / 2
class Envelope {
public:
    Envelope(PulseShape kind, double tau);

    double operator()(double t) const;
    /// Envelope formula without the support test; zone-based sampling uses it
    /// so a zone edge rounded just outside the support still sees the pulse.
    double unclipped(double t) const;

    PulseShape kind() const { return kind_; }
    double tau() const { return tau_; }
    double half_support() const { return half_support_; }
    /// Factor applied after truncation (1 for an untruncated envelope).
    double renormalization() const { return renorm_; }

private:
    PulseShape kind_;
    double tau_;
    double half_support_;
    double renorm_;
};

/// One detuning pulse: area * g(t - center).
struct ShapedPulse {
    PulseShape kind = PulseShape::Sech;
    double center = 0.0;
    double tau = 0.05;
    double area = 0.0;

    double value(double t) const;
    double support_begin() const;
    double support_end() const;
};

enum class RabiShape { Constant };

/// Complete experiment: constant Rabi frequency alpha on [0, duration] with the
/// listed detuning pulses on top of a static detuning.
struct SequenceSpec {
    int n_segments = 1;
    double duration = 0.0;
    double alpha = 1.0;
    std::vector<ShapedPulse> pulses;
    double static_detuning = 0.0;
    RabiShape rabi_shape = RabiShape::Constant;

    void validate() const;
};

/// N unit segments (duration pi each) with phases mapped to detuning pulses of
/// area phi_{k+1} - phi_k centered at t = k pi. Zero-area pulses are omitted.
SequenceSpec build_sequence(const PhaseList& phases, double alpha, double tau, PulseShape kind,
                            double static_detuning = 0.0, bool normalize_areas = false);

/// Physical waveform of the analytic models: A on [0, pi] and B on [0, 3pi/2]
/// with a pulse of area pi*delta at pi/2; BB and NB on [0, 3pi] with pulses at
/// pi and 2pi (areas +-pi*delta and +pi*delta, pi*delta).
SequenceSpec model_sequence(Model model, double alpha, double tau, double delta,
                            PulseShape kind = PulseShape::Sech);

struct Controls {
    double rabi = 0.0;
    double detuning = 0.0;
};

/// Interval of the time axis with a fixed set of active pulses and a step cap.
struct StepZone {
    double begin = 0.0;
    double end = 0.0;
    double max_step = 0.0;
    std::vector<std::size_t> active;
};

/// t -> (Omega(t), Delta(t)) on [begin, end]; zero outside. Zone boundaries sit
/// on every pulse support edge so that no integration step straddles one.
class HamiltonianSampler {
public:
    HamiltonianSampler(double t_begin, double t_end, double rabi, double static_detuning,
                       std::vector<ShapedPulse> pulses);

    Controls operator()(double t) const;
    /// Fast path when the caller already knows the zone containing t.
    Controls in_zone(std::size_t zone, double t) const;

    double begin() const { return begin_; }
    double end() const { return end_; }
    double duration() const { return end_ - begin_; }
    const std::vector<StepZone>& zones() const { return zones_; }
    const std::vector<ShapedPulse>& pulses() const { return pulses_; }

    /// Step cap between pulses.
    static constexpr double kFreeStep = 3.14159265358979323846 / 20.0;

private:
    double begin_;
    double end_;
    double rabi_;
    double static_detuning_;
    std::vector<ShapedPulse> pulses_;
    std::vector<Envelope> envelopes_;
    std::vector<StepZone> zones_;
};

HamiltonianSampler sample(const SequenceSpec& spec);

/// Plain-text key=value serialization (one `pulse=` line per pulse).
std::string to_text(const SequenceSpec& spec);
SequenceSpec sequence_from_text(std::string_view text);

} // namespace dpsim

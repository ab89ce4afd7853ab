#include "dpsim/phase_sequences.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "dpsim/errors.hpp"

namespace dpsim {
namespace {

constexpr double kPi = std::numbers::pi;

void require_odd(int n_pulses, const char* who) {
    if (n_pulses < 1 || n_pulses % 2 == 0)
        throw InvalidArgument(std::string(who) + ": number of pulses must be odd and positive, got " +
                              std::to_string(n_pulses));
}

double wrap_2pi(double x) {
    double r = std::fmod(x, 2.0 * kPi);
    if (r < 0.0) r += 2.0 * kPi;
    return r;
}

double wrap_pi(double x) {
    // (-pi, pi]
    double r = wrap_2pi(x);
    return r > kPi ? r - 2.0 * kPi : r;
}

} // namespace

PhaseList bb_phases(int n_pulses) {
    require_odd(n_pulses, "bb_phases");
    const int n = (n_pulses - 1) / 2;
    std::vector<double> half;
    for (int k = 1; k <= n + 1; ++k) {
        // k(k-1)n is an integer; reduce it mod 2N before scaling so large N stays exact.
        const long long num = static_cast<long long>(k) * (k - 1) * n % (2LL * n_pulses);
        half.push_back(wrap_2pi(static_cast<double>(num) * kPi / n_pulses));
    }
    PhaseList out;
    out.phases = half;
    for (int k = n - 1; k >= 0; --k) out.phases.push_back(half[static_cast<std::size_t>(k)]);
    return out;
}

PhaseList nb_phases(int n_pulses) {
    require_odd(n_pulses, "nb_phases");
    const int n = (n_pulses - 1) / 2;
    PhaseList out;
    out.phases.push_back(0.0);
    for (int k = 1; k <= n; ++k) {
        const double phi = 2.0 * k * kPi / n_pulses;
        out.phases.push_back(phi);
        out.phases.push_back(-phi);
    }
    return out;
}

PhaseList universal_phases() {
    return PhaseList{{0.0, 5.0 * kPi / 6.0, 2.0 * kPi / 6.0, 5.0 * kPi / 6.0, 0.0}};
}

AreaList phases_to_areas(const PhaseList& p, bool normalize) {
    AreaList out;
    for (std::size_t k = 0; k + 1 < p.size(); ++k) {
        const double area = p[k + 1] - p[k];
        out.areas.push_back(normalize ? wrap_pi(area) : area);
    }
    return out;
}

Propagator2 segment_propagator(double alpha, double detuning, double duration) {
    const double w = std::hypot(alpha, detuning);
    if (w == 0.0) return Propagator2::identity();
    const double c = std::cos(0.5 * w * duration);
    const double s = std::sin(0.5 * w * duration);
    return {cplx{c, detuning / w * s}, cplx{0.0, -alpha / w * s}};
}

Propagator2 cp_limit_segments(std::span<const Segment> segments, double alpha, double static_detuning) {
    if (segments.empty()) throw InvalidArgument("cp_limit_segments: empty segment list");
    Propagator2 total;
    for (const auto& seg : segments) {
        if (!(seg.duration >= 0.0)) throw InvalidArgument("cp_limit_segments: negative segment duration");
        total = with_phase(segment_propagator(alpha, static_detuning, seg.duration), -seg.frame_phase) * total;
    }
    const double d = segments.back().frame_phase;
    const Propagator2 frame{std::polar(1.0, 0.5 * d), cplx{0.0}};
    return frame * total;
}

Propagator2 cp_limit_propagator(const PhaseList& p, double alpha, double static_detuning) {
    if (p.size() == 0) throw InvalidArgument("cp_limit_propagator: empty phase list");
    if (alpha < 0.0) throw InvalidArgument("cp_limit_propagator: alpha must be non-negative");
    std::vector<Segment> segs;
    segs.reserve(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) segs.push_back({kPi, p[k] - p[0]});
    return cp_limit_segments(segs, alpha, static_detuning);
}

} // namespace dpsim

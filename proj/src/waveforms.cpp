#include "dpsim/waveforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "dpsim/errors.hpp"
#include "dpsim/text_util.hpp"

namespace dpsim {
namespace {

constexpr double kPi = std::numbers::pi;

constexpr double kSechCut = 40.0;
constexpr double kGaussCut = 10.0;
constexpr double kLorentzCut = 200.0;

} // namespace

std::string_view to_string(PulseShape s) {
    switch (s) {
    case PulseShape::Sech: return "sech";
    case PulseShape::Gaussian: return "gaussian";
    case PulseShape::Lorentzian: return "lorentzian";
    case PulseShape::Rectangular: return "rectangular";
    }
    return "?";
}

PulseShape parse_shape(std::string_view name) {
    if (name == "sech" || name == "S") return PulseShape::Sech;
    if (name == "gaussian" || name == "gauss" || name == "G") return PulseShape::Gaussian;
    if (name == "lorentzian" || name == "L") return PulseShape::Lorentzian;
    if (name == "rectangular" || name == "rect" || name == "R") return PulseShape::Rectangular;
    throw InvalidArgument("unknown pulse shape '" + std::string(name) + "'");
}

Envelope::Envelope(PulseShape kind, double tau) : kind_(kind), tau_(tau) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("envelope: tau must be positive and finite");
    // Truncated integrals in closed form.
    switch (kind) {
    case PulseShape::Sech: {
        static const double sech_renorm = kPi / (4.0 * std::atan(std::tanh(0.5 * kSechCut)));
        half_support_ = kSechCut * tau;
        renorm_ = sech_renorm;
        break;
    }
    case PulseShape::Gaussian: {
        static const double gauss_renorm = 1.0 / std::erf(kGaussCut / std::numbers::sqrt2);
        half_support_ = kGaussCut * tau;
        renorm_ = gauss_renorm;
        break;
    }
    case PulseShape::Lorentzian: {
        static const double lorentz_renorm = kPi / (2.0 * std::atan(kLorentzCut));
        half_support_ = kLorentzCut * tau;
        renorm_ = lorentz_renorm;
        break;
    }
    case PulseShape::Rectangular:
        half_support_ = 0.5 * kPi * tau;
        renorm_ = 1.0;
        break;
    }
}

double Envelope::operator()(double t) const {
    return std::abs(t) > half_support_ ? 0.0 : unclipped(t);
}

double Envelope::unclipped(double t) const {
    const double x = t / tau_;
    switch (kind_) {
    case PulseShape::Sech: return renorm_ / (std::cosh(x) * kPi * tau_);
    case PulseShape::Gaussian:
        return renorm_ * std::exp(-0.5 * x * x) / (tau_ * std::sqrt(2.0 * kPi));
    case PulseShape::Lorentzian: return renorm_ / (kPi * tau_ * (x * x + 1.0));
    case PulseShape::Rectangular: return 1.0 / (kPi * tau_);
    }
    return 0.0;
}

double ShapedPulse::value(double t) const { return area * Envelope(kind, tau)(t - center); }

double ShapedPulse::support_begin() const { return center - Envelope(kind, tau).half_support(); }

double ShapedPulse::support_end() const { return center + Envelope(kind, tau).half_support(); }

void SequenceSpec::validate() const {
    if (n_segments < 1) throw InvalidArgument("sequence: n_segments must be >= 1");
    if (!(duration > 0.0) || !std::isfinite(duration)) throw InvalidArgument("sequence: duration must be positive");
    if (!std::isfinite(alpha) || alpha < 0.0) throw InvalidArgument("sequence: alpha must be non-negative");
    if (!std::isfinite(static_detuning)) throw InvalidArgument("sequence: static detuning must be finite");
    for (const auto& p : pulses) {
        if (!(p.tau > 0.0) || !std::isfinite(p.tau)) throw InvalidArgument("sequence: pulse tau must be positive");
        if (!std::isfinite(p.area)) throw InvalidArgument("sequence: pulse area must be finite");
        if (p.center < 0.0 || p.center > duration)
            throw InvalidArgument("sequence: pulse center " + text::format_double(p.center) +
                                  " lies outside [0, duration]");
    }
}

SequenceSpec build_sequence(const PhaseList& phases, double alpha, double tau, PulseShape kind,
                            double static_detuning, bool normalize_areas) {
    if (phases.size() == 0) throw InvalidArgument("build_sequence: empty phase list");
    if (!(tau > 0.0)) throw InvalidArgument("build_sequence: tau must be positive");
    SequenceSpec spec;
    spec.n_segments = static_cast<int>(phases.size());
    spec.duration = kPi * spec.n_segments;
    spec.alpha = alpha;
    spec.static_detuning = static_detuning;
    const AreaList areas = phases_to_areas(phases, normalize_areas);
    for (std::size_t k = 0; k < areas.size(); ++k) {
        if (areas[k] == 0.0) continue;
        spec.pulses.push_back({kind, kPi * static_cast<double>(k + 1), tau, areas[k]});
    }
    spec.validate();
    return spec;
}

SequenceSpec model_sequence(Model model, double alpha, double tau, double delta, PulseShape kind) {
    const double area = kPi * delta;
    SequenceSpec spec;
    spec.alpha = alpha;
    switch (model) {
    case Model::A:
        spec.duration = kPi;
        spec.pulses = {{kind, kPi / 2, tau, area}};
        break;
    case Model::B:
        spec.duration = 1.5 * kPi;
        spec.pulses = {{kind, kPi / 2, tau, area}};
        break;
    case Model::BB:
    case Model::NB:
        spec.n_segments = 3;
        spec.duration = 3.0 * kPi;
        spec.pulses = {{kind, kPi, tau, area}, {kind, 2.0 * kPi, tau, model == Model::BB ? -area : area}};
        break;
    }
    spec.validate();
    return spec;
}

HamiltonianSampler::HamiltonianSampler(double t_begin, double t_end, double rabi, double static_detuning,
                                       std::vector<ShapedPulse> pulses)
    : begin_(t_begin), end_(t_end), rabi_(rabi), static_detuning_(static_detuning), pulses_(std::move(pulses)) {
    if (!(t_end > t_begin)) throw InvalidArgument("sampler: empty time window");
    envelopes_.reserve(pulses_.size());
    for (const auto& p : pulses_) envelopes_.emplace_back(p.kind, p.tau);
    std::vector<double> cuts{t_begin, t_end};
    for (const auto& p : pulses_) {
        for (double edge : {p.support_begin(), p.support_end()})
            if (edge > t_begin && edge < t_end) cuts.push_back(edge);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        StepZone zone{cuts[i], cuts[i + 1], kFreeStep, {}};
        const double mid = 0.5 * (zone.begin + zone.end);
        for (std::size_t k = 0; k < pulses_.size(); ++k) {
            const auto& p = pulses_[k];
            if (mid > p.support_begin() && mid < p.support_end()) {
                zone.active.push_back(k);
                zone.max_step = std::min(zone.max_step, p.tau / 10.0);
            }
        }
        zones_.push_back(std::move(zone));
    }
}

Controls HamiltonianSampler::in_zone(std::size_t zone, double t) const {
    double detuning = static_detuning_;
    for (std::size_t k : zones_[zone].active) detuning += pulses_[k].area * envelopes_[k].unclipped(t - pulses_[k].center);
    return {rabi_, detuning};
}

Controls HamiltonianSampler::operator()(double t) const {
    if (t < begin_ || t > end_) return {};
    auto it = std::upper_bound(zones_.begin(), zones_.end(), t,
                               [](double x, const StepZone& z) { return x < z.begin; });
    const std::size_t zone = it == zones_.begin() ? 0 : static_cast<std::size_t>(it - zones_.begin()) - 1;
    return in_zone(zone, t);
}

HamiltonianSampler sample(const SequenceSpec& spec) {
    spec.validate();
    return HamiltonianSampler(0.0, spec.duration, spec.alpha, spec.static_detuning, spec.pulses);
}

std::string to_text(const SequenceSpec& spec) {
    std::ostringstream os;
    os << "# dpsim sequence spec; times in T/pi, frequencies in pi/T, areas in radians\n";
    os << "n_segments=" << spec.n_segments << "\n";
    os << "duration=" << text::format_double(spec.duration) << "\n";
    os << "alpha=" << text::format_double(spec.alpha) << "\n";
    os << "static_detuning=" << text::format_double(spec.static_detuning) << "\n";
    os << "rabi_shape=constant\n";
    for (const auto& p : spec.pulses) {
        os << "pulse=" << to_string(p.kind) << " " << text::format_double(p.center) << " "
           << text::format_double(p.tau) << " " << text::format_double(p.area) << "\n";
    }
    return os.str();
}

SequenceSpec sequence_from_text(std::string_view input) {
    SequenceSpec spec;
    spec.duration = std::numeric_limits<double>::quiet_NaN();
    int line_no = 0;
    auto fail = [&](const std::string& why) {
        throw InvalidArgument("sequence spec line " + std::to_string(line_no) + ": " + why);
    };
    auto number = [&](std::string_view s) {
        double v = 0.0;
        if (!text::parse_double(s, v)) fail("cannot parse number '" + std::string(s) + "'");
        return v;
    };
    for (std::string_view raw : text::split(input, '\n')) {
        ++line_no;
        const std::string_view line = text::trim(raw);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) fail("expected key=value");
        const std::string_view key = text::trim(line.substr(0, eq));
        const std::string_view value = text::trim(line.substr(eq + 1));
        if (key == "n_segments") {
            spec.n_segments = static_cast<int>(number(value));
        } else if (key == "duration") {
            spec.duration = number(value);
        } else if (key == "alpha") {
            spec.alpha = number(value);
        } else if (key == "static_detuning") {
            spec.static_detuning = number(value);
        } else if (key == "rabi_shape") {
            if (value != "constant") fail("only constant Rabi shape is supported");
        } else if (key == "pulse") {
            std::vector<std::string_view> fields;
            for (auto f : text::split(value, ' '))
                if (!text::trim(f).empty()) fields.push_back(text::trim(f));
            if (fields.size() != 4) fail("pulse needs: shape center tau area");
            spec.pulses.push_back({parse_shape(fields[0]), number(fields[1]), number(fields[2]), number(fields[3])});
        } else {
            fail("unknown key '" + std::string(key) + "'");
        }
    }
    if (std::isnan(spec.duration)) spec.duration = kPi * spec.n_segments;
    spec.validate();
    return spec;
}

} // namespace dpsim

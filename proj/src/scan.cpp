#include "dpsim/scan.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dpsim/errors.hpp"
#include "dpsim/parallel.hpp"
#include "dpsim/text_util.hpp"

namespace dpsim {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr const char* kUnits = "hbar=1; time in T/pi; frequency in pi/T; areas in radians";

double sq(double x) { return x * x; }

void require_grid(std::span<const double> grid, const char* name) {
    if (grid.empty()) throw InvalidArgument(std::string(name) + " grid is empty");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw InvalidArgument(std::string(name) + " grid must be strictly increasing");
}

void describe(ScanTable& t, const FamilySpec& fam, std::string_view engine) {
    t.set_meta("units", kUnits);
    t.set_meta("family", std::string(to_string(fam.family)));
    t.set_meta("label", fam.label());
    if (fam.is_model()) {
        t.set_meta("delta", text::format_double(fam.delta));
    } else {
        const PhaseList ph = fam.phases();
        t.set_meta("n_pulses", std::to_string(ph.size()));
        std::string joined;
        for (std::size_t k = 0; k < ph.size(); ++k) joined += (k ? " " : "") + text::format_double(ph[k]);
        t.set_meta("phases", joined);
        t.set_meta("normalize_areas", fam.normalize_areas ? "true" : "false");
    }
    t.set_meta("engine", std::string(engine));
    t.set_meta("tau", text::format_double(fam.tau));
    t.set_meta("shape", std::string(to_string(fam.shape)));
    t.set_meta("static_detuning", text::format_double(fam.static_detuning));
    t.set_meta("rel_tol", text::format_double(fam.integrator.rel_tol));
    t.set_meta("abs_tol", text::format_double(fam.integrator.abs_tol));
    t.set_meta("log_floor", text::format_double(kLogFloor));
}

Axis axis(std::string name, std::string unit, std::span<const double> grid) {
    return {std::move(name), std::move(unit), std::vector<double>(grid.begin(), grid.end())};
}

} // namespace

std::string_view to_string(Engine e) {
    switch (e) {
    case Engine::Analytic: return "analytic";
    case Engine::Tdse: return "tdse";
    case Engine::CpLimit: return "cp-limit";
    }
    return "?";
}

Engine parse_engine(std::string_view name) {
    if (name == "analytic") return Engine::Analytic;
    if (name == "tdse") return Engine::Tdse;
    if (name == "cp-limit" || name == "cp") return Engine::CpLimit;
    throw InvalidArgument("unknown engine '" + std::string(name) + "'");
}

std::string_view to_string(Family f) {
    switch (f) {
    case Family::Single: return "none";
    case Family::ModelA: return "a";
    case Family::ModelB: return "b";
    case Family::ModelBB: return "irz-bb";
    case Family::ModelNB: return "irz-nb";
    case Family::Broadband: return "bb";
    case Family::Narrowband: return "nb";
    case Family::Universal: return "universal";
    case Family::Custom: return "file";
    }
    return "?";
}

Family parse_family(std::string_view name) {
    if (name == "none" || name == "single") return Family::Single;
    if (name == "a") return Family::ModelA;
    if (name == "b") return Family::ModelB;
    if (name == "irz-bb") return Family::ModelBB;
    if (name == "irz-nb") return Family::ModelNB;
    if (name == "bb") return Family::Broadband;
    if (name == "nb") return Family::Narrowband;
    if (name == "universal") return Family::Universal;
    if (name == "file" || name == "custom") return Family::Custom;
    throw InvalidArgument("unknown family '" + std::string(name) + "'");
}

bool FamilySpec::is_model() const {
    return family == Family::ModelA || family == Family::ModelB || family == Family::ModelBB ||
           family == Family::ModelNB;
}

Model FamilySpec::model() const {
    switch (family) {
    case Family::ModelA: return Model::A;
    case Family::ModelB: return Model::B;
    case Family::ModelBB: return Model::BB;
    case Family::ModelNB: return Model::NB;
    default: throw InvalidArgument("family '" + std::string(to_string(family)) + "' is not an analytic model");
    }
}

PhaseList FamilySpec::phases() const {
    switch (family) {
    case Family::Single:
        if (n < 1) throw InvalidArgument("single-pulse family needs n >= 1");
        return PhaseList{std::vector<double>(static_cast<std::size_t>(n), 0.0)};
    case Family::Broadband: return bb_phases(n);
    case Family::Narrowband: return nb_phases(n);
    case Family::Universal: return universal_phases();
    case Family::Custom:
        if (custom.size() == 0) throw InvalidArgument("custom family needs a nonempty phase list");
        return custom;
    default: throw InvalidArgument("model family '" + std::string(to_string(family)) + "' has no phase list");
    }
}

std::string FamilySpec::label() const {
    std::ostringstream os;
    os << to_string(family);
    if (is_model()) {
        os << " delta=" << delta;
    } else if (family != Family::Universal && family != Family::Custom) {
        os << n;
    }
    return os.str();
}

Propagator2 evaluate(const FamilySpec& fam, double alpha, Engine engine) {
    return evaluate(fam, alpha, fam.static_detuning, engine);
}

Propagator2 evaluate(const FamilySpec& fam, double alpha, double static_detuning, Engine engine) {
    if (fam.is_model()) {
        if (static_detuning != 0.0)
            throw InvalidArgument("model families are defined on exact resonance; static detuning must be 0");
        const RzParams p{alpha, fam.tau, fam.delta};
        switch (engine) {
        case Engine::Analytic: return model_propagator(fam.model(), p);
        case Engine::Tdse: return model_propagator_tdse(fam.model(), p, fam.integrator, fam.shape);
        case Engine::CpLimit: return model_cp_limit(fam.model(), alpha, fam.delta);
        }
    }
    switch (engine) {
    case Engine::Analytic:
        throw InvalidArgument("the analytic engine supports only the model families a, b, irz-bb, irz-nb (got '" +
                              std::string(to_string(fam.family)) + "')");
    case Engine::CpLimit: return cp_limit_propagator(fam.phases(), alpha, static_detuning);
    case Engine::Tdse: {
        const SequenceSpec spec =
            build_sequence(fam.phases(), alpha, fam.tau, fam.shape, static_detuning, fam.normalize_areas);
        return propagate(sample(spec), fam.integrator);
    }
    }
    throw InvalidArgument("unknown engine");
}

ScanTable profile_scan(const FamilySpec& fam, std::span<const double> alpha_grid, Engine engine, Reference ref) {
    require_grid(alpha_grid, "alpha");
    const bool half_target = fam.family == Family::ModelA || fam.family == Family::ModelB;
    if (ref == Reference::Auto) ref = half_target ? Reference::HalfPi : Reference::Pi;

    ScanTable t;
    t.axes.push_back(axis("alpha", "pulse area / pi", alpha_grid));
    t.columns = {"alpha", "P", "infidelity", "P_floor"};
    if (ref != Reference::None) t.columns.push_back("reference");
    describe(t, fam, to_string(engine));
    t.set_meta("target", half_target ? "0.5" : "1");
    t.set_meta("reference", ref == Reference::HalfPi ? "sin^2(pi alpha/4)"
                            : ref == Reference::Pi   ? "sin^2(pi alpha/2)"
                                                     : "none");

    t.rows.assign(alpha_grid.size(), {});
    parallel_for(alpha_grid.size(), [&](std::size_t i) {
        const double alpha = alpha_grid[i];
        const Propagator2 u = evaluate(fam, alpha, engine);
        const double pop1 = std::norm(u.a()), pop2 = std::norm(u.b());
        const double p = transition_probability(u);
        const double err = half_target ? 0.5 * std::abs(pop2 - pop1) : pop1;
        std::vector<double> row{alpha, p, std::max(err, kLogFloor), std::max(p, kLogFloor)};
        if (ref == Reference::HalfPi) row.push_back(sq(std::sin(0.25 * kPi * alpha)));
        if (ref == Reference::Pi) row.push_back(sq(std::sin(0.5 * kPi * alpha)));
        t.rows[i] = std::move(row);
    });
    t.validate();
    return t;
}

WidthStudy width_study(const FamilySpec& fam, std::span<const double> alpha_grid, std::span<const double> tau_grid) {
    require_grid(alpha_grid, "alpha");
    require_grid(tau_grid, "tau");
    if (!(tau_grid.front() > 0.0)) throw InvalidArgument("width_study: tau values must be positive");

    const std::size_t na = alpha_grid.size(), nt = tau_grid.size();
    std::vector<double> cp(na);
    parallel_for(na, [&](std::size_t i) {
        cp[i] = transition_probability(evaluate(fam, alpha_grid[i], Engine::CpLimit));
    });

    WidthStudy out;
    ScanTable& t = out.table;
    t.axes.push_back(axis("tau", "T/pi", tau_grid));
    t.axes.push_back(axis("alpha", "pulse area / pi", alpha_grid));
    t.columns = {"tau", "alpha", "P", "P_cp", "deviation"};
    describe(t, fam, "tdse");
    t.rows.assign(na * nt, {});
    parallel_for(na * nt, [&](std::size_t idx) {
        const std::size_t it = idx / na, ia = idx % na;
        FamilySpec f = fam;
        f.tau = tau_grid[it];
        const double p = transition_probability(evaluate(f, alpha_grid[ia], Engine::Tdse));
        t.rows[idx] = {tau_grid[it], alpha_grid[ia], p, cp[ia], std::abs(p - cp[ia])};
    });
    for (std::size_t it = 0; it < nt; ++it) {
        WidthSummary s{tau_grid[it], 0.0, 0.0};
        for (std::size_t ia = 0; ia < na; ++ia) {
            const double dev = t.rows[it * na + ia][4];
            s.sup_dev_grid = std::max(s.sup_dev_grid, dev);
            if (alpha_grid[ia] >= 0.9 - 1e-12 && alpha_grid[ia] <= 1.1 + 1e-12)
                s.sup_dev_window = std::max(s.sup_dev_window, dev);
        }
        out.summary.push_back(s);
    }
    t.validate();
    return out;
}

ScanTable scan2d(const FamilySpec& fam, std::span<const double> alpha_grid, std::span<const double> detuning_grid,
                 Engine engine) {
    require_grid(alpha_grid, "alpha");
    require_grid(detuning_grid, "detuning");
    ScanTable t;
    t.axes.push_back(axis("alpha", "pulse area / pi", alpha_grid));
    t.axes.push_back(axis("detuning", "nominal Rabi frequency (pi/T)", detuning_grid));
    t.columns = {"alpha", "detuning", "P"};
    describe(t, fam, to_string(engine));
    const std::size_t nd = detuning_grid.size();
    t.rows.assign(alpha_grid.size() * nd, {});
    parallel_for(t.rows.size(), [&](std::size_t idx) {
        const double alpha = alpha_grid[idx / nd], det = detuning_grid[idx % nd];
        t.rows[idx] = {alpha, det, transition_probability(evaluate(fam, alpha, det, engine))};
    });
    t.validate();
    return t;
}

ScanTable scan2d_universal(std::span<const double> alpha_grid, std::span<const double> detuning_grid, double tau,
                           PulseShape shape, const IntegratorConfig& cfg) {
    if (tau < 0.0) throw InvalidArgument("scan2d_universal: tau must be non-negative");
    FamilySpec fam;
    fam.family = Family::Universal;
    fam.n = 5;
    fam.tau = tau;
    fam.shape = shape;
    fam.integrator = cfg;
    return scan2d(fam, alpha_grid, detuning_grid, tau == 0.0 ? Engine::CpLimit : Engine::Tdse);
}

double sup_difference(const ScanTable& x, const ScanTable& y, std::string_view column) {
    if (x.rows.size() != y.rows.size()) throw InvalidArgument("sup_difference: tables differ in size");
    const std::size_t cx = x.column_index(column), cy = y.column_index(column);
    double dev = 0.0;
    for (std::size_t r = 0; r < x.rows.size(); ++r) {
        for (std::size_t a = 0; a < x.axes.size(); ++a)
            if (x.rows[r][a] != y.rows[r][a]) throw InvalidArgument("sup_difference: grids differ");
        dev = std::max(dev, std::abs(x.rows[r][cx] - y.rows[r][cy]));
    }
    return dev;
}

std::string_view to_string(Quantity q) {
    switch (q) {
    case Quantity::OneMinusP: return "1-P";
    case Quantity::P: return "P";
    case Quantity::PMinusHalf: return "P-1/2";
    }
    return "?";
}

Quantity parse_quantity(std::string_view name) {
    if (name == "1-P" || name == "one-minus-p" || name == "infidelity") return Quantity::OneMinusP;
    if (name == "P" || name == "p") return Quantity::P;
    if (name == "P-1/2" || name == "P-half" || name == "p-half") return Quantity::PMinusHalf;
    throw InvalidArgument("unknown quantity '" + std::string(name) + "'");
}

OrderFit order_estimate(const FamilySpec& fam, double expansion_point, Quantity quantity, double eps_lo,
                        double eps_hi, std::size_t points) {
    if (!(eps_lo > 0.0) || !(eps_hi > eps_lo) || points < 2)
        throw InvalidArgument("order_estimate: need 0 < eps_lo < eps_hi and at least two points");
    std::vector<double> xs, ys;
    double sign = 1.0, largest = 0.0;
    for (std::size_t i = 0; i < points; ++i) {
        const double eps =
            eps_lo * std::pow(eps_hi / eps_lo, static_cast<double>(i) / static_cast<double>(points - 1));
        const Propagator2 u = evaluate(fam, expansion_point + eps, Engine::CpLimit);
        const double pop1 = std::norm(u.a()), pop2 = std::norm(u.b());
        double q = 0.0;
        switch (quantity) {
        case Quantity::OneMinusP: q = pop1; break;
        case Quantity::P: q = pop2; break;
        case Quantity::PMinusHalf: q = 0.5 * (pop2 - pop1); break;
        }
        if (i == 0) sign = q < 0.0 ? -1.0 : 1.0;
        largest = std::max(largest, std::abs(q));
        if (q == 0.0) continue;
        xs.push_back(std::log(eps));
        ys.push_back(std::log(std::abs(q)));
    }
    if (largest < 1e-14 || xs.size() < 2) {
        std::ostringstream msg;
        msg << "order_estimate: |" << to_string(quantity) << "| stays below 1e-14 for eps in [" << eps_lo << ", "
            << eps_hi << "] (max " << largest << "); the signal is roundoff, widen the eps window";
        throw NumericalError(msg.str());
    }
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    OrderFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - fit.slope * sx) / n;
    fit.coefficient = sign * std::exp(intercept);
    double ss = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) ss += sq(ys[i] - (intercept + fit.slope * xs[i]));
    fit.residual = std::sqrt(ss / n);
    fit.points = xs.size();
    return fit;
}

ShapeComparison shape_comparison(const FamilySpec& fam, double tau, std::span<const double> alpha_grid,
                                 std::span<const PulseShape> shapes) {
    require_grid(alpha_grid, "alpha");
    if (shapes.empty()) throw InvalidArgument("shape_comparison: no shapes given");
    if (!(tau > 0.0)) throw InvalidArgument("shape_comparison: tau must be positive");
    ShapeComparison out;
    ScanTable& t = out.table;
    t.axes.push_back(axis("alpha", "pulse area / pi", alpha_grid));
    t.columns = {"alpha"};
    for (std::size_t s = 0; s < shapes.size(); ++s) {
        std::string name = "P_" + std::string(to_string(shapes[s]));
        while (std::find(t.columns.begin(), t.columns.end(), name) != t.columns.end()) name += "_2";
        t.columns.push_back(name);
    }
    FamilySpec base = fam;
    base.tau = tau;
    describe(t, base, "tdse");
    const std::size_t na = alpha_grid.size(), ns = shapes.size();
    t.rows.assign(na, std::vector<double>(ns + 1, 0.0));
    parallel_for(na * ns, [&](std::size_t idx) {
        const std::size_t ia = idx / ns, is = idx % ns;
        FamilySpec f = base;
        f.shape = shapes[is];
        t.rows[ia][0] = alpha_grid[ia];
        t.rows[ia][is + 1] = transition_probability(evaluate(f, alpha_grid[ia], Engine::Tdse));
    });
    for (const auto& row : t.rows)
        for (std::size_t i = 1; i <= ns; ++i)
            for (std::size_t j = i + 1; j <= ns; ++j)
                out.max_pairwise_deviation = std::max(out.max_pairwise_deviation, std::abs(row[i] - row[j]));
    t.set_meta("max_pairwise_deviation", text::format_double(out.max_pairwise_deviation));
    t.validate();
    return out;
}

ShapeComparison shape_comparison(const FamilySpec& fam, double tau, std::span<const double> alpha_grid) {
    static constexpr PulseShape kAll[] = {PulseShape::Sech, PulseShape::Gaussian, PulseShape::Lorentzian,
                                          PulseShape::Rectangular};
    return shape_comparison(fam, tau, alpha_grid, kAll);
}

} // namespace dpsim

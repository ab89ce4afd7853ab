#include "dpsim/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <map>
#include <iostream>
#include <sstream>

#include "dpsim/errors.hpp"
#include "dpsim/parallel.hpp"
#include "dpsim/scan.hpp"
#include "dpsim/text_util.hpp"
#include "dpsim/verify.hpp"

namespace dpsim::cli {

PhaseList parse_phase_text(std::string_view text, std::string_view source) {
    PhaseList out;
    int line_no = 0;
    for (std::string_view raw : text::split(text, '\n')) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = text::trim(line);
        if (line.empty()) continue;
        double v = 0.0;
        if (!text::parse_double(line, v) || !std::isfinite(v))
            throw InvalidArgument("phase file " + std::string(source) + ", line " + std::to_string(line_no) +
                                  ": cannot parse '" + std::string(line) + "' as a phase");
        out.phases.push_back(v);
    }
    if (out.phases.empty()) throw InvalidArgument("phase file " + std::string(source) + " contains no phases");
    return out;
}

PhaseList load_phase_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("--phase-file: cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_phase_text(buf.str(), path);
}

namespace {

struct Options {
    std::string family = "bb";
    int n = 3;
    double delta = 2.0 / 3.0;
    std::string phase_file;
    double tau = 0.05;
    std::string shape = "sech";
    std::string engine = "auto";
    bool normalize_areas = false;
    double rel_tol = IntegratorConfig{}.rel_tol;
    double abs_tol = IntegratorConfig{}.abs_tol;
    std::string picture = "schroedinger";
    std::string out = "-";

    std::string alpha = "0:2:501";
    std::string detuning;
    std::string alpha2d = "0:2:201";
    std::string detuning2d = "-1:1:201";
    std::string taus = "0.01:0.3:30";
    std::string reference = "auto";
    std::string shapes = "sech,gaussian,lorentzian,rectangular";
    std::string spec_file, write_spec;

    double at = 0.0;
    std::string quantity;
    double eps_lo = 1e-3, eps_hi = 1e-2;
    std::size_t points = 21;

    std::vector<int> criteria;
    std::size_t threads = 0;
};

// Options that were given explicitly, for consistency checks.
struct Given {
    CLI::Option* family = nullptr;
    CLI::Option* n = nullptr;
    CLI::Option* delta = nullptr;
    CLI::Option* phase_file = nullptr;
    CLI::Option* normalize = nullptr;
    CLI::Option* engine = nullptr;
    CLI::Option* at = nullptr;
    CLI::Option* quantity = nullptr;
    std::string default_family;

    static bool set(const CLI::Option* o) { return o != nullptr && o->count() > 0; }
};

template <class T, class F>
T flag_value(const char* flag, F&& parse) {
    try {
        return parse();
    } catch (const InvalidArgument& e) {
        throw InvalidArgument(std::string(flag) + ": " + e.what());
    }
}

std::vector<double> range_flag(const char* flag, const std::string& text) {
    return flag_value<std::vector<double>>(flag, [&] { return parse_range(text); });
}

IntegratorConfig integrator(const Options& o) {
    IntegratorConfig cfg;
    cfg.rel_tol = o.rel_tol;
    cfg.abs_tol = o.abs_tol;
    if (o.picture == "schroedinger" || o.picture == "lab") {
        cfg.picture = Picture::Schroedinger;
    } else if (o.picture == "interaction") {
        cfg.picture = Picture::Interaction;
    } else {
        throw InvalidArgument("--picture: expected schroedinger or interaction, got '" + o.picture + "'");
    }
    flag_value<int>("--rel-tol/--abs-tol", [&] {
        cfg.validate();
        return 0;
    });
    return cfg;
}

FamilySpec family_spec(const Options& o, const Given& g) {
    FamilySpec f;
    const bool from_file = Given::set(g.phase_file);
    const std::string name = Given::set(g.family) ? o.family : g.default_family;
    if (from_file && Given::set(g.family) && o.family != "file")
        throw InvalidArgument("--phase-file conflicts with --family " + o.family);
    f.family = from_file ? Family::Custom : flag_value<Family>("--family", [&] { return parse_family(name); });
    if (f.family == Family::Custom) {
        if (!from_file) throw InvalidArgument("--family file requires --phase-file");
        f.custom = load_phase_file(o.phase_file);
    }
    if (f.is_model()) {
        if (Given::set(g.n)) throw InvalidArgument("--n does not apply to model family " + name);
        if (Given::set(g.normalize)) throw InvalidArgument("--normalize-areas does not apply to model family " + name);
    } else {
        if (Given::set(g.delta)) throw InvalidArgument("--delta applies only to the model families a, b, irz-bb, irz-nb");
        if (f.family == Family::Universal && Given::set(g.n) && o.n != 5)
            throw InvalidArgument("--n: the universal sequence has 5 pulses");
        if (f.family == Family::Custom && Given::set(g.n)) throw InvalidArgument("--n conflicts with --phase-file");
    }
    f.n = f.family == Family::Universal ? 5 : (f.family == Family::Single && !Given::set(g.n)) ? 1 : o.n;
    if ((f.family == Family::Broadband || f.family == Family::Narrowband || f.family == Family::Single) && f.n < 1)
        throw InvalidArgument("--n must be >= 1");
    f.delta = o.delta;
    f.tau = o.tau;
    f.shape = flag_value<PulseShape>("--shape", [&] { return parse_shape(o.shape); });
    f.normalize_areas = o.normalize_areas;
    f.integrator = integrator(o);
    if (!(o.tau >= 0.0) || !std::isfinite(o.tau)) throw InvalidArgument("--tau must be a finite value >= 0");
    if (!f.is_model()) flag_value<int>("--family/--n", [&] {
        (void)f.phases();
        return 0;
    });
    return f;
}

// "auto" picks the TDSE for tau > 0 and the composite-pulse limit for tau = 0.
Engine engine_for(const Options& o, const FamilySpec& f) {
    const Engine e = o.engine == "auto" ? (o.tau > 0.0 ? Engine::Tdse : Engine::CpLimit)
                                        : flag_value<Engine>("--engine", [&] { return parse_engine(o.engine); });
    if (e == Engine::Tdse && !(o.tau > 0.0)) throw InvalidArgument("--tau must be > 0 for the tdse engine");
    if (e == Engine::Analytic && !f.is_model())
        throw InvalidArgument("--engine analytic supports only the model families a, b, irz-bb, irz-nb");
    if (e == Engine::Analytic && !(o.tau > 0.0)) throw InvalidArgument("--tau must be > 0 for the analytic engine");
    return e;
}

void emit(const ScanTable& t, const Options& o, std::ostream& out) {
    if (o.out.empty() || o.out == "-") {
        write_csv(t, out);
        return;
    }
    std::ofstream file(o.out);
    if (!file) throw InvalidArgument("--out: cannot write '" + o.out + "'");
    write_csv(t, file);
    if (!file) throw InvalidArgument("--out: write to '" + o.out + "' failed");
}

void write_text_file(const std::string& path, const std::string& body, const char* flag) {
    std::ofstream file(path);
    if (!file || !(file << body)) throw InvalidArgument(std::string(flag) + ": cannot write '" + path + "'");
}

std::string read_text_file(const std::string& path, const char* flag) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument(std::string(flag) + ": cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void add_family_options(CLI::App& sub, Options& o, Given& g, const std::string& default_family) {
    g.family = sub.add_option("--family", o.family,
                              "none|single, a, b, irz-bb, irz-nb (analytic models), bb, nb, universal, file")
                   ->default_str(default_family);
    g.default_family = default_family;
    g.n = sub.add_option("--n", o.n, "number of pulses N (sequence families)")->capture_default_str();
    g.delta = sub.add_option("--delta", o.delta, "detuning strength delta of the model families")
                  ->capture_default_str();
    g.phase_file = sub.add_option("--phase-file", o.phase_file, "custom phases: one per line (radians), # comments");
    sub.add_option("--tau", o.tau, "detuning pulse width in units of T/pi")->capture_default_str();
    sub.add_option("--shape", o.shape, "sech, gaussian, lorentzian, rectangular")->capture_default_str();
    g.normalize = sub.add_flag("--normalize-areas", o.normalize_areas,
                               "map pulse areas into (-pi, pi] (same composite pulse, smaller pulses)");
    sub.add_option("--rel-tol", o.rel_tol, "integrator relative tolerance")->capture_default_str();
    sub.add_option("--abs-tol", o.abs_tol, "integrator absolute tolerance")->capture_default_str();
    sub.add_option("--picture", o.picture, "schroedinger or interaction")->capture_default_str();
    sub.add_option("--out", o.out, "output CSV path ('-' for stdout)")->capture_default_str();
}

void add_engine_option(CLI::App& sub, Options& o, Given& g) {
    g.engine = sub.add_option("--engine", o.engine,
                              "analytic (models only), tdse, cp-limit; auto = tdse if tau > 0 else cp-limit")
                   ->capture_default_str();
}

int run_verify(const Options& o, std::ostream& out) {
    std::vector<int> ids = o.criteria;
    if (ids.empty())
        for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
    bool all = true;
    for (int id : ids) {
        if (id < 1 || id > kCriterionCount)
            throw InvalidArgument("--criterion must be in 1.." + std::to_string(kCriterionCount));
        const CriterionResult r = run_criterion(id);
        out << format_result(r) << std::endl;
        all = all && r.passed;
    }
    return all ? kOk : kCheckFailed;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    std::map<const CLI::App*, Given> given;
    CLI::App app{"Detuning-pulse composite sequence simulator: scans write CSV tables."};
    app.name("dpsim");
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--threads", o.threads, "worker threads (default: hardware, capped by DPSIM_THREADS)");

    CLI::App* profile = app.add_subcommand("profile", "transition probability vs pulse area alpha");
    add_family_options(*profile, o, given[profile], "bb");
    add_engine_option(*profile, o, given[profile]);
    profile->add_option("--alpha", o.alpha, "alpha grid min:max:count or a single value")->capture_default_str();
    profile->add_option("--detuning", o.detuning, "static detuning (units of the nominal Rabi frequency)");
    profile->add_option("--reference", o.reference, "single-pulse reference column: auto, none, half-pi, pi")
        ->capture_default_str();
    profile->add_option("--spec-file", o.spec_file, "scan a waveform from a sequence spec file (tdse)");
    profile->add_option("--write-spec", o.write_spec, "write the waveform at alpha = 1 as a sequence spec file");

    CLI::App* width = app.add_subcommand("width", "TDSE profiles over alpha x tau against the tau = 0 limit");
    add_family_options(*width, o, given[width], "bb");
    width->add_option("--alpha", o.alpha, "alpha grid")->capture_default_str();
    width->add_option("--taus", o.taus, "tau grid min:max:count (all > 0)")->capture_default_str();

    CLI::App* scan2 = app.add_subcommand("scan2d", "probability map over alpha x static detuning");
    add_family_options(*scan2, o, given[scan2], "universal");
    add_engine_option(*scan2, o, given[scan2]);
    scan2->add_option("--alpha", o.alpha2d, "alpha grid")->capture_default_str();
    scan2->add_option("--detuning", o.detuning2d, "static detuning grid (units of the nominal Rabi frequency)")
        ->capture_default_str();

    CLI::App* order = app.add_subcommand("order", "log-log error-order fit in the tau = 0 limit");
    add_family_options(*order, o, given[order], "bb");
    given[order].at = order->add_option("--at", o.at, "expansion point alpha0 (default 2 for nb/irz-nb, else 1)");
    given[order].quantity = order->add_option("--quantity", o.quantity, "1-P, P or P-1/2 (default by family)");
    order->add_option("--eps-lo", o.eps_lo, "smallest eps")->capture_default_str();
    order->add_option("--eps-hi", o.eps_hi, "largest eps")->capture_default_str();
    order->add_option("--points", o.points, "log-spaced eps samples")->capture_default_str();

    CLI::App* shapes = app.add_subcommand("shapes", "TDSE profiles for several detuning pulse shapes");
    add_family_options(*shapes, o, given[shapes], "bb");
    shapes->add_option("--alpha", o.alpha, "alpha grid")->capture_default_str();
    shapes->add_option("--shapes", o.shapes, "comma-separated shapes")->capture_default_str();

    CLI::App* verify = app.add_subcommand("verify", "run the acceptance checks; nonzero exit if any fails");
    verify->add_option("--criterion", o.criteria, "run only these checks (1-9); repeatable");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInvalidArgs;
    }

    std::string command = "dpsim";
    for (const auto& a : args) command += " " + a;

    struct ThreadOverride {
        explicit ThreadOverride(std::size_t n) { set_thread_count(n); }
        ~ThreadOverride() { set_thread_count(0); }
    } threads_guard(o.threads);

    try {
        if (verify->parsed()) return run_verify(o, out);
        const Given& g = given.at(app.get_subcommands().front());

        if (profile->parsed() && !o.spec_file.empty()) {
            if (Given::set(g.family) || Given::set(g.phase_file))
                throw InvalidArgument("--spec-file conflicts with --family/--phase-file");
            const SequenceSpec base =
                flag_value<SequenceSpec>("--spec-file", [&] { return sequence_from_text(read_text_file(o.spec_file, "--spec-file")); });
            const std::vector<double> alpha = range_flag("--alpha", o.alpha);
            const IntegratorConfig cfg = integrator(o);
            ScanTable t;
            t.axes.push_back({"alpha", "pulse area / pi", alpha});
            t.columns = {"alpha", "P", "infidelity", "P_floor"};
            t.set_meta("units", "hbar=1; time in T/pi; frequency in pi/T; areas in radians");
            t.set_meta("spec_file", o.spec_file);
            t.set_meta("engine", "tdse");
            t.set_meta("rel_tol", text::format_double(cfg.rel_tol));
            t.set_meta("abs_tol", text::format_double(cfg.abs_tol));
            t.set_meta("log_floor", text::format_double(kLogFloor));
            t.rows.assign(alpha.size(), {});
            parallel_for(alpha.size(), [&](std::size_t i) {
                SequenceSpec s = base;
                s.alpha = alpha[i];
                const Propagator2 u = propagate(sample(s), cfg);
                const double p = transition_probability(u);
                t.rows[i] = {alpha[i], p, std::max(std::norm(u.a()), kLogFloor), std::max(p, kLogFloor)};
            });
            t.set_meta("command", command);
            t.validate();
            emit(t, o, out);
            return kOk;
        }

        FamilySpec fam = family_spec(o, g);
        ScanTable table;

        if (profile->parsed()) {
            const Engine engine = engine_for(o, fam);
            if (!o.detuning.empty() && fam.is_model())
                throw InvalidArgument("--detuning: the model families are defined on exact resonance");
            if (!o.detuning.empty())
                fam.static_detuning = flag_value<double>("--detuning", [&] {
                    double v = 0.0;
                    if (!text::parse_double(o.detuning, v)) throw InvalidArgument("expected a number");
                    return v;
                });
            Reference ref = Reference::Auto;
            if (o.reference == "none") ref = Reference::None;
            else if (o.reference == "half-pi") ref = Reference::HalfPi;
            else if (o.reference == "pi") ref = Reference::Pi;
            else if (o.reference != "auto") throw InvalidArgument("--reference: expected auto, none, half-pi or pi");
            if (!o.write_spec.empty()) {
                const SequenceSpec s = fam.is_model()
                                           ? model_sequence(fam.model(), 1.0, fam.tau, fam.delta, fam.shape)
                                           : build_sequence(fam.phases(), 1.0, fam.tau, fam.shape,
                                                            fam.static_detuning, fam.normalize_areas);
                write_text_file(o.write_spec, to_text(s), "--write-spec");
            }
            table = profile_scan(fam, range_flag("--alpha", o.alpha), engine, ref);
        } else if (width->parsed()) {
            const std::vector<double> taus = range_flag("--taus", o.taus);
            if (!(taus.front() > 0.0)) throw InvalidArgument("--taus: all widths must be > 0");
            table = width_study(fam, range_flag("--alpha", o.alpha), taus).table;
        } else if (scan2->parsed()) {
            const Engine engine = engine_for(o, fam);
            table = scan2d(fam, range_flag("--alpha", o.alpha2d), range_flag("--detuning", o.detuning2d), engine);
        } else if (order->parsed()) {
            const bool nb = fam.family == Family::Narrowband || fam.family == Family::ModelNB;
            const bool half = fam.family == Family::ModelA || fam.family == Family::ModelB;
            const double x0 = Given::set(g.at) ? o.at : (nb ? 2.0 : 1.0);
            const Quantity q = Given::set(g.quantity)
                                   ? flag_value<Quantity>("--quantity", [&] { return parse_quantity(o.quantity); })
                                   : (half ? Quantity::PMinusHalf : nb ? Quantity::P : Quantity::OneMinusP);
            if (!(o.eps_lo > 0.0) || !(o.eps_hi > o.eps_lo)) throw InvalidArgument("--eps-lo/--eps-hi: need 0 < lo < hi");
            if (o.points < 2) throw InvalidArgument("--points must be >= 2");
            const OrderFit fit = order_estimate(fam, x0, q, o.eps_lo, o.eps_hi, o.points);
            table.columns = {"slope", "coefficient", "residual", "points"};
            table.rows = {{fit.slope, fit.coefficient, fit.residual, static_cast<double>(fit.points)}};
            table.set_meta("units", "hbar=1; alpha = pulse area / pi");
            table.set_meta("family", std::string(to_string(fam.family)));
            table.set_meta("label", fam.label());
            table.set_meta("engine", "cp-limit");
            table.set_meta("expansion_point", text::format_double(x0));
            table.set_meta("quantity", std::string(to_string(q)));
            table.set_meta("eps_window", text::format_double(o.eps_lo) + ":" + text::format_double(o.eps_hi));
            table.set_meta("fit", "least squares of log|q| vs log eps, q ~ coefficient * eps^slope");
        } else if (shapes->parsed()) {
            std::vector<PulseShape> list;
            for (auto s : text::split(o.shapes, ','))
                if (!text::trim(s).empty())
                    list.push_back(flag_value<PulseShape>("--shapes", [&] { return parse_shape(text::trim(s)); }));
            if (list.empty()) throw InvalidArgument("--shapes: empty list");
            if (!(o.tau > 0.0)) throw InvalidArgument("--tau must be > 0 for shape comparisons");
            table = shape_comparison(fam, o.tau, range_flag("--alpha", o.alpha), list).table;
        }
        table.set_meta("command", command);
        emit(table, o, out);
        return kOk;
    } catch (const InvalidArgument& e) {
        err << "dpsim: invalid argument: " << e.what() << "\n";
        return kInvalidArgs;
    } catch (const DomainError& e) {
        err << "dpsim: invalid argument: " << e.what() << "\n";
        return kInvalidArgs;
    } catch (const NumericalError& e) {
        err << "dpsim: numerical failure: " << e.what() << "\n";
        return kNumerical;
    }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

} // namespace dpsim::cli

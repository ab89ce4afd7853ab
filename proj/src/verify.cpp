#include "dpsim/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <numbers>
#include <random>
#include <sstream>

#include "dpsim/analytic_models.hpp"
#include "dpsim/errors.hpp"
#include "dpsim/parallel.hpp"
#include "dpsim/scan.hpp"
#include "dpsim/special_functions.hpp"

namespace dpsim {
namespace {

constexpr double kPi = std::numbers::pi;

// Collects bound checks; `ok` is the conjunction.
struct Report {
    bool ok = true;
    std::ostringstream os;

    void check(bool pass, const char* fmt, auto... args) {
        char buf[256];
        std::snprintf(buf, sizeof buf, fmt, args...);
        if (os.tellp() > 0) os << "; ";
        os << buf << (pass ? "" : " [FAIL]");
        ok = ok && pass;
    }
};

FamilySpec family(Family f, int n = 3) {
    FamilySpec s;
    s.family = f;
    s.n = n;
    return s;
}

FamilySpec model_family(Model m, double delta) {
    static constexpr Family kMap[] = {Family::ModelA, Family::ModelB, Family::ModelBB, Family::ModelNB};
    FamilySpec s;
    s.family = kMap[static_cast<int>(m)];
    s.delta = delta;
    return s;
}

// 1: closed form vs numerical integration of the same segment construction.
void analytic_vs_tdse(Report& rep) {
    const Model models[] = {Model::A, Model::B, Model::BB, Model::NB};
    const double taus[] = {0.01, 0.05, 0.1, 0.2, 0.3};
    const double deltas[] = {0.5, 2.0 / 3.0};
    struct Point {
        Model m;
        double alpha, tau, delta;
    };
    std::vector<Point> pts;
    for (Model m : models)
        for (double tau : taus)
            for (double d : deltas)
                for (int k = 0; k <= 12; ++k) pts.push_back({m, 0.25 * k, tau, d});
    std::vector<double> diff(pts.size());
    parallel_for(pts.size(), [&](std::size_t i) {
        const RzParams p{pts[i].alpha, pts[i].tau, pts[i].delta};
        diff[i] = std::abs(transition_probability(model_propagator(pts[i].m, p)) -
                           transition_probability(model_propagator_tdse(pts[i].m, p)));
    });
    const auto worst = std::max_element(diff.begin(), diff.end()) - diff.begin();
    rep.check(diff[worst] <= 1e-6, "max |P_analytic - P_tdse| = %.3g <= 1e-6 over %zu points (worst: %s alpha=%g tau=%g delta=%.4g)",
              diff[worst], pts.size(), std::string(to_string(pts[worst].m)).c_str(), pts[worst].alpha,
              pts[worst].tau, pts[worst].delta);
}

void equal_superposition(Report& rep) {
    const double pa = transition_probability(model_cp_limit(Model::A, 1.0, 0.5));
    const double pb = transition_probability(model_cp_limit(Model::B, 1.0, 2.0 / 3.0));
    rep.check(std::abs(pa - 0.5) <= 1e-10, "A: |P(1) - 1/2| = %.3g", std::abs(pa - 0.5));
    rep.check(std::abs(pb - 0.5) <= 1e-10, "B: |P(1) - 1/2| = %.3g", std::abs(pb - 0.5));
    const double c2 = expansion_coefficient(Model::A, 0.5, 2), want = -kPi * kPi / 8;
    rep.check(std::abs(c2 / want - 1) <= 0.01, "A eps^2 coefficient %.10g vs -pi^2/8 = %.10g (rel %.2g)", c2, want,
              std::abs(c2 / want - 1));
}

void error_orders(Report& rep) {
    struct Case {
        const char* name;
        FamilySpec fam;
        double x0;
        Quantity q;
        double slope, tol;
    };
    FamilySpec single = family(Family::Single, 1);
    const Case cases[] = {
        {"single pi 1-P", single, 1.0, Quantity::OneMinusP, 2, 0.1},
        {"A P-1/2", model_family(Model::A, 0.5), 1.0, Quantity::PMinusHalf, 2, 0.1},
        {"B P-1/2", model_family(Model::B, 2.0 / 3.0), 1.0, Quantity::PMinusHalf, 3, 0.2},
        {"BB3 1-P", family(Family::Broadband), 1.0, Quantity::OneMinusP, 6, 0.3},
        {"NB3 P@2", family(Family::Narrowband), 2.0, Quantity::P, 6, 0.3},
    };
    for (const Case& c : cases) {
        const OrderFit fit = order_estimate(c.fam, c.x0, c.q);
        rep.check(std::abs(fit.slope - c.slope) <= c.tol, "%s slope %.4f (%g +- %g)", c.name, fit.slope, c.slope, c.tol);
    }
}

void bb_cancellation(Report& rep) {
    const double d1 = expansion_coefficient(Model::BB, 2.0 / 3.0, 1);
    rep.check(d1 <= 1e-8, "delta=2/3 d|U11|/deps = %.3g <= 1e-8", d1);
    const double c0 = expansion_coefficient(Model::BB, 0.0, 1), want = 1.5 * kPi;
    rep.check(std::abs(c0 / want - 1) <= 0.01, "delta=0 linear coefficient %.10g vs 3pi/2 (rel %.2g)", c0,
              std::abs(c0 / want - 1));
}

void nb_inversion(Report& rep) {
    FamilySpec nb = family(Family::Narrowband);
    const double pcp = transition_probability(evaluate(nb, 1.0, Engine::CpLimit));
    rep.check(std::abs(pcp - 1) <= 1e-12, "CP |P(1) - 1| = %.3g", std::abs(pcp - 1));
    nb.tau = 0.01;
    const double pt = transition_probability(evaluate(nb, 1.0, Engine::Tdse));
    rep.check(pt >= 0.999, "TDSE tau=0.01 P(1) = %.10f >= 0.999", pt);
}

void width_threshold(Report& rep) {
    const std::vector<double> alpha = linspace(0.0, 2.0, 201);
    const double taus[] = {0.01, 0.3};
    for (int n : {3, 5, 7, 9}) {
        const WidthStudy w = width_study(family(Family::Broadband, n), alpha, taus);
        rep.check(w.summary[0].sup_dev_grid <= 0.02, "BB%d tau=0.01 sup %.4f <= 0.02 (alpha in [0.9,1.1]: %.2g)", n,
                  w.summary[0].sup_dev_grid, w.summary[0].sup_dev_window);
        rep.check(w.summary[1].sup_dev_grid >= 0.05, "BB%d tau=0.3 sup %.4f >= 0.05", n, w.summary[1].sup_dev_grid);
    }
}

void shape_independence(Report& rep) {
    const std::vector<double> alpha = linspace(0.0, 2.0, 201);
    const FamilySpec bb3 = family(Family::Broadband);
    const double wide = shape_comparison(bb3, 0.05, alpha).max_pairwise_deviation;
    const double narrow = shape_comparison(bb3, 0.005, alpha).max_pairwise_deviation;
    rep.check(wide <= 0.02, "tau=0.05 max pairwise %.4f <= 0.02", wide);
    rep.check(narrow < wide, "tau=0.005 max pairwise %.4f < tau=0.05 value", narrow);
}

void universal_map(Report& rep) {
    const FamilySpec uni = family(Family::Universal, 5);
    const double p0 = transition_probability(evaluate(uni, 1.0, 0.0, Engine::CpLimit));
    rep.check(std::abs(p0 - 1) <= 1e-12, "tau=0 |P(1,0) - 1| = %.3g", std::abs(p0 - 1));

    const std::vector<double> pa = linspace(0.9, 1.1, 21), pd = linspace(-0.1, 0.1, 21);
    const ScanTable plateau = scan2d_universal(pa, pd, 0.0);
    double pmin = 1.0;
    for (const auto& r : plateau.rows) pmin = std::min(pmin, r[2]);
    rep.check(pmin >= 0.99, "tau=0 plateau min P %.6f >= 0.99", pmin);

    const std::vector<double> ga = linspace(0.0, 2.0, 41), gd = linspace(-1.0, 1.0, 41);
    const double sup = sup_difference(scan2d_universal(ga, gd, 0.0), scan2d_universal(ga, gd, 0.05));
    const double inner = sup_difference(plateau, scan2d_universal(pa, pd, 0.05));
    rep.check(sup <= 0.05, "tau=0.05 vs tau=0 sup over [0,2]x[-1,1] %.4f <= 0.05 (plateau region: %.2g)", sup, inner);
}

void properties(Report& rep) {
    // Unitarity and picture equivalence over a spread of waveforms.
    struct Case {
        FamilySpec fam;
        double alpha, det;
    };
    std::vector<Case> cases;
    const PulseShape shapes[] = {PulseShape::Sech, PulseShape::Gaussian, PulseShape::Lorentzian,
                                 PulseShape::Rectangular};
    for (Family f : {Family::Broadband, Family::Narrowband, Family::Universal})
        for (PulseShape s : shapes)
            for (double tau : {0.01, 0.1, 0.3})
                for (double alpha : {0.3, 1.0, 2.2}) {
                    FamilySpec fam = family(f, f == Family::Universal ? 5 : 3);
                    fam.shape = s;
                    fam.tau = tau;
                    cases.push_back({fam, alpha, f == Family::Universal ? 0.2 : 0.0});
                }
    std::vector<double> defect(cases.size()), picture(cases.size());
    parallel_for(cases.size(), [&](std::size_t i) {
        const Case& c = cases[i];
        const HamiltonianSampler h =
            sample(build_sequence(c.fam.phases(), c.alpha, c.fam.tau, c.fam.shape, c.det, false));
        IntegrationStats s1, s2;
        IntegratorConfig cfg;
        const Propagator2 u1 = propagate(h, cfg, &s1);
        cfg.picture = Picture::Interaction;
        const Propagator2 u2 = propagate(h, cfg, &s2);
        defect[i] = std::max(s1.unitarity_defect, s2.unitarity_defect);
        picture[i] = std::abs(transition_probability(u1) - transition_probability(u2));
    });
    const double dmax = *std::max_element(defect.begin(), defect.end());
    const double pmax = *std::max_element(picture.begin(), picture.end());
    rep.check(dmax <= 1e-8, "unitarity defect %.2g <= 1e-8 (%zu integrations)", dmax, 2 * cases.size());
    rep.check(pmax <= 1e-8, "picture |dP| %.2g <= 1e-8", pmax);

    // Gamma identities on a seeded random grid away from the poles.
    std::mt19937_64 rng(20140915);
    std::uniform_real_distribution<double> re(-6.0, 6.0), im(-15.0, 15.0);
    double refl = 0.0, rec = 0.0;
    for (int i = 0; i < 2000; ++i) {
        const std::complex<double> z(re(rng), im(rng));
        if (std::abs(z.imag()) < 0.05 && std::abs(z.real() - std::round(z.real())) < 0.05) continue;
        const std::complex<double> g = complex_gamma(z);
        const std::complex<double> lhs = g * complex_gamma(1.0 - z), rhs = kPi / std::sin(kPi * z);
        refl = std::max(refl, std::abs(lhs - rhs) / std::abs(rhs));
        const std::complex<double> up = complex_gamma(z + 1.0);
        rec = std::max(rec, std::abs(up - z * g) / std::abs(up));
    }
    rep.check(refl <= 1e-11, "gamma reflection rel %.2g <= 1e-11", refl);
    rep.check(rec <= 1e-11, "gamma recurrence rel %.2g <= 1e-11", rec);

    // CSV round trip and thread-count determinism on a detuned map.
    FamilySpec uni = family(Family::Universal, 5);
    uni.tau = 0.05;
    const std::vector<double> ga = linspace(0.5, 1.5, 9), gd = linspace(-0.3, 0.3, 7);
    set_thread_count(1);
    const ScanTable one = scan2d(uni, ga, gd, Engine::Tdse);
    bool same_threads = true;
    for (std::size_t n : {2u, 3u, 8u}) {
        set_thread_count(n);
        same_threads = same_threads && scan2d(uni, ga, gd, Engine::Tdse).rows == one.rows;
    }
    set_thread_count(0);
    const std::string text = to_csv(one);
    const ScanTable back = csv_from_string(text);
    bool exact = back.rows.size() == one.rows.size() && back.columns == one.columns && to_csv(back) == text;
    for (std::size_t r = 0; exact && r < one.rows.size(); ++r)
        exact = std::memcmp(back.rows[r].data(), one.rows[r].data(), one.rows[r].size() * sizeof(double)) == 0;
    rep.check(exact, "CSV round trip bit-exact: %s", exact ? "yes" : "no");
    rep.check(same_threads, "bit-identical for 1/2/3/8 threads: %s", same_threads ? "yes" : "no");
}

struct Entry {
    const char* name;
    void (*run)(Report&);
};

constexpr Entry kEntries[kCriterionCount] = {
    {"analytic vs TDSE cross-validation", analytic_vs_tdse},
    {"equal-superposition values", equal_superposition},
    {"error orders", error_orders},
    {"first-order cancellation at delta=2/3", bb_cancellation},
    {"narrowband nominal inversion", nb_inversion},
    {"width threshold", width_threshold},
    {"shape independence", shape_independence},
    {"universal sequence map", universal_map},
    {"property suites", properties},
};

} // namespace

CriterionResult run_criterion(int id) {
    if (id < 1 || id > kCriterionCount)
        throw InvalidArgument("criterion id must be 1.." + std::to_string(kCriterionCount));
    const Entry& e = kEntries[id - 1];
    CriterionResult r{id, e.name, false, {}, 0.0};
    const auto t0 = std::chrono::steady_clock::now();
    try {
        Report rep;
        e.run(rep);
        r.passed = rep.ok;
        r.detail = rep.os.str();
    } catch (const std::exception& ex) {
        r.detail = std::string("error: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (id == 1 && r.seconds > 60.0) {
        r.passed = false;
        r.detail += "; runtime exceeds 60 s [FAIL]";
    }
    return r;
}

std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& on_result) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) {
        out.push_back(run_criterion(id));
        if (on_result) on_result(out.back());
    }
    return out;
}

std::string format_result(const CriterionResult& r) {
    char time[32];
    std::snprintf(time, sizeof time, "%.2f s", r.seconds);
    return std::string(r.passed ? "PASS" : "FAIL") + " [" + std::to_string(r.id) + "] " + r.name + ": " + r.detail +
           " (" + time + ")";
}

} // namespace dpsim

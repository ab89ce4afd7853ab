#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dpsim/analytic_models.hpp"
#include "dpsim/phase_sequences.hpp"
#include "dpsim/scan_table.hpp"
#include "dpsim/tdse.hpp"
#include "dpsim/waveforms.hpp"

namespace dpsim {

/// analytic: closed-form iRZ models; tdse: numerical integration;
/// cp-limit: tau = 0 composite pulse.
enum class Engine { Analytic, Tdse, CpLimit };

std::string_view to_string(Engine e);
Engine parse_engine(std::string_view name);

/// Model families (model-a, model-b, irz-bb, irz-nb) follow the analytic
/// segment construction; the TDSE engine integrates each iRZ segment over its
/// full envelope support. Sequence families (single, bb, nb, universal, custom)
/// integrate the waveform of build_sequence.
enum class Family { Single, ModelA, ModelB, ModelBB, ModelNB, Broadband, Narrowband, Universal, Custom };

std::string_view to_string(Family f);
Family parse_family(std::string_view name);

struct FamilySpec {
    Family family = Family::Broadband;
    int n = 3;
    /// Detuning strength of the model families.
    double delta = 2.0 / 3.0;
    PhaseList custom;
    double tau = 0.05;
    PulseShape shape = PulseShape::Sech;
    double static_detuning = 0.0;
    bool normalize_areas = false;
    IntegratorConfig integrator;

    bool is_model() const;
    Model model() const;
    /// Phases of a sequence family; throws for model families.
    PhaseList phases() const;
    std::string label() const;
};

/// Single evaluation point.
Propagator2 evaluate(const FamilySpec& fam, double alpha, Engine engine);
Propagator2 evaluate(const FamilySpec& fam, double alpha, double static_detuning, Engine engine);

/// Dashed single-pulse reference: sin^2(pi alpha / 4) or sin^2(pi alpha / 2).
enum class Reference { Auto, None, HalfPi, Pi };

/// Floor applied before taking logs of error columns.
inline constexpr double kLogFloor = 1e-16;

/// Columns: alpha, P, infidelity = max(|P - target|, 1e-16) (target 1/2 for
/// models A/B, 1 otherwise), P_floor = max(P, 1e-16), optional reference.
ScanTable profile_scan(const FamilySpec& fam, std::span<const double> alpha_grid, Engine engine,
                       Reference ref = Reference::Auto);

struct WidthSummary {
    double tau = 0.0;
    double sup_dev_window = 0.0; ///< max |P - P_cp| over alpha in [0.9, 1.1]
    double sup_dev_grid = 0.0;   ///< max |P - P_cp| over the whole alpha grid
};

struct WidthStudy {
    ScanTable table; ///< axes tau (slow), alpha; columns P, P_cp, deviation
    std::vector<WidthSummary> summary;
};

/// TDSE profiles vs tau against the CP-limit profile.
WidthStudy width_study(const FamilySpec& fam, std::span<const double> alpha_grid, std::span<const double> tau_grid);

/// P over (alpha, static detuning); detuning in units of the nominal Rabi
/// frequency (pi/T). Engine as given.
ScanTable scan2d(const FamilySpec& fam, std::span<const double> alpha_grid, std::span<const double> detuning_grid,
                 Engine engine);

/// Universal five-pulse map. tau == 0 selects the CP-limit engine.
ScanTable scan2d_universal(std::span<const double> alpha_grid, std::span<const double> detuning_grid, double tau,
                           PulseShape shape = PulseShape::Sech, const IntegratorConfig& cfg = {});

/// Largest |P_x - P_y| over matching rows of two equally gridded tables.
double sup_difference(const ScanTable& x, const ScanTable& y, std::string_view column = "P");

enum class Quantity { OneMinusP, P, PMinusHalf };

std::string_view to_string(Quantity q);
Quantity parse_quantity(std::string_view name);

struct OrderFit {
    double slope = 0.0;
    double coefficient = 0.0; ///< q ~ coefficient * eps^slope
    double residual = 0.0;    ///< RMS of the log-log fit
    std::size_t points = 0;
};

/// Least-squares slope of log|q| vs log eps over eps in [eps_lo, eps_hi]
/// (log spaced, eps > 0, alpha = expansion_point + eps), CP-limit engine.
/// Throws NumericalError if |q| < 1e-14 across the window.
OrderFit order_estimate(const FamilySpec& fam, double expansion_point, Quantity quantity, double eps_lo = 1e-3,
                        double eps_hi = 1e-2, std::size_t points = 21);

struct ShapeComparison {
    ScanTable table; ///< alpha plus one P column per shape
    double max_pairwise_deviation = 0.0;
};

/// TDSE profiles of the same family for each shape (identical areas).
ShapeComparison shape_comparison(const FamilySpec& fam, double tau, std::span<const double> alpha_grid,
                                 std::span<const PulseShape> shapes);
ShapeComparison shape_comparison(const FamilySpec& fam, double tau, std::span<const double> alpha_grid);

} // namespace dpsim

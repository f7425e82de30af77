#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rst/interfaces.hpp"
#include "rst/paths.hpp"

namespace rst {

/// Everything measured on one replicate tree.
struct ReplicateRecord {
    std::uint64_t seed = 0;
    std::int32_t children_of_origin = 0;
    std::int32_t m_unbounded = 0;

    // present when m_unbounded >= 2 and the reading was well formed
    std::vector<std::pair<std::int32_t, double>> sectors;     // (color, width)
    std::vector<SectorReading::Boundary> interface_thetas;    // boundary angles

    struct ChiSample {
        double r = 0.0;
        long chi = 0;
        long chi_tilde = -1;  // -1 when r <= 2/pi (arc undefined)
    };
    std::vector<ChiSample> chi_grid;

    std::vector<std::pair<double, bool>> agreement_flags;     // (center abscissa, agreed)
    std::vector<std::pair<double, long>> spine_counts;        // (r, bifurcations)
    std::vector<std::pair<double, long>> direction_paths;     // (analysis radius, count)
    long noncrossing_violations = 0;
    bool sector_anomaly = false;
};

struct MonteCarloConfig {
    long replicates = 1;
    double intensity = 1.0;
    double window_radius = 60.0;
    double cut_fraction = 0.8;
    double analysis_fraction = 0.5;
    int r_grid_count = 10;
    std::uint64_t base_seed = 1;
    int threads = 0;  // 0 = hardware concurrency
    LabelScheme scheme = LabelScheme::random_uniform;

    // direction-multiplicity probe around theta = 0
    double direction_half_width = 0.05;
    // agreement balls of radius 2 at these fractions of the window radius
    std::vector<double> agreement_center_fractions{1.0 / 6.0, 1.0 / 3.0, 2.0 / 3.0};
    double agreement_ball_radius = 2.0;

    SurvivorConfig survivor() const {
        return {cut_fraction * window_radius, analysis_fraction * window_radius};
    }
    std::vector<double> r_grid() const;
    void validate() const;
};

/// Runs `replicates` independent replicates, replicate k seeded with
/// base_seed + k. Output is ordered by k and independent of the thread
/// schedule. Per-replicate failures abort the run with the replicate index.
std::vector<ReplicateRecord> run_monte_carlo(const MonteCarloConfig& cfg);

/// Measures one already-sampled point set (shared by run_monte_carlo and the
/// single-seed CLI commands).
ReplicateRecord measure_replicate(const PointSet& ps, const MonteCarloConfig& cfg,
                                  std::uint64_t seed);

/// Proportions of each value in 0..support_max; rejects empty input and
/// values outside the support.
std::vector<double> empirical_distribution(std::span<const int> values, int support_max = 5);

struct BetaFit {
    double alpha_hat = 0.0;
    double beta_hat = 0.0;
    double sample_mean = 0.0;
    double sample_variance = 0.0;  // population variance (divide by n)
};

/// Moment fit of a Beta distribution scaled to [0, 2pi):
///   alpha = (m/2pi) (m(2pi-m)/Var - 1),  beta = ((2pi-m)/2pi) (m(2pi-m)/Var - 1).
/// Rejects samples of size < 2 (invalid_argument) and samples whose variance
/// makes the estimates nonpositive (domain_error).
BetaFit beta_moment_fit(std::span<const double> sample);

/// Two-sided Kolmogorov-Smirnov statistic against a given CDF.
double ks_statistic(std::span<const double> sample,
                    const std::function<double(double)>& cdf);

/// CDF of the uniform distribution on [0, 2pi).
double uniform_cdf_2pi(double x);

/// Regularized incomplete beta function I_x(a, b), evaluated by Lentz's
/// continued fraction to ~1e-10.
double regularized_incomplete_beta(double a, double b, double x);

/// CDF of Beta(alpha, beta) on [0, 1] and scaled to [0, 2pi).
double beta_cdf(double x, double alpha, double beta);
double beta_cdf_2pi(double x, double alpha, double beta);

/// Aggregate summary written to report.json.
struct AggregateReport {
    MonteCarloConfig config;
    long replicates = 0;
    std::vector<double> children_distribution;  // bins 0..5
    std::vector<double> m_distribution;         // bins 0..5

    struct SectorFit {
        int m = 0;
        long n = 0;
        bool valid = false;
        BetaFit fit;
    };
    std::vector<SectorFit> sector_fits;

    struct CurvePoint {
        double r = 0.0;
        long n = 0;
        double mean = 0.0;
        double se = 0.0;            // standard error of the mean
        double mean_over_r = 0.0;
        double se_over_r = 0.0;
    };
    std::vector<CurvePoint> chi_curve;
    std::vector<CurvePoint> chi_tilde_curve;
    std::vector<CurvePoint> spine_curve;

    struct AgreementPoint {
        double center = 0.0;
        long n = 0;
        double probability = 0.0;
        double se = 0.0;
    };
    std::vector<AgreementPoint> agreement_curve;

    struct MultiplicityPoint {
        double radius = 0.0;
        long n = 0;
        double fraction_multiple = 0.0;  // fraction of replicates with >= 2 paths
        double se = 0.0;
    };
    std::vector<MultiplicityPoint> direction_multiplicity;

    struct DirectionKs {
        long n = 0;
        double d = 0.0;
        double critical_5pct = 0.0;  // 1.36 / sqrt(n)
    };
    DirectionKs direction_ks;

    long noncrossing_violations_total = 0;
    long sector_anomalies = 0;
};

AggregateReport aggregate(const std::vector<ReplicateRecord>& records,
                          const MonteCarloConfig& cfg);

std::string report_to_json(const AggregateReport& report);

}  // namespace rst

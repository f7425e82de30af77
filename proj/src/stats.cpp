#include "rst/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "rst/geometry.hpp"
#include "rst/rng.hpp"

namespace rst {

std::vector<double> MonteCarloConfig::r_grid() const {
    std::vector<double> grid(r_grid_count);
    const double analysis = analysis_fraction * window_radius;
    for (int k = 0; k < r_grid_count; ++k)
        grid[k] = analysis * static_cast<double>(k + 1) / r_grid_count;
    return grid;
}

void MonteCarloConfig::validate() const {
    if (replicates < 1) throw std::invalid_argument("config: replicates must be >= 1");
    if (!(intensity > 0.0)) throw std::invalid_argument("config: intensity must be positive");
    if (!(window_radius > 0.0))
        throw std::invalid_argument("config: window radius must be positive");
    if (!(analysis_fraction > 0.0) || !(analysis_fraction <= cut_fraction) ||
        !(cut_fraction <= 1.0))
        throw std::invalid_argument("config: need 0 < analysis <= cut <= 1");
    if (r_grid_count < 1) throw std::invalid_argument("config: grid count must be >= 1");
}

ReplicateRecord measure_replicate(const PointSet& ps, const MonteCarloConfig& cfg,
                                  std::uint64_t seed) {
    ReplicateRecord rec;
    rec.seed = seed;

    const Tree tree = build_rst_indexed(ps);
    rec.children_of_origin = tree.origin_child_count();
    rec.noncrossing_violations = static_cast<long>(check_noncrossing(tree).size());

    const SurvivorConfig survivor = cfg.survivor();
    const std::vector<char> mask = surviving_mask(tree, survivor);

    if (rec.children_of_origin >= 1) {
        const Coloring col = color_subtrees(tree, cfg.scheme, mix_seed(seed, 0x1abe1ULL));
        rec.m_unbounded = unbounded_count(tree, col, survivor);
        if (rec.m_unbounded >= 2) {
            const auto reading =
                surviving_interfaces(tree, col, survivor, survivor.analysis_radius);
            if (reading) {
                rec.sectors = reading->sectors;
                rec.interface_thetas = reading->boundaries;
            } else {
                rec.sector_anomaly = true;
            }
        }
    }

    for (const double r : cfg.r_grid()) {
        ReplicateRecord::ChiSample s;
        s.r = r;
        s.chi = chi(tree, r, survivor, mask);
        s.chi_tilde = r > 2.0 / std::numbers::pi ? chi_tilde(tree, r, survivor, mask) : -1;
        rec.chi_grid.push_back(s);
        rec.spine_counts.emplace_back(r, spine_bifurcations(tree, survivor, r));
    }

    for (const double frac : {0.5 * cfg.analysis_fraction, cfg.analysis_fraction}) {
        const SurvivorConfig probe{survivor.cut_radius, frac * cfg.window_radius};
        const auto paths =
            directional_paths(tree, 0.0, cfg.direction_half_width, probe);
        rec.direction_paths.emplace_back(probe.analysis_radius,
                                         static_cast<long>(paths.size()));
    }

    Forest forest;
    bool have_forest = false;
    for (const double frac : cfg.agreement_center_fractions) {
        const double center = frac * cfg.window_radius;
        if (center + 2.0 * cfg.agreement_ball_radius > cfg.window_radius) continue;
        if (!have_forest) {
            forest = build_dsf(ps);
            have_forest = true;
        }
        rec.agreement_flags.emplace_back(
            center, dsf_rst_agreement(tree, forest, center, cfg.agreement_ball_radius));
    }
    return rec;
}

std::vector<ReplicateRecord> run_monte_carlo(const MonteCarloConfig& cfg) {
    cfg.validate();
    const long n = cfg.replicates;
    std::vector<ReplicateRecord> records(n);
    std::vector<std::string> errors(n);

    std::atomic<long> next{0};
    const auto worker = [&]() {
        for (;;) {
            const long k = next.fetch_add(1);
            if (k >= n) return;
            const std::uint64_t seed = cfg.base_seed + static_cast<std::uint64_t>(k);
            try {
                const PointSet ps = sample_palm_ppp(cfg.intensity, cfg.window_radius, seed);
                records[k] = measure_replicate(ps, cfg, seed);
            } catch (const std::exception& e) {
                errors[k] = e.what();
            }
        }
    };

    long threads = cfg.threads > 0 ? cfg.threads
                                   : static_cast<long>(std::thread::hardware_concurrency());
    threads = std::max<long>(1, std::min<long>(threads, n));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    for (long k = 0; k < n; ++k) {
        if (!errors[k].empty())
            throw std::runtime_error("replicate " + std::to_string(k) + ": " + errors[k]);
    }
    return records;
}

std::vector<double> empirical_distribution(std::span<const int> values, int support_max) {
    if (values.empty()) throw std::invalid_argument("empirical_distribution: empty input");
    std::vector<double> prop(support_max + 1, 0.0);
    for (const int v : values) {
        if (v < 0 || v > support_max)
            throw std::invalid_argument("empirical_distribution: value outside support");
        prop[v] += 1.0;
    }
    for (double& p : prop) p /= static_cast<double>(values.size());
    return prop;
}

BetaFit beta_moment_fit(std::span<const double> sample) {
    if (sample.size() < 2)
        throw std::invalid_argument("beta_moment_fit: need at least two values");
    const double n = static_cast<double>(sample.size());
    double mean = 0.0;
    for (const double x : sample) mean += x;
    mean /= n;
    double var = 0.0;
    for (const double x : sample) var += (x - mean) * (x - mean);
    var /= n;

    const double spread = mean * (two_pi - mean);
    if (!(var > 0.0) || !(var < spread))
        throw std::domain_error("beta_moment_fit: variance incompatible with positive estimates");

    const double common = spread / var - 1.0;
    BetaFit fit;
    fit.sample_mean = mean;
    fit.sample_variance = var;
    fit.alpha_hat = mean / two_pi * common;
    fit.beta_hat = (two_pi - mean) / two_pi * common;
    return fit;
}

double ks_statistic(std::span<const double> sample,
                    const std::function<double(double)>& cdf) {
    if (sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max(d, (static_cast<double>(i) + 1.0) / n - f);
        d = std::max(d, f - static_cast<double>(i) / n);
    }
    return d;
}

double uniform_cdf_2pi(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= two_pi) return 1.0;
    return x / two_pi;
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("regularized_incomplete_beta: shape must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;

    // Modified Lentz continued fraction for I_x(a,b); converges fastest when
    // x < (a+1)/(a+b+2), otherwise use the symmetry I_x(a,b) = 1 - I_{1-x}(b,a).
    const auto betacf = [](double aa, double bb, double xx) {
        constexpr double eps = 1e-12;
        constexpr double tiny = 1e-300;
        const double qab = aa + bb;
        const double qap = aa + 1.0;
        const double qam = aa - 1.0;
        double c = 1.0;
        double d = 1.0 - qab * xx / qap;
        if (std::abs(d) < tiny) d = tiny;
        d = 1.0 / d;
        double h = d;
        for (int m = 1; m <= 400; ++m) {
            const double m2 = 2.0 * m;
            double num = m * (bb - m) * xx / ((qam + m2) * (aa + m2));
            d = 1.0 + num * d;
            if (std::abs(d) < tiny) d = tiny;
            c = 1.0 + num / c;
            if (std::abs(c) < tiny) c = tiny;
            d = 1.0 / d;
            h *= d * c;
            num = -(aa + m) * (qab + m) * xx / ((aa + m2) * (qap + m2));
            d = 1.0 + num * d;
            if (std::abs(d) < tiny) d = tiny;
            c = 1.0 + num / c;
            if (std::abs(c) < tiny) c = tiny;
            d = 1.0 / d;
            const double delta = d * c;
            h *= delta;
            if (std::abs(delta - 1.0) < eps) break;
        }
        return h;
    };

    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double beta_cdf(double x, double alpha, double beta) {
    return regularized_incomplete_beta(alpha, beta, x);
}

double beta_cdf_2pi(double x, double alpha, double beta) {
    return regularized_incomplete_beta(alpha, beta, x / two_pi);
}

namespace {

AggregateReport::CurvePoint curve_point(double r, const std::vector<double>& values) {
    AggregateReport::CurvePoint p;
    p.r = r;
    p.n = static_cast<long>(values.size());
    if (values.empty()) return p;
    double mean = 0.0;
    for (const double v : values) mean += v;
    mean /= static_cast<double>(p.n);
    double var = 0.0;
    for (const double v : values) var += (v - mean) * (v - mean);
    var /= static_cast<double>(p.n);
    p.mean = mean;
    p.se = std::sqrt(var / static_cast<double>(p.n));
    p.mean_over_r = mean / r;
    p.se_over_r = p.se / r;
    return p;
}

}  // namespace

AggregateReport aggregate(const std::vector<ReplicateRecord>& records,
                          const MonteCarloConfig& cfg) {
    AggregateReport rep;
    rep.config = cfg;
    rep.replicates = static_cast<long>(records.size());

    std::vector<int> children, ms;
    for (const auto& r : records) {
        children.push_back(r.children_of_origin);
        ms.push_back(r.m_unbounded);
        rep.noncrossing_violations_total += r.noncrossing_violations;
        rep.sector_anomalies += r.sector_anomaly ? 1 : 0;
    }
    rep.children_distribution = empirical_distribution(children);
    rep.m_distribution = empirical_distribution(ms);

    for (int m = 2; m <= 5; ++m) {
        AggregateReport::SectorFit fit;
        fit.m = m;
        std::vector<double> pooled;
        for (const auto& r : records) {
            if (r.m_unbounded != m) continue;
            for (const auto& [color, width] : r.sectors) pooled.push_back(width);
        }
        fit.n = static_cast<long>(pooled.size());
        if (fit.n >= 10) {
            try {
                fit.fit = beta_moment_fit(pooled);
                fit.valid = true;
            } catch (const std::exception&) {
                fit.valid = false;
            }
        }
        rep.sector_fits.push_back(fit);
    }

    if (!records.empty()) {
        const std::size_t grid_size = records.front().chi_grid.size();
        for (std::size_t g = 0; g < grid_size; ++g) {
            std::vector<double> chis, tildes, spines;
            const double r = records.front().chi_grid[g].r;
            for (const auto& rec : records) {
                chis.push_back(static_cast<double>(rec.chi_grid[g].chi));
                if (rec.chi_grid[g].chi_tilde >= 0)
                    tildes.push_back(static_cast<double>(rec.chi_grid[g].chi_tilde));
                spines.push_back(static_cast<double>(rec.spine_counts[g].second));
            }
            rep.chi_curve.push_back(curve_point(r, chis));
            if (!tildes.empty()) rep.chi_tilde_curve.push_back(curve_point(r, tildes));
            rep.spine_curve.push_back(curve_point(r, spines));
        }

        for (std::size_t a = 0; a < records.front().agreement_flags.size(); ++a) {
            AggregateReport::AgreementPoint pt;
            pt.center = records.front().agreement_flags[a].first;
            long agreed = 0;
            for (const auto& rec : records) agreed += rec.agreement_flags[a].second ? 1 : 0;
            pt.n = rep.replicates;
            pt.probability = static_cast<double>(agreed) / static_cast<double>(pt.n);
            pt.se = std::sqrt(pt.probability * (1.0 - pt.probability) /
                              static_cast<double>(pt.n));
            rep.agreement_curve.push_back(pt);
        }

        for (std::size_t d = 0; d < records.front().direction_paths.size(); ++d) {
            AggregateReport::MultiplicityPoint pt;
            pt.radius = records.front().direction_paths[d].first;
            long multiple = 0;
            for (const auto& rec : records)
                multiple += rec.direction_paths[d].second >= 2 ? 1 : 0;
            pt.n = rep.replicates;
            pt.fraction_multiple =
                static_cast<double>(multiple) / static_cast<double>(pt.n);
            pt.se = std::sqrt(pt.fraction_multiple * (1.0 - pt.fraction_multiple) /
                              static_cast<double>(pt.n));
            rep.direction_multiplicity.push_back(pt);
        }
    }

    // Direction-uniformity sample: per replicate, the boundary angle at the
    // counterclockwise end of the arc of color 1. Under random labeling and
    // rotation invariance this angle is uniform on [0, 2pi).
    std::vector<double> thetas;
    for (const auto& rec : records) {
        for (const auto& b : rec.interface_thetas) {
            if (b.color_i == 1) {
                thetas.push_back(b.theta);
                break;
            }
        }
    }
    rep.direction_ks.n = static_cast<long>(thetas.size());
    if (!thetas.empty()) {
        rep.direction_ks.d = ks_statistic(thetas, uniform_cdf_2pi);
        rep.direction_ks.critical_5pct = 1.36 / std::sqrt(static_cast<double>(thetas.size()));
    }
    return rep;
}

std::string report_to_json(const AggregateReport& rep) {
    nlohmann::json j;
    j["replicates"] = rep.replicates;
    j["config"] = {{"intensity", rep.config.intensity},
                   {"window_radius", rep.config.window_radius},
                   {"cut_fraction", rep.config.cut_fraction},
                   {"analysis_fraction", rep.config.analysis_fraction},
                   {"r_grid_count", rep.config.r_grid_count},
                   {"base_seed", rep.config.base_seed},
                   {"labeling", rep.config.scheme == LabelScheme::random_uniform
                                    ? "random"
                                    : "trigonometric"}};
    j["children_distribution"] = rep.children_distribution;
    j["m_distribution"] = rep.m_distribution;

    nlohmann::json fits = nlohmann::json::object();
    for (const auto& f : rep.sector_fits) {
        nlohmann::json jf = {{"n", f.n}, {"valid", f.valid}};
        if (f.valid) {
            jf["alpha_hat"] = f.fit.alpha_hat;
            jf["beta_hat"] = f.fit.beta_hat;
            jf["mean"] = f.fit.sample_mean;
            jf["variance"] = f.fit.sample_variance;
        }
        fits[std::to_string(f.m)] = jf;
    }
    j["sector_fits"] = fits;

    const auto curve_json = [](const std::vector<AggregateReport::CurvePoint>& curve) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& p : curve)
            arr.push_back({{"r", p.r},
                           {"n", p.n},
                           {"mean", p.mean},
                           {"se", p.se},
                           {"mean_over_r", p.mean_over_r},
                           {"se_over_r", p.se_over_r}});
        return arr;
    };
    j["chi_curve"] = curve_json(rep.chi_curve);
    j["chi_tilde_curve"] = curve_json(rep.chi_tilde_curve);
    j["spine_curve"] = curve_json(rep.spine_curve);

    nlohmann::json agreement = nlohmann::json::array();
    for (const auto& p : rep.agreement_curve)
        agreement.push_back(
            {{"center", p.center}, {"n", p.n}, {"probability", p.probability}, {"se", p.se}});
    j["agreement_curve"] = agreement;

    nlohmann::json multiplicity = nlohmann::json::array();
    for (const auto& p : rep.direction_multiplicity)
        multiplicity.push_back({{"radius", p.radius},
                                {"n", p.n},
                                {"fraction_multiple", p.fraction_multiple},
                                {"se", p.se}});
    j["direction_multiplicity"] = multiplicity;

    j["direction_ks"] = {{"n", rep.direction_ks.n},
                         {"d", rep.direction_ks.d},
                         {"critical_5pct", rep.direction_ks.critical_5pct}};
    j["noncrossing_violations_total"] = rep.noncrossing_violations_total;
    j["sector_anomalies"] = rep.sector_anomalies;
    return j.dump(2);
}

}  // namespace rst

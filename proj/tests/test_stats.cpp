#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <functional>
#include <vector>

#include "rst/rng.hpp"
#include "rst/stats.hpp"

using namespace rst;

namespace {

// Independent oracle for the Beta CDF: adaptive Simpson integration of the
// density after the substitution t = sin^2(u), which removes the endpoint
// singularities for shapes >= 1/2.
double simpson(const std::function<double(double)>& f, double a, double b, double fa,
               double fb, double fm, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth > 40 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, fm, flm, tol / 2.0, depth + 1) +
           simpson(f, m, b, fm, fb, frm, tol / 2.0, depth + 1);
}

double beta_cdf_oracle(double x, double alpha, double beta) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const auto integrand = [alpha, beta](double u) {
        const double s = std::sin(u);
        const double c = std::cos(u);
        return 2.0 * std::pow(s, 2.0 * alpha - 1.0) * std::pow(c, 2.0 * beta - 1.0);
    };
    const double upper = std::asin(std::sqrt(x));
    const double raw = simpson(integrand, 0.0, upper, integrand(0.0), integrand(upper),
                               integrand(0.5 * upper), 1e-13, 0);
    const double log_b =
        std::lgamma(alpha) + std::lgamma(beta) - std::lgamma(alpha + beta);
    return raw / std::exp(log_b);
}

// Beta(a, b) sampler for integer shapes via sums of exponentials.
double beta_sample_int(int a, int b, Rng& rng) {
    double g1 = 0.0, g2 = 0.0;
    for (int i = 0; i < a; ++i) g1 += rng.exponential();
    for (int i = 0; i < b; ++i) g2 += rng.exponential();
    return g1 / (g1 + g2);
}

}  // namespace

TEST_CASE("empirical_distribution: published tally") {
    std::vector<int> values;
    const int counts[6] = {0, 114, 2232, 2449, 203, 2};
    for (int v = 0; v <= 5; ++v)
        for (int k = 0; k < counts[v]; ++k) values.push_back(v);
    const auto prop = empirical_distribution(values);
    REQUIRE(prop.size() == 6);
    for (int v = 0; v <= 5; ++v)
        CHECK(prop[v] == doctest::Approx(counts[v] / 5000.0).epsilon(1e-12));
}

TEST_CASE("empirical_distribution: degenerate and even splits") {
    CHECK(empirical_distribution(std::vector<int>{3, 3, 3})[3] == 1.0);
    const auto half = empirical_distribution(std::vector<int>{1, 2});
    CHECK(half[1] == 0.5);
    CHECK(half[2] == 0.5);
    CHECK_THROWS_AS(empirical_distribution(std::vector<int>{}), std::invalid_argument);
    CHECK_THROWS_AS(empirical_distribution(std::vector<int>{6}), std::invalid_argument);
}

TEST_CASE("beta_moment_fit: hand-evaluated two-point sample") {
    const std::vector<double> sample{std::numbers::pi / 2.0, 3.0 * std::numbers::pi / 2.0};
    const BetaFit fit = beta_moment_fit(sample);
    CHECK(std::abs(fit.alpha_hat - 1.5) <= 1e-12);
    CHECK(std::abs(fit.beta_hat - 1.5) <= 1e-12);
}

TEST_CASE("beta_moment_fit: symmetry about pi gives equal shapes") {
    const std::vector<double> sample{1.0, two_pi - 1.0, 2.5, two_pi - 2.5};
    const BetaFit fit = beta_moment_fit(sample);
    CHECK(fit.alpha_hat == doctest::Approx(fit.beta_hat).epsilon(1e-12));
    CHECK(fit.sample_mean == doctest::Approx(std::numbers::pi));
}

TEST_CASE("beta_moment_fit: error conditions are distinct") {
    CHECK_THROWS_AS(beta_moment_fit(std::vector<double>{1.0}), std::invalid_argument);
    // zero variance
    CHECK_THROWS_AS(beta_moment_fit(std::vector<double>{2.0, 2.0}), std::domain_error);
    // out-of-range values make the estimates nonpositive
    CHECK_THROWS_AS(beta_moment_fit(std::vector<double>{-5.0, 5.0}), std::domain_error);
}

TEST_CASE("beta_moment_fit recovers known shapes at n = 10^4") {
    Rng rng(2024);
    const int n = 10000, blocks = 10;
    std::vector<double> sample;
    sample.reserve(n);
    for (int k = 0; k < n; ++k) sample.push_back(two_pi * beta_sample_int(2, 5, rng));

    const BetaFit full = beta_moment_fit(sample);
    std::vector<double> alpha_blocks, beta_blocks;
    for (int b = 0; b < blocks; ++b) {
        const std::span<const double> block(sample.data() + b * (n / blocks), n / blocks);
        const BetaFit fit = beta_moment_fit(block);
        alpha_blocks.push_back(fit.alpha_hat);
        beta_blocks.push_back(fit.beta_hat);
    }
    const auto block_se = [&](const std::vector<double>& v) {
        double mean = 0.0;
        for (const double x : v) mean += x;
        mean /= blocks;
        double var = 0.0;
        for (const double x : v) var += (x - mean) * (x - mean);
        var /= (blocks - 1);
        return std::sqrt(var / blocks);
    };
    CHECK(std::abs(full.alpha_hat - 2.0) <= 3.0 * block_se(alpha_blocks));
    CHECK(std::abs(full.beta_hat - 5.0) <= 3.0 * block_se(beta_blocks));
}

TEST_CASE("ks_statistic: single point against uniform") {
    CHECK(ks_statistic(std::vector<double>{std::numbers::pi}, uniform_cdf_2pi) ==
          doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("ks_statistic: exact uniform quantiles") {
    const int n = 10;
    std::vector<double> sample;
    for (int k = 1; k <= n; ++k) sample.push_back(two_pi * (k - 0.5) / n);
    CHECK(ks_statistic(sample, uniform_cdf_2pi) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK_THROWS_AS(ks_statistic(std::vector<double>{}, uniform_cdf_2pi),
                    std::invalid_argument);
}

TEST_CASE("beta CDF matches the integration oracle to 1e-8") {
    const double shapes[4] = {0.5, 1.0, 2.74, 5.38};
    for (const double a : shapes) {
        for (const double b : shapes) {
            double prev = -1.0;
            for (double x = 0.0; x <= 1.0001; x += 0.05) {
                const double mine = beta_cdf(std::min(x, 1.0), a, b);
                CHECK(mine >= prev);  // monotone
                prev = mine;
                const double oracle = beta_cdf_oracle(std::min(x, 1.0), a, b);
                CHECK(std::abs(mine - oracle) <= 1e-8);
            }
            CHECK(beta_cdf(0.0, a, b) == 0.0);
            CHECK(beta_cdf(1.0, a, b) == 1.0);
        }
    }
}

TEST_CASE("beta CDF at its own median is one half") {
    // median located by bisection on the oracle, then checked on the CDF
    for (const auto& [a, b] : std::vector<std::pair<double, double>>{
             {2.74, 2.74}, {2.69, 5.38}, {1.0, 3.0}}) {
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + hi);
            (beta_cdf_oracle(mid, a, b) < 0.5 ? lo : hi) = mid;
        }
        const double median = 0.5 * (lo + hi);
        CHECK(std::abs(beta_cdf(median, a, b) - 0.5) <= 1e-8);
    }
}

TEST_CASE("beta_cdf_2pi scales the support") {
    CHECK(beta_cdf_2pi(std::numbers::pi, 2.0, 2.0) == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(beta_cdf_2pi(0.0, 2.0, 2.0) == 0.0);
    CHECK(beta_cdf_2pi(two_pi, 2.0, 2.0) == 1.0);
}

TEST_CASE("run_monte_carlo is deterministic and schedule-invariant") {
    MonteCarloConfig cfg;
    cfg.replicates = 6;
    cfg.window_radius = 10.0;
    cfg.base_seed = 42;
    cfg.threads = 1;
    const auto a = run_monte_carlo(cfg);
    cfg.threads = 2;
    const auto b = run_monte_carlo(cfg);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].seed == b[k].seed);
        CHECK(a[k].children_of_origin == b[k].children_of_origin);
        CHECK(a[k].m_unbounded == b[k].m_unbounded);
        REQUIRE(a[k].sectors.size() == b[k].sectors.size());
        for (std::size_t s = 0; s < a[k].sectors.size(); ++s) {
            CHECK(a[k].sectors[s].first == b[k].sectors[s].first);
            CHECK(a[k].sectors[s].second == b[k].sectors[s].second);
        }
        REQUIRE(a[k].chi_grid.size() == b[k].chi_grid.size());
        for (std::size_t g = 0; g < a[k].chi_grid.size(); ++g) {
            CHECK(a[k].chi_grid[g].chi == b[k].chi_grid[g].chi);
            CHECK(a[k].chi_grid[g].chi_tilde == b[k].chi_grid[g].chi_tilde);
        }
    }
}

TEST_CASE("replicate records respect the structural invariants") {
    MonteCarloConfig cfg;
    cfg.replicates = 25;
    cfg.window_radius = 12.0;
    cfg.base_seed = 7;
    const auto records = run_monte_carlo(cfg);
    for (const auto& rec : records) {
        CHECK(rec.m_unbounded <= rec.children_of_origin);
        CHECK(rec.children_of_origin <= 5);
        CHECK(rec.noncrossing_violations == 0);
        if (!rec.sectors.empty()) {
            double sum = 0.0;
            for (const auto& [color, width] : rec.sectors) sum += width;
            CHECK(sum == doctest::Approx(two_pi).epsilon(1e-9));
        }
        for (const auto& s : rec.chi_grid)
            if (s.chi_tilde >= 0) CHECK(s.chi_tilde <= s.chi);
    }
    const AggregateReport rep = aggregate(records, cfg);
    CHECK(rep.replicates == 25);
    CHECK(rep.children_distribution.size() == 6);
    CHECK_FALSE(report_to_json(rep).empty());
}

TEST_CASE("chi identity: E[chi] ~ pi r E[chi_tilde] on a small ensemble") {
    MonteCarloConfig cfg;
    cfg.replicates = 150;
    cfg.window_radius = 14.0;
    cfg.base_seed = 1000;
    const auto records = run_monte_carlo(cfg);
    // paired comparison at the largest grid radius
    const std::size_t g = records.front().chi_grid.size() - 1;
    const double r = records.front().chi_grid[g].r;
    double mean_diff = 0.0, var_diff = 0.0;
    std::vector<double> diffs;
    for (const auto& rec : records) {
        const double d = static_cast<double>(rec.chi_grid[g].chi) -
                         std::numbers::pi * r * static_cast<double>(rec.chi_grid[g].chi_tilde);
        diffs.push_back(d);
        mean_diff += d;
    }
    mean_diff /= static_cast<double>(diffs.size());
    for (const double d : diffs) var_diff += (d - mean_diff) * (d - mean_diff);
    var_diff /= static_cast<double>(diffs.size());
    const double se = std::sqrt(var_diff / static_cast<double>(diffs.size()));
    CHECK(std::abs(mean_diff) <= 4.0 * se);
}

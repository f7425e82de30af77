// Acceptance suite: one line per criterion, each evaluated at its pinned
// tolerance against the two Monte Carlo ensembles and the deterministic
// configurations. Exits nonzero if any hard criterion fails.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "rst/interfaces.hpp"
#include "rst/paths.hpp"
#include "rst/ppp.hpp"
#include "rst/stats.hpp"
#include "rst/tree.hpp"

using namespace rst;

namespace {

int g_failures = 0;

void criterion(int id, bool pass, const std::string& detail) {
    std::printf("[%2d] %s  %s\n", id, pass ? "PASS" : "FAIL", detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

struct PairedStats {
    double mean = 0.0;
    double se = 0.0;
};

PairedStats paired(const std::vector<double>& diffs) {
    PairedStats s;
    const double n = static_cast<double>(diffs.size());
    for (const double d : diffs) s.mean += d;
    s.mean /= n;
    double var = 0.0;
    for (const double d : diffs) var += (d - s.mean) * (d - s.mean);
    var /= n;
    s.se = std::sqrt(var / n);
    return s;
}

std::string pct(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", 100.0 * p);
    return buf;
}

}  // namespace

int main() {
    long replicates = 5000;
    long agreement_min = 1000;
    long oracle_small_seeds = 1000;
    long oracle_big_seeds = 20;
    if (const char* scale = std::getenv("RST_ACCEPT_SCALE")) {
        // development shortcut; the committed defaults are the real gate
        const double s = std::atof(scale);
        replicates = std::max(50L, static_cast<long>(replicates * s));
        agreement_min = std::min(agreement_min, replicates);
        oracle_small_seeds = std::max(20L, static_cast<long>(oracle_small_seeds * s));
        oracle_big_seeds = std::max(2L, static_cast<long>(oracle_big_seeds * s));
        std::printf("note: RST_ACCEPT_SCALE=%s -> %ld replicates (dev mode)\n", scale,
                    replicates);
    }

    // ---- criterion 3: deterministic proof configurations -------------------
    {
        const PointSet m1 = make_m1_config(0.01);
        const Tree t1 = build_rst_naive(m1);
        const PointSet m2a = make_m2_config(5.0, 5.0, 0.02, std::numbers::pi / 64.0);
        const Tree t2a = build_rst_naive(m2a);
        const PointSet m2b = make_m2_config(3.0, 5.0, 0.02, std::numbers::pi / 64.0);
        const Tree t2b = build_rst_naive(m2b);
        const bool pass = t1.origin_child_count() == 1 && t2a.origin_child_count() == 2 &&
                          t2b.origin_child_count() == 2;
        criterion(3, pass,
                  "exact constructions: m1 children=" +
                      std::to_string(t1.origin_child_count()) +
                      ", m2 children=" + std::to_string(t2a.origin_child_count()) + "/" +
                      std::to_string(t2b.origin_child_count()) + " (want 1, 2, 2)");
    }

    // ---- criterion 12: estimator unit value ---------------------------------
    {
        const std::vector<double> sample{std::numbers::pi / 2.0,
                                         3.0 * std::numbers::pi / 2.0};
        const BetaFit fit = beta_moment_fit(sample);
        const bool pass =
            std::abs(fit.alpha_hat - 1.5) <= 1e-12 && std::abs(fit.beta_hat - 1.5) <= 1e-12;
        criterion(12, pass,
                  "beta_moment_fit({pi/2,3pi/2}) = (" + std::to_string(fit.alpha_hat) + ", " +
                      std::to_string(fit.beta_hat) + "), want (1.5, 1.5) to 1e-12");
    }

    // ---- criterion 6: oracle equivalence ------------------------------------
    {
        long mismatches = 0;
        const double small_radius = std::sqrt(500.0 / std::numbers::pi);   // n ~ 500
        for (long seed = 0; seed < oracle_small_seeds; ++seed) {
            const PointSet ps = sample_palm_ppp(1.0, small_radius, 100000 + seed);
            if (build_rst_naive(ps).ancestor != build_rst_indexed(ps).ancestor) ++mismatches;
        }
        const double big_radius = std::sqrt(10000.0 / std::numbers::pi);   // n ~ 10^4
        for (long seed = 0; seed < oracle_big_seeds; ++seed) {
            const PointSet ps = sample_palm_ppp(1.0, big_radius, 200000 + seed);
            if (build_rst_naive(ps).ancestor != build_rst_indexed(ps).ancestor) ++mismatches;
        }
        criterion(6, mismatches == 0,
                  "oracle equivalence: " + std::to_string(mismatches) + " mismatches over " +
                      std::to_string(oracle_small_seeds) + " seeds (n~500) + " +
                      std::to_string(oracle_big_seeds) + " seeds (n~10^4)");
    }

    // ---- main ensemble: window 60, intensity 1 ------------------------------
    MonteCarloConfig cfg;
    cfg.replicates = replicates;
    cfg.intensity = 1.0;
    cfg.window_radius = 60.0;
    cfg.base_seed = 1;
    std::printf("running the main ensemble (%ld replicates, window 60)...\n", replicates);
    std::fflush(stdout);
    const auto records = run_monte_carlo(cfg);
    const AggregateReport report = aggregate(records, cfg);

    // second ensemble at a smaller window so the non-crossing check covers
    // at least 10^4 distinct trees in total
    MonteCarloConfig cfg_small = cfg;
    cfg_small.window_radius = 25.0;
    cfg_small.base_seed = 900000;
    std::printf("running the secondary ensemble (%ld replicates, window 25)...\n",
                replicates);
    std::fflush(stdout);
    const auto records_small = run_monte_carlo(cfg_small);

    // dedicated ensemble for the chi trend with a stricter survival cut:
    // the trend is asymptotic and the default cut admits branches whose
    // remaining survival requirement shrinks as r approaches the analysis
    // radius, which visibly inflates the top of the curve
    MonteCarloConfig cfg_chi = cfg;
    cfg_chi.replicates = std::max(2000L, replicates * 2 / 5);
    if (std::getenv("RST_ACCEPT_SCALE")) cfg_chi.replicates = replicates;
    cfg_chi.cut_fraction = 0.95;
    cfg_chi.base_seed = 500000;
    std::printf("running the chi-trend ensemble (%ld replicates, cut fraction 0.95)...\n",
                cfg_chi.replicates);
    std::fflush(stdout);
    const auto records_chi = run_monte_carlo(cfg_chi);

    // ---- criterion 1: children-of-origin distribution ----------------------
    {
        const double ref[5] = {2.28, 44.64, 48.98, 4.06, 0.04};
        bool pass = true;
        std::string detail = "children %: ";
        for (int v = 1; v <= 5; ++v) {
            const double mine = 100.0 * report.children_distribution[v];
            if (std::abs(mine - ref[v - 1]) > 1.5) pass = false;
            detail += pct(report.children_distribution[v]) + "/" +
                      std::to_string(ref[v - 1]).substr(0, 5) + " ";
        }
        criterion(1, pass, detail + "(tolerance 1.5pp per bin)");
    }

    // ---- criterion 2: unbounded-subtree distribution ------------------------
    {
        const double ref[5] = {5.28, 58.68, 34.64, 1.38, 0.02};
        bool pass = true;
        bool all_seen = true;
        std::string detail = "m %: ";
        for (int v = 1; v <= 5; ++v) {
            const double mine = 100.0 * report.m_distribution[v];
            if (std::abs(mine - ref[v - 1]) > 5.0) pass = false;
            if (mine == 0.0) all_seen = false;
            detail += pct(report.m_distribution[v]) + "/" +
                      std::to_string(ref[v - 1]).substr(0, 5) + " ";
        }
        if (!all_seen)
            detail += "[note: some m unobserved; the reference tally saw 2/5000 for m=5] ";
        criterion(2, pass, detail + "(tolerance 5pp per bin)");
    }

    // ---- criterion 4: non-crossing over >= 10^4 trees -----------------------
    {
        long violations = 0;
        for (const auto& r : records) violations += r.noncrossing_violations;
        for (const auto& r : records_small) violations += r.noncrossing_violations;
        const long trees = static_cast<long>(records.size() + records_small.size());
        criterion(4, violations == 0 && trees >= 2 * replicates,
                  "non-crossing: " + std::to_string(violations) + " violations over " +
                      std::to_string(trees) + " trees");
    }

    // ---- criterion 5: degree bound ------------------------------------------
    {
        int max_children = 0;
        for (const auto& r : records)
            max_children = std::max(max_children, static_cast<int>(r.children_of_origin));
        for (const auto& r : records_small)
            max_children = std::max(max_children, static_cast<int>(r.children_of_origin));
        criterion(5, max_children <= 5,
                  "degree bound: max children of origin = " + std::to_string(max_children));
    }

    // ---- criterion 7: sublinearity trend of chi/r ---------------------------
    {
        // grid indices 2..9 cover 0.3*analysis .. analysis
        bool pass = true;
        std::string detail = "mean chi/r: ";
        for (std::size_t g = 2; g + 1 < records_chi.front().chi_grid.size(); ++g) {
            std::vector<double> diffs;
            for (const auto& rec : records_chi) {
                const auto& a = rec.chi_grid[g];
                const auto& b = rec.chi_grid[g + 1];
                diffs.push_back(static_cast<double>(b.chi) / b.r -
                                static_cast<double>(a.chi) / a.r);
            }
            const PairedStats s = paired(diffs);
            if (s.mean > s.se) pass = false;
        }
        for (std::size_t g = 0; g < records_chi.front().chi_grid.size(); ++g) {
            double mean = 0.0;
            for (const auto& rec : records_chi)
                mean += static_cast<double>(rec.chi_grid[g].chi) / rec.chi_grid[g].r;
            char buf[16];
            std::snprintf(buf, sizeof buf, "%.3f ",
                          mean / static_cast<double>(records_chi.size()));
            detail += buf;
        }
        criterion(7, pass, detail + "(consecutive increases bounded by 1 se)");
    }

    // ---- criterion 8: rotational-invariance identity -------------------------
    {
        bool pass = true;
        std::string detail = "E[chi] vs pi r E[chi_tilde] at r = ";
        const std::size_t grid_size = records.front().chi_grid.size();
        for (std::size_t g = grid_size - 3; g < grid_size; ++g) {
            const double r = records.front().chi_grid[g].r;
            std::vector<double> diffs;
            for (const auto& rec : records)
                diffs.push_back(static_cast<double>(rec.chi_grid[g].chi) -
                                std::numbers::pi * r *
                                    static_cast<double>(rec.chi_grid[g].chi_tilde));
            const PairedStats s = paired(diffs);
            char buf[64];
            std::snprintf(buf, sizeof buf, "%g (%.3f/%.3f se) ", r, s.mean, s.se);
            detail += buf;
            if (std::abs(s.mean) > 3.0 * s.se) pass = false;
        }
        criterion(8, pass, detail + "(tolerance 3 combined se)");
    }

    // ---- criterion 9: sector expectation 2pi/m -------------------------------
    {
        bool pass = true;
        std::string detail;
        for (int m = 2; m <= 3; ++m) {
            for (int label = 1; label <= m; ++label) {
                std::vector<double> widths;
                for (const auto& rec : records) {
                    if (rec.m_unbounded != m) continue;
                    for (const auto& [color, width] : rec.sectors)
                        if (color == label) widths.push_back(width);
                }
                if (widths.size() < 10) {
                    pass = false;
                    continue;
                }
                const PairedStats s = paired(widths);
                const double target = two_pi / m;
                char buf[80];
                std::snprintf(buf, sizeof buf, "m=%d phi_%d: %.4f vs %.4f (se %.4f) ", m,
                              label, s.mean, target, s.se);
                detail += buf;
                if (std::abs(s.mean - target) > 3.0 * s.se) pass = false;
            }
        }
        criterion(9, pass, detail + "(tolerance 3 se)");
    }

    // ---- criterion 10: direction uniformity ----------------------------------
    {
        std::vector<double> thetas;
        for (const auto& rec : records) {
            for (const auto& b : rec.interface_thetas) {
                if (b.color_i == 1) {
                    thetas.push_back(b.theta);
                    break;
                }
            }
        }
        const long n = static_cast<long>(thetas.size());
        bool pass = n >= 500;
        double d = 0.0, crit = 0.0;
        if (n > 0) {
            d = ks_statistic(thetas, uniform_cdf_2pi);
            crit = 1.36 / std::sqrt(static_cast<double>(n));
            if (d > crit) pass = false;
        }
        char buf[96];
        std::snprintf(buf, sizeof buf,
                      "uniformity of random-label interface angles: D=%.4f, 5%% crit=%.4f, n=%ld",
                      d, crit, n);
        criterion(10, pass, buf);
    }

    // ---- criterion 11: beta fits (soft) ---------------------------------------
    {
        std::string detail;
        bool computed = true;
        for (const auto& f : report.sector_fits) {
            if (f.m != 2 && f.m != 3) continue;
            if (!f.valid) {
                computed = false;
                detail += "m=" + std::to_string(f.m) + ": fit unavailable ";
                continue;
            }
            char buf[96];
            std::snprintf(buf, sizeof buf, "m=%d: alpha=%.3f beta=%.3f (n=%ld) ", f.m,
                          f.fit.alpha_hat, f.fit.beta_hat, f.n);
            detail += buf;
            const bool in_range =
                f.m == 2 ? (f.fit.alpha_hat >= 2.0 && f.fit.alpha_hat <= 3.5 &&
                            f.fit.beta_hat >= 2.0 && f.fit.beta_hat <= 3.5)
                         : (f.fit.alpha_hat >= 2.0 && f.fit.alpha_hat <= 3.5 &&
                            f.fit.beta_hat >= 4.0 && f.fit.beta_hat <= 7.0);
            if (!in_range)
                detail += "[calibration note: outside the reference range] ";
        }
        criterion(11, computed, detail + "(soft criterion; ranges are advisory)");
    }

    // ---- criterion 13: DSF agreement nondecreasing in the center --------------
    {
        bool pass = static_cast<long>(records.size()) >= agreement_min;
        std::string detail = "agreement P: ";
        const std::size_t centers = records.front().agreement_flags.size();
        for (std::size_t a = 0; a < centers; ++a) {
            char buf[48];
            std::snprintf(buf, sizeof buf, "x=%g: %.3f ",
                          records.front().agreement_flags[a].first,
                          report.agreement_curve[a].probability);
            detail += buf;
        }
        for (std::size_t a = 0; a + 1 < centers; ++a) {
            std::vector<double> diffs;
            for (const auto& rec : records)
                diffs.push_back((rec.agreement_flags[a + 1].second ? 1.0 : 0.0) -
                                (rec.agreement_flags[a].second ? 1.0 : 0.0));
            const PairedStats s = paired(diffs);
            if (s.mean < -s.se) pass = false;
        }
        criterion(13, pass, detail + "(nondecreasing within 1 se per comparison)");
    }

    // ---- criterion 14: uniqueness proxy ---------------------------------------
    {
        std::vector<double> diffs;
        double f_lo = 0.0, f_hi = 0.0;
        for (const auto& rec : records) {
            const double lo = rec.direction_paths[0].second >= 2 ? 1.0 : 0.0;
            const double hi = rec.direction_paths[1].second >= 2 ? 1.0 : 0.0;
            f_lo += lo;
            f_hi += hi;
            diffs.push_back(hi - lo);
        }
        f_lo /= static_cast<double>(records.size());
        f_hi /= static_cast<double>(records.size());
        const PairedStats s = paired(diffs);
        char buf[96];
        std::snprintf(buf, sizeof buf,
                      "P(>=2 paths near angle 0): r=%g: %.4f -> r=%g: %.4f (diff se %.4f)",
                      records.front().direction_paths[0].first, f_lo,
                      records.front().direction_paths[1].first, f_hi, s.se);
        criterion(14, s.mean <= s.se, buf);
    }

    // ---- criterion 15: spine sublinearity --------------------------------------
    {
        bool pass = true;
        std::string detail = "mean v/r: ";
        const std::size_t grid_size = records.front().spine_counts.size();
        for (std::size_t g = grid_size / 2; g + 1 < grid_size; ++g) {
            std::vector<double> diffs;
            for (const auto& rec : records) {
                const auto& a = rec.spine_counts[g];
                const auto& b = rec.spine_counts[g + 1];
                diffs.push_back(static_cast<double>(b.second) / b.first -
                                static_cast<double>(a.second) / a.first);
            }
            const PairedStats s = paired(diffs);
            if (s.mean > s.se) pass = false;
        }
        for (const auto& p : report.spine_curve) {
            char buf[16];
            std::snprintf(buf, sizeof buf, "%.3f ", p.mean_over_r);
            detail += buf;
        }
        criterion(15, pass, detail + "(upper half nonincreasing within 1 se)");
    }

    std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "SUCCESS" : "FAILURE",
                g_failures);
    return g_failures == 0 ? 0 : 1;
}

// Command-line driver: sampling, tree construction, Monte Carlo runs,
// interface tracing, and Beta fitting over CSV/JSON files.

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "rst/csv_io.hpp"
#include "rst/interfaces.hpp"
#include "rst/paths.hpp"
#include "rst/ppp.hpp"
#include "rst/rng.hpp"
#include "rst/stats.hpp"
#include "rst/tree.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInvariant = 3;
constexpr int kExitIo = 4;

struct CommonOptions {
    double intensity = 1.0;
    double window_radius = 60.0;
    double cut_fraction = 0.8;
    double analysis_fraction = 0.5;
    int r_grid_count = 10;
    std::uint64_t seed = 1;
    std::string out_dir = ".";
    std::string labeling = "random";
};

rst::LabelScheme scheme_of(const std::string& name) {
    if (name == "random") return rst::LabelScheme::random_uniform;
    if (name == "trig" || name == "trigonometric") return rst::LabelScheme::trigonometric;
    throw std::invalid_argument("labeling: expected 'random' or 'trig'");
}

void add_common(CLI::App* cmd, CommonOptions& opt, bool with_labeling = false) {
    cmd->add_option("--intensity", opt.intensity, "point process intensity")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--radius", opt.window_radius, "sampling window radius")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--cut-fraction", opt.cut_fraction,
                    "surviving subtrees must reach this fraction of the window")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--analysis-fraction", opt.analysis_fraction,
                    "statistics are read off up to this fraction of the window")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    cmd->add_option("--grid", opt.r_grid_count, "number of radii in the analysis grid")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--seed", opt.seed, "base seed")->capture_default_str();
    cmd->add_option("-o,--out-dir", opt.out_dir, "output directory")
        ->envname("RST_OUT_DIR")
        ->capture_default_str();
    if (with_labeling)
        cmd->add_option("--labeling", opt.labeling, "subtree labeling: random|trig")
            ->capture_default_str();
}

rst::MonteCarloConfig mc_config(const CommonOptions& opt, long replicates, int threads) {
    rst::MonteCarloConfig cfg;
    cfg.replicates = replicates;
    cfg.intensity = opt.intensity;
    cfg.window_radius = opt.window_radius;
    cfg.cut_fraction = opt.cut_fraction;
    cfg.analysis_fraction = opt.analysis_fraction;
    cfg.r_grid_count = opt.r_grid_count;
    cfg.base_seed = opt.seed;
    cfg.threads = threads;
    cfg.scheme = scheme_of(opt.labeling);
    return cfg;
}

fs::path ensure_dir(const std::string& dir) {
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

int cmd_sample(const CommonOptions& opt) {
    const rst::PointSet ps = rst::sample_palm_ppp(opt.intensity, opt.window_radius, opt.seed);
    const fs::path file = ensure_dir(opt.out_dir) / "points.csv";
    rst::write_points_csv(ps, file);
    std::printf("wrote %s (%d points, window radius %g)\n", file.c_str(), ps.size(),
                ps.window_radius);
    return 0;
}

int cmd_build(const CommonOptions& opt, const std::string& points_file, bool with_dsf,
              bool check_oracle) {
    const rst::PointSet ps = rst::read_points_csv(points_file);
    const rst::Tree tree = rst::build_rst_indexed(ps);

    if (check_oracle) {
        const rst::Tree naive = rst::build_rst_naive(ps);
        if (naive.ancestor != tree.ancestor) {
            std::fprintf(stderr, "oracle check failed: indexed != naive ancestor map\n");
            return kExitInvariant;
        }
        std::printf("oracle check: indexed builder matches the naive one (%d points)\n",
                    ps.size());
    }

    if (!rst::verify_rst_property(tree)) {
        std::fprintf(stderr, "invariant violation: defining ball-emptiness failed\n");
        return kExitInvariant;
    }
    const auto crossings = rst::check_noncrossing(tree);
    if (!crossings.empty()) {
        std::fprintf(stderr, "invariant violation: %zu crossing edge pairs\n",
                     crossings.size());
        return kExitInvariant;
    }

    const fs::path dir = ensure_dir(opt.out_dir);
    rst::write_tree_csv(tree, dir / "tree.csv");
    std::printf("wrote %s (%d children of the origin)\n", (dir / "tree.csv").c_str(),
                tree.origin_child_count());
    if (with_dsf) {
        rst::write_forest_csv(rst::build_dsf(ps), dir / "dsf.csv");
        std::printf("wrote %s\n", (dir / "dsf.csv").c_str());
    }
    return 0;
}

int cmd_mc(const CommonOptions& opt, long replicates, int threads) {
    const rst::MonteCarloConfig cfg = mc_config(opt, replicates, threads);
    const auto records = rst::run_monte_carlo(cfg);
    const rst::AggregateReport report = rst::aggregate(records, cfg);

    const fs::path dir = ensure_dir(opt.out_dir);
    {
        std::ofstream out(dir / "report.json");
        out << rst::report_to_json(report) << '\n';
        if (!out) {
            std::fprintf(stderr, "cannot write %s\n", (dir / "report.json").c_str());
            return kExitIo;
        }
    }
    rst::write_record_csvs(records, dir);

    std::printf("%ld replicates, window radius %g\n", report.replicates, cfg.window_radius);
    std::printf("%-22s", "children of origin");
    for (int v = 1; v <= 5; ++v)
        std::printf("  %d: %6.2f%%", v, 100.0 * report.children_distribution[v]);
    std::printf("\n%-22s", "unbounded subtrees");
    for (int v = 1; v <= 5; ++v)
        std::printf("  %d: %6.2f%%", v, 100.0 * report.m_distribution[v]);
    std::printf("\nwrote %s and raw CSVs\n", (dir / "report.json").c_str());
    return 0;
}

int cmd_chi(const CommonOptions& opt) {
    const rst::MonteCarloConfig cfg = mc_config(opt, 1, 1);
    const rst::PointSet ps = rst::sample_palm_ppp(cfg.intensity, cfg.window_radius, opt.seed);
    const rst::ReplicateRecord rec = rst::measure_replicate(ps, cfg, opt.seed);
    const fs::path file = ensure_dir(opt.out_dir) / "chi.csv";
    rst::write_chi_csv(rec.chi_grid, file);
    std::printf("wrote %s\n", file.c_str());
    return 0;
}

int cmd_interfaces(const CommonOptions& opt, const std::string& scenario, double epsilon,
                   double r1, double r2, double angle_step) {
    rst::PointSet ps;
    if (scenario == "m1") {
        ps = rst::make_m1_config(epsilon > 0.0 ? epsilon : 0.01);
    } else if (scenario == "m2") {
        const double eps = epsilon > 0.0 ? epsilon : 0.02 * std::min(r1, r2);
        ps = rst::make_m2_config(r1, r2, eps, angle_step);
    } else {
        ps = rst::sample_palm_ppp(opt.intensity, opt.window_radius, opt.seed);
    }

    const rst::Tree tree = rst::build_rst_indexed(ps);
    if (tree.origin_child_count() < 1) {
        std::fprintf(stderr, "origin has no children; nothing to trace\n");
        return kExitInvariant;
    }
    const rst::Coloring col = rst::color_subtrees(tree, scheme_of(opt.labeling),
                                                  rst::mix_seed(opt.seed, 0x1abe1ULL));
    const rst::SurvivorConfig survivor{opt.cut_fraction * ps.window_radius,
                                       opt.analysis_fraction * ps.window_radius};

    std::vector<double> grid(opt.r_grid_count);
    for (int k = 0; k < opt.r_grid_count; ++k)
        grid[k] = survivor.analysis_radius * (k + 1) / opt.r_grid_count;

    const fs::path dir = ensure_dir(opt.out_dir);
    int traces = 0;
    for (std::int32_t i = 1; i <= col.color_count(); ++i) {
        for (std::int32_t j = 1; j <= col.color_count(); ++j) {
            if (i == j) continue;
            const rst::InterfaceTrace tr = rst::trace_interface(tree, col, i, j, grid);
            const std::string name =
                "interface_" + std::to_string(i) + "_" + std::to_string(j) + ".csv";
            rst::write_interface_csv(tr, dir / name);
            ++traces;
        }
    }

    const int m = rst::unbounded_count(tree, col, survivor);
    if (m >= 2) {
        const auto reading =
            rst::surviving_interfaces(tree, col, survivor, survivor.analysis_radius);
        if (reading) {
            std::ofstream out(dir / "sectors_summary.csv");
            out << "m,color,phi\n";
            for (const auto& [color, width] : reading->sectors)
                out << m << ',' << color << ',' << rst::format_double(width) << '\n';
        } else {
            std::fprintf(stderr, "warning: degenerate trace, no sector summary\n");
        }
    } else {
        std::fprintf(stderr, "warning: fewer than two surviving colors, no sector file\n");
    }
    std::printf("wrote %d interface traces to %s (m = %d)\n", traces, dir.c_str(), m);
    return 0;
}

int cmd_fit(const std::string& input, int m_filter) {
    std::ifstream in(input);
    if (!in) {
        std::fprintf(stderr, "cannot open %s\n", input.c_str());
        return kExitIo;
    }
    // accepts sectors.csv (replicate,m,color,phi) or sectors_summary.csv (m,color,phi)
    std::string header;
    std::getline(in, header);
    int phi_col = -1, m_col = -1;
    {
        std::stringstream ss(header);
        std::string tok;
        for (int c = 0; std::getline(ss, tok, ','); ++c) {
            if (tok == "phi") phi_col = c;
            if (tok == "m") m_col = c;
        }
    }
    if (phi_col < 0) {
        std::fprintf(stderr, "%s: no 'phi' column\n", input.c_str());
        return kExitIo;
    }

    std::vector<double> sample;
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        double phi = 0.0;
        int m = -1;
        for (int c = 0; std::getline(ss, tok, ','); ++c) {
            try {
                if (c == phi_col) phi = std::stod(tok);
                if (c == m_col) m = std::stoi(tok);
            } catch (const std::exception&) {
                std::fprintf(stderr, "%s:%zu: bad number '%s'\n", input.c_str(), lineno,
                             tok.c_str());
                return kExitIo;
            }
        }
        if (m_filter > 0 && m_col >= 0 && m != m_filter) continue;
        sample.push_back(phi);
    }
    if (sample.size() < 2) {
        std::fprintf(stderr, "not enough sector samples (%zu)\n", sample.size());
        return kExitUsage;
    }

    const rst::BetaFit fit = rst::beta_moment_fit(sample);
    const double d_fit = rst::ks_statistic(sample, [&fit](double x) {
        return rst::beta_cdf_2pi(x, fit.alpha_hat, fit.beta_hat);
    });
    const double d_unif = rst::ks_statistic(sample, rst::uniform_cdf_2pi);
    std::printf("n = %zu\n", sample.size());
    std::printf("alpha_hat = %.6f  beta_hat = %.6f  (mean %.6f, variance %.6f)\n",
                fit.alpha_hat, fit.beta_hat, fit.sample_mean, fit.sample_variance);
    std::printf("KS D against fitted beta:  %.6f\n", d_fit);
    std::printf("KS D against uniform:      %.6f\n", d_unif);
    std::printf("(no p-values; compare D with tables at your n)\n");
    return 0;
}

int cmd_scenario(const CommonOptions& opt, const std::string& type, double epsilon,
                 double r1, double r2, double angle_step) {
    rst::PointSet ps;
    if (type == "m1") {
        ps = rst::make_m1_config(epsilon > 0.0 ? epsilon : 0.01);
    } else if (type == "m2") {
        const double eps = epsilon > 0.0 ? epsilon : 0.02 * std::min(r1, r2);
        ps = rst::make_m2_config(r1, r2, eps, angle_step);
    } else {
        throw std::invalid_argument("type: expected 'm1' or 'm2'");
    }
    const fs::path file = ensure_dir(opt.out_dir) / "points.csv";
    rst::write_points_csv(ps, file);
    std::printf("wrote %s (%d points)\n", file.c_str(), ps.size());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"radial spanning tree / directed spanning forest simulator"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value configuration file");
    app.allow_config_extras(true);

    CommonOptions opt;
    long replicates = 100;
    int threads = 0;
    std::string points_file = "points.csv";
    bool with_dsf = false, check_oracle = false;
    std::string scenario_type;
    double epsilon = 0.0, r1 = 5.0, r2 = 5.0;
    double angle_step = std::numbers::pi / 64.0;
    std::string fit_input;
    int fit_m = 0;

    CLI::App* sample = app.add_subcommand("sample", "sample one point set to points.csv");
    add_common(sample, opt);

    CLI::App* build = app.add_subcommand("build", "build the tree for an existing points.csv");
    add_common(build, opt);
    build->add_option("--points", points_file, "input points.csv")->capture_default_str();
    build->add_flag("--dsf", with_dsf, "also write the directed spanning forest");
    build->add_flag("--check-oracle", check_oracle,
                    "compare the indexed builder against the quadratic one");

    CLI::App* mc = app.add_subcommand("mc", "Monte Carlo run: report.json plus raw CSVs");
    add_common(mc, opt, true);
    mc->add_option("--replicates", replicates, "number of replicates")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    mc->add_option("--threads", threads, "worker threads (0 = hardware)")
        ->capture_default_str();

    CLI::App* interfaces =
        app.add_subcommand("interfaces", "trace competition interfaces for one tree");
    add_common(interfaces, opt, true);
    interfaces->add_option("--scenario", scenario_type,
                           "use a deterministic configuration: m1|m2");
    interfaces->add_option("--epsilon", epsilon, "scenario ball radius (0 = default)");
    interfaces->add_option("--r1", r1, "m2 scenario radius 1")->capture_default_str();
    interfaces->add_option("--r2", r2, "m2 scenario radius 2")->capture_default_str();
    interfaces->add_option("--angle-step", angle_step, "m2 cardioid angle step")
        ->capture_default_str();

    CLI::App* chi = app.add_subcommand("chi", "crossing counts over the radius grid");
    add_common(chi, opt);

    CLI::App* fit = app.add_subcommand("fit", "moment-fit a Beta law to sector samples");
    fit->add_option("--input", fit_input, "sectors CSV")->required();
    fit->add_option("--m", fit_m, "restrict to replicates with this many unbounded subtrees");

    CLI::App* scenario =
        app.add_subcommand("scenario", "emit a deterministic proof configuration");
    add_common(scenario, opt);
    scenario->add_option("--type", scenario_type, "m1|m2")->required();
    scenario->add_option("--epsilon", epsilon, "ball radius (0 = default)");
    scenario->add_option("--r1", r1, "m2 radius 1")->capture_default_str();
    scenario->add_option("--r2", r2, "m2 radius 2")->capture_default_str();
    scenario->add_option("--angle-step", angle_step, "m2 cardioid angle step")
        ->capture_default_str();

    for (CLI::App* sub : {sample, build, mc, interfaces, chi, fit, scenario})
        sub->configurable();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (sample->parsed()) return cmd_sample(opt);
        if (build->parsed()) return cmd_build(opt, points_file, with_dsf, check_oracle);
        if (mc->parsed()) return cmd_mc(opt, replicates, threads);
        if (interfaces->parsed())
            return cmd_interfaces(opt, scenario_type, epsilon, r1, r2, angle_step);
        if (chi->parsed()) return cmd_chi(opt);
        if (fit->parsed()) return cmd_fit(fit_input, fit_m);
        if (scenario->parsed())
            return cmd_scenario(opt, scenario_type, epsilon, r1, r2, angle_step);
    } catch (const rst::CsvError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::filesystem::filesystem_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvariant;
    }
    return 0;
}

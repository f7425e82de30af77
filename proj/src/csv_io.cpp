#include "rst/csv_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace rst {

namespace {

std::ofstream open_out(const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw CsvError("cannot open for writing: " + file.string());
    return out;
}

[[noreturn]] void parse_fail(const std::filesystem::path& file, std::size_t line,
                             const std::string& what) {
    throw CsvError(file.string() + ":" + std::to_string(line) + ": " + what);
}

double parse_double(const std::string& token, const std::filesystem::path& file,
                    std::size_t line) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(token, &pos);
    } catch (const std::exception&) {
        parse_fail(file, line, "not a number: '" + token + "'");
    }
    if (pos != token.size()) parse_fail(file, line, "trailing junk: '" + token + "'");
    return v;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(tok);
    return out;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_points_csv(const PointSet& ps, const std::filesystem::path& file) {
    std::ofstream out = open_out(file);
    out << "x,y\n";
    for (const Point& p : ps.points)
        out << format_double(p.x) << ',' << format_double(p.y) << '\n';
    if (!out) throw CsvError("write failed: " + file.string());
}

PointSet read_points_csv(const std::filesystem::path& file, double window_radius) {
    std::ifstream in(file);
    if (!in) throw CsvError("cannot open: " + file.string());
    PointSet ps;
    std::string line;
    std::size_t lineno = 0;
    double max_norm = 0.0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1) {
            if (line != "x,y") parse_fail(file, lineno, "expected header 'x,y'");
            continue;
        }
        if (line.empty()) continue;
        const auto tokens = split_csv(line);
        if (tokens.size() != 2) parse_fail(file, lineno, "expected two columns");
        Point p{parse_double(tokens[0], file, lineno), parse_double(tokens[1], file, lineno)};
        max_norm = std::max(max_norm, norm(p));
        ps.points.push_back(p);
    }
    if (ps.points.empty()) parse_fail(file, lineno + 1, "no points");
    ps.window_radius = window_radius > 0.0 ? window_radius : std::max(max_norm, 1e-12);
    validate_point_set(ps);
    return ps;
}

void write_tree_csv(const Tree& t, const std::filesystem::path& file) {
    std::ofstream out = open_out(file);
    out << "child_index,ancestor_index\n";
    for (std::int32_t v = 0; v < t.size(); ++v) out << v << ',' << t.ancestor[v] << '\n';
    if (!out) throw CsvError("write failed: " + file.string());
}

void write_forest_csv(const Forest& f, const std::filesystem::path& file) {
    std::ofstream out = open_out(file);
    out << "child_index,ancestor_index\n";
    for (std::size_t v = 0; v < f.ancestor.size(); ++v)
        out << v << ',' << f.ancestor[v] << '\n';
    if (!out) throw CsvError("write failed: " + file.string());
}

std::vector<std::int32_t> read_ancestors_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw CsvError("cannot open: " + file.string());
    std::vector<std::int32_t> ancestor;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1) {
            if (line != "child_index,ancestor_index")
                parse_fail(file, lineno, "expected header 'child_index,ancestor_index'");
            continue;
        }
        if (line.empty()) continue;
        const auto tokens = split_csv(line);
        if (tokens.size() != 2) parse_fail(file, lineno, "expected two columns");
        const auto child = static_cast<std::int32_t>(parse_double(tokens[0], file, lineno));
        const auto anc = static_cast<std::int32_t>(parse_double(tokens[1], file, lineno));
        if (child != static_cast<std::int32_t>(ancestor.size()))
            parse_fail(file, lineno, "child indices must be consecutive from 0");
        ancestor.push_back(anc);
    }
    if (ancestor.empty()) parse_fail(file, lineno + 1, "no rows");
    return ancestor;
}

void write_chi_csv(const std::vector<ReplicateRecord::ChiSample>& grid,
                   const std::filesystem::path& file) {
    std::ofstream out = open_out(file);
    out << "r,chi,chi_tilde\n";
    for (const auto& s : grid)
        out << format_double(s.r) << ',' << s.chi << ',' << s.chi_tilde << '\n';
    if (!out) throw CsvError("write failed: " + file.string());
}

void write_interface_csv(const InterfaceTrace& trace, const std::filesystem::path& file) {
    std::ofstream out = open_out(file);
    out << "r,theta,defined\n";
    for (const auto& s : trace.samples)
        out << format_double(s.r) << ','
            << (s.defined ? format_double(s.theta) : std::string("nan")) << ','
            << (s.defined ? 1 : 0) << '\n';
    if (!out) throw CsvError("write failed: " + file.string());
}

void write_record_csvs(const std::vector<ReplicateRecord>& records,
                       const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);

    std::ofstream children = open_out(dir / "children.csv");
    children << "replicate,seed,children_of_origin,m_unbounded,noncrossing_violations\n";
    std::ofstream sectors = open_out(dir / "sectors.csv");
    sectors << "replicate,m,color,phi\n";
    std::ofstream interfaces = open_out(dir / "interfaces.csv");
    interfaces << "replicate,m,color_i,color_j,theta\n";
    std::ofstream chi = open_out(dir / "chi.csv");
    chi << "replicate,r,chi,chi_tilde\n";
    std::ofstream agreement = open_out(dir / "agreement.csv");
    agreement << "replicate,center_abscissa,agreed\n";
    std::ofstream spine = open_out(dir / "spine.csv");
    spine << "replicate,r,bifurcations\n";
    std::ofstream multiplicity = open_out(dir / "multiplicity.csv");
    multiplicity << "replicate,analysis_radius,paths_near_zero\n";

    for (std::size_t k = 0; k < records.size(); ++k) {
        const ReplicateRecord& rec = records[k];
        children << k << ',' << rec.seed << ',' << rec.children_of_origin << ','
                 << rec.m_unbounded << ',' << rec.noncrossing_violations << '\n';
        for (const auto& [color, width] : rec.sectors)
            sectors << k << ',' << rec.m_unbounded << ',' << color << ','
                    << format_double(width) << '\n';
        for (const auto& b : rec.interface_thetas)
            interfaces << k << ',' << rec.m_unbounded << ',' << b.color_i << ','
                       << b.color_j << ',' << format_double(b.theta) << '\n';
        for (const auto& s : rec.chi_grid)
            chi << k << ',' << format_double(s.r) << ',' << s.chi << ',' << s.chi_tilde
                << '\n';
        for (const auto& [center, agreed] : rec.agreement_flags)
            agreement << k << ',' << format_double(center) << ',' << (agreed ? 1 : 0) << '\n';
        for (const auto& [r, v] : rec.spine_counts)
            spine << k << ',' << format_double(r) << ',' << v << '\n';
        for (const auto& [r, c] : rec.direction_paths)
            multiplicity << k << ',' << format_double(r) << ',' << c << '\n';
    }
}

}  // namespace rst

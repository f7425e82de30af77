#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "rst/interfaces.hpp"
#include "rst/stats.hpp"
#include "rst/tree.hpp"

namespace rst {

/// Thrown on malformed input files; carries the path and 1-based line number.
struct CsvError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// All numeric output uses 17 significant digits so values round-trip exactly.

/// points.csv: header `x,y`, origin first.
void write_points_csv(const PointSet& ps, const std::filesystem::path& file);
PointSet read_points_csv(const std::filesystem::path& file, double window_radius = 0.0);

/// tree.csv / dsf.csv: header `child_index,ancestor_index`; the origin maps
/// to itself, forest roots map to -1.
void write_tree_csv(const Tree& t, const std::filesystem::path& file);
void write_forest_csv(const Forest& f, const std::filesystem::path& file);
std::vector<std::int32_t> read_ancestors_csv(const std::filesystem::path& file);

/// chi grid: header `r,chi,chi_tilde` (-1 when the arc is undefined).
void write_chi_csv(const std::vector<ReplicateRecord::ChiSample>& grid,
                   const std::filesystem::path& file);

/// interface trace: header `r,theta,defined` (theta is nan when undefined).
void write_interface_csv(const InterfaceTrace& trace, const std::filesystem::path& file);

/// Raw per-replicate measurement families, one CSV each:
/// children.csv, sectors.csv, interfaces.csv, chi.csv, agreement.csv,
/// spine.csv, multiplicity.csv.
void write_record_csvs(const std::vector<ReplicateRecord>& records,
                       const std::filesystem::path& directory);

std::string format_double(double v);

}  // namespace rst

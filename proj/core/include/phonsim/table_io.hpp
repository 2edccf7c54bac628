#pragma once

#include <string>
#include <vector>

#include "phonsim/dispersion.hpp"
#include "phonsim/propagate.hpp"
#include "phonsim/spectral_diffusion.hpp"
#include "phonsim/sweep.hpp"

namespace phonsim {

struct Series {
    std::vector<double> x;
    std::vector<double> y;
};

// Two-column numeric series: comma-, tab- or space-separated, `#` comments.
Series read_series(const std::string& path);
void write_series(const std::string& path, const Series& s, const std::string& header);

// Frame stack: either a directory of series files (sorted by name) or a
// single multi-column file whose first row is a time header and whose first
// column is the wavelength axis.
std::vector<Frame> read_frame_stack(const std::string& path);
void write_frame_stack(const std::string& path, const std::vector<Frame>& frames);

// Dispersion branch table: `# branch: <name>` and a units header comment,
// then `k omega` rows.
DispersionTable read_dispersion_table(const std::string& path);

// Catalog table: `d e_sm e_bm` rows.
PhononModeCatalog read_catalog(const std::string& path);

// Matrix with axis headers: first row lists detunings, first column pulse
// areas (rad).
void write_population_map_csv(const std::string& path, const PopulationMap& map);
void write_map_diagnostics_csv(const std::string& path, const PopulationMap& map);

// One line per step: t, Re/Im of all four density-matrix entries.
void write_trajectory_csv(const std::string& path, const Trajectory& traj);

}  // namespace phonsim

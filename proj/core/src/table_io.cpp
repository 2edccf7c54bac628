#include "phonsim/table_io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "phonsim/errors.hpp"

namespace phonsim {

namespace {

namespace fs = std::filesystem;

std::vector<double> split_numbers(const std::string& line, const std::string& path, int lineno) {
    std::string body = line;
    std::replace(body.begin(), body.end(), ',', ' ');
    std::replace(body.begin(), body.end(), '\t', ' ');
    std::istringstream ss(body);
    std::vector<double> out;
    std::string tok;
    while (ss >> tok) {
        try {
            size_t pos = 0;
            out.push_back(std::stod(tok, &pos));
            if (pos != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw data_error(path + ":" + std::to_string(lineno) +
                             ": not a number: `" + tok + "`");
        }
    }
    return out;
}

// Returns data rows; comment lines (minus the leading '#') go to `comments`.
std::vector<std::vector<double>> read_rows(const std::string& path,
                                           std::vector<std::string>* comments = nullptr) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open data file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            if (comments) comments->push_back(line.substr(first + 1));
            continue;
        }
        rows.push_back(split_numbers(line, path, lineno));
    }
    return rows;
}

void open_out(std::ofstream& out, const std::string& path) {
    out.open(path);
    if (!out) throw data_error("cannot write file: " + path);
    out.precision(17);
}

}  // namespace

Series read_series(const std::string& path) {
    Series s;
    for (const auto& row : read_rows(path)) {
        if (row.size() != 2)
            throw data_error(path + ": expected two columns, got " + std::to_string(row.size()));
        s.x.push_back(row[0]);
        s.y.push_back(row[1]);
    }
    if (s.x.empty()) throw data_error(path + ": no data rows");
    return s;
}

void write_series(const std::string& path, const Series& s, const std::string& header) {
    std::ofstream out;
    open_out(out, path);
    if (!header.empty()) out << "# " << header << "\n";
    for (size_t i = 0; i < s.x.size(); ++i) out << s.x[i] << " " << s.y[i] << "\n";
}

std::vector<Frame> read_frame_stack(const std::string& path) {
    std::vector<Frame> frames;
    if (fs::is_directory(path)) {
        std::vector<std::string> files;
        for (const auto& e : fs::directory_iterator(path))
            if (e.is_regular_file()) files.push_back(e.path().string());
        std::sort(files.begin(), files.end());
        for (const auto& f : files) {
            const Series s = read_series(f);
            frames.push_back({s.x, s.y});
        }
    } else {
        // Multi-column: `# time <t1> <t2> ...` header, rows `lambda v1 v2 ...`.
        const auto rows = read_rows(path);
        if (rows.empty()) throw data_error(path + ": no data rows");
        const size_t ncols = rows.front().size();
        if (ncols < 2) throw data_error(path + ": need a wavelength column plus frames");
        for (const auto& row : rows)
            if (row.size() != ncols)
                throw data_error(path + ": ragged rows in frame stack");
        frames.resize(ncols - 1);
        for (auto& f : frames) {
            f.lambda_nm.reserve(rows.size());
            f.counts.reserve(rows.size());
        }
        for (const auto& row : rows)
            for (size_t c = 1; c < ncols; ++c) {
                frames[c - 1].lambda_nm.push_back(row[0]);
                frames[c - 1].counts.push_back(row[c]);
            }
    }
    if (frames.empty()) throw data_error(path + ": no frames found");
    return frames;
}

void write_frame_stack(const std::string& path, const std::vector<Frame>& frames) {
    if (frames.empty()) throw data_error("write_frame_stack: no frames");
    std::ofstream out;
    open_out(out, path);
    out << "# lambda_nm then one counts column per frame\n# time";
    for (size_t i = 0; i < frames.size(); ++i) out << " " << i;
    out << "\n";
    const size_t n = frames.front().lambda_nm.size();
    for (const auto& f : frames)
        if (f.lambda_nm.size() != n)
            throw data_error("write_frame_stack: frames have mismatched grids");
    for (size_t i = 0; i < n; ++i) {
        out << frames.front().lambda_nm[i];
        for (const auto& f : frames) out << " " << f.counts[i];
        out << "\n";
    }
}

DispersionTable read_dispersion_table(const std::string& path) {
    std::vector<std::string> comments;
    const auto rows = read_rows(path, &comments);
    DispersionTable t;
    for (const auto& c : comments) {
        const size_t pos = c.find("branch:");
        if (pos != std::string::npos) {
            std::string b = c.substr(pos + 7);
            const size_t first = b.find_first_not_of(" \t");
            if (first != std::string::npos) t.branch = b.substr(first);
        }
    }
    for (const auto& row : rows) {
        if (row.size() != 2)
            throw data_error(path + ": dispersion rows are `k_inv_angstrom omega_rad_per_ps`");
        t.k_inv_angstrom.push_back(row[0]);
        t.omega_rad_per_ps.push_back(row[1]);
    }
    t.validate();
    return t;
}

PhononModeCatalog read_catalog(const std::string& path) {
    PhononModeCatalog c;
    for (const auto& row : read_rows(path)) {
        if (row.size() != 3)
            throw data_error(path + ": catalog rows are `d_angstrom e_sm_mev e_bm_mev`");
        c.d_angstrom.push_back(row[0]);
        c.e_sm_meV.push_back(row[1]);
        c.e_bm_meV.push_back(row[2]);
    }
    c.validate();
    return c;
}

void write_population_map_csv(const std::string& path, const PopulationMap& map) {
    std::ofstream out;
    open_out(out, path);
    out << "theta_rad\\detuning_nm";
    for (double d : map.detuning_nm) out << "," << d;
    out << "\n";
    for (size_t i = 0; i < map.theta_rad.size(); ++i) {
        out << map.theta_rad[i];
        for (size_t j = 0; j < map.detuning_nm.size(); ++j)
            out << "," << map.population(static_cast<Eigen::Index>(i),
                                         static_cast<Eigen::Index>(j));
        out << "\n";
    }
}

void write_map_diagnostics_csv(const std::string& path, const PopulationMap& map) {
    std::ofstream out;
    open_out(out, path);
    out << "theta_rad,detuning_nm,valid,max_bond,truncation_error,error\n";
    for (size_t i = 0; i < map.theta_rad.size(); ++i)
        for (size_t j = 0; j < map.detuning_nm.size(); ++j) {
            const CellDiagnostics& c = map.cell(static_cast<int>(i), static_cast<int>(j));
            out << map.theta_rad[i] << "," << map.detuning_nm[j] << "," << (c.valid ? 1 : 0)
                << "," << c.max_bond << "," << c.truncation_error << ",\"" << c.error << "\"\n";
        }
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
    std::ofstream out;
    open_out(out, path);
    out << "t_ps,re_gg,im_gg,re_gx,im_gx,re_xg,im_xg,re_xx,im_xx\n";
    for (size_t i = 0; i < traj.times_ps.size(); ++i) {
        const auto& r = traj.states[i].rho;
        out << traj.times_ps[i];
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                out << "," << r(a, b).real() << "," << r(a, b).imag();
        out << "\n";
    }
}

}  // namespace phonsim

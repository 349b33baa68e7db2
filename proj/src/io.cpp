#include "uscsim/io.hpp"

#include <bit>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "uscsim/units.hpp"

static_assert(std::endian::native == std::endian::little,
              "record files are little-endian");

namespace uscsim {

namespace {

using nlohmann::json;

void require_stream(const std::ofstream& out, const std::string& path) {
    if (!out) {
        throw std::runtime_error("io: cannot open '" + path + "' for writing");
    }
}

json params_to_json(const ParamEcho& params) {
    json j = json::object();
    for (const auto& [key, value] : params) j[key] = value;
    return j;
}

}  // namespace

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

std::string echo_comment_block(const ParamEcho& params) {
    std::string block;
    for (const auto& [key, value] : params) {
        block += "# " + key + " = " + format_double(value) + "\n";
    }
    return block;
}

void write_spectrum_csv(const std::string& path, const SpectrumTrace& port_a,
                        const SpectrumTrace& port_b, const ParamEcho& params) {
    if (port_a.grid != port_b.grid) {
        throw std::invalid_argument("write_spectrum_csv: port grids differ");
    }
    std::ofstream out(path);
    require_stream(out, path);
    out << echo_comment_block(params);
    out << "omega_mhz,psd_a,psd_b\n";
    for (std::size_t i = 0; i < port_a.grid.size(); ++i) {
        out << format_double(rad_to_mhz(port_a.grid[i])) << ','
            << format_double(port_a.values[i]) << ','
            << format_double(port_b.values[i]) << '\n';
    }
}

void write_peaks_json(const std::string& path, const std::vector<Peak>& peaks) {
    json j = json::array();
    for (const Peak& p : peaks) {
        j.push_back({{"omega_mhz", rad_to_mhz(p.omega)}, {"height", p.height}});
    }
    std::ofstream out(path);
    require_stream(out, path);
    out << j.dump(2) << '\n';
}

void write_covariance_json(const std::string& path, const CovarianceMatrix& v,
                           const ParamEcho& params) {
    json entries = json::array();
    for (int row = 0; row < 4; ++row) {
        json r = json::array();
        for (int col = 0; col < 4; ++col) r.push_back(v.entries(row, col));
        entries.push_back(r);
    }
    json j{{"convention", "X=(a+a†)/2, vac=1/4"},
           {"entries", entries},
           {"parameters", params_to_json(params)}};
    std::ofstream out(path);
    require_stream(out, path);
    out << j.dump(2) << '\n';
}

void write_variance_csv(const std::string& path, const VarianceTrace& trace,
                        const ParamEcho& params) {
    std::ofstream out(path);
    require_stream(out, path);
    out << echo_comment_block(params);
    out << "omega_mhz,sigma_min_db,sigma_max_db\n";
    for (std::size_t i = 0; i < trace.grid.size(); ++i) {
        out << format_double(rad_to_mhz(trace.grid[i])) << ','
            << format_double(trace.sigma_min_db[i]) << ','
            << format_double(trace.sigma_max_db[i]) << '\n';
    }
}

void write_records(const std::string& bin_path, const std::string& sidecar_path,
                   const QuadratureRecordSet& records, const DetectionChain& chain,
                   const ParamEcho& params) {
    {
        std::ofstream out(bin_path, std::ios::binary);
        require_stream(out, bin_path);
        for (std::size_t k = 0; k < records.count(); ++k) {
            double row[5];
            for (int i = 0; i < 4; ++i) row[i] = records.samples[k][static_cast<std::size_t>(i)];
            row[4] = records.pump_on[k] ? 1.0 : 0.0;
            out.write(reinterpret_cast<const char*>(row), sizeof(row));
        }
    }
    json j{{"count", records.count()},
           {"columns", {"X_a", "P_a", "X_b", "P_b", "pump_flag"}},
           {"layout", "row-major records of 5 little-endian float64"},
           {"chain",
            {{"gain_a_v2", chain.gain_a},
             {"gain_b_v2", chain.gain_b},
             {"added_noise_a", chain.added_noise_a},
             {"added_noise_b", chain.added_noise_b},
             {"seed", chain.seed}}},
           {"parameters", params_to_json(params)}};
    std::ofstream out(sidecar_path);
    require_stream(out, sidecar_path);
    out << j.dump(2) << '\n';
}

QuadratureRecordSet read_records(const std::string& bin_path) {
    std::ifstream in(bin_path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("io: cannot open '" + bin_path + "'");
    }
    QuadratureRecordSet records;
    double row[5];
    while (in.read(reinterpret_cast<char*>(row), sizeof(row))) {
        records.samples.push_back({row[0], row[1], row[2], row[3]});
        records.pump_on.push_back(row[4] != 0.0 ? 1 : 0);
    }
    return records;
}

void write_histogram_csv(const std::string& path, const HistogramGrid& grid) {
    std::ofstream out(path);
    require_stream(out, path);
    out << "xedges";
    for (double e : grid.x_edges) out << ',' << format_double(e);
    out << "\nyedges";
    for (double e : grid.y_edges) out << ',' << format_double(e);
    out << '\n';
    const std::size_t nx = grid.x_edges.size() - 1;
    const std::size_t ny = grid.y_edges.size() - 1;
    for (std::size_t iy = 0; iy < ny; ++iy) {
        for (std::size_t ix = 0; ix < nx; ++ix) {
            if (ix) out << ',';
            out << format_double(grid.counts[iy * nx + ix]);
        }
        out << '\n';
    }
}

void write_params_json(const std::string& path, const ParamEcho& params) {
    std::ofstream out(path);
    require_stream(out, path);
    out << params_to_json(params).dump(2) << '\n';
}

}  // namespace uscsim

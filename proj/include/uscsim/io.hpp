#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "uscsim/gaussian.hpp"
#include "uscsim/measurement.hpp"
#include "uscsim/spectra.hpp"

namespace uscsim {

/// Deterministic number formatting shared by every artifact writer, so equal
/// inputs always produce byte-identical files.
std::string format_double(double value);

using ParamEcho = std::map<std::string, double>;

/// `# key = value` comment lines prepended to CSV artifacts.
std::string echo_comment_block(const ParamEcho& params);

void write_spectrum_csv(const std::string& path, const SpectrumTrace& port_a,
                        const SpectrumTrace& port_b, const ParamEcho& params);

void write_peaks_json(const std::string& path, const std::vector<Peak>& peaks);

void write_covariance_json(const std::string& path, const CovarianceMatrix& v,
                           const ParamEcho& params);

void write_variance_csv(const std::string& path, const VarianceTrace& trace,
                        const ParamEcho& params);

/// Little-endian float64 records of (X_a, P_a, X_b, P_b, pump_flag), plus a
/// JSON sidecar with the seed, chain parameters and count.
void write_records(const std::string& bin_path, const std::string& sidecar_path,
                   const QuadratureRecordSet& records, const DetectionChain& chain,
                   const ParamEcho& params);

QuadratureRecordSet read_records(const std::string& bin_path);

/// CSV matrix with two bin-edge header rows.
void write_histogram_csv(const std::string& path, const HistogramGrid& grid);

void write_params_json(const std::string& path, const ParamEcho& params);

}  // namespace uscsim

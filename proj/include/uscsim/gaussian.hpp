#pragma once

#include <utility>
#include <vector>

#include "uscsim/model.hpp"
#include "uscsim/spectra.hpp"

namespace uscsim {

/// Quadrature convention, fixed project-wide: X = (a + a^dag)/2,
/// P = (a - a^dag)/2i, so the vacuum variance is 1/4.
inline constexpr double vacuum_variance = 0.25;

/// 4x4 real symmetric second-moment matrix of (X_a, P_a, X_b, P_b).
struct CovarianceMatrix {
    Eigen::Matrix4d entries;
};

CovarianceMatrix vacuum_covariance();

/// Covariance of the boxcar-filtered output quadratures: the quadrature
/// spectral matrix averaged over the band [center - bw/2, center + bw/2]
/// together with its frequency mirror. Pumps off gives exactly vacuum.
CovarianceMatrix output_covariance(const ModePair& modes, const PumpConfig& pumps,
                                   double center, double bandwidth);

/// Steady state of A_q V + V A_q^T + D = 0 in the quadrature basis, with
/// vacuum diffusion D = diag(ka, ka, kb, kb)/4. Direct dense solve of the
/// 16-unknown linear system.
CovarianceMatrix intracavity_covariance(const DriftMatrix& drift, const ModePair& modes);

/// Same steady state computed along the independent spectral route: the
/// full-line frequency integral of the intracavity spectral matrix.
CovarianceMatrix intracavity_covariance_spectral(const DriftMatrix& drift,
                                                 const ModePair& modes);

/// The two distinct moduli of the eigenvalues of i Omega V, ascending.
/// Physicality under this convention means both >= 1/4.
std::pair<double, double> symplectic_eigenvalues(const CovarianceMatrix& v);

bool is_physical(const CovarianceMatrix& v, double slack = 1e-10);

enum class Mode { A, B };

/// Eigenvalues (sigma_min, sigma_max) of the selected 2x2 diagonal block.
std::pair<double, double> single_mode_extrema(const CovarianceMatrix& v, Mode mode);

/// r = 10 log10(sigma / sigma_vac); negative iff squeezed below vacuum.
double squeezing_db(double sigma, double sigma_vac = vacuum_variance);

struct CollectiveVariances {
    double x_minus;  // var(X_a - X_b)
    double x_plus;   // var(X_a + X_b)
    double p_minus;  // var(P_a - P_b)
    double p_plus;   // var(P_a + P_b)
};

CollectiveVariances collective_variances(const CovarianceMatrix& v);

/// E_N = max(0, -log2(4 nu_minus~)) from the partial transpose (P_b -> -P_b).
double log_negativity(const CovarianceMatrix& v);

struct SqueezingReport {
    double sigma_min_a, sigma_max_a;
    double sigma_min_b, sigma_max_b;
    double r_a_db, r_b_db;
    CollectiveVariances collective;
    double log_negativity_bits;
};

SqueezingReport squeezing_report(const CovarianceMatrix& v);

/// Minimum and maximum single-quadrature variance of one port versus probe
/// offset, in dB relative to the pumps-off (vacuum) level.
struct VarianceTrace {
    std::vector<double> grid;
    std::vector<double> sigma_min_db;
    std::vector<double> sigma_max_db;
    Port port = Port::A;
};

/// Narrow-band output covariance at each grid offset, reduced to the selected
/// port's extremal variances. bandwidth <= 0 selects min(kappa)/100.
VarianceTrace variance_spectrum(const ModePair& modes, const PumpConfig& pumps,
                                const std::vector<double>& grid, Port port,
                                double bandwidth = 0.0);

}  // namespace uscsim

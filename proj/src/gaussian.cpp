#include "uscsim/gaussian.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "uscsim/units.hpp"

namespace uscsim {

namespace {

using Eigen::Matrix4cd;
using Eigen::Matrix4d;

const std::complex<double> im(0.0, 1.0);

// x = T w maps the operator vector w = (c, d, c^dag, d^dag) onto the
// quadratures x = (X_a, P_a, X_b, P_b).
Matrix4cd quad_from_ops() {
    Matrix4cd t;
    t << 0.5, 0.0, 0.5, 0.0,
         -0.5 * im, 0.0, 0.5 * im, 0.0,
         0.0, 0.5, 0.0, 0.5,
         0.0, -0.5 * im, 0.0, 0.5 * im;
    return t;
}

Matrix4cd ops_from_quad() {
    Matrix4cd t;
    t << 1.0, im, 0.0, 0.0,
         0.0, 0.0, 1.0, im,
         1.0, -im, 0.0, 0.0,
         0.0, 0.0, 1.0, -im;
    return t;
}

// Vacuum input correlator <v_in,i(t) v_in,j(t')> = C_ij delta(t - t').
Matrix4cd vacuum_correlator() {
    Matrix4cd c = Matrix4cd::Zero();
    c(0, 2) = 1.0;
    c(1, 3) = 1.0;
    return c;
}

const Matrix4cd kT = quad_from_ops();
const Matrix4cd kTinv = ops_from_quad();
const Matrix4cd kC = vacuum_correlator();

Eigen::Vector4d coupling_diagonal(const ModePair& modes) {
    const double ra = std::sqrt(modes.kappa_a);
    const double rb = std::sqrt(modes.kappa_b);
    return Eigen::Vector4d(ra, rb, ra, rb);
}

Matrix4cd resolvent(const Matrix4cd& drift, double omega, const char* who) {
    Matrix4cd arg = -im * omega * Matrix4cd::Identity() - drift;
    Eigen::FullPivLU<Matrix4cd> lu(arg);
    if (!lu.isInvertible()) {
        std::ostringstream msg;
        msg << who << ": singular resolvent at omega = " << omega;
        throw std::runtime_error(msg.str());
    }
    return lu.inverse();
}

void refuse_unstable(const DriftMatrix& drift, const char* who) {
    const StabilityReport report = stability(drift);
    if (!report.stable && !report.critical) {
        std::ostringstream msg;
        msg << who << ": system is unstable (stability margin " << report.margin
            << " rad/s)";
        throw std::invalid_argument(msg.str());
    }
}

// Real quadrature spectral matrix at +-omega: the pair average
// (Re F(w) + Re F(-w))/2 with F(w) = T S(w) C S(-w)^T T^T.
Matrix4d quadrature_spectral_pair(const Matrix4cd& drift, const Eigen::Vector4d& k,
                                  double omega) {
    const Matrix4cd identity = Matrix4cd::Identity();
    const Matrix4cd s_plus =
        k.asDiagonal() * resolvent(drift, omega, "output_covariance") * k.asDiagonal()
        - identity;
    const Matrix4cd s_minus =
        k.asDiagonal() * resolvent(drift, -omega, "output_covariance") * k.asDiagonal()
        - identity;
    const Matrix4cd f_plus = kT * (s_plus * kC * s_minus.transpose()) * kT.transpose();
    const Matrix4cd f_minus = kT * (s_minus * kC * s_plus.transpose()) * kT.transpose();
    return 0.5 * (f_plus.real() + f_minus.real());
}

// Intracavity spectral matrix Re[T H(w) C H(-w)^T T^T], H(w) = (-iwI - A)^{-1} K.
Matrix4d intracavity_spectral(const Matrix4cd& drift, const Eigen::Vector4d& k,
                              double omega) {
    const Matrix4cd h_plus =
        resolvent(drift, omega, "intracavity_covariance_spectral") * k.asDiagonal();
    const Matrix4cd h_minus =
        resolvent(drift, -omega, "intracavity_covariance_spectral") * k.asDiagonal();
    const Matrix4cd f = kT * (h_plus * kC * h_minus.transpose()) * kT.transpose();
    return f.real();
}

// 15-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr int gl_n = 15;
constexpr double gl_x[gl_n] = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
constexpr double gl_w[gl_n] = {
    0.0307532419961173, 0.0703660474881081, 0.1071592204671719,
    0.1395706779261543, 0.1662692058169939, 0.1861610000155622,
    0.1984314853271116, 0.2025782419255613, 0.1984314853271116,
    0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
    0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

template <typename F>
Matrix4d gl15(const F& f, double lo, double hi) {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    Matrix4d acc = Matrix4d::Zero();
    for (int i = 0; i < gl_n; ++i) {
        acc += gl_w[i] * f(mid + half * gl_x[i]);
    }
    return half * acc;
}

template <typename F>
Matrix4d adaptive_panel(const F& f, double lo, double hi, const Matrix4d& whole,
                        double tol, int depth) {
    if (depth > 40) {
        throw std::runtime_error("matrix quadrature did not converge");
    }
    const double mid = 0.5 * (lo + hi);
    const Matrix4d left = gl15(f, lo, mid);
    const Matrix4d right = gl15(f, mid, hi);
    const double err = (left + right - whole).cwiseAbs().maxCoeff();
    if (err < tol) {
        return left + right;
    }
    return adaptive_panel(f, lo, mid, left, 0.5 * tol, depth + 1) +
           adaptive_panel(f, mid, hi, right, 0.5 * tol, depth + 1);
}

template <typename F>
Matrix4d integrate_adaptive(const F& f, double lo, double hi, double tol) {
    return adaptive_panel(f, lo, hi, gl15(f, lo, hi), tol, 0);
}

Matrix4d symmetrized(const Matrix4d& m) { return 0.5 * (m + m.transpose()); }

Matrix4d partial_transpose_b(const Matrix4d& v) {
    Matrix4d p = Matrix4d::Identity();
    p(3, 3) = -1.0;
    return p * v * p;
}

Matrix4d symplectic_form() {
    Matrix4d omega = Matrix4d::Zero();
    omega(0, 1) = 1.0;
    omega(1, 0) = -1.0;
    omega(2, 3) = 1.0;
    omega(3, 2) = -1.0;
    return omega;
}

std::pair<double, double> symplectic_spectrum(const Matrix4d& v) {
    Eigen::EigenSolver<Matrix4d> solver(symplectic_form() * v);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("symplectic_eigenvalues: eigensolver failed");
    }
    std::array<double, 4> mods{};
    for (int i = 0; i < 4; ++i) {
        mods[static_cast<std::size_t>(i)] = std::abs(solver.eigenvalues()(i));
    }
    std::sort(mods.begin(), mods.end());
    return {0.5 * (mods[0] + mods[1]), 0.5 * (mods[2] + mods[3])};
}

}  // namespace

CovarianceMatrix vacuum_covariance() {
    return CovarianceMatrix{vacuum_variance * Matrix4d::Identity()};
}

CovarianceMatrix output_covariance(const ModePair& modes, const PumpConfig& pumps,
                                   double center, double bandwidth) {
    if (!(bandwidth > 0.0)) {
        throw std::invalid_argument("output_covariance: bandwidth must be positive");
    }
    const DriftMatrix drift = build_drift(modes, pumps);
    refuse_unstable(drift, "output_covariance");
    const Eigen::Vector4d k = coupling_diagonal(modes);

    const auto integrand = [&](double omega) {
        return quadrature_spectral_pair(drift.entries, k, omega);
    };
    const double lo = center - 0.5 * bandwidth;
    const double hi = center + 0.5 * bandwidth;
    const Matrix4d band = integrate_adaptive(integrand, lo, hi, 1e-10 * bandwidth);
    return CovarianceMatrix{symmetrized(band / bandwidth)};
}

CovarianceMatrix intracavity_covariance(const DriftMatrix& drift, const ModePair& modes) {
    refuse_unstable(drift, "intracavity_covariance");

    const Matrix4cd a_q_complex = kT * drift.entries * kTinv;
    if (a_q_complex.imag().cwiseAbs().maxCoeff() >
        1e-9 * std::max(1.0, a_q_complex.real().cwiseAbs().maxCoeff())) {
        throw std::runtime_error(
            "intracavity_covariance: quadrature drift is not real");
    }
    const Matrix4d a_q = a_q_complex.real();
    Matrix4d diffusion = Matrix4d::Zero();
    diffusion.diagonal() << modes.kappa_a, modes.kappa_a, modes.kappa_b, modes.kappa_b;
    diffusion *= 0.25;

    // vec(A V + V A^T) = (I kron A + A kron I) vec(V), column-major vec
    Eigen::Matrix<double, 16, 16> system = Eigen::Matrix<double, 16, 16>::Zero();
    const Matrix4d identity = Matrix4d::Identity();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            system.block<4, 4>(4 * i, 4 * j) +=
                identity(i, j) * a_q + a_q(i, j) * identity;
        }
    }
    Eigen::Matrix<double, 16, 1> rhs;
    for (int col = 0; col < 4; ++col) {
        for (int row = 0; row < 4; ++row) {
            rhs(4 * col + row) = -diffusion(row, col);
        }
    }
    const Eigen::Matrix<double, 16, 1> sol = system.partialPivLu().solve(rhs);
    Matrix4d v;
    for (int col = 0; col < 4; ++col) {
        for (int row = 0; row < 4; ++row) {
            v(row, col) = sol(4 * col + row);
        }
    }
    const double residual = (a_q * v + v * a_q.transpose() + diffusion)
                                .cwiseAbs()
                                .maxCoeff();
    const double residual_scale = a_q.cwiseAbs().maxCoeff() * v.cwiseAbs().maxCoeff()
                                  + diffusion.maxCoeff();
    if (!(residual <= 1e-9 * residual_scale)) {
        std::ostringstream msg;
        msg << "intracavity_covariance: singular steady-state system (margin "
            << stability(drift).margin << " rad/s)";
        throw std::runtime_error(msg.str());
    }
    return CovarianceMatrix{symmetrized(v)};
}

CovarianceMatrix intracavity_covariance_spectral(const DriftMatrix& drift,
                                                 const ModePair& modes) {
    refuse_unstable(drift, "intracavity_covariance_spectral");
    const Eigen::Vector4d k = coupling_diagonal(modes);

    // substitute omega = s tan(theta); the transformed integrand is bounded
    const double margin = std::abs(stability(drift).margin);
    const double scale = std::max(
        {modes.kappa_a, modes.kappa_b, 2.0 * margin,
         drift.entries.cwiseAbs().maxCoeff()});
    const auto integrand = [&](double theta) -> Matrix4d {
        const double c = std::cos(theta);
        const double omega = scale * std::tan(theta);
        return intracavity_spectral(drift.entries, k, omega) * scale / (c * c);
    };
    const Matrix4d integral =
        integrate_adaptive(integrand, -0.5 * pi, 0.5 * pi, 1e-10);
    return CovarianceMatrix{symmetrized(integral / two_pi)};
}

std::pair<double, double> symplectic_eigenvalues(const CovarianceMatrix& v) {
    const Matrix4d& m = v.entries;
    const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::invalid_argument("symplectic_eigenvalues: matrix is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Matrix4d> ev(m);
    if (ev.eigenvalues()(0) <= 0.0) {
        throw std::invalid_argument(
            "symplectic_eigenvalues: matrix is not positive definite");
    }
    return symplectic_spectrum(m);
}

bool is_physical(const CovarianceMatrix& v, double slack) {
    const auto [nu1, nu2] = symplectic_eigenvalues(v);
    (void)nu2;
    return nu1 >= vacuum_variance - slack;
}

std::pair<double, double> single_mode_extrema(const CovarianceMatrix& v, Mode mode) {
    const int offset = (mode == Mode::A) ? 0 : 2;
    Eigen::Matrix2d block = v.entries.block<2, 2>(offset, offset);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> ev(block);
    return {ev.eigenvalues()(0), ev.eigenvalues()(1)};
}

double squeezing_db(double sigma, double sigma_vac) {
    if (!(sigma > 0.0) || !(sigma_vac > 0.0)) {
        throw std::invalid_argument("squeezing_db: variances must be positive");
    }
    return 10.0 * std::log10(sigma / sigma_vac);
}

CollectiveVariances collective_variances(const CovarianceMatrix& v) {
    const Matrix4d& m = v.entries;
    CollectiveVariances out{};
    out.x_minus = m(0, 0) + m(2, 2) - 2.0 * m(0, 2);
    out.x_plus = m(0, 0) + m(2, 2) + 2.0 * m(0, 2);
    out.p_minus = m(1, 1) + m(3, 3) - 2.0 * m(1, 3);
    out.p_plus = m(1, 1) + m(3, 3) + 2.0 * m(1, 3);
    return out;
}

double log_negativity(const CovarianceMatrix& v) {
    if (!is_physical(v)) {
        throw std::invalid_argument("log_negativity: covariance is not physical");
    }
    const auto [nu1, nu2] =
        symplectic_spectrum(partial_transpose_b(v.entries));
    (void)nu2;
    return std::max(0.0, -std::log2(4.0 * nu1));
}

SqueezingReport squeezing_report(const CovarianceMatrix& v) {
    SqueezingReport report{};
    std::tie(report.sigma_min_a, report.sigma_max_a) = single_mode_extrema(v, Mode::A);
    std::tie(report.sigma_min_b, report.sigma_max_b) = single_mode_extrema(v, Mode::B);
    report.r_a_db = squeezing_db(report.sigma_min_a);
    report.r_b_db = squeezing_db(report.sigma_min_b);
    report.collective = collective_variances(v);
    report.log_negativity_bits = log_negativity(v);
    return report;
}

VarianceTrace variance_spectrum(const ModePair& modes, const PumpConfig& pumps,
                                const std::vector<double>& grid, Port port,
                                double bandwidth) {
    if (grid.empty()) {
        throw std::invalid_argument("variance_spectrum: empty grid");
    }
    if (bandwidth <= 0.0) {
        bandwidth = std::min(modes.kappa_a, modes.kappa_b) / 100.0;
    }
    const Mode mode = (port == Port::A) ? Mode::A : Mode::B;
    VarianceTrace trace;
    trace.grid = grid;
    trace.port = port;
    trace.sigma_min_db.resize(grid.size());
    trace.sigma_max_db.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const CovarianceMatrix v = output_covariance(modes, pumps, grid[i], bandwidth);
        const auto [lo, hi] = single_mode_extrema(v, mode);
        trace.sigma_min_db[i] = squeezing_db(lo);
        trace.sigma_max_db[i] = squeezing_db(hi);
    }
    return trace;
}

}  // namespace uscsim

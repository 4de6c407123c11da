#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "assembly.hpp"
#include "parallel.hpp"

namespace zaremba {

class numerical_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct DirectSolution {
    Eigen::VectorXcd mu;
    double residual = 0.0;  // |A mu - b|_inf / |b|_inf (absolute when b = 0)
};

inline double relative_residual(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& mu, const Eigen::VectorXcd& b) {
    const double r = (A * mu - b).cwiseAbs().maxCoeff();
    const double nb = b.size() ? b.cwiseAbs().maxCoeff() : 0.0;
    return nb > 0.0 ? r / nb : r;
}

// LU with partial pivoting.
inline DirectSolution solve_direct(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b) {
    if (A.rows() != A.cols() || A.rows() != b.size()) throw std::invalid_argument("solve_direct: dimension mismatch");
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    const auto& LU = lu.matrixLU();
    for (Eigen::Index i = 0; i < LU.rows(); ++i)
        if (!(std::abs(LU(i, i)) > 0.0) || !std::isfinite(std::abs(LU(i, i))))
            throw numerical_error("system matrix is singular at this wavenumber; use continuation");
    DirectSolution s;
    s.mu = lu.solve(b);
    if (!s.mu.allFinite()) throw numerical_error("direct solve produced non-finite values");
    s.residual = relative_residual(A, s.mu, b);
    return s;
}

inline DirectSolution solve_direct(const ZarembaSystem& S, const Eigen::VectorXcd& b) { return solve_direct(S.A, b); }

inline double sigma_ratio_from(const Eigen::VectorXd& sv) {
    if (sv.size() == 0 || !(sv(0) > 0.0)) return 0.0;
    return sv(sv.size() - 1) / sv(0);
}

inline double sigma_min_ratio(const Eigen::MatrixXcd& A) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
    return sigma_ratio_from(svd.singularValues());
}

inline double sigma_min_ratio(const ZarembaSystem& S) { return sigma_min_ratio(S.A); }

struct ResonanceGuardConfig {
    double threshold = 1e-8;
    double delta = 0.05;
    int m_samples = 8;
    bool force = false;  // continue even when the ratio is above threshold

    void validate() const {
        if (!(threshold > 0.0 && threshold < 1.0)) throw config_error("guard threshold must lie in (0, 1)");
        if (!(delta > 0.0)) throw config_error("guard delta must be positive");
        if (m_samples < 4) throw config_error("guard m_samples must be >= 4");
    }
};

// Chebyshev points of the first kind on [a, b], ascending.
inline std::vector<double> chebyshev_points(double a, double b, int m) {
    std::vector<double> x(m);
    for (int j = 0; j < m; ++j) x[j] = 0.5 * (a + b) - 0.5 * (b - a) * std::cos((j + 0.5) * std::numbers::pi / m);
    return x;
}

// Least-squares polynomial of the given degree through (k_j, v_j), evaluated at k0. The fit
// uses a Chebyshev basis in the variable mapped from [k_lo, k_hi] to [-1, 1].
inline Eigen::VectorXcd polyfit_eval(const std::vector<double>& ks, const std::vector<Eigen::VectorXcd>& values,
                                     int degree, double k0) {
    const int m = int(ks.size());
    if (m == 0 || degree < 0 || degree >= m) throw std::invalid_argument("polyfit_eval: bad degree");
    const auto [lo, hi] = std::minmax_element(ks.begin(), ks.end());
    const double c = 0.5 * (*lo + *hi), r = std::max(0.5 * (*hi - *lo), 1e-300);
    auto cheb_row = [&](double k) {
        Eigen::RowVectorXd row(degree + 1);
        const double x = (k - c) / r;
        for (int d = 0; d <= degree; ++d) row(d) = d == 0 ? 1.0 : d == 1 ? x : 2.0 * x * row(d - 1) - row(d - 2);
        return row;
    };
    Eigen::MatrixXd V(m, degree + 1);
    for (int j = 0; j < m; ++j) V.row(j) = cheb_row(ks[j]);
    const Eigen::Index nobs = values.front().size();
    Eigen::MatrixXcd Y(m, nobs);
    for (int j = 0; j < m; ++j) Y.row(j) = values[j].transpose();
    const Eigen::MatrixXcd coef = V.cast<std::complex<double>>().colPivHouseholderQr().solve(Y);
    return (cheb_row(k0).cast<std::complex<double>>() * coef).transpose();
}

enum class SolvePath { Direct, Continued };

inline const char* path_name(SolvePath p) { return p == SolvePath::Direct ? "direct" : "continued"; }

struct ContinuationInfo {
    std::vector<double> sample_k;
    std::vector<double> sample_ratio;
    std::vector<double> excluded_k;
    int degree = -1;
    double interval_halfwidth = 0.0;
};

struct SolveReport {
    Eigen::VectorXcd mu;  // nodal weighted density at k0 (from the raw solve)
    double sigma_ratio = 0.0;
    double residual = 0.0;
    SolvePath path = SolvePath::Direct;
    ContinuationInfo continuation;
    Eigen::VectorXcd observables;
};

namespace detail {

struct SampleSolve {
    double ratio = 0.0;
    Eigen::VectorXcd mu;
    double residual = 0.0;
};

// SVD of A, reused for the solve.
inline SampleSolve svd_solve(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    SampleSolve s;
    s.ratio = sigma_ratio_from(svd.singularValues());
    if (svd.singularValues()(svd.singularValues().size() - 1) > 0.0) {
        s.mu = svd.solve(b);
        s.residual = relative_residual(A, s.mu, b);
    } else {
        s.mu = Eigen::VectorXcd::Constant(b.size(), std::numeric_limits<double>::quiet_NaN());
        s.residual = std::numeric_limits<double>::infinity();
    }
    return s;
}

}  // namespace detail

// Solve A(k0) mu = b(k0) and evaluate observables. When sigma_min/sigma_max of A(k0) is below
// the guard threshold (or continuation is forced), the observables are instead continued
// analytically from Chebyshev samples in [k0 - delta, k0 + delta].
//
//   assemble(k) -> Eigen::MatrixXcd   system matrix at k
//   rhs(k)      -> Eigen::VectorXcd   data at k
//   observe(k, mu) -> Eigen::VectorXcd observable values
template <class Assemble, class Rhs, class Observe>
SolveReport solve_with_guard(double k0, const ResonanceGuardConfig& guard, Assemble&& assemble, Rhs&& rhs,
                             Observe&& observe, int threads = 1) {
    if (!(k0 > 0.0)) throw config_error("wavenumber must be positive");
    guard.validate();
    SolveReport rep;
    {
        const Eigen::MatrixXcd A = assemble(k0);
        const Eigen::VectorXcd b = rhs(k0);
        const detail::SampleSolve s = detail::svd_solve(A, b);
        rep.mu = s.mu;
        rep.sigma_ratio = s.ratio;
        rep.residual = s.residual;
        if (s.ratio >= guard.threshold && !guard.force) {
            rep.path = SolvePath::Direct;
            rep.observables = observe(k0, s.mu);
            return rep;
        }
    }

    rep.path = SolvePath::Continued;
    const int m = guard.m_samples;
    double delta = guard.delta;
    for (int attempt = 0; attempt < 3; ++attempt, delta *= 2.0) {
        const std::vector<double> ks = chebyshev_points(k0 - delta, k0 + delta, m);
        std::vector<detail::SampleSolve> sols(m);
        std::vector<Eigen::VectorXcd> obs(m);
        parallel_for(m, threads, 1, [&](int begin, int end) {
            for (int j = begin; j < end; ++j) {
                if (!(ks[j] > 0.0)) {
                    sols[j].ratio = 0.0;
                    continue;
                }
                sols[j] = detail::svd_solve(assemble(ks[j]), rhs(ks[j]));
                if (sols[j].ratio >= guard.threshold) obs[j] = observe(ks[j], sols[j].mu);
            }
        });
        ContinuationInfo info;
        info.interval_halfwidth = delta;
        std::vector<double> good_k;
        std::vector<Eigen::VectorXcd> good_v;
        for (int j = 0; j < m; ++j) {
            if (sols[j].ratio >= guard.threshold) {
                info.sample_k.push_back(ks[j]);
                info.sample_ratio.push_back(sols[j].ratio);
                good_k.push_back(ks[j]);
                good_v.push_back(obs[j]);
            } else {
                info.excluded_k.push_back(ks[j]);
            }
        }
        rep.continuation = info;
        if (2 * int(good_k.size()) < m) continue;  // widen and redraw
        if (good_k.size() < 4) break;
        rep.continuation.degree = int(good_k.size()) - 1;
        rep.observables = polyfit_eval(good_k, good_v, rep.continuation.degree, k0);
        return rep;
    }
    throw numerical_error("continuation failed: too few well-conditioned samples near k0");
}

}  // namespace zaremba

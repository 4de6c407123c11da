#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "assembly.hpp"
#include "field.hpp"
#include "parallel.hpp"
#include "solve.hpp"

namespace zaremba {

struct EigenScanOptions {
    double k_min = 1.0;
    double k_max = 2.0;
    int grid_points = 21;
    double refine_tol = 1e-9;
    double accept_factor = 1e-3;  // minimum must fall below this times the median scan ratio

    void validate() const {
        if (!(k_min > 0.0) || !(k_max > k_min)) throw config_error("eigen scan range must satisfy 0 < k_min < k_max");
        if (grid_points < 3) throw config_error("eigen scan needs at least 3 grid points");
        if (!(refine_tol > 0.0)) throw config_error("refine_tol must be positive");
    }
};

struct EigenMinimum {
    double k = 0.0;
    double bracket_lo = 0.0, bracket_hi = 0.0;
    double tolerance = 0.0;     // final bracket width
    double ratio = 0.0;         // preconditioned indicator at k
    double raw_ratio = 0.0;     // sigma_min / sigma_max of A(k)
    Eigen::VectorXcd density;   // right singular vector of A(k) for the smallest singular value
};

struct EigenScanResult {
    std::vector<double> k_values;
    std::vector<double> ratios;
    double median_ratio = 0.0;
    std::vector<EigenMinimum> minima;
};

// Interior (gamma = +1) eigenvalue indicator. The raw ratio sigma_min/sigma_max of A(k) has
// a k-independent discretization floor, so the scan uses A(k) A(k_ref)^-1 instead, with
// reference wavenumbers at both ends of the interval; the larger of the two ratios is kept.
class EigenIndicator {
public:
    EigenIndicator(const Discretization& D, double k_lo, double k_hi, int threads = 1) : D_(&D), threads_(threads) {
        for (double kr : {k_lo, k_hi}) refs_.emplace_back(assemble_system(D, kr, +1, threads).A);
    }

    double operator()(double k) const { return eval(assemble_system(*D_, k, +1, threads_).A); }

    double eval(const Eigen::MatrixXcd& A) const {
        double best = 0.0;
        const Eigen::MatrixXcd At = A.transpose();
        for (const auto& lu : refs_) {
            // (A A_ref^-1)^T = A_ref^-T A^T has the same singular values
            const Eigen::MatrixXcd M = lu.transpose().solve(At);
            if (!M.allFinite()) continue;
            best = std::max(best, sigma_min_ratio(M));
        }
        return best;
    }

private:
    const Discretization* D_;
    int threads_;
    std::vector<Eigen::PartialPivLU<Eigen::MatrixXcd>> refs_;
};

// Golden-section search for the minimum of f on [a, b].
template <class F>
double golden_section(F&& f, double a, double b, double tol, double* width = nullptr) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    if (width) *width = b - a;
    return fc < fd ? c : d;
}

inline Eigen::VectorXcd null_vector(const Eigen::MatrixXcd& A, double* raw_ratio = nullptr) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinV);
    if (raw_ratio) *raw_ratio = sigma_ratio_from(svd.singularValues());
    return svd.matrixV().col(A.cols() - 1);
}

inline EigenScanResult eigen_scan(const Discretization& D, const EigenScanOptions& opt, int threads = 1) {
    opt.validate();
    EigenScanResult res;
    const int m = opt.grid_points;
    for (int i = 0; i < m; ++i) res.k_values.push_back(opt.k_min + (opt.k_max - opt.k_min) * i / double(m - 1));
    const EigenIndicator ind(D, opt.k_min, opt.k_max, threads);
    res.ratios.assign(m, 0.0);
    parallel_for(m, threads, 1, [&](int begin, int end) {
        for (int i = begin; i < end; ++i) res.ratios[i] = ind.eval(assemble_system(D, res.k_values[i], +1, 1).A);
    });
    std::vector<double> sorted = res.ratios;
    std::sort(sorted.begin(), sorted.end());
    res.median_ratio = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);

    for (int i = 0; i < m; ++i) {
        const double left = i > 0 ? res.ratios[i - 1] : 1e300;
        const double right = i + 1 < m ? res.ratios[i + 1] : 1e300;
        if (!(res.ratios[i] <= left && res.ratios[i] < right)) continue;
        EigenMinimum mn;
        mn.bracket_lo = res.k_values[std::max(0, i - 1)];
        mn.bracket_hi = res.k_values[std::min(m - 1, i + 1)];
        double width = 0.0;
        mn.k = golden_section(ind, mn.bracket_lo, mn.bracket_hi, opt.refine_tol, &width);
        mn.tolerance = width;
        mn.ratio = ind(mn.k);
        if (!(mn.ratio < opt.accept_factor * res.median_ratio)) continue;
        mn.density = null_vector(assemble_system(D, mn.k, +1, threads).A, &mn.raw_ratio);
        res.minima.push_back(std::move(mn));
    }
    return res;
}

// Single-layer eigenfunction scaled to unit maximum modulus over the sample points, with the
// phase chosen so the value of largest modulus is real and positive.
class Eigenfunction {
public:
    Eigenfunction(const Discretization& D, double k, const Eigen::VectorXcd& density, const std::vector<Vec2>& samples)
        : pot_(D, k, density) {
        cplx best = 0.0;
        for (const Vec2& x : samples) {
            const cplx v = pot_(x);
            if (std::abs(v) > std::abs(best)) best = v;
        }
        if (!(std::abs(best) > 0.0)) throw numerical_error("eigenfunction vanishes at all sample points");
        scale_ = 1.0 / best;
    }

    cplx operator()(Vec2 x) const { return scale_ * pot_(x); }
    cplx scale() const { return scale_; }

private:
    LayerPotential pot_;
    cplx scale_ = 1.0;
};

// Interior sample points on a uniform box grid, away from the boundary.
inline std::vector<Vec2> interior_samples(const Discretization& D, int per_side = 24) {
    const CurveSampler cs(D.curve());
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const Vec2& p : cs.points()) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    GridSpec g{x0, x1, y0, y1, per_side, per_side};
    std::vector<Vec2> pts;
    for (int j = 0; j < per_side; ++j)
        for (int i = 0; i < per_side; ++i) pts.push_back(g.point(i, j));
    const auto mask = classify_points(D.curve(), pts, Region::Interior, default_near_threshold(D));
    std::vector<Vec2> out;
    for (std::size_t i = 0; i < pts.size(); ++i)
        if (mask[i] == mask_ok) out.push_back(pts[i]);
    return out;
}

}  // namespace zaremba

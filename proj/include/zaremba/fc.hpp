#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace zaremba {

class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// f(s) = sum_{j=0}^{Jc} C_j cos(j s) + sum_{j=1}^{Js} D_j sin(j s); D(0) holds D_1.
struct FCSeries {
    Eigen::VectorXcd C;
    Eigen::VectorXcd D;
};

inline std::complex<double> fc_eval(const FCSeries& f, double s) {
    std::complex<double> v = 0.0;
    for (Eigen::Index j = 0; j < f.C.size(); ++j) v += f.C(j) * std::cos(double(j) * s);
    for (Eigen::Index j = 0; j < f.D.size(); ++j) v += f.D(j) * std::sin(double(j + 1) * s);
    return v;
}

inline std::complex<double> fc_eval_deriv(const FCSeries& f, double s) {
    std::complex<double> v = 0.0;
    for (Eigen::Index j = 1; j < f.C.size(); ++j) v -= f.C(j) * (double(j) * std::sin(double(j) * s));
    for (Eigen::Index j = 0; j < f.D.size(); ++j) v += f.D(j) * (double(j + 1) * std::cos(double(j + 1) * s));
    return v;
}

struct FCOptions {
    int bandwidth = -1;            // J; negative selects floor(n/3)
    double svd_cutoff = 1e-12;     // relative to the largest singular value
    double weight_exponent = 4.0;  // basis column j scaled by (1+j^2)^(-p/2)
};

inline int default_bandwidth(int n) { return n / 3; }

// Samples at s_i = (i + 1/2) pi / n  ->  trigonometric series on [0, pi].
// Weighted truncated-SVD least squares in the basis {cos js, sin js : j <= J},
// plus the cosine interpolant of the fit residual so that nodal values are reproduced.
class FCOperator {
public:
    FCOperator() = default;

    FCOperator(int n, const FCOptions& opt = {}) : n_(n) {
        J_ = opt.bandwidth < 0 ? default_bandwidth(n) : opt.bandwidth;
        cutoff_ = opt.svd_cutoff;
        p_ = opt.weight_exponent;
        if (n < 8) throw config_error("FC operator needs n >= 8");
        if (J_ < 1) throw config_error("FC bandwidth must be >= 1");
        if (J_ > n - 1) throw config_error("FC bandwidth too large for the node count");
        if (!(cutoff_ > 0.0 && cutoff_ < 1.0)) throw config_error("svd_cutoff must lie in (0, 1)");

        const int m = 2 * J_ + 1;
        Eigen::VectorXd s = nodes(n);
        Eigen::VectorXd wcol(m);
        for (int c = 0; c < m; ++c) {
            const double j = c <= J_ ? c : c - J_;
            wcol(c) = std::pow(1.0 + j * j, -0.5 * p_);
        }
        Eigen::MatrixXd A = basis(s, J_) * wcol.asDiagonal();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
        const Eigen::VectorXd& sv = svd.singularValues();
        int r = 0;
        while (r < sv.size() && sv(r) > cutoff_ * sv(0)) ++r;
        U_ = svd.matrixU().leftCols(r);
        S_ = sv.head(r);
        V_ = wcol.asDiagonal() * svd.matrixV().leftCols(r);
        singular_values_ = sv;
        Bn_ = basis(s, J_);

        // inverse of the cosine collocation matrix C_ij = cos(j s_i) (DCT-II)
        Cinv_.resize(n, n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) Cinv_(j, i) = (j == 0 ? 1.0 : 2.0) / n * std::cos(j * s(i));
    }

    int n() const { return n_; }
    int bandwidth() const { return J_; }
    double svd_cutoff() const { return cutoff_; }
    double weight_exponent() const { return p_; }
    int rank() const { return int(S_.size()); }
    const Eigen::VectorXd& singular_values() const { return singular_values_; }

    static Eigen::VectorXd nodes(int n) {
        Eigen::VectorXd s(n);
        for (int i = 0; i < n; ++i) s(i) = (i + 0.5) * std::numbers::pi / n;
        return s;
    }

    // Columns: cos(0 s) .. cos(J s), sin(1 s) .. sin(J s).
    static Eigen::MatrixXd basis(const Eigen::VectorXd& s, int J) {
        Eigen::MatrixXd B(s.size(), 2 * J + 1);
        for (Eigen::Index i = 0; i < s.size(); ++i) {
            for (int j = 0; j <= J; ++j) B(i, j) = std::cos(j * s(i));
            for (int j = 1; j <= J; ++j) B(i, J + j) = std::sin(j * s(i));
        }
        return B;
    }

    template <class Vec>
    FCSeries apply(const Vec& samples) const {
        if (samples.size() != n_) throw std::invalid_argument("fc_apply: sample length mismatch");
        const Eigen::VectorXcd b = samples.template cast<std::complex<double>>();
        const Eigen::VectorXcd coef = V_ * (S_.cwiseInverse().asDiagonal() * (U_.transpose() * b));
        // residual of the fit as actually evaluated, so roundoff in large coefficients is absorbed
        const Eigen::VectorXcd resid = b - Bn_ * coef;
        const Eigen::VectorXcd dct = Cinv_ * resid;
        FCSeries f;
        f.C = dct;
        f.C.head(J_ + 1) += coef.head(J_ + 1);
        f.D = coef.tail(J_);
        return f;
    }

    // Bandwidth-J part of the series (the least-squares fit without the residual term).
    template <class Vec>
    FCSeries apply_band(const Vec& samples) const {
        const Eigen::VectorXcd b = samples.template cast<std::complex<double>>();
        const Eigen::VectorXcd coef = V_ * (S_.cwiseInverse().asDiagonal() * (U_.transpose() * b));
        FCSeries f;
        f.C = coef.head(J_ + 1);
        f.D = coef.tail(J_);
        return f;
    }

    // Matrix mapping nodal samples to series values at the points s.
    Eigen::MatrixXd eval_matrix(const Eigen::VectorXd& s) const {
        const Eigen::MatrixXd PV = (basis(s, J_) * V_) * S_.cwiseInverse().asDiagonal();
        Eigen::MatrixXd Cs(s.size(), n_);
        for (Eigen::Index i = 0; i < s.size(); ++i)
            for (int j = 0; j < n_; ++j) Cs(i, j) = std::cos(j * s(i));
        const Eigen::MatrixXd CC = Cs * Cinv_;
        return PV * U_.transpose() + CC - (CC * U_) * U_.transpose();
    }

    // Dense coefficient map for the bandwidth-J part: (2J+1) x n.
    Eigen::MatrixXd band_matrix() const { return V_ * S_.cwiseInverse().asDiagonal() * U_.transpose(); }

private:
    int n_ = 0, J_ = 0;
    double cutoff_ = 1e-12, p_ = 4.0;
    Eigen::MatrixXd U_, V_, Cinv_, Bn_;
    Eigen::VectorXd S_, singular_values_;
};

}  // namespace zaremba

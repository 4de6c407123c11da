#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace zaremba {

struct GaussRule {
    std::vector<double> x, w;
};

// Gauss-Legendre nodes on [-1, 1] by Newton iteration on P_n.
inline GaussRule gauss_legendre(int n) {
    GaussRule g;
    g.x.resize(n);
    g.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= n; ++k) {
            const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double wi = 2.0 / ((1.0 - z * z) * dp * dp);
        g.x[i] = -z;
        g.x[n - 1 - i] = z;
        g.w[i] = wi;
        g.w[n - 1 - i] = wi;
    }
    return g;
}

inline constexpr int panel_order = 16;

// Fixed 16-point panel rule with the inverse Legendre-Vandermonde matrix used for
// product integration against log|s - z|.
class PanelRule {
public:
    PanelRule() {
        const GaussRule g = gauss_legendre(panel_order);
        for (int i = 0; i < panel_order; ++i) {
            x_[i] = g.x[i];
            w_[i] = g.w[i];
        }
        Eigen::Matrix<double, panel_order, panel_order> P;
        for (int i = 0; i < panel_order; ++i) {
            const auto p = legendre(x_[i]);
            for (int l = 0; l < panel_order; ++l) P(i, l) = p[l];
        }
        // Orthogonality: P^{-1} = diag((2l+1)/2) P^T diag(w)
        for (int l = 0; l < panel_order; ++l)
            for (int i = 0; i < panel_order; ++i) pinv_(l, i) = (2.0 * l + 1.0) / 2.0 * P(i, l) * w_[i];
    }

    static const PanelRule& instance() {
        static const PanelRule r;
        return r;
    }

    double x(int i) const { return x_[i]; }
    double w(int i) const { return w_[i]; }

    static std::array<double, panel_order> legendre(double x) {
        std::array<double, panel_order> p{};
        p[0] = 1.0;
        p[1] = x;
        for (int l = 2; l < panel_order; ++l) p[l] = ((2.0 * l - 1.0) * x * p[l - 1] - (l - 1.0) * p[l - 2]) / l;
        return p;
    }

    // q_l = int_{-1}^{1} P_l(x) log|x - zeta| dx by Gauss-Legendre panels graded toward Re(zeta).
    std::array<double, panel_order> log_moments(std::complex<double> zeta) const {
        std::array<double, panel_order> q{};
        const double zr = std::clamp(zeta.real(), -1.0, 1.0);
        const double zi = std::abs(zeta - zr);  // distance from zeta to the grading point
        const double stop = std::max(2e-13, zi / 8.0);
        auto add_panel = [&](double a, double b) {
            const double hl = 0.5 * (b - a), mid = 0.5 * (a + b);
            for (int i = 0; i < panel_order; ++i) {
                const double xv = mid + hl * x_[i];
                const double f = std::log(std::abs(std::complex<double>(xv, 0.0) - zeta)) * hl * w_[i];
                const auto p = legendre(xv);
                for (int l = 0; l < panel_order; ++l) q[l] += f * p[l];
            }
        };
        for (int side = 0; side < 2; ++side) {
            const double sgn = side ? 1.0 : -1.0;
            const double len = side ? 1.0 - zr : zr + 1.0;
            if (len <= 0.0) continue;
            double d = len;
            while (d > stop) {
                const double a = zr + sgn * 0.5 * d, b = zr + sgn * d;
                add_panel(std::min(a, b), std::max(a, b));
                d *= 0.5;
            }
            if (zi >= d) {
                add_panel(std::min(zr, zr + sgn * d), std::max(zr, zr + sgn * d));
            } else {
                // |x - zeta| ~ |x - zr| on the last tiny piece: integrate log exactly
                const auto p = legendre(zr + 0.5 * sgn * d);
                const double val = d * (std::log(d) - 1.0);
                for (int l = 0; l < panel_order; ++l) q[l] += val * p[l];
            }
        }
        return q;
    }

    // Weights W_i with sum_i W_i f(x_i) = int_{-1}^{1} f(x) log|x - zeta| dx for f of degree < 16.
    std::array<double, panel_order> log_weights(std::complex<double> zeta) const {
        const auto q = log_moments(zeta);
        std::array<double, panel_order> W{};
        for (int i = 0; i < panel_order; ++i) {
            double acc = 0.0;
            for (int l = 0; l < panel_order; ++l) acc += pinv_(l, i) * q[l];
            W[i] = acc;
        }
        return W;
    }

private:
    std::array<double, panel_order> x_{}, w_{};
    Eigen::Matrix<double, panel_order, panel_order> pinv_;
};

}  // namespace zaremba

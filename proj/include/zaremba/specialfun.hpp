#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace zaremba {

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

struct BesselEval {
    double x = 0.0;
    double J0 = 0.0, J1 = 0.0, Y0 = 0.0, Y1 = 0.0;
    std::complex<double> H0, H1;
};

namespace detail {

// Switch points between the three evaluation regimes.
inline constexpr double bessel_series_max = 1.0;
inline constexpr double bessel_asymptotic_min = 25.0;

inline void bessel_series(double x, double& j0, double& j1, double& y0, double& y1) {
    const double q = -0.25 * x * x;
    double t0 = 1.0, t1 = 1.0;  // (-x^2/4)^m / (m!)^2  and  / (m!(m+1)!)
    double hm = 0.0;            // harmonic number H_m
    double s_j0 = 1.0, s_j1 = 1.0, s_y0 = 0.0, s_y1 = -2.0 * euler_gamma + 1.0;
    for (int m = 1; m < 40; ++m) {
        t0 *= q / (double(m) * m);
        t1 *= q / (double(m) * (m + 1));
        hm += 1.0 / m;
        s_j0 += t0;
        s_j1 += t1;
        s_y0 += hm * t0;
        s_y1 += (-2.0 * euler_gamma + hm + hm + 1.0 / (m + 1)) * t1;
        if (std::abs(t0) < 1e-18 && std::abs(t1) < 1e-18) break;
    }
    const double lg = std::log(0.5 * x) + euler_gamma;
    j0 = s_j0;
    j1 = 0.5 * x * s_j1;
    y0 = (2.0 / std::numbers::pi) * (lg * j0 - s_y0);
    y1 = -2.0 / (std::numbers::pi * x) + (2.0 / std::numbers::pi) * std::log(0.5 * x) * j1
         - (0.5 * x / std::numbers::pi) * s_y1;
}

inline void bessel_miller(double x, double& j0, double& j1, double& y0, double& y1) {
    int nstart = int(std::ceil(1.6 * x + 30.0));
    if (nstart % 2) ++nstart;
    double jp1 = 0.0, jn = 1e-30;
    double norm = 0.0;  // J0 + 2 sum J_2k
    double sy0 = 0.0;   // sum (-1)^k J_2k / k
    double sy1 = 0.0;   // sum (-1)^k (J_{2k-1} - J_{2k+1}) / k
    double jodd_above = 0.0;  // J_{2k+1} seen while descending
    double v0 = 0.0, v1 = 0.0;
    for (int n = nstart; n >= 1; --n) {
        const double jm1 = (2.0 * n / x) * jn - jp1;  // J_{n-1}
        const int m = n - 1;
        if (m % 2 == 0) {
            if (m > 0) {
                const int k = m / 2;
                const double sgn = (k % 2) ? -1.0 : 1.0;
                norm += 2.0 * jm1;
                sy0 += sgn * jm1 / k;
            } else {
                norm += jm1;
            }
        } else {
            // m = 2k-1 with k = (m+1)/2; J_{2k+1} was stored two steps ago
            const int k = (m + 1) / 2;
            const double sgn = (k % 2) ? -1.0 : 1.0;
            sy1 += sgn * (jm1 - jodd_above) / k;
            jodd_above = jm1;
        }
        if (m == 1) v1 = jm1;
        if (m == 0) v0 = jm1;
        jp1 = jn;
        jn = jm1;
        if (std::abs(jn) > 1e250) {
            jn *= 1e-250;
            jp1 *= 1e-250;
            norm *= 1e-250;
            sy0 *= 1e-250;
            sy1 *= 1e-250;
            jodd_above *= 1e-250;
            v1 *= 1e-250;
            v0 *= 1e-250;
        }
    }
    j0 = v0 / norm;
    j1 = v1 / norm;
    const double lg = std::log(0.5 * x) + euler_gamma;
    y0 = (2.0 / std::numbers::pi) * lg * j0 - (4.0 / std::numbers::pi) * sy0 / norm;
    y1 = -(2.0 / std::numbers::pi) * j0 / x + (2.0 / std::numbers::pi) * lg * j1
         + (2.0 / std::numbers::pi) * sy1 / norm;
}

inline void hankel_pq(double nu, double x, double& p, double& q) {
    const double mu = 4.0 * nu * nu;
    double term = 1.0;
    p = 1.0;
    q = 0.0;
    double prev = 1e300;
    for (int k = 1; k < 60; ++k) {
        term *= (mu - double(2 * k - 1) * (2 * k - 1)) / (k * 8.0 * x);
        const double a = std::abs(term);
        if (a > prev) break;  // divergent tail
        prev = a;
        // k odd -> Q, k even -> P; signs alternate within each
        if (k % 2) {
            q += ((k / 2) % 2 ? -term : term);
        } else {
            p += ((k / 2) % 2 ? -term : term);
        }
        if (a < 1e-18) break;
    }
}

inline void bessel_asymptotic(double x, double& j0, double& j1, double& y0, double& y1) {
    const double amp = std::sqrt(2.0 / (std::numbers::pi * x));
    const double c = std::cos(x), s = std::sin(x);
    const double r = std::numbers::sqrt2 / 2.0;
    // chi0 = x - pi/4, chi1 = x - 3pi/4
    const double c0 = r * (c + s), s0 = r * (s - c);
    const double c1 = r * (s - c), s1 = -r * (s + c);
    double p, q;
    hankel_pq(0.0, x, p, q);
    j0 = amp * (p * c0 - q * s0);
    y0 = amp * (p * s0 + q * c0);
    hankel_pq(1.0, x, p, q);
    j1 = amp * (p * c1 - q * s1);
    y1 = amp * (p * s1 + q * c1);
}

}  // namespace detail

inline BesselEval bessel_eval(double x) {
    if (!std::isfinite(x) || x < 1e-300) throw std::domain_error("bessel_eval: argument must be positive and finite");
    BesselEval b;
    b.x = x;
    if (x < detail::bessel_series_max)
        detail::bessel_series(x, b.J0, b.J1, b.Y0, b.Y1);
    else if (x <= detail::bessel_asymptotic_min)
        detail::bessel_miller(x, b.J0, b.J1, b.Y0, b.Y1);
    else
        detail::bessel_asymptotic(x, b.J0, b.J1, b.Y0, b.Y1);
    b.H0 = {b.J0, b.Y0};
    b.H1 = {b.J1, b.Y1};
    return b;
}

inline double bessel_j0(double x) { return x < 1e-300 ? 1.0 : bessel_eval(x).J0; }
inline double bessel_j1(double x) { return x < 1e-300 ? 0.0 : bessel_eval(x).J1; }

// n-th positive zero of J0: McMahon guess, bracket, safeguarded Newton.
inline double bessel_j0_zero(int n) {
    if (n < 1) throw std::domain_error("bessel_j0_zero: n must be >= 1");
    const double beta = (n - 0.25) * std::numbers::pi;
    double lo = beta - 0.4, hi = beta + 0.4;
    if (lo < 1.0) lo = 1.0;
    double flo = bessel_eval(lo).J0;
    double z = beta + 1.0 / (8.0 * beta);
    for (int it = 0; it < 100; ++it) {
        const BesselEval b = bessel_eval(z);
        if ((b.J0 < 0) == (flo < 0)) {
            lo = z;
            flo = b.J0;
        } else {
            hi = z;
        }
        double zn = z + b.J0 / b.J1;  // J0' = -J1
        if (!(zn > lo && zn < hi)) zn = 0.5 * (lo + hi);
        if (std::abs(zn - z) < 1e-15 * z) {
            z = zn;
            break;
        }
        z = zn;
    }
    return z;
}

}  // namespace zaremba

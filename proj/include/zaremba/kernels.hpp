#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "geometry.hpp"
#include "specialfun.hpp"

namespace zaremba {

using cplx = std::complex<double>;

// total = log_factor * log(r) + smooth
struct KernelSplit {
    cplx log_factor;
    cplx smooth;
    cplx total;
    double r = 0.0;
};

inline constexpr double split_series_max = 1e-2;

namespace detail {

// J0, J1 and the log-free parts Y0 - (2/pi) J0 log r, Y1 - (2/pi) J1 log r at z = k r.
struct RegularizedBessel {
    double J0, J1, Y0reg, Y1reg, Y0, Y1;
};

inline RegularizedBessel bessel_regularized(double k, double r) {
    RegularizedBessel out{};
    const double z = k * r;
    const double logr = std::log(r);
    if (z >= split_series_max) {
        const BesselEval b = bessel_eval(z);
        out.J0 = b.J0;
        out.J1 = b.J1;
        out.Y0 = b.Y0;
        out.Y1 = b.Y1;
        out.Y0reg = b.Y0 - (2.0 / std::numbers::pi) * b.J0 * logr;
        out.Y1reg = b.Y1 - (2.0 / std::numbers::pi) * b.J1 * logr;
        return out;
    }
    const double q = -0.25 * z * z;
    double t0 = 1.0, t1 = 1.0, hm = 0.0;
    double s_j0 = 1.0, s_j1 = 1.0, s_y0 = 0.0, s_y1 = -2.0 * euler_gamma + 1.0;
    for (int m = 1; m < 12; ++m) {
        t0 *= q / (double(m) * m);
        t1 *= q / (double(m) * (m + 1));
        hm += 1.0 / m;
        s_j0 += t0;
        s_j1 += t1;
        s_y0 += hm * t0;
        s_y1 += (-2.0 * euler_gamma + 2.0 * hm + 1.0 / (m + 1)) * t1;
    }
    const double lk = std::log(0.5 * k);
    out.J0 = s_j0;
    out.J1 = 0.5 * z * s_j1;
    out.Y0reg = (2.0 / std::numbers::pi) * ((lk + euler_gamma) * out.J0 - s_y0);
    out.Y1reg = -2.0 / (std::numbers::pi * z) + (2.0 / std::numbers::pi) * lk * out.J1 - (0.5 * z / std::numbers::pi) * s_y1;
    out.Y0 = out.Y0reg + (2.0 / std::numbers::pi) * out.J0 * logr;
    out.Y1 = out.Y1reg + (2.0 / std::numbers::pi) * out.J1 * logr;
    return out;
}

}  // namespace detail

// G_k = (i/4) H0(k r)
inline KernelSplit slp_split_r(double k, double r) {
    if (!(r > 0.0)) throw std::domain_error("slp kernel: coincident points");
    const auto b = detail::bessel_regularized(k, r);
    KernelSplit s;
    s.r = r;
    s.total = cplx(-0.25 * b.Y0, 0.25 * b.J0);
    s.log_factor = -b.J0 / (2.0 * std::numbers::pi);
    s.smooth = cplx(-0.25 * b.Y0reg, 0.25 * b.J0);
    return s;
}

inline cplx slp_kernel(double k, Vec2 x, Vec2 y) {
    const double r = (x - y).norm();
    if (!(r > 0.0)) throw std::domain_error("slp kernel: coincident points");
    const BesselEval b = bessel_eval(k * r);
    return cplx(-0.25 * b.Y0, 0.25 * b.J0);
}

inline KernelSplit slp_kernel_split(double k, Vec2 x, Vec2 y) { return slp_split_r(k, (x - y).norm()); }

// dG_k/dn_x = -(i k / 4) H1(k r) (n_x . d) / r,  d = x - y
inline KernelSplit adlp_split_d(double k, Vec2 d, Vec2 nx) {
    const double r = d.norm();
    if (!(r > 0.0)) throw std::domain_error("adlp kernel: coincident points");
    const auto b = detail::bessel_regularized(k, r);
    const double nd = nx.dot(d) / r;
    KernelSplit s;
    s.r = r;
    s.total = cplx(0.25 * k * b.Y1, -0.25 * k * b.J1) * nd;
    s.log_factor = (k / (2.0 * std::numbers::pi)) * b.J1 * nd;
    s.smooth = cplx(0.25 * k * b.Y1reg, -0.25 * k * b.J1) * nd;
    return s;
}

inline cplx adlp_kernel(double k, Vec2 x, Vec2 nx, Vec2 y) {
    const Vec2 d = x - y;
    const double r = d.norm();
    if (!(r > 0.0)) throw std::domain_error("adlp kernel: coincident points");
    const BesselEval b = bessel_eval(k * r);
    return cplx(0.25 * k * b.Y1, -0.25 * k * b.J1) * (nx.dot(d) / r);
}

inline KernelSplit adlp_kernel_split(double k, Vec2 x, Vec2 nx, Vec2 y) { return adlp_split_d(k, x - y, nx); }

// Limits of the smooth parts as y -> x along the curve.
inline cplx slp_smooth_diagonal(double k) {
    return cplx(-(euler_gamma + std::log(0.5 * k)) / (2.0 * std::numbers::pi), 0.25);
}

inline double adlp_smooth_diagonal(double curvature) { return -curvature / (4.0 * std::numbers::pi); }

}  // namespace zaremba

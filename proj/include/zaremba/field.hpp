#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "assembly.hpp"
#include "fc.hpp"
#include "geometry.hpp"
#include "kernels.hpp"
#include "parallel.hpp"

namespace zaremba {

struct IncidentWave {
    double k = 1.0;
    double alpha = 0.0;

    Vec2 direction() const { return {std::cos(alpha), std::sin(alpha)}; }
};

inline cplx incident_field(const IncidentWave& w, Vec2 x) {
    const double ph = w.k * w.direction().dot(x);
    return {std::cos(ph), std::sin(ph)};
}

inline cplx incident_normal_derivative(const IncidentWave& w, Vec2 x, Vec2 nx) {
    return cplx(0.0, w.k * w.direction().dot(nx)) * incident_field(w, x);
}

// u(x) = G_k(x, z) for a source z on the other side of the boundary.
struct PointSource {
    double k = 1.0;
    Vec2 z;

    cplx value(Vec2 x) const { return slp_kernel(k, x, z); }
    cplx normal_derivative(Vec2 x, Vec2 nx) const { return adlp_kernel(k, x, nx, z); }
};

// Per-segment trigonometric series of the weighted density.
inline std::vector<FCSeries> density_series(const Discretization& D, const Eigen::VectorXcd& mu) {
    std::vector<FCSeries> out;
    for (int q = 0; q < D.num_segments(); ++q) out.push_back(D.segment(q).fc.apply(mu.segment(D.offset(q), D.segment(q).n())));
    return out;
}

// Single-layer potential of a solved density, by the panel rule of the assembly applied to
// the density series. Accurate away from the boundary.
class LayerPotential {
public:
    LayerPotential(const Discretization& D, double k, const Eigen::VectorXcd& mu) : D_(&D), k_(k) {
        if (mu.size() != D.size()) throw std::invalid_argument("LayerPotential: density length mismatch");
        for (int q = 0; q < D.num_segments(); ++q) {
            const SegmentDisc& sq = D.segment(q);
            Eigen::VectorXcd v = sq.E.cast<cplx>() * mu.segment(D.offset(q), sq.n());
            for (int p = 0; p < sq.m(); ++p) v(p) *= sq.qw[p];
            weighted_.push_back(std::move(v));
        }
    }

    cplx operator()(Vec2 x) const {
        cplx u = 0.0;
        for (int q = 0; q < D_->num_segments(); ++q) {
            const SegmentDisc& sq = D_->segment(q);
            const Eigen::VectorXcd& v = weighted_[q];
            for (int p = 0; p < sq.m(); ++p) {
                const double r = (x - sq.qy[p]).norm();
                if (!(r > 0.0)) return {std::numeric_limits<double>::quiet_NaN(), std::numeric_limits<double>::quiet_NaN()};
                const BesselEval b = bessel_eval(k_ * r);
                u += cplx(-0.25 * b.Y0, 0.25 * b.J0) * v(p);
            }
        }
        return u;
    }

private:
    const Discretization* D_;
    double k_;
    std::vector<Eigen::VectorXcd> weighted_;
};

inline cplx eval_potential(const Discretization& D, double k, const Eigen::VectorXcd& mu, Vec2 x) {
    return LayerPotential(D, k, mu)(x);
}

inline double default_near_threshold(const Discretization& D) { return 2.0 * D.max_spacing(); }

enum class Region { Exterior, Interior };

// Grid mask codes.
inline constexpr int mask_ok = 0;
inline constexpr int mask_outside = 1;
inline constexpr int mask_near = 2;

struct GridSpec {
    double x_min = -3.0, x_max = 3.0, y_min = -3.0, y_max = 3.0;
    int nx = 200, ny = 200;

    void validate() const {
        if (nx < 1 || ny < 1) throw config_error("grid resolution must be positive");
        if (!(x_max > x_min) || !(y_max > y_min)) throw config_error("grid box is empty");
    }
    Vec2 point(int i, int j) const {
        const double x = nx == 1 ? 0.5 * (x_min + x_max) : x_min + (x_max - x_min) * i / double(nx - 1);
        const double y = ny == 1 ? 0.5 * (y_min + y_max) : y_min + (y_max - y_min) * j / double(ny - 1);
        return {x, y};
    }
};

// Row-major in y then x: index = j * nx + i.
struct FieldGrid {
    GridSpec spec;
    std::vector<Vec2> points;
    std::vector<int> mask;
    std::vector<cplx> values;  // NaN where mask != 0
};

inline std::vector<int> classify_points(const Curve& curve, const std::vector<Vec2>& pts, Region region,
                                        double near_threshold, int threads = 1) {
    const CurveSampler cs(curve);
    std::vector<int> mask(pts.size());
    parallel_for(int(pts.size()), threads, 256, [&](int begin, int end) {
        for (int i = begin; i < end; ++i) {
            const double d = cs.distance(pts[i]);
            if (d < near_threshold) {
                mask[i] = mask_near;
                continue;
            }
            const bool in = cs.winding_number(pts[i]) > 0.5;
            mask[i] = (in == (region == Region::Interior)) ? mask_ok : mask_outside;
        }
    });
    return mask;
}

// Evaluate value(x) at every unmasked grid point.
template <class F>
FieldGrid eval_grid(const Curve& curve, const GridSpec& spec, Region region, double near_threshold, F&& value,
                    int threads = 1) {
    spec.validate();
    FieldGrid g;
    g.spec = spec;
    for (int j = 0; j < spec.ny; ++j)
        for (int i = 0; i < spec.nx; ++i) g.points.push_back(spec.point(i, j));
    g.mask = classify_points(curve, g.points, region, near_threshold, threads);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    g.values.assign(g.points.size(), cplx(nan, nan));
    parallel_for(int(g.points.size()), threads, 64, [&](int begin, int end) {
        for (int i = begin; i < end; ++i)
            if (g.mask[i] == mask_ok) g.values[i] = value(g.points[i]);
    });
    return g;
}

// Scattering data: f = -u_inc on Dirichlet nodes, g = -du_inc/dn on Neumann nodes, so that
// the total field u_inc + u_s satisfies homogeneous conditions.
inline Eigen::VectorXcd scattering_rhs(const Discretization& D, const IncidentWave& w) {
    return assemble_rhs(
        D, [&](Vec2 x) { return -incident_field(w, x); },
        [&](Vec2 x, Vec2 n) { return -incident_normal_derivative(w, x, n); });
}

inline Eigen::VectorXcd point_source_rhs(const Discretization& D, const PointSource& src) {
    return assemble_rhs(
        D, [&](Vec2 x) { return src.value(x); }, [&](Vec2 x, Vec2 n) { return src.normal_derivative(x, n); });
}

// Off-node checkpoints on the curve, equally spaced in s on each segment of the given kind,
// `count` in total (split as evenly as possible).
inline std::vector<CurvePoint> checkpoints(const Discretization& D, BoundaryKind kind, int count) {
    std::vector<int> segs;
    for (int q = 0; q < D.num_segments(); ++q)
        if (D.segment(q).kind() == kind) segs.push_back(q);
    std::vector<CurvePoint> out;
    if (segs.empty() || count <= 0) return out;
    for (std::size_t iq = 0; iq < segs.size(); ++iq) {
        const int m = count / int(segs.size()) + (int(iq) < count % int(segs.size()) ? 1 : 0);
        const int n = D.segment(segs[iq]).n();
        for (int j = 0; j < m; ++j) {
            // the golden-ratio offset keeps checkpoints away from nodes (i + 1/2) pi / n
            double s = (j + 0.381966011250105) * std::numbers::pi / m;
            const double frac = s * n / std::numbers::pi - std::floor(s * n / std::numbers::pi);
            if (std::abs(frac - 0.5) < 0.05) s += 0.25 * std::numbers::pi / n;
            out.push_back(curve_point(D, segs[iq], s));
        }
    }
    return out;
}

// Boundary traces of the single-layer potential at on-curve points: the value (Dirichlet
// checkpoints) and the normal derivative from the side selected by gamma (Neumann checkpoints).
inline Eigen::VectorXcd boundary_values(const Discretization& D, double k, const Eigen::VectorXcd& mu,
                                        const std::vector<CurvePoint>& pts, int threads = 1) {
    const std::vector<Op> ops(pts.size(), Op::SLP);
    return boundary_rows(D, k, pts, ops, threads) * mu;
}

inline Eigen::VectorXcd boundary_normal_derivatives(const Discretization& D, double k, int gamma, const Eigen::VectorXcd& mu,
                                                    const std::vector<CurvePoint>& pts, int threads = 1) {
    const std::vector<Op> ops(pts.size(), Op::ADLP);
    Eigen::VectorXcd v = boundary_rows(D, k, pts, ops, threads) * mu;
    const auto series = density_series(D, mu);
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const SegmentDisc& sq = D.segment(pts[i].seg);
        const double wt = pts[i].speed * sq.h() * std::sin(pts[i].sigma);
        v(Eigen::Index(i)) += 0.5 * gamma * fc_eval(series[pts[i].seg], pts[i].sigma) / wt;
    }
    return v;
}

}  // namespace zaremba

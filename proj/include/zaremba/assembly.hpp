#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "fc.hpp"
#include "geometry.hpp"
#include "kernels.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"

namespace zaremba {

enum class Op { SLP, ADLP };

struct DiscretizationOptions {
    int n = 128;                 // nodes per segment
    FCOptions fc;
    double k_design = 10.0;      // largest wavenumber the panels must resolve
    double panel_factor = 1.0;   // multiplies the panel count
};

// One boundary segment: Nystrom mesh, FC operator, Gauss-Legendre panels in s and
// the matrix E mapping nodal mu to mu at the panel nodes.
struct SegmentDisc {
    SegmentMesh mesh;
    FCOperator fc;
    int npan = 0;
    double hl = 0.0;  // panel half-width in s
    std::vector<double> qs, qw, qt;
    std::vector<Vec2> qy;
    Eigen::MatrixXd E;

    double a() const { return mesh.segment.t_start; }
    double b() const { return mesh.segment.t_end; }
    double c() const { return mesh.c; }
    double h() const { return mesh.h; }
    int n() const { return mesh.n; }
    int m() const { return int(qs.size()); }
    BoundaryKind kind() const { return mesh.segment.kind; }
};

class Discretization {
public:
    Discretization() = default;

    Discretization(Curve curve, Partition partition, const DiscretizationOptions& opt)
        : curve_(std::move(curve)), partition_(std::move(partition)), opt_(opt) {
        curve_.validate();
        if (!(opt.k_design > 0.0)) throw config_error("k_design must be positive");
        const PanelRule& pr = PanelRule::instance();
        int off = 0;
        for (std::size_t q = 0; q < partition_.size(); ++q) {
            SegmentDisc sd;
            sd.mesh = make_mesh(curve_, partition_[q], int(q), opt.n);
            sd.fc = FCOperator(opt.n, opt.fc);
            double vmax = 0.0;
            for (int i = 0; i <= 512; ++i) {
                const double tv = sd.mesh.segment.t_start + (sd.mesh.segment.t_end - sd.mesh.segment.t_start) * i / 512.0;
                vmax = std::max(vmax, curve_.d1(tv).norm());
            }
            const double omega = opt.n + opt.k_design * vmax * sd.mesh.h;
            sd.npan = int(std::ceil(opt.panel_factor * omega * std::numbers::pi / 4.0)) + 2;
            sd.hl = 0.5 * std::numbers::pi / sd.npan;
            for (int p = 0; p < sd.npan; ++p) {
                const double mid = (2 * p + 1) * sd.hl;
                for (int i = 0; i < panel_order; ++i) {
                    const double sv = mid + sd.hl * pr.x(i);
                    const double tv = sd.mesh.c + sd.mesh.h * std::cos(sv);
                    sd.qs.push_back(sv);
                    sd.qw.push_back(sd.hl * pr.w(i));
                    sd.qt.push_back(tv);
                    sd.qy.push_back(curve_.position(tv));
                }
            }
            sd.E = sd.fc.eval_matrix(Eigen::Map<const Eigen::VectorXd>(sd.qs.data(), Eigen::Index(sd.qs.size())));
            offset_.push_back(off);
            off += opt.n;
            segs_.push_back(std::move(sd));
        }
        N_ = off;
    }

    const Curve& curve() const { return curve_; }
    const Partition& partition() const { return partition_; }
    const DiscretizationOptions& options() const { return opt_; }
    const std::vector<SegmentDisc>& segments() const { return segs_; }
    const SegmentDisc& segment(int q) const { return segs_[q]; }
    int num_segments() const { return int(segs_.size()); }
    int offset(int q) const { return offset_[q]; }
    int size() const { return N_; }

    // Largest node spacing in arc length over all meshes.
    double max_spacing() const {
        double m = 0.0;
        for (const auto& sd : segs_)
            for (int i = 0; i + 1 < sd.n(); ++i) m = std::max(m, (sd.mesh.x[i + 1] - sd.mesh.x[i]).norm());
        return m;
    }

private:
    Curve curve_;
    Partition partition_;
    DiscretizationOptions opt_;
    std::vector<SegmentDisc> segs_;
    std::vector<int> offset_;
    int N_ = 0;
};

// A point on segment `seg` at cosine variable sigma.
struct CurvePoint {
    int seg = 0;
    double sigma = 0.0;
    double t = 0.0;
    Vec2 x;
    Vec2 normal;
    double speed = 0.0;
    double curvature = 0.0;
};

inline CurvePoint curve_point(const Discretization& D, int seg, double sigma) {
    const SegmentDisc& sd = D.segment(seg);
    CurvePoint p;
    p.seg = seg;
    p.sigma = sigma;
    p.t = sd.c() + sd.h() * std::cos(sigma);
    const CurveFrame f = D.curve().frame(p.t);
    p.x = f.position;
    p.normal = f.normal;
    p.speed = f.speed;
    p.curvature = f.curvature;
    return p;
}

inline CurvePoint node_point(const Discretization& D, int seg, int i) {
    const SegmentMesh& m = D.segment(seg).mesh;
    CurvePoint p;
    p.seg = seg;
    p.sigma = m.s[i];
    p.t = m.t[i];
    p.x = m.x[i];
    p.normal = m.normal[i];
    p.speed = m.speed[i];
    p.curvature = m.curvature[i];
    return p;
}

namespace detail {

inline double log_sinc(double u) {
    if (std::abs(u) < 1e-4) return -u * u / 6.0;
    return std::log(std::abs(std::sin(u) / u));
}

// Offset of (target parameter + shift) from the endpoint `e` of another segment, computed
// through the target's own endpoint offsets so that shared junctions cancel exactly.
inline double offset_from(const SegmentDisc& sp, const CurvePoint& tg, double shift, double e) {
    const double from_a = 2.0 * sp.h() * std::pow(std::cos(0.5 * tg.sigma), 2);   // t - a_p
    const double from_b = -2.0 * sp.h() * std::pow(std::sin(0.5 * tg.sigma), 2);  // t - b_p
    const double ca = sp.a() + shift - e, cb = sp.b() + shift - e;
    return std::abs(ca) <= std::abs(cb) ? from_a + ca : from_b + cb;
}

struct SingularPoint {
    cplx z;
    bool coincident = false;  // z is the target's own sigma on its own segment
};

inline std::vector<SingularPoint> singular_points(const SegmentDisc& sq, const SegmentDisc& sp, const CurvePoint& tg,
                                                  bool same) {
    std::vector<SingularPoint> Z;
    const double h = sq.h();
    for (double shift : {-two_pi, 0.0, two_pi}) {
        if (same && shift == 0.0) {
            Z.push_back({cplx(tg.sigma, 0.0), true});
            Z.push_back({cplx(-tg.sigma, 0.0), false});
            Z.push_back({cplx(two_pi - tg.sigma, 0.0), false});
            continue;
        }
        const double db = offset_from(sp, tg, shift, sq.b());  // t* - b_q
        const double da = offset_from(sp, tg, shift, sq.a());  // t* - a_q
        if (db > h || da < -h) continue;
        cplx sig;
        if (db > 0.0) {
            const double d = db / h;
            sig = cplx(0.0, std::log1p(d + std::sqrt(d * (2.0 + d))));
        } else if (da < 0.0) {
            const double d = -da / h;
            sig = cplx(std::numbers::pi, std::log1p(d + std::sqrt(d * (2.0 + d))));
        } else if (-db <= da) {
            sig = cplx(2.0 * std::asin(std::sqrt(std::min(1.0, -db / (2.0 * h)))), 0.0);
        } else {
            sig = cplx(std::numbers::pi - 2.0 * std::asin(std::sqrt(std::min(1.0, da / (2.0 * h)))), 0.0);
        }
        Z.push_back({sig, false});
        Z.push_back({-sig, false});
        Z.push_back({two_pi - sig, false});
    }
    return Z;
}

}  // namespace detail

// Quadrature weights w_p (length m_q) such that sum_p w_p mu_q(s_p) approximates the
// operator applied to the density of segment q at the on-curve target.
inline void source_weights(const Discretization& D, int q, double k, const CurvePoint& tg, Op op, cplx* out) {
    const SegmentDisc& sq = D.segment(q);
    const SegmentDisc& sp = D.segment(tg.seg);
    const Curve& curve = D.curve();
    const bool same = (q == tg.seg);
    const int M = sq.m();

    // displacement d = x - y(s) for every panel node, computed relative to a shared
    // junction when the segments touch
    std::vector<Vec2> d(M);
    if (same) {
        const bool closed = std::abs(sq.b() - sq.a() - two_pi) < 1e-12;
        for (int p = 0; p < M; ++p) {
            const double s = sq.qs[p];
            double dt = -2.0 * sq.h() * std::sin(0.5 * (s + tg.sigma)) * std::sin(0.5 * (s - tg.sigma));
            if (closed && dt > std::numbers::pi)  // through the point t = b = a + 2 pi
                dt = -2.0 * sq.h() * std::pow(std::sin(0.5 * s), 2) - 2.0 * sq.h() * std::pow(std::cos(0.5 * tg.sigma), 2);
            else if (closed && dt < -std::numbers::pi)
                dt = 2.0 * sq.h() * std::pow(std::cos(0.5 * s), 2) + 2.0 * sq.h() * std::pow(std::sin(0.5 * tg.sigma), 2);
            d[p] = -curve.chord(tg.t, dt);
        }
    } else {
        // pick the shared junction nearest the target, if any
        double best = 1e300;
        int qend = -1;
        double shift_used = 0.0;
        for (double shift : {-two_pi, 0.0, two_pi}) {
            for (int e = 0; e < 2; ++e) {
                const double eq = e == 0 ? sq.b() : sq.a();
                for (double ep : {sp.a(), sp.b()}) {
                    if (std::abs(ep + shift - eq) < 1e-12) {
                        const double dist = std::abs(detail::offset_from(sp, tg, shift, eq));
                        if (dist < best) {
                            best = dist;
                            qend = e;
                            shift_used = shift;
                        }
                    }
                }
            }
        }
        if (qend < 0) {
            for (int p = 0; p < M; ++p) d[p] = tg.x - sq.qy[p];
        } else {
            const double eq = qend == 0 ? sq.b() : sq.a();
            const double tx_rel = detail::offset_from(sp, tg, shift_used, eq);  // t_x + shift - eq
            for (int p = 0; p < M; ++p) {
                const double s = sq.qs[p];
                const double ty_rel = qend == 0 ? -2.0 * sq.h() * std::pow(std::sin(0.5 * s), 2)
                                                : 2.0 * sq.h() * std::pow(std::cos(0.5 * s), 2);
                d[p] = -curve.chord(tg.t, ty_rel - tx_rel);
            }
        }
    }

    auto kernel = [&](int p) -> KernelSplit {
        if (op == Op::SLP) return slp_split_r(k, d[p].norm());
        return adlp_split_d(k, d[p], tg.normal);
    };

    for (int p = 0; p < M; ++p) {
        const double r = d[p].norm();
        if (r > 0.0) {
            if (op == Op::SLP) {
                const BesselEval b = bessel_eval(k * r);
                out[p] = sq.qw[p] * cplx(-0.25 * b.Y0, 0.25 * b.J0);
            } else {
                const BesselEval b = bessel_eval(k * r);
                out[p] = sq.qw[p] * cplx(0.25 * k * b.Y1, -0.25 * k * b.J1) * (tg.normal.dot(d[p]) / r);
            }
        } else {
            out[p] = 0.0;  // replaced below: coincident nodes always sit on a corrected panel
        }
    }

    const auto Z = detail::singular_points(sq, sp, tg, same);
    const PanelRule& pr = PanelRule::instance();
    const double hl = sq.hl;
    std::vector<std::vector<int>> near(sq.npan);
    for (int iz = 0; iz < int(Z.size()); ++iz) {
        const cplx z = Z[iz].z;
        if (std::abs(z.imag()) >= 2.0 * hl) continue;
        const int lo = std::max(0, int(std::floor(z.real() / (2.0 * hl))) - 2);
        const int hi = std::min(sq.npan - 1, int(std::floor(z.real() / (2.0 * hl))) + 2);
        for (int ip = lo; ip <= hi; ++ip) {
            const double pa = 2.0 * hl * ip, pb = pa + 2.0 * hl;
            if (z.real() > pa - 2.0 * hl && z.real() < pb + 2.0 * hl) near[ip].push_back(iz);
        }
    }

    for (int ip = 0; ip < sq.npan; ++ip) {
        if (near[ip].empty()) continue;
        const double mid = (2 * ip + 1) * hl;
        bool has_coincident = false;
        for (int iz : near[ip]) has_coincident |= Z[iz].coincident;
        std::array<cplx, panel_order> Lf{};
        for (int i = 0; i < panel_order; ++i) {
            const int p = ip * panel_order + i;
            const double s = sq.qs[p];
            cplx R;
            if (has_coincident) {
                // R = smooth + Lf (log r - log|s - sigma| - other logs)
                const double u = 0.5 * (s - tg.sigma);
                const double dt = -2.0 * sq.h() * std::sin(0.5 * (s + tg.sigma)) * std::sin(u);
                const Vec2 slope = curve.chord_slope(tg.t, dt);
                const double lr = std::log(slope.norm()) + std::log(sq.h() * std::abs(std::sin(0.5 * (s + tg.sigma)))) +
                                  detail::log_sinc(u);
                double others = 0.0;
                for (int iz : near[ip])
                    if (!Z[iz].coincident) others += std::log(std::abs(s - Z[iz].z));
                cplx smooth;
                if (d[p].norm() > 0.0) {
                    const KernelSplit ks = kernel(p);
                    smooth = ks.smooth;
                    Lf[i] = ks.log_factor;
                } else if (op == Op::SLP) {
                    smooth = slp_smooth_diagonal(k);
                    Lf[i] = -1.0 / (2.0 * std::numbers::pi);
                } else {
                    smooth = adlp_smooth_diagonal(tg.curvature);
                    Lf[i] = 0.0;
                }
                R = smooth + Lf[i] * (lr - others);
            } else {
                const KernelSplit ks = kernel(p);
                double logs = 0.0;
                for (int iz : near[ip]) logs += std::log(std::abs(s - Z[iz].z));
                R = ks.total - ks.log_factor * logs;
                Lf[i] = ks.log_factor;
            }
            out[p] = sq.qw[p] * R;
        }
        // log terms by product integration
        const double lh = std::log(hl);
        for (int iz : near[ip]) {
            const auto W = pr.log_weights((Z[iz].z - mid) / hl);
            for (int i = 0; i < panel_order; ++i) out[ip * panel_order + i] += Lf[i] * (hl * (W[i] + lh * pr.w(i)));
        }
    }
}

// Rows of the boundary operator (op per target) acting on the nodal mu vector, without the
// Neumann jump term.
inline Eigen::MatrixXcd boundary_rows(const Discretization& D, double k, const std::vector<CurvePoint>& targets,
                                      const std::vector<Op>& ops, int threads = 1) {
    const int T = int(targets.size());
    Eigen::MatrixXcd A(T, D.size());
    const int chunk = 16;
    parallel_for(T, threads, chunk, [&](int begin, int end) {
        for (int q = 0; q < D.num_segments(); ++q) {
            const SegmentDisc& sq = D.segment(q);
            Eigen::MatrixXcd WK(end - begin, sq.m());
            std::vector<cplx> buf(sq.m());
            for (int r = begin; r < end; ++r) {
                source_weights(D, q, k, targets[r], ops[r], buf.data());
                for (int p = 0; p < sq.m(); ++p) WK(r - begin, p) = buf[p];
            }
            const Eigen::MatrixXd re = WK.real() * sq.E;
            const Eigen::MatrixXd im = WK.imag() * sq.E;
            A.block(begin, D.offset(q), end - begin, sq.n()).real() = re;
            A.block(begin, D.offset(q), end - begin, sq.n()).imag() = im;
        }
    });
    return A;
}

struct ZarembaSystem {
    Eigen::MatrixXcd A;
    double k = 0.0;
    int gamma = -1;
    const Discretization* disc = nullptr;
};

inline std::vector<CurvePoint> node_targets(const Discretization& D, std::vector<Op>* ops = nullptr) {
    std::vector<CurvePoint> t;
    if (ops) ops->clear();
    for (int q = 0; q < D.num_segments(); ++q)
        for (int i = 0; i < D.segment(q).n(); ++i) {
            t.push_back(node_point(D, q, i));
            if (ops) ops->push_back(D.segment(q).kind() == BoundaryKind::Dirichlet ? Op::SLP : Op::ADLP);
        }
    return t;
}

inline ZarembaSystem assemble_system(const Discretization& D, double k, int gamma, int threads = 1) {
    if (!(k > 0.0)) throw config_error("wavenumber must be positive");
    if (gamma != 1 && gamma != -1) throw config_error("gamma must be +1 or -1");
    std::vector<Op> ops;
    const auto targets = node_targets(D, &ops);
    ZarembaSystem S;
    S.A = boundary_rows(D, k, targets, ops, threads);
    S.k = k;
    S.gamma = gamma;
    S.disc = &D;
    for (int q = 0; q < D.num_segments(); ++q) {
        const SegmentDisc& sq = D.segment(q);
        if (sq.kind() != BoundaryKind::Neumann) continue;
        for (int i = 0; i < sq.n(); ++i) {
            const int r = D.offset(q) + i;
            S.A(r, r) += 0.5 * gamma / sq.mesh.wt[i];
        }
    }
    return S;
}

// Dirichlet nodes get f(x_i), Neumann nodes get g(x_i, n_i).
template <class F, class G>
Eigen::VectorXcd assemble_rhs(const Discretization& D, F&& f, G&& g) {
    Eigen::VectorXcd b(D.size());
    for (int q = 0; q < D.num_segments(); ++q) {
        const SegmentDisc& sq = D.segment(q);
        for (int i = 0; i < sq.n(); ++i) {
            const int r = D.offset(q) + i;
            b(r) = sq.kind() == BoundaryKind::Dirichlet ? cplx(f(sq.mesh.x[i])) : cplx(g(sq.mesh.x[i], sq.mesh.normal[i]));
        }
    }
    return b;
}

}  // namespace zaremba

#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace zaremba {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct Vec2 {
    double x = 0.0, y = 0.0;
    Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double a) const { return {a * x, a * y}; }
    Vec2 operator-() const { return {-x, -y}; }
    double dot(Vec2 o) const { return x * o.x + y * o.y; }
    double cross(Vec2 o) const { return x * o.y - y * o.x; }
    double norm() const { return std::hypot(x, y); }
};

class geometry_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CurveFrame {
    Vec2 position;
    Vec2 normal;  // unit, outward from the enclosed region
    double speed = 0.0;
    double curvature = 0.0;
};

// Closed curve with trigonometric-polynomial coordinates:
//   x_c(t) = sum_j a_c[j] cos(j t) + b_c[j] sin(j t),  c = 1, 2.
class Curve {
public:
    Curve() = default;
    Curve(std::vector<double> a1, std::vector<double> b1, std::vector<double> a2, std::vector<double> b2,
          std::string name = "trig")
        : a1_(std::move(a1)), b1_(std::move(b1)), a2_(std::move(a2)), b2_(std::move(b2)), name_(std::move(name)) {
        const std::size_t m = std::max({a1_.size(), b1_.size(), a2_.size(), b2_.size()});
        if (m == 0) throw geometry_error("curve needs at least one coefficient");
        a1_.resize(m, 0.0);
        b1_.resize(m, 0.0);
        a2_.resize(m, 0.0);
        b2_.resize(m, 0.0);
    }

    const std::string& name() const { return name_; }
    int degree() const { return int(a1_.size()) - 1; }
    const std::vector<double>& a1() const { return a1_; }
    const std::vector<double>& b1() const { return b1_; }
    const std::vector<double>& a2() const { return a2_; }
    const std::vector<double>& b2() const { return b2_; }

    Vec2 position(double t) const { return eval(t, 0); }
    Vec2 d1(double t) const { return eval(t, 1); }
    Vec2 d2(double t) const { return eval(t, 2); }

    // x(t0 + dt) - x(t0) without cancellation for small dt.
    Vec2 chord(double t0, double dt) const {
        Vec2 v;
        const double tm = t0 + 0.5 * dt;
        for (std::size_t j = 1; j < a1_.size(); ++j) {
            const double hs = std::sin(0.5 * double(j) * dt);
            const double sm = std::sin(double(j) * tm), cm = std::cos(double(j) * tm);
            v.x += 2.0 * hs * (-sm * a1_[j] + cm * b1_[j]);
            v.y += 2.0 * hs * (-sm * a2_[j] + cm * b2_[j]);
        }
        return v;
    }

    // chord(t0, dt) / dt, continuous through dt = 0.
    Vec2 chord_slope(double t0, double dt) const {
        Vec2 v;
        const double tm = t0 + 0.5 * dt;
        for (std::size_t j = 1; j < a1_.size(); ++j) {
            const double u = 0.5 * double(j) * dt;
            const double sc = std::abs(u) < 1e-8 ? 1.0 - u * u / 6.0 : std::sin(u) / u;
            const double f = double(j) * sc;
            const double sm = std::sin(double(j) * tm), cm = std::cos(double(j) * tm);
            v.x += f * (-sm * a1_[j] + cm * b1_[j]);
            v.y += f * (-sm * a2_[j] + cm * b2_[j]);
        }
        return v;
    }

    CurveFrame frame(double t) const {
        const Vec2 p = position(t), v = d1(t), a = d2(t);
        const double sp = v.norm();
        if (sp < 1e-12) throw geometry_error("degenerate parametrization: |x'(t)| < 1e-12");
        CurveFrame f;
        f.position = p;
        f.speed = sp;
        f.normal = Vec2{v.y / sp, -v.x / sp};
        f.curvature = v.cross(a) / (sp * sp * sp);
        return f;
    }

    double max_speed(int samples = 4096) const {
        double m = 0.0;
        for (int i = 0; i < samples; ++i) m = std::max(m, d1(two_pi * i / samples).norm());
        return m;
    }

    double min_speed(int samples = 4096) const {
        double m = 1e300;
        for (int i = 0; i < samples; ++i) m = std::min(m, d1(two_pi * i / samples).norm());
        return m;
    }

    double signed_area(int samples = 4096) const {
        double a = 0.0;
        for (int i = 0; i < samples; ++i) {
            const Vec2 p = position(two_pi * i / samples), q = position(two_pi * (i + 1) / samples);
            a += p.cross(q);
        }
        return 0.5 * a;
    }

    // Regularity and orientation checks; throws geometry_error.
    void validate() const {
        if (min_speed() < 1e-12) throw geometry_error("curve is not regular (|x'| vanishes)");
        if (signed_area() <= 0.0) throw geometry_error("curve must be counterclockwise (positive signed area)");
    }

private:
    Vec2 eval(double t, int der) const {
        Vec2 v;
        for (std::size_t j = 0; j < a1_.size(); ++j) {
            const double jd = double(j);
            const double c = std::cos(jd * t), s = std::sin(jd * t);
            double fc, fs;  // coefficients multiplying a and b
            if (der == 0) {
                fc = c;
                fs = s;
            } else if (der == 1) {
                fc = -jd * s;
                fs = jd * c;
            } else {
                fc = -jd * jd * c;
                fs = -jd * jd * s;
            }
            v.x += fc * a1_[j] + fs * b1_[j];
            v.y += fc * a2_[j] + fs * b2_[j];
        }
        return v;
    }

    std::vector<double> a1_, b1_, a2_, b2_;
    std::string name_;
};

inline Curve make_kite() { return Curve({-0.65, 1.0, 0.65}, {0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 1.5, 0.0}, "kite"); }

inline Curve make_disc(double radius = 1.0) {
    if (!(radius > 0.0)) throw geometry_error("disc radius must be positive");
    return Curve({0.0, radius}, {0.0, 0.0}, {0.0, 0.0}, {0.0, radius}, "disc");
}

inline Curve make_ellipse(double a, double b) {
    if (!(a > 0.0 && b > 0.0)) throw geometry_error("ellipse semi-axes must be positive");
    return Curve({0.0, a}, {0.0, 0.0}, {0.0, 0.0}, {0.0, b}, "ellipse");
}

// Nearest curve parameter and distance, from a dense sampling refined by Newton steps.
struct CurveProjection {
    double t = 0.0;
    double distance = 0.0;
};

class CurveSampler {
public:
    explicit CurveSampler(const Curve& c, int samples = 4096) : curve_(&c) {
        pts_.resize(samples);
        for (int i = 0; i < samples; ++i) pts_[i] = c.position(two_pi * i / samples);
    }

    const std::vector<Vec2>& points() const { return pts_; }

    double winding_number(Vec2 x) const {
        double w = 0.0;
        const std::size_t m = pts_.size();
        for (std::size_t i = 0; i < m; ++i) {
            const Vec2 p = pts_[i] - x, q = pts_[(i + 1) % m] - x;
            w += std::atan2(p.cross(q), p.dot(q));
        }
        return w / two_pi;
    }

    CurveProjection project(Vec2 x) const {
        const std::size_t m = pts_.size();
        std::size_t best = 0;
        double bd = 1e300;
        for (std::size_t i = 0; i < m; ++i) {
            const Vec2 d = pts_[i] - x;
            const double dd = d.dot(d);
            if (dd < bd) {
                bd = dd;
                best = i;
            }
        }
        const double dt = two_pi / double(m);
        double t = dt * double(best);
        for (int it = 0; it < 30; ++it) {
            const Vec2 d = curve_->position(t) - x, v = curve_->d1(t), a = curve_->d2(t);
            const double g = d.dot(v), hss = v.dot(v) + d.dot(a);
            double step = hss > 0.0 ? g / hss : 0.0;
            step = std::clamp(step, -dt, dt);
            t -= step;
            if (std::abs(step) < 1e-15) break;
        }
        CurveProjection pr;
        pr.t = t;
        pr.distance = std::min((curve_->position(t) - x).norm(), std::sqrt(bd));
        return pr;
    }

    double distance(Vec2 x) const { return project(x).distance; }

    bool inside(Vec2 x) const {
        if (distance(x) < 1e-12) throw geometry_error("point_in_domain: point lies on the curve");
        return winding_number(x) > 0.5;
    }

private:
    const Curve* curve_;
    std::vector<Vec2> pts_;
};

inline bool point_in_domain(const Curve& c, Vec2 x) { return CurveSampler(c).inside(x); }

enum class BoundaryKind { Dirichlet, Neumann };

inline char kind_letter(BoundaryKind k) { return k == BoundaryKind::Dirichlet ? 'D' : 'N'; }

struct Segment {
    double t_start = 0.0;
    double t_end = 0.0;
    BoundaryKind kind = BoundaryKind::Dirichlet;
};

class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<Segment> segs) : segs_(std::move(segs)) { validate(); }

    const std::vector<Segment>& segments() const { return segs_; }
    std::size_t size() const { return segs_.size(); }
    const Segment& operator[](std::size_t i) const { return segs_[i]; }
    bool validation_mode() const { return segs_.size() == 1; }

    std::vector<double> junctions() const {
        std::vector<double> j;
        if (segs_.size() > 1)
            for (const auto& s : segs_) j.push_back(s.t_start);
        return j;
    }

    double total_length() const {
        double l = 0.0;
        for (const auto& s : segs_) l += s.t_end - s.t_start;
        return l;
    }

private:
    void validate() const {
        if (segs_.empty()) throw geometry_error("partition is empty");
        for (const auto& s : segs_)
            if (!(s.t_end > s.t_start)) throw geometry_error("partition segment has non-positive length");
        const double tol = 1e-12;
        for (std::size_t i = 0; i + 1 < segs_.size(); ++i)
            if (std::abs(segs_[i].t_end - segs_[i + 1].t_start) > tol)
                throw geometry_error("partition segments are not contiguous");
        if (std::abs(segs_.back().t_end - segs_.front().t_start - two_pi) > tol)
            throw geometry_error("partition does not cover one period");
        if (segs_.size() == 1) {
            if (segs_[0].kind != BoundaryKind::Dirichlet)
                throw geometry_error("a single-segment partition must be Dirichlet");
            return;
        }
        if (segs_.size() % 2) throw geometry_error("conditions must alternate (odd number of segments)");
        for (std::size_t i = 0; i < segs_.size(); ++i)
            if (segs_[i].kind == segs_[(i + 1) % segs_.size()].kind)
                throw geometry_error("conditions must alternate between Dirichlet and Neumann");
    }

    std::vector<Segment> segs_;
};

inline Partition kite_default_partition() {
    return Partition({{std::numbers::pi / 2, 3 * std::numbers::pi / 2, BoundaryKind::Neumann},
                      {3 * std::numbers::pi / 2, 5 * std::numbers::pi / 2, BoundaryKind::Dirichlet}});
}

// Neumann on the right half (x1 > 0), Dirichlet on the left half.
inline Partition half_half_partition() {
    return Partition({{-std::numbers::pi / 2, std::numbers::pi / 2, BoundaryKind::Neumann},
                      {std::numbers::pi / 2, 3 * std::numbers::pi / 2, BoundaryKind::Dirichlet}});
}

inline Partition dirichlet_partition() { return Partition({{0.0, two_pi, BoundaryKind::Dirichlet}}); }

// Cosine-graded nodes on one segment: t(s) = c + h cos(s), s_i = (i + 1/2) pi / n.
struct SegmentMesh {
    int index = 0;
    int n = 0;
    Segment segment;
    double c = 0.0, h = 0.0;
    std::vector<double> s, t;
    std::vector<Vec2> x, normal;
    std::vector<double> speed, curvature;
    std::vector<double> w;   // h sin(s_i)
    std::vector<double> wt;  // speed * w, converts psi to mu

    double t_of_s(double sv) const { return c + h * std::cos(sv); }
};

inline SegmentMesh make_mesh(const Curve& curve, const Segment& seg, int index, int n) {
    if (n < 4) throw geometry_error("mesh needs at least 4 nodes");
    SegmentMesh m;
    m.index = index;
    m.n = n;
    m.segment = seg;
    m.c = 0.5 * (seg.t_start + seg.t_end);
    m.h = 0.5 * (seg.t_end - seg.t_start);
    for (int i = 0; i < n; ++i) {
        const double sv = (i + 0.5) * std::numbers::pi / n;
        const double tv = m.c + m.h * std::cos(sv);
        const CurveFrame f = curve.frame(tv);
        m.s.push_back(sv);
        m.t.push_back(tv);
        m.x.push_back(f.position);
        m.normal.push_back(f.normal);
        m.speed.push_back(f.speed);
        m.curvature.push_back(f.curvature);
        m.w.push_back(m.h * std::sin(sv));
        m.wt.push_back(f.speed * m.h * std::sin(sv));
    }
    return m;
}

}  // namespace zaremba

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "zaremba/field.hpp"
#include "zaremba/solve.hpp"

using namespace zaremba;
constexpr double pi = std::numbers::pi;

namespace {

Discretization disc_half_half(int n, double k) {
    DiscretizationOptions o;
    o.n = n;
    o.k_design = k;
    return Discretization(make_disc(), half_half_partition(), o);
}

Eigen::VectorXcd scatter(const Discretization& D, const IncidentWave& w) {
    return solve_direct(assemble_system(D, w.k, -1), scattering_rhs(D, w)).mu;
}

}  // namespace

TEST(Field, IncidentWave) {
    const IncidentWave w{2.0, 0.0};
    EXPECT_EQ(incident_field(w, {0.0, 0.0}), cplx(1.0, 0.0));
    const cplx v = incident_field(w, {pi / 4, 5.0});
    EXPECT_NEAR(v.real(), 0.0, 1e-15);
    EXPECT_NEAR(v.imag(), 1.0, 1e-15);
    const cplx dn = incident_normal_derivative(w, {0.0, 0.0}, {1.0, 0.0});
    EXPECT_NEAR(std::abs(dn - cplx(0.0, 2.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(incident_normal_derivative(w, {0.3, 0.1}, {0.0, 1.0})), 0.0, 1e-15);
    const IncidentWave up{1.0, pi / 2};
    EXPECT_NEAR(std::abs(incident_field(up, {0.0, pi}) + 1.0), 0.0, 1e-15);
}

TEST(Field, ZeroDensityZeroField) {
    const Discretization D = disc_half_half(16, 1.0);
    const LayerPotential P(D, 1.0, Eigen::VectorXcd::Zero(D.size()));
    EXPECT_EQ(P({2.0, 0.5}), cplx(0.0, 0.0));
    EXPECT_THROW(LayerPotential(D, 1.0, Eigen::VectorXcd::Zero(3)), std::invalid_argument);
}

TEST(Field, GridSpec) {
    GridSpec g;
    g.nx = 5;
    g.ny = 3;
    EXPECT_NEAR(g.point(0, 0).x, -3.0, 1e-15);
    EXPECT_NEAR(g.point(4, 2).x, 3.0, 1e-15);
    EXPECT_NEAR(g.point(4, 2).y, 3.0, 1e-15);
    EXPECT_NEAR(g.point(2, 1).y, 0.0, 1e-15);
    g.nx = 1;
    EXPECT_NEAR(g.point(0, 0).x, 0.0, 1e-15);  // a single column sits at the centre
    g.nx = 0;
    EXPECT_THROW(g.validate(), config_error);
    g = {};
    g.x_max = g.x_min;
    EXPECT_THROW(g.validate(), config_error);
}

TEST(Field, Classification) {
    const Curve c = make_disc();
    const std::vector<Vec2> pts{{0.0, 0.0}, {2.0, 0.0}, {1.01, 0.0}, {0.99, 0.0}};
    const auto ext = classify_points(c, pts, Region::Exterior, 0.05);
    // the near band is masked on both sides of the curve
    EXPECT_EQ(ext, (std::vector<int>{mask_outside, mask_ok, mask_near, mask_near}));
    const auto in = classify_points(c, pts, Region::Interior, 0.05);
    EXPECT_EQ(in, (std::vector<int>{mask_ok, mask_outside, mask_near, mask_near}));
    EXPECT_EQ(classify_points(c, {{0.9, 0.0}}, Region::Exterior, 0.05), std::vector<int>{mask_outside});
}

// The half/half disc and the incident direction are both symmetric about the x axis.
TEST(Field, MirrorSymmetry) {
    const IncidentWave w{4.0, 0.0};
    const Discretization D = disc_half_half(64, w.k);
    const LayerPotential P(D, w.k, scatter(D, w));
    for (Vec2 x : {Vec2{1.5, 0.7}, Vec2{-2.0, 1.1}, Vec2{0.2, 2.5}}) {
        const cplx a = P(x), b = P({x.x, -x.y});
        EXPECT_LT(std::abs(a - b), 1e-10 * std::abs(a)) << x.x << " " << x.y;
    }
}

// The scattered field decays like r^(-1/2) along a ray.
TEST(Field, OutgoingDecay) {
    const IncidentWave w{3.0, 0.4};
    const Discretization D = disc_half_half(64, w.k);
    const LayerPotential P(D, w.k, scatter(D, w));
    const Vec2 dir{std::cos(2.0), std::sin(2.0)};
    const double a = std::abs(P(dir * 200.0)) * std::sqrt(200.0);
    const double b = std::abs(P(dir * 400.0)) * std::sqrt(400.0);
    EXPECT_LT(std::abs(a - b) / b, 1e-3);
    // u_s e^{-ikr} sqrt(r) tends to a constant; the leading correction is O(k / r)
    const cplx fa = P(dir * 2000.0) * std::exp(cplx(0.0, -w.k * 2000.0)) * std::sqrt(2000.0);
    const cplx fb = P(dir * 4000.0) * std::exp(cplx(0.0, -w.k * 4000.0)) * std::sqrt(4000.0);
    EXPECT_LT(std::abs(fa - fb) / std::abs(fb), 1e-3);
}

TEST(Field, SelfConvergence) {
    const IncidentWave w{5.0, 0.3};
    const Vec2 x{1.7, -1.2};
    cplx prev = 0.0;
    double last = 0.0;
    std::vector<double> deltas;
    for (int n : {32, 64, 128}) {
        const Discretization D = disc_half_half(n, w.k);
        const cplx u = LayerPotential(D, w.k, scatter(D, w))(x);
        if (n > 32) deltas.push_back(std::abs(u - prev));
        prev = u;
        last = std::abs(u);
    }
    EXPECT_LT(deltas[1], 0.2 * deltas[0]);
    EXPECT_LT(deltas[1], 1e-4 * last);
}

TEST(Field, CheckpointsAreOffNodeAndOnKind) {
    const Discretization D = disc_half_half(32, 1.0);
    for (BoundaryKind kind : {BoundaryKind::Dirichlet, BoundaryKind::Neumann}) {
        const auto pts = checkpoints(D, kind, 11);
        ASSERT_EQ(pts.size(), 11u);
        for (const CurvePoint& p : pts) {
            EXPECT_EQ(D.segment(p.seg).kind(), kind);
            EXPECT_GT(p.sigma, 0.0);
            EXPECT_LT(p.sigma, pi);
            const double u = p.sigma * 32 / pi;
            EXPECT_GT(std::abs(u - std::floor(u) - 0.5), 1e-3);
            EXPECT_NEAR(p.x.norm(), 1.0, 1e-14);
        }
    }
    EXPECT_TRUE(checkpoints(Discretization(make_disc(), dirichlet_partition(), {}), BoundaryKind::Neumann, 5).empty());
}

// Boundary conditions hold at points that are not collocation nodes.
TEST(Field, BoundaryConditionsAtCheckpoints) {
    const IncidentWave w{5.0, 0.3};
    const Discretization D = disc_half_half(128, w.k);
    const Eigen::VectorXcd mu = scatter(D, w);
    const auto cd = checkpoints(D, BoundaryKind::Dirichlet, 40);
    const auto cn = checkpoints(D, BoundaryKind::Neumann, 40);
    const Eigen::VectorXcd ud = boundary_values(D, w.k, mu, cd);
    const Eigen::VectorXcd un = boundary_normal_derivatives(D, w.k, -1, mu, cn);
    double ed = 0.0, en = 0.0;
    for (std::size_t i = 0; i < cd.size(); ++i) ed = std::max(ed, std::abs(ud(i) + incident_field(w, cd[i].x)));
    for (std::size_t i = 0; i < cn.size(); ++i)
        en = std::max(en, std::abs(un(i) + incident_normal_derivative(w, cn[i].x, cn[i].normal)));
    EXPECT_LT(ed, 1e-8);
    EXPECT_LT(en / w.k, 1e-5);
}

TEST(Field, GridIsDeterministicAcrossThreads) {
    const IncidentWave w{2.0, 0.0};
    const Discretization D = disc_half_half(32, w.k);
    const LayerPotential P(D, w.k, scatter(D, w));
    GridSpec g;
    g.nx = g.ny = 17;
    auto f = [&](Vec2 x) { return P(x); };
    const FieldGrid a = eval_grid(D.curve(), g, Region::Exterior, default_near_threshold(D), f, 1);
    const FieldGrid b = eval_grid(D.curve(), g, Region::Exterior, default_near_threshold(D), f, 3);
    ASSERT_EQ(a.values.size(), 289u);
    EXPECT_EQ(a.mask, b.mask);
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        if (a.mask[i] != mask_ok) {
            EXPECT_TRUE(std::isnan(a.values[i].real()));
            continue;
        }
        EXPECT_EQ(a.values[i], b.values[i]);
    }
}

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "zaremba/assembly.hpp"
#include "zaremba/field.hpp"
#include "zaremba/solve.hpp"

using namespace zaremba;
constexpr double pi = std::numbers::pi;

namespace {

cplx hankel(int m, double x) { return {std::cyl_bessel_j(double(m), x), std::cyl_neumann(double(m), x)}; }
double besj(int m, double x) { return std::cyl_bessel_j(double(m), x); }

// Weighted nodal density of psi = exp(i m t).
Eigen::VectorXcd fourier_density(const Discretization& D, int m) {
    Eigen::VectorXcd mu(D.size());
    for (int q = 0; q < D.num_segments(); ++q) {
        const SegmentMesh& me = D.segment(q).mesh;
        for (int i = 0; i < me.n; ++i) mu(D.offset(q) + i) = std::exp(cplx(0.0, m * me.t[i])) * me.wt[i];
    }
    return mu;
}

Discretization disc_half_half(int n, double k) {
    DiscretizationOptions o;
    o.n = n;
    o.k_design = k;
    return Discretization(make_disc(), half_half_partition(), o);
}

}  // namespace

TEST(Assembly, ZeroDensityGivesZero) {
    const Discretization D = disc_half_half(32, 2.0);
    const ZarembaSystem S = assemble_system(D, 2.0, -1);
    EXPECT_EQ((S.A * Eigen::VectorXcd::Zero(D.size())).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Assembly, KiteMatrixFinite) {
    DiscretizationOptions o;
    o.n = 32;
    const Discretization D(make_kite(), kite_default_partition(), o);
    const ZarembaSystem S = assemble_system(D, 10.0, -1);
    EXPECT_EQ(S.A.rows(), 64);
    EXPECT_TRUE(S.A.allFinite());
    EXPECT_GT(sigma_min_ratio(S), 0.0);
}

TEST(Assembly, RejectsBadParameters) {
    const Discretization D = disc_half_half(16, 1.0);
    EXPECT_THROW(assemble_system(D, 0.0, -1), config_error);
    EXPECT_THROW(assemble_system(D, 1.0, 0), config_error);
}

// On the unit circle exp(i m t) is an eigenfunction: the single layer maps it to
// (i pi / 2) J_m(k) H_m(k) exp(i m t) and the Neumann trace from outside (inside) to
// (i pi k / 2) J_m(k) H_m'(k) exp(i m t)  ((i pi k / 2) H_m(k) J_m'(k) exp(i m t)).
TEST(Assembly, CircleSymbols) {
    const double k = 2.0;
    const Discretization D = disc_half_half(64, k);
    for (int gamma : {-1, 1}) {
        const ZarembaSystem S = assemble_system(D, k, gamma);
        for (int m : {0, 1, 3, -2}) {
            const int am = std::abs(m);
            const double sgn = (m < 0 && am % 2) ? -1.0 : 1.0;  // J_{-m} = (-1)^m J_m, same for H
            const cplx Jm = sgn * besj(am, k), Hm = sgn * hankel(am, k);
            const double Jp = sgn * (am ? 0.5 * (besj(am - 1, k) - besj(am + 1, k)) : -besj(1, k));
            const cplx Hp = sgn * (am ? 0.5 * (hankel(am - 1, k) - hankel(am + 1, k)) : -hankel(1, k));
            const cplx slp = cplx(0.0, pi / 2) * Jm * Hm;
            const cplx neu = gamma < 0 ? cplx(0.0, pi * k / 2) * Jm * Hp : cplx(0.0, pi * k / 2) * Hm * Jp;
            const Eigen::VectorXcd v = S.A * fourier_density(D, m);
            double err = 0.0;
            for (int q = 0; q < D.num_segments(); ++q) {
                const SegmentDisc& sq = D.segment(q);
                const cplx lam = sq.kind() == BoundaryKind::Dirichlet ? slp : neu;
                for (int i = 0; i < sq.n(); ++i)
                    err = std::max(err, std::abs(v(D.offset(q) + i) - lam * std::exp(cplx(0.0, m * sq.mesh.t[i]))));
            }
            EXPECT_LT(err, 1e-9) << "gamma " << gamma << " m " << m;
        }
    }
}

// Data from a point source on the far side of the boundary is reproduced off the curve.
TEST(Assembly, KiteManufacturedExterior) {
    const double k = 10.0;
    const Vec2 z0{0.1, 0.0}, x0{1.0, 2.0};
    DiscretizationOptions o;
    o.n = 128;
    o.k_design = k;
    const Discretization D(make_kite(), kite_default_partition(), o);
    const ZarembaSystem S = assemble_system(D, k, -1);
    const PointSource src{k, z0};
    const DirectSolution sol = solve_direct(S, point_source_rhs(D, src));
    const cplx u = eval_potential(D, k, sol.mu, x0), ref = src.value(x0);
    EXPECT_LT(std::abs(u - ref) / std::abs(ref), 1e-6);
    EXPECT_LT(sol.residual, 1e-10);
}

TEST(Assembly, DiscManufacturedInterior) {
    const double k = 3.0;
    const Discretization D = disc_half_half(128, k);
    const ZarembaSystem S = assemble_system(D, k, +1);
    const PointSource src{k, {1.7, 0.9}};
    const DirectSolution sol = solve_direct(S, point_source_rhs(D, src));
    for (Vec2 x : {Vec2{0.0, 0.0}, Vec2{0.3, -0.5}, Vec2{-0.6, 0.2}}) {
        const cplx u = eval_potential(D, k, sol.mu, x), ref = src.value(x);
        EXPECT_LT(std::abs(u - ref) / std::abs(ref), 1e-8) << x.x << " " << x.y;
    }
}

TEST(Assembly, ThreadCountDoesNotChangeMatrix) {
    const Discretization D = disc_half_half(32, 4.0);
    const ZarembaSystem a = assemble_system(D, 4.0, -1, 1), b = assemble_system(D, 4.0, -1, 3);
    EXPECT_EQ((a.A - b.A).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Assembly, RhsPlacesDataByKind) {
    const Discretization D = disc_half_half(16, 1.0);
    const Eigen::VectorXcd b = assemble_rhs(D, [](Vec2) { return cplx(1.0, 0.0); }, [](Vec2, Vec2) { return cplx(0.0, 2.0); });
    for (int q = 0; q < D.num_segments(); ++q)
        for (int i = 0; i < 16; ++i)
            EXPECT_EQ(b(D.offset(q) + i), D.segment(q).kind() == BoundaryKind::Dirichlet ? cplx(1.0, 0.0) : cplx(0.0, 2.0));
}

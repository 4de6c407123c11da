#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "zaremba/fc.hpp"

using namespace zaremba;
constexpr double pi = std::numbers::pi;

namespace {

template <class F>
Eigen::VectorXd sample(int n, F&& f) {
    const Eigen::VectorXd s = FCOperator::nodes(n);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v(i) = f(s(i));
    return v;
}

template <class F>
double max_err_on_interval(const FCSeries& se, F&& f, int m = 2000) {
    double e = 0.0;
    for (int i = 0; i <= m; ++i) {
        const double s = pi * i / m;
        e = std::max(e, std::abs(fc_eval(se, s) - f(s)));
    }
    return e;
}

// all coefficients of the merged series except the named one
double max_other(const FCSeries& se, int cos_index, int sin_index) {
    double m = 0.0;
    for (Eigen::Index j = 0; j < se.C.size(); ++j)
        if (j != cos_index) m = std::max(m, std::abs(se.C(j)));
    for (Eigen::Index j = 0; j < se.D.size(); ++j)
        if (j + 1 != sin_index) m = std::max(m, std::abs(se.D(j)));
    return m;
}

}  // namespace

TEST(FC, EvalExamples) {
    FCSeries c0{Eigen::VectorXcd::Constant(1, 1.0), Eigen::VectorXcd()};
    EXPECT_NEAR(std::abs(fc_eval(c0, 0.7) - 1.0), 0.0, 1e-15);
    FCSeries d1{Eigen::VectorXcd::Zero(1), Eigen::VectorXcd::Constant(1, 1.0)};
    EXPECT_NEAR(std::abs(fc_eval(d1, pi / 2) - 1.0), 0.0, 1e-15);
    FCSeries c2{Eigen::VectorXcd::Zero(3), Eigen::VectorXcd()};
    c2.C(2) = 1.0;
    EXPECT_NEAR(std::abs(fc_eval_deriv(c2, pi / 4) + 2.0), 0.0, 1e-14);
}

TEST(FC, ConstantAndZero) {
    const FCOperator F(64);
    auto one = [](double) { return 1.0; };
    EXPECT_LT(max_err_on_interval(F.apply(sample(64, one)), one), 1e-11);
    const FCSeries zero = F.apply(Eigen::VectorXd::Zero(64));
    EXPECT_EQ(zero.C.cwiseAbs().maxCoeff(), 0.0);
    EXPECT_EQ(zero.D.cwiseAbs().maxCoeff(), 0.0);
}

// With n = 32 (J = 10) the restricted trig frame is well conditioned, so in-band
// coefficients are recovered exactly. For larger n the frame on [0, pi] is numerically
// redundant and coefficients are not unique.
TEST(FC, InBandCoefficients) {
    const FCOperator F(32);
    const FCSeries c3 = F.apply_band(sample(32, [](double s) { return std::cos(3 * s); }));
    EXPECT_NEAR(std::abs(c3.C(3) - 1.0), 0.0, 1e-9);
    EXPECT_LT(max_other(c3, 3, -1), 1e-9);
}

// Low-degree trig polynomials are reproduced on the whole interval, not only at nodes.
TEST(FC, LowDegreeExactOnInterval) {
    for (int n : {16, 32})
        for (int d : {1, 3, 5}) {
            auto f = [d](double s) { return std::cos(d * s) + 0.5 * std::sin(d * s); };
            EXPECT_LT(max_err_on_interval(FCOperator(n).apply(sample(n, f)), f), 1e-10) << n << " " << d;
        }
}

TEST(FC, ReproducesInBandTrigPolynomialsAtNodes) {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int n : {16, 32, 64, 128, 256}) {
        const FCOperator F(n);
        const int J = F.bandwidth();
        std::vector<double> a(J + 1), b(J + 1);
        for (int j = 0; j <= J; ++j) {
            a[j] = u(rng);
            b[j] = j ? u(rng) : 0.0;
        }
        auto f = [&](double s) {
            double v = 0.0;
            for (int j = 0; j <= J; ++j) v += a[j] * std::cos(j * s) + b[j] * std::sin(j * s);
            return v;
        };
        const Eigen::VectorXd v = sample(n, f);
        const FCSeries se = F.apply(v);
        const Eigen::VectorXd s = FCOperator::nodes(n);
        double e = 0.0;
        for (int i = 0; i < n; ++i) e = std::max(e, std::abs(fc_eval(se, s(i)) - v(i)));
        EXPECT_LT(e, 1e-10) << n;
    }
}

TEST(FC, InterpolatesAtNodes) {
    const int n = 64;
    const FCOperator F(n);
    const Eigen::VectorXd v = sample(n, [](double s) { return std::exp(s) * std::cos(5 * s); });
    const FCSeries se = F.apply(v);
    const Eigen::VectorXd s = FCOperator::nodes(n);
    for (int i = 0; i < n; ++i) EXPECT_NEAR(std::abs(fc_eval(se, s(i)) - v(i)), 0.0, 1e-11);
}

TEST(FC, Exponential) {
    const FCOperator F(64);
    auto f = [](double s) { return std::exp(s); };
    EXPECT_LT(max_err_on_interval(F.apply(sample(64, f)), f), 5e-7);
}

TEST(FC, SpectralConvergence) {
    auto f = [](double s) { return 1.0 / (2.0 - std::cos(s + 0.3)); };
    const double e32 = max_err_on_interval(FCOperator(32).apply(sample(32, f)), f);
    const double e64 = max_err_on_interval(FCOperator(64).apply(sample(64, f)), f);
    EXPECT_GE(e32 / e64, 1e2) << e32 << " " << e64;
}

// Linear as a map from samples to values (coefficients carry TSVD roundoff).
TEST(FC, Linear) {
    const int n = 48;
    const FCOperator F(n);
    const Eigen::VectorXd f = sample(n, [](double s) { return std::exp(-s); });
    const Eigen::VectorXd g = sample(n, [](double s) { return s * s; });
    const FCSeries a = F.apply(f), b = F.apply(g), c = F.apply(Eigen::VectorXd(2.5 * f - 0.75 * g));
    for (int i = 0; i <= 50; ++i) {
        const double s = pi * i / 50;
        EXPECT_NEAR(std::abs(fc_eval(c, s) - (2.5 * fc_eval(a, s) - 0.75 * fc_eval(b, s))), 0.0, 1e-11) << s;
    }
}

TEST(FC, ComplexSamplesComponentwise) {
    const int n = 40;
    const FCOperator F(n);
    const Eigen::VectorXd re = sample(n, [](double s) { return std::cos(2 * s); });
    const Eigen::VectorXd im = sample(n, [](double s) { return s; });
    const Eigen::VectorXcd z = re.cast<std::complex<double>>() + std::complex<double>(0, 1) * im.cast<std::complex<double>>();
    const FCSeries a = F.apply(z), r = F.apply(re), i = F.apply(im);
    for (double s : {0.1, 1.0, 2.9}) {
        const auto v = fc_eval(a, s);
        EXPECT_NEAR(v.real(), fc_eval(r, s).real(), 1e-13);
        EXPECT_NEAR(v.imag(), fc_eval(i, s).real(), 1e-13);
    }
}

TEST(FC, EvalMatrixMatchesApply) {
    const int n = 64;
    const FCOperator F(n);
    const Eigen::VectorXd v = sample(n, [](double s) { return std::log(2.0 + s); });
    Eigen::VectorXd pts(5);
    pts << 0.0, 0.5, 1.7, 3.0, 3.1;
    const Eigen::VectorXd ev = F.eval_matrix(pts) * v;
    const FCSeries se = F.apply(v);
    for (int i = 0; i < 5; ++i) EXPECT_NEAR(ev(i), fc_eval(se, pts(i)).real(), 1e-12);
}

// Stability: samples -> values on [0, pi] has bounded infinity norm at the default cutoff.
TEST(FC, EvaluationMapBounded) {
    Eigen::VectorXd pts(1001);
    for (int i = 0; i <= 1000; ++i) pts(i) = pi * i / 1000;
    for (int n : {32, 64, 128, 256}) {
        const FCOperator F(n);
        const double norm = F.eval_matrix(pts).cwiseAbs().rowwise().sum().maxCoeff();
        EXPECT_LT(norm, 1e5) << n;
        EXPECT_GT(F.rank(), 0);
    }
}

TEST(FC, Errors) {
    EXPECT_THROW(FCOperator(4), config_error);
    FCOptions o;
    o.bandwidth = 40;
    EXPECT_THROW(FCOperator(32, o), config_error);
    o.bandwidth = -1;
    o.svd_cutoff = 0.0;
    EXPECT_THROW(FCOperator(32, o), config_error);
    const FCOperator F(32);
    EXPECT_THROW(F.apply(Eigen::VectorXd::Ones(31)), std::invalid_argument);
}

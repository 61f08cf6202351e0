#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "wfx/quadrature.hpp"
#include "wfx/transfer.hpp"

using namespace wfx;

namespace {

constexpr double pi = std::numbers::pi;

// K(m) = pi / (2 AGM(1, sqrt(1 - m)))
double k_agm(double m) {
    double a = 1.0, b = std::sqrt(1.0 - m);
    for (int i = 0; i < 40; ++i) {
        const double an = 0.5 * (a + b);
        b = std::sqrt(a * b);
        a = an;
    }
    return pi / (2 * a);
}

double row(const TransferResult& r, const std::string& method, const std::string& name) {
    for (const auto& o : r.rows)
        if (o.method == method && o.name == name) return o.value;
    throw std::runtime_error("missing row " + method + "/" + name);
}

const auto ps = TransferDirection::pump_to_signal;
const auto sp = TransferDirection::signal_to_pump;

}  // namespace

TEST(TransferGain, ZeroRatio) {
    EXPECT_NEAR(optimal_transfer_gain(0.0, ps), pi / 2, 1e-14);
    EXPECT_NEAR(optimal_transfer_gain(0.0, sp), pi / 2, 1e-14);
}

TEST(TransferGain, MatchesEllipticIntegral) {
    for (double m : {0.01, 0.1, 0.3, 0.49, 0.9})
        EXPECT_NEAR(transfer_gain_integral(m), k_agm(m), 1e-12) << m;
}

TEST(TransferGain, SmallRatioApproximation) {
    const double m = 0.1;
    const double g = optimal_transfer_gain(m, sp);
    EXPECT_LE(std::abs(g - pi / 2 * (1 + m / 4)) / g, 0.002);
    EXPECT_NEAR(optimal_transfer_gain_approx(m, sp), pi / 2 * (1 + m / 4), 1e-15);
    EXPECT_LE(std::abs(optimal_transfer_gain(m, ps) - optimal_transfer_gain_approx(m, ps)) / g, 0.005);
}

TEST(TransferGain, DirectionRelationAndShape) {
    double prev_sp = 0.0, prev_ps = 10.0;
    for (int j = 0; j <= 30; ++j) {
        const double m = 0.01 * j;
        const double a = optimal_transfer_gain(m, sp), b = optimal_transfer_gain(m, ps);
        EXPECT_NEAR(b, a / std::sqrt(1 + m), 1e-10);
        if (j > 0) {
            EXPECT_GT(a, prev_sp);
            EXPECT_LT(b, prev_ps);
        }
        prev_sp = a;
        prev_ps = b;
    }
    EXPECT_THROW(transfer_gain_integral(1.0), std::invalid_argument);
    EXPECT_THROW(transfer_gain_integral(-0.1), std::invalid_argument);
}

TEST(TransferFormulas, LossRatio) {
    EXPECT_NEAR(transfer_loss_ratio(25.0), 0.97533, 5e-6);
    EXPECT_NEAR(transfer_variance_coherent(4.0, 100.0), pi * pi * 0.04 / 16 * 1.16, 1e-15);
}

TEST(TransferFormulas, SourceMoments) {
    SourceMoments f = source_moments({SourceKind::fock, 3.0});
    EXPECT_EQ(f.variance(), 0.0);
    EXPECT_EQ(f.fact2(), 6.0);
    SourceMoments c = source_moments({SourceKind::coherent, 2.0});
    EXPECT_NEAR(c.variance(), 2.0, 1e-14);
    EXPECT_NEAR(c.fact2(), 4.0, 1e-14);
    EXPECT_NEAR(c.n3, 2.0 + 3 * 4.0 + 8.0, 1e-14);
    EXPECT_THROW(source_moments({SourceKind::fock, 1.5}), std::invalid_argument);
}

TEST(Transfer, SinglePhotonLossAgainstOracle) {
    TransferConfig c;
    c.source = {SourceKind::fock, 1.0};
    TransferResult r = transfer_loss_and_variance(c);
    EXPECT_NEAR(r.m, 0.04, 1e-15);
    EXPECT_NEAR(r.g_opt, optimal_transfer_gain(0.04, ps), 1e-15);
    const double want = row(r, "formula_loss", "N_target_mean");
    EXPECT_NEAR(want, 0.97533, 1e-5);
    EXPECT_LE(std::abs(row(r, "oracle", "N_target_mean") - want) / want, 0.01);
    // a Fock source has no width; the output variance stays small
    EXPECT_LT(row(r, "oracle", "N_target_var"), 0.05);
}

TEST(Transfer, ThirdOrderLeavesVacuumSignalMeanAlone) {
    for (auto dir : {ps, sp}) {
        TransferConfig c;
        c.alpha_i = 6.0;
        c.direction = dir;
        c.source = {SourceKind::fock, 1.0};
        TransferResult r = transfer_loss_and_variance(c, {false, true, false});
        EXPECT_NEAR(row(r, "expansion", "N_target_mean"), row(r, "expansion_o1", "N_target_mean"), 1e-10);
    }
}

TEST(Transfer, CoherentSourceFormulaRows) {
    TransferConfig c;
    c.alpha_i = 10.0;
    c.source = {SourceKind::coherent, 4.0};
    TransferResult r = transfer_loss_and_variance(c, {true, false, false});
    EXPECT_NEAR(row(r, "formula_coherent", "delta_var"), 0.0286, 5e-5);
    EXPECT_NEAR(row(r, "formula_opt_gain", "delta_var"), -0.0252, 5e-4);
    TransferConfig f = c;
    f.source = {SourceKind::fock, 4.0};
    EXPECT_TRUE(std::isnan(row(transfer_loss_and_variance(f, {true, false, false}), "formula_coherent", "delta_var")));
}

TEST(Transfer, RejectsLargeRatio) {
    TransferConfig c;
    c.alpha_i = 2.0;
    c.source = {SourceKind::fock, 2.0};
    EXPECT_THROW(transfer_loss_and_variance(c), std::invalid_argument);
}

TEST(Transfer, OracleLeakageThrows) {
    TransferConfig c;
    c.source = {SourceKind::fock, 1.0};
    c.idler_dim = 30;
    EXPECT_THROW(transfer_loss_and_variance(c, {false, false, true}), TruncationError);
}

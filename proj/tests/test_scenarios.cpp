#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "wfx/scenarios.hpp"

using namespace wfx;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST(Su11, ZeroGainIsIdentity) {
    for (double ph : {0.0, 1.0, pi, 4.0}) {
        Su11Config c;
        c.delta_phi = ph;
        Su11Point e = su11_expansion(c), o = su11_oracle(c);
        EXPECT_EQ(e.dN_p, 0.0);
        EXPECT_EQ(e.dphi_p, 0.0);
        EXPECT_NEAR(o.dN_p, 0.0, 1e-12);
        EXPECT_NEAR(o.dphi_p, 0.0, 1e-12);
    }
}

TEST(Su11, PiPhasePreservesPumpIntensity) {
    for (double g : {0.1, 0.4, 0.7, 1.0}) {
        Su11Config c;
        c.g = g;
        c.delta_phi = pi;
        EXPECT_NEAR(su11_expansion(c).dN_p, 0.0, 1e-8) << g;
    }
    Su11Config c;
    c.g = 0.5;
    c.delta_phi = pi;
    EXPECT_NEAR(su11_oracle(c).dN_p, 0.0, 5.0 / 25);
}

TEST(Su11, InPhaseDepletionAgainstOracle) {
    Su11Config c;
    c.g = 0.3;
    const double want = -std::pow(std::sinh(0.6), 2);
    Su11Point o = su11_oracle(c);
    EXPECT_LE(std::abs(o.dN_p - want), 0.1 * std::abs(want));
    EXPECT_LE(o.leakage, 1e-6);
    EXPECT_NEAR(su11_expansion(c).dN_p, want, 1e-12);
}

TEST(Su11, GapShrinksWithPumpPower) {
    auto gap = [](double amp) {
        Su11Config c;
        c.g = 0.3;
        c.delta_phi = 1.0;
        c.alpha_p = amp;
        return std::abs(su11_expansion(c).dN_p - su11_oracle(c).dN_p);
    };
    EXPECT_LE(gap(10.0), 0.5 * gap(5.0));
}

TEST(Su11, PhaseMirror) {
    for (double ph : {0.5, 1.0, 2.5}) {
        Su11Config a, b;
        a.g = b.g = 0.3;
        a.delta_phi = ph;
        b.delta_phi = 2 * pi - ph;
        EXPECT_NEAR(su11_oracle(a).dphi_p, -su11_oracle(b).dphi_p, 1e-12);
        EXPECT_NEAR(su11_expansion(a).dphi_p, -su11_expansion(b).dphi_p, 1e-14);
        EXPECT_NEAR(su11_expansion(a).dphi_p, su11_oracle(a).dphi_p, 5.0 / 25 * 0.01);
    }
}

TEST(Su11, PhaseMapShape) {
    PhaseMap m = pump_phase_map({0.0, 0.5}, {0.0, pi / 2, pi}, 5.0);
    ASSERT_EQ(m.points.size(), 2u);
    ASSERT_EQ(m.points[0].size(), 3u);
    for (const auto& p : m.points[0]) EXPECT_EQ(p.dN_p, 0.0);
    EXPECT_NEAR(m.points[1][2].dN_p, 0.0, 1e-8);
    EXPECT_LT(m.points[1][0].dN_p, -1.0);
    for (const auto& row : m.points)
        for (const auto& p : row) EXPECT_TRUE(p.dphi_p > -pi && p.dphi_p <= pi);
}

TEST(Su11, RunRows) {
    Su11Config c;
    c.g = 0.2;
    ObservableSet rows = su11_run(c, true);
    ASSERT_EQ(rows.size(), 4u);
    EXPECT_EQ(rows[0].method, "expansion");
    EXPECT_EQ(rows[2].method, "oracle");
    EXPECT_EQ(rows[3].name, "phase_p");
    c.pump_dim = 30;  // far too small for |alpha_p|^2 = 25
    EXPECT_THROW(su11_run(c, true), TruncationError);
    EXPECT_THROW(su11_expansion(Su11Config{-0.1}), std::invalid_argument);
}

TEST(Sfg, EntangledInputIsIdeal) {
    SfgPoint p = sfg_efficiency_point(0.1, SfgInput::entangled_su11, {}, 0.0);
    EXPECT_NEAR(p.eta, 1.0, 0.02);
    EXPECT_NEAR(p.n_in, 2 * std::pow(std::sinh(0.1), 2), 1e-3);
    EXPECT_LE(p.leakage, 1e-6);
}

TEST(Sfg, CoherentInputVanishesAtLowGain) {
    auto curve = sfg_efficiency_curve({0.01, 0.05, 0.2}, SfgInput::coherent_equal);
    ASSERT_EQ(curve.size(), 3u);
    EXPECT_LT(curve[0].eta, 0.02);
    EXPECT_LT(curve[0].eta, curve[1].eta);
    EXPECT_LT(curve[1].eta, curve[2].eta);
    EXPECT_EQ(curve[0].phase, sfg_optimal_phase());
}

TEST(Sfg, CoherentInputRegression) {
    SfgPoint p = sfg_efficiency_point(0.5, SfgInput::coherent_equal, {}, sfg_optimal_phase());
    EXPECT_NEAR(p.eta, 0.31440238, 1e-6);
}

TEST(Sfg, OptimalPhaseMaximizes) {
    double best = -1e9, arg = 0.0;
    for (int j = 0; j < 16; ++j) {
        const double ph = 2 * pi * j / 16;
        const double eta = sfg_efficiency_point(0.3, SfgInput::coherent_equal, {}, ph).eta;
        if (eta > best) best = eta, arg = ph;
    }
    EXPECT_NEAR(arg, sfg_optimal_phase(), 1e-12);
    EXPECT_THROW(sfg_efficiency_point(0.0, SfgInput::coherent_equal, {}, 0.0), std::invalid_argument);
}

TEST(PdcConvergenceTest, GapShrinksWithPumpPower) {
    for (double g : {0.3, 0.5}) {
        PdcConvergence a = pdc_convergence(9.0, g), b = pdc_convergence(36.0, g);
        EXPECT_LE(std::abs(b.expansion - b.oracle), 0.5 * std::abs(a.expansion - a.oracle)) << g;
        EXPECT_LE(a.leakage, 1e-8);
    }
}

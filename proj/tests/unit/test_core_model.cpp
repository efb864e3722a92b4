#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cphase/core_model.hpp"

using namespace cphase;

TEST(Basis, SizesPerScheme) {
  EXPECT_EQ(enumerate_basis(Scheme::v_three_level, 2).size(), 12u);
  EXPECT_EQ(enumerate_basis(Scheme::m_five_level, 2).size(), 20u);
  EXPECT_EQ(enumerate_basis(Scheme::two_atom_collective_v, 2).size(), 16u);
  EXPECT_EQ(enumerate_basis(Scheme::two_level, 1).size(), 6u);
}

TEST(Basis, EnumerationIsStable) {
  for (auto s : {Scheme::two_level, Scheme::v_three_level, Scheme::m_five_level, Scheme::two_atom_collective_v}) {
    const int modes = s == Scheme::two_level ? 1 : 2;
    const auto a = enumerate_basis(s, modes);
    const auto b = enumerate_basis(s, modes);
    ASSERT_EQ(a.labels(), b.labels());
  }
}

TEST(Basis, PhotonMajorOrdering) {
  const auto b = enumerate_basis(Scheme::v_three_level, 2);
  EXPECT_EQ(b.index({0, 0}, AtomLevel::g), 0u);
  EXPECT_EQ(b.index({0, 1}, AtomLevel::e_a), 4u);
  EXPECT_EQ(b.index({1, 1}, AtomLevel::e_b), 11u);
  EXPECT_EQ(b[7].to_string(), "|10,e_a>");
  EXPECT_THROW((void)b.index({2, 0}, AtomLevel::g), InvalidArgument);
  EXPECT_FALSE(b.find({0, 0}, AtomLevel::psi_a).has_value());
}

TEST(Basis, DuplicateFree) {
  const auto b = enumerate_basis(Scheme::m_five_level, 2);
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i + 1; j < b.size(); ++j) EXPECT_FALSE(b[i] == b[j]);
  }
}

TEST(Scheme, NamesRoundTrip) {
  for (auto s : {Scheme::two_level, Scheme::v_three_level, Scheme::m_five_level, Scheme::two_atom_collective_v}) {
    EXPECT_EQ(parse_scheme(to_string(s)), s);
  }
  EXPECT_THROW((void)parse_scheme("lambda"), InvalidArgument);
}

TEST(SystemParams, RejectsInvalidFields) {
  SystemParams ok;
  EXPECT_NO_THROW(ok.validate());
  auto bad = [](auto mutate) {
    SystemParams p;
    mutate(p);
    return p;
  };
  EXPECT_THROW(bad([](SystemParams& p) { p.gamma = -0.1; }).validate(), InvalidArgument);
  EXPECT_THROW(bad([](SystemParams& p) { p.g = 0.0; }).validate(), InvalidArgument);
  EXPECT_THROW(bad([](SystemParams& p) { p.n_atoms = 0; }).validate(), InvalidArgument);
  EXPECT_THROW(bad([](SystemParams& p) { p.t_final = -1.0; }).validate(), InvalidArgument);
  EXPECT_THROW(bad([](SystemParams& p) { p.omega_rabi = -1.0; }).validate(), InvalidArgument);
  EXPECT_THROW(bad([](SystemParams& p) { p.delta = NAN; }).validate(), InvalidArgument);
}

TEST(WrapPhase, DiffersByWholeTurns) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-200.0, 200.0);
  for (int i = 0; i < 10000; ++i) {
    const double th = u(rng);
    const double w = wrap_phase(th);
    EXPECT_GT(w, -kPi);
    EXPECT_LE(w, kPi);
    const double turns = (w - th) / (2.0 * kPi);
    EXPECT_NEAR(turns, std::round(turns), 1e-12);
  }
}

TEST(WrapPhase, HalfOpenInterval) {
  EXPECT_DOUBLE_EQ(wrap_phase(kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_phase(-kPi), kPi);
  EXPECT_DOUBLE_EQ(wrap_phase(3.0 * kPi), kPi);
  EXPECT_NEAR(wrap_phase(0.5), 0.5, 0.0);
  EXPECT_THROW((void)wrap_phase(INFINITY), InvalidArgument);
}

// Flat Dirichlet over four coordinates: E[x²] = 2/(4·5), E[x y] = 1/(4·5).
TEST(StateAverageWeights, MatchDirichletMoments) {
  EXPECT_DOUBLE_EQ(StateAverageWeights::w_quartic, 2.0 / 20.0);
  EXPECT_DOUBLE_EQ(StateAverageWeights::w_cross, 1.0 / 20.0);
}

TEST(PureStateFidelity, IdentityEvolutionGivesPointFour) {
  PureEvolutionSummary s;
  EXPECT_NEAR(pure_state_fidelity(s), 0.4, 1e-15);
}

TEST(PureStateFidelity, IdealGateGivesOne) {
  for (double phi : {0.0, 0.3, -1.2, 2.9}) {
    PureEvolutionSummary s;
    s.c_g1 = std::polar(1.0, phi);
    s.c_g2 = -std::polar(1.0, 2.0 * phi);
    EXPECT_NEAR(pure_state_fidelity(s), 1.0, 1e-14);
  }
}

TEST(PureStateFidelity, BoundedForNormalizedStates) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    PureEvolutionSummary s;
    const double p1 = u(rng);
    const double p2 = u(rng);
    const double rest = 1.0 - p2;
    const double z = u(rng) * rest;
    s.c_g1 = std::polar(std::sqrt(p1), 6.0 * u(rng));
    s.side1 = 1.0 - p1;
    s.c_g2 = std::polar(std::sqrt(p2), 6.0 * u(rng));
    s.zero2 = z;
    s.side2 = 0.5 * (rest - z);
    EXPECT_NEAR(norm1(s), 1.0, 1e-12);
    EXPECT_NEAR(norm2(s), 1.0, 1e-12);
    const double f = pure_state_fidelity(s);
    EXPECT_GE(f, 0.0);
    EXPECT_LE(f, 1.0 + 1e-12);
  }
}

TEST(Renormalized, RestoresUnitNorms) {
  PureEvolutionSummary s;
  s.c_g1 = {0.6, 0.2};
  s.side1 = 0.3;
  s.c_g2 = {0.1, -0.5};
  s.side2 = 0.1;
  s.zero2 = 0.05;
  const auto r = renormalized(s);
  EXPECT_NEAR(norm1(r), 1.0, 1e-15);
  EXPECT_NEAR(norm2(r), 1.0, 1e-15);
  EXPECT_NEAR(std::arg(r.c_g1), std::arg(s.c_g1), 1e-15);
  EXPECT_NEAR(averaged_loss_probability(s), 0.25 * (2.0 * (1.0 - norm1(s)) + 1.0 - norm2(s)), 1e-15);
  EXPECT_NEAR(averaged_loss_probability(r), 0.0, 1e-15);
}

TEST(FillPhases, FlagsVanishingGroundAmplitude) {
  FidelityReport r;
  fill_phases(r, {1e-8, 0.0}, {0.5, 0.0});
  EXPECT_TRUE(r.flagged);
  EXPECT_FALSE(r.nonlinear_phase.has_value());
  fill_phases(r, std::polar(0.9, 0.4), std::polar(0.8, 0.8 + kPi));
  EXPECT_FALSE(r.flagged);
  ASSERT_TRUE(r.nonlinear_phase.has_value());
  EXPECT_NEAR(*r.nonlinear_phase, kPi, 1e-12);
  EXPECT_NEAR(r.prob_g1, 0.81, 1e-15);
}

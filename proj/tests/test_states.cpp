#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "test_support.hpp"
#include "werner/errors.hpp"
#include "werner/random.hpp"
#include "werner/states.hpp"

using namespace werner;
using werner::testing::dense_partial_trace;

namespace {

PureState random_state(const SystemShape& shape, Rng& rng) {
  const auto dim = static_cast<Eigen::Index>(shape.hilbert_dimension());
  return PureState::from_dense(shape, random_unit_vector(dim, rng));
}

std::vector<Label> random_permutation(int size, Rng& rng) {
  std::vector<Label> p(static_cast<std::size_t>(size));
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

}  // namespace

TEST(SystemShape, RejectsNonPositive) {
  EXPECT_THROW(SystemShape(0, 2), DomainError);
  EXPECT_THROW(SystemShape(2, 0), DomainError);
  EXPECT_NO_THROW(SystemShape(1, 1));
}

TEST(SystemShape, RatioOnlyWhenDivisible) {
  EXPECT_EQ(SystemShape(6, 3).K(), 2);
  EXPECT_FALSE(SystemShape(5, 2).divisible());
  EXPECT_THROW(SystemShape(5, 2).K(), DomainError);
}

TEST(EnumerateSupport, TwoQubitsBothOrderings) {
  const auto idx = enumerate_support(SystemShape(2, 2), SupportProfile{{1, 1}});
  ASSERT_EQ(idx.size(), 2u);
  EXPECT_EQ(idx[0], (MultiIndex{0, 1}));
  EXPECT_EQ(idx[1], (MultiIndex{1, 0}));
}

TEST(EnumerateSupport, FourQubitsContainsPsi4Terms) {
  const auto idx = enumerate_support(SystemShape(4, 2), SupportProfile{{2, 2}});
  EXPECT_EQ(idx.size(), 6u);
  EXPECT_NE(std::find(idx.begin(), idx.end(), MultiIndex{0, 0, 1, 1}), idx.end());
  EXPECT_NE(std::find(idx.begin(), idx.end(), MultiIndex{1, 1, 0, 0}), idx.end());
  EXPECT_TRUE(std::is_sorted(idx.begin(), idx.end()));
}

TEST(EnumerateSupport, SixQubitsMatchesBitCountFilter) {
  // Oracle: filter all 2^6 indices by number of ones.
  int brute = 0;
  for (int x = 0; x < 64; ++x)
    if (__builtin_popcount(static_cast<unsigned>(x)) == 3) ++brute;
  ASSERT_EQ(brute, 20);
  EXPECT_EQ(enumerate_support(SystemShape(6, 2), SupportProfile{{3, 3}}).size(), 20u);
}

TEST(EnumerateSupport, InvalidProfile) {
  EXPECT_THROW(enumerate_support(SystemShape(4, 2), SupportProfile{{1, 2}}), DomainError);
  EXPECT_THROW(enumerate_support(SystemShape(4, 2), SupportProfile{{4}}), DomainError);
}

TEST(EnumerateSupport, CountIsMultinomialUpToTwelveSites) {
  for (int d = 1; d <= 4; ++d) {
    for (int n = 1; n <= 12; ++n) {
      const SystemShape shape(n, d);
      if (shape.hilbert_dimension() > 1u << 16) continue;
      // Oracle: histogram of profiles over the full index space.
      std::map<std::vector<int>, std::uint64_t> histogram;
      for (std::uint64_t c = 0; c < shape.hilbert_dimension(); ++c)
        ++histogram[MultiIndex::from_code(c, shape).profile(d).counts];
      for (const auto& [counts, expected] : histogram) {
        const SupportProfile p{counts};
        EXPECT_EQ(multinomial(p), expected);
        EXPECT_EQ(enumerate_support(shape, p).size(), expected) << "n=" << n << " d=" << d;
      }
    }
  }
}

TEST(PureState, DropsExactZerosAndValidates) {
  const SystemShape shape(2, 2);
  PureState s(shape, {{MultiIndex{0, 0}, 0.0}, {MultiIndex{1, 1}, 1.0}});
  EXPECT_EQ(s.support_size(), 1u);
  EXPECT_THROW(PureState(shape, {{MultiIndex{0, 2}, 1.0}}), DomainError);
  EXPECT_THROW(PureState(shape, {{MultiIndex{0, 1, 0}, 1.0}}), DomainError);
}

TEST(PureState, CanonicalPhaseMakesLeadingAmplitudePositive) {
  const SystemShape shape(2, 2);
  const Complex phase = std::polar(1.0, 0.7);
  PureState s(shape, {{MultiIndex{0, 1}, phase * 0.6}, {MultiIndex{1, 0}, -phase * 0.8}});
  const PureState c = s.canonicalized();
  EXPECT_NEAR(c.amplitude(MultiIndex{0, 1}).real(), 0.6, 1e-15);
  EXPECT_NEAR(c.amplitude(MultiIndex{0, 1}).imag(), 0.0, 1e-15);
  EXPECT_NEAR(c.amplitude(MultiIndex{1, 0}).real(), -0.8, 1e-15);
}

TEST(ApplyLocal, SwapNegatesPsiMinus) {
  const PureState psi = werner::testing::psi_minus();
  const PureState swapped = apply_local(psi, LocalOperator::permutation({1, 0}));
  EXPECT_TRUE(swapped.approx_equal(psi.scaled(-1.0), 1e-15));
}

TEST(ApplyLocal, IdentityLeavesStateUnchanged) {
  const PureState psi = werner::testing::psi4();
  EXPECT_TRUE(apply_local(psi, LocalOperator::identity(2)).approx_equal(psi, 0.0));
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(2, 2);
  EXPECT_TRUE(apply_local(psi, LocalOperator::unitary(id)).approx_equal(psi, 1e-15));
}

TEST(ApplyLocal, SwapFixesPsi4) {
  const PureState psi = werner::testing::psi4();
  EXPECT_TRUE(apply_local(psi, LocalOperator::permutation({1, 0})).approx_equal(psi, 0.0));
}

TEST(ApplyLocal, DimensionMismatch) {
  EXPECT_THROW(apply_local(werner::testing::psi4(), LocalOperator::identity(3)), DomainError);
}

TEST(ApplyLocal, MatchesExplicitKroneckerPower) {
  Rng rng(11);
  const SystemShape shape(3, 3);
  const PureState psi = random_state(shape, rng);
  const Eigen::MatrixXcd u = haar_unitary(3, rng);
  const Eigen::VectorXcd expected = werner::testing::kron_power(u, 3) * psi.to_dense();
  const Eigen::VectorXcd got = apply_local(psi, LocalOperator::unitary(u)).to_dense();
  EXPECT_LT((expected - got).cwiseAbs().maxCoeff(), 1e-13);
}

TEST(ApplyLocal, UnitaryPreservesInnerProducts) {
  Rng rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const SystemShape shape(2 + trial % 3, 2 + trial % 2);
    const PureState a = random_state(shape, rng);
    const PureState b = random_state(shape, rng);
    const LocalOperator u = LocalOperator::unitary(haar_unitary(shape.d(), rng));
    const Complex before = a.inner(b);
    const Complex after = apply_local(a, u).inner(apply_local(b, u));
    EXPECT_NEAR(std::abs(before), std::abs(after), 1e-10);
    EXPECT_NEAR(apply_local(a, u).norm(), 1.0, 1e-10);
  }
}

TEST(ApplyLocal, DiagonalPhaseKind) {
  const std::vector<double> angles{0.3, -1.1};
  const LocalOperator op = LocalOperator::diagonal_phase(angles);
  EXPECT_EQ(op.kind(), OperatorKind::DiagonalPhase);
  EXPECT_TRUE(op.is_unitary());
  const PureState psi = werner::testing::psi_minus();
  // |01> and |10> both pick up e^{i(0.3 - 1.1)}.
  const PureState out = apply_local(psi, op);
  EXPECT_TRUE(out.approx_equal(psi.scaled(std::polar(1.0, -0.8)), 1e-15));
}

TEST(LocalOperator, RejectsNonPermutationAndNonUnitary) {
  EXPECT_THROW(LocalOperator::permutation({0, 0}), DomainError);
  EXPECT_THROW(LocalOperator::permutation({0, 2}), DomainError);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
  m(0, 1) = 0.5;
  EXPECT_THROW(LocalOperator::unitary(m), DomainError);
}

TEST(PermuteParticles, SiteSwapNegatesPsiMinus) {
  const PureState psi = werner::testing::psi_minus();
  const std::vector<int> swap{1, 0};
  EXPECT_TRUE(permute_particles(psi, swap).approx_equal(psi.scaled(-1.0), 0.0));
}

TEST(PermuteParticles, IdentityAndPsi4Symmetry) {
  const PureState psi = werner::testing::psi4();
  const std::vector<int> id{0, 1, 2, 3};
  EXPECT_TRUE(permute_particles(psi, id).approx_equal(psi, 0.0));
  const std::vector<int> swap12{1, 0, 2, 3};
  EXPECT_TRUE(permute_particles(psi, swap12).approx_equal(psi, 0.0));
}

TEST(PermuteParticles, Malformed) {
  const PureState psi = werner::testing::psi4();
  const std::vector<int> dup{0, 0, 1, 2};
  const std::vector<int> short_perm{0, 1};
  EXPECT_THROW(permute_particles(psi, dup), DomainError);
  EXPECT_THROW(permute_particles(psi, short_perm), DomainError);
}

TEST(PermuteParticles, CommutesWithLabelPermutations) {
  Rng rng(2024);
  for (int trial = 0; trial < 40; ++trial) {
    const SystemShape shape(2 + trial % 4, 2 + trial % 3);
    const PureState psi = random_state(shape, rng);
    const std::vector<int> omega = random_permutation(shape.n(), rng);
    const LocalOperator pi = LocalOperator::permutation(random_permutation(shape.d(), rng));
    const PureState a = permute_particles(apply_local(psi, pi), omega);
    const PureState b = apply_local(permute_particles(psi, omega), pi);
    EXPECT_TRUE(a.approx_equal(b, 0.0));
  }
}

TEST(PartialTrace, PsiMinusSingleSiteIsMaximallyMixed) {
  const std::vector<int> a{0};
  const MarginalMatrix m = partial_trace(werner::testing::psi_minus(), a);
  EXPECT_LT((m.entries - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(PartialTrace, ProductStateGivesProjector) {
  const PureState s = PureState::basis_state(SystemShape(2, 2), MultiIndex{0, 0});
  const std::vector<int> a{0};
  const MarginalMatrix m = partial_trace(s, a);
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(2, 2);
  p(0, 0) = 1.0;
  EXPECT_EQ(m.entries, p);
}

TEST(PartialTrace, Psi4FirstPairMatchesDirectSummation) {
  const PureState psi = werner::testing::psi4();
  const std::vector<int> a{0, 1};
  const MarginalMatrix m = partial_trace(psi, a);
  const Eigen::MatrixXcd oracle = dense_partial_trace(psi.to_dense(), 4, 2, {0, 1});
  EXPECT_LT((m.entries - oracle).cwiseAbs().maxCoeff(), 1e-15);

  // Frozen from the oracle above: diag(1/3, 1/6, 1/6, 1/3), coupling 1/6 between 01 and 10.
  Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(4, 4);
  expected(0, 0) = expected(3, 3) = 1.0 / 3.0;
  expected(1, 1) = expected(2, 2) = expected(1, 2) = expected(2, 1) = 1.0 / 6.0;
  EXPECT_LT((m.entries - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PartialTrace, RejectsBadSubsystems) {
  const PureState psi = werner::testing::psi4();
  EXPECT_THROW(partial_trace(psi, std::vector<int>{}), DomainError);
  EXPECT_THROW(partial_trace(psi, std::vector<int>{4}), DomainError);
  EXPECT_THROW(partial_trace(psi, std::vector<int>{1, 1}), DomainError);
}

TEST(PartialTrace, OrderOfSitesIsAscending) {
  const PureState psi = werner::testing::psi4();
  const MarginalMatrix a = partial_trace(psi, std::vector<int>{2, 0});
  const MarginalMatrix b = partial_trace(psi, std::vector<int>{0, 2});
  EXPECT_EQ(a.sites, (std::vector<int>{0, 2}));
  EXPECT_EQ(a.entries, b.entries);
}

TEST(PartialTrace, RandomStatesGiveDensityMatrices) {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const SystemShape shape(2 + trial % 4, 2 + trial % 2);
    const PureState psi = random_state(shape, rng);
    std::vector<int> sites;
    for (int s = 0; s < shape.n(); ++s)
      if (rng() % 2 == 0) sites.push_back(s);
    if (sites.empty()) sites.push_back(0);
    const MarginalMatrix m = partial_trace(psi, sites);
    EXPECT_TRUE(m.is_hermitian(1e-10));
    EXPECT_TRUE(m.is_psd(1e-10));
    EXPECT_NEAR(m.trace(), 1.0, 1e-10);
    if (trial % 20 == 0) {
      const Eigen::MatrixXcd oracle = dense_partial_trace(psi.to_dense(), shape.n(), shape.d(), sites);
      EXPECT_LT((m.entries - oracle).cwiseAbs().maxCoeff(), 1e-13);
    }
  }
}

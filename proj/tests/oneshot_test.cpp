// Copyright 2026 The qconverse Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cmath>

#include "channels.hpp"
#include "errors.hpp"
#include "oneshot.hpp"

namespace qconverse {
namespace {

constexpr double kChainTol = 1e-6;

Channel sample_channel(std::uint64_t seed) {
  return random_channel(2 + seed % 2, 2 + (seed / 2) % 2, 1 + seed % 3, seed);
}

TEST(OneShot, NoiselessQubitAtZeroError) {
  const Channel id = identity_channel(2);
  for (const BoundResult& r :
       {bound_f(id, 0.0), bound_g(id, 0.0), bound_g_tilde(id, 0.0)}) {
    ASSERT_TRUE(r.ok()) << r.name;
    EXPECT_NEAR(r.value, 0.5, 1e-7) << r.name;
    EXPECT_NEAR(r.log_value, 1.0, 1e-6) << r.name;
    ASSERT_FALSE(r.warnings.empty());
    EXPECT_NE(r.warnings.front().find("eps = 0"), std::string::npos);
  }
}

TEST(OneShot, RejectsBadArguments) {
  const Channel id = identity_channel(2);
  EXPECT_THROW(bound_f(id, 1.0), Error);
  EXPECT_THROW(bound_g(id, -0.1), Error);
  EXPECT_THROW(bound_g_hat(id, 0.01, 1.5), Error);
  EXPECT_THROW(g_hat_iterate(id, 0.01, 0), Error);
  EXPECT_THROW(fidelity_sdp(id, 0, CodeClass::Ppt), Error);
}

TEST(OneShot, InequalityChainOnRandomChannels) {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const Channel ch = sample_channel(seed);
    for (double eps : {0.01, 0.1}) {
      const BoundResult f = bound_f(ch, eps);
      const BoundResult g = bound_g(ch, eps);
      const BoundResult gt = bound_g_tilde(ch, eps);
      const auto gh = g_hat_iterate(ch, eps, 3);
      ASSERT_TRUE(f.ok() && g.ok() && gt.ok());
      EXPECT_LE(f.value, g.value + kChainTol) << seed;
      EXPECT_LE(g.value, gt.value + kChainTol) << seed;
      EXPECT_LE(gt.value, gh[0].value + kChainTol) << seed;
      for (std::size_t i = 1; i < gh.size(); ++i) {
        EXPECT_GE(gh[i].value, gh[i - 1].value - 1e-8) << seed << " round " << i;
      }
      EXPECT_EQ(gh[0].name, "g_hat_1");
    }
  }
}

TEST(OneShot, GHatWithZeroMHatIsGTilde) {
  for (std::uint64_t seed = 11; seed <= 13; ++seed) {
    const Channel ch = sample_channel(seed);
    EXPECT_NEAR(bound_g_hat(ch, 0.05, 0.0).value, bound_g_tilde(ch, 0.05).value,
                1e-7);
  }
}

TEST(OneShot, GHatIterateFixedPointForNoiselessChannel) {
  const auto seq = g_hat_iterate(identity_channel(2), 0.01, 4);
  ASSERT_EQ(seq.size(), 4u);
  for (const BoundResult& r : seq) EXPECT_NEAR(r.value, seq[0].value, 1e-7);
}

TEST(OneShot, FCertificateIsFeasible) {
  const Channel ch = sample_channel(21);
  const double eps = 0.05;
  OneShotCertificate c;
  const BoundResult r = bound_f(ch, eps, {}, &c);
  ASSERT_TRUE(r.ok());
  const ChoiMatrix j = choi(ch);
  const int db = j.d_out;
  const CMatrix id_b = CMatrix::Identity(db, db);
  const double tol = 1e-7;
  EXPECT_GE(min_eigenvalue(c.W.data()), -tol);
  EXPECT_GE(min_eigenvalue(c.Theta.data()), -tol);
  EXPECT_NEAR(c.rho.trace().real(), 1.0, tol);
  EXPECT_GE(min_eigenvalue(kron(c.rho.data(), id_b) - c.W.data()), -tol);
  EXPECT_GE((j.mat.data() * c.W.data()).trace().real(), 1.0 - eps - tol);
  EXPECT_GE(min_eigenvalue(kron(c.S.data(), id_b) - c.W.data() -
                           partial_transpose(c.Theta, 1).data()),
            -tol);
  EXPECT_NEAR(c.S.trace().real(), r.value, 1e-6);
  EXPECT_LE(r.gap, 2e-8 * (1.0 + std::abs(r.primal_value)));
}

TEST(OneShot, GTildeCertificateSatisfiesNoSignalling) {
  const Channel ch = sample_channel(22);
  OneShotCertificate c;
  ASSERT_TRUE(bound_g_tilde(ch, 0.05, {}, &c).ok());
  const HermMat marg = partial_trace(c.W, 0);
  const int db = marg.side();
  EXPECT_LT((marg.data() - c.t * CMatrix::Identity(db, db)).cwiseAbs().maxCoeff(),
            1e-7);
  EXPECT_GE(c.t, -1e-8);
}

TEST(Fidelity, TrivialCodesAndClassContainment) {
  for (std::uint64_t seed = 31; seed <= 33; ++seed) {
    const FidelityResult r = fidelity_sdp(sample_channel(seed), 1, CodeClass::Ppt);
    EXPECT_NEAR(r.fidelity, 1.0, 1e-7);
  }
  EXPECT_NEAR(fidelity_sdp(identity_channel(2), 2, CodeClass::Ppt).fidelity, 1.0,
              1e-7);
  const Channel dep = depolarizing(0.2);
  const double ppt = fidelity_sdp(dep, 2, CodeClass::Ppt).fidelity;
  const double ns = fidelity_sdp(dep, 2, CodeClass::NsPpt).fidelity;
  EXPECT_GT(ns, 0.0);
  EXPECT_LT(ns, 1.0);
  EXPECT_LE(ns, ppt + 1e-8);
}

TEST(Fidelity, NonIncreasingInCodeSize) {
  for (std::uint64_t seed = 41; seed <= 44; ++seed) {
    const Channel ch = random_channel(3, 3, 2, seed);
    for (CodeClass cls : {CodeClass::Ppt, CodeClass::NsPpt}) {
      double prev = 1.0 + 1e-8;
      for (int k = 1; k <= 3; ++k) {
        const double f = fidelity_sdp(ch, k, cls).fidelity;
        EXPECT_LE(f, prev + 1e-8) << seed << " k=" << k;
        prev = f;
      }
    }
  }
}

TEST(Capacity, NoiselessQubitAndDampedPair) {
  EXPECT_NEAR(oneshot_capacity(identity_channel(2), 0.01, CodeClass::Ppt).log_value,
              1.0, 1e-12);
  const CapacityResult ad =
      oneshot_capacity(tensor_power(amplitude_damping(0.09), 2), 0.01,
                       CodeClass::NsPpt);
  EXPECT_EQ(ad.k_star, 1);
  EXPECT_EQ(ad.log_value, 0.0);
}

TEST(Capacity, MonotoneInEpsAndBelowGHat) {
  const Channel ch = random_channel(3, 3, 2, 51);
  double prev = -1.0;
  for (double eps : {0.01, 0.1, 0.3, 0.6, 0.9}) {
    const CapacityResult c = oneshot_capacity(ch, eps, CodeClass::NsPpt, {}, true);
    EXPECT_GE(c.log_value, prev) << eps;
    EXPECT_LE(c.log_value, std::log2(3.0) + 1e-12);
    prev = c.log_value;
    const auto gh = g_hat_iterate(ch, eps, 2);
    EXPECT_LE(c.log_value, gh.back().log_value + 1e-7) << eps;
  }
}

TEST(Program, DumpListsBlocksAndConstraints) {
  const std::string d =
      oneshot_program(choi(identity_channel(2)), OneShotBound::GHat, 0.01, 0.5).dump();
  EXPECT_NE(d.find("W"), std::string::npos);
  EXPECT_NE(d.find("t >= m_hat^2"), std::string::npos);
  EXPECT_NE(d.find("tr J W >= 1 - eps"), std::string::npos);
}

}  // namespace
}  // namespace qconverse

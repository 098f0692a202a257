// Copyright 2026 The qis-cluster Authors
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

// Randomized invariants. Each property draws its own cases from a seeded
// qis_test::Gen so failures reproduce; the seed is printed on failure.

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qis/channels/clifford.hpp"
#include "qis/channels/states.hpp"
#include "qis/core/density.hpp"
#include "qis/core/measurement.hpp"
#include "qis/protocols/corrections.hpp"
#include "qis/protocols/report.hpp"
#include "qis/security/attack.hpp"
#include "test_support.hpp"

namespace {

using qis::PureState;
using qis::protocols::ProtocolId;
namespace pr = qis::protocols;

constexpr int kCases = 40;
constexpr double kTol = 1e-10;

PureState random_pure(qis_test::Gen& g, std::size_t n) {
  return PureState(qis::numbered_labels(static_cast<int>(n)), qis_test::from_oracle(g.unit_vector(std::size_t{1} << n)));
}

qis::UnitaryOp random_unitary(qis_test::Gen& g, std::size_t arity) {
  return qis::UnitaryOp(qis_test::from_oracle(g.unitary(std::size_t{1} << arity)));
}

PureState random_secret(qis_test::Gen& g, ProtocolId id) {
  const auto& def = pr::definition(id);
  qis::Vector v = qis::Vector::Zero(std::size_t{1} << def.secret_qubits());
  for (std::size_t i : def.secret_support) v[static_cast<Eigen::Index>(i)] = g.complex();
  return PureState::normalized(def.secret_labels, v);
}

TEST(Property, UnitariesPreserveNorm) {
  qis_test::Gen g(101);
  for (int c = 0; c < kCases; ++c) {
    const std::size_t n = 1 + g.index(6), k = 1 + g.index(std::min<std::size_t>(n, 3));
    const PureState s = random_pure(g, n);
    const qis::Labels t = qis_test::labels_at(g.positions(n, k), s.labels());
    const PureState out = qis::apply_unitary(s, random_unitary(g, k), t);
    EXPECT_NEAR(out.amplitudes().squaredNorm(), 1.0, kTol) << "case " << c;
  }
}

TEST(Property, ApplyUnitaryMatchesOracleEmbedding) {
  qis_test::Gen g(102);
  for (int c = 0; c < kCases; ++c) {
    const std::size_t n = 2 + g.index(4), k = 1 + g.index(2);
    const PureState s = random_pure(g, n);
    const auto pos = g.positions(n, k);
    const oracle::Mat u = g.unitary(std::size_t{1} << k);
    const PureState out = qis::apply_unitary(s, qis::UnitaryOp(qis_test::from_oracle(u)), qis_test::labels_at(pos, s.labels()));
    const oracle::Vec want = oracle::apply(u, pos, n, qis_test::to_oracle(s.amplitudes()));
    EXPECT_LT(oracle::max_diff(qis_test::to_oracle(out.amplitudes()), want), 1e-12) << "case " << c;
  }
}

// Probabilities of a complete measurement sum to one; measuring the same
// vector again after re-attaching it is certain.
TEST(Property, MeasurementCompletenessAndRepeatability) {
  qis_test::Gen g(103);
  for (int c = 0; c < kCases; ++c) {
    const std::size_t n = 2 + g.index(4), k = 1 + g.index(std::min<std::size_t>(n - 1, 3));
    const PureState s = random_pure(g, n);
    const qis::Labels t = qis_test::labels_at(g.positions(n, k), s.labels());
    const oracle::Mat u = g.unitary(std::size_t{1} << k);
    std::vector<qis::Vector> cols;
    for (std::size_t j = 0; j < u.size(); ++j) {
      oracle::Vec col(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) col[i] = u[i][j];
      cols.push_back(qis_test::from_oracle(col));
    }
    const qis::MeasurementBasis basis(k, cols);
    double total = 0.0;
    for (const auto& o : qis::enumerate_measurement(s, basis, t)) {
      total += o.probability;
      if (!o.possible()) continue;
      const PureState again = qis::tensor(PureState(t, basis.vector(o.index)), *o.post_state);
      EXPECT_NEAR(qis::project(again, basis.vector(o.index), t).probability, 1.0, kTol);
    }
    EXPECT_NEAR(total, 1.0, kTol) << "case " << c;
  }
}

TEST(Property, PartialTraceComposes) {
  qis_test::Gen g(104);
  for (int c = 0; c < kCases; ++c) {
    const std::size_t n = 3 + g.index(4), k = 2 + g.index(n - 2), kk = 1 + g.index(k - 1);
    const PureState s = random_pure(g, n);
    const auto outer_pos = g.positions(n, k);
    const qis::Labels outer = qis_test::labels_at(outer_pos, s.labels());
    const qis::Labels inner(outer.begin(), outer.begin() + static_cast<std::ptrdiff_t>(kk));
    const qis::DensityMatrix staged = qis::reduced_density(qis::reduced_density(s, outer), inner);
    const qis::DensityMatrix direct = qis::reduced_density(s, inner);
    EXPECT_LT((staged.matrix() - direct.matrix()).cwiseAbs().maxCoeff(), 1e-12) << "case " << c;
    const std::vector<std::size_t> inner_pos(outer_pos.begin(), outer_pos.begin() + static_cast<std::ptrdiff_t>(kk));
    const oracle::Mat want = oracle::partial_trace(qis_test::to_oracle(s.amplitudes()), inner_pos, n);
    EXPECT_LT(oracle::max_diff(qis_test::to_oracle(direct.matrix()), want), 1e-12) << "case " << c;
  }
}

TEST(Property, UnitarityGate) {
  qis_test::Gen g(105);
  for (int c = 0; c < kCases; ++c) {
    const std::size_t arity = 1 + g.index(3);
    qis::Matrix m = random_unitary(g, arity).matrix();
    EXPECT_NO_THROW(qis::UnitaryOp{m});
    m(static_cast<Eigen::Index>(g.index(m.rows())), static_cast<Eigen::Index>(g.index(m.cols()))) += 1e-6;
    EXPECT_THROW(qis::UnitaryOp{m}, qis::Error) << "case " << c;
  }
}

TEST(Property, SchmidtRankOneIffProduct) {
  qis_test::Gen g(106);
  for (int c = 0; c < kCases; ++c) {
    const std::size_t na = 1 + g.index(3), nb = 1 + g.index(3);
    const PureState a = random_pure(g, na);
    const qis::Labels all = qis::numbered_labels(static_cast<int>(na + nb));
    const PureState b(qis::Labels(all.begin() + static_cast<std::ptrdiff_t>(na), all.end()),
                      qis_test::from_oracle(g.unit_vector(std::size_t{1} << nb)));
    const PureState prod = qis::tensor(a, b);
    EXPECT_EQ(qis::schmidt_rank(prod, a.labels()), 1u) << "case " << c;
    // A generic joint state across the same cut is entangled.
    const PureState joint = random_pure(g, na + nb);
    EXPECT_GT(qis::schmidt_rank(joint, a.labels()), 1u) << "case " << c;
  }
}

TEST(Property, PerfectRecoveryForRandomSecrets) {
  qis_test::Gen g(107);
  for (ProtocolId id : pr::kAllProtocols)
    for (int c = 0; c < 10; ++c) {
      const pr::ProtocolReport r = pr::run_protocol(id, random_secret(g, id));
      EXPECT_TRUE(r.all_fidelities_ok) << pr::to_string(id);
      EXPECT_GE(r.min_fidelity, 1.0 - kTol) << pr::to_string(id);
      EXPECT_NEAR(r.probability_sum, 1.0, kTol) << pr::to_string(id);
    }
}

TEST(Property, OutcomeProbabilitiesIgnoreTheSecret) {
  qis_test::Gen g(108);
  for (ProtocolId id : pr::kAllProtocols)
    for (int c = 0; c < 5; ++c) {
      const pr::ProtocolReport a = pr::run_protocol(id, random_secret(g, id));
      const pr::ProtocolReport b = pr::run_protocol(id, random_secret(g, id));
      ASSERT_EQ(a.branches.size(), b.branches.size());
      for (std::size_t i = 0; i < a.branches.size(); ++i) {
        EXPECT_EQ(a.branches[i].alice_outcome, b.branches[i].alice_outcome);
        EXPECT_EQ(a.branches[i].bob_outcome, b.branches[i].bob_outcome);
        EXPECT_NEAR(a.branches[i].probability, b.branches[i].probability, kTol) << pr::to_string(id);
      }
    }
}

// Charlie sees nothing about the secret before any correction, and Bob sees
// nothing while his qubits are unmeasured.
TEST(Property, NoSignalling) {
  qis_test::Gen g(109);
  for (ProtocolId id : pr::kAllProtocols)
    for (pr::Party p : {pr::Party::kBob, pr::Party::kCharlie})
      for (int c = 0; c < 3; ++c)
        EXPECT_LE(qis::security::party_blindness(id, p, random_secret(g, id), random_secret(g, id)), kTol)
            << pr::to_string(id) << " " << pr::to_string(p);
}

// The correction chosen for a branch is a function of the announced
// outcomes only.
TEST(Property, CorrectionsDependOnOutcomesOnly) {
  qis_test::Gen g(110);
  for (ProtocolId id : pr::kAllProtocols) {
    const auto& table = pr::correction_table(id);
    for (int c = 0; c < 3; ++c)
      for (const auto& b : pr::run_protocol(id, random_secret(g, id)).branches) {
        const auto it = table.find({b.alice_outcome, b.bob_outcome});
        ASSERT_NE(it, table.end());
        EXPECT_EQ(b.correction.matrix(), it->second.unitary.matrix());
      }
  }
}

TEST(Property, CliffordOrbitIsSymmetric) {
  qis_test::Gen g(111);
  const auto& cl = qis::channels::single_qubit_cliffords();
  const std::vector<PureState> seeds = {qis::channels::make_c4(), qis::channels::make_ghz(4), qis::channels::make_cluster_generic(3)};
  for (int c = 0; c < 15; ++c) {
    const PureState& a = seeds[g.index(seeds.size())];
    std::vector<qis::UnitaryOp> us;
    for (std::size_t q = 0; q < a.num_qubits(); ++q) us.push_back(cl[g.index(cl.size())]);
    const PureState b = qis::channels::apply_local(a, us);
    const auto fwd = qis::channels::local_equivalence_search(a, b);
    const auto back = qis::channels::local_equivalence_search(b, a);
    ASSERT_TRUE(fwd && back) << "case " << c;
    EXPECT_TRUE(qis::equal_up_to_global_phase(qis::channels::apply_local(a, *fwd), b));
    EXPECT_TRUE(qis::equal_up_to_global_phase(qis::channels::apply_local(b, *back), a));
  }
}

}  // namespace

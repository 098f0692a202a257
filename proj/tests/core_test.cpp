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

#include <cmath>
#include <complex>
#include <vector>

#include <gtest/gtest.h>

#include "oracle.hpp"
#include "qis/core/density.hpp"
#include "qis/core/measurement.hpp"
#include "qis/core/random.hpp"
#include "qis/core/state.hpp"
#include "test_support.hpp"

namespace {

using qis::Amplitude;
using qis::Labels;
using qis::PureState;
using qis::QubitLabel;
using qis::UnitaryOp;
using qis::Vector;
using qis_test::from_oracle;
using qis_test::to_oracle;

constexpr double kTol = 1e-10;
const double kR = 1.0 / std::sqrt(2.0);

QubitLabel q(int i) { return QubitLabel(i); }

PureState bell_phi_plus() { return PureState::from_terms({q(1), q(2)}, {{1, "00"}, {1, "11"}}); }

template <typename F>
qis::ErrorCode error_of(F&& f) {
  try {
    f();
  } catch (const qis::Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected qis::Error";
  return qis::ErrorCode::kInvalidArgument;
}

// --- labels and registers ---------------------------------------------------

TEST(QubitLabel, NamesRoundTrip) {
  for (QubitLabel l : {q(1), q(12), QubitLabel::secret(), QubitLabel::secret_prime(), QubitLabel::eve()})
    EXPECT_EQ(QubitLabel::parse(l.name()), l);
  EXPECT_EQ(QubitLabel::secret().name(), "a");
  EXPECT_EQ(QubitLabel::secret_prime().name(), "a'");
  EXPECT_EQ(QubitLabel::eve().name(), "E");
}

TEST(QubitLabel, RejectsGarbage) {
  EXPECT_THROW(QubitLabel::parse("x"), qis::Error);
  EXPECT_THROW(QubitLabel::parse(""), qis::Error);
}

TEST(PureState, RejectsDuplicateLabels) {
  EXPECT_EQ(error_of([] { PureState::basis({q(1), q(1)}, 0); }), qis::ErrorCode::kDuplicateQubit);
}

TEST(PureState, RejectsUnnormalized) {
  Vector v(2);
  v << 1.0, 1.0;
  EXPECT_EQ(error_of([&] { PureState({q(1)}, v); }), qis::ErrorCode::kNotNormalized);
}

TEST(PureState, RejectsWrongLength) {
  Vector v(3);
  v << 1.0, 0.0, 0.0;
  EXPECT_EQ(error_of([&] { PureState({q(1), q(2)}, v); }), qis::ErrorCode::kDimensionMismatch);
}

TEST(PureState, RejectsNonFinite) {
  Vector v(2);
  v << std::nan(""), 0.0;
  EXPECT_THROW(PureState({q(1)}, v), qis::Error);
}

TEST(PureState, ReorderedKeepsPhysicalState) {
  const PureState s = PureState::from_terms({q(1), q(2), q(3)}, {{1, "100"}, {Amplitude(0, 2), "011"}});
  const PureState r = s.reordered({q(3), q(1), q(2)});
  EXPECT_NEAR(std::abs(r.amplitude("010") - s.amplitude("100")), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(r.amplitude("101") - s.amplitude("011")), 0.0, 1e-15);
  EXPECT_EQ(r.reordered(s.labels()).amplitudes(), s.amplitudes());
}

// --- tensor -----------------------------------------------------------------

TEST(Tensor, BasisProduct) {
  const PureState t = qis::tensor(PureState::basis({q(1)}, 0), PureState::basis({q(2)}, 0));
  ASSERT_EQ(t.dim(), 4u);
  EXPECT_EQ(t.amplitude(0), Amplitude(1.0));
  EXPECT_EQ(t.labels(), (Labels{q(1), q(2)}));
}

TEST(Tensor, SecretWithGhzSupport) {
  const PureState secret = PureState::from_terms({QubitLabel::secret()}, {{0.6, "0"}, {0.8, "1"}});
  const PureState ghz = PureState::from_terms({q(1), q(2), q(3)}, {{1, "000"}, {1, "111"}});
  const PureState t = qis::tensor(secret, ghz);
  ASSERT_EQ(t.dim(), 16u);
  for (std::size_t i = 0; i < 16; ++i) {
    const std::string b = qis::bitstring(i, 4);
    const bool support = b == "0000" || b == "0111" || b == "1000" || b == "1111";
    EXPECT_EQ(std::abs(t.amplitude(i)) > 0.0, support) << b;
  }
}

TEST(Tensor, MatchesOracleKron) {
  qis_test::Gen g(11);
  for (int k = 0; k < 100; ++k) {
    const auto a = g.unit_vector(2), b = g.unit_vector(8);
    const PureState t = qis::tensor(PureState({q(1)}, from_oracle(a)), PureState({q(2), q(3), q(4)}, from_oracle(b)));
    EXPECT_LT(oracle::max_diff(to_oracle(t.amplitudes()), oracle::kron(a, b)), 1e-14);
    EXPECT_NEAR(t.amplitudes().squaredNorm(), 1.0, kTol);
  }
}

TEST(Tensor, RejectsSharedLabels) {
  EXPECT_THROW(qis::tensor(PureState::basis({q(1)}, 0), PureState::basis({q(1)}, 0)), qis::Error);
}

// --- apply_unitary ----------------------------------------------------------

TEST(ApplyUnitary, PauliFlip) {
  const PureState out = qis::apply_unitary(PureState::basis({q(1)}, 0), qis::gates::pauli_x(), {q(1)});
  EXPECT_EQ(out.amplitude(1), Amplitude(1.0));
}

TEST(ApplyUnitary, PhaseOnSecondQubit) {
  const PureState out = qis::apply_unitary(bell_phi_plus(), qis::gates::pauli_z(), {q(2)});
  EXPECT_NEAR(out.amplitude("00").real(), kR, 1e-15);
  EXPECT_NEAR(out.amplitude("11").real(), -kR, 1e-15);
}

TEST(ApplyUnitary, XOnFirstOfEntangledPair) {
  const Amplitude alpha(0.6, 0.0), beta(0.0, 0.8);
  const PureState s = PureState::from_terms({q(1), q(2)}, {{alpha, "00"}, {beta, "11"}});
  const PureState out = qis::apply_unitary(s, qis::kron(qis::gates::pauli_x(), UnitaryOp::identity(1)), {q(1), q(2)});
  EXPECT_NEAR(std::abs(out.amplitude("10") - alpha), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(out.amplitude("01") - beta), 0.0, 1e-15);
}

TEST(ApplyUnitary, MatchesOracleEmbedding) {
  qis_test::Gen g(12);
  const Labels reg = qis::numbered_labels(5);
  for (int k = 0; k < 60; ++k) {
    const std::size_t arity = 1 + g.index(3);
    const auto pos = g.positions(5, arity);
    const auto u = g.unitary(std::size_t{1} << arity);
    const auto psi = g.unit_vector(32);
    const PureState out = qis::apply_unitary(PureState(reg, from_oracle(psi)), UnitaryOp(from_oracle(u)),
                                             qis_test::labels_at(pos, reg));
    EXPECT_LT(oracle::max_diff(to_oracle(out.amplitudes()), oracle::apply(u, pos, 5, psi)), 1e-12);
  }
}

TEST(ApplyUnitary, Errors) {
  const PureState s = bell_phi_plus();
  EXPECT_EQ(error_of([&] { qis::apply_unitary(s, qis::gates::cnot(), {q(1)}); }), qis::ErrorCode::kDimensionMismatch);
  EXPECT_EQ(error_of([&] { qis::apply_unitary(s, qis::gates::pauli_x(), {q(7)}); }), qis::ErrorCode::kUnknownQubit);
  EXPECT_EQ(error_of([&] { qis::apply_unitary(s, qis::gates::cnot(), {q(1), q(1)}); }), qis::ErrorCode::kDuplicateQubit);
}

TEST(UnitaryOp, RejectsNonUnitary) {
  qis::Matrix m(2, 2);
  m << 1, 1, 0, 1;
  EXPECT_EQ(error_of([&] { UnitaryOp{m}; }), qis::ErrorCode::kNotUnitary);
  qis::Matrix nearly = qis::Matrix::Identity(2, 2);
  nearly(0, 0) = 1.0 + 1e-9;
  EXPECT_EQ(error_of([&] { UnitaryOp{nearly}; }), qis::ErrorCode::kNotUnitary);
}

TEST(Kron, MatchesOracle) {
  qis_test::Gen g(13);
  const auto a = g.unitary(2), b = g.unitary(4);
  EXPECT_LT(oracle::max_diff(to_oracle(qis::kron(from_oracle(a), from_oracle(b))), oracle::kron(a, b)), 1e-14);
}

// --- project / enumerate ----------------------------------------------------

TEST(Project, BellOverlapOfBasisState) {
  const std::vector<QubitLabel> targets{q(1), q(2)};
  const qis::Projection p = qis::project(PureState::basis({q(1), q(2)}, 0), bell_phi_plus(), targets);
  EXPECT_NEAR(p.probability, 0.5, 1e-15);
  ASSERT_TRUE(p.post_state);
  EXPECT_EQ(p.post_state->num_qubits(), 0u);
}

TEST(Project, ZeroBranchHasNoState) {
  const std::vector<QubitLabel> targets{q(1)};
  const qis::Projection p = qis::project(PureState::basis({q(1), q(2)}, 0), PureState::basis({q(9)}, 1), targets);
  EXPECT_EQ(p.probability, 0.0);
  EXPECT_FALSE(p.post_state);
}

TEST(Project, DimensionMismatch) {
  const std::vector<QubitLabel> targets{q(1)};
  EXPECT_EQ(error_of([&] { qis::project(bell_phi_plus(), bell_phi_plus(), targets); }), qis::ErrorCode::kDimensionMismatch);
}

TEST(Project, MatchesOracle) {
  qis_test::Gen g(14);
  const Labels reg = qis::numbered_labels(5);
  for (int k = 0; k < 60; ++k) {
    const std::size_t width = 1 + g.index(3);
    const auto pos = g.positions(5, width);
    const auto psi = g.unit_vector(32), v = g.unit_vector(std::size_t{1} << width);
    const Labels targets = qis_test::labels_at(pos, reg);
    const qis::Projection p = qis::project(PureState(reg, from_oracle(psi)), from_oracle(v), targets);
    const oracle::Vec residual = oracle::project(psi, v, pos, 5);
    EXPECT_NEAR(p.probability, oracle::norm2(residual), 1e-13);
    ASSERT_TRUE(p.post_state);
    EXPECT_LT(oracle::max_diff(to_oracle(p.post_state->amplitudes()), oracle::scale(residual, 1.0 / std::sqrt(p.probability))),
              1e-12);
  }
}

TEST(Enumerate, BasisStateInComputationalBasis) {
  const qis::MeasurementBasis z(1, {PureState::basis({q(1)}, 0).amplitudes(), PureState::basis({q(1)}, 1).amplitudes()});
  const std::vector<QubitLabel> targets{q(1)};
  const auto out = qis::enumerate_measurement(PureState::basis({q(1)}, 0), z, targets);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].probability, 1.0);
  EXPECT_TRUE(out[0].possible());
  EXPECT_EQ(out[1].probability, 0.0);
  EXPECT_FALSE(out[1].possible());
}

TEST(Enumerate, RejectsPartialBasis) {
  const qis::MeasurementBasis partial(1, {PureState::basis({q(1)}, 0).amplitudes()});
  const std::vector<QubitLabel> targets{q(1)};
  EXPECT_EQ(error_of([&] { qis::enumerate_measurement(PureState::basis({q(1)}, 0), partial, targets); }),
            qis::ErrorCode::kIncompleteBasis);
}

TEST(MeasurementBasis, RejectsNonOrthogonal) {
  Vector a(2), b(2);
  a << 1, 0;
  b << kR, kR;
  EXPECT_EQ(error_of([&] { qis::MeasurementBasis(1, {a, b}); }), qis::ErrorCode::kNotOrthonormal);
}

TEST(MeasurementBasis, CompletionIsDeterministicAndMarked) {
  const qis::MeasurementBasis partial(2, {bell_phi_plus().amplitudes()});
  const qis::MeasurementBasis c1 = partial.completed(), c2 = partial.completed();
  ASSERT_TRUE(c1.is_complete());
  EXPECT_EQ(c1.listed(), 1u);
  EXPECT_FALSE(c1.is_completion(0));
  EXPECT_TRUE(c1.is_completion(3));
  EXPECT_LT(qis::gram_defect(c1.vectors()), kTol);
  for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(c1.vector(i), c2.vector(i));
}

TEST(CompleteToUnitary, MapsListedPairs) {
  Vector d0 = bell_phi_plus().amplitudes(), c0 = PureState::basis({q(1), q(2)}, 2).amplitudes();
  const qis::Matrix u = qis::complete_to_unitary({d0}, {c0}, 4);
  EXPECT_LT(UnitaryOp::unitarity_defect(u), 1e-12);
  EXPECT_LT((u * d0 - c0).cwiseAbs().maxCoeff(), 1e-12);
}

// --- density matrices -------------------------------------------------------

TEST(ReducedDensity, BellMarginalIsMixed) {
  const qis::DensityMatrix rho = qis::reduced_density(bell_phi_plus(), {q(1)});
  EXPECT_LT((rho.matrix() - 0.5 * qis::Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(ReducedDensity, ProductMarginal) {
  const PureState s = qis::tensor(PureState::from_terms({q(1)}, {{0.6, "0"}, {0.8, "1"}}), PureState::basis({q(2)}, 0));
  const qis::DensityMatrix rho = qis::reduced_density(s, {q(2)});
  EXPECT_NEAR(rho.matrix()(0, 0).real(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(rho.matrix()(1, 1)), 0.0, 1e-15);
}

TEST(ReducedDensity, MatchesOracle) {
  qis_test::Gen g(15);
  const Labels reg = qis::numbered_labels(5);
  for (int k = 0; k < 40; ++k) {
    const std::size_t width = 1 + g.index(4);
    const auto pos = g.positions(5, width);
    const auto psi = g.unit_vector(32);
    const qis::DensityMatrix rho = qis::reduced_density(PureState(reg, from_oracle(psi)), qis_test::labels_at(pos, reg));
    EXPECT_LT(oracle::max_diff(to_oracle(rho.matrix()), oracle::partial_trace(psi, pos, 5)), 1e-13);
  }
}

TEST(ReducedDensity, Errors) {
  EXPECT_THROW(qis::reduced_density(bell_phi_plus(), std::vector<QubitLabel>{}), qis::Error);
  EXPECT_THROW(qis::reduced_density(bell_phi_plus(), {q(5)}), qis::Error);
}

TEST(DensityMatrix, RejectsInvalid) {
  qis::Matrix m = qis::Matrix::Zero(2, 2);
  m(0, 0) = 1.5;
  m(1, 1) = -0.5;
  EXPECT_THROW(qis::DensityMatrix({q(1)}, m), qis::Error);
  m(0, 0) = 0.5;
  m(1, 1) = 0.5;
  m(0, 1) = 0.2;
  EXPECT_THROW(qis::DensityMatrix({q(1)}, m), qis::Error);  // not Hermitian
}

TEST(SchmidtRank, BellAndProduct) {
  const std::vector<QubitLabel> one{q(1)};
  EXPECT_EQ(qis::schmidt_rank(bell_phi_plus(), one), 2u);
  EXPECT_EQ(qis::schmidt_rank(PureState::basis({q(1), q(2)}, 3), one), 1u);
  const std::vector<QubitLabel> none;
  EXPECT_THROW(qis::schmidt_rank(bell_phi_plus(), none), qis::Error);
}

TEST(EqualUpToGlobalPhase, Basics) {
  const PureState a = bell_phi_plus();
  const PureState minus_a(a.labels(), -a.amplitudes());
  EXPECT_TRUE(qis::equal_up_to_global_phase(a, minus_a));
  EXPECT_FALSE(qis::equal_up_to_global_phase(PureState::basis({q(1)}, 0), PureState::basis({q(1)}, 1)));
  EXPECT_THROW(qis::equal_up_to_global_phase(a, PureState::basis({q(1)}, 0)), qis::Error);
}

TEST(AlignedMaxDeviation, IgnoresGlobalPhaseOnly) {
  const PureState a = bell_phi_plus();
  const PureState rotated(a.labels(), std::polar(1.0, 0.7) * a.amplitudes());
  EXPECT_LT(qis::aligned_max_deviation(a, rotated), 1e-15);
  EXPECT_NEAR(qis::aligned_max_deviation(a, qis::apply_unitary(a, qis::gates::pauli_z(), {q(1)})), 2 * kR, 1e-12);
}

TEST(TraceDistance, Extremes) {
  const qis::DensityMatrix zero = qis::DensityMatrix::pure(PureState::basis({q(1)}, 0));
  const qis::DensityMatrix one = qis::DensityMatrix::pure(PureState::basis({q(1)}, 1));
  EXPECT_NEAR(qis::trace_distance(zero, zero), 0.0, 1e-15);
  EXPECT_NEAR(qis::trace_distance(zero, one), 1.0, 1e-15);
}

TEST(Rng, SeedIsReproducible) {
  qis::Rng a(42), b(42);
  for (int k = 0; k < 10; ++k) EXPECT_EQ(a.uniform(), b.uniform());
  qis::Rng c(42);
  const std::vector<std::size_t> support{0, 3};
  const PureState s = qis::random_state(c, {q(1), q(2)}, support);
  EXPECT_EQ(s.amplitude(1), Amplitude(0.0));
  EXPECT_EQ(s.amplitude(2), Amplitude(0.0));
}

}  // namespace

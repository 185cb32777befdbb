// SPDX-License-Identifier: Apache-2.0
//
// lisproc: distributed uplink processing for panelized large intelligent surfaces
// Copyright (C) 2026 The lisproc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "test_helpers.hpp"

#include <gtest/gtest.h>

using namespace lis;
using lis::testing::random_hermitian;
using lis::testing::random_matrix;

TEST(Eigh, IdentityHasUnitEigenvalues)
{
    const auto e = eigh(CMatrix::Identity(3, 3));
    for (int k = 0; k < 3; ++k)
        EXPECT_NEAR(e.eigenvalues(k), 1.0, 1e-15);
    EXPECT_LE(semi_unitary_residual(e.eigenvectors), 1e-14);
}

TEST(Eigh, DiagonalIsSortedDescendingWithMatchingVectors)
{
    CMatrix a = CMatrix::Zero(3, 3);
    a(0, 0) = 1.0;
    a(1, 1) = 4.0;
    a(2, 2) = 2.0;
    const auto e = eigh(a);
    EXPECT_NEAR(e.eigenvalues(0), 4.0, 1e-14);
    EXPECT_NEAR(e.eigenvalues(1), 2.0, 1e-14);
    EXPECT_NEAR(e.eigenvalues(2), 1.0, 1e-14);
    // Basis vectors e_1, e_2, e_0 with the real-positive phase convention.
    EXPECT_NEAR(std::abs(e.eigenvectors(1, 0) - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(e.eigenvectors(2, 1) - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(e.eigenvectors(0, 2) - 1.0), 0.0, 1e-14);
}

TEST(Eigh, RandomHermitianReconstructs)
{
    Rng rng(11);
    for (int trial = 0; trial < 5; ++trial)
    {
        const CMatrix a = random_hermitian(rng, 8);
        const auto e = eigh(a);
        const CMatrix rec = e.eigenvectors * e.eigenvalues.asDiagonal() * e.eigenvectors.adjoint();
        EXPECT_LE((rec - a).norm() / a.norm(), 1e-10);
        EXPECT_LE(semi_unitary_residual(e.eigenvectors), 1e-10);
        for (int k = 1; k < 8; ++k)
            EXPECT_GE(e.eigenvalues(k - 1), e.eigenvalues(k));
        for (int k = 0; k < 8; ++k)
            EXPECT_LE((a * e.eigenvectors.col(k) - e.eigenvalues(k) * e.eigenvectors.col(k)).norm(),
                      1e-10 * a.norm());
    }
}

TEST(Eigh, PhaseConventionMakesFirstComponentRealPositive)
{
    Rng rng(3);
    const auto e = eigh(random_hermitian(rng, 5));
    for (int k = 0; k < 5; ++k)
    {
        EXPECT_GT(e.eigenvectors(0, k).real(), 0.0);
        EXPECT_NEAR(e.eigenvectors(0, k).imag(), 0.0, 1e-14);
    }
}

TEST(Eigh, RejectsNonHermitian)
{
    CMatrix a = CMatrix::Identity(2, 2);
    a(0, 1) = 1.0;
    EXPECT_THROW(eigh(a), InvalidArgument);
}

TEST(Eigh, DeterministicForIdenticalInput)
{
    Rng rng(5);
    const CMatrix a = random_hermitian(rng, 6);
    const auto e1 = eigh(a);
    const auto e2 = eigh(a);
    EXPECT_EQ(e1.eigenvalues, e2.eigenvalues);
    EXPECT_EQ(e1.eigenvectors, e2.eigenvectors);
}

TEST(Svd, ZeroMatrixHasZeroSingularValues)
{
    const auto d = svd(CMatrix::Zero(4, 3));
    ASSERT_EQ(d.sigma.size(), 3);
    for (int k = 0; k < 3; ++k)
        EXPECT_EQ(d.sigma(k), 0.0);
}

TEST(Svd, DiagonalValues)
{
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = 3.0;
    const auto d = svd(a);
    EXPECT_NEAR(d.sigma(0), 3.0, 1e-14);
    EXPECT_NEAR(d.sigma(1), 1.0, 1e-14);
}

TEST(Svd, RandomTallReconstructs)
{
    Rng rng(21);
    const CMatrix a = random_matrix(rng, 16, 4);
    const auto d = svd(a);
    const CMatrix rec = d.u * d.sigma.asDiagonal() * d.v.adjoint();
    EXPECT_LE((rec - a).norm() / a.norm(), 1e-10);
    EXPECT_LE(semi_unitary_residual(d.u), 1e-10);
    EXPECT_LE(semi_unitary_residual(d.v), 1e-10);
    for (int k = 1; k < 4; ++k)
        EXPECT_GE(d.sigma(k - 1), d.sigma(k));
}

TEST(Svd, FullLeftBasisCompletesToUnitary)
{
    Rng rng(22);
    const CMatrix a = random_matrix(rng, 6, 2);
    const auto d = svd(a, true);
    ASSERT_EQ(d.u.cols(), 6);
    EXPECT_LE(semi_unitary_residual(d.u), 1e-10);
    // Complement columns are orthogonal to the range of A.
    EXPECT_LE((d.u.rightCols(4).adjoint() * a).norm(), 1e-10 * a.norm());
}

TEST(InvSqrtPsd, Identity)
{
    EXPECT_LE((inv_sqrt_psd(CMatrix::Identity(3, 3)) - CMatrix::Identity(3, 3)).norm(), 1e-14);
}

TEST(InvSqrtPsd, Diagonal)
{
    CMatrix z = CMatrix::Zero(2, 2);
    z(0, 0) = 4.0;
    z(1, 1) = 1.0;
    CMatrix expect = CMatrix::Zero(2, 2);
    expect(0, 0) = 0.5;
    expect(1, 1) = 1.0;
    EXPECT_LE((inv_sqrt_psd(z) - expect).norm(), 1e-14);
}

TEST(InvSqrtPsd, WhitensRankOneUpdate)
{
    Rng rng(8);
    for (int trial = 0; trial < 5; ++trial)
    {
        const CMatrix h = random_matrix(rng, 6, 1);
        const CMatrix z = hermitian_part(CMatrix::Identity(6, 6) + 7.5 * h * h.adjoint());
        const CMatrix r = inv_sqrt_psd(z);
        EXPECT_LE((r.adjoint() * z * r - CMatrix::Identity(6, 6)).norm(), 1e-9);
    }
}

TEST(InvSqrtPsd, RejectsNegativeEigenvalue)
{
    CMatrix z = CMatrix::Identity(2, 2);
    z(1, 1) = -1e-3;
    EXPECT_THROW(inv_sqrt_psd(z), InvalidArgument);
}

TEST(InvSqrtPsd, FloorsSingularDirections)
{
    CMatrix z = CMatrix::Zero(2, 2);
    z(0, 0) = 1.0;
    const CMatrix r = inv_sqrt_psd(z, 1e-4);
    EXPECT_NEAR(std::abs(r(1, 1)), 100.0, 1e-9);
}

TEST(LogdetHpd, IdentityIsZero)
{
    EXPECT_NEAR(logdet_hpd(CMatrix::Identity(5, 5)), 0.0, 1e-15);
}

TEST(LogdetHpd, Diagonal)
{
    CMatrix a = CMatrix::Zero(2, 2);
    a(0, 0) = 2.0;
    a(1, 1) = 8.0;
    EXPECT_NEAR(logdet_hpd(a), std::log(16.0), 1e-14);
}

TEST(LogdetHpd, MatchesEigenvalueSum)
{
    Rng rng(9);
    for (int trial = 0; trial < 5; ++trial)
    {
        const CMatrix g = random_matrix(rng, 7, 5);
        const CMatrix a = hermitian_part(CMatrix::Identity(5, 5) + g.adjoint() * g);
        double oracle = 0.0;
        const auto e = eigh(a);
        for (int k = 0; k < 5; ++k)
            oracle += std::log(e.eigenvalues(k));
        EXPECT_NEAR(logdet_hpd(a), oracle, 1e-9);
    }
}

TEST(LogdetHpd, RejectsIndefinite)
{
    CMatrix a = CMatrix::Identity(2, 2);
    a(1, 1) = -1.0;
    EXPECT_THROW(logdet_hpd(a), NumericalError);
}

TEST(Orthonormality, IllConditionedResidualStaysSmall)
{
    // Condition number ~1e8.
    Rng rng(12);
    const CMatrix a = random_matrix(rng, 10, 4);
    auto d = svd(a);
    RVector s(4);
    s << 1.0, 1e-3, 1e-6, 1e-8;
    const CMatrix b = d.u * s.asDiagonal() * d.v.adjoint();
    const auto db = svd(b);
    EXPECT_LE(semi_unitary_residual(db.u), 1e-10);
    EXPECT_LE(semi_unitary_residual(db.v), 1e-10);
    const auto e = eigh(hermitian_part(b.adjoint() * b * 1e8));
    EXPECT_LE(semi_unitary_residual(e.eigenvectors), 1e-10);
}

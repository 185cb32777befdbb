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

#ifndef LISPROC_NUMERICS_HPP
#define LISPROC_NUMERICS_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace lis
{

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Base for every error raised by the library. Precondition violations on
// user-supplied parameters raise the InvalidArgument subclass.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error
{
  public:
    using Error::Error;
};

class NumericalError : public Error
{
  public:
    using Error::Error;
};

inline void require(bool cond, const std::string &msg)
{
    if (!cond)
        throw InvalidArgument(msg);
}

// Eigen-decomposition of a Hermitian matrix, eigenvalues in descending order.
struct HermitianEigen
{
    RVector eigenvalues;
    CMatrix eigenvectors;
};

// A = U diag(sigma) V^H with sigma descending. U is thin (rows x min) unless
// the full left basis was requested.
struct SingularDecomp
{
    CMatrix u;
    RVector sigma;
    CMatrix v;
};

namespace detail
{

inline bool all_finite(const CMatrix &a)
{
    return a.allFinite();
}

// Rotate each column so that its first component with non-negligible
// magnitude is real and positive. Returns the applied phases.
inline std::vector<cdouble> normalize_column_phases(CMatrix &vecs)
{
    std::vector<cdouble> phases(static_cast<size_t>(vecs.cols()), cdouble(1.0, 0.0));
    for (Eigen::Index c = 0; c < vecs.cols(); ++c)
    {
        const double scale = vecs.col(c).norm();
        if (scale == 0.0)
            continue;
        for (Eigen::Index r = 0; r < vecs.rows(); ++r)
        {
            const cdouble x = vecs(r, c);
            if (std::abs(x) > 1e-12 * scale)
            {
                const cdouble p = std::conj(x) / std::abs(x);
                vecs.col(c) *= p;
                phases[static_cast<size_t>(c)] = p;
                break;
            }
        }
    }
    return phases;
}

// Permutation that sorts `values` descending; ties keep their input order.
inline std::vector<Eigen::Index> descending_order(const RVector &values)
{
    std::vector<Eigen::Index> idx(static_cast<size_t>(values.size()));
    std::iota(idx.begin(), idx.end(), Eigen::Index{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return values(a) > values(b); });
    return idx;
}

} // namespace detail

inline double hermitian_residual(const CMatrix &a)
{
    return (a - a.adjoint()).norm();
}

inline bool is_hermitian(const CMatrix &a, double rel_tol = 1e-10)
{
    if (a.rows() != a.cols())
        return false;
    const double scale = std::max(a.norm(), 1e-300);
    return hermitian_residual(a) <= rel_tol * scale;
}

inline CMatrix hermitian_part(const CMatrix &a)
{
    return 0.5 * (a + a.adjoint());
}

inline HermitianEigen eigh(const CMatrix &a)
{
    if (a.rows() != a.cols())
        throw InvalidArgument("eigh: matrix must be square");
    if (!detail::all_finite(a))
        throw NumericalError("eigh: non-finite entries");
    if (!is_hermitian(a))
        throw InvalidArgument("eigh: matrix is not Hermitian within 1e-10 relative");

    HermitianEigen out;
    const Eigen::Index n = a.rows();
    if (n == 0)
        return out;

    Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitian_part(a));
    if (solver.info() != Eigen::Success)
        throw NumericalError("eigh: eigen-solver did not converge");

    // Ties keep the solver's (ascending) output order.
    const RVector asc = solver.eigenvalues();
    const auto order = detail::descending_order(asc);
    out.eigenvalues.resize(n);
    out.eigenvectors.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k)
    {
        const Eigen::Index src = order[static_cast<size_t>(k)];
        out.eigenvalues(k) = asc(src);
        out.eigenvectors.col(k) = solver.eigenvectors().col(src);
    }
    detail::normalize_column_phases(out.eigenvectors);
    return out;
}

// With full_u the left basis is completed to a square unitary matrix; the
// extra columns span the orthogonal complement of the range of A.
inline SingularDecomp svd(const CMatrix &a, bool full_u = false)
{
    if (!detail::all_finite(a))
        throw NumericalError("svd: non-finite entries");

    SingularDecomp out;
    const Eigen::Index rows = a.rows(), cols = a.cols();
    const Eigen::Index r = std::min(rows, cols);
    if (rows == 0 || cols == 0)
    {
        out.u = full_u ? CMatrix::Identity(rows, rows) : CMatrix(rows, 0);
        out.v = CMatrix(cols, 0);
        return out;
    }

    const unsigned opts = (full_u ? Eigen::ComputeFullU : Eigen::ComputeThinU) | Eigen::ComputeThinV;
    Eigen::JacobiSVD<CMatrix> solver(a, opts);

    const RVector sv = solver.singularValues();
    const auto order = detail::descending_order(sv);
    out.sigma.resize(r);
    out.u = solver.matrixU();
    out.v.resize(cols, r);
    for (Eigen::Index k = 0; k < r; ++k)
    {
        const Eigen::Index src = order[static_cast<size_t>(k)];
        out.sigma(k) = sv(src);
        out.u.col(k) = solver.matrixU().col(src);
        out.v.col(k) = solver.matrixV().col(src);
    }

    // Phase convention on U; V follows so the product is unchanged.
    const auto phases = detail::normalize_column_phases(out.u);
    for (Eigen::Index k = 0; k < r; ++k)
        out.v.col(k) *= phases[static_cast<size_t>(k)];
    return out;
}

inline double default_eigen_floor(const RVector &eigenvalues)
{
    const double top = eigenvalues.size() > 0 ? eigenvalues.maxCoeff() : 0.0;
    return 1e-12 * (top > 0.0 ? top : 1.0);
}

// Returns U_z S_z^{-1/2} for Z = U_z S_z U_z^H, so that R^H Z R = I.
// A negative eigen_floor selects the default floor.
inline CMatrix inv_sqrt_psd(const CMatrix &z, double eigen_floor = -1.0)
{
    const HermitianEigen e = eigh(z);
    if (e.eigenvalues.size() > 0 && e.eigenvalues.minCoeff() < -1e-10)
        throw InvalidArgument("inv_sqrt_psd: matrix has a negative eigenvalue");

    const double floor = eigen_floor < 0.0 ? default_eigen_floor(e.eigenvalues) : eigen_floor;
    CMatrix out = e.eigenvectors;
    for (Eigen::Index k = 0; k < out.cols(); ++k)
        out.col(k) /= std::sqrt(std::max(e.eigenvalues(k), floor));
    return out;
}

// Natural-log determinant of a Hermitian positive-definite matrix (Cholesky).
inline double logdet_hpd(const CMatrix &a)
{
    if (a.rows() != a.cols())
        throw InvalidArgument("logdet_hpd: matrix must be square");
    if (!is_hermitian(a))
        throw InvalidArgument("logdet_hpd: matrix is not Hermitian");

    Eigen::LLT<CMatrix> llt(hermitian_part(a));
    if (llt.info() != Eigen::Success)
        throw NumericalError("logdet_hpd: matrix is not positive definite");
    double acc = 0.0;
    const CMatrix &l = llt.matrixLLT();
    for (Eigen::Index k = 0; k < a.rows(); ++k)
    {
        const double d = l(k, k).real();
        if (!(d > 0.0))
            throw NumericalError("logdet_hpd: non-positive pivot");
        acc += 2.0 * std::log(d);
    }
    return acc;
}

inline double log2det_hpd(const CMatrix &a)
{
    return logdet_hpd(a) / std::log(2.0);
}

// Orthonormal basis of the columns of W (thin left singular vectors).
inline CMatrix orthonormal_basis(const CMatrix &w)
{
    return svd(w).u;
}

inline double semi_unitary_residual(const CMatrix &w)
{
    return (w.adjoint() * w - CMatrix::Identity(w.cols(), w.cols())).norm();
}

inline CMatrix block_diagonal(const std::vector<CMatrix> &blocks)
{
    Eigen::Index rows = 0, cols = 0;
    for (const auto &b : blocks)
    {
        rows += b.rows();
        cols += b.cols();
    }
    CMatrix out = CMatrix::Zero(rows, cols);
    Eigen::Index r = 0, c = 0;
    for (const auto &b : blocks)
    {
        out.block(r, c, b.rows(), b.cols()) = b;
        r += b.rows();
        c += b.cols();
    }
    return out;
}

inline CMatrix vstack(const std::vector<CMatrix> &blocks)
{
    if (blocks.empty())
        return CMatrix();
    Eigen::Index rows = 0;
    const Eigen::Index cols = blocks.front().cols();
    for (const auto &b : blocks)
    {
        if (b.cols() != cols)
            throw InvalidArgument("vstack: column count mismatch");
        rows += b.rows();
    }
    CMatrix out(rows, cols);
    Eigen::Index r = 0;
    for (const auto &b : blocks)
    {
        out.middleRows(r, b.rows()) = b;
        r += b.rows();
    }
    return out;
}

} // namespace lis

#endif // LISPROC_NUMERICS_HPP

// Copyright 2026 The pqcm Authors
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

#ifndef PQCM_QCORE_H
#define PQCM_QCORE_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "pqcm/errors.h"
#include "pqcm/rng.h"

namespace pqcm {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

inline constexpr double NORM_TOL = 1e-10;
inline constexpr double HERM_TOL = 1e-10;
inline constexpr double RANK_TOL = 1e-9;
inline constexpr double PSD_TOL = 1e-9;
inline constexpr double ORTHONORMAL_TOL = 1e-9;
inline constexpr size_t MAX_DIM = size_t{1} << 24;

/// A normalized pure state. Every Ket in the library has unit norm.
class Ket {
   public:
    /// Rescales `amplitudes` to unit norm. Throws DimensionError on an empty
    /// or zero vector.
    static Ket normalized(Vector amplitudes);
    static Ket normalized(std::initializer_list<Complex> amplitudes);
    /// Computational basis vector |k> of dimension `dim`.
    static Ket basis(size_t dim, size_t k);

    size_t dim() const noexcept {
        return static_cast<size_t>(amps_.size());
    }
    const Vector &amplitudes() const noexcept {
        return amps_;
    }
    Complex operator[](size_t k) const {
        return amps_[static_cast<Eigen::Index>(k)];
    }

   private:
    explicit Ket(Vector amps) : amps_(std::move(amps)) {
    }
    Vector amps_;
};

/// Dense Hermitian matrix. Construction checks Hermiticity within HERM_TOL
/// and symmetrizes the stored entries.
class HermitianOperator {
   public:
    static HermitianOperator from_matrix(const Matrix &m, double tol = HERM_TOL);
    static HermitianOperator identity(size_t dim);
    /// |ket><ket|
    static HermitianOperator projector(const Ket &ket);

    size_t dim() const noexcept {
        return static_cast<size_t>(m_.rows());
    }
    const Matrix &matrix() const noexcept {
        return m_;
    }
    Complex operator()(size_t i, size_t j) const {
        return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    double trace() const {
        return m_.trace().real();
    }

   private:
    explicit HermitianOperator(Matrix m) : m_(std::move(m)) {
    }
    Matrix m_;
};

struct EnsembleMember {
    Ket state;
    double prob;
};

/// Weighted list of pure states with probabilities summing to one.
class Ensemble {
   public:
    explicit Ensemble(std::vector<EnsembleMember> members);

    size_t size() const noexcept {
        return members_.size();
    }
    size_t dim() const noexcept {
        return members_.front().state.dim();
    }
    const std::vector<EnsembleMember> &members() const noexcept {
        return members_;
    }
    const EnsembleMember &operator[](size_t k) const {
        return members_[k];
    }
    /// sum_k p_k |psi_k><psi_k|
    HermitianOperator density_matrix() const;

   private:
    std::vector<EnsembleMember> members_;
};

struct Eigensystem {
    std::vector<double> values;  // ascending
    Matrix vectors;              // columns are eigenvectors
};

enum class Subsystem { A, B };

struct Measurement {
    size_t outcome;
    Ket post_state;
};

Complex inner_product(const Ket &a, const Ket &b);

/// Kronecker product; component (i * b.dim() + j) is a_i * b_j.
Ket tensor(const Ket &a, const Ket &b, size_t max_dim = MAX_DIM);
/// ket^{(x) copies}. copies == 0 yields the scalar state of dimension 1.
Ket tensor_power(const Ket &ket, size_t copies, size_t max_dim = MAX_DIM);
/// Checked dim^copies, throwing CapacityError above max_dim.
size_t checked_power(size_t dim, size_t copies, size_t max_dim = MAX_DIM);

HermitianOperator gram_matrix(std::span<const Ket> states);

std::vector<double> hermitian_eigenvalues(const HermitianOperator &m);
Eigensystem hermitian_eigensystem(const HermitianOperator &m);
double min_eigenvalue(const HermitianOperator &m);

/// Number of Gram eigenvalues above tol times the largest one.
size_t rank_with_tolerance(std::span<const Ket> states, double tol = RANK_TOL);

bool is_psd(const HermitianOperator &m, double tol = PSD_TOL);

/// Principal square root of a PSD operator. Eigenvalues in [-tol, 0) are
/// clamped to zero; anything more negative raises HermiticityError.
Matrix psd_sqrt(const HermitianOperator &m, double tol = PSD_TOL);

HermitianOperator partial_trace(const HermitianOperator &rho, size_t dim_a, size_t dim_b, Subsystem keep);

double trace_distance(const HermitianOperator &rho, const HermitianOperator &sigma);

/// Throws BasisError unless `basis` is a complete orthonormal basis of
/// dimension `dim`.
void require_orthonormal_basis(std::span<const Ket> basis, size_t dim, double tol = ORTHONORMAL_TOL);

/// |<basis_k|state>|^2 for each k.
std::vector<double> born_probabilities(const Ket &state, std::span<const Ket> basis);

/// Projective measurement of `state` in an orthonormal basis.
Measurement born_measure(const Ket &state, std::span<const Ket> basis, SeededRng &rng);

/// Measures the A factor of a joint state on A (x) B in the given basis of A.
/// The returned post_state is the normalized conditional state of B.
Measurement measure_subsystem(const Ket &joint, size_t dim_a, size_t dim_b, std::span<const Ket> basis_a, SeededRng &rng);

/// Unnormalized conditional B vector (<a| (x) I)|joint>.
Vector conditional_vector(const Ket &joint, size_t dim_a, size_t dim_b, const Ket &a);

}  // namespace pqcm

#endif

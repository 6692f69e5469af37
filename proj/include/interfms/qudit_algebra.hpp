// Copyright 2026 The Interf-MS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

namespace interfms {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

/// Maximum entrywise deviation of G^dagger G from the identity that is still
/// accepted as unitary.
inline constexpr double kUnitarityTol = 1e-12;

/// Index of a basis state |k>_mass |s>_path of the two-qudit space.
///
/// The composite basis is mass-major: |k, s> lives at flat index N*k + s, so
/// the diagonal of C(Z_3) reads (1, 1, 1, 1, w, w^2, 1, w^2, w).
struct BasisIndex {
  std::size_t mass = 0;
  std::size_t path = 0;

  std::size_t flat(std::size_t n) const { return n * mass + path; }
  static BasisIndex from_flat(std::size_t flat, std::size_t n) {
    return {flat / n, flat % n};
  }
  friend bool operator==(const BasisIndex&, const BasisIndex&) = default;
};

/// Dense unitary acting on the path qudit (dim N) or on mass (x) path
/// (dim N^2). Construction always checks unitarity.
class GateMatrix {
 public:
  /// Throws NonUnitary if the matrix is not square or fails the unitarity
  /// check at `tol`.
  static GateMatrix from_matrix(Matrix m, double tol = kUnitarityTol);
  static GateMatrix identity(std::size_t dim);
  /// diag(exp(i * phases[j])).
  static GateMatrix diagonal_phases(std::span<const double> phases);
  /// Block-diagonal assembly; each block must be square and unitary.
  static GateMatrix block_diagonal(std::span<const Matrix> blocks, double tol = kUnitarityTol);

  std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const { return m_; }
  Complex operator()(std::size_t row, std::size_t col) const {
    return m_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }

  GateMatrix adjoint() const;
  /// max_ij |(G^dagger G - I)_ij|
  double unitarity_defect() const;

  friend GateMatrix operator*(const GateMatrix& a, const GateMatrix& b);

 private:
  explicit GateMatrix(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

/// Kronecker product a (x) b; the left factor indexes the slow (mass) axis.
GateMatrix kron(const GateMatrix& a, const GateMatrix& b);

/// I (x) g: lifts a path-qudit gate onto the two-qudit space.
GateMatrix on_path(const GateMatrix& g);

/// The unitary DFT, F_{jk} = w^{jk} / sqrt(N), w = exp(2 pi i / N).
/// Throws InvalidDimension for n = 0.
GateMatrix dft_matrix(std::size_t n);

/// C(Z_N): |k, s> -> w^{ks} |k, s>.
GateMatrix controlled_z(std::size_t n);

/// C(X_N) = (I (x) F^dagger) C(Z_N) (I (x) F), i.e. |k, s> -> |k, s + k mod N>.
GateMatrix controlled_x(std::size_t n);

/// g * state. Throws DimensionMismatch on size mismatch and DomainError if
/// the input is not normalised to within kUnitarityTol.
StateVector apply(const GateMatrix& g, const StateVector& state);

/// max_ij |a_ij - b_ij|; throws DimensionMismatch on size mismatch.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace interfms

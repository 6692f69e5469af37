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

#include "interfms/qudit_algebra.hpp"

#include <cmath>
#include <string>

#include "interfms/constants.hpp"
#include "interfms/errors.hpp"

namespace interfms {

namespace {

void require_dim(std::size_t n) {
  if (n == 0) throw InvalidDimension("qudit dimension must be at least 1");
}

Complex root_of_unity_power(std::size_t n, std::size_t exponent) {
  // Reduce first so large exponents keep full accuracy.
  const double angle = kTwoPi * static_cast<double>(exponent % n) / static_cast<double>(n);
  return std::polar(1.0, angle);
}

}  // namespace

GateMatrix GateMatrix::from_matrix(Matrix m, double tol) {
  if (m.rows() != m.cols() || m.rows() == 0) {
    throw NonUnitary("gate matrix must be square and non-empty");
  }
  GateMatrix g(std::move(m));
  const double defect = g.unitarity_defect();
  if (!(defect <= tol)) {
    throw NonUnitary("matrix is not unitary (defect " + std::to_string(defect) + ")");
  }
  return g;
}

GateMatrix GateMatrix::identity(std::size_t dim) {
  require_dim(dim);
  const auto d = static_cast<Eigen::Index>(dim);
  return GateMatrix(Matrix::Identity(d, d));
}

GateMatrix GateMatrix::diagonal_phases(std::span<const double> phases) {
  require_dim(phases.size());
  const auto d = static_cast<Eigen::Index>(phases.size());
  Matrix m = Matrix::Zero(d, d);
  for (Eigen::Index j = 0; j < d; ++j) m(j, j) = std::polar(1.0, phases[static_cast<std::size_t>(j)]);
  return GateMatrix(std::move(m));
}

GateMatrix GateMatrix::block_diagonal(std::span<const Matrix> blocks, double tol) {
  Eigen::Index total = 0;
  for (const Matrix& b : blocks) {
    // Validates squareness and unitarity of the block on its own.
    (void)from_matrix(b, tol);
    total += b.rows();
  }
  if (total == 0) throw InvalidDimension("block-diagonal gate needs at least one block");
  Matrix m = Matrix::Zero(total, total);
  Eigen::Index offset = 0;
  for (const Matrix& b : blocks) {
    m.block(offset, offset, b.rows(), b.cols()) = b;
    offset += b.rows();
  }
  return GateMatrix(std::move(m));
}

GateMatrix GateMatrix::adjoint() const { return GateMatrix(m_.adjoint()); }

double GateMatrix::unitarity_defect() const {
  const Matrix gram = m_.adjoint() * m_;
  return (gram - Matrix::Identity(m_.rows(), m_.cols())).cwiseAbs().maxCoeff();
}

GateMatrix operator*(const GateMatrix& a, const GateMatrix& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("cannot compose gates of dimension " + std::to_string(a.dim()) +
                            " and " + std::to_string(b.dim()));
  }
  return GateMatrix(a.m_ * b.m_);
}

GateMatrix kron(const GateMatrix& a, const GateMatrix& b) {
  const Matrix& ma = a.matrix();
  const Matrix& mb = b.matrix();
  const Eigen::Index rb = mb.rows();
  Matrix out(ma.rows() * rb, ma.cols() * rb);
  for (Eigen::Index i = 0; i < ma.rows(); ++i) {
    for (Eigen::Index j = 0; j < ma.cols(); ++j) {
      out.block(i * rb, j * rb, rb, rb) = ma(i, j) * mb;
    }
  }
  return GateMatrix::from_matrix(std::move(out));
}

GateMatrix on_path(const GateMatrix& g) { return kron(GateMatrix::identity(g.dim()), g); }

GateMatrix dft_matrix(std::size_t n) {
  require_dim(n);
  const auto d = static_cast<Eigen::Index>(n);
  const double norm = 1.0 / std::sqrt(static_cast<double>(n));
  Matrix m(d, d);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = 0; k < n; ++k) {
      m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
          norm * root_of_unity_power(n, j * k);
    }
  }
  return GateMatrix::from_matrix(std::move(m));
}

GateMatrix controlled_z(std::size_t n) {
  require_dim(n);
  const auto d = static_cast<Eigen::Index>(n * n);
  Matrix m = Matrix::Zero(d, d);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t s = 0; s < n; ++s) {
      const auto flat = static_cast<Eigen::Index>(BasisIndex{k, s}.flat(n));
      m(flat, flat) = root_of_unity_power(n, k * s);
    }
  }
  return GateMatrix::from_matrix(std::move(m));
}

GateMatrix controlled_x(std::size_t n) {
  const GateMatrix f = on_path(dft_matrix(n));
  return f.adjoint() * controlled_z(n) * f;
}

StateVector apply(const GateMatrix& g, const StateVector& state) {
  if (static_cast<std::size_t>(state.size()) != g.dim()) {
    throw DimensionMismatch("state of length " + std::to_string(state.size()) +
                            " does not match gate dimension " + std::to_string(g.dim()));
  }
  if (std::abs(state.norm() - 1.0) > kUnitarityTol) {
    throw DomainError("input state is not normalised");
  }
  return g.matrix() * state;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionMismatch("matrices differ in shape");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace interfms

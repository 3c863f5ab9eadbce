// Copyright 2026 The qmarkov Authors
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

#include <Eigen/Dense>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace qmarkov {

using Complex = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Largest total Hilbert-space dimension a density operator may have.
inline constexpr int kMaxTotalDim = 256;

inline constexpr double kTraceTol = 1e-10;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPositivityTol = 1e-10;
inline constexpr double kRankTol = 1e-10;
/// Eigenvalues below this are treated as zero before taking logarithms.
inline constexpr double kEigenClip = 1e-12;

/*******************************************************************************
 * ERRORS
 ******************************************************************************/

/// Unknown, duplicated, or otherwise invalid subsystem label.
struct LabelError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Dimensions that do not compose.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Matrix data that violates a state, channel, or isometry invariant.
struct InvariantError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Supplied decomposition data that does not reproduce the object it claims.
struct ConsistencyError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Input outside the domain of an operation (e.g. a zero marginal).
struct DegenerateInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Unknown name or out-of-range parameter.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/*******************************************************************************
 * LABELED SPACES
 ******************************************************************************/

struct Subsystem {
  std::string label;
  int dim = 1;

  friend bool operator==(const Subsystem&, const Subsystem&) = default;
};

using Dims = std::vector<Subsystem>;
using Labels = std::vector<std::string>;

int total_dim(const Dims& dims);
/// Position of `label` in `dims`; throws LabelError when absent.
int index_of(const Dims& dims, const std::string& label);
bool has_label(const Dims& dims, const std::string& label);
/// Throws LabelError on duplicates or empty labels, ShapeError on dim < 1.
void check_dims(const Dims& dims);
Labels labels_of(const Dims& dims);

/*******************************************************************************
 * STATES
 ******************************************************************************/

/**
 * A density operator over an ordered list of labeled tensor factors.
 *
 * Construction validates dimensions, unit trace, Hermiticity and positivity;
 * a constructed value is immutable.
 */
class MultipartiteState {
 public:
  MultipartiteState(Dims dims, ComplexMatrix matrix);

  const Dims& dims() const { return dims_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  Labels labels() const { return labels_of(dims_); }
  int dim_of(const std::string& label) const;
  bool is_pure(double tol = 1e-10) const;

 private:
  Dims dims_;
  ComplexMatrix matrix_;
};

/// A normalized state vector over labeled tensor factors.
class PureState {
 public:
  PureState(Dims dims, ComplexVector amplitudes);

  const Dims& dims() const { return dims_; }
  const ComplexVector& amplitudes() const { return amplitudes_; }
  int dim() const { return static_cast<int>(amplitudes_.size()); }
  Labels labels() const { return labels_of(dims_); }
  MultipartiteState density() const;

 private:
  Dims dims_;
  ComplexVector amplitudes_;
};

/*******************************************************************************
 * LINEAR ALGEBRA
 ******************************************************************************/

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);

/// Tensor product of two states; labels must be disjoint.
MultipartiteState tensor(const MultipartiteState& a, const MultipartiteState& b);
PureState tensor(const PureState& a, const PureState& b);

struct EigenDecomposition {
  RealVector values;      ///< ascending
  ComplexMatrix vectors;  ///< columns are eigenvectors
};

/// Throws ShapeError when `m` is not square or not Hermitian within 1e-9.
EigenDecomposition hermitian_eig(const ComplexMatrix& m);

/// Matrix function f applied to the spectrum of a Hermitian matrix.
template <typename F>
ComplexMatrix hermitian_apply(const ComplexMatrix& m, F&& f) {
  const EigenDecomposition eig = hermitian_eig(m);
  RealVector mapped(eig.values.size());
  for (Eigen::Index i = 0; i < eig.values.size(); ++i) mapped(i) = f(eig.values(i));
  return eig.vectors * mapped.asDiagonal() * eig.vectors.adjoint();
}

/// Projection of a density matrix to the nearest Hermitian matrix.
ComplexMatrix hermitize(const ComplexMatrix& m);

/// Kets |i> of dimension d, and the projector |i><i|.
ComplexVector basis_ket(int d, int i);
ComplexMatrix basis_projector(int d, int i);
ComplexMatrix maximally_mixed(int d);

/*******************************************************************************
 * SUBSYSTEM OPERATIONS
 ******************************************************************************/

/// Reduced state on `keep`; the kept factors retain their original order.
MultipartiteState partial_trace(const MultipartiteState& s, const Labels& keep);
/// Reduced state obtained by tracing out `drop`.
MultipartiteState trace_out(const MultipartiteState& s, const Labels& drop);

/// Reorders the tensor factors so that they appear in `order`.
MultipartiteState permute_systems(const MultipartiteState& s, const Labels& order);
PureState permute_systems(const PureState& s, const Labels& order);

/// Renames factors; `mapping` holds (old, new) pairs.
MultipartiteState relabel(const MultipartiteState& s,
                          const std::vector<std::pair<std::string, std::string>>& mapping);
PureState relabel(const PureState& s,
                  const std::vector<std::pair<std::string, std::string>>& mapping);

/// Sum of singular values of a - b. Requires identical dims in identical order.
double trace_norm_distance(const MultipartiteState& a, const MultipartiteState& b);
double trace_norm(const ComplexMatrix& hermitian);

/// Minimal purification: the purifying factor has dimension rank(s).
PureState purify(const MultipartiteState& s, const std::string& new_label);

/**
 * Applies `w` (shape out x in) to the factors `targets`, which are replaced by
 * `outputs` at the position of the first target. With no targets, `w` is a
 * column vector and the outputs are appended.
 */
PureState apply_isometry(const PureState& psi, const Labels& targets,
                         const ComplexMatrix& w, const Dims& outputs);

/**
 * Index bookkeeping for tensor reshapes: the row-major flat index of the
 * factors reordered as `order`.
 */
std::vector<int> permutation_indices(const Dims& dims, const std::vector<int>& order);

/// Coefficient matrix M with rows indexed by `rows` and columns by the rest,
/// such that psi = vec(M) after reordering.
ComplexMatrix reshape_bipartite(const PureState& psi, const Labels& rows);

}  // namespace qmarkov

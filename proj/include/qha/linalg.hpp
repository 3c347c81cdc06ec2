#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qha/rational.hpp"

namespace qha {

// A finite-dimensional vector space over Q presented by an ordered basis.
// Labels carry provenance (tensor factors, wedge subsets, coset classes) and
// are the only payload; dim is always labels.size().
struct Space {
  std::vector<std::string> labels;

  int dim() const { return static_cast<int>(labels.size()); }
  bool operator==(const Space& o) const = default;

  // prefix1, prefix2, ..., prefixn
  static Space std_basis(const std::string& prefix, int n);
};

// Basis labels "a⊗b" in row-major order: index(a,b) = a*dim(second) + b.
Space tensor(const Space& a, const Space& b);
// Labels of a followed by labels of b.
Space direct_sum(const Space& a, const Space& b);

using Vec = std::vector<Scalar>;  // dense coordinates in a Space's basis

// Sparse matrix of a linear map.  entry(row, col) = coefficient of target
// basis vector `row` in the image of source basis vector `col`.  Zero values
// are never stored.
class LinearMap {
 public:
  LinearMap() = default;
  LinearMap(Space source, Space target)
      : src_(std::move(source)), tgt_(std::move(target)) {}

  static LinearMap identity(const Space& s);
  static LinearMap zero(const Space& source, const Space& target) {
    return LinearMap(source, target);
  }

  const Space& src() const { return src_; }
  const Space& tgt() const { return tgt_; }

  void set(int row, int col, const Scalar& v);
  void add_to(int row, int col, const Scalar& v);
  Scalar get(int row, int col) const;
  const std::map<std::pair<int, int>, Scalar>& entries() const {
    return entries_;
  }

  Vec apply(const Vec& x) const;
  bool is_zero() const { return entries_.empty(); }

  // Equality of matrices; label differences are deliberately ignored so that
  // e.g. a composite can be compared against an identity on relabeled spaces.
  bool same_matrix(const LinearMap& o) const;

  LinearMap operator+(const LinearMap& o) const;
  LinearMap operator-(const LinearMap& o) const;
  LinearMap scaled(const Scalar& c) const;

 private:
  Space src_, tgt_;
  std::map<std::pair<int, int>, Scalar> entries_;
};

// g∘f; requires dim tgt(f) == dim src(g).
LinearMap compose(const LinearMap& g, const LinearMap& f);
// f⊗g acting on tensor(src f, src g) -> tensor(tgt f, tgt g), no signs.
LinearMap kron(const LinearMap& f, const LinearMap& g);

// Permutation of tensor factors: target slot t carries source factor
// perm[t].  factors lists the source factor spaces in order.
LinearMap tensor_permutation(const std::vector<Space>& factors,
                             const std::vector<int>& perm);

long rank(const LinearMap& m);

// Exact inverse, or nullopt when the matrix is not square invertible.
std::optional<LinearMap> inverse(const LinearMap& m);

struct Rref {
  int ncols = 0;
  std::vector<int> pivot_cols;      // strictly increasing
  std::vector<Vec> rows;            // reduced rows, rows[k][pivot_cols[k]] = 1
};
Rref rref(const LinearMap& m);

// Basis of ker m as vectors in src coordinates, one per free column, with
// free-column coordinate 1.  Order follows free-column order.
std::vector<Vec> kernel_basis(const LinearMap& m);

// One solution of m x = b, or nullopt when inconsistent.
std::optional<Vec> solve(const LinearMap& m, const Vec& b);

enum class SubquotientMode { equalizer, coequalizer };

struct Subquotient {
  Space space;
  // equalizer: inclusion space -> ambient.  coequalizer: projection
  // ambient -> space.
  LinearMap structure;
};

// mode equalizer: ambient is the shared domain of f, g; returns ker(f-g)
// with inclusion.  mode coequalizer: ambient is the shared codomain; returns
// ambient/im(f-g) with projection.  Labels: equalizer keeps source labels of
// the free columns; coequalizer wraps kept labels as "[x]".
Subquotient subquotient(const Space& ambient, const LinearMap& f,
                        const LinearMap& g, SubquotientMode mode);

}  // namespace qha

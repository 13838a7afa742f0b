#pragma once

#include <variant>

#include "afflie/module.hpp"

namespace afflie {

using Tensor3 = std::vector<Matrix>;  // B[i][j][k]

/// A binary operation on an affine module that is affine in each slot.
/// Chart form stores structure constants (B, P, Q, r) with
///   op(x,y)_i = sum_jk B[i][j][k] x_j y_k + sum_j P[i][j] x_j
///             + sum_k Q[i][k] y_k + r_i,
/// which is bi-affine automatically. Table form stores the full size^2
/// value table and is verified at construction.
class BiAffineMap {
 public:
  struct Chart {
    Tensor3 B;
    Matrix P, Q;
    Vector r;
  };
  struct Table {
    std::vector<std::size_t> out;  // out[a*n + b]
  };

  static BiAffineMap chart(ModulePtr host, Tensor3 B, Matrix P, Matrix Q, Vector r);
  static BiAffineMap table(ModulePtr host, std::vector<std::size_t> out);
  static BiAffineMap table_unchecked(ModulePtr host, std::vector<std::size_t> out);

  const ModulePtr& host() const { return host_; }
  bool is_chart() const { return std::holds_alternative<Chart>(rep_); }
  const Chart& chart_rep() const { return std::get<Chart>(rep_); }
  const Table& table_rep() const { return std::get<Table>(rep_); }

  Point eval(const Point& a, const Point& b) const;

  /// Structural equality; charts are canonical, so this is functional
  /// equality for chart forms.
  bool operator==(const BiAffineMap& o) const;

 private:
  BiAffineMap(ModulePtr host, std::variant<Chart, Table> rep)
      : host_(std::move(host)), rep_(std::move(rep)) {}
  ModulePtr host_;
  std::variant<Chart, Table> rep_;
};

// ---------------------------------------------------------------------------
// Toolkit. Every operation below preserves bi-affineness by construction
// (Lemma-style pointwise heap combinations and compositions with affine
// maps), and acts componentwise on chart structure constants.

/// (a,b) -> F(N(a), b) when slot = 0, F(a, N(b)) when slot = 1.
BiAffineMap precompose_slot(const BiAffineMap& F, const AffineMap& N, int slot);

/// (a,b) -> N(F(a,b)).
BiAffineMap postcompose(const AffineMap& N, const BiAffineMap& F);

/// Pointwise <F,G,H>.
BiAffineMap heap_of(const BiAffineMap& F, const BiAffineMap& G, const BiAffineMap& H);

/// Pointwise left-nested heap fold of an odd number of bi-affine maps.
BiAffineMap heap_fold(const std::vector<BiAffineMap>& maps);

/// (a,b) -> alpha |>_{F(a,b)} G(a,b), the barycentric blend of two
/// bi-affine maps.
BiAffineMap blend(const Scalar& alpha, const BiAffineMap& F, const BiAffineMap& G);

/// (a,b) -> F(b,a).
BiAffineMap opposite(const BiAffineMap& F);

/// (a,b) -> s(a)  /  (a,b) -> s(b).
BiAffineMap from_map_slot(const AffineMap& s, int slot);

/// (a,b) -> a  /  (a,b) -> b.
BiAffineMap projection(const ModulePtr& host, int slot);

/// (a,b) -> c.
BiAffineMap constant_biaffine(const ModulePtr& host, const Point& c);

/// Partial application: y -> F(a, y)  /  x -> F(x, b).
AffineMap fix_first(const BiAffineMap& F, const Point& a);
AffineMap fix_second(const BiAffineMap& F, const Point& b);

}  // namespace afflie

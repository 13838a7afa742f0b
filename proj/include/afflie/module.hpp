#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "afflie/heap.hpp"

namespace afflie {

class Module;
using ModulePtr = std::shared_ptr<const Module>;

using Matrix = std::vector<std::vector<Scalar>>;  // row-major
using Vector = std::vector<Scalar>;

/// An affine K-module: an abelian heap with the ternary scalar action
/// a |>_a b. Three flavours:
///  - coordinate: points are vectors over K, action alpha*b - alpha*a + a
///    componentwise (lawful by construction);
///  - table: a finite table heap with an explicit action table over a
///    finite ring, verified against the axioms at construction;
///  - z_affine: a table heap viewed as an affine Z-module through the
///    unique integer action (always lawful).
class Module : public std::enable_shared_from_this<Module> {
 public:
  static ModulePtr coordinate(RingSpec ring, std::size_t dim);
  /// action[(s*n + a)*n + b] where s indexes enumerate_scalars(ring).
  /// Verifies the affine-module axioms; throws DomainError with a witness
  /// on failure.
  static ModulePtr table(HeapPtr heap, RingSpec ring,
                         std::vector<std::size_t> action);
  static ModulePtr table_unchecked(HeapPtr heap, RingSpec ring,
                                   std::vector<std::size_t> action);
  static ModulePtr z_affine(HeapPtr heap);

  const HeapPtr& heap() const { return heap_; }
  const RingSpec& ring() const { return ring_; }

  /// True for coordinate modules, which expose a canonical chart.
  bool is_chart() const { return heap_->is_coordinate(); }
  std::size_t dim() const { return heap_->coordinate_rep().dim; }

  std::optional<std::uint64_t> finite_size() const { return heap_->finite_size(); }
  Point element(std::uint64_t i) const { return heap_->element(i); }

  /// Chart origin (the all-zeros coordinate point).
  Point origin() const;
  /// Chart frame: origin, origin+e_1, ..., origin+e_d.
  std::vector<Point> frame() const;

  Point action(const Scalar& alpha, const Point& base, const Point& b) const;

  Point make(std::vector<Scalar> coords) const { return heap_->make(std::move(coords)); }
  Point make_ints(const std::vector<long>& v) const { return heap_->make_ints(v); }
  Point make_index(std::size_t i) const { return heap_->make_index(i); }

  bool same_shape(const Module& other) const;

  const std::vector<std::size_t>& action_table() const { return *action_; }

 private:
  Module(HeapPtr heap, RingSpec ring, std::optional<std::vector<std::size_t>> action)
      : heap_(std::move(heap)), ring_(ring), action_(std::move(action)) {}
  HeapPtr heap_;
  RingSpec ring_;
  std::optional<std::vector<std::size_t>> action_;  // table modules only
};

/// tau_o^u : a -> <a,o,u>, the translation isomorphism between the
/// retracts at o and at u.
Point translate(const Point& o, const Point& u, const Point& a);

/// The K-module obtained from an affine module by fixing o as zero:
/// a+b = <a,o,b>, alpha*a = alpha |>_o a.
class RetractedModule {
 public:
  RetractedModule(ModulePtr base, Point origin);
  const ModulePtr& base() const { return base_; }
  const Point& zero() const { return origin_; }
  Point add(const Point& a, const Point& b) const { return ternary(a, origin_, b); }
  Point neg(const Point& a) const { return ternary(origin_, a, origin_); }
  Point scalar_mul(const Scalar& alpha, const Point& a) const {
    return base_->action(alpha, origin_, a);
  }
  /// The vector from b to c: <o,b,c>.
  Point arrow(const Point& b, const Point& c) const {
    return ternary(origin_, b, c);
  }

 private:
  ModulePtr base_;
  Point origin_;
};

inline RetractedModule retract_module(ModulePtr base, Point origin) {
  return RetractedModule(std::move(base), std::move(origin));
}

/// A homomorphism of affine modules. Chart form stores (M, t) with
/// f(x) = Mx + t in the canonical chart, which satisfies the homomorphism
/// law automatically; table form stores the value table and is verified at
/// construction.
class AffineMap {
 public:
  struct Chart {
    Matrix M;
    Vector t;
  };
  struct Table {
    std::vector<std::size_t> out;
  };

  static AffineMap chart(ModulePtr source, ModulePtr target, Matrix M, Vector t);
  static AffineMap table(ModulePtr source, ModulePtr target,
                         std::vector<std::size_t> out);
  static AffineMap table_unchecked(ModulePtr source, ModulePtr target,
                                   std::vector<std::size_t> out);
  static AffineMap identity(ModulePtr m);
  static AffineMap constant(ModulePtr source, Point value);

  const ModulePtr& source() const { return source_; }
  const ModulePtr& target() const { return target_; }
  bool is_chart() const { return std::holds_alternative<Chart>(rep_); }
  const Chart& chart_rep() const { return std::get<Chart>(rep_); }
  const Table& table_rep() const { return std::get<Table>(rep_); }

  Point operator()(const Point& a) const;

  bool is_endo() const { return source_->same_shape(*target_); }

  bool operator==(const AffineMap& o) const;

  std::string str() const;

 private:
  AffineMap(ModulePtr s, ModulePtr t, std::variant<Chart, Table> rep)
      : source_(std::move(s)), target_(std::move(t)), rep_(std::move(rep)) {}
  ModulePtr source_, target_;
  std::variant<Chart, Table> rep_;
};

Point apply_map(const AffineMap& f, const Point& a);

/// f o g.
AffineMap compose(const AffineMap& f, const AffineMap& g);

/// Pointwise <f,g,h>; again an affine homomorphism.
AffineMap heap_of_maps(const AffineMap& f, const AffineMap& g, const AffineMap& h);

/// Pointwise (alpha |>_f g)(a) = alpha |>_{f(a)} g(a); the action of the
/// affgebra Aff(A) on endomorphisms.
AffineMap act_on_maps(const Scalar& alpha, const AffineMap& f, const AffineMap& g);

/// The linearisation a -> <f(a), f(o_A), o_B>, a linear map between the
/// retracts at o_A and o_B.
AffineMap linearise(const AffineMap& f, const Point& o_A, const Point& o_B);

namespace detail {
// Chart helpers shared with the bi-affine layer.
Matrix mat_zero(const RingSpec&, std::size_t rows, std::size_t cols);
Matrix mat_identity(const RingSpec&, std::size_t n);
Matrix mat_add(const Matrix&, const Matrix&);
Matrix mat_sub(const Matrix&, const Matrix&);
Matrix mat_mul(const Matrix&, const Matrix&);
Matrix mat_scale(const Scalar&, const Matrix&);
Vector vec_zero(const RingSpec&, std::size_t n);
Vector vec_add(const Vector&, const Vector&);
Vector vec_sub(const Vector&, const Vector&);
Vector vec_scale(const Scalar&, const Vector&);
Vector mat_apply(const Matrix&, const Vector&);
}  // namespace detail

}  // namespace afflie

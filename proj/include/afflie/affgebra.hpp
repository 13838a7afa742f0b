#pragma once

#include "afflie/biaffine.hpp"
#include "afflie/laws.hpp"

namespace afflie {

/// An affine module with a bi-affine multiplication. Associativity is a
/// verdict, not an assumption: non-associative affgebras are first-class
/// carriers for derivations.
struct Affgebra {
  ModulePtr module;
  BiAffineMap mul;
  bool associative = false;

  Point multiply(const Point& a, const Point& b) const { return mul.eval(a, b); }
};

/// Builds an affgebra and records the associativity verdict.
Affgebra make_affgebra(ModulePtr module, BiAffineMap mul,
                       const CheckOptions& opts = {});

VerdictReport check_associative(const Affgebra& A, const CheckOptions& opts = {});
/// Both truss distributivity laws.
VerdictReport check_truss(const Affgebra& A, const CheckOptions& opts = {});

/// Composition as the multiplication of Aff(A) (Example-style endomorphism
/// affgebra); plain composition with a signature check.
AffineMap endo_compose(const AffineMap& f, const AffineMap& g);

/// The associative algebra on the retract at o, with product
/// a*b = ab - ao + o^2 - ob.
struct RetractedAlgebra {
  RetractedModule module;
  BiAffineMap product;
};

RetractedAlgebra retract_algebra(const Affgebra& A, const Point& o);

/// sigma(ab) = <sigma(a)b, sigma(ab), a sigma(b)> for all a, b.
VerdictReport check_sigma_compat(const Affgebra& A, const AffineMap& sigma,
                                 const CheckOptions& opts = {});

/// X sigma = sigma X together with the sigma-twisted Leibniz rule, checked
/// against an arbitrary bi-affine product (an affgebra multiplication or a
/// bracket).
VerdictReport is_derivation_along(const AffineMap& X, const AffineMap& sigma,
                                  const BiAffineMap& product,
                                  const CheckOptions& opts = {});

VerdictReport is_derivation_along(const AffineMap& X, const AffineMap& sigma,
                                  const Affgebra& A,
                                  const CheckOptions& opts = {});

/// [X, Y] = <XY, YX, sigma>.
AffineMap derivation_bracket(const AffineMap& X, const AffineMap& Y,
                             const AffineMap& sigma);

/// Exhaustively filters the affine endomorphisms of a finite module for
/// derivations along sigma. Deterministic (M, t)-lexicographic order.
std::vector<AffineMap> enumerate_derivations(const Affgebra& A,
                                             const AffineMap& sigma,
                                             std::uint64_t budget = 1'000'000);

/// The abelian affgebra on a module: ab = <a,o,b>, i.e. addition of the
/// retract at o.
Affgebra make_abelian_affgebra(const ModulePtr& module, const Point& o);

/// Full matrix algebra M_m(K) as an affgebra on a chart module of
/// dimension m^2 (basis E_11, E_12, ..., row-major).
Affgebra matrix_algebra(const RingSpec& ring, std::size_t m);

/// Upper-triangular m x m matrices over K (basis E_ij for i <= j,
/// row-major).
Affgebra upper_triangular_algebra(const RingSpec& ring, std::size_t m);

}  // namespace afflie

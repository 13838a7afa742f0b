#pragma once

#include "afflie/affgebra.hpp"

namespace afflie {

enum class Chirality { left, right };

inline const char* to_string(Chirality c) {
  return c == Chirality::left ? "left" : "right";
}

/// A certified Lie affgebra: a bi-affine bracket that has passed the
/// heap-form antisymmetry and the chirality-matching Jacobi identity.
/// Every constructor in this header certifies before returning.
struct LieAffgebra {
  ModulePtr module;
  BiAffineMap bracket;
  Chirality chirality = Chirality::left;

  Point eval(const Point& a, const Point& b) const { return bracket.eval(a, b); }
};

VerdictReport check_antisymmetry(const ModulePtr& module, const BiAffineMap& bracket,
                                 const CheckOptions& opts = {});
VerdictReport check_jacobi(const ModulePtr& module, const BiAffineMap& bracket,
                           Chirality chirality, const CheckOptions& opts = {});

inline VerdictReport check_antisymmetry(const LieAffgebra& L,
                                        const CheckOptions& opts = {}) {
  return check_antisymmetry(L.module, L.bracket, opts);
}
inline VerdictReport check_jacobi(const LieAffgebra& L,
                                  const CheckOptions& opts = {}) {
  return check_jacobi(L.module, L.bracket, L.chirality, opts);
}

/// Runs antisymmetry then Jacobi; throws DomainError carrying the witness
/// when a law fails. `theorem_backed` upgrades failures to
/// InternalConsistencyError for constructions whose success is a theorem.
LieAffgebra certify_lie(ModulePtr module, BiAffineMap bracket, Chirality chirality,
                        const CheckOptions& opts = {}, bool theorem_backed = false);

/// [a,b] = sigma(a).
LieAffgebra make_sigma_bracket(const AffineMap& sigma, const CheckOptions& opts = {});

/// [a,b] = zeta |>_a b.
LieAffgebra make_action_bracket(const ModulePtr& module, const Scalar& zeta,
                                const CheckOptions& opts = {});

/// [a,b] = <ab, ba, b> on an associative affgebra.
LieAffgebra make_commutator_bracket(const Affgebra& G, const CheckOptions& opts = {});

/// The chirality-matching pre-Lie identity for a bi-affine product.
VerdictReport check_pre_lie(const ModulePtr& module, const BiAffineMap& product,
                            Chirality chirality, const CheckOptions& opts = {});

/// Prop-style bracket <a.b, b.a, b> from a pre-Lie product; refuses when
/// the pre-Lie check fails.
LieAffgebra make_pre_lie_bracket(const ModulePtr& module, const BiAffineMap& product,
                                 Chirality chirality, const CheckOptions& opts = {});

/// The vector-valued (origin-fixed) form of an idempotent bracket:
/// [a,b]_v = <[a,b], b, o>, anti-symmetric and Jacobi in the retract.
struct VectorValuedBracket {
  ModulePtr module;
  Point origin;
  BiAffineMap map_v;
};

VerdictReport check_vector_valued(const VectorValuedBracket& V,
                                  const CheckOptions& opts = {});

/// Requires an idempotent bracket ([a,a] = a everywhere).
VectorValuedBracket to_vector_valued(const LieAffgebra& L, const Point& o,
                                     const CheckOptions& opts = {});

/// Requires 2 to be a unit of the ring; the inverse of to_vector_valued.
LieAffgebra from_vector_valued(const VectorValuedBracket& V,
                               const CheckOptions& opts = {});

/// X_a = [a,-], an affine endomorphism; for idempotent brackets a
/// derivation along the identity with the bracket as the product.
AffineMap adjoint_map(const LieAffgebra& L, const Point& a);

/// The classical Lie algebra on the retract at o with
/// [a,b]_o = <[a,b],[a,o],[o,o],[o,b],o>.
struct LieAlgebraView {
  RetractedModule module;
  BiAffineMap bracket_o;
};

LieAlgebraView retract_lie(const LieAffgebra& L, const Point& o,
                           const CheckOptions& opts = {});

struct IsoSearchResult {
  bool isomorphic = false;
  std::optional<AffineMap> witness;
  std::uint64_t candidates = 0;  // candidate maps inspected
};

/// Brute-force search over all affine bijections f with
/// [f(a), f(b)]_2 = f([a,b]_1), in deterministic (M, t)-lexicographic
/// order. Instances must be finite with at most 32 elements.
IsoSearchResult are_isomorphic_small(const LieAffgebra& L1, const LieAffgebra& L2,
                                     std::uint64_t budget = 1'000'000);

}  // namespace afflie

#pragma once

#include "afflie/lie.hpp"

namespace afflie {

/// An affine endomorphism together with the outcome of the Nijenhuis
/// condition check on a particular Lie affgebra.
struct NijenhuisCandidate {
  AffineMap N;
  bool verified = false;
  VerdictReport verdict;
};

/// [N(a),N(b)] = N(<[N(a),b], N([a,b]), [a,N(b)]>) on all pairs (frame or
/// exhaustive).
VerdictReport is_nijenhuis(const LieAffgebra& L, const AffineMap& N,
                           const CheckOptions& opts = {});

NijenhuisCandidate verify_nijenhuis(const LieAffgebra& L, AffineMap N,
                                    const CheckOptions& opts = {});

/// The Nijenhuis bracket <[N(a),b], N([a,b]), [a,N(b)]> as a bi-affine
/// map. Defined for any affine N; only deform() needs the verified flag.
BiAffineMap nijenhuis_deformed(const BiAffineMap& bracket, const AffineMap& N);

Point nijenhuis_bracket(const LieAffgebra& L, const AffineMap& N, const Point& a,
                        const Point& b);

/// Certified deformation by a verified operator. Certification failure is
/// an internal-consistency error (the deformed bracket of a verified
/// Nijenhuis operator is a Lie bracket by theorem).
LieAffgebra deform(const LieAffgebra& L, const NijenhuisCandidate& N,
                   const CheckOptions& opts = {});

/// Levels 0..kmax of the bracket hierarchy of a Nijenhuis operator; level
/// k carries the bracket deformed by N^k. Powers are built by repeated
/// composition (N^0 = id).
struct BracketTower {
  LieAffgebra base;
  NijenhuisCandidate N;
  std::vector<AffineMap> powers;    // N^0 .. N^(kmax+1)
  std::vector<LieAffgebra> levels;  // 0 .. kmax
};

BracketTower power_tower(const LieAffgebra& L, const NijenhuisCandidate& N,
                         std::size_t kmax, const CheckOptions& opts = {});

/// Cross-checks the hierarchy identities on a built tower: the four
/// induction identities, the power-shift identity
/// N^l [a,b]_{N^{k+l}} = [N^l a, N^l b]_{N^k}, and the one-step hierarchy
/// recursion. Throws InternalConsistencyError naming the failing identity
/// and level on violation.
void verify_tower_identities(const BracketTower& tower, const CheckOptions& opts = {});

/// N_alpha^{k,l} = alpha |>_{N^k} N^l, verified Nijenhuis by theorem.
AffineMap blend_operator(const LieAffgebra& L, const NijenhuisCandidate& N,
                         std::size_t k, std::size_t l, const Scalar& alpha,
                         const CheckOptions& opts = {});

/// The compatibility bracket (a,b) -> alpha |>_{[a,b]_{N^k}} [a,b]_{N^l};
/// certified, and asserted equal to the Nijenhuis bracket of the blend
/// operator.
LieAffgebra compatibility_bracket(const LieAffgebra& L, const NijenhuisCandidate& N,
                                  std::size_t k, std::size_t l, const Scalar& alpha,
                                  const CheckOptions& opts = {});

/// N_o = linearisation of N at o, a linear operator on the retract.
AffineMap retract_operator(const LieAffgebra& L, const AffineMap& N, const Point& o);

/// The classical Nijenhuis condition for a linear operator on a retracted
/// Lie algebra.
VerdictReport is_nijenhuis_linear(const LieAlgebraView& view, const AffineMap& N_o,
                                  const CheckOptions& opts = {});

struct NijenhuisSearch {
  std::vector<NijenhuisCandidate> found;
  bool truncated = false;
  std::uint64_t scanned = 0;
};

/// Enumerates affine endomorphisms in (M, t)-lexicographic order and
/// returns every Nijenhuis operator found within the budget; results are
/// flagged truncated if the budget ran out first.
NijenhuisSearch search_nijenhuis(const LieAffgebra& L, std::uint64_t budget = 1'000'000);

}  // namespace afflie

#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "afflie/biaffine.hpp"
#include "afflie/module.hpp"
#include "afflie/verdict.hpp"

namespace afflie {

/// Everything a law may quantify over or refer to. Non-owning; callers
/// keep the referenced objects alive for the duration of a check.
struct LawContext {
  ModulePtr module;
  const BiAffineMap* product = nullptr;  // affgebra multiplication
  const BiAffineMap* bracket = nullptr;  // Lie bracket
  std::map<std::string, const BiAffineMap*> biaffines;  // extra named brackets
  std::map<std::string, const AffineMap*> maps;         // sigma, N, X, ...
  std::map<std::string, Point> points;                  // named constants (origins)

  const AffineMap& map(const std::string& name) const;
  const BiAffineMap& biaffine(const std::string& name) const;
  const Point& point(const std::string& name) const;
};

enum class SlotKind { point, scalar };

struct Slot {
  SlotKind kind;
  std::string name;
};

/// A registered identity: named slots plus an evaluator producing both
/// sides. Laws are registered with a per-slot affineness certificate
/// (frame_capable), which is what justifies the frame strategy.
struct Law {
  std::string id;
  std::vector<Slot> slots;
  bool frame_capable = true;
  /// Returns "" when the context satisfies the law's needs, otherwise a
  /// human-readable reason.
  std::function<std::string(const LawContext&)> requires_ctx;
  std::function<std::pair<Point, Point>(const LawContext&,
                                        std::span<const Scalar>,
                                        std::span<const Point>)>
      eval;
};

const Law* find_law(const std::string& id);
std::vector<std::string> law_ids();

/// Evaluates a law on the affine frame only: {0, 1} per scalar slot and
/// {origin, origin+e_1, ..., origin+e_d} per point slot. Agreement on the
/// frame implies agreement everywhere for per-slot-affine identities, so
/// this works over infinite rings. Requires a chart instance.
VerdictReport frame_check(const std::string& law, const LawContext& ctx,
                          const CheckOptions& opts = {});

/// Evaluates a law on every tuple of a finite instance, in lexicographic
/// order, with a deterministic first witness.
VerdictReport exhaustive_check(const std::string& law, const LawContext& ctx,
                               const CheckOptions& opts = {});

/// Strategy dispatch with fallback per CheckOptions.
VerdictReport run_check(const std::string& law, const LawContext& ctx,
                        const CheckOptions& opts = {});

/// Runs several laws in order; returns the first failure/error, or a pass
/// report with summed tuple counts and the given aggregate id.
VerdictReport run_all(const std::vector<std::string>& laws, const LawContext& ctx,
                      const CheckOptions& opts, const std::string& aggregate_id);

/// The laws a document-driven verify run should check, given what the
/// context carries.
std::vector<std::string> default_laws(const LawContext& ctx);

// --- structure-level checks built on the engine -------------------------

/// Para-associativity, both Mal'cev identities, and symmetry.
VerdictReport check_heap_axioms(const HeapPtr& heap, const CheckOptions& opts = {});

/// Def-order affine-module axioms (a)-(d) plus the derived identities.
VerdictReport check_affine_axioms(const ModulePtr& module,
                                  const CheckOptions& opts = {});

/// Affine homomorphism law for a map (chart forms pass by construction).
VerdictReport is_affine_hom(const AffineMap& f, const CheckOptions& opts = {});

/// Per-slot affineness of a binary operation (truss laws over Z).
VerdictReport check_biaffine(const BiAffineMap& F, const CheckOptions& opts = {});

}  // namespace afflie

#pragma once

#include <cstdint>
#include <functional>

#include "afflie/biaffine.hpp"

namespace afflie {

/// Dense index-space view of a finite module. All structure is tabulated
/// once so that exhaustive filters over large candidate sets run on table
/// lookups instead of exact arithmetic.
class FiniteCtx {
 public:
  explicit FiniteCtx(ModulePtr module, std::uint64_t budget = 1'000'000);

  const ModulePtr& module() const { return module_; }
  std::size_t size() const { return n_; }
  std::size_t ring_size() const { return k_; }
  std::size_t dim() const { return dim_; }

  std::uint32_t tern(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
    return ternary_[(a * n_ + b) * n_ + c];
  }
  std::uint32_t act(std::uint32_t s, std::uint32_t a, std::uint32_t b) const {
    return action_[(s * n_ + a) * n_ + b];
  }

  const Point& point(std::uint32_t i) const { return points_[i]; }
  std::uint32_t index_of(const Point& p) const;

  std::vector<std::uint32_t> map_table(const AffineMap& f) const;
  std::vector<std::uint32_t> biaffine_table(const BiAffineMap& F) const;

  /// Rebuilds an affine map from its value table. Chart modules get chart
  /// form (reconstructed from the frame images); table modules keep the
  /// table.
  AffineMap map_from_table(const std::vector<std::uint32_t>& table) const;

  /// Enumerates every affine endomorphism of a finite chart module in
  /// lexicographic (M, t) order (M row-major, then t, entries ordered by
  /// scalar enumeration). The callback receives the value table; returning
  /// false stops the enumeration. Returns the number of candidates
  /// visited.
  std::uint64_t for_each_affine_endo(
      const std::function<bool(const std::vector<std::uint32_t>&)>& visit) const;

  /// Number of affine endomorphisms the enumeration will visit.
  std::uint64_t affine_endo_count() const;

 private:
  ModulePtr module_;
  std::size_t n_ = 0, k_ = 0, dim_ = 0;
  std::vector<Point> points_;
  std::vector<std::uint32_t> ternary_;
  std::vector<std::uint32_t> action_;
  std::uint32_t zero_idx_ = 0;
  std::vector<std::uint32_t> unit_idx_;           // frame points e_1..e_d
  std::vector<std::uint8_t> digits_;              // digits_[x*dim + i]
};

}  // namespace afflie

#include "afflie/enumerate.hpp"

#include "afflie/errors.hpp"

namespace afflie {

FiniteCtx::FiniteCtx(ModulePtr module, std::uint64_t budget)
    : module_(std::move(module)) {
  auto size = module_->finite_size();
  if (!size) throw UnsupportedError("FiniteCtx requires a finite module");
  n_ = static_cast<std::size_t>(*size);
  if (static_cast<std::uint64_t>(n_) * n_ * n_ > budget)
    throw BudgetError("module too large to tabulate: " + std::to_string(n_) +
                          "^3 entries exceed budget " + std::to_string(budget),
                      budget);
  points_.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) points_.push_back(module_->element(i));

  ternary_.resize(n_ * n_ * n_);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b)
      for (std::size_t c = 0; c < n_; ++c)
        ternary_[(a * n_ + b) * n_ + c] = static_cast<std::uint32_t>(
            module_->heap()->index_of(ternary(points_[a], points_[b], points_[c])));

  if (module_->ring().finite()) {
    k_ = module_->ring().modulus;
    auto scalars = enumerate_scalars(module_->ring());
    action_.resize(k_ * n_ * n_);
    for (std::size_t s = 0; s < k_; ++s)
      for (std::size_t a = 0; a < n_; ++a)
        for (std::size_t b = 0; b < n_; ++b)
          action_[(s * n_ + a) * n_ + b] = static_cast<std::uint32_t>(
              module_->heap()->index_of(
                  module_->action(scalars[s], points_[a], points_[b])));
  }

  if (module_->is_chart()) {
    dim_ = module_->dim();
    auto frame = module_->frame();
    zero_idx_ = static_cast<std::uint32_t>(module_->heap()->index_of(frame[0]));
    for (std::size_t i = 1; i < frame.size(); ++i)
      unit_idx_.push_back(
          static_cast<std::uint32_t>(module_->heap()->index_of(frame[i])));
    digits_.resize(n_ * dim_);
    for (std::size_t x = 0; x < n_; ++x) {
      std::size_t v = x;
      for (std::size_t i = dim_; i-- > 0;) {
        digits_[x * dim_ + i] = static_cast<std::uint8_t>(v % k_);
        v /= k_;
      }
    }
  }
}

std::uint32_t FiniteCtx::index_of(const Point& p) const {
  return static_cast<std::uint32_t>(module_->heap()->index_of(p));
}

std::vector<std::uint32_t> FiniteCtx::map_table(const AffineMap& f) const {
  std::vector<std::uint32_t> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = index_of(f(points_[i]));
  return out;
}

std::vector<std::uint32_t> FiniteCtx::biaffine_table(const BiAffineMap& F) const {
  std::vector<std::uint32_t> out(n_ * n_);
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = 0; b < n_; ++b)
      out[a * n_ + b] = index_of(F.eval(points_[a], points_[b]));
  return out;
}

AffineMap FiniteCtx::map_from_table(const std::vector<std::uint32_t>& table) const {
  if (!module_->is_chart()) {
    std::vector<std::size_t> out(table.begin(), table.end());
    return AffineMap::table_unchecked(module_, module_, std::move(out));
  }
  // M columns are the arrows from f(0) to f(e_i); t = f(0).
  const Point& f0 = points_[table[zero_idx_]];
  Matrix M(dim_, Vector(dim_, zero(module_->ring())));
  for (std::size_t j = 0; j < dim_; ++j) {
    Point col = ternary(points_[table[unit_idx_[j]]], f0, module_->origin());
    for (std::size_t i = 0; i < dim_; ++i) M[i][j] = col.coords()[i];
  }
  return AffineMap::chart(module_, module_, std::move(M), f0.coords());
}

std::uint64_t FiniteCtx::affine_endo_count() const {
  if (!module_->is_chart())
    throw UnsupportedError("affine endomorphism enumeration needs a chart module");
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < dim_ * dim_ + dim_; ++i) {
    if (total > UINT64_MAX / k_) throw BudgetError("endomorphism space overflows", 0);
    total *= k_;
  }
  return total;
}

std::uint64_t FiniteCtx::for_each_affine_endo(
    const std::function<bool(const std::vector<std::uint32_t>&)>& visit) const {
  if (!module_->is_chart())
    throw UnsupportedError("affine endomorphism enumeration needs a chart module");
  const std::size_t nm = dim_ * dim_;
  std::vector<std::uint8_t> mdig(nm, 0), tdig(dim_, 0);

  // zmul[s][p] = s |>_0 p and add[p][q] = <p,0,q>, both straight reads of
  // the precomputed tables.
  auto zmul = [&](std::uint8_t s, std::uint32_t p) {
    return action_[(static_cast<std::size_t>(s) * n_ + zero_idx_) * n_ + p];
  };
  auto padd = [&](std::uint32_t p, std::uint32_t q) {
    return ternary_[(static_cast<std::size_t>(p) * n_ + zero_idx_) * n_ + q];
  };

  std::vector<std::uint32_t> table(n_);
  std::vector<std::uint32_t> col(dim_);
  std::vector<std::uint32_t> scaled(dim_ * k_);
  std::uint64_t visited = 0;

  while (true) {
    // column j of M as a point index
    for (std::size_t j = 0; j < dim_; ++j) {
      std::uint32_t idx = 0;
      for (std::size_t i = 0; i < dim_; ++i)
        idx = static_cast<std::uint32_t>(idx * k_ + mdig[i * dim_ + j]);
      col[j] = idx;
    }
    std::uint32_t t_idx = 0;
    for (std::size_t i = 0; i < dim_; ++i)
      t_idx = static_cast<std::uint32_t>(t_idx * k_ + tdig[i]);
    for (std::size_t j = 0; j < dim_; ++j)
      for (std::size_t s = 0; s < k_; ++s)
        scaled[j * k_ + s] = zmul(static_cast<std::uint8_t>(s), col[j]);
    for (std::size_t x = 0; x < n_; ++x) {
      std::uint32_t v = t_idx;
      const std::uint8_t* dx = &digits_[x * dim_];
      for (std::size_t j = 0; j < dim_; ++j)
        if (dx[j]) v = padd(v, scaled[j * k_ + dx[j]]);
      table[x] = v;
    }
    ++visited;
    if (!visit(table)) return visited;
    if (nm + dim_ == 0) return visited;  // dim-0 module: one endomorphism

    // advance (M, t) in row-major lexicographic order, last digit fastest
    std::size_t pos = nm + dim_;
    while (pos-- > 0) {
      std::uint8_t& d = pos < nm ? mdig[pos] : tdig[pos - nm];
      if (++d < k_) break;
      d = 0;
      if (pos == 0) return visited;
    }
  }
}

}  // namespace afflie

#include "afflie/affgebra.hpp"

#include <cmath>

#include "afflie/enumerate.hpp"
#include "afflie/errors.hpp"

namespace afflie {

Affgebra make_affgebra(ModulePtr module, BiAffineMap mul, const CheckOptions& opts) {
  if (!mul.host()->same_shape(*module))
    throw DomainError("multiplication lives on a different module");
  Affgebra A{std::move(module), std::move(mul), false};
  A.associative = check_associative(A, opts).passed();
  return A;
}

VerdictReport check_associative(const Affgebra& A, const CheckOptions& opts) {
  LawContext ctx;
  ctx.module = A.module;
  ctx.product = &A.mul;
  return run_check("mul.assoc", ctx, opts);
}

VerdictReport check_truss(const Affgebra& A, const CheckOptions& opts) {
  LawContext ctx;
  ctx.module = A.module;
  ctx.product = &A.mul;
  return run_all({"mul.truss_left", "mul.truss_right"}, ctx, opts, "mul.truss");
}

AffineMap endo_compose(const AffineMap& f, const AffineMap& g) {
  if (!f.is_endo() || !g.is_endo())
    throw DomainError("endo_compose expects endomorphisms");
  return compose(f, g);
}

RetractedAlgebra retract_algebra(const Affgebra& A, const Point& o) {
  if (!A.associative)
    throw DomainError("retract_algebra requires an associative affgebra");
  Point o2 = A.mul.eval(o, o);
  // a*b = ab - ao + o^2 - ob + o, written as a five-fold heap of bi-affine maps
  BiAffineMap product = heap_fold({
      A.mul,
      from_map_slot(fix_second(A.mul, o), 0),  // (a,b) -> ao
      constant_biaffine(A.module, o2),
      from_map_slot(fix_first(A.mul, o), 1),  // (a,b) -> ob
      constant_biaffine(A.module, o),
  });
  return RetractedAlgebra{RetractedModule(A.module, o), std::move(product)};
}

VerdictReport check_sigma_compat(const Affgebra& A, const AffineMap& sigma,
                                 const CheckOptions& opts) {
  LawContext ctx;
  ctx.module = A.module;
  ctx.product = &A.mul;
  ctx.maps["sigma"] = &sigma;
  return run_check("mul.sigma", ctx, opts);
}

VerdictReport is_derivation_along(const AffineMap& X, const AffineMap& sigma,
                                  const BiAffineMap& product,
                                  const CheckOptions& opts) {
  LawContext ctx;
  ctx.module = product.host();
  ctx.product = &product;
  ctx.maps["f"] = &X;
  ctx.maps["g"] = &sigma;
  ctx.maps["X"] = &X;
  ctx.maps["sigma"] = &sigma;
  return run_all({"map.commute", "mul.leibniz"}, ctx, opts, "derivation");
}

VerdictReport is_derivation_along(const AffineMap& X, const AffineMap& sigma,
                                  const Affgebra& A, const CheckOptions& opts) {
  return is_derivation_along(X, sigma, A.mul, opts);
}

AffineMap derivation_bracket(const AffineMap& X, const AffineMap& Y,
                             const AffineMap& sigma) {
  return heap_of_maps(compose(X, Y), compose(Y, X), sigma);
}

namespace {

// Derivation filter over all functions of a small table module.
std::vector<AffineMap> enumerate_derivations_table(const Affgebra& A,
                                                   const AffineMap& sigma,
                                                   std::uint64_t budget) {
  FiniteCtx ctx(A.module, budget);
  std::size_t n = ctx.size();
  double log_total = static_cast<double>(n) * std::log2(static_cast<double>(n));
  if (log_total > 24)
    throw BudgetError("function space " + std::to_string(n) + "^" +
                          std::to_string(n) + " too large to filter",
                      budget);
  auto mul = ctx.biaffine_table(A.mul);
  auto sg = ctx.map_table(sigma);
  std::vector<AffineMap> found;
  std::vector<std::uint32_t> f(n, 0);
  bool ring_finite = A.module->ring().finite();
  while (true) {
    bool ok = true;
    for (std::size_t a = 0; ok && a < n; ++a)
      for (std::size_t b = 0; ok && b < n; ++b) {
        for (std::size_t c = 0; ok && c < n; ++c)
          if (f[ctx.tern(a, b, c)] != ctx.tern(f[a], f[b], f[c])) ok = false;
        if (ring_finite)
          for (std::size_t s = 0; ok && s < ctx.ring_size(); ++s)
            if (f[ctx.act(s, a, b)] != ctx.act(s, f[a], f[b])) ok = false;
      }
    for (std::size_t p = 0; ok && p < n; ++p)
      if (f[sg[p]] != sg[f[p]]) ok = false;
    for (std::size_t a = 0; ok && a < n; ++a)
      for (std::size_t b = 0; ok && b < n; ++b) {
        std::uint32_t ab = mul[a * n + b];
        if (f[ab] != ctx.tern(mul[f[a] * n + b], sg[ab], mul[a * n + f[b]]))
          ok = false;
      }
    if (ok) found.push_back(ctx.map_from_table(f));
    std::size_t pos = n;
    while (pos-- > 0) {
      if (++f[pos] < n) break;
      f[pos] = 0;
      if (pos == 0) return found;
    }
  }
}

}  // namespace

std::vector<AffineMap> enumerate_derivations(const Affgebra& A,
                                             const AffineMap& sigma,
                                             std::uint64_t budget) {
  if (!A.module->finite_size())
    throw UnsupportedError("derivation sets are materialized for finite "
                           "instances only; use is_derivation_along per map");
  if (!A.module->is_chart()) return enumerate_derivations_table(A, sigma, budget);

  FiniteCtx ctx(A.module, budget);
  if (ctx.affine_endo_count() > budget)
    throw BudgetError("affine endomorphism space exceeds budget " +
                          std::to_string(budget),
                      budget);
  std::size_t n = ctx.size();
  auto mul = ctx.biaffine_table(A.mul);
  auto sg = ctx.map_table(sigma);
  std::vector<AffineMap> found;
  ctx.for_each_affine_endo([&](const std::vector<std::uint32_t>& f) {
    for (std::size_t p = 0; p < n; ++p)
      if (f[sg[p]] != sg[f[p]]) return true;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        std::uint32_t ab = mul[a * n + b];
        if (f[ab] != ctx.tern(mul[f[a] * n + b], sg[ab], mul[a * n + f[b]]))
          return true;
      }
    found.push_back(ctx.map_from_table(f));
    return true;
  });
  return found;
}

Affgebra make_abelian_affgebra(const ModulePtr& module, const Point& o) {
  BiAffineMap mul = heap_of(projection(module, 0), constant_biaffine(module, o),
                            projection(module, 1));
  return make_affgebra(module, std::move(mul));
}

namespace {

Affgebra basis_algebra(const RingSpec& ring,
                       const std::vector<std::pair<int, int>>& basis) {
  std::size_t d = basis.size();
  ModulePtr module = Module::coordinate(ring, d);
  Tensor3 B(d, Matrix(d, Vector(d, zero(ring))));
  auto idx_of = [&](int r, int c) -> int {
    for (std::size_t i = 0; i < d; ++i)
      if (basis[i].first == r && basis[i].second == c) return static_cast<int>(i);
    return -1;
  };
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < d; ++k) {
      // E_{ab} E_{cd} = delta_{bc} E_{ad}
      if (basis[j].second != basis[k].first) continue;
      int i = idx_of(basis[j].first, basis[k].second);
      if (i >= 0) B[i][j][k] = one(ring);
    }
  Matrix Z = detail::mat_zero(ring, d, d);
  BiAffineMap mul =
      BiAffineMap::chart(module, std::move(B), Z, Z, detail::vec_zero(ring, d));
  return make_affgebra(module, std::move(mul));
}

}  // namespace

Affgebra matrix_algebra(const RingSpec& ring, std::size_t m) {
  std::vector<std::pair<int, int>> basis;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = 0; c < m; ++c)
      basis.emplace_back(static_cast<int>(r), static_cast<int>(c));
  return basis_algebra(ring, basis);
}

Affgebra upper_triangular_algebra(const RingSpec& ring, std::size_t m) {
  std::vector<std::pair<int, int>> basis;
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t c = r; c < m; ++c)
      basis.emplace_back(static_cast<int>(r), static_cast<int>(c));
  return basis_algebra(ring, basis);
}

}  // namespace afflie

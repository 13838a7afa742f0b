#include "afflie/lie.hpp"

#include <cmath>

#include "afflie/enumerate.hpp"
#include "afflie/errors.hpp"

namespace afflie {

VerdictReport check_antisymmetry(const ModulePtr& module, const BiAffineMap& bracket,
                                 const CheckOptions& opts) {
  LawContext ctx;
  ctx.module = module;
  ctx.bracket = &bracket;
  // the equivalent alternative form is asserted alongside the stated one
  return run_all({"lie.anti", "lie.anti_alt"}, ctx, opts, "lie.anti");
}

VerdictReport check_jacobi(const ModulePtr& module, const BiAffineMap& bracket,
                           Chirality chirality, const CheckOptions& opts) {
  LawContext ctx;
  ctx.module = module;
  ctx.bracket = &bracket;
  return run_check(chirality == Chirality::left ? "lie.jacobi_left"
                                                : "lie.jacobi_right",
                   ctx, opts);
}

LieAffgebra certify_lie(ModulePtr module, BiAffineMap bracket, Chirality chirality,
                        const CheckOptions& opts, bool theorem_backed) {
  // Antisymmetry first: its frame check is unconditional, and once it
  // holds the diagonal a -> [a,a] is affine, which is what licenses the
  // Jacobi frame check.
  VerdictReport anti = check_antisymmetry(module, bracket, opts);
  VerdictReport jac = anti.passed()
                          ? check_jacobi(module, bracket, chirality, opts)
                          : anti;
  const VerdictReport& bad = anti.passed() ? jac : anti;
  if (!bad.passed()) {
    std::string msg = "bracket failed certification: " + bad.describe();
    if (theorem_backed) throw InternalConsistencyError(msg);
    throw DomainError(msg);
  }
  return LieAffgebra{std::move(module), std::move(bracket), chirality};
}

LieAffgebra make_sigma_bracket(const AffineMap& sigma, const CheckOptions& opts) {
  if (!sigma.is_endo())
    throw DomainError("sigma brackets need an endomorphism");
  return certify_lie(sigma.source(), from_map_slot(sigma, 0), Chirality::left,
                     opts, /*theorem_backed=*/true);
}

LieAffgebra make_action_bracket(const ModulePtr& module, const Scalar& zeta,
                                const CheckOptions& opts) {
  if (!(zeta.ring() == module->ring()))
    throw DomainError("zeta must live in the module's ring");
  BiAffineMap bracket = blend(zeta, projection(module, 0), projection(module, 1));
  return certify_lie(module, std::move(bracket), Chirality::left, opts,
                     /*theorem_backed=*/true);
}

LieAffgebra make_commutator_bracket(const Affgebra& G, const CheckOptions& opts) {
  if (!G.associative)
    throw DomainError("commutator brackets need an associative affgebra");
  BiAffineMap bracket = heap_of(G.mul, opposite(G.mul), projection(G.module, 1));
  return certify_lie(G.module, std::move(bracket), Chirality::left, opts,
                     /*theorem_backed=*/true);
}

VerdictReport check_pre_lie(const ModulePtr& module, const BiAffineMap& product,
                            Chirality chirality, const CheckOptions& opts) {
  LawContext ctx;
  ctx.module = module;
  ctx.product = &product;
  return run_check(chirality == Chirality::left ? "mul.pre_lie_left"
                                                : "mul.pre_lie_right",
                   ctx, opts);
}

LieAffgebra make_pre_lie_bracket(const ModulePtr& module, const BiAffineMap& product,
                                 Chirality chirality, const CheckOptions& opts) {
  VerdictReport pre = check_pre_lie(module, product, chirality, opts);
  if (!pre.passed())
    throw DomainError("product is not " + std::string(to_string(chirality)) +
                      " pre-Lie: " + pre.describe());
  BiAffineMap bracket = heap_of(product, opposite(product), projection(module, 1));
  return certify_lie(module, std::move(bracket), Chirality::left, opts,
                     /*theorem_backed=*/true);
}

VerdictReport check_vector_valued(const VectorValuedBracket& V,
                                  const CheckOptions& opts) {
  LawContext ctx;
  ctx.module = V.module;
  ctx.biaffines["v"] = &V.map_v;
  ctx.points.emplace("origin", V.origin);
  return run_all({"vector.anti", "vector.jacobi_o"}, ctx, opts, "vector.laws");
}

VectorValuedBracket to_vector_valued(const LieAffgebra& L, const Point& o,
                                     const CheckOptions& opts) {
  LawContext ctx;
  ctx.module = L.module;
  ctx.bracket = &L.bracket;
  VerdictReport idem = run_check("lie.idempotent", ctx, opts);
  if (!idem.passed())
    throw DomainError("vector-valued form needs an idempotent bracket: " +
                      idem.describe());
  BiAffineMap v = heap_of(L.bracket, projection(L.module, 1),
                          constant_biaffine(L.module, o));
  VectorValuedBracket V{L.module, o, std::move(v)};
  VerdictReport laws = check_vector_valued(V, opts);
  if (!laws.passed())
    throw InternalConsistencyError(
        "vector-valued bracket failed its laws on a certified idempotent "
        "input: " +
        laws.describe());
  return V;
}

LieAffgebra from_vector_valued(const VectorValuedBracket& V,
                               const CheckOptions& opts) {
  if (!is_unit(Scalar(V.module->ring(), 2)))
    throw DomainError("from_vector_valued needs 2 to be a unit of " +
                      V.module->ring().str());
  VerdictReport laws = check_vector_valued(V, opts);
  if (!laws.passed())
    throw DomainError("not a vector-valued Lie bracket: " + laws.describe());
  BiAffineMap bracket = heap_of(V.map_v, constant_biaffine(V.module, V.origin),
                                projection(V.module, 1));
  return certify_lie(V.module, std::move(bracket), Chirality::left, opts,
                     /*theorem_backed=*/true);
}

AffineMap adjoint_map(const LieAffgebra& L, const Point& a) {
  return fix_first(L.bracket, a);
}

LieAlgebraView retract_lie(const LieAffgebra& L, const Point& o,
                           const CheckOptions& opts) {
  Point oo = L.bracket.eval(o, o);
  BiAffineMap bracket_o = heap_fold({
      L.bracket,
      from_map_slot(fix_second(L.bracket, o), 0),  // [a,o]
      constant_biaffine(L.module, oo),
      from_map_slot(fix_first(L.bracket, o), 1),  // [o,b]
      constant_biaffine(L.module, o),
  });
  LieAlgebraView view{RetractedModule(L.module, o), std::move(bracket_o)};

  LawContext ctx;
  ctx.module = L.module;
  ctx.product = &view.bracket_o;
  ctx.points.emplace("origin", o);
  std::vector<std::string> laws = {"retract.additive_left", "retract.additive_right",
                                   "retract.alternating", "retract.jacobi"};
  if (L.module->is_chart() || L.module->ring().finite()) {
    laws.push_back("retract.homog_left");
    laws.push_back("retract.homog_right");
  }
  VerdictReport r = run_all(laws, ctx, opts, "retract.lie_algebra");
  if (!r.passed())
    throw InternalConsistencyError(
        "retract of a certified Lie affgebra is not a Lie algebra: " +
        r.describe());
  return view;
}

IsoSearchResult are_isomorphic_small(const LieAffgebra& L1, const LieAffgebra& L2,
                                     std::uint64_t budget) {
  auto n1 = L1.module->finite_size();
  auto n2 = L2.module->finite_size();
  if (!n1 || !n2)
    throw UnsupportedError("isomorphism search needs finite instances");
  if (*n1 > 32 || *n2 > 32)
    throw BudgetError("isomorphism search is limited to 32 elements", 32);
  IsoSearchResult result;
  if (*n1 != *n2 || !(L1.module->ring() == L2.module->ring())) return result;

  FiniteCtx ctx1(L1.module, budget);
  FiniteCtx ctx2(L2.module, budget);
  std::size_t n = ctx1.size();
  auto b1 = ctx1.biaffine_table(L1.bracket);
  auto b2 = ctx2.biaffine_table(L2.bracket);

  auto consider = [&](const std::vector<std::uint32_t>& f) -> bool {
    std::vector<bool> hit(n, false);
    for (std::uint32_t v : f) {
      if (hit[v]) return true;  // not a bijection, keep searching
      hit[v] = true;
    }
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (f[b1[a * n + b]] != b2[f[a] * n + f[b]]) return true;
    // found: rebuild as a map into L2's module
    if (L1.module->is_chart()) {
      AffineMap endo = ctx1.map_from_table(f);
      result.witness = AffineMap::chart(L1.module, L2.module,
                                        endo.chart_rep().M, endo.chart_rep().t);
    } else {
      std::vector<std::size_t> out(f.begin(), f.end());
      result.witness = AffineMap::table_unchecked(L1.module, L2.module,
                                                  std::move(out));
    }
    result.isomorphic = true;
    return false;
  };

  if (L1.module->is_chart()) {
    if (!L2.module->is_chart() || !L1.module->same_shape(*L2.module))
      return result;
    result.candidates = ctx1.for_each_affine_endo(consider);
    return result;
  }

  // table instances: walk all functions, keeping only affine bijections
  if (!L1.module->heap()->same_shape(*L2.module->heap())) {
    // distinct tables of equal size: relabelings are not attempted
    throw UnsupportedError("table isomorphism search expects matching heaps");
  }
  double log_total = static_cast<double>(n) * std::log2(static_cast<double>(n));
  if (log_total > 24)
    throw BudgetError("function space too large for table search", budget);
  std::vector<std::uint32_t> f(n, 0);
  bool ring_finite = L1.module->ring().finite();
  while (true) {
    ++result.candidates;
    bool affine = true;
    for (std::size_t a = 0; affine && a < n; ++a)
      for (std::size_t b = 0; affine && b < n; ++b) {
        for (std::size_t c = 0; affine && c < n; ++c)
          if (f[ctx1.tern(a, b, c)] != ctx2.tern(f[a], f[b], f[c])) affine = false;
        if (ring_finite)
          for (std::size_t s = 0; affine && s < ctx1.ring_size(); ++s)
            if (f[ctx1.act(s, a, b)] != ctx2.act(s, f[a], f[b])) affine = false;
      }
    if (affine && !consider(f)) return result;
    std::size_t pos = n;
    while (pos-- > 0) {
      if (++f[pos] < n) break;
      f[pos] = 0;
      if (pos == 0) return result;
    }
  }
}

}  // namespace afflie

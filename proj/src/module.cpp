#include "afflie/module.hpp"

#include <functional>
#include <sstream>

#include "afflie/errors.hpp"
#include "afflie/laws.hpp"

namespace afflie {

namespace detail {

Matrix mat_zero(const RingSpec& ring, std::size_t rows, std::size_t cols) {
  return Matrix(rows, Vector(cols, zero(ring)));
}

Matrix mat_identity(const RingSpec& ring, std::size_t n) {
  Matrix m = mat_zero(ring, n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = one(ring);
  return m;
}

Matrix mat_add(const Matrix& a, const Matrix& b) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] = add(a[i][j], b[i][j]);
  return out;
}

Matrix mat_sub(const Matrix& a, const Matrix& b) {
  Matrix out = a;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[i][j] = sub(a[i][j], b[i][j]);
  return out;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  std::size_t rows = a.size();
  std::size_t inner = b.size();
  std::size_t cols = inner ? b[0].size() : 0;
  if (!rows) return {};
  const RingSpec& ring = a[0].empty() ? (inner ? b[0][0].ring() : RingSpec{})
                                      : a[0][0].ring();
  Matrix out = mat_zero(ring, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < inner; ++k)
      for (std::size_t j = 0; j < cols; ++j)
        out[i][j] = add(out[i][j], mul(a[i][k], b[k][j]));
  return out;
}

Matrix mat_scale(const Scalar& s, const Matrix& a) {
  Matrix out = a;
  for (auto& row : out)
    for (auto& x : row) x = mul(s, x);
  return out;
}

Vector vec_zero(const RingSpec& ring, std::size_t n) {
  return Vector(n, zero(ring));
}

Vector vec_add(const Vector& a, const Vector& b) {
  Vector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = add(a[i], b[i]);
  return out;
}

Vector vec_sub(const Vector& a, const Vector& b) {
  Vector out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = sub(a[i], b[i]);
  return out;
}

Vector vec_scale(const Scalar& s, const Vector& a) {
  Vector out = a;
  for (auto& x : out) x = mul(s, x);
  return out;
}

Vector mat_apply(const Matrix& m, const Vector& x) {
  if (m.empty()) return {};
  Vector out = vec_zero(m[0].empty() ? x[0].ring() : m[0][0].ring(), m.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m[i].size(); ++j)
      out[i] = add(out[i], mul(m[i][j], x[j]));
  return out;
}

}  // namespace detail

using namespace detail;

ModulePtr Module::coordinate(RingSpec ring, std::size_t dim) {
  return ModulePtr(new Module(Heap::coordinate(ring, dim), ring, std::nullopt));
}

ModulePtr Module::table_unchecked(HeapPtr heap, RingSpec ring,
                                  std::vector<std::size_t> action) {
  if (!heap->is_table())
    throw DomainError("table modules require a table heap");
  if (!ring.finite())
    throw DomainError("table modules require a finite ring; use z_affine for " +
                      ring.str());
  std::size_t n = heap->table_rep().size;
  if (action.size() != ring.modulus * n * n)
    throw DomainError("action table has " + std::to_string(action.size()) +
                      " entries, expected " + std::to_string(ring.modulus * n * n));
  for (std::size_t v : action)
    if (v >= n) throw DomainError("action table entry out of range");
  return ModulePtr(new Module(std::move(heap), ring, std::move(action)));
}

ModulePtr Module::table(HeapPtr heap, RingSpec ring,
                        std::vector<std::size_t> action) {
  ModulePtr m = table_unchecked(std::move(heap), ring, std::move(action));
  VerdictReport v = check_affine_axioms(m);
  if (!v.passed())
    throw DomainError("not an affine module: " + v.describe());
  return m;
}

ModulePtr Module::z_affine(HeapPtr heap) {
  if (!heap->is_table())
    throw DomainError("z_affine expects a table heap; coordinate heaps carry "
                      "their own ring");
  return ModulePtr(new Module(std::move(heap), RingSpec::integers(), std::nullopt));
}

Point Module::origin() const {
  if (!is_chart()) throw DomainError("only chart modules have a canonical origin");
  return make(Vector(dim(), zero(ring_)));
}

std::vector<Point> Module::frame() const {
  std::vector<Point> pts;
  pts.push_back(origin());
  for (std::size_t i = 0; i < dim(); ++i) {
    Vector v(dim(), zero(ring_));
    v[i] = one(ring_);
    pts.push_back(make(std::move(v)));
  }
  return pts;
}

Point Module::action(const Scalar& alpha, const Point& base, const Point& b) const {
  detail::require_same_host(base, b);
  if (!(alpha.ring() == ring_))
    throw DomainError("scalar ring " + alpha.ring().str() +
                      " does not match module ring " + ring_.str());
  if (is_chart()) {
    // alpha*b - alpha*a + a componentwise
    Vector out;
    out.reserve(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      const Scalar& av = base.coords()[i];
      const Scalar& bv = b.coords()[i];
      out.push_back(add(sub(mul(alpha, bv), mul(alpha, av)), av));
    }
    return make(std::move(out));
  }
  if (action_) {
    std::size_t n = heap_->table_rep().size;
    std::size_t s = alpha.value().get_num().get_ui();
    return make_index((*action_)[(s * n + base.index()) * n + b.index()]);
  }
  // affine Z-module: the unique integer action
  const mpz_class& n = alpha.value().get_num();
  if (n.fits_slong_p()) return z_action(n.get_si(), base, b);
  // very large multiples: walk the bits directly
  bool negative = n < 0;
  mpz_class m = abs(n);
  Point acc = base;
  Point power = b;
  mp_bitcnt_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
  for (mp_bitcnt_t i = 0; i < bits; ++i) {
    if (mpz_tstbit(m.get_mpz_t(), i)) acc = ternary(acc, base, power);
    if (i + 1 < bits) power = ternary(power, base, power);
  }
  if (negative) acc = ternary(base, acc, base);
  return acc;
}

bool Module::same_shape(const Module& other) const {
  if (this == &other) return true;
  if (!(ring_ == other.ring_)) return false;
  if (!heap_->same_shape(*other.heap_)) return false;
  if (action_.has_value() != other.action_.has_value()) return false;
  return !action_ || *action_ == *other.action_;
}

Point translate(const Point& o, const Point& u, const Point& a) {
  return ternary(a, o, u);
}

RetractedModule::RetractedModule(ModulePtr base, Point origin)
    : base_(std::move(base)), origin_(std::move(origin)) {
  detail::require_same_host(origin_, origin_);
  if (origin_.host().get() != base_->heap().get() &&
      !origin_.host()->same_shape(*base_->heap()))
    throw DomainError("retract origin does not live in the module");
}

AffineMap AffineMap::chart(ModulePtr source, ModulePtr target, Matrix M, Vector t) {
  if (!source->is_chart() || !target->is_chart())
    throw DomainError("chart maps require chart modules");
  if (!(source->ring() == target->ring()))
    throw DomainError("affine maps require matching scalar rings");
  if (M.size() != target->dim() || t.size() != target->dim())
    throw DomainError("map shape mismatch: expected " +
                      std::to_string(target->dim()) + " rows");
  for (const auto& row : M)
    if (row.size() != source->dim())
      throw DomainError("map shape mismatch: expected " +
                        std::to_string(source->dim()) + " columns");
  return AffineMap(std::move(source), std::move(target), Chart{std::move(M), std::move(t)});
}

AffineMap AffineMap::table_unchecked(ModulePtr source, ModulePtr target,
                                     std::vector<std::size_t> out) {
  auto ssize = source->finite_size();
  auto tsize = target->finite_size();
  if (!ssize || !tsize)
    throw DomainError("table maps require finite modules");
  if (out.size() != *ssize)
    throw DomainError("map table has " + std::to_string(out.size()) +
                      " entries, expected " + std::to_string(*ssize));
  for (std::size_t v : out)
    if (v >= *tsize) throw DomainError("map table entry out of range");
  if (!(source->ring() == target->ring()))
    throw DomainError("affine maps require matching scalar rings");
  return AffineMap(std::move(source), std::move(target), Table{std::move(out)});
}

AffineMap AffineMap::table(ModulePtr source, ModulePtr target,
                           std::vector<std::size_t> out) {
  AffineMap f = table_unchecked(std::move(source), std::move(target), std::move(out));
  VerdictReport v = is_affine_hom(f);
  if (!v.passed())
    throw DomainError("not an affine homomorphism: " + v.describe());
  return f;
}

AffineMap AffineMap::identity(ModulePtr m) {
  if (m->is_chart()) {
    std::size_t d = m->dim();
    return chart(m, m, mat_identity(m->ring(), d), vec_zero(m->ring(), d));
  }
  std::vector<std::size_t> out(*m->finite_size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return table_unchecked(m, m, std::move(out));
}

AffineMap AffineMap::constant(ModulePtr source, Point value) {
  if (source->is_chart()) {
    return chart(source, source, mat_zero(source->ring(), source->dim(), source->dim()),
                 value.coords());
  }
  std::vector<std::size_t> out(*source->finite_size(), value.index());
  return table_unchecked(source, source, std::move(out));
}

Point AffineMap::operator()(const Point& a) const {
  if (is_chart()) {
    const Chart& c = chart_rep();
    return target_->make(vec_add(mat_apply(c.M, a.coords()), c.t));
  }
  return target_->element(table_rep().out[source_->heap()->index_of(a)]);
}

Point apply_map(const AffineMap& f, const Point& a) { return f(a); }

bool AffineMap::operator==(const AffineMap& o) const {
  if (!source_->same_shape(*o.source_) || !target_->same_shape(*o.target_))
    return false;
  if (is_chart() && o.is_chart())
    return chart_rep().M == o.chart_rep().M && chart_rep().t == o.chart_rep().t;
  if (!is_chart() && !o.is_chart()) return table_rep().out == o.table_rep().out;
  auto n = source_->finite_size();
  if (!n) throw UnsupportedError("cannot compare chart and table maps over an "
                                 "infinite module");
  for (std::uint64_t i = 0; i < *n; ++i) {
    Point p = source_->element(i);
    if ((*this)(p) != o(p)) return false;
  }
  return true;
}

std::string AffineMap::str() const {
  if (!is_chart()) return "table map";
  const Chart& c = chart_rep();
  std::ostringstream os;
  os << "(M=[";
  for (std::size_t i = 0; i < c.M.size(); ++i) {
    if (i) os << ";";
    for (std::size_t j = 0; j < c.M[i].size(); ++j) {
      if (j) os << ",";
      os << c.M[i][j].str();
    }
  }
  os << "], t=[";
  for (std::size_t i = 0; i < c.t.size(); ++i) {
    if (i) os << ",";
    os << c.t[i].str();
  }
  os << "])";
  return os.str();
}

namespace {

void require_same_signature(const AffineMap& f, const AffineMap& g) {
  if (!f.source()->same_shape(*g.source()) || !f.target()->same_shape(*g.target()))
    throw DomainError("affine maps have different signatures");
}

// Rebuilds a map as a value table by evaluation (finite modules only).
AffineMap tabulate(const ModulePtr& source, const ModulePtr& target,
                   const std::function<Point(const Point&)>& f) {
  auto n = source->finite_size();
  if (!n) throw UnsupportedError("operation needs chart maps or a finite module");
  std::vector<std::size_t> out;
  out.reserve(*n);
  for (std::uint64_t i = 0; i < *n; ++i)
    out.push_back(static_cast<std::size_t>(target->heap()->index_of(f(source->element(i)))));
  return AffineMap::table_unchecked(source, target, std::move(out));
}

}  // namespace

AffineMap compose(const AffineMap& f, const AffineMap& g) {
  if (!g.target()->same_shape(*f.source()))
    throw DomainError("maps are not composable");
  if (f.is_chart() && g.is_chart()) {
    const auto& cf = f.chart_rep();
    const auto& cg = g.chart_rep();
    return AffineMap::chart(g.source(), f.target(), mat_mul(cf.M, cg.M),
                            vec_add(mat_apply(cf.M, cg.t), cf.t));
  }
  return tabulate(g.source(), f.target(), [&](const Point& p) { return f(g(p)); });
}

AffineMap heap_of_maps(const AffineMap& f, const AffineMap& g, const AffineMap& h) {
  require_same_signature(f, g);
  require_same_signature(f, h);
  if (f.is_chart() && g.is_chart() && h.is_chart()) {
    const auto& cf = f.chart_rep();
    const auto& cg = g.chart_rep();
    const auto& ch = h.chart_rep();
    return AffineMap::chart(f.source(), f.target(),
                            mat_add(mat_sub(cf.M, cg.M), ch.M),
                            vec_add(vec_sub(cf.t, cg.t), ch.t));
  }
  return tabulate(f.source(), f.target(), [&](const Point& p) {
    return ternary(f(p), g(p), h(p));
  });
}

AffineMap act_on_maps(const Scalar& alpha, const AffineMap& f, const AffineMap& g) {
  require_same_signature(f, g);
  if (!(alpha.ring() == f.source()->ring()))
    throw DomainError("scalar ring does not match the maps' ring");
  if (f.is_chart() && g.is_chart()) {
    const auto& cf = f.chart_rep();
    const auto& cg = g.chart_rep();
    Matrix M = mat_add(mat_sub(mat_scale(alpha, cg.M), mat_scale(alpha, cf.M)), cf.M);
    Vector t = vec_add(vec_sub(vec_scale(alpha, cg.t), vec_scale(alpha, cf.t)), cf.t);
    return AffineMap::chart(f.source(), f.target(), std::move(M), std::move(t));
  }
  return tabulate(f.source(), f.target(), [&](const Point& p) {
    return f.source()->action(alpha, f(p), g(p));
  });
}

AffineMap linearise(const AffineMap& f, const Point& o_A, const Point& o_B) {
  if (f.is_chart()) {
    const auto& c = f.chart_rep();
    // <f(a), f(o_A), o_B> = M a + (o_B - M o_A)
    Vector t = vec_sub(o_B.coords(), mat_apply(c.M, o_A.coords()));
    return AffineMap::chart(f.source(), f.target(), c.M, std::move(t));
  }
  Point fo = f(o_A);
  return tabulate(f.source(), f.target(), [&](const Point& p) {
    return ternary(f(p), fo, o_B);
  });
}

}  // namespace afflie

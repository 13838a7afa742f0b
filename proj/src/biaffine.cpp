#include "afflie/biaffine.hpp"

#include <functional>

#include "afflie/errors.hpp"
#include "afflie/laws.hpp"

namespace afflie {

using namespace detail;

namespace {

Tensor3 tensor_zero(const RingSpec& ring, std::size_t d) {
  return Tensor3(d, mat_zero(ring, d, d));
}

Tensor3 tensor_add(const Tensor3& a, const Tensor3& b) {
  Tensor3 out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mat_add(a[i], b[i]);
  return out;
}

Tensor3 tensor_sub(const Tensor3& a, const Tensor3& b) {
  Tensor3 out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mat_sub(a[i], b[i]);
  return out;
}

Tensor3 tensor_scale(const Scalar& s, const Tensor3& a) {
  Tensor3 out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = mat_scale(s, a[i]);
  return out;
}

// B'[i][m][k] = sum_j B[i][j][k] M[j][m]  (compose an affine map into slot 1)
Tensor3 tensor_contract_first(const Tensor3& B, const Matrix& M) {
  std::size_t d = B.size();
  const RingSpec& ring = B.empty() ? RingSpec{} : B[0][0][0].ring();
  Tensor3 out = tensor_zero(ring, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        if (B[i][j][k].is_zero()) continue;
        for (std::size_t m = 0; m < d; ++m)
          out[i][m][k] = add(out[i][m][k], mul(B[i][j][k], M[j][m]));
      }
  return out;
}

// B'[i][j][m] = sum_k B[i][j][k] M[k][m]  (compose an affine map into slot 2)
Tensor3 tensor_contract_second(const Tensor3& B, const Matrix& M) {
  std::size_t d = B.size();
  const RingSpec& ring = B.empty() ? RingSpec{} : B[0][0][0].ring();
  Tensor3 out = tensor_zero(ring, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) {
        if (B[i][j][k].is_zero()) continue;
        for (std::size_t m = 0; m < d; ++m)
          out[i][j][m] = add(out[i][j][m], mul(B[i][j][k], M[k][m]));
      }
  return out;
}

// B'[i][j][k] = sum_m M[i][m] B[m][j][k]  (postcompose on the output)
Tensor3 tensor_contract_out(const Matrix& M, const Tensor3& B) {
  std::size_t d = B.size();
  const RingSpec& ring = B.empty() ? RingSpec{} : B[0][0][0].ring();
  Tensor3 out = tensor_zero(ring, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t m = 0; m < d; ++m) {
      if (M[i][m].is_zero()) continue;
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k)
          out[i][j][k] = add(out[i][j][k], mul(M[i][m], B[m][j][k]));
    }
  return out;
}

// Qadd[i][k] = sum_j B[i][j][k] t_j
Matrix tensor_fix_first(const Tensor3& B, const Vector& t) {
  std::size_t d = B.size();
  const RingSpec& ring = B.empty() ? RingSpec{} : B[0][0][0].ring();
  Matrix out = mat_zero(ring, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        out[i][k] = add(out[i][k], mul(B[i][j][k], t[j]));
  return out;
}

// Padd[i][j] = sum_k B[i][j][k] t_k
Matrix tensor_fix_second(const Tensor3& B, const Vector& t) {
  std::size_t d = B.size();
  const RingSpec& ring = B.empty() ? RingSpec{} : B[0][0][0].ring();
  Matrix out = mat_zero(ring, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        out[i][j] = add(out[i][j], mul(B[i][j][k], t[k]));
  return out;
}

BiAffineMap tabulate2(const ModulePtr& host,
                      const std::function<Point(const Point&, const Point&)>& f) {
  auto n = host->finite_size();
  if (!n)
    throw UnsupportedError("operation needs chart form or a finite module");
  std::vector<std::size_t> out;
  out.reserve(*n * *n);
  for (std::uint64_t a = 0; a < *n; ++a) {
    Point pa = host->element(a);
    for (std::uint64_t b = 0; b < *n; ++b)
      out.push_back(static_cast<std::size_t>(
          host->heap()->index_of(f(pa, host->element(b)))));
  }
  return BiAffineMap::table_unchecked(host, std::move(out));
}

void require_same_host_map(const BiAffineMap& F, const BiAffineMap& G) {
  if (!F.host()->same_shape(*G.host()))
    throw DomainError("bi-affine maps live on different modules");
}

}  // namespace

BiAffineMap BiAffineMap::chart(ModulePtr host, Tensor3 B, Matrix P, Matrix Q,
                               Vector r) {
  if (!host->is_chart())
    throw DomainError("chart bi-affine maps require a chart module");
  std::size_t d = host->dim();
  auto check_matrix = [&](const Matrix& m, const char* name) {
    if (m.size() != d)
      throw DomainError(std::string(name) + " must be " + std::to_string(d) +
                        "x" + std::to_string(d));
    for (const auto& row : m)
      if (row.size() != d)
        throw DomainError(std::string(name) + " must be " + std::to_string(d) +
                          "x" + std::to_string(d));
  };
  if (B.size() != d) throw DomainError("B must have dim slices");
  for (const auto& s : B) check_matrix(s, "B slice");
  check_matrix(P, "P");
  check_matrix(Q, "Q");
  if (r.size() != d) throw DomainError("r must have dim entries");
  return BiAffineMap(std::move(host), Chart{std::move(B), std::move(P),
                                            std::move(Q), std::move(r)});
}

BiAffineMap BiAffineMap::table_unchecked(ModulePtr host,
                                         std::vector<std::size_t> out) {
  auto n = host->finite_size();
  if (!n) throw DomainError("table bi-affine maps require a finite module");
  if (out.size() != *n * *n)
    throw DomainError("bi-affine table has " + std::to_string(out.size()) +
                      " entries, expected " + std::to_string(*n * *n));
  for (std::size_t v : out)
    if (v >= *n) throw DomainError("bi-affine table entry out of range");
  return BiAffineMap(std::move(host), Table{std::move(out)});
}

BiAffineMap BiAffineMap::table(ModulePtr host, std::vector<std::size_t> out) {
  BiAffineMap F = table_unchecked(std::move(host), std::move(out));
  VerdictReport v = check_biaffine(F);
  if (!v.passed())
    throw DomainError("operation is not bi-affine: " + v.describe());
  return F;
}

Point BiAffineMap::eval(const Point& a, const Point& b) const {
  detail::require_same_host(a, b);
  if (a.host().get() != host_->heap().get() && !a.host()->same_shape(*host_->heap()))
    throw DomainError("points do not live on this bi-affine map's module");
  if (is_chart()) {
    const Chart& c = chart_rep();
    std::size_t d = host_->dim();
    Vector out = c.r;
    for (std::size_t i = 0; i < d; ++i) {
      Scalar acc = out[i];
      for (std::size_t j = 0; j < d; ++j) {
        if (a.coords()[j].is_zero()) continue;
        for (std::size_t k = 0; k < d; ++k) {
          if (c.B[i][j][k].is_zero()) continue;
          acc = add(acc, mul(mul(c.B[i][j][k], a.coords()[j]), b.coords()[k]));
        }
      }
      for (std::size_t j = 0; j < d; ++j)
        if (!c.P[i][j].is_zero()) acc = add(acc, mul(c.P[i][j], a.coords()[j]));
      for (std::size_t k = 0; k < d; ++k)
        if (!c.Q[i][k].is_zero()) acc = add(acc, mul(c.Q[i][k], b.coords()[k]));
      out[i] = acc;
    }
    return host_->make(std::move(out));
  }
  std::size_t n = host_->heap()->table_rep().size;
  return host_->make_index(table_rep().out[a.index() * n + b.index()]);
}

bool BiAffineMap::operator==(const BiAffineMap& o) const {
  if (!host_->same_shape(*o.host_)) return false;
  if (is_chart() && o.is_chart()) {
    const Chart& x = chart_rep();
    const Chart& y = o.chart_rep();
    return x.B == y.B && x.P == y.P && x.Q == y.Q && x.r == y.r;
  }
  if (!is_chart() && !o.is_chart()) return table_rep().out == o.table_rep().out;
  auto n = host_->finite_size();
  if (!n)
    throw UnsupportedError("cannot compare chart and table bi-affine maps over "
                           "an infinite module");
  for (std::uint64_t a = 0; a < *n; ++a)
    for (std::uint64_t b = 0; b < *n; ++b) {
      Point pa = host_->element(a), pb = host_->element(b);
      if (eval(pa, pb) != o.eval(pa, pb)) return false;
    }
  return true;
}

BiAffineMap precompose_slot(const BiAffineMap& F, const AffineMap& N, int slot) {
  if (!N.is_endo() || !N.source()->same_shape(*F.host()))
    throw DomainError("precompose expects an endomorphism of the host module");
  if (F.is_chart() && N.is_chart()) {
    const auto& c = F.chart_rep();
    const auto& m = N.chart_rep();
    if (slot == 0) {
      Tensor3 B = tensor_contract_first(c.B, m.M);
      Matrix P = mat_mul(c.P, m.M);
      Matrix Q = mat_add(c.Q, tensor_fix_first(c.B, m.t));
      Vector r = vec_add(c.r, mat_apply(c.P, m.t));
      return BiAffineMap::chart(F.host(), std::move(B), std::move(P), std::move(Q),
                                std::move(r));
    }
    Tensor3 B = tensor_contract_second(c.B, m.M);
    Matrix P = mat_add(c.P, tensor_fix_second(c.B, m.t));
    Matrix Q = mat_mul(c.Q, m.M);
    Vector r = vec_add(c.r, mat_apply(c.Q, m.t));
    return BiAffineMap::chart(F.host(), std::move(B), std::move(P), std::move(Q),
                              std::move(r));
  }
  return tabulate2(F.host(), [&](const Point& a, const Point& b) {
    return slot == 0 ? F.eval(N(a), b) : F.eval(a, N(b));
  });
}

BiAffineMap postcompose(const AffineMap& N, const BiAffineMap& F) {
  if (!N.is_endo() || !N.source()->same_shape(*F.host()))
    throw DomainError("postcompose expects an endomorphism of the host module");
  if (F.is_chart() && N.is_chart()) {
    const auto& c = F.chart_rep();
    const auto& m = N.chart_rep();
    return BiAffineMap::chart(F.host(), tensor_contract_out(m.M, c.B),
                              mat_mul(m.M, c.P), mat_mul(m.M, c.Q),
                              vec_add(mat_apply(m.M, c.r), m.t));
  }
  return tabulate2(F.host(), [&](const Point& a, const Point& b) {
    return N(F.eval(a, b));
  });
}

BiAffineMap heap_of(const BiAffineMap& F, const BiAffineMap& G, const BiAffineMap& H) {
  require_same_host_map(F, G);
  require_same_host_map(F, H);
  if (F.is_chart() && G.is_chart() && H.is_chart()) {
    const auto& f = F.chart_rep();
    const auto& g = G.chart_rep();
    const auto& h = H.chart_rep();
    return BiAffineMap::chart(F.host(), tensor_add(tensor_sub(f.B, g.B), h.B),
                              mat_add(mat_sub(f.P, g.P), h.P),
                              mat_add(mat_sub(f.Q, g.Q), h.Q),
                              vec_add(vec_sub(f.r, g.r), h.r));
  }
  return tabulate2(F.host(), [&](const Point& a, const Point& b) {
    return ternary(F.eval(a, b), G.eval(a, b), H.eval(a, b));
  });
}

BiAffineMap heap_fold(const std::vector<BiAffineMap>& maps) {
  if (maps.empty() || maps.size() % 2 == 0)
    throw ArityError("bi-affine heap folds take an odd number of maps");
  BiAffineMap acc = maps[0];
  for (std::size_t i = 1; i + 1 < maps.size(); i += 2)
    acc = heap_of(acc, maps[i], maps[i + 1]);
  return acc;
}

BiAffineMap blend(const Scalar& alpha, const BiAffineMap& F, const BiAffineMap& G) {
  require_same_host_map(F, G);
  if (!(alpha.ring() == F.host()->ring()))
    throw DomainError("blend scalar ring does not match the module ring");
  if (F.is_chart() && G.is_chart()) {
    const auto& f = F.chart_rep();
    const auto& g = G.chart_rep();
    auto mix_t = [&](const Tensor3& x, const Tensor3& y) {
      return tensor_add(tensor_sub(tensor_scale(alpha, y), tensor_scale(alpha, x)), x);
    };
    auto mix_m = [&](const Matrix& x, const Matrix& y) {
      return mat_add(mat_sub(mat_scale(alpha, y), mat_scale(alpha, x)), x);
    };
    auto mix_v = [&](const Vector& x, const Vector& y) {
      return vec_add(vec_sub(vec_scale(alpha, y), vec_scale(alpha, x)), x);
    };
    return BiAffineMap::chart(F.host(), mix_t(f.B, g.B), mix_m(f.P, g.P),
                              mix_m(f.Q, g.Q), mix_v(f.r, g.r));
  }
  return tabulate2(F.host(), [&](const Point& a, const Point& b) {
    return F.host()->action(alpha, F.eval(a, b), G.eval(a, b));
  });
}

BiAffineMap opposite(const BiAffineMap& F) {
  if (F.is_chart()) {
    const auto& c = F.chart_rep();
    std::size_t d = c.B.size();
    Tensor3 B = c.B;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) B[i][j][k] = c.B[i][k][j];
    return BiAffineMap::chart(F.host(), std::move(B), c.Q, c.P, c.r);
  }
  return tabulate2(F.host(), [&](const Point& a, const Point& b) {
    return F.eval(b, a);
  });
}

BiAffineMap from_map_slot(const AffineMap& s, int slot) {
  if (!s.is_endo()) throw DomainError("from_map_slot expects an endomorphism");
  const ModulePtr& host = s.source();
  if (s.is_chart()) {
    const auto& c = s.chart_rep();
    const RingSpec& ring = host->ring();
    std::size_t d = host->dim();
    Matrix Z = detail::mat_zero(ring, d, d);
    return slot == 0 ? BiAffineMap::chart(host, tensor_zero(ring, d), c.M, Z, c.t)
                     : BiAffineMap::chart(host, tensor_zero(ring, d), Z, c.M, c.t);
  }
  return tabulate2(host, [&](const Point& a, const Point& b) {
    return slot == 0 ? s(a) : s(b);
  });
}

BiAffineMap projection(const ModulePtr& host, int slot) {
  return from_map_slot(AffineMap::identity(host), slot);
}

BiAffineMap constant_biaffine(const ModulePtr& host, const Point& c) {
  if (host->is_chart()) {
    const RingSpec& ring = host->ring();
    std::size_t d = host->dim();
    Matrix Z = detail::mat_zero(ring, d, d);
    return BiAffineMap::chart(host, tensor_zero(ring, d), Z, Z, c.coords());
  }
  return tabulate2(host, [&](const Point&, const Point&) { return c; });
}

AffineMap fix_first(const BiAffineMap& F, const Point& a) {
  if (F.is_chart()) {
    const auto& c = F.chart_rep();
    Matrix M = mat_add(c.Q, tensor_fix_first(c.B, a.coords()));
    Vector t = vec_add(mat_apply(c.P, a.coords()), c.r);
    return AffineMap::chart(F.host(), F.host(), std::move(M), std::move(t));
  }
  auto n = F.host()->finite_size();
  std::vector<std::size_t> out;
  out.reserve(*n);
  for (std::uint64_t b = 0; b < *n; ++b)
    out.push_back(static_cast<std::size_t>(
        F.host()->heap()->index_of(F.eval(a, F.host()->element(b)))));
  return AffineMap::table_unchecked(F.host(), F.host(), std::move(out));
}

AffineMap fix_second(const BiAffineMap& F, const Point& b) {
  if (F.is_chart()) {
    const auto& c = F.chart_rep();
    Matrix M = mat_add(c.P, tensor_fix_second(c.B, b.coords()));
    Vector t = vec_add(mat_apply(c.Q, b.coords()), c.r);
    return AffineMap::chart(F.host(), F.host(), std::move(M), std::move(t));
  }
  auto n = F.host()->finite_size();
  std::vector<std::size_t> out;
  out.reserve(*n);
  for (std::uint64_t a = 0; a < *n; ++a)
    out.push_back(static_cast<std::size_t>(
        F.host()->heap()->index_of(F.eval(F.host()->element(a), b))));
  return AffineMap::table_unchecked(F.host(), F.host(), std::move(out));
}

}  // namespace afflie

#include "afflie/laws.hpp"

#include <atomic>
#include <mutex>
#include <sstream>
#include <thread>

#include "afflie/errors.hpp"

namespace afflie {

std::string VerdictReport::describe() const {
  std::ostringstream os;
  os << law << " [" << to_string(strategy) << "] " << to_string(result);
  if (witness) {
    os << " at (";
    for (std::size_t i = 0; i < witness->args.size(); ++i) {
      if (i) os << ", ";
      os << witness->args[i];
    }
    os << "): lhs=" << witness->lhs << ", rhs=" << witness->rhs;
  }
  if (!message.empty()) os << ": " << message;
  return os.str();
}

const AffineMap& LawContext::map(const std::string& name) const {
  auto it = maps.find(name);
  if (it == maps.end() || !it->second)
    throw DomainError("law context is missing map '" + name + "'");
  return *it->second;
}

const BiAffineMap& LawContext::biaffine(const std::string& name) const {
  auto it = biaffines.find(name);
  if (it == biaffines.end() || !it->second)
    throw DomainError("law context is missing bi-affine map '" + name + "'");
  return *it->second;
}

const Point& LawContext::point(const std::string& name) const {
  auto it = points.find(name);
  if (it == points.end())
    throw DomainError("law context is missing point '" + name + "'");
  return it->second;
}

namespace {

using Eval = std::pair<Point, Point>;

std::string need_product(const LawContext& c) {
  return c.product ? "" : "needs a product";
}
std::string need_bracket(const LawContext& c) {
  return c.bracket ? "" : "needs a bracket";
}
std::string need_maps(const LawContext& c, std::initializer_list<const char*> names) {
  for (const char* n : names)
    if (!c.maps.count(n)) return std::string("needs map '") + n + "'";
  return "";
}
std::string need_biaffines(const LawContext& c,
                           std::initializer_list<const char*> names) {
  for (const char* n : names)
    if (!c.biaffines.count(n)) return std::string("needs bi-affine '") + n + "'";
  return "";
}
std::string need_point(const LawContext& c, const char* name) {
  return c.points.count(name) ? "" : std::string("needs point '") + name + "'";
}

std::vector<Slot> pts(std::initializer_list<const char*> names) {
  std::vector<Slot> s;
  for (const char* n : names) s.push_back({SlotKind::point, n});
  return s;
}

std::vector<Slot> mixed(std::initializer_list<const char*> scalar_names,
                        std::initializer_list<const char*> point_names) {
  std::vector<Slot> s;
  for (const char* n : scalar_names) s.push_back({SlotKind::scalar, n});
  for (const char* n : point_names) s.push_back({SlotKind::point, n});
  return s;
}

std::map<std::string, Law> build_registry() {
  std::map<std::string, Law> reg;
  auto def = [&](Law law) { reg.emplace(law.id, std::move(law)); };
  auto none = [](const LawContext&) { return std::string(); };

  // ---- heap axioms (Def-order) and derived heap laws
  def({"heap.para_assoc", pts({"a", "b", "c", "d", "e"}), true, none,
       [](const LawContext&, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         return {ternary(ternary(p[0], p[1], p[2]), p[3], p[4]),
                 ternary(p[0], p[1], ternary(p[2], p[3], p[4]))};
       }});
  def({"heap.malcev_right", pts({"a", "b"}), true, none,
       [](const LawContext&, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         return {ternary(p[0], p[1], p[1]), p[0]};
       }});
  def({"heap.malcev_left", pts({"a", "b"}), true, none,
       [](const LawContext&, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         return {ternary(p[1], p[1], p[0]), p[0]};
       }});
  def({"heap.symmetry", pts({"a", "b", "c"}), true, none,
       [](const LawContext&, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         return {ternary(p[0], p[1], p[2]), ternary(p[2], p[1], p[0])};
       }});
  def({"heap.cyclic", pts({"a", "b", "c"}), true, none,
       [](const LawContext&, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         Point d = ternary(p[0], p[1], p[2]);
         return {ternary(p[1], p[2], d), p[0]};
       }});

  // ---- affine module axioms (Def 2.2 items (a)-(d)) and their derived laws
  def({"module.act_point_hom", mixed({"alpha"}, {"a", "b", "c", "d"}), true, none,
       [](const LawContext& c, std::span<const Scalar> s, std::span<const Point> p) -> Eval {
         return {c.module->action(s[0], p[0], ternary(p[1], p[2], p[3])),
                 ternary(c.module->action(s[0], p[0], p[1]),
                         c.module->action(s[0], p[0], p[2]),
                         c.module->action(s[0], p[0], p[3]))};
       }});
  def({"module.act_scalar_hom", mixed({"alpha", "beta", "gamma"}, {"a", "b"}), true,
       none,
       [](const LawContext& c, std::span<const Scalar> s, std::span<const Point> p) -> Eval {
         Scalar combo = add(sub(s[0], s[1]), s[2]);
         return {c.module->action(combo, p[0], p[1]),
                 ternary(c.module->action(s[0], p[0], p[1]),
                         c.module->action(s[1], p[0], p[1]),
                         c.module->action(s[2], p[0], p[1]))};
       }});
  def({"module.act_assoc", mixed({"alpha", "beta"}, {"a", "b"}), true, none,
       [](const LawContext& c, std::span<const Scalar> s, std::span<const Point> p) -> Eval {
         return {c.module->action(mul(s[0], s[1]), p[0], p[1]),
                 c.module->action(s[0], p[0], c.module->action(s[1], p[0], p[1]))};
       }});
  def({"module.base_change", mixed({"alpha"}, {"a", "b", "c"}), true, none,
       [](const LawContext& c, std::span<const Scalar> s, std::span<const Point> p) -> Eval {
         return {c.module->action(s[0], p[0], p[1]),
                 ternary(c.module->action(s[0], p[2], p[1]),
                         c.module->action(s[0], p[2], p[0]), p[0])};
       }});
  def({"module.act_zero", pts({"a", "b"}), true, none,
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         return {c.module->action(zero(c.module->ring()), p[0], p[1]), p[0]};
       }});
  def({"module.act_one", pts({"a", "b"}), true, none,
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         return {c.module->action(one(c.module->ring()), p[0], p[1]), p[1]};
       }});
  def({"module.heap_middle", mixed({"alpha"}, {"a", "b", "c", "d"}), true, none,
       [](const LawContext& c, std::span<const Scalar> s, std::span<const Point> p) -> Eval {
         return {c.module->action(s[0], ternary(p[0], p[1], p[2]), p[3]),
                 ternary(c.module->action(s[0], p[0], p[3]),
                         c.module->action(s[0], p[1], p[3]),
                         c.module->action(s[0], p[2], p[3]))};
       }});
  def({"module.act_idem", mixed({"alpha"}, {"a"}), true, none,
       [](const LawContext& c, std::span<const Scalar> s, std::span<const Point> p) -> Eval {
         return {c.module->action(s[0], p[0], p[0]), p[0]};
       }});

  // ---- affine map laws
  def({"map.affine", mixed({"alpha"}, {"a", "b"}), true,
       [](const LawContext& c) { return need_maps(c, {"f"}); },
       [](const LawContext& c, std::span<const Scalar> s, std::span<const Point> p) -> Eval {
         const AffineMap& f = c.map("f");
         return {f(c.module->action(s[0], p[0], p[1])),
                 c.module->action(s[0], f(p[0]), f(p[1]))};
       }});
  def({"map.heap_hom", pts({"a", "b", "c"}), true,
       [](const LawContext& c) { return need_maps(c, {"f"}); },
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const AffineMap& f = c.map("f");
         return {f(ternary(p[0], p[1], p[2])), ternary(f(p[0]), f(p[1]), f(p[2]))};
       }});
  def({"map.commute", pts({"a"}), true,
       [](const LawContext& c) { return need_maps(c, {"f", "g"}); },
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const AffineMap& f = c.map("f");
         const AffineMap& g = c.map("g");
         return {f(g(p[0])), g(f(p[0]))};
       }});
  def({"map.equal", pts({"a"}), true,
       [](const LawContext& c) { return need_maps(c, {"f", "g"}); },
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         return {c.map("f")(p[0]), c.map("g")(p[0])};
       }});

  // ---- product laws
  def({"mul.assoc", pts({"a", "b", "c"}), true, need_product,
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const BiAffineMap& F = *c.product;
         return {F.eval(F.eval(p[0], p[1]), p[2]), F.eval(p[0], F.eval(p[1], p[2]))};
       }});
  def({"mul.truss_left", pts({"a", "b", "c", "d"}), true, need_product,
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const BiAffineMap& F = *c.product;
         return {F.eval(p[0], ternary(p[1], p[2], p[3])),
                 ternary(F.eval(p[0], p[1]), F.eval(p[0], p[2]), F.eval(p[0], p[3]))};
       }});
  def({"mul.truss_right", pts({"a", "b", "c", "d"}), true, need_product,
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const BiAffineMap& F = *c.product;
         return {F.eval(ternary(p[1], p[2], p[3]), p[0]),
                 ternary(F.eval(p[1], p[0]), F.eval(p[2], p[0]), F.eval(p[3], p[0]))};
       }});
  def({"mul.biaffine_left", mixed({"alpha"}, {"a", "b", "c"}), true, need_product,
       [](const LawContext& c, std::span<const Scalar> s, std::span<const Point> p) -> Eval {
         const BiAffineMap& F = *c.product;
         return {F.eval(c.module->action(s[0], p[0], p[1]), p[2]),
                 c.module->action(s[0], F.eval(p[0], p[2]), F.eval(p[1], p[2]))};
       }});
  def({"mul.biaffine_right", mixed({"alpha"}, {"a", "b", "c"}), true, need_product,
       [](const LawContext& c, std::span<const Scalar> s, std::span<const Point> p) -> Eval {
         const BiAffineMap& F = *c.product;
         return {F.eval(p[2], c.module->action(s[0], p[0], p[1])),
                 c.module->action(s[0], F.eval(p[2], p[0]), F.eval(p[2], p[1]))};
       }});
  def({"mul.pre_lie_left", pts({"a", "b", "c"}), true, need_product,
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const BiAffineMap& F = *c.product;
         return {F.eval(F.eval(p[0], p[1]), p[2]),
                 ternary(F.eval(p[0], F.eval(p[1], p[2])),
                         F.eval(p[1], F.eval(p[0], p[2])),
                         F.eval(F.eval(p[1], p[0]), p[2]))};
       }});
  def({"mul.pre_lie_right", pts({"a", "b", "c"}), true, need_product,
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const BiAffineMap& F = *c.product;
         return {F.eval(p[0], F.eval(p[1], p[2])),
                 ternary(F.eval(F.eval(p[0], p[1]), p[2]),
                         F.eval(F.eval(p[0], p[2]), p[1]),
                         F.eval(p[0], F.eval(p[2], p[1])))};
       }});
  def({"mul.sigma", pts({"a", "b"}), true,
       [](const LawContext& c) {
         std::string r = need_product(c);
         return r.empty() ? need_maps(c, {"sigma"}) : r;
       },
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const BiAffineMap& F = *c.product;
         const AffineMap& sg = c.map("sigma");
         Point ab = F.eval(p[0], p[1]);
         return {sg(ab), ternary(F.eval(sg(p[0]), p[1]), sg(ab), F.eval(p[0], sg(p[1])))};
       }});
  def({"mul.sigma_retracted", pts({"a", "b"}), true,
       [](const LawContext& c) {
         std::string r = need_product(c);
         return r.empty() ? need_maps(c, {"sigma"}) : r;
       },
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         // the origin-free form of 2 sigma(ab) = sigma(a)b + a sigma(b)
         const BiAffineMap& F = *c.product;
         const AffineMap& sg = c.map("sigma");
         Point ab = sg(F.eval(p[0], p[1]));
         return {ternary(ab, F.eval(sg(p[0]), p[1]), ab), F.eval(p[0], sg(p[1]))};
       }});
  def({"mul.leibniz", pts({"a", "b"}), true,
       [](const LawContext& c) {
         std::string r = need_product(c);
         return r.empty() ? need_maps(c, {"X", "sigma"}) : r;
       },
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const BiAffineMap& F = *c.product;
         const AffineMap& X = c.map("X");
         const AffineMap& sg = c.map("sigma");
         return {X(F.eval(p[0], p[1])),
                 ternary(F.eval(X(p[0]), p[1]), sg(F.eval(p[0], p[1])),
                         F.eval(p[0], X(p[1])))};
       }});

  // ---- Lie affgebra laws
  def({"lie.anti", pts({"a", "b"}), true, need_bracket,
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const BiAffineMap& L = *c.bracket;
         return {ternary(L.eval(p[0], p[1]), L.eval(p[0], p[0]), L.eval(p[1], p[0])),
                 L.eval(p[1], p[1])};
       }});
  def({"lie.anti_alt", pts({"a", "b"}), true, need_bracket,
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const BiAffineMap& L = *c.bracket;
         return {ternary(L.eval(p[0], p[1]), L.eval(p[1], p[1]), L.eval(p[1], p[0])),
                 L.eval(p[0], p[0])};
       }});
  def({"lie.jacobi_left", pts({"a", "b", "c"}), true, need_bracket,
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const BiAffineMap& L = *c.bracket;
         return {fold({L.eval(p[0], L.eval(p[1], p[2])), L.eval(p[0], p[0]),
                       L.eval(p[1], L.eval(p[2], p[0])), L.eval(p[1], p[1]),
                       L.eval(p[2], L.eval(p[0], p[1]))}),
                 L.eval(p[2], p[2])};
       }});
  def({"lie.jacobi_right", pts({"a", "b", "c"}), true, need_bracket,
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const BiAffineMap& L = *c.bracket;
         return {fold({L.eval(L.eval(p[0], p[1]), p[2]), L.eval(p[0], p[0]),
                       L.eval(L.eval(p[1], p[2]), p[0]), L.eval(p[1], p[1]),
                       L.eval(L.eval(p[2], p[0]), p[1])}),
                 L.eval(p[2], p[2])};
       }});
  def({"lie.jacobi_left_perm", pts({"a", "b", "c"}), true, need_bracket,
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         // same identity with the diagonal terms placed differently
         const BiAffineMap& L = *c.bracket;
         return {fold({L.eval(p[0], L.eval(p[1], p[2])), L.eval(p[1], p[1]),
                       L.eval(p[1], L.eval(p[2], p[0])), L.eval(p[2], p[2]),
                       L.eval(p[2], L.eval(p[0], p[1]))}),
                 L.eval(p[0], p[0])};
       }});
  def({"lie.idempotent", pts({"a"}), true, need_bracket,
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         return {c.bracket->eval(p[0], p[0]), p[0]};
       }});

  // ---- vector-valued bracket laws (context: biaffine "v", point "origin")
  def({"vector.anti", pts({"a", "b"}), true,
       [](const LawContext& c) {
         std::string r = need_biaffines(c, {"v"});
         return r.empty() ? need_point(c, "origin") : r;
       },
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const BiAffineMap& V = c.biaffine("v");
         const Point& o = c.point("origin");
         return {ternary(V.eval(p[0], p[1]), o, V.eval(p[1], p[0])), o};
       }});
  def({"vector.jacobi_o", pts({"a", "b", "c"}), true,
       [](const LawContext& c) {
         std::string r = need_biaffines(c, {"v"});
         return r.empty() ? need_point(c, "origin") : r;
       },
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const BiAffineMap& V = c.biaffine("v");
         const Point& o = c.point("origin");
         auto br = [&](const Point& x, const Point& y) {
           return ternary(V.eval(x, y), o, y);
         };
         return {fold({br(p[0], br(p[1], p[2])), br(p[0], p[0]),
                       br(p[1], br(p[2], p[0])), br(p[1], p[1]),
                       br(p[2], br(p[0], p[1])), br(p[2], p[2]), o}),
                 o};
       }});

  // ---- Nijenhuis laws
  def({"nij.condition", pts({"a", "b"}), true,
       [](const LawContext& c) {
         std::string r = need_bracket(c);
         return r.empty() ? need_maps(c, {"N"}) : r;
       },
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const BiAffineMap& L = *c.bracket;
         const AffineMap& N = c.map("N");
         Point na = N(p[0]), nb = N(p[1]);
         return {L.eval(na, nb),
                 N(ternary(L.eval(na, p[1]), N(L.eval(p[0], p[1])), L.eval(p[0], nb)))};
       }});
  def({"nij.induct1", pts({"a", "b"}), true,
       [](const LawContext& c) {
         std::string r = need_bracket(c);
         return r.empty() ? need_maps(c, {"N", "Nk", "Nk1"}) : r;
       },
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const BiAffineMap& L = *c.bracket;
         const AffineMap& N = c.map("N");
         const AffineMap& Nk = c.map("Nk");
         const AffineMap& Nk1 = c.map("Nk1");
         return {L.eval(Nk(p[0]), N(p[1])),
                 fold({N(L.eval(Nk(p[0]), p[1])), Nk1(L.eval(p[0], p[1])),
                       Nk(L.eval(p[0], N(p[1])))})};
       }});
  def({"nij.induct2", pts({"a", "b"}), true,
       [](const LawContext& c) {
         std::string r = need_bracket(c);
         return r.empty() ? need_maps(c, {"N", "Nk", "Nk1"}) : r;
       },
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const BiAffineMap& L = *c.bracket;
         const AffineMap& N = c.map("N");
         const AffineMap& Nk = c.map("Nk");
         const AffineMap& Nk1 = c.map("Nk1");
         return {L.eval(N(p[0]), Nk(p[1])),
                 fold({N(L.eval(p[0], Nk(p[1]))), Nk1(L.eval(p[0], p[1])),
                       Nk(L.eval(N(p[0]), p[1]))})};
       }});
  def({"nij.induct3", pts({"a", "b"}), true,
       [](const LawContext& c) {
         std::string r = need_bracket(c);
         return r.empty() ? need_maps(c, {"N", "Nk", "Nk1"}) : r;
       },
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const BiAffineMap& L = *c.bracket;
         const AffineMap& N = c.map("N");
         const AffineMap& Nk = c.map("Nk");
         const AffineMap& Nk1 = c.map("Nk1");
         return {Nk1(L.eval(p[0], p[1])),
                 fold({N(L.eval(Nk(p[0]), p[1])), L.eval(Nk(p[0]), N(p[1])),
                       Nk(L.eval(p[0], N(p[1])))})};
       }});
  def({"nij.induct4", pts({"a", "b"}), true,
       [](const LawContext& c) {
         std::string r = need_bracket(c);
         return r.empty() ? need_maps(c, {"N", "Nk", "Nk1"}) : r;
       },
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const BiAffineMap& L = *c.bracket;
         const AffineMap& N = c.map("N");
         const AffineMap& Nk = c.map("Nk");
         const AffineMap& Nk1 = c.map("Nk1");
         return {Nk1(L.eval(p[0], p[1])),
                 fold({Nk(L.eval(N(p[0]), p[1])), L.eval(N(p[0]), Nk(p[1])),
                       N(L.eval(p[0], Nk(p[1])))})};
       }});
  def({"nij.equal48", pts({"a", "b"}), true,
       [](const LawContext& c) {
         std::string r = need_maps(c, {"Nl"});
         return r.empty() ? need_biaffines(c, {"bracket_kl", "bracket_k"}) : r;
       },
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const AffineMap& Nl = c.map("Nl");
         const BiAffineMap& Bkl = c.biaffine("bracket_kl");
         const BiAffineMap& Bk = c.biaffine("bracket_k");
         return {Nl(Bkl.eval(p[0], p[1])), Bk.eval(Nl(p[0]), Nl(p[1]))};
       }});
  def({"nij.hierarchy", pts({"a", "b"}), true,
       [](const LawContext& c) {
         std::string r = need_maps(c, {"N"});
         return r.empty() ? need_biaffines(c, {"bracket_k", "bracket_k1"}) : r;
       },
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const AffineMap& N = c.map("N");
         const BiAffineMap& Bk = c.biaffine("bracket_k");
         const BiAffineMap& Bk1 = c.biaffine("bracket_k1");
         return {Bk1.eval(p[0], p[1]),
                 fold({Bk.eval(N(p[0]), p[1]), N(Bk.eval(p[0], p[1])),
                       Bk.eval(p[0], N(p[1]))})};
       }});

  // ---- retracted (classical, origin-fixed) laws; product = the retracted op
  def({"retract.additive_left", pts({"a", "b", "c"}), true,
       [](const LawContext& c) {
         std::string r = need_product(c);
         return r.empty() ? need_point(c, "origin") : r;
       },
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const BiAffineMap& F = *c.product;
         const Point& o = c.point("origin");
         return {F.eval(ternary(p[0], o, p[1]), p[2]),
                 ternary(F.eval(p[0], p[2]), o, F.eval(p[1], p[2]))};
       }});
  def({"retract.additive_right", pts({"a", "b", "c"}), true,
       [](const LawContext& c) {
         std::string r = need_product(c);
         return r.empty() ? need_point(c, "origin") : r;
       },
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const BiAffineMap& F = *c.product;
         const Point& o = c.point("origin");
         return {F.eval(p[2], ternary(p[0], o, p[1])),
                 ternary(F.eval(p[2], p[0]), o, F.eval(p[2], p[1]))};
       }});
  def({"retract.homog_left", mixed({"alpha"}, {"a", "b"}), true,
       [](const LawContext& c) {
         std::string r = need_product(c);
         return r.empty() ? need_point(c, "origin") : r;
       },
       [](const LawContext& c, std::span<const Scalar> s, std::span<const Point> p) -> Eval {
         const BiAffineMap& F = *c.product;
         const Point& o = c.point("origin");
         return {F.eval(c.module->action(s[0], o, p[0]), p[1]),
                 c.module->action(s[0], o, F.eval(p[0], p[1]))};
       }});
  def({"retract.homog_right", mixed({"alpha"}, {"a", "b"}), true,
       [](const LawContext& c) {
         std::string r = need_product(c);
         return r.empty() ? need_point(c, "origin") : r;
       },
       [](const LawContext& c, std::span<const Scalar> s, std::span<const Point> p) -> Eval {
         const BiAffineMap& F = *c.product;
         const Point& o = c.point("origin");
         return {F.eval(p[1], c.module->action(s[0], o, p[0])),
                 c.module->action(s[0], o, F.eval(p[1], p[0]))};
       }});
  def({"retract.alternating", pts({"a"}), true,
       [](const LawContext& c) {
         std::string r = need_product(c);
         return r.empty() ? need_point(c, "origin") : r;
       },
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         return {c.product->eval(p[0], p[0]), c.point("origin")};
       }});
  def({"retract.jacobi", pts({"a", "b", "c"}), true,
       [](const LawContext& c) {
         std::string r = need_product(c);
         return r.empty() ? need_point(c, "origin") : r;
       },
       [](const LawContext& c, std::span<const Scalar>, std::span<const Point> p) -> Eval {
         const BiAffineMap& F = *c.product;
         const Point& o = c.point("origin");
         return {fold({F.eval(p[0], F.eval(p[1], p[2])), o,
                       F.eval(p[1], F.eval(p[2], p[0])), o,
                       F.eval(p[2], F.eval(p[0], p[1]))}),
                 o};
       }});

  return reg;
}

const std::map<std::string, Law>& registry() {
  static const std::map<std::string, Law> reg = build_registry();
  return reg;
}

// One slot's value range under a given strategy.
struct SlotValues {
  std::vector<Scalar> scalars;
  std::vector<Point> points;
  std::size_t size() const {
    return scalars.empty() ? points.size() : scalars.size();
  }
};

struct TupleSpace {
  std::vector<SlotValues> slots;
  std::uint64_t total = 1;
};

std::optional<TupleSpace> build_space(const Law& law, const LawContext& ctx,
                                      Strategy strategy, std::string* why_not) {
  TupleSpace space;
  std::vector<Point> point_values;
  std::vector<Scalar> scalar_values;
  if (strategy == Strategy::frame) {
    if (!ctx.module->is_chart()) {
      *why_not = "frame checks need a chart instance";
      return std::nullopt;
    }
    if (!law.frame_capable) {
      *why_not = "law '" + law.id + "' carries no affineness certificate";
      return std::nullopt;
    }
    point_values = ctx.module->frame();
    scalar_values = {zero(ctx.module->ring()), one(ctx.module->ring())};
  } else {
    auto n = ctx.module->finite_size();
    if (!n) {
      *why_not = "exhaustive checks need a finite instance";
      return std::nullopt;
    }
    point_values.reserve(*n);
    for (std::uint64_t i = 0; i < *n; ++i)
      point_values.push_back(ctx.module->element(i));
    bool needs_scalars = false;
    for (const Slot& s : law.slots)
      if (s.kind == SlotKind::scalar) needs_scalars = true;
    if (needs_scalars) {
      if (!ctx.module->ring().finite()) {
        *why_not = "law quantifies over the infinite ring " +
                   ctx.module->ring().str();
        return std::nullopt;
      }
      scalar_values = enumerate_scalars(ctx.module->ring());
    }
  }
  for (const Slot& s : law.slots) {
    SlotValues v;
    if (s.kind == SlotKind::scalar)
      v.scalars = scalar_values;
    else
      v.points = point_values;
    if (v.size() == 0) {
      *why_not = "empty slot domain";
      return std::nullopt;
    }
    if (space.total > UINT64_MAX / v.size()) {
      *why_not = "tuple count overflows";
      return std::nullopt;
    }
    space.total *= v.size();
    space.slots.push_back(std::move(v));
  }
  return space;
}

// Decodes tuple index `idx` (slot 0 most significant) into per-slot values.
void decode(const TupleSpace& space, std::uint64_t idx,
            std::vector<Scalar>& scalars, std::vector<Point>& points,
            std::vector<std::size_t>& choice) {
  std::size_t k = space.slots.size();
  choice.resize(k);
  for (std::size_t i = k; i-- > 0;) {
    std::size_t n = space.slots[i].size();
    choice[i] = idx % n;
    idx /= n;
  }
  scalars.clear();
  points.clear();
  for (std::size_t i = 0; i < k; ++i) {
    const SlotValues& v = space.slots[i];
    if (!v.scalars.empty())
      scalars.push_back(v.scalars[choice[i]]);
    else
      points.push_back(v.points[choice[i]]);
  }
}

Witness render_witness(const Law& law, const TupleSpace& space,
                       const std::vector<std::size_t>& choice, const Point& lhs,
                       const Point& rhs) {
  Witness w;
  for (std::size_t i = 0; i < law.slots.size(); ++i) {
    const SlotValues& v = space.slots[i];
    std::string val = v.scalars.empty() ? v.points[choice[i]].str()
                                        : v.scalars[choice[i]].str();
    w.args.push_back(law.slots[i].name + "=" + val);
  }
  w.lhs = lhs.str();
  w.rhs = rhs.str();
  return w;
}

VerdictReport error_report(const std::string& law, Strategy strategy,
                           const std::string& message) {
  VerdictReport r;
  r.law = law;
  r.strategy = strategy;
  r.result = CheckResult::error;
  r.message = message;
  return r;
}

VerdictReport scan(const Law& law, const LawContext& ctx, Strategy strategy,
                   const CheckOptions& opts) {
  std::string why;
  auto space = build_space(law, ctx, strategy, &why);
  if (!space) return error_report(law.id, strategy, why);
  if (space->total > opts.budget)
    return error_report(law.id, strategy,
                        "budget exceeded: " + std::to_string(space->total) +
                            " tuples > budget " + std::to_string(opts.budget));

  VerdictReport report;
  report.law = law.id;
  report.strategy = strategy;

  std::atomic<std::uint64_t> first_bad{UINT64_MAX};
  std::atomic<bool> errored{false};
  std::mutex error_mu;
  std::string error_message;

  auto scan_range = [&](std::uint64_t lo, std::uint64_t hi) {
    std::vector<Scalar> scalars;
    std::vector<Point> points;
    std::vector<std::size_t> choice;
    for (std::uint64_t i = lo; i < hi; ++i) {
      if (i >= first_bad.load(std::memory_order_relaxed)) return;
      decode(*space, i, scalars, points, choice);
      try {
        auto [lhs, rhs] = law.eval(ctx, scalars, points);
        if (lhs == rhs) continue;
      } catch (const Error& e) {
        {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!errored.load() ||
              i < first_bad.load(std::memory_order_relaxed))
            error_message = e.what();
        }
        errored.store(true);
      }
      std::uint64_t cur = first_bad.load(std::memory_order_relaxed);
      while (i < cur && !first_bad.compare_exchange_weak(cur, i)) {
      }
      return;
    }
  };

  unsigned jobs = opts.jobs;
  if (jobs <= 1 || space->total < 4096) {
    scan_range(0, space->total);
  } else {
    std::uint64_t chunk = std::max<std::uint64_t>(1024, space->total / (jobs * 16));
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> workers;
    for (unsigned t = 0; t < jobs; ++t)
      workers.emplace_back([&] {
        while (true) {
          std::uint64_t lo = next.fetch_add(chunk);
          if (lo >= space->total) return;
          if (lo > first_bad.load(std::memory_order_relaxed)) return;
          scan_range(lo, std::min(space->total, lo + chunk));
        }
      });
    for (auto& w : workers) w.join();
  }

  std::uint64_t bad = first_bad.load();
  if (bad == UINT64_MAX) {
    report.result = CheckResult::pass;
    report.tuples = space->total;
    return report;
  }
  // Re-evaluate the earliest offending tuple for the witness; counts are
  // deterministic regardless of the worker schedule.
  std::vector<Scalar> scalars;
  std::vector<Point> points;
  std::vector<std::size_t> choice;
  decode(*space, bad, scalars, points, choice);
  report.tuples = bad + 1;
  try {
    auto [lhs, rhs] = law.eval(ctx, scalars, points);
    report.result = CheckResult::fail;
    report.witness = render_witness(law, *space, choice, lhs, rhs);
  } catch (const Error& e) {
    report.result = CheckResult::error;
    report.message = e.what();
  }
  return report;
}

bool frame_available(const Law& law, const LawContext& ctx) {
  return ctx.module->is_chart() && law.frame_capable;
}

bool exhaustive_available(const Law& law, const LawContext& ctx) {
  if (!ctx.module->finite_size()) return false;
  for (const Slot& s : law.slots)
    if (s.kind == SlotKind::scalar && !ctx.module->ring().finite()) return false;
  return true;
}

VerdictReport checked_scan(const std::string& law_id, const LawContext& ctx,
                           Strategy strategy, const CheckOptions& opts) {
  const Law* law = find_law(law_id);
  if (!law) return error_report(law_id, strategy, "unknown law '" + law_id + "'");
  if (!ctx.module) return error_report(law_id, strategy, "context has no module");
  std::string missing = law->requires_ctx ? law->requires_ctx(ctx) : "";
  if (!missing.empty()) return error_report(law_id, strategy, missing);
  return scan(*law, ctx, strategy, opts);
}

}  // namespace

const Law* find_law(const std::string& id) {
  auto it = registry().find(id);
  return it == registry().end() ? nullptr : &it->second;
}

std::vector<std::string> law_ids() {
  std::vector<std::string> ids;
  for (const auto& [id, law] : registry()) ids.push_back(id);
  return ids;
}

VerdictReport frame_check(const std::string& law_id, const LawContext& ctx,
                          const CheckOptions& opts) {
  const Law* law = find_law(law_id);
  if (law && ctx.module && opts.allow_fallback && !frame_available(*law, ctx) &&
      exhaustive_available(*law, ctx))
    return checked_scan(law_id, ctx, Strategy::exhaustive, opts);
  return checked_scan(law_id, ctx, Strategy::frame, opts);
}

VerdictReport exhaustive_check(const std::string& law_id, const LawContext& ctx,
                               const CheckOptions& opts) {
  const Law* law = find_law(law_id);
  if (law && ctx.module && opts.allow_fallback &&
      !exhaustive_available(*law, ctx) && frame_available(*law, ctx))
    return checked_scan(law_id, ctx, Strategy::frame, opts);
  return checked_scan(law_id, ctx, Strategy::exhaustive, opts);
}

VerdictReport run_check(const std::string& law_id, const LawContext& ctx,
                        const CheckOptions& opts) {
  if (opts.strategy == Strategy::frame) return frame_check(law_id, ctx, opts);
  if (opts.strategy == Strategy::exhaustive)
    return exhaustive_check(law_id, ctx, opts);
  const Law* law = find_law(law_id);
  if (law && ctx.module && frame_available(*law, ctx))
    return checked_scan(law_id, ctx, Strategy::frame, opts);
  return checked_scan(law_id, ctx, Strategy::exhaustive, opts);
}

VerdictReport run_all(const std::vector<std::string>& laws, const LawContext& ctx,
                      const CheckOptions& opts, const std::string& aggregate_id) {
  std::uint64_t total = 0;
  Strategy last = Strategy::exhaustive;
  for (const std::string& id : laws) {
    VerdictReport r = run_check(id, ctx, opts);
    if (!r.passed()) return r;
    total += r.tuples;
    last = r.strategy;
  }
  VerdictReport ok;
  ok.law = aggregate_id;
  ok.strategy = last;
  ok.result = CheckResult::pass;
  ok.tuples = total;
  return ok;
}

std::vector<std::string> default_laws(const LawContext& ctx) {
  std::vector<std::string> out = {"heap.para_assoc", "heap.malcev_right",
                                  "heap.malcev_left", "heap.symmetry"};
  bool scalars_checkable =
      ctx.module && (ctx.module->is_chart() || ctx.module->ring().finite());
  if (scalars_checkable) {
    out.insert(out.end(),
               {"module.act_point_hom", "module.act_scalar_hom",
                "module.act_assoc", "module.base_change", "module.act_zero",
                "module.act_one", "module.heap_middle", "module.act_idem"});
  }
  if (ctx.product) {
    out.insert(out.end(), {"mul.assoc", "mul.truss_left", "mul.truss_right"});
    if (scalars_checkable)
      out.insert(out.end(), {"mul.biaffine_left", "mul.biaffine_right"});
  }
  if (ctx.bracket) {
    out.insert(out.end(), {"lie.anti", "lie.anti_alt"});
  }
  return out;
}

VerdictReport check_heap_axioms(const HeapPtr& heap, const CheckOptions& opts) {
  LawContext ctx;
  if (heap->is_coordinate())
    ctx.module = Module::coordinate(heap->coordinate_rep().ring,
                                    heap->coordinate_rep().dim);
  else
    ctx.module = Module::z_affine(heap);
  return run_all({"heap.para_assoc", "heap.malcev_right", "heap.malcev_left",
                  "heap.symmetry"},
                 ctx, opts, "heap.axioms");
}

VerdictReport check_affine_axioms(const ModulePtr& module,
                                  const CheckOptions& opts) {
  if (!module->is_chart() && !module->ring().finite())
    return error_report("module.axioms", Strategy::exhaustive,
                        "affine axioms over " + module->ring().str() +
                            " need a chart or a finite ring");
  LawContext ctx;
  ctx.module = module;
  return run_all({"module.act_point_hom", "module.act_scalar_hom",
                  "module.act_assoc", "module.base_change", "module.act_zero",
                  "module.act_one", "module.heap_middle", "module.act_idem"},
                 ctx, opts, "module.axioms");
}

VerdictReport is_affine_hom(const AffineMap& f, const CheckOptions& opts) {
  if (f.is_chart()) {
    // chart maps satisfy the homomorphism law by construction
    VerdictReport r;
    r.law = "map.affine";
    r.strategy = Strategy::frame;
    r.result = CheckResult::pass;
    r.tuples = 0;
    return r;
  }
  LawContext ctx;
  ctx.module = f.source();
  ctx.maps["f"] = &f;
  if (!f.source()->ring().finite())
    return run_all({"map.heap_hom"}, ctx, opts, "map.affine");
  return run_all({"map.affine"}, ctx, opts, "map.affine");
}

VerdictReport check_biaffine(const BiAffineMap& F, const CheckOptions& opts) {
  if (F.is_chart()) {
    VerdictReport r;
    r.law = "mul.biaffine";
    r.strategy = Strategy::frame;
    r.result = CheckResult::pass;
    r.tuples = 0;
    return r;
  }
  LawContext ctx;
  ctx.module = F.host();
  ctx.product = &F;
  if (!F.host()->ring().finite())
    return run_all({"mul.truss_left", "mul.truss_right"}, ctx, opts,
                   "mul.biaffine");
  return run_all({"mul.biaffine_left", "mul.biaffine_right"}, ctx, opts,
                 "mul.biaffine");
}

}  // namespace afflie

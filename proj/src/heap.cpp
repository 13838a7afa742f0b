#include "afflie/heap.hpp"

#include <sstream>

#include "afflie/errors.hpp"

namespace afflie {

namespace {

// Verifies para-associativity, both Mal'cev identities, and symmetry on a
// raw table, in the order of their statement. Returns a description of the
// first offending tuple, or nullopt.
std::optional<std::string> table_axiom_failure(std::size_t n,
                                               const std::vector<std::size_t>& op) {
  auto at = [&](std::size_t a, std::size_t b, std::size_t c) {
    return op[(a * n + b) * n + c];
  };
  for (std::size_t v : op)
    if (v >= n) return "table entry " + std::to_string(v) + " out of range";
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = 0; d < n; ++d)
          for (std::size_t e = 0; e < n; ++e)
            if (at(at(a, b, c), d, e) != at(a, b, at(c, d, e))) {
              std::ostringstream os;
              os << "para-associativity fails at (" << a << "," << b << ","
                 << c << "," << d << "," << e << ")";
              return os.str();
            }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (at(a, b, b) != a)
        return "Mal'cev <a,b,b>=a fails at (" + std::to_string(a) + "," +
               std::to_string(b) + ")";
      if (at(b, b, a) != a)
        return "Mal'cev <b,b,a>=a fails at (" + std::to_string(a) + "," +
               std::to_string(b) + ")";
    }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (at(a, b, c) != at(c, b, a))
          return "symmetry fails at (" + std::to_string(a) + "," +
                 std::to_string(b) + "," + std::to_string(c) + ")";
  return std::nullopt;
}

}  // namespace

HeapPtr Heap::coordinate(RingSpec ring, std::size_t dim) {
  return HeapPtr(new Heap(Coordinate{ring, dim}));
}

HeapPtr Heap::table(std::size_t size, std::vector<std::size_t> op) {
  if (size == 0) throw DomainError("heap tables must be non-empty");
  if (op.size() != size * size * size)
    throw DomainError("heap table has " + std::to_string(op.size()) +
                      " entries, expected " + std::to_string(size * size * size));
  if (auto fail = table_axiom_failure(size, op))
    throw DomainError("not a heap: " + *fail);
  return table_unchecked(size, std::move(op));
}

HeapPtr Heap::table_unchecked(std::size_t size, std::vector<std::size_t> op) {
  if (size == 0 || op.size() != size * size * size)
    throw DomainError("malformed heap table");
  return HeapPtr(new Heap(Table{size, std::move(op)}));
}

std::optional<std::uint64_t> Heap::finite_size() const {
  if (is_table()) return table_rep().size;
  const auto& c = coordinate_rep();
  if (!c.ring.finite()) return std::nullopt;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < c.dim; ++i) {
    if (total > UINT64_MAX / c.ring.modulus) return std::nullopt;
    total *= c.ring.modulus;
  }
  return total;
}

Point Heap::element(std::uint64_t i) const {
  if (is_table()) {
    if (i >= table_rep().size) throw DomainError("element index out of range");
    return Point(shared_from_this(), static_cast<std::size_t>(i));
  }
  const auto& c = coordinate_rep();
  if (!c.ring.finite())
    throw UnsupportedError("cannot enumerate points over " + c.ring.str());
  std::vector<Scalar> coords(c.dim, zero(c.ring));
  for (std::size_t k = c.dim; k-- > 0;) {
    coords[k] = Scalar(c.ring, static_cast<long>(i % c.ring.modulus));
    i /= c.ring.modulus;
  }
  if (i != 0) throw DomainError("element index out of range");
  return Point(shared_from_this(), std::move(coords));
}

std::uint64_t Heap::index_of(const Point& p) const {
  if (is_table()) return p.index();
  const auto& c = coordinate_rep();
  std::uint64_t idx = 0;
  for (const Scalar& s : p.coords()) {
    idx = idx * c.ring.modulus + s.value().get_num().get_ui();
  }
  return idx;
}

Point Heap::make(std::vector<Scalar> coords) const {
  return Point(shared_from_this(), std::move(coords));
}

Point Heap::make_index(std::size_t index) const {
  return Point(shared_from_this(), index);
}

Point Heap::make_ints(const std::vector<long>& values) const {
  const auto& c = coordinate_rep();
  std::vector<Scalar> coords;
  coords.reserve(values.size());
  for (long v : values) coords.emplace_back(c.ring, v);
  return make(std::move(coords));
}

bool Heap::same_shape(const Heap& other) const {
  if (this == &other) return true;
  if (is_coordinate() != other.is_coordinate()) return false;
  if (is_coordinate()) {
    return coordinate_rep().ring == other.coordinate_rep().ring &&
           coordinate_rep().dim == other.coordinate_rep().dim;
  }
  return table_rep().size == other.table_rep().size &&
         table_rep().op == other.table_rep().op;
}

Point::Point(HeapPtr host, std::vector<Scalar> coords)
    : host_(std::move(host)), payload_(std::move(coords)) {
  const auto& c = host_->coordinate_rep();
  const auto& got = this->coords();
  if (got.size() != c.dim)
    throw DomainError("point has " + std::to_string(got.size()) +
                      " coordinates, host expects " + std::to_string(c.dim));
  for (const Scalar& s : got)
    if (!(s.ring() == c.ring))
      throw DomainError("coordinate ring " + s.ring().str() +
                        " does not match host ring " + c.ring.str());
}

Point::Point(HeapPtr host, std::size_t index)
    : host_(std::move(host)), payload_(index) {
  if (!host_->is_table())
    throw DomainError("index payloads are only valid on table hosts");
  if (index >= host_->table_rep().size)
    throw DomainError("point index " + std::to_string(index) +
                      " out of range for table of size " +
                      std::to_string(host_->table_rep().size));
}

bool Point::operator==(const Point& o) const {
  if (host_.get() != o.host_.get() &&
      (!host_ || !o.host_ || !host_->same_shape(*o.host_)))
    return false;
  return payload_ == o.payload_;
}

std::string Point::str() const {
  if (is_index()) return "#" + std::to_string(index());
  std::string s = "(";
  const auto& cs = coords();
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) s += ",";
    s += cs[i].str();
  }
  return s + ")";
}

namespace detail {
void require_same_host(const Point& a, const Point& b) {
  if (a.host().get() == b.host().get()) return;
  if (a.host() && b.host() && a.host()->same_shape(*b.host())) return;
  throw DomainError("points belong to different heaps");
}
}  // namespace detail

Point ternary(const Point& a, const Point& b, const Point& c) {
  detail::require_same_host(a, b);
  detail::require_same_host(a, c);
  const Heap& h = *a.host();
  if (h.is_table()) {
    const auto& t = h.table_rep();
    return Point(a.host(), t.op[(a.index() * t.size + b.index()) * t.size + c.index()]);
  }
  std::vector<Scalar> out;
  out.reserve(a.coords().size());
  for (std::size_t i = 0; i < a.coords().size(); ++i)
    out.push_back(add(sub(a.coords()[i], b.coords()[i]), c.coords()[i]));
  return Point(a.host(), std::move(out));
}

Point fold(std::span<const Point> points) {
  if (points.empty() || points.size() % 2 == 0)
    throw ArityError("heap folds take an odd number of points, got " +
                     std::to_string(points.size()));
  Point acc = points[0];
  for (std::size_t i = 1; i + 1 < points.size(); i += 2)
    acc = ternary(acc, points[i], points[i + 1]);
  return acc;
}

Point fold(std::initializer_list<Point> points) {
  std::vector<Point> v(points);
  return fold(std::span<const Point>(v));
}

Point z_action(long long n, const Point& a, const Point& b) {
  detail::require_same_host(a, b);
  // n |>_a b = nb - na + a. Split off the sign, then combine binary
  // doublings: (m+k) |>_a b = <m |>_a b, a, k |>_a b>.
  if (n == 0) return a;
  bool negative = n < 0;
  unsigned long long m = negative ? -static_cast<unsigned long long>(n)
                                  : static_cast<unsigned long long>(n);
  Point acc = a;           // 0 |>_a b
  Point power = b;         // 2^i |>_a b, starting at i = 0
  while (true) {
    if (m & 1) acc = ternary(acc, a, power);
    m >>= 1;
    if (!m) break;
    power = ternary(power, a, power);
  }
  if (negative) acc = ternary(a, acc, a);  // reflect through a
  return acc;
}

}  // namespace afflie

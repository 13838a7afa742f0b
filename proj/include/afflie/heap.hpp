#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "afflie/scalar.hpp"

namespace afflie {

class Heap;
using HeapPtr = std::shared_ptr<const Heap>;
class Point;

/// An abelian heap: a set with a ternary operation <a,b,c> that behaves
/// like a-b+c. Two representations are supported. Coordinate heaps are
/// vectors over a ring with the componentwise a-b+c operation, lawful by
/// construction. Table heaps store the full size^3 operation table and are
/// verified against the heap axioms at construction.
class Heap : public std::enable_shared_from_this<Heap> {
 public:
  struct Coordinate {
    RingSpec ring;
    std::size_t dim = 0;
  };
  struct Table {
    std::size_t size = 0;
    std::vector<std::size_t> op;  // op[(a*size + b)*size + c]
  };

  static HeapPtr coordinate(RingSpec ring, std::size_t dim);
  /// Verifies the three axioms exhaustively; throws DomainError with the
  /// first offending tuple if they fail.
  static HeapPtr table(std::size_t size, std::vector<std::size_t> op);
  /// Skips verification. For deliberately broken tables in negative tests.
  static HeapPtr table_unchecked(std::size_t size, std::vector<std::size_t> op);

  bool is_coordinate() const {
    return std::holds_alternative<Coordinate>(rep_);
  }
  bool is_table() const { return std::holds_alternative<Table>(rep_); }
  const Coordinate& coordinate_rep() const { return std::get<Coordinate>(rep_); }
  const Table& table_rep() const { return std::get<Table>(rep_); }

  /// Number of elements, when finite (table, or coordinate over a finite
  /// ring). nullopt otherwise. Guards against overflow of n^dim.
  std::optional<std::uint64_t> finite_size() const;

  /// i-th element in the canonical enumeration order: table index order,
  /// or lexicographic coordinate order (leftmost coordinate most
  /// significant).
  Point element(std::uint64_t i) const;
  std::uint64_t index_of(const Point& p) const;

  Point make(std::vector<Scalar> coords) const;
  Point make_index(std::size_t index) const;
  /// Coordinate point from small integers, reduced into the ring.
  Point make_ints(const std::vector<long>& values) const;

  bool same_shape(const Heap& other) const;

 private:
  explicit Heap(std::variant<Coordinate, Table> rep) : rep_(std::move(rep)) {}
  std::variant<Coordinate, Table> rep_;
};

/// An element of a heap: a coordinate vector or a table index, tied to its
/// host.
class Point {
 public:
  Point() = default;
  Point(HeapPtr host, std::vector<Scalar> coords);
  Point(HeapPtr host, std::size_t index);

  const HeapPtr& host() const { return host_; }
  bool is_index() const { return std::holds_alternative<std::size_t>(payload_); }
  std::size_t index() const { return std::get<std::size_t>(payload_); }
  const std::vector<Scalar>& coords() const {
    return std::get<std::vector<Scalar>>(payload_);
  }

  bool operator==(const Point& o) const;
  bool operator!=(const Point& o) const { return !(*this == o); }

  std::string str() const;

 private:
  HeapPtr host_;
  std::variant<std::vector<Scalar>, std::size_t> payload_;
};

/// <a,b,c>: componentwise a-b+c on coordinate hosts, table lookup on table
/// hosts. All three points must share a host.
Point ternary(const Point& a, const Point& b, const Point& c);

/// Left-nested iterated ternary <<a1,a2,a3>,a4,a5>,... The sequence must
/// have odd length >= 1.
Point fold(std::span<const Point> points);
Point fold(std::initializer_list<Point> points);

/// The unique affine Z-module action of a heap: n |> _a b, equal to
/// nb - na + a in any retract. Computed by binary doubling, so large |n|
/// is fine even on table hosts.
Point z_action(long long n, const Point& a, const Point& b);

/// The abelian group obtained by fixing o as zero: a+b = <a,o,b>.
class GroupView {
 public:
  explicit GroupView(Point o) : o_(std::move(o)) {}
  const Point& zero() const { return o_; }
  Point add(const Point& a, const Point& b) const { return ternary(a, o_, b); }
  Point neg(const Point& a) const { return ternary(o_, a, o_); }
  Point sub(const Point& a, const Point& b) const {
    return add(a, neg(b));
  }

 private:
  Point o_;
};

inline GroupView retract_group(const Point& o) { return GroupView(o); }

namespace detail {
/// Shared host precondition; throws DomainError on mismatch.
void require_same_host(const Point& a, const Point& b);
}  // namespace detail

}  // namespace afflie

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace hbtop {

using Index = std::size_t;
/// Sorted list of element indices of a poset.
using ElementSet = std::vector<Index>;
using Bits = boost::dynamic_bitset<>;

enum class Relation { Less, Greater, LessEq, GreaterEq };

/// Finite partial order on opaque string identifiers.
///
/// The order is held as its Hasse diagram (irredundant cover pairs) together
/// with a reachability table so that `less` is a constant-time query.
/// Instances are immutable once built.
class Poset {
 public:
  /// The empty poset.
  Poset() = default;

  /// Builds from an explicit Hasse diagram. Rejects cycles, duplicate
  /// identifiers and cover pairs implied by other covers.
  static Poset from_covers(std::vector<std::string> ids,
                           const std::vector<std::pair<Index, Index>>& covers);

  /// Builds the reflexive-transitive closure of a generating relation
  /// (pairs `a < b`). Rejects generators that close up to a cycle.
  static Poset from_generators(std::vector<std::string> ids,
                               const std::vector<std::pair<Index, Index>>& generators);

  /// Builds from a strict-order predicate, which must already be transitive
  /// and irreflexive; both properties are verified.
  static Poset from_predicate(std::vector<std::string> ids,
                              const std::function<bool(Index, Index)>& less);

  Index size() const { return ids_.size(); }
  bool empty() const { return ids_.empty(); }

  const std::string& id(Index i) const { return ids_.at(i); }
  const std::vector<std::string>& ids() const { return ids_; }
  std::optional<Index> find(std::string_view id) const;
  /// Index of an identifier; throws std::out_of_range when unknown.
  Index at(std::string_view id) const;

  bool less(Index a, Index b) const { return above_[a].test(b); }
  bool leq(Index a, Index b) const { return a == b || less(a, b); }
  bool comparable(Index a, Index b) const { return leq(a, b) || leq(b, a); }

  const std::vector<std::pair<Index, Index>>& covers() const { return covers_; }
  std::span<const Index> upper_covers(Index i) const { return up_.at(i); }
  std::span<const Index> lower_covers(Index i) const { return down_.at(i); }

  /// Strict up/down sets as bitsets over element indices.
  const Bits& strictly_above(Index i) const { return above_.at(i); }
  const Bits& strictly_below(Index i) const { return below_.at(i); }

  ElementSet minimal_elements() const;
  ElementSet maximal_elements() const;
  std::optional<Index> minimum() const;
  std::optional<Index> maximum() const;

  /// Elements y with `y R x`.
  ElementSet select(Index x, Relation r) const;

  /// Induced subposet on `keep`, in the order given.
  Poset induced(const ElementSet& keep) const;

  bool is_down_closed(const ElementSet& s) const;
  bool is_up_closed(const ElementSet& s) const;

  /// Length (number of cover steps) of the longest chain starting at each
  /// element and going up. Strictly decreasing along the order.
  std::vector<int> height_above() const;

  /// Same identifiers in the same positions and the same order relation.
  bool operator==(const Poset& other) const;

  const std::optional<std::string>& payload(Index i) const { return payloads_.at(i); }
  Poset with_payloads(std::vector<std::optional<std::string>> payloads) const;

 private:
  Poset(std::vector<std::string> ids, std::vector<Bits> above);
  void index_ids();
  void derive_from_above();

  std::vector<std::string> ids_;
  std::unordered_map<std::string, Index> index_;
  std::vector<Bits> above_;
  std::vector<Bits> below_;
  std::vector<std::pair<Index, Index>> covers_;
  std::vector<std::vector<Index>> up_;
  std::vector<std::vector<Index>> down_;
  std::vector<std::optional<std::string>> payloads_;
};

using PosetPtr = std::shared_ptr<const Poset>;

/// Map of posets given by an assignment on element indices.
class PosetMap {
 public:
  PosetMap(PosetPtr source, PosetPtr target, std::vector<Index> assignment);

  const Poset& source() const { return *source_; }
  const Poset& target() const { return *target_; }
  const PosetPtr& source_ptr() const { return source_; }
  const PosetPtr& target_ptr() const { return target_; }
  Index operator()(Index x) const { return assignment_[x]; }
  const std::vector<Index>& assignment() const { return assignment_; }

  bool is_order_preserving() const;
  bool is_endomap() const { return source_ == target_ || *source_ == *target_; }

  /// Sorted set of image elements.
  ElementSet image() const;

 private:
  PosetPtr source_;
  PosetPtr target_;
  std::vector<Index> assignment_;
};

enum class MonotoneKind { Increasing, Decreasing, Neither };

const char* to_string(MonotoneKind k);

/// Induced subposet on `{y : y R x}`.
Poset subposet(const Poset& p, Index x, Relation r);
Poset subposet(const Poset& p, std::string_view x, Relation r);

/// P with a new minimum adjoined. The new element is `cone_point_id(P)`.
Poset cone(const Poset& p);
std::string cone_point_id(const Poset& p);

/// Underlying set P ⊔ Q with every element of P below every element of Q.
/// Identifiers are tagged `L:` and `R:`.
Poset quillen_join(const Poset& p, const Poset& q);

/// (CP × CQ) minus the joint minimum, ordered componentwise.
Poset star_join(const Poset& p, const Poset& q);

/// Nonempty proper subsets of {1, ..., k+2} under inclusion; empty for k = -1.
Poset sphere_poset(int k);

Poset opposite(const Poset& p);

/// Throws std::invalid_argument unless f is an order-preserving endomap.
MonotoneKind classify_endomap(const PosetMap& f);

/// Source elements mapped into target's `{<= x}` (Relation::LessEq) or
/// `{>= x}` (Relation::GreaterEq); returned as an element set of the source.
ElementSet fibre_elements(const PosetMap& f, Index x, Relation mode);
Poset fibre(const PosetMap& f, Index x, Relation mode);

/// Reads the `elem` / `cover` text format. Throws ParseError.
Poset parse_hasse(std::string_view text);
std::string format_hasse(const Poset& p);

}  // namespace hbtop

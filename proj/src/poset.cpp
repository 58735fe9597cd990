#include "hbtop/poset.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "hbtop/error.hpp"
#include "text_util.hpp"

namespace hbtop {

namespace {

// Reflexive-transitive closure of a generating relation given as successor
// lists; throws if the relation has a cycle.
std::vector<Bits> close_generators(Index n, const std::vector<std::vector<Index>>& succ) {
  std::vector<Index> indegree(n, 0);
  for (const auto& out : succ)
    for (Index j : out) ++indegree[j];
  std::vector<Index> order;
  order.reserve(n);
  std::queue<Index> ready;
  for (Index i = 0; i < n; ++i)
    if (indegree[i] == 0) ready.push(i);
  while (!ready.empty()) {
    Index i = ready.front();
    ready.pop();
    order.push_back(i);
    for (Index j : succ[i])
      if (--indegree[j] == 0) ready.push(j);
  }
  if (order.size() != n) throw std::invalid_argument("order relation has a cycle (antisymmetry fails)");

  std::vector<Bits> above(n, Bits(n));
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    Index i = *it;
    for (Index j : succ[i]) {
      above[i].set(j);
      above[i] |= above[j];
    }
  }
  return above;
}

std::string subset_id(std::uint32_t mask) {
  std::string s = "{";
  bool first = true;
  for (int b = 0; b < 32; ++b) {
    if (mask >> b & 1u) {
      if (!first) s += ',';
      s += std::to_string(b + 1);
      first = false;
    }
  }
  return s + "}";
}

constexpr const char* kConePoint = "⊥";

}  // namespace

Poset::Poset(std::vector<std::string> ids, std::vector<Bits> above)
    : ids_(std::move(ids)), above_(std::move(above)) {
  index_ids();
  derive_from_above();
}

void Poset::index_ids() {
  index_.clear();
  index_.reserve(ids_.size());
  for (Index i = 0; i < ids_.size(); ++i) {
    if (!index_.emplace(ids_[i], i).second)
      throw std::invalid_argument("duplicate element identifier '" + ids_[i] + "'");
  }
  payloads_.assign(ids_.size(), std::nullopt);
}

void Poset::derive_from_above() {
  const Index n = ids_.size();
  below_.assign(n, Bits(n));
  for (Index i = 0; i < n; ++i)
    for (Index j = above_[i].find_first(); j != Bits::npos; j = above_[i].find_next(j)) below_[j].set(i);

  covers_.clear();
  up_.assign(n, {});
  down_.assign(n, {});
  for (Index i = 0; i < n; ++i) {
    for (Index j = above_[i].find_first(); j != Bits::npos; j = above_[i].find_next(j)) {
      if (!above_[i].intersects(below_[j])) {
        covers_.emplace_back(i, j);
        up_[i].push_back(j);
        down_[j].push_back(i);
      }
    }
  }
}

Poset Poset::from_covers(std::vector<std::string> ids, const std::vector<std::pair<Index, Index>>& covers) {
  const Index n = ids.size();
  std::vector<std::vector<Index>> succ(n);
  for (auto [lo, hi] : covers) {
    if (lo >= n || hi >= n) throw std::invalid_argument("cover pair refers to an unknown element");
    if (lo == hi) throw std::invalid_argument("cover pair '" + ids[lo] + " " + ids[hi] + "' is reflexive");
    if (std::find(succ[lo].begin(), succ[lo].end(), hi) != succ[lo].end())
      throw std::invalid_argument("duplicate cover pair '" + ids[lo] + " " + ids[hi] + "'");
    succ[lo].push_back(hi);
  }
  Poset p(std::move(ids), close_generators(n, succ));
  if (p.covers_.size() != covers.size()) {
    for (auto [lo, hi] : covers) {
      if (std::find(p.up_[lo].begin(), p.up_[lo].end(), hi) == p.up_[lo].end())
        throw std::invalid_argument("cover pair '" + p.ids_[lo] + " " + p.ids_[hi] +
                                    "' is implied by transitivity");
    }
  }
  return p;
}

Poset Poset::from_generators(std::vector<std::string> ids,
                             const std::vector<std::pair<Index, Index>>& generators) {
  const Index n = ids.size();
  std::vector<std::vector<Index>> succ(n);
  for (auto [lo, hi] : generators) {
    if (lo >= n || hi >= n) throw std::invalid_argument("generator refers to an unknown element");
    if (lo == hi) continue;
    succ[lo].push_back(hi);
  }
  return Poset(std::move(ids), close_generators(n, succ));
}

Poset Poset::from_predicate(std::vector<std::string> ids, const std::function<bool(Index, Index)>& less) {
  const Index n = ids.size();
  std::vector<std::vector<Index>> succ(n);
  std::vector<Bits> direct(n, Bits(n));
  for (Index i = 0; i < n; ++i) {
    if (less(i, i)) throw std::invalid_argument("order predicate is not irreflexive at '" + ids[i] + "'");
    for (Index j = 0; j < n; ++j) {
      if (i != j && less(i, j)) {
        succ[i].push_back(j);
        direct[i].set(j);
      }
    }
  }
  auto above = close_generators(n, succ);
  for (Index i = 0; i < n; ++i)
    if (above[i] != direct[i])
      throw std::invalid_argument("order predicate is not transitive at '" + ids[i] + "'");
  return Poset(std::move(ids), std::move(above));
}

std::optional<Index> Poset::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Index Poset::at(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw std::out_of_range("unknown element '" + std::string(id) + "'");
}

ElementSet Poset::minimal_elements() const {
  ElementSet out;
  for (Index i = 0; i < size(); ++i)
    if (down_[i].empty()) out.push_back(i);
  return out;
}

ElementSet Poset::maximal_elements() const {
  ElementSet out;
  for (Index i = 0; i < size(); ++i)
    if (up_[i].empty()) out.push_back(i);
  return out;
}

std::optional<Index> Poset::minimum() const {
  auto m = minimal_elements();
  if (m.size() == 1) return m.front();
  return std::nullopt;
}

std::optional<Index> Poset::maximum() const {
  auto m = maximal_elements();
  if (m.size() == 1) return m.front();
  return std::nullopt;
}

ElementSet Poset::select(Index x, Relation r) const {
  if (x >= size()) throw std::out_of_range("element index out of range");
  ElementSet out;
  for (Index y = 0; y < size(); ++y) {
    bool keep = false;
    switch (r) {
      case Relation::Less: keep = less(y, x); break;
      case Relation::Greater: keep = less(x, y); break;
      case Relation::LessEq: keep = leq(y, x); break;
      case Relation::GreaterEq: keep = leq(x, y); break;
    }
    if (keep) out.push_back(y);
  }
  return out;
}

Poset Poset::induced(const ElementSet& keep) const {
  std::vector<std::string> ids;
  ids.reserve(keep.size());
  for (Index i : keep) ids.push_back(ids_.at(i));
  std::vector<Bits> above(keep.size(), Bits(keep.size()));
  for (Index a = 0; a < keep.size(); ++a)
    for (Index b = 0; b < keep.size(); ++b)
      if (less(keep[a], keep[b])) above[a].set(b);
  Poset p(std::move(ids), std::move(above));
  for (Index a = 0; a < keep.size(); ++a) p.payloads_[a] = payloads_[keep[a]];
  return p;
}

bool Poset::is_down_closed(const ElementSet& s) const {
  Bits in(size());
  for (Index i : s) in.set(i);
  for (Index i : s)
    if (!below_[i].is_subset_of(in)) return false;
  return true;
}

bool Poset::is_up_closed(const ElementSet& s) const {
  Bits in(size());
  for (Index i : s) in.set(i);
  for (Index i : s)
    if (!above_[i].is_subset_of(in)) return false;
  return true;
}

std::vector<int> Poset::height_above() const {
  std::vector<Index> order(size());
  for (Index i = 0; i < size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](Index a, Index b) { return above_[a].count() < above_[b].count(); });
  std::vector<int> h(size(), 0);
  for (Index x : order)
    for (Index y : up_[x]) h[x] = std::max(h[x], h[y] + 1);
  return h;
}

bool Poset::operator==(const Poset& other) const {
  return ids_ == other.ids_ && above_ == other.above_;
}

Poset Poset::with_payloads(std::vector<std::optional<std::string>> payloads) const {
  if (payloads.size() != size()) throw std::invalid_argument("payload count does not match poset size");
  Poset p = *this;
  p.payloads_ = std::move(payloads);
  return p;
}

// ---------------------------------------------------------------------------

PosetMap::PosetMap(PosetPtr source, PosetPtr target, std::vector<Index> assignment)
    : source_(std::move(source)), target_(std::move(target)), assignment_(std::move(assignment)) {
  if (!source_ || !target_) throw std::invalid_argument("poset map needs a source and a target");
  if (assignment_.size() != source_->size())
    throw std::invalid_argument("poset map assignment does not cover the source");
  for (Index y : assignment_)
    if (y >= target_->size()) throw std::invalid_argument("poset map assignment leaves the target");
}

bool PosetMap::is_order_preserving() const {
  for (auto [lo, hi] : source_->covers())
    if (!target_->leq(assignment_[lo], assignment_[hi])) return false;
  return true;
}

ElementSet PosetMap::image() const {
  ElementSet out = assignment_;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

const char* to_string(MonotoneKind k) {
  switch (k) {
    case MonotoneKind::Increasing: return "increasing";
    case MonotoneKind::Decreasing: return "decreasing";
    case MonotoneKind::Neither: return "neither";
  }
  return "?";
}

// ---------------------------------------------------------------------------

Poset subposet(const Poset& p, Index x, Relation r) { return p.induced(p.select(x, r)); }

Poset subposet(const Poset& p, std::string_view x, Relation r) { return subposet(p, p.at(x), r); }

std::string cone_point_id(const Poset& p) {
  std::string id = "0";
  while (p.find(id)) id += '\'';
  return id;
}

Poset cone(const Poset& p) {
  std::vector<std::string> ids;
  ids.reserve(p.size() + 1);
  ids.push_back(cone_point_id(p));
  for (const auto& s : p.ids()) ids.push_back(s);
  const Index n = ids.size();
  std::vector<Bits> above(n, Bits(n));
  for (Index i = 1; i < n; ++i) above[0].set(i);
  for (Index i = 0; i < p.size(); ++i)
    for (Index j = p.strictly_above(i).find_first(); j != Bits::npos; j = p.strictly_above(i).find_next(j))
      above[i + 1].set(j + 1);
  std::vector<std::pair<Index, Index>> gens;
  for (Index i = 0; i < n; ++i)
    for (Index j = above[i].find_first(); j != Bits::npos; j = above[i].find_next(j)) gens.emplace_back(i, j);
  return Poset::from_generators(std::move(ids), gens);
}

Poset quillen_join(const Poset& p, const Poset& q) {
  std::vector<std::string> ids;
  ids.reserve(p.size() + q.size());
  for (const auto& s : p.ids()) ids.push_back("L:" + s);
  for (const auto& s : q.ids()) ids.push_back("R:" + s);
  const Index np = p.size();
  return Poset::from_predicate(std::move(ids), [&](Index a, Index b) {
    if (a < np && b < np) return p.less(a, b);
    if (a >= np && b >= np) return q.less(a - np, b - np);
    return a < np && b >= np;
  });
}

Poset star_join(const Poset& p, const Poset& q) {
  // Cone points are encoded as npos.
  constexpr Index cone_pt = static_cast<Index>(-1);
  std::vector<std::pair<Index, Index>> elems;
  std::vector<std::string> ids;
  auto name = [](const Poset& side, Index i) { return i == cone_pt ? std::string(kConePoint) : side.id(i); };
  for (Index a = 0; a <= p.size(); ++a) {
    Index pa = a == 0 ? cone_pt : a - 1;
    for (Index b = 0; b <= q.size(); ++b) {
      Index qb = b == 0 ? cone_pt : b - 1;
      if (pa == cone_pt && qb == cone_pt) continue;
      elems.emplace_back(pa, qb);
      ids.push_back("(" + name(p, pa) + "," + name(q, qb) + ")");
    }
  }
  auto cone_leq = [&](const Poset& side, Index x, Index y) {
    if (x == cone_pt) return true;
    if (y == cone_pt) return false;
    return side.leq(x, y);
  };
  return Poset::from_predicate(std::move(ids), [&](Index i, Index j) {
    if (i == j) return false;
    return cone_leq(p, elems[i].first, elems[j].first) && cone_leq(q, elems[i].second, elems[j].second);
  });
}

Poset sphere_poset(int k) {
  if (k < -1) throw std::invalid_argument("sphere_poset requires k >= -1");
  if (k > 20) throw std::invalid_argument("sphere_poset supports k <= 20");
  const int n = k + 2;
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 1; m + 1 < (1u << n); ++m) masks.push_back(m);
  std::stable_sort(masks.begin(), masks.end(),
                   [](std::uint32_t a, std::uint32_t b) { return std::popcount(a) < std::popcount(b); });
  std::vector<std::string> ids;
  for (auto m : masks) ids.push_back(subset_id(m));
  return Poset::from_predicate(std::move(ids), [&](Index i, Index j) {
    return masks[i] != masks[j] && (masks[i] & masks[j]) == masks[i];
  });
}

Poset opposite(const Poset& p) {
  std::vector<std::pair<Index, Index>> covers;
  covers.reserve(p.covers().size());
  for (auto [lo, hi] : p.covers()) covers.emplace_back(hi, lo);
  return Poset::from_covers(p.ids(), covers);
}

MonotoneKind classify_endomap(const PosetMap& f) {
  if (!f.is_endomap()) throw std::invalid_argument("classify_endomap needs an endomap");
  if (!f.is_order_preserving()) throw std::invalid_argument("map is not order-preserving");
  const Poset& p = f.source();
  bool increasing = true;
  bool decreasing = true;
  for (Index x = 0; x < p.size(); ++x) {
    increasing = increasing && p.leq(x, f(x));
    decreasing = decreasing && p.leq(f(x), x);
  }
  if (increasing) return MonotoneKind::Increasing;
  if (decreasing) return MonotoneKind::Decreasing;
  return MonotoneKind::Neither;
}

ElementSet fibre_elements(const PosetMap& f, Index x, Relation mode) {
  const Poset& t = f.target();
  if (x >= t.size()) throw std::out_of_range("fibre over an unknown element");
  if (mode != Relation::LessEq && mode != Relation::GreaterEq)
    throw std::invalid_argument("fibre mode must be <= or >=");
  ElementSet out;
  for (Index y = 0; y < f.source().size(); ++y) {
    bool in = mode == Relation::LessEq ? t.leq(f(y), x) : t.leq(x, f(y));
    if (in) out.push_back(y);
  }
  return out;
}

Poset fibre(const PosetMap& f, Index x, Relation mode) {
  return f.source().induced(fibre_elements(f, x, mode));
}

Poset parse_hasse(std::string_view text) {
  std::vector<std::string> ids;
  std::unordered_map<std::string, Index> index;
  std::vector<std::pair<Index, Index>> covers;
  for (const auto& line : detail::tokenize(text)) {
    const auto& t = line.tokens;
    if (t[0] == "elem") {
      if (t.size() != 2) throw ParseError(line.number, "expected 'elem <id>'");
      if (!index.emplace(t[1], ids.size()).second)
        throw ParseError(line.number, "duplicate element '" + t[1] + "'");
      ids.push_back(t[1]);
    } else if (t[0] == "cover") {
      if (t.size() != 3) throw ParseError(line.number, "expected 'cover <lo> <hi>'");
      auto lo = index.find(t[1]);
      auto hi = index.find(t[2]);
      if (lo == index.end()) throw ParseError(line.number, "unknown element '" + t[1] + "'");
      if (hi == index.end()) throw ParseError(line.number, "unknown element '" + t[2] + "'");
      covers.emplace_back(lo->second, hi->second);
    } else {
      throw ParseError(line.number, "unknown keyword '" + t[0] + "'");
    }
  }
  try {
    return Poset::from_covers(std::move(ids), covers);
  } catch (const std::invalid_argument& e) {
    throw ParseError(0, e.what());
  }
}

std::string format_hasse(const Poset& p) {
  std::ostringstream out;
  for (const auto& id : p.ids()) out << "elem " << id << '\n';
  auto covers = p.covers();
  std::sort(covers.begin(), covers.end());
  for (auto [lo, hi] : covers) out << "cover " << p.id(lo) << ' ' << p.id(hi) << '\n';
  return out.str();
}

}  // namespace hbtop

#include "hbtop/simplicial.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "hbtop/error.hpp"
#include "text_util.hpp"

namespace hbtop {

namespace {

constexpr const char* kEmptyMarker = "∅";

std::string fresh_name(const SimplicialComplex& k, std::string base) {
  while (k.find_vertex(base)) base += '\'';
  return base;
}

}  // namespace

// ---------------------------------------------------------------------------

std::optional<std::size_t> FaceList::find(std::span<const Vertex> face) const {
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    auto f = (*this)[mid];
    if (std::lexicographical_compare(f.begin(), f.end(), face.begin(), face.end()))
      lo = mid + 1;
    else
      hi = mid;
  }
  if (lo < size() && std::equal(face.begin(), face.end(), (*this)[lo].begin())) return lo;
  return std::nullopt;
}

void FaceList::sort_unique() {
  const std::size_t n = size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto face = [&](std::size_t i) { return std::span<const Vertex>(data_.data() + i * width_, width_); };
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    auto fa = face(a);
    auto fb = face(b);
    return std::lexicographical_compare(fa.begin(), fa.end(), fb.begin(), fb.end());
  });
  std::vector<Vertex> out;
  out.reserve(data_.size());
  for (std::size_t i = 0; i < n; ++i) {
    auto f = face(order[i]);
    if (i > 0 && std::equal(f.begin(), f.end(), face(order[i - 1]).begin())) continue;
    out.insert(out.end(), f.begin(), f.end());
  }
  data_ = std::move(out);
}

std::size_t FaceLattice::total() const {
  std::size_t n = 0;
  for (const auto& f : by_dim) n += f.size();
  return n;
}

// ---------------------------------------------------------------------------

SimplicialComplex SimplicialComplex::from_maximal(std::vector<std::string> vertex_ids, std::vector<Simplex> facets,
                                                  bool empty_allowed) {
  SimplicialComplex k(empty_allowed);
  k.vertex_ids_ = std::move(vertex_ids);
  std::sort(facets.begin(), facets.end());
  k.facets_ = std::move(facets);
  return k;
}

SimplicialComplex SimplicialComplex::from_faces(std::vector<std::string> vertex_ids, std::vector<Simplex> faces,
                                                bool empty_allowed) {
  const std::size_t n = vertex_ids.size();
  {
    std::unordered_set<std::string> seen;
    for (const auto& v : vertex_ids)
      if (!seen.insert(v).second) throw std::invalid_argument("duplicate vertex name '" + v + "'");
  }
  std::vector<bool> used(n, false);
  for (auto& f : faces) {
    std::sort(f.begin(), f.end());
    if (std::adjacent_find(f.begin(), f.end()) != f.end())
      throw std::invalid_argument("face repeats a vertex");
    for (Vertex v : f) {
      if (v >= n) throw std::invalid_argument("face refers to an unknown vertex");
      used[v] = true;
    }
  }
  for (Vertex v = 0; v < n; ++v)
    if (!used[v]) faces.push_back({v});
  std::erase_if(faces, [](const Simplex& f) { return f.empty(); });
  std::sort(faces.begin(), faces.end(), [](const Simplex& a, const Simplex& b) {
    return a.size() != b.size() ? a.size() > b.size() : a < b;
  });
  faces.erase(std::unique(faces.begin(), faces.end()), faces.end());

  std::vector<Simplex> kept;
  std::vector<std::vector<std::size_t>> by_vertex(n);
  for (auto& f : faces) {
    bool nested = false;
    for (std::size_t idx : by_vertex[f.front()]) {
      const auto& g = kept[idx];
      if (g.size() > f.size() && std::includes(g.begin(), g.end(), f.begin(), f.end())) {
        nested = true;
        break;
      }
    }
    if (nested) continue;
    for (Vertex v : f) by_vertex[v].push_back(kept.size());
    kept.push_back(std::move(f));
  }
  return from_maximal(std::move(vertex_ids), std::move(kept), empty_allowed);
}

SimplicialComplex SimplicialComplex::from_named_faces(const std::vector<std::vector<std::string>>& faces,
                                                      bool empty_allowed) {
  std::vector<std::string> ids;
  std::unordered_map<std::string, Vertex> index;
  std::vector<Simplex> out;
  for (const auto& named : faces) {
    Simplex f;
    for (const auto& v : named) {
      auto [it, fresh] = index.emplace(v, static_cast<Vertex>(ids.size()));
      if (fresh) ids.push_back(v);
      f.push_back(it->second);
    }
    out.push_back(std::move(f));
  }
  return from_faces(std::move(ids), std::move(out), empty_allowed);
}

int SimplicialComplex::dimension() const {
  int d = -1;
  for (const auto& f : facets_) d = std::max(d, static_cast<int>(f.size()) - 1);
  return d;
}

std::optional<Vertex> SimplicialComplex::find_vertex(std::string_view id) const {
  for (Vertex v = 0; v < vertex_ids_.size(); ++v)
    if (vertex_ids_[v] == id) return v;
  return std::nullopt;
}

FaceLattice SimplicialComplex::faces() const {
  FaceLattice lattice;
  const int top = dimension();
  if (top < 0) return lattice;
  std::vector<FaceList> lists;
  for (int d = 0; d <= top; ++d) lists.emplace_back(d);
  for (const auto& f : facets_) lists[f.size() - 1].push_back(f);
  Simplex sub;
  for (int d = top; d >= 0; --d) {
    lists[d].sort_unique();
    if (d == 0) break;
    const auto& cur = lists[d];
    for (std::size_t i = 0; i < cur.size(); ++i) {
      auto f = cur[i];
      for (std::size_t skip = 0; skip < f.size(); ++skip) {
        sub.clear();
        for (std::size_t j = 0; j < f.size(); ++j)
          if (j != skip) sub.push_back(f[j]);
        lists[d - 1].push_back(sub);
      }
    }
  }
  lattice.by_dim = std::move(lists);
  return lattice;
}

long long SimplicialComplex::euler_characteristic() const {
  auto lattice = faces();
  long long chi = 0;
  for (std::size_t d = 0; d < lattice.by_dim.size(); ++d)
    chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(lattice.by_dim[d].size());
  return chi;
}

bool SimplicialComplex::operator==(const SimplicialComplex& other) const {
  if (empty_allowed_ != other.empty_allowed_) return false;
  auto named = [](const SimplicialComplex& k) {
    std::set<std::vector<std::string>> out;
    for (const auto& f : k.facets_) {
      std::vector<std::string> names;
      for (Vertex v : f) names.push_back(k.vertex_ids_[v]);
      std::sort(names.begin(), names.end());
      out.insert(std::move(names));
    }
    return out;
  };
  return named(*this) == named(other);
}

// ---------------------------------------------------------------------------

SimplicialComplex order_complex(const Poset& p) {
  std::vector<Simplex> chains;
  Simplex chain;
  // Maximal chains are saturated chains from a minimal to a maximal element.
  std::function<void(Index)> extend = [&](Index x) {
    chain.push_back(static_cast<Vertex>(x));
    auto up = p.upper_covers(x);
    if (up.empty()) {
      Simplex s = chain;
      std::sort(s.begin(), s.end());
      chains.push_back(std::move(s));
    } else {
      for (Index y : up) extend(y);
    }
    chain.pop_back();
  };
  for (Index m : p.minimal_elements()) extend(m);
  return SimplicialComplex::from_maximal(p.ids(), std::move(chains), true);
}

SimplicialComplex space_join(const SimplicialComplex& k, const SimplicialComplex& l) {
  if (k.empty()) return l;
  if (l.empty()) return k;
  std::unordered_set<std::string> left(k.vertex_ids().begin(), k.vertex_ids().end());
  bool collide = std::any_of(l.vertex_ids().begin(), l.vertex_ids().end(),
                             [&](const std::string& v) { return left.count(v) > 0; });
  std::vector<std::string> ids;
  for (const auto& v : k.vertex_ids()) ids.push_back(collide ? "L:" + v : v);
  for (const auto& v : l.vertex_ids()) ids.push_back(collide ? "R:" + v : v);
  const auto shift = static_cast<Vertex>(k.vertex_count());
  std::vector<Simplex> facets;
  facets.reserve(k.facets().size() * l.facets().size());
  for (const auto& a : k.facets()) {
    for (const auto& b : l.facets()) {
      Simplex f = a;
      for (Vertex v : b) f.push_back(v + shift);
      facets.push_back(std::move(f));
    }
  }
  return SimplicialComplex::from_faces(std::move(ids), std::move(facets), k.empty_allowed() && l.empty_allowed());
}

SimplicialComplex suspension(const SimplicialComplex& k) {
  std::string north = fresh_name(k, "N");
  std::string south = fresh_name(k, "S");
  auto poles = SimplicialComplex::from_named_faces({{north}, {south}});
  return space_join(k, poles);
}

SimplicialComplex suspension(const SimplicialComplex& k, int times) {
  if (times < 0) throw std::invalid_argument("suspension count must be non-negative");
  SimplicialComplex out = k;
  for (int i = 0; i < times; ++i) out = suspension(out);
  return out;
}

SimplicialComplex simplicial_cone(const SimplicialComplex& k) {
  auto apex = SimplicialComplex::from_named_faces({{fresh_name(k, "c")}});
  return space_join(k, apex);
}

SimplicialComplex wedge(const std::vector<SimplicialComplex>& summands, const std::vector<std::string>& basepoints) {
  if (summands.size() != basepoints.size()) throw std::invalid_argument("wedge needs one basepoint per summand");
  if (summands.empty()) throw std::invalid_argument("wedge of no summands");
  for (std::size_t i = 0; i < summands.size(); ++i) {
    if (summands[i].empty()) throw std::invalid_argument("wedge summand " + std::to_string(i) + " is empty");
    if (!summands[i].find_vertex(basepoints[i]))
      throw std::invalid_argument("basepoint '" + basepoints[i] + "' is not a vertex of summand " + std::to_string(i));
  }
  if (summands.size() == 1) return summands.front();

  std::vector<std::string> ids{"*"};
  std::vector<Simplex> facets;
  for (std::size_t i = 0; i < summands.size(); ++i) {
    const auto& k = summands[i];
    Vertex base = *k.find_vertex(basepoints[i]);
    std::vector<Vertex> remap(k.vertex_count());
    for (Vertex v = 0; v < k.vertex_count(); ++v) {
      if (v == base) {
        remap[v] = 0;
      } else {
        remap[v] = static_cast<Vertex>(ids.size());
        ids.push_back(std::to_string(i) + ":" + k.vertex_ids()[v]);
      }
    }
    for (const auto& f : k.facets()) {
      Simplex g;
      for (Vertex v : f) g.push_back(remap[v]);
      facets.push_back(std::move(g));
    }
  }
  return SimplicialComplex::from_faces(std::move(ids), std::move(facets));
}

SimplicialComplex skeleton(const SimplicialComplex& k, int d) {
  if (d < -1) throw std::invalid_argument("skeleton dimension must be >= -1");
  if (d == -1) return SimplicialComplex(k.empty_allowed());
  if (d >= k.dimension()) return k;
  const auto width = static_cast<std::size_t>(d + 1);
  std::set<Simplex> faces;
  for (const auto& f : k.facets()) {
    if (f.size() <= width) {
      faces.insert(f);
      continue;
    }
    std::vector<bool> pick(f.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(width), true);
    do {
      Simplex s;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (pick[i]) s.push_back(f[i]);
      faces.insert(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  return SimplicialComplex::from_faces(k.vertex_ids(), {faces.begin(), faces.end()}, k.empty_allowed());
}

SimplicialComplex subcomplex(const SimplicialComplex& k, std::vector<Simplex> faces) {
  std::vector<Vertex> remap(k.vertex_count(), static_cast<Vertex>(-1));
  std::vector<std::string> ids;
  for (auto& f : faces) {
    std::sort(f.begin(), f.end());
    for (Vertex& v : f) {
      if (v >= k.vertex_count()) throw std::invalid_argument("subcomplex face refers to an unknown vertex");
      if (remap[v] == static_cast<Vertex>(-1)) {
        remap[v] = static_cast<Vertex>(ids.size());
        ids.push_back(k.vertex_ids()[v]);
      }
      v = remap[v];
    }
  }
  return SimplicialComplex::from_faces(std::move(ids), std::move(faces), k.empty_allowed());
}

SimplicialComplex full_simplex(int vertices) {
  if (vertices < 0) throw std::invalid_argument("negative vertex count");
  std::vector<std::string> ids;
  Simplex f;
  for (int i = 0; i < vertices; ++i) {
    ids.push_back(std::to_string(i));
    f.push_back(static_cast<Vertex>(i));
  }
  if (vertices == 0) return {};
  return SimplicialComplex::from_faces(std::move(ids), {f});
}

SimplicialComplex simplex_boundary(int vertices) {
  if (vertices < 1) throw std::invalid_argument("simplex boundary needs at least one vertex");
  std::vector<std::string> ids;
  std::vector<Simplex> facets;
  for (int i = 0; i < vertices; ++i) ids.push_back(std::to_string(i));
  for (int skip = 0; skip < vertices; ++skip) {
    Simplex f;
    for (int i = 0; i < vertices; ++i)
      if (i != skip) f.push_back(static_cast<Vertex>(i));
    if (!f.empty()) facets.push_back(std::move(f));
  }
  return SimplicialComplex::from_faces(vertices == 1 ? std::vector<std::string>{} : std::move(ids),
                                       std::move(facets));
}

SimplicialComplex parse_complex(std::string_view text) {
  auto lines = detail::tokenize(text);
  if (lines.size() == 1 && lines[0].tokens.size() == 1 && lines[0].tokens[0] == kEmptyMarker)
    return SimplicialComplex(true);
  std::vector<std::vector<std::string>> faces;
  for (const auto& line : lines) {
    for (const auto& t : line.tokens)
      if (t == kEmptyMarker) throw ParseError(line.number, "'∅' must be the only line of an empty complex");
    std::set<std::string> distinct(line.tokens.begin(), line.tokens.end());
    if (distinct.size() != line.tokens.size()) throw ParseError(line.number, "facet repeats a vertex");
    faces.push_back(line.tokens);
  }
  return SimplicialComplex::from_named_faces(faces);
}

std::string format_complex(const SimplicialComplex& k) {
  if (k.empty()) return std::string(kEmptyMarker) + "\n";
  std::ostringstream out;
  for (const auto& f : k.facets()) {
    for (std::size_t i = 0; i < f.size(); ++i) out << (i ? " " : "") << k.vertex_ids()[f[i]];
    out << '\n';
  }
  return out.str();
}

}  // namespace hbtop

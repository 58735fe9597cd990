#include "hbtop/cli/generators.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "hbtop/contractibility.hpp"

namespace hbtop::cli {

std::uint64_t instance_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

const std::vector<std::string>& lemma_ids() {
  static const std::vector<std::string> ids{"monotone",  "fibre",          "hocolim1", "hocolim2",
                                            "dimension", "stratification", "rgb"};
  return ids;
}

bool is_lemma_id(const std::string& id) {
  const auto& ids = lemma_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

namespace {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

/// A strict order under construction, kept transitively closed.
struct Growing {
  std::vector<std::string> ids;
  std::vector<std::vector<char>> lt;

  std::size_t size() const { return ids.size(); }

  explicit Growing(const Poset& p) {
    for (Index i = 0; i < p.size(); ++i) ids.push_back(p.id(i));
    lt.assign(p.size(), std::vector<char>(p.size(), 0));
    for (Index a = 0; a < p.size(); ++a)
      for (Index b = 0; b < p.size(); ++b) lt[a][b] = p.less(a, b);
  }

  std::size_t add(std::string id) {
    for (auto& row : lt) row.push_back(0);
    ids.push_back(std::move(id));
    lt.emplace_back(ids.size(), 0);
    return ids.size() - 1;
  }

  std::vector<std::size_t> below(std::size_t y) const {
    std::vector<std::size_t> out;
    for (std::size_t x = 0; x < size(); ++x)
      if (lt[x][y]) out.push_back(x);
    return out;
  }

  /// New element whose only lower cover is y.
  std::size_t add_above(std::size_t y, std::string id) {
    std::size_t z = add(std::move(id));
    lt[y][z] = 1;
    for (std::size_t x : below(y)) lt[x][z] = 1;
    return z;
  }

  /// New element whose only upper cover is y, sitting above a random
  /// down-closed part of what lies below y.
  std::size_t add_under(Rng& rng, std::size_t y, std::string id) {
    std::vector<std::size_t> under = below(y);
    std::vector<char> keep(size(), 0);
    for (std::size_t x : under)
      if (chance(rng, 0.4)) {
        keep[x] = 1;
        for (std::size_t w : below(x)) keep[w] = 1;
      }
    std::size_t z = add(std::move(id));
    for (std::size_t x = 0; x < z; ++x)
      if (keep[x]) lt[x][z] = 1;
    lt[z][y] = 1;
    for (std::size_t w = 0; w < z; ++w)
      if (lt[y][w]) lt[z][w] = 1;
    return z;
  }

  Poset build() const {
    return Poset::from_predicate(ids, [this](Index a, Index b) { return lt[a][b] != 0; });
  }
};

/// Attaches `count` beat points to g; `parent` receives the element each
/// new one is attached to.
void attach_beat_points(Rng& rng, Growing& g, int count, std::vector<std::size_t>* parent = nullptr) {
  for (int i = 0; i < count; ++i) {
    std::size_t y = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(g.size()) - 1));
    std::string id = "b" + std::to_string(i);
    if (chance(rng, 0.5))
      g.add_above(y, id);
    else
      g.add_under(rng, y, id);
    if (parent) parent->push_back(y);
  }
}

std::shared_ptr<const Poset> share(Poset p) { return std::make_shared<const Poset>(std::move(p)); }

/// Product order on P × Q.
Poset product(const Poset& p, const Poset& q) {
  std::vector<std::string> ids;
  for (Index a = 0; a < p.size(); ++a)
    for (Index b = 0; b < q.size(); ++b) ids.push_back("(" + p.id(a) + "," + q.id(b) + ")");
  const Index n = q.size();
  return Poset::from_predicate(ids, [&](Index x, Index y) {
    Index xa = x / n, xb = x % n, ya = y / n, yb = y % n;
    return x != y && p.leq(xa, ya) && q.leq(xb, yb);
  });
}

/// P with a new maximum (top) or minimum adjoined.
Poset adjoin_extreme(const Poset& p, bool top) {
  Growing g(p);
  std::size_t e = g.add(top ? "top" : "bottom");
  for (std::size_t x = 0; x < e; ++x) (top ? g.lt[x][e] : g.lt[e][x]) = 1;
  return g.build();
}

/// Nonempty chains of P under inclusion, with the maximum of each chain.
std::pair<Poset, std::vector<Index>> chain_poset(const Poset& p) {
  std::vector<std::vector<Index>> chains;
  std::vector<Index> cur;
  auto extend = [&](auto&& self, Index from) -> void {
    for (Index x = from; x < p.size(); ++x) {
      if (std::any_of(cur.begin(), cur.end(), [&](Index c) { return !p.comparable(c, x); })) continue;
      cur.push_back(x);
      chains.push_back(cur);
      self(self, x + 1);
      cur.pop_back();
    }
  };
  extend(extend, 0);
  std::vector<std::string> ids;
  std::vector<Index> top;
  for (const auto& c : chains) {
    std::string id = "[";
    for (std::size_t i = 0; i < c.size(); ++i) id += (i ? "," : "") + p.id(c[i]);
    ids.push_back(id + "]");
    Index t = c.front();
    for (Index x : c)
      if (p.less(t, x)) t = x;
    top.push_back(t);
  }
  Poset q = Poset::from_predicate(ids, [&](Index a, Index b) {
    return chains[a].size() < chains[b].size() &&
           std::includes(chains[b].begin(), chains[b].end(), chains[a].begin(), chains[a].end());
  });
  return {std::move(q), std::move(top)};
}

// ---------------------------------------------------------------------------

struct CoverInstance {
  Poset poset;
  std::vector<ElementSet> qs;
  std::string description;
};

/// P = B joined below the proper nonempty subsets of {1..k}, with
/// Q_i = B ∪ {S : i ∉ S}, then grown by beat points that join exactly the
/// sets their anchor lies in. Proper intersections have a maximum before
/// growth and stay dismantlable after it.
CoverInstance structured_cover(Rng& rng, int k) {
  Poset base = chance(rng, 0.2) ? Poset{} : random_poset(rng, uniform(rng, 1, 5), 0.35);
  const int nb = static_cast<int>(base.size());
  std::vector<unsigned> subsets;
  for (unsigned s = 1; s + 1 < (1u << k); ++s) subsets.push_back(s);
  Growing g(base);
  std::vector<unsigned> missing;  // bit i set: element not in Q_i
  for (int x = 0; x < nb; ++x) missing.push_back(0);
  for (unsigned s : subsets) {
    std::string id = "{";
    for (int i = 0; i < k; ++i)
      if (s >> i & 1u) id += (id.size() > 1 ? "," : "") + std::to_string(i + 1);
    std::size_t z = g.add(id + "}");
    for (int x = 0; x < nb; ++x) g.lt[x][z] = 1;
    missing.push_back(s);
  }
  for (std::size_t a = nb; a < g.size(); ++a)
    for (std::size_t b = nb; b < g.size(); ++b)
      g.lt[a][b] = a != b && (missing[a] & missing[b]) == missing[a];
  std::vector<std::size_t> parent;
  const int extra = uniform(rng, 0, 4);
  attach_beat_points(rng, g, extra, &parent);
  for (std::size_t y : parent) missing.push_back(missing[y]);

  CoverInstance inst;
  inst.poset = g.build();
  inst.qs.resize(k);
  for (Index x = 0; x < inst.poset.size(); ++x)
    for (int i = 0; i < k; ++i)
      if (!(missing[x] >> i & 1u)) inst.qs[i].push_back(x);
  inst.description = "join of a " + std::to_string(nb) + "-element core with the " + std::to_string(k - 2) +
                     "-sphere poset, " + std::to_string(extra) + " beat points";
  return inst;
}

/// Random poset with k random down-closed sets covering its maximal
/// elements; the hypotheses usually fail.
CoverInstance random_cover(Rng& rng, int k) {
  CoverInstance inst;
  inst.poset = random_poset(rng, uniform(rng, 4, 8), 0.35);
  const Poset& p = inst.poset;
  std::vector<std::vector<char>> member(k, std::vector<char>(p.size(), 0));
  for (Index m : p.maximal_elements()) {
    member[uniform(rng, 0, k - 1)][m] = 1;
    for (int i = 0; i < k; ++i)
      if (chance(rng, 0.3)) member[i][m] = 1;
  }
  inst.qs.resize(k);
  for (int i = 0; i < k; ++i) {
    std::vector<char> closed(p.size(), 0);
    for (Index m = 0; m < p.size(); ++m)
      if (member[i][m])
        for (Index y : p.select(m, Relation::LessEq)) closed[y] = 1;
    for (Index y = 0; y < p.size(); ++y)
      if (closed[y]) inst.qs[i].push_back(y);
  }
  inst.description = "random " + std::to_string(p.size()) + "-element poset with a random cover";
  return inst;
}

CoverInstance cover_instance(Rng& rng, int k) {
  return chance(rng, 0.85) ? structured_cover(rng, k) : random_cover(rng, k);
}

// ---------------------------------------------------------------------------

LemmaReport monotone_instance(Rng& rng) {
  Poset p = random_grown_poset(rng, uniform(rng, 3, 6), uniform(rng, 1, 5));
  auto ptr = share(p);
  std::vector<Index> f(p.size());
  std::iota(f.begin(), f.end(), Index{0});
  std::string how;
  const double roll = std::uniform_real_distribution<double>(0, 1)(rng);
  auto compose_retractions = [&](bool up, int times) {
    for (int t = 0; t < times; ++t) {
      std::vector<Index> beats;
      for (Index x = 0; x < p.size(); ++x)
        if ((up ? p.upper_covers(x) : p.lower_covers(x)).size() == 1) beats.push_back(x);
      if (beats.empty()) return;
      Index x = beats[uniform(rng, 0, static_cast<int>(beats.size()) - 1)];
      Index to = (up ? p.upper_covers(x) : p.lower_covers(x))[0];
      for (auto& v : f)
        if (v == x) v = to;
    }
  };
  if (roll < 0.4) {
    compose_retractions(true, uniform(rng, 1, 3));
    how = "composite of upward beat-point retractions";
  } else if (roll < 0.8) {
    compose_retractions(false, uniform(rng, 1, 3));
    how = "composite of downward beat-point retractions";
  } else if (roll < 0.9) {
    Poset c = adjoin_extreme(p, true);
    ptr = share(c);
    f.assign(c.size(), *c.maximum());
    how = "constant map to the adjoined maximum";
  } else {
    compose_retractions(true, 1);
    compose_retractions(false, 1);
    how = "one upward and one downward retraction";
  }
  LemmaReport r = check_monotone_lemma(PosetMap(ptr, ptr, f));
  r.instance = how + " on a " + std::to_string(ptr->size()) + "-element poset";
  return r;
}

LemmaReport fibre_instance(Rng& rng) {
  const double roll = std::uniform_real_distribution<double>(0, 1)(rng);
  if (roll < 0.5) {
    bool down = chance(rng, 0.5);
    Poset q = random_poset(rng, uniform(rng, 2, 5), 0.4);
    Poset c = adjoin_extreme(random_poset(rng, uniform(rng, 1, 3), 0.4), down);
    Poset prod = product(q, c);
    std::vector<Index> f(prod.size());
    for (Index x = 0; x < prod.size(); ++x) f[x] = x / c.size();
    LemmaReport r =
        check_fibre_lemma(PosetMap(share(prod), share(q), f), down ? Relation::LessEq : Relation::GreaterEq);
    r.instance = "projection of a product with a " + std::string(down ? "topped" : "bottomed") + " factor onto a " +
                 std::to_string(q.size()) + "-element poset";
    return r;
  }
  if (roll < 0.75) {
    Poset q = random_poset(rng, uniform(rng, 2, 5), 0.4);
    bool down = chance(rng, 0.5);
    if (!down) q = opposite(q);
    auto [chains, top] = chain_poset(q);
    std::vector<Index> f = top;
    if (!down) {
      chains = opposite(chains);
      q = opposite(q);
    }
    LemmaReport r =
        check_fibre_lemma(PosetMap(share(chains), share(q), f), down ? Relation::LessEq : Relation::GreaterEq);
    r.instance = std::string(down ? "maximum" : "minimum") + " of chains of a " + std::to_string(q.size()) +
                 "-element poset";
    return r;
  }
  if (roll < 0.92) {
    CoverInstance c = structured_cover(rng, uniform(rng, 2, 4));
    LemmaReport r = check_fibre_lemma(proof_map_hocolim(c.poset, c.qs), Relation::LessEq);
    r.instance = "covering map of " + c.description;
    return r;
  }
  Poset p = random_poset(rng, uniform(rng, 3, 7), 0.35);
  auto heights = p.height_above();
  int h = *std::max_element(heights.begin(), heights.end());
  std::vector<std::string> ids;
  for (int i = 0; i <= h; ++i) ids.push_back("h" + std::to_string(i));
  Poset chain = Poset::from_predicate(ids, [](Index a, Index b) { return a > b; });
  std::vector<Index> f(heights.begin(), heights.end());
  LemmaReport r = check_fibre_lemma(PosetMap(share(p), share(chain), f), Relation::LessEq);
  r.instance = "height map of a random " + std::to_string(p.size()) + "-element poset";
  return r;
}

LemmaReport hocolim_instance(Rng& rng, bool two_sets) {
  int k = two_sets ? 2 : uniform(rng, 2, 4);
  CoverInstance c = cover_instance(rng, k);
  LemmaReport r = two_sets ? check_two_cover_lemma(c.poset, c.qs[0], c.qs[1]) : check_covering_lemma(c.poset, c.qs);
  r.instance = c.description + ", k = " + std::to_string(k);
  return r;
}

LemmaReport dimension_instance(Rng& rng) {
  Poset p = random_grown_poset(rng, uniform(rng, 3, 7), uniform(rng, 0, 4));
  auto heights = p.height_above();
  int h = *std::max_element(heights.begin(), heights.end());
  bool low = chance(rng, 0.15);
  LemmaReport best;
  for (int d = -1; d <= h + 1; ++d) {
    best = check_dimension_lemma(p, d);
    if (best.hypotheses_certified()) {
      if (low && d > -1) best = check_dimension_lemma(p, d - 1);
      break;
    }
  }
  best.instance = "grown " + std::to_string(p.size()) + "-element poset";
  return best;
}

Stratification faces_over_face_poset(const SimplicialComplex& k) {
  FaceLattice lattice = k.faces();
  std::vector<std::vector<Vertex>> faces;
  std::map<std::vector<Vertex>, Index> index;
  std::vector<std::string> ids;
  for (const auto& list : lattice.by_dim)
    for (std::size_t i = 0; i < list.size(); ++i) {
      std::vector<Vertex> f(list[i].begin(), list[i].end());
      std::string id = "{";
      for (std::size_t j = 0; j < f.size(); ++j) id += (j ? "," : "") + k.vertex_ids()[f[j]];
      index.emplace(f, faces.size());
      faces.push_back(std::move(f));
      ids.push_back(id + "}");
    }
  Poset p = Poset::from_predicate(ids, [&](Index a, Index b) {
    return faces[a].size() < faces[b].size() &&
           std::includes(faces[b].begin(), faces[b].end(), faces[a].begin(), faces[a].end());
  });
  return Stratification::from_function(
      k, std::move(p), [&](std::span<const Vertex> f) { return index.at(std::vector<Vertex>(f.begin(), f.end())); });
}

LemmaReport stratification_instance(Rng& rng) {
  const double roll = std::uniform_real_distribution<double>(0, 1)(rng);
  Stratification s;
  std::string how;
  if (roll < 0.4) {
    Poset p = random_grown_poset(rng, uniform(rng, 3, 6), uniform(rng, 0, 3));
    s = chain_max_stratification(p);
    how = "order complex of a " + std::to_string(p.size()) + "-element poset labelled by chain maxima";
  } else if (roll < 0.8) {
    SimplicialComplex k = random_complex(rng, uniform(rng, 3, 6), uniform(rng, 2, 5), 3);
    s = faces_over_face_poset(k);
    how = "complex with " + std::to_string(k.vertex_count()) + " vertices stratified by its faces";
  } else if (roll < 0.9) {
    SimplicialComplex k = simplicial_cone(random_complex(rng, uniform(rng, 2, 5), uniform(rng, 1, 4), 2));
    s = Stratification::from_function(k, Poset::from_covers({"*"}, {}), [](std::span<const Vertex>) { return 0; });
    how = "cone stratified over a point";
  } else {
    SimplicialComplex k = random_complex(rng, uniform(rng, 3, 6), uniform(rng, 2, 4), 2);
    std::vector<std::string> ids;
    for (int d = 0; d <= k.dimension(); ++d) ids.push_back("dim" + std::to_string(d));
    Poset chain = Poset::from_predicate(ids, [](Index a, Index b) { return a < b; });
    s = Stratification::from_function(k, chain, [](std::span<const Vertex> f) { return Index(f.size() - 1); });
    how = "complex stratified by face dimension";
  }
  LemmaReport r = check_stratification(s);
  r.instance = how;
  return r;
}

LemmaReport rgb_instance(Rng& rng) {
  std::string family;
  MarkedComplex m = random_marked_complex(rng, 5, &family);
  LemmaReport r = check_marked(m);
  r.instance = family + " on " + std::to_string(m.vertex_count()) + " vertices";
  return r;
}

}  // namespace

Poset random_poset(Rng& rng, int n, double density) {
  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back("p" + std::to_string(i));
  std::vector<std::pair<Index, Index>> gens;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (chance(rng, density)) gens.emplace_back(i, j);
  return Poset::from_generators(ids, gens);
}

Poset random_grown_poset(Rng& rng, int core, int extra) {
  Growing g(random_poset(rng, core, 0.35));
  attach_beat_points(rng, g, extra);
  return g.build();
}

SimplicialComplex random_complex(Rng& rng, int vertices, int facets, int max_dim) {
  std::vector<std::string> ids;
  for (int v = 0; v < vertices; ++v) ids.push_back(std::to_string(v));
  std::vector<Simplex> faces;
  for (int i = 0; i < facets; ++i) {
    int size = uniform(rng, 1, std::min(max_dim + 1, vertices));
    std::vector<Vertex> all(vertices);
    std::iota(all.begin(), all.end(), Vertex{0});
    std::shuffle(all.begin(), all.end(), rng);
    Simplex f(all.begin(), all.begin() + size);
    std::sort(f.begin(), f.end());
    faces.push_back(std::move(f));
  }
  return SimplicialComplex::from_faces(ids, faces);
}

MarkedComplex random_marked_complex(Rng& rng, int max_vertices, std::string* family) {
  if (max_vertices < 1 || max_vertices > 5) throw std::invalid_argument("marked complexes are generated on 1..5 vertices");
  auto name = [&](const char* f) {
    if (family) *family = f;
  };
  const double roll = std::uniform_real_distribution<double>(0, 1)(rng);
  if (roll < 0.4 && max_vertices >= 2) {
    // Cone over L with the apex simple: NS is the face poset of L.
    name("cone with simple apex");
    int n = uniform(rng, 1, max_vertices - 1);
    SimplicialComplex l = random_complex(rng, n, uniform(rng, 1, 4), 2);
    std::vector<Simplex> faces;
    for (Simplex f : l.facets()) {
      f.push_back(static_cast<Vertex>(n));
      faces.push_back(std::move(f));
    }
    std::vector<std::string> ids = l.vertex_ids();
    ids.push_back("a");
    std::vector<Simplex> gens{{static_cast<Vertex>(n)}};
    for (const auto& f : l.facets())
      if (chance(rng, 0.2)) gens.push_back(f);
    return MarkedComplex::from_generators(SimplicialComplex::from_faces(ids, faces), gens);
  }
  const bool simplex = roll < 0.8;
  int n = uniform(rng, 1, max_vertices);
  SimplicialComplex k = simplex ? full_simplex(n) : random_complex(rng, n, uniform(rng, 1, 4), 3);
  name(simplex ? "simplex" : "random complex");
  std::vector<Simplex> gens;
  const int tries = uniform(rng, 1, 3);
  for (int i = 0; i < tries; ++i) {
    const auto& f = k.facets()[uniform(rng, 0, static_cast<int>(k.facets().size()) - 1)];
    Simplex g;
    for (Vertex v : f)
      if (chance(rng, 0.5)) g.push_back(v);
    if (g.empty()) g.push_back(f[uniform(rng, 0, static_cast<int>(f.size()) - 1)]);
    gens.push_back(std::move(g));
  }
  return MarkedComplex::from_generators(std::move(k), gens);
}

Stratification chain_max_stratification(const Poset& p) {
  return Stratification::from_function(order_complex(p), p, [&](std::span<const Vertex> f) {
    Index top = f[0];
    for (Vertex v : f)
      if (p.less(top, v)) top = v;
    return top;
  });
}

Stratification face_stratification(const SimplicialComplex& k) { return faces_over_face_poset(k); }

LemmaReport check_marked(const MarkedComplex& m) {
  LemmaReport r = check_boundary_suspension(m);
  r.details["recolouring"] = to_json(audit_recolouring(m));
  return r;
}

LemmaReport run_lemma_instance(const std::string& lemma, std::uint64_t seed) {
  Rng rng(seed);
  if (lemma == "monotone") return monotone_instance(rng);
  if (lemma == "fibre") return fibre_instance(rng);
  if (lemma == "hocolim1") return hocolim_instance(rng, true);
  if (lemma == "hocolim2") return hocolim_instance(rng, false);
  if (lemma == "dimension") return dimension_instance(rng);
  if (lemma == "stratification") return stratification_instance(rng);
  if (lemma == "rgb") return rgb_instance(rng);
  throw std::invalid_argument("unknown lemma '" + lemma + "'");
}

}  // namespace hbtop::cli

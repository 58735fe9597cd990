#include "hbtop/contractibility.hpp"

#include <algorithm>
#include <atomic>
#include <set>
#include <stdexcept>

namespace hbtop {

namespace {

std::atomic<bool> g_cross_check{false};

// Face lattice with global face numbers and immediate face/coface links.
struct Incidence {
  FaceLattice lattice;
  std::vector<std::size_t> offset;           // first global id per dimension
  std::vector<std::vector<std::uint32_t>> facets_of;    // codimension-one faces
  std::vector<std::vector<std::uint32_t>> cofaces_of;   // codimension-one cofaces

  explicit Incidence(const SimplicialComplex& k) : lattice(k.faces()) {
    std::size_t total = 0;
    for (const auto& list : lattice.by_dim) {
      offset.push_back(total);
      total += list.size();
    }
    facets_of.resize(total);
    cofaces_of.resize(total);
    Simplex sub;
    for (std::size_t d = 1; d < lattice.by_dim.size(); ++d) {
      const FaceList& faces = lattice.by_dim[d];
      const FaceList& lower = lattice.by_dim[d - 1];
      for (std::size_t i = 0; i < faces.size(); ++i) {
        auto f = faces[i];
        const auto id = static_cast<std::uint32_t>(offset[d] + i);
        for (std::size_t skip = 0; skip < f.size(); ++skip) {
          sub.clear();
          for (std::size_t j = 0; j < f.size(); ++j)
            if (j != skip) sub.push_back(f[j]);
          const auto low = static_cast<std::uint32_t>(offset[d - 1] + *lower.find(sub));
          facets_of[id].push_back(low);
          cofaces_of[low].push_back(id);
        }
      }
    }
  }

  std::size_t size() const { return facets_of.size(); }

  std::span<const Vertex> face(std::uint32_t id) const {
    std::size_t d = std::upper_bound(offset.begin(), offset.end(), id) - offset.begin() - 1;
    return lattice.by_dim[d][id - offset[d]];
  }
};

std::vector<std::string> names(const SimplicialComplex& k, std::span<const Vertex> f) {
  std::vector<std::string> out;
  for (Vertex v : f) out.push_back(k.vertex_ids()[v]);
  return out;
}

void cross_check(const ContractibilityCertificate& c, const GradedHomology& h) {
  if (c.contractible() && !h.is_zero())
    throw std::logic_error("contractible certificate for a space with nonzero reduced homology: " + h.to_string());
}

ContractibilityCertificate from_homology(const SimplicialComplex& k) {
  ContractibilityCertificate c;
  GradedHomology h = reduced_homology(k);
  if (!h.is_zero()) {
    c.verdict = Verdict::NonContractible;
    c.method = "homology";
    c.witness_degree = h.lowest_nonzero_degree();
  }
  return c;
}

}  // namespace

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Contractible:
      return "certified-contractible";
    case Verdict::NonContractible:
      return "certified-noncontractible";
    case Verdict::Unknown:
      break;
  }
  return "unknown";
}

void set_certificate_cross_check(bool enabled) { g_cross_check = enabled; }
bool certificate_cross_check() { return g_cross_check; }

ContractibilityCertificate certify_complex(const SimplicialComplex& k) {
  ContractibilityCertificate c;
  if (k.empty()) {
    c.verdict = Verdict::NonContractible;
    c.method = "homology";
    c.witness_degree = -1;
    return c;
  }

  Incidence inc(k);
  const std::size_t n = inc.size();
  std::vector<bool> alive(n, true);
  std::vector<std::uint32_t> live_cofaces(n);
  for (std::size_t i = 0; i < n; ++i) live_cofaces[i] = static_cast<std::uint32_t>(inc.cofaces_of[i].size());

  auto lex_less = [&](std::uint32_t a, std::uint32_t b) {
    auto fa = inc.face(a);
    auto fb = inc.face(b);
    if (std::lexicographical_compare(fa.begin(), fa.end(), fb.begin(), fb.end())) return true;
    if (std::lexicographical_compare(fb.begin(), fb.end(), fa.begin(), fa.end())) return false;
    return a < b;
  };
  std::set<std::uint32_t, decltype(lex_less)> free_faces(lex_less);
  for (std::uint32_t i = 0; i < n; ++i)
    if (live_cofaces[i] == 1) free_faces.insert(i);

  std::size_t remaining = n;
  auto remove = [&](std::uint32_t id) {
    alive[id] = false;
    --remaining;
    free_faces.erase(id);
    for (std::uint32_t low : inc.facets_of[id]) {
      if (!alive[low]) continue;
      if (--live_cofaces[low] == 1)
        free_faces.insert(low);
      else
        free_faces.erase(low);
    }
  };

  while (!free_faces.empty()) {
    const std::uint32_t sigma = *free_faces.begin();
    std::uint32_t tau = 0;
    for (std::uint32_t up : inc.cofaces_of[sigma])
      if (alive[up]) tau = up;
    c.collapses.emplace_back(names(k, inc.face(sigma)), names(k, inc.face(tau)));
    remove(tau);
    remove(sigma);
  }

  c.core_size = remaining;
  if (remaining == 1) {
    c.verdict = Verdict::Contractible;
    c.method = "collapse";
  } else {
    std::vector<Simplex> core;
    for (std::uint32_t i = 0; i < n; ++i)
      if (alive[i] && live_cofaces[i] == 0) {
        auto f = inc.face(i);
        core.emplace_back(f.begin(), f.end());
      }
    ContractibilityCertificate h = from_homology(subcomplex(k, std::move(core)));
    c.verdict = h.verdict;
    c.witness_degree = h.witness_degree;
    if (h.verdict != Verdict::Unknown) c.method = h.method;
    c.collapses.clear();
  }
  if (g_cross_check) cross_check(c, reduced_homology(k));
  return c;
}

Poset beat_point_core(const Poset& p, std::vector<Index>* removed) {
  const std::size_t n = p.size();
  std::vector<std::set<Index>> up(n), down(n);
  for (Index i = 0; i < n; ++i) {
    up[i].insert(p.upper_covers(i).begin(), p.upper_covers(i).end());
    down[i].insert(p.lower_covers(i).begin(), p.lower_covers(i).end());
  }
  Bits alive(n);
  alive.set();
  std::set<Index> beats;
  auto refresh = [&](Index i) {
    if (alive.test(i) && (up[i].size() == 1 || down[i].size() == 1))
      beats.insert(i);
    else
      beats.erase(i);
  };
  for (Index i = 0; i < n; ++i) refresh(i);

  std::size_t left = n;
  while (left > 1 && !beats.empty()) {
    const Index x = *beats.begin();
    beats.erase(beats.begin());
    alive.reset(x);
    --left;
    if (removed) removed->push_back(x);
    for (Index l : down[x]) up[l].erase(x);
    for (Index u : up[x]) down[u].erase(x);
    for (Index l : down[x])
      for (Index u : up[x]) {
        // l < u stays a cover unless something else sits in between
        if ((p.strictly_above(l) & p.strictly_below(u) & alive).none()) {
          up[l].insert(u);
          down[u].insert(l);
        }
      }
    for (Index l : down[x]) refresh(l);
    for (Index u : up[x]) refresh(u);
    up[x].clear();
    down[x].clear();
  }

  ElementSet keep;
  for (Index i = 0; i < n; ++i)
    if (alive.test(i)) keep.push_back(i);
  return p.induced(keep);
}

GradedHomology poset_homology(const Poset& p) { return reduced_homology(order_complex(beat_point_core(p))); }

ContractibilityCertificate certify_poset(const Poset& p) {
  ContractibilityCertificate c;
  if (p.empty()) {
    c.verdict = Verdict::NonContractible;
    c.method = "homology";
    c.witness_degree = -1;
    return c;
  }
  auto extreme = p.minimum();
  if (!extreme) extreme = p.maximum();
  if (extreme) {
    c.verdict = Verdict::Contractible;
    c.method = "cone";
    c.cone_point = p.id(*extreme);
    c.core_size = 1;
    return c;
  }

  std::vector<Index> removed;
  Poset core = beat_point_core(p, &removed);
  if (core.size() == 1) {
    c.verdict = Verdict::Contractible;
    c.method = "dismantling";
    for (Index i : removed) c.dismantled.push_back(p.id(i));
    c.core_size = 1;
    if (g_cross_check) cross_check(c, reduced_homology(order_complex(p)));
    return c;
  }

  ContractibilityCertificate inner = certify_complex(order_complex(core));
  inner.core_size = core.size();
  if (inner.verdict == Verdict::Contractible) {
    for (Index i : removed) inner.dismantled.push_back(p.id(i));
    if (g_cross_check) cross_check(inner, reduced_homology(order_complex(p)));
  }
  return inner;
}

nlohmann::json to_json(const ContractibilityCertificate& c) {
  nlohmann::json j{{"verdict", to_string(c.verdict)}, {"method", c.method}, {"core_size", c.core_size}};
  if (c.cone_point) j["cone_point"] = *c.cone_point;
  if (!c.dismantled.empty()) j["dismantled"] = c.dismantled;
  if (!c.collapses.empty()) {
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& [face, coface] : c.collapses) steps.push_back({face, coface});
    j["collapses"] = steps;
  }
  if (c.witness_degree) j["witness_degree"] = *c.witness_degree;
  return j;
}

}  // namespace hbtop

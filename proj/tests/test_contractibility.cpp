#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "hbtop/contractibility.hpp"
#include "hbtop/homology.hpp"
#include "support/oracles.hpp"

using namespace hbtop;

namespace {

using Named = std::vector<std::string>;

// Disc with boundary word a a a^-1, each edge subdivided into three segments,
// with a ring of interior vertices and a centre.
SimplicialComplex dunce_hat() {
  const std::vector<std::string> rim{"1", "2", "3", "1", "2", "3", "1", "3", "2"};
  std::vector<std::vector<std::string>> faces;
  for (int i = 0; i < 9; ++i) {
    int j = (i + 1) % 9;
    std::string ri = "r" + std::to_string(i), rj = "r" + std::to_string(j);
    faces.push_back({rim[i], rim[j], ri});
    faces.push_back({rim[j], ri, rj});
    faces.push_back({ri, rj, "c"});
  }
  return SimplicialComplex::from_named_faces(faces);
}

std::set<Named> all_faces(const SimplicialComplex& k) {
  std::set<Named> out;
  for (const auto& f : k.facets())
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << f.size()); ++mask) {
      Named s;
      for (std::size_t i = 0; i < f.size(); ++i)
        if (mask >> i & 1) s.push_back(k.vertex_ids()[f[i]]);
      std::sort(s.begin(), s.end());
      out.insert(s);
    }
  return out;
}

// Replays a collapse sequence, checking each pair is an elementary collapse.
bool replay(const SimplicialComplex& k, const ContractibilityCertificate& c) {
  std::set<Named> faces = all_faces(k);
  for (auto [sigma, tau] : c.collapses) {
    std::sort(sigma.begin(), sigma.end());
    std::sort(tau.begin(), tau.end());
    if (!faces.count(sigma) || !faces.count(tau) || tau.size() != sigma.size() + 1) return false;
    if (!std::includes(tau.begin(), tau.end(), sigma.begin(), sigma.end())) return false;
    std::size_t cofaces = 0;
    for (const auto& f : faces)
      if (f.size() > sigma.size() && std::includes(f.begin(), f.end(), sigma.begin(), sigma.end())) ++cofaces;
    if (cofaces != 1) return false;
    faces.erase(sigma);
    faces.erase(tau);
  }
  return faces.size() == 1;
}

Poset fence(int n) {
  std::vector<std::string> ids;
  std::vector<std::pair<Index, Index>> covers;
  for (int i = 0; i < n; ++i) {
    ids.push_back("z" + std::to_string(i));
    if (i) covers.push_back(i % 2 ? std::pair<Index, Index>(i - 1, i) : std::pair<Index, Index>(i, i - 1));
  }
  return Poset::from_covers(ids, covers);
}

}  // namespace

TEST_CASE("complex certificates") {
  auto simplex = certify_complex(full_simplex(5));
  CHECK(simplex.verdict == Verdict::Contractible);
  CHECK(simplex.method == "collapse");
  CHECK(simplex.collapses.size() == 15);
  CHECK(replay(full_simplex(5), simplex));

  auto hex = certify_complex(oracle::hexagon());
  CHECK(hex.verdict == Verdict::NonContractible);
  CHECK(hex.witness_degree == 1);

  SimplicialComplex dh = dunce_hat();
  CHECK(reduced_homology(dh).is_zero());
  auto d = certify_complex(dh);
  CHECK(d.verdict == Verdict::Unknown);
  CHECK(d.core_size == dh.faces().total());

  auto e = certify_complex(SimplicialComplex{});
  CHECK(e.verdict == Verdict::NonContractible);
  CHECK(e.witness_degree == -1);

  auto rp2 = certify_complex(oracle::projective_plane());
  CHECK(rp2.verdict == Verdict::NonContractible);
  CHECK(rp2.witness_degree == 1);
}

TEST_CASE("collapse order is lexicographic and deterministic") {
  auto seg = certify_complex(SimplicialComplex::from_named_faces({{"a", "b"}, {"b", "c"}}));
  REQUIRE(seg.collapses.size() == 2);
  CHECK(seg.collapses[0].first == Named{"a"});
  CHECK(seg.collapses[1].first == Named{"b"});
  CHECK(to_json(seg) == to_json(certify_complex(SimplicialComplex::from_named_faces({{"a", "b"}, {"b", "c"}}))));
}

TEST_CASE("poset certificates") {
  std::mt19937_64 rng(1);
  Poset p = oracle::random_poset(rng, 6, 0.3);
  auto c = certify_poset(cone(p));
  CHECK(c.verdict == Verdict::Contractible);
  CHECK(c.method == "cone");
  CHECK(c.cone_point == cone_point_id(p));

  auto s0 = certify_poset(sphere_poset(0));
  CHECK(s0.verdict == Verdict::NonContractible);
  CHECK(s0.witness_degree == 0);

  auto f = certify_poset(fence(6));
  CHECK(f.verdict == Verdict::Contractible);
  CHECK(f.method == "dismantling");
  CHECK(f.dismantled.size() == 5);

  CHECK(certify_poset(Poset{}).witness_degree == -1);
  CHECK(certify_poset(sphere_poset(2)).witness_degree == 2);
}

TEST_CASE("beat point core") {
  Poset core = beat_point_core(sphere_poset(1));
  CHECK(core.size() == 6);
  std::mt19937_64 rng(21);
  for (int i = 0; i < 150; ++i) {
    Poset p = oracle::random_poset(rng, 9, 0.25);
    std::vector<Index> removed;
    Poset c = beat_point_core(p, &removed);
    CHECK(c.size() + removed.size() == p.size());
    if (c.size() > 1)
      for (Index x = 0; x < c.size(); ++x) {
        CHECK(c.upper_covers(x).size() != 1);
        CHECK(c.lower_covers(x).size() != 1);
      }
    CHECK(poset_homology(p) == reduced_homology(order_complex(p)));
  }
}

TEST_CASE("contractible verdicts never meet nonzero homology") {
  set_certificate_cross_check(true);
  std::mt19937_64 rng(404);
  for (int i = 0; i < 150; ++i) {
    SimplicialComplex k = oracle::random_complex(rng, 7, 4, 3);
    auto c = certify_complex(k);
    GradedHomology h = reduced_homology(k);
    if (c.contractible()) {
      CHECK(h.is_zero());
      CHECK(replay(k, c));
    }
    if (c.verdict == Verdict::NonContractible) CHECK(!h.at(*c.witness_degree).is_zero());

    Poset p = oracle::random_poset(rng, 8, 0.3);
    auto pc = certify_poset(p);
    GradedHomology hp = reduced_homology(order_complex(p));
    if (pc.contractible()) CHECK(hp.is_zero());
    if (pc.verdict == Verdict::NonContractible) CHECK(!hp.at(*pc.witness_degree).is_zero());
  }
  set_certificate_cross_check(false);
}

TEST_CASE("certificate json") {
  auto j = to_json(certify_complex(oracle::hexagon()));
  CHECK(j["verdict"] == "certified-noncontractible");
  CHECK(j["witness_degree"] == 1);
}

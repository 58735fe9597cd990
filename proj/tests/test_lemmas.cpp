#include <doctest.h>

#include <random>

#include "hbtop/lemmas.hpp"
#include "support/oracles.hpp"

using namespace hbtop;

namespace {

Poset chain(int n) {
  std::vector<std::string> ids;
  std::vector<std::pair<Index, Index>> covers;
  for (int i = 0; i < n; ++i) {
    ids.push_back("c" + std::to_string(i));
    if (i) covers.emplace_back(i - 1, i);
  }
  return Poset::from_covers(ids, covers);
}

PosetMap identity(const Poset& p) {
  auto ptr = std::make_shared<const Poset>(p);
  std::vector<Index> a(p.size());
  for (Index i = 0; i < a.size(); ++i) a[i] = i;
  return PosetMap(ptr, ptr, a);
}

ElementSet down_closure(const Poset& p, Index x) {
  ElementSet s = p.select(x, Relation::LessEq);
  std::sort(s.begin(), s.end());
  return s;
}

// Random downward-closed cover of P by k sets: each maximal element is
// assigned to at least one set and the sets are closed downwards.
std::vector<ElementSet> random_down_cover(std::mt19937_64& rng, const Poset& p, std::size_t k) {
  std::vector<std::vector<bool>> member(k, std::vector<bool>(p.size(), false));
  std::uniform_int_distribution<std::size_t> pick(0, k - 1);
  std::bernoulli_distribution extra(0.3);
  for (Index m : p.maximal_elements()) {
    member[pick(rng)][m] = true;
    for (std::size_t i = 0; i < k; ++i)
      if (extra(rng)) member[i][m] = true;
  }
  std::vector<ElementSet> out(k);
  for (std::size_t i = 0; i < k; ++i) {
    std::vector<bool> closed(p.size(), false);
    for (Index m = 0; m < p.size(); ++m)
      if (member[i][m])
        for (Index y : p.select(m, Relation::LessEq)) closed[y] = true;
    for (Index y = 0; y < p.size(); ++y)
      if (closed[y]) out[i].push_back(y);
  }
  return out;
}

}  // namespace

TEST_CASE("fibre lemma") {
  std::mt19937_64 rng(3);
  Poset p = oracle::random_poset(rng, 6, 0.3);
  LemmaReport id = check_fibre_lemma(identity(p), Relation::LessEq);
  CHECK(id.conclusion == Conclusion::Verified);

  auto cp = std::make_shared<const Poset>(cone(p));
  auto pt = std::make_shared<const Poset>(Poset::from_covers({"*"}, {}));
  LemmaReport proj = check_fibre_lemma(PosetMap(cp, pt, std::vector<Index>(cp->size(), 0)), Relation::LessEq);
  CHECK(proj.conclusion == Conclusion::Verified);
  CHECK(proj.lhs->is_zero());

  // S^0 collapsing onto a point has a noncontractible fibre
  auto s0 = std::make_shared<const Poset>(sphere_poset(0));
  LemmaReport bad = check_fibre_lemma(PosetMap(s0, pt, {0, 0}), Relation::GreaterEq);
  CHECK(bad.conclusion == Conclusion::Skipped);
  CHECK(bad.hypotheses.back().status == HypothesisStatus::Failed);
}

TEST_CASE("monotone lemma") {
  Poset c = cone(sphere_poset(1));
  CHECK(check_monotone_lemma(identity(c)).conclusion == Conclusion::Verified);
  auto ptr = std::make_shared<const Poset>(c);
  LemmaReport bottom = check_monotone_lemma(PosetMap(ptr, ptr, std::vector<Index>(c.size(), *c.minimum())));
  CHECK(bottom.conclusion == Conclusion::Verified);
  CHECK(bottom.details["kind"] == "decreasing");
  auto s0 = std::make_shared<const Poset>(sphere_poset(0));
  LemmaReport swap = check_monotone_lemma(PosetMap(s0, s0, {1, 0}));
  CHECK(swap.conclusion == Conclusion::Skipped);
}

TEST_CASE("covering lemma on spheres") {
  Poset s0 = sphere_poset(0);
  LemmaReport r = check_covering_lemma(s0, {{0}, {1}});
  CHECK(r.conclusion == Conclusion::Verified);
  CHECK(*r.rhs == GradedHomology::free_in(0));

  Poset s1 = sphere_poset(1);
  std::vector<ElementSet> qs{down_closure(s1, s1.at("{1,2}")), down_closure(s1, s1.at("{1,3}")),
                             down_closure(s1, s1.at("{2,3}"))};
  LemmaReport hex = check_covering_lemma(s1, qs);
  CHECK(hex.conclusion == Conclusion::Verified);
  CHECK(*hex.lhs == GradedHomology::free_in(1));
  CHECK(hex.details["intersection_size"] == 0);

  LemmaReport not_closed = check_covering_lemma(s1, {{s1.at("{1,2}")}, qs[1], qs[2]});
  CHECK(not_closed.conclusion == Conclusion::Skipped);
  LemmaReport not_cover = check_covering_lemma(s1, {qs[0], qs[1]});
  CHECK(not_cover.hypotheses[0].status == HypothesisStatus::Failed);
}

TEST_CASE("covering map from the proof") {
  Poset s0 = sphere_poset(0);
  PosetMap f = proof_map_hocolim(s0, {{0}, {1}});
  CHECK(f.target().size() == 2);
  CHECK(f(0) != f(1));
  CHECK(f.target().id(f(0)) == "R:{2}");

  Poset s1 = sphere_poset(1);
  std::vector<ElementSet> qs{down_closure(s1, s1.at("{1,2}")), down_closure(s1, s1.at("{1,3}")),
                             down_closure(s1, s1.at("{2,3}"))};
  PosetMap g = proof_map_hocolim(s1, qs);
  CHECK(g.is_order_preserving());
  LemmaReport r = check_fibre_lemma(g, Relation::LessEq);
  CHECK(r.conclusion == Conclusion::Verified);

  // elements of the intersection map to themselves
  Poset c = cone(sphere_poset(0));
  ElementSet all{0, 1, 2};
  PosetMap h = proof_map_hocolim(c, {all, all});
  for (Index x = 0; x < c.size(); ++x) CHECK(h.target().id(h(x)) == "L:" + c.id(x));
  CHECK_THROWS(proof_map_hocolim(s1, {qs[0]}));
}

TEST_CASE("covering lemma agrees with the two-set form and the proof map") {
  std::mt19937_64 rng(12);
  int verified = 0;
  for (int i = 0; i < 150; ++i) {
    Poset p = oracle::random_poset(rng, 7, 0.35);
    auto qs = random_down_cover(rng, p, 2);
    LemmaReport general = check_covering_lemma(p, qs);
    LemmaReport direct = check_two_cover_lemma(p, qs[0], qs[1]);
    CHECK(general.conclusion == direct.conclusion);
    CHECK(general.conclusion != Conclusion::Violated);
    if (general.conclusion == Conclusion::Verified) {
      ++verified;
      CHECK(check_fibre_lemma(proof_map_hocolim(p, qs), Relation::LessEq).conclusion != Conclusion::Violated);
    }
  }
  for (int i = 0; i < 100; ++i) {
    Poset p = oracle::random_poset(rng, 8, 0.35);
    auto qs = random_down_cover(rng, p, 3);
    LemmaReport general = check_covering_lemma(p, qs);
    CHECK(general.conclusion != Conclusion::Violated);
    LemmaReport via_map = check_fibre_lemma(proof_map_hocolim(p, qs), Relation::LessEq);
    CHECK(via_map.conclusion != Conclusion::Violated);
    if (general.conclusion == Conclusion::Verified && via_map.conclusion == Conclusion::Verified)
      CHECK(*via_map.rhs == *general.rhs);
  }
  CHECK(verified > 0);
}

TEST_CASE("dimension lemma") {
  for (int n = 1; n <= 5; ++n) CHECK(check_dimension_lemma(chain(n), 0).conclusion == Conclusion::Verified);
  LemmaReport s1 = check_dimension_lemma(sphere_poset(1), 1);
  CHECK(s1.conclusion == Conclusion::Verified);
  CHECK(*s1.lhs == GradedHomology::free_in(1));
  CHECK(check_dimension_lemma(sphere_poset(1), 0).conclusion == Conclusion::Skipped);
  CHECK(check_dimension_lemma(Poset{}, -1).conclusion == Conclusion::Verified);

  std::mt19937_64 rng(55);
  for (int i = 0; i < 100; ++i) {
    Poset p = oracle::random_poset(rng, 8, 0.3);
    int h = 0;
    for (int x : p.height_above()) h = std::max(h, x);
    for (int d = 0; d <= h; ++d) CHECK(check_dimension_lemma(p, d).conclusion != Conclusion::Violated);
  }
}

TEST_CASE("stratification") {
  Poset p = sphere_poset(1);
  SimplicialComplex x = order_complex(p);
  auto by_max = Stratification::from_function(x, p, [&](std::span<const Vertex> f) {
    Index top = f[0];
    for (Vertex v : f)
      if (p.less(top, v)) top = v;
    return top;
  });
  LemmaReport r = check_stratification(by_max);
  CHECK(r.conclusion == Conclusion::Verified);
  CHECK(*r.lhs == GradedHomology::free_in(1));

  Poset pt = Poset::from_covers({"*"}, {});
  auto constant = Stratification::from_function(full_simplex(4), pt, [](std::span<const Vertex>) { return 0; });
  LemmaReport c = check_stratification(constant);
  CHECK(c.conclusion == Conclusion::Verified);
  CHECK(c.lhs->is_zero());

  auto constant_hex = Stratification::from_function(oracle::hexagon(), pt, [](std::span<const Vertex>) { return 0; });
  CHECK(check_stratification(constant_hex).conclusion == Conclusion::Skipped);

  // min of chain is not monotone
  auto by_min = Stratification::from_function(x, p, [&](std::span<const Vertex> f) {
    Index low = f[0];
    for (Vertex v : f)
      if (p.less(v, low)) low = v;
    return low;
  });
  LemmaReport bad = check_stratification(by_min);
  CHECK(bad.hypotheses[0].status == HypothesisStatus::Failed);
}

TEST_CASE("report json") {
  LemmaReport r = check_covering_lemma(sphere_poset(0), {{0}, {1}});
  auto j = to_json(r);
  CHECK(j["lemma"] == "covering");
  CHECK(j["conclusion"] == "verified");
  CHECK(j["rhs"]["degrees"]["0"]["rank"] == 1);
}

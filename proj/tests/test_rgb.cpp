#include <doctest.h>

#include <random>

#include "hbtop/error.hpp"
#include "hbtop/rgb.hpp"
#include "support/oracles.hpp"

using namespace hbtop;

namespace {

MarkedComplex one_vertex() { return parse_marked("v\nsimple v\n"); }
MarkedComplex two_vertex() { return parse_marked("1 2\nsimple 1\n"); }

std::set<std::string> names(const ColoredPoset& c) { return {c.poset->ids().begin(), c.poset->ids().end()}; }
std::set<std::string> names(const Poset& p) { return {p.ids().begin(), p.ids().end()}; }

bool has_cover(const Poset& p, const std::string& lo, const std::string& hi) {
  for (auto [a, b] : p.covers())
    if (p.id(a) == lo && p.id(b) == hi) return true;
  return false;
}

FaceMask face(const MarkedComplex& m, std::initializer_list<const char*> vs) {
  FaceMask f = 0;
  for (const char* v : vs) f |= FaceMask{1} << *m.base().find_vertex(v);
  return f;
}

MarkedComplex random_marked(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nv(1, 5);
  const int n = nv(rng);
  auto k = oracle::random_complex(rng, n, 3, 3);
  std::vector<Simplex> gens;
  std::bernoulli_distribution coin(0.5);
  for (const auto& f : k.facets()) {
    if (!coin(rng)) continue;
    Simplex g;
    for (Vertex v : f)
      if (coin(rng)) g.push_back(v);
    if (!g.empty()) gens.push_back(g);
  }
  return MarkedComplex::from_generators(k, gens, false);
}

}  // namespace

TEST_CASE("rgb order on the micro examples") {
  ColoredPoset one = build_rgb(one_vertex());
  CHECK(names(one) == std::set<std::string>{"v_r", "v_g", "v_b"});
  CHECK(one.poset->covers().size() == 2);
  CHECK(has_cover(*one.poset, "v_g", "v_r"));
  CHECK(has_cover(*one.poset, "v_g", "v_b"));

  ColoredPoset g0 = build_rgb(parse_marked("v\ngenus0\n"));
  CHECK(names(g0) == std::set<std::string>{"∅", "v_r", "v_g", "v_b"});
  CHECK(g0.poset->covers().size() == 3);
  CHECK(has_cover(*g0.poset, "∅", "v_b"));
  CHECK(has_cover(*g0.poset, "v_g", "v_r"));
  CHECK(has_cover(*g0.poset, "v_g", "v_b"));

  for (int n = 1; n <= 4; ++n) {
    std::vector<Simplex> singletons;
    for (int v = 0; v < n; ++v) singletons.push_back({static_cast<Vertex>(v)});
    auto m = MarkedComplex::from_generators(full_simplex(n), singletons);
    std::size_t expected = 0, binom = 1, pow3 = 1;
    for (int j = 1; j <= n; ++j) {
      binom = binom * (n - j + 1) / j;
      pow3 *= 3;
      expected += binom * pow3;
    }
    CHECK(build_rgb(m).size() == expected);
  }
}

TEST_CASE("boundary rgb") {
  ColoredPoset b1 = boundary_rgb(one_vertex());
  CHECK(names(b1) == std::set<std::string>{"v_r", "v_b"});
  CHECK(poset_homology(*b1.poset) == GradedHomology::free_in(0));

  ColoredPoset b2 = boundary_rgb(two_vertex());
  CHECK(build_rgb(two_vertex()).size() == 12);
  CHECK(b2.size() == 9);
  CHECK(poset_homology(*b2.poset).is_zero());

  auto g0 = MarkedComplex::from_generators(full_simplex(3), {}, true);
  for (const auto& c : boundary_rgb(g0).systems) CHECK(c.red != 0);
  CHECK(boundary_rgb(g0).size() == build_rgb(g0).restrict([](const ColoredSystem& c) { return c.red != 0; }).size());
}

TEST_CASE("q1 and q2") {
  CHECK(names(q1(one_vertex())) == std::set<std::string>{"v_b"});
  CHECK(names(q2(one_vertex())) == std::set<std::string>{"v_r"});
  auto m = two_vertex();
  ColoredPoset a = q1(m), b = q2(m);
  FaceMask two = face(m, {"2"});
  std::set<ColoredSystem> meet;
  for (const auto& c : a.systems)
    if (c.red) meet.insert(c);
  std::set<ColoredSystem> expected;
  for (const auto& c : build_rgb(m).systems)
    if ((c.non_blue() & two) && !m.is_simple(c.non_blue()) && c.red) expected.insert(c);
  CHECK(meet == expected);
  CHECK(meet.size() == 1);
  CHECK(system_name(m, *meet.begin()) == "1_b,2_r");
  CHECK_THROWS_AS(q1(parse_marked("v\ngenus0\n")), std::domain_error);
}

TEST_CASE("ns poset and simple poset") {
  CHECK(ns_poset(one_vertex()).poset->empty());
  CHECK(names(*ns_poset(two_vertex()).poset) == std::set<std::string>{"{2}"});
  auto nothing_simple = MarkedComplex::from_generators(full_simplex(3), {});
  FacePoset ns = ns_poset(nothing_simple);
  CHECK(ns.faces.size() == 7);
  CHECK(order_complex(*ns.poset).facets().size() == 6);
  CHECK(reduced_homology(order_complex(*ns.poset)).is_zero());
  CHECK(simple_poset(two_vertex()).faces.size() == 2);
}

TEST_CASE("forgetting colours") {
  PosetMap f = forget_colours(one_vertex());
  CHECK(f.target().size() == 1);
  for (Index i = 0; i < f.source().size(); ++i) CHECK(f(i) == 0);
  CHECK(names(fibre(f, 0, Relation::GreaterEq)) == std::set<std::string>{"v_r", "v_g", "v_b"});

  PosetMap g = forget_colours(q2(one_vertex()), simple_poset(one_vertex()));
  CHECK(g.source().size() == 1);
  CHECK(g.source().id(0) == "v_r");

  PosetMap h = forget_colours(two_vertex());
  LemmaReport r = check_fibre_lemma(h, Relation::GreaterEq);
  CHECK(r.conclusion == Conclusion::Verified);
  for (Index x = 0; x < h.target().size(); ++x)
    CHECK(certify_poset(fibre(h, x, Relation::GreaterEq)).verdict == Verdict::Contractible);
}

TEST_CASE("recolouring retractions on the micro examples") {
  auto m = one_vertex();
  FaceMask v = face(m, {"v"});
  auto rgb = recolour_retraction(m, RecolourScope::RgbFibre, v);
  REQUIRE(rgb.size() == 3);
  auto last = rgb.back().domain.subset(rgb.back().map.image());
  CHECK(names(last) == std::set<std::string>{"v_b"});

  auto q2s = recolour_retraction(m, RecolourScope::Q2Fibre, v);
  REQUIRE(q2s.size() == 5);
  CHECK(names(q2s.front().domain) == std::set<std::string>{"v_r"});
  CHECK(names(q2s.back().domain.subset(q2s.back().map.image())) == std::set<std::string>{"v_r"});

  CHECK_THROWS_AS(recolour_retraction(m, RecolourScope::Q1Q2Fibre, v), std::invalid_argument);

  auto t = two_vertex();
  auto steps = recolour_retraction(t, RecolourScope::Q1Q2Fibre, face(t, {"2"}));
  for (const auto& s : steps) {
    CHECK(s.kind != MonotoneKind::Neither);
    CHECK(check_monotone_lemma(s.map).conclusion == Conclusion::Verified);
  }
}

TEST_CASE("boundary suspension on the micro examples") {
  LemmaReport one = check_boundary_suspension(one_vertex());
  CHECK(one.conclusion == Conclusion::Verified);
  CHECK(*one.lhs == GradedHomology::free_in(0));
  CHECK(*one.rhs == GradedHomology::free_in(0));

  LemmaReport two = check_boundary_suspension(two_vertex());
  CHECK(two.conclusion == Conclusion::Verified);
  CHECK(two.lhs->is_zero());
  CHECK(two.details["ns_size"] == 1);

  LemmaReport g0 = check_boundary_suspension(parse_marked("v\ngenus0\n"));
  CHECK(g0.conclusion == Conclusion::Skipped);

  // without the empty-remainder reading the one-vertex instance loses Q1
  LemmaReport alt = check_boundary_suspension(one_vertex().with_count_empty_remainder(false));
  CHECK(alt.conclusion == Conclusion::Skipped);
}

TEST_CASE("rgb invariants on random marked complexes") {
  std::mt19937_64 rng(909);
  for (int i = 0; i < 60; ++i) {
    MarkedComplex m = random_marked(rng);
    ColoredPoset rgb = build_rgb(m);
    for (Index a = 0; a < rgb.size(); ++a)
      for (Index b = 0; b < rgb.size(); ++b)
        CHECK(rgb.poset->leq(a, b) == rgb_leq(rgb.systems[a], rgb.systems[b]));

    ColoredPoset bd = boundary_rgb(m, rgb);
    ElementSet in_bd;
    for (Index a = 0; a < rgb.size(); ++a)
      if (bd.find(rgb.systems[a])) in_bd.push_back(a);
    CHECK(rgb.poset->is_up_closed(in_bd));

    std::set<ColoredSystem> u;
    for (const auto& c : q1(m).systems) u.insert(c);
    for (const auto& c : q2(m).systems) u.insert(c);
    CHECK(u == std::set<ColoredSystem>(bd.systems.begin(), bd.systems.end()));

    // NS is downward closed among nonempty faces
    FacePoset ns = ns_poset(m);
    for (FaceMask f : ns.faces)
      for (FaceMask g : m.faces())
        if (g && (g & ~f) == 0) CHECK(!m.is_simple(g));

    for (FaceMask d : m.faces()) {
      if (m.is_simple(d)) {
        for (auto scope : {RecolourScope::RgbFibre, RecolourScope::Q2Fibre}) {
          if (d == 0 && scope == RecolourScope::Q2Fibre) continue;
          auto steps = recolour_retraction(m, scope, d);
          for (const auto& s : steps) {
            CHECK(s.kind != MonotoneKind::Neither);
            CHECK(poset_homology(*s.domain.poset) == poset_homology(s.domain.poset->induced(s.map.image())));
          }
          CHECK(steps.back().map.image().size() == 1);
        }
      } else if (d) {
        for (const auto& s : recolour_retraction(m, RecolourScope::Q1Q2Fibre, d)) CHECK(s.kind != MonotoneKind::Neither);
      }
    }
    CHECK(check_boundary_suspension(m).conclusion != Conclusion::Violated);
  }
}

TEST_CASE("marked complex text format") {
  auto m = parse_marked("# edge with a marked end\n1 2\n2 3\nsimple 1\nsimple 3\n");
  CHECK(m.is_simple(face(m, {"1", "2"})));
  CHECK_FALSE(m.is_simple(face(m, {"2"})));
  CHECK_FALSE(m.is_simple(0));
  auto again = parse_marked(format_marked(m));
  CHECK(format_marked(again) == format_marked(m));
  CHECK(parse_marked("v\ngenus0\n").is_simple(0));
  CHECK_THROWS_AS(parse_marked("1 2\nsimple 3\n"), ParseError);
  CHECK_THROWS_AS(parse_marked("1 2\n2 3\nsimple 1 3\n"), ParseError);
  CHECK_THROWS_AS(parse_marked("1 2\nsimple\n"), ParseError);
  CHECK_THROWS_AS(MarkedComplex::from_simple_faces(full_simplex(2), {{0}}), std::invalid_argument);
  CHECK_NOTHROW(MarkedComplex::from_simple_faces(full_simplex(2), {{0}, {0, 1}}));
}

TEST_CASE("recolouring audit") {
  auto a = audit_recolouring(two_vertex());
  CHECK(a.all_monotone());
  CHECK(a.steps == a.increasing + a.decreasing);
  // simple faces {1}, {1,2}; non-simple {2}
  CHECK(a.fibres == 2 * 2 + 1);
  CHECK(to_json(a)["all_monotone"] == true);

  auto g0 = audit_recolouring(MarkedComplex::from_generators(full_simplex(2), {}, true));
  CHECK(g0.fibres == 4);

  std::mt19937_64 rng(4242);
  for (int i = 0; i < 20; ++i) {
    MarkedComplex m = random_marked(rng);
    auto audit = audit_recolouring(m);
    std::size_t steps = 0;
    for (FaceMask d : m.faces()) {
      if (m.is_simple(d)) {
        steps += recolour_retraction(m, RecolourScope::RgbFibre, d).size();
        if (d) steps += recolour_retraction(m, RecolourScope::Q2Fibre, d).size();
      } else if (d) {
        steps += recolour_retraction(m, RecolourScope::Q1Q2Fibre, d).size();
      }
    }
    CHECK(audit.steps == steps);
    CHECK(audit.all_monotone());
  }
}

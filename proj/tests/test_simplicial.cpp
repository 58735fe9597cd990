#include <doctest.h>

#include <random>

#include "hbtop/error.hpp"
#include "hbtop/homology.hpp"
#include "hbtop/simplicial.hpp"
#include "support/oracles.hpp"

using namespace hbtop;

namespace {

SimplicialComplex two_points() { return SimplicialComplex::from_named_faces({{"x"}, {"y"}}); }
SimplicialComplex point() { return SimplicialComplex::from_named_faces({{"p"}}); }

}  // namespace

TEST_CASE("faces and facets") {
  SimplicialComplex k = SimplicialComplex::from_named_faces({{"a", "b"}, {"a"}, {"a", "b", "c"}, {"d"}});
  CHECK(k.facets().size() == 2);
  CHECK(k.dimension() == 2);
  FaceLattice f = k.faces();
  CHECK(f.count(0) == 4);
  CHECK(f.count(1) == 3);
  CHECK(f.count(2) == 1);
  CHECK(k.euler_characteristic() == 2);
  CHECK(SimplicialComplex{}.dimension() == -1);
}

TEST_CASE("order complex") {
  SimplicialComplex hex = order_complex(sphere_poset(1));
  CHECK(hex.vertex_count() == 6);
  CHECK(hex.faces().count(1) == 6);
  CHECK(hex.facets().size() == 6);
  CHECK(order_complex(Poset{}).empty());
  std::mt19937_64 rng(3);
  for (int i = 0; i < 50; ++i) {
    Poset p = oracle::random_poset(rng, 6, 0.3);
    CHECK(reduced_homology(order_complex(cone(p))).is_zero());
  }
}

TEST_CASE("space join") {
  SimplicialComplex j = space_join(two_points(), SimplicialComplex::from_named_faces({{"u"}, {"w"}}));
  CHECK(j.facets().size() == 4);
  CHECK(reduced_homology(j) == GradedHomology::free_in(1));
  SimplicialComplex hex = oracle::hexagon();
  CHECK(reduced_homology(space_join(hex, point())).is_zero());
  CHECK(space_join(hex, SimplicialComplex{}) == hex);
  // colliding names are tagged
  SimplicialComplex self = space_join(two_points(), two_points());
  CHECK(self.vertex_count() == 4);
  CHECK(self.find_vertex("L:x"));
}

TEST_CASE("suspension") {
  SimplicialComplex s = suspension(SimplicialComplex{});
  CHECK(s.vertex_count() == 2);
  CHECK(reduced_homology(s) == GradedHomology::free_in(0));
  CHECK(reduced_homology(suspension(oracle::hexagon())) == GradedHomology::free_in(2));
  CHECK(reduced_homology(suspension(point())).is_zero());
  CHECK(suspension(point()).facets().size() == 2);
  CHECK(reduced_homology(suspension(SimplicialComplex{}, 3)) == GradedHomology::free_in(2));
}

TEST_CASE("wedge") {
  SimplicialComplex hex = oracle::hexagon();
  SimplicialComplex w = wedge({hex, hex, hex}, {"0", "3", "5"});
  CHECK(reduced_homology(w) == GradedHomology::free_in(1, 3));
  CHECK(w.vertex_count() == 16);
  CHECK(reduced_homology(wedge({hex}, {"2"})) == reduced_homology(hex));
  CHECK(wedge({hex}, {"2"}).facets().size() == hex.facets().size());
  GradedHomology mixed = reduced_homology(wedge({hex, simplex_boundary(4)}, {"0", "0"}));
  CHECK(mixed.at(1) == FgAbelianGroup(1));
  CHECK(mixed.at(2) == FgAbelianGroup(1));
  CHECK(mixed.groups().size() == 2);
  CHECK_THROWS(wedge({SimplicialComplex{}}, {"a"}));
  CHECK_THROWS(wedge({hex}, {"nope"}));
}

TEST_CASE("skeleton") {
  SimplicialComplex k4 = skeleton(full_simplex(4), 1);
  CHECK(k4.facets().size() == 6);
  CHECK(reduced_homology(k4) == GradedHomology::free_in(1, 3));
  SimplicialComplex rp2 = oracle::projective_plane();
  CHECK(skeleton(rp2, rp2.dimension()) == rp2);
  SimplicialComplex e = skeleton(rp2, -1);
  CHECK(e.empty());
  CHECK(e.empty_allowed());
  CHECK(reduced_homology(e) == GradedHomology::free_in(-1));
}

TEST_CASE("skeleta are homologically of dimension at most d") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 40; ++i) {
    SimplicialComplex k = oracle::random_complex(rng, 7, 5, 4);
    for (int d = -1; d <= k.dimension(); ++d)
      CHECK(is_homologically_dim_at_most(reduced_homology(skeleton(k, d)), d));
  }
}

TEST_CASE("complex text format") {
  SimplicialComplex k = parse_complex("# triangle\na b\nb c\nc a\n\n");
  CHECK(reduced_homology(k) == GradedHomology::free_in(1));
  CHECK(parse_complex(format_complex(k)) == k);
  SimplicialComplex e = parse_complex("∅\n");
  CHECK(e.empty());
  CHECK(e.empty_allowed());
  CHECK(parse_complex(format_complex(e)) == e);
  CHECK_THROWS_AS(parse_complex("a b\n∅\n"), ParseError);
  CHECK_THROWS_AS(parse_complex("a a\n"), ParseError);
}

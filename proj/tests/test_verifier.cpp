#include <doctest.h>

#include "octa/tables.hpp"
#include "octa/verifier.hpp"
#include "support.hpp"

using namespace octa;
using testing::Rng;

namespace {

EdgeSet edges_of(const Shape& shape, std::initializer_list<const char*> list) {
  EdgeSet h(shape);
  for (const char* e : list) h.add(parse_edge(shape, e));
  return h;
}

Octahedron octahedron(const Shape& shape, int omitted, std::vector<int> a, std::vector<int> b) {
  return Octahedron(Transversal::from_indices(shape, omitted, a), Transversal::from_indices(shape, omitted, b));
}

}  // namespace

TEST_SUITE("verifier") {

TEST_CASE("isolated vertices") {
  CHECK(find_isolated_vertex(EdgeSet(Shape(2))).has_value());
  CHECK_FALSE(find_isolated_vertex(EdgeSet::full(Shape(2))).has_value());
  const Shape d4(4);
  const auto p = find_isolated_vertex(edges_of(d4, {"00000", "10000", "20000"}));
  REQUIRE(p.has_value());
  CHECK(*p == PointRef{0, 3});
}

TEST_CASE("octahedron parity profiles") {
  const Shape d2(2);
  const Octahedron o = octahedron(d2, 0, {0, 0}, {1, 1});
  CHECK(octahedron_parity(EdgeSet(d2), o).parities == std::vector<std::uint8_t>{0, 0, 0});
  CHECK(octahedron_parity(edges_of(d2, {"000"}), o).parities == std::vector<std::uint8_t>{1, 0, 0});
  for (const auto& any : all_octahedra(d2, 1)) CHECK(octahedron_parity(EdgeSet::full(d2), any).constant());
}

TEST_CASE("octahedral verdicts") {
  const Shape d2(2);
  CHECK(is_octahedral_system(EdgeSet(d2)).holds());
  CHECK(is_octahedral_system(EdgeSet::full(d2)).holds());
  CHECK(is_octahedral_system(EdgeSet::full(Shape(3))).holds());
  const auto v = is_octahedral_system(edges_of(d2, {"000"}));
  REQUIRE_FALSE(v.holds());
  CHECK(*v.counterexample == octahedron(d2, 0, {0, 0}, {1, 1}));
  CHECK(to_string(*v.counterexample) == "(*00, *11)");
}

TEST_CASE("the reported counterexample is the first violating octahedron") {
  Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    const Shape shape(2 + trial % 2);
    const EdgeSet h = testing::random_edge_set(shape, rng, 30);
    const auto v = is_octahedral_system(h);
    std::optional<Octahedron> first;
    for (int colour = 0; colour < shape.colours() && !first; ++colour) {
      for (const auto& o : all_octahedra(shape, colour)) {
        if (!octahedron_parity(h, o).constant()) {
          first = o;
          break;
        }
      }
    }
    CHECK(v.counterexample == first);
  }
}

TEST_CASE("verdicts agree with the reference parity count") {
  Rng rng(5);
  for (int d = 1; d <= 3; ++d) {
    const Shape shape(d);
    for (int trial = 0; trial < 60; ++trial) {
      const EdgeSet h = testing::random_edge_set(shape, rng, rng.below(100));
      CHECK(is_octahedral_system(h).holds() == testing::reference_is_octahedral(h));
      CHECK(find_isolated_vertex(h).has_value() == testing::reference_has_isolated_vertex(h));
    }
  }
  // Systems are rare among random sets; complements and unions of systems are
  // systems too, which exercises the positive side.
  const Shape d2(2);
  EdgeSet min5 = edges_of(d2, {"000", "100", "210", "221", "222"});
  CHECK(testing::reference_is_octahedral(min5));
  CHECK(is_octahedral_system(min5).holds());
  EdgeSet complement(d2);
  for (EdgeCode c = 0; c < d2.edge_space(); ++c) {
    if (!min5.contains(c)) complement.add(c);
  }
  CHECK(testing::reference_is_octahedral(complement));
  CHECK(is_octahedral_system(complement).holds());
}

TEST_CASE("isolated edges") {
  const Shape d4(4);
  const auto single = isolated_edges(edges_of(d4, {"00000"}));
  REQUIRE(single.size() == 1);
  CHECK(to_string(single[0]) == "00000");
  CHECK(isolated_edges(edges_of(d4, {"00000", "10000"})).empty());
  CHECK(isolated_edges(edges_of(Shape(2), {"000", "111"})).size() == 2);

  Rng rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const EdgeSet h = testing::random_edge_set(Shape(3), rng, 8);
    std::vector<EdgeCode> mine;
    for (const Edge& e : isolated_edges(h)) mine.push_back(encode_edge(e));
    CHECK(mine == testing::reference_isolated_edges(h));
  }
}

TEST_CASE("octahedral systems score zero") {
  Rng rng(2);
  std::vector<EdgeSet> systems{EdgeSet::full(Shape(2)), EdgeSet::full(Shape(3)),
                               edges_of(Shape(2), {"000", "100", "210", "221", "222"})};
  for (const auto& h : systems) {
    REQUIRE(is_octahedral_system(h).holds());
    CHECK(score(h) == 0);
  }
}

TEST_CASE("removing one edge of a constant octahedron flips exactly one parity") {
  Rng rng(13);
  const Shape d3(3);
  const EdgeSet full = EdgeSet::full(d3);
  int checked = 0;
  for (int colour = 0; colour < 4; ++colour) {
    const auto list = all_octahedra(d3, colour);
    for (int trial = 0; trial < 40; ++trial) {
      const Octahedron& o = list[static_cast<std::size_t>(rng.below(static_cast<int>(list.size())))];
      const auto before = octahedron_parity(full, o);
      REQUIRE(before.constant());
      // An edge of the octahedron: the apex plus one endpoint per other colour.
      std::vector<int> choice(4);
      for (int c = 0; c < 4; ++c) {
        if (c == colour) {
          choice[c] = rng.below(4);
        } else {
          choice[c] = rng.below(2) ? o.first()[c] : o.second()[c];
        }
      }
      EdgeSet h = full;
      h.remove(Edge(d3, choice));
      const auto after = octahedron_parity(h, o);
      int flipped = 0;
      for (int s = 0; s < 4; ++s) flipped += before.parities[s] != after.parities[s];
      CHECK(flipped == 1);
      CHECK(after.parities[choice[colour]] != before.parities[choice[colour]]);
      ++checked;
    }
  }
  CHECK(checked == 160);
}

TEST_CASE("oracle minimum sizes") {
  const auto d1 = brute_force_min_size(Shape(1), 4);
  REQUIRE(d1.size().has_value());
  CHECK(*d1.size() == 2);

  const auto none = brute_force_min_size(Shape(2), 1);
  CHECK_FALSE(none.witness.has_value());

  const auto d2 = brute_force_min_size(Shape(2), 5);
  REQUIRE(d2.size().has_value());
  CHECK(*d2.size() <= 5);
  CHECK(*d2.size() == 5);
  CHECK(is_system_without_isolated_vertex(*d2.witness));
  CHECK(testing::reference_is_octahedral(*d2.witness));
}

TEST_CASE("oracle with and without symmetry agree at d=2") {
  OracleOptions plain;
  plain.use_symmetry = false;
  for (int max = 1; max <= 5; ++max) {
    const auto a = brute_force_min_size(Shape(2), max);
    const auto b = brute_force_min_size(Shape(2), max, plain);
    CHECK(a.size() == b.size());
    CHECK(a.sets_examined <= b.sets_examined);
  }
}

TEST_CASE("oracle symmetry group acts on edges") {
  const auto group = oracle_symmetry_group(Shape(2));
  CHECK(group.size() == 6 * 8);
  for (const auto& g : group) {
    std::vector<EdgeCode> sorted = g;
    std::sort(sorted.begin(), sorted.end());
    for (EdgeCode c = 0; c < 27; ++c) CHECK(sorted[c] == c);
    // Systems map to systems.
    EdgeSet image(Shape(2));
    for (const char* e : {"000", "100", "210", "221", "222"}) image.add(g[encode_edge(parse_edge(Shape(2), e))]);
    CHECK(is_system_without_isolated_vertex(image));
  }
  CHECK_THROWS_AS(oracle_symmetry_group(Shape(4)), std::invalid_argument);
}

TEST_CASE("oracle refuses requests above its work budget") {
  CHECK_THROWS_AS(brute_force_min_size(Shape(3), 6), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_min_size(Shape(4), 4), std::invalid_argument);
  OracleOptions tiny;
  tiny.work_budget = 100;
  CHECK_THROWS_AS(brute_force_min_size(Shape(2), 3, tiny), std::invalid_argument);
}

TEST_CASE("no system without isolated vertex at d=3 up to 5 edges") {
  const auto r = brute_force_min_size(Shape(3), 5);
  CHECK_FALSE(r.witness.has_value());
  CHECK(r.sets_examined > 0);
}

TEST_CASE("octahedral systems with at most d^2 edges have no isolated edge (d=2, exhaustive)") {
  // Every edge set with at most 4 edges, without symmetry reduction or cover pruning.
  OracleOptions plain;
  plain.use_symmetry = false;
  std::uint64_t systems = 0;
  std::uint64_t sets = 0;
  enumerate_edge_sets(Shape(2), 4, false, plain, [&](const EdgeSet& h) {
    ++sets;
    if (is_octahedral_system(h).holds()) {
      ++systems;
      CHECK(isolated_edges(h).empty());
    }
    return true;
  });
  CHECK(sets == 1 + 27 + 351 + 2925 + 17550);
  CHECK(systems >= 1);
}

TEST_CASE("octahedral systems with at most d^2 edges have no isolated edge (sampled)") {
  Rng rng(99);
  for (int d = 2; d <= 4; ++d) {
    const Shape shape(d);
    for (int trial = 0; trial < 2000; ++trial) {
      const EdgeSet h = testing::random_edge_set_of_size(shape, rng, 1 + rng.below(d * d));
      if (is_octahedral_system(h).holds()) CHECK(isolated_edges(h).empty());
    }
  }
}

TEST_CASE("find_extension respects forbidden edges") {
  const Shape d2(2);
  EdgeSet partial = edges_of(d2, {"000", "100"});
  std::vector<bool> forbidden(27, false);
  forbidden[encode_edge(parse_edge(d2, "210"))] = true;
  const auto accept = [](const EdgeSet& h) { return is_system_without_isolated_vertex(h); };
  const auto found = find_extension(partial, {}, 5, accept);
  REQUIRE(found.has_value());
  CHECK(found->size() == 5);
  const auto blocked = find_extension(partial, forbidden, 5, accept);
  if (blocked) CHECK_FALSE(blocked->contains(parse_edge(d2, "210")));
}

}  // TEST_SUITE

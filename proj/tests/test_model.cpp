#include <doctest.h>

#include <memory>
#include <set>
#include <sstream>

#include "octa/model.hpp"
#include "support.hpp"

using namespace octa;
using testing::Rng;

TEST_SUITE("model") {

TEST_CASE("shape bounds") {
  CHECK_THROWS_AS(Shape(0), std::invalid_argument);
  CHECK_THROWS_AS(Shape(7), std::invalid_argument);
  const Shape s(4);
  CHECK(s.colours() == 5);
  CHECK(s.edge_space() == 3125);
  CHECK(s.transversal_space() == 625);
  CHECK(s.total_points() == 25);
}

TEST_CASE("edge codes") {
  const Shape d2(2);
  CHECK(encode_edge(Edge(d2, {0, 0, 0})) == 0);
  CHECK(encode_edge(Edge(d2, {1, 1, 1})) == 13);
  const Shape d4(4);
  const Edge e = parse_edge(d4, "31000");
  CHECK(e[0] == 3);
  CHECK(e[1] == 1);
  CHECK(decode_edge(encode_edge(e), d4) == e);
  CHECK(to_string(e) == "31000");
  CHECK_THROWS_AS(decode_edge(3125, d4), std::invalid_argument);
  CHECK_THROWS(Edge(d2, {0, 3, 0}));
  CHECK_THROWS(Edge(d2, {0, 0}));
  CHECK_THROWS(parse_edge(d2, "0a0"));
}

TEST_CASE("encode and decode are inverse on the whole edge space for d <= 3") {
  for (int d = 1; d <= 3; ++d) {
    const Shape shape(d);
    std::set<EdgeCode> seen;
    for (EdgeCode code = 0; code < shape.edge_space(); ++code) {
      const Edge e = decode_edge(code, shape);
      CHECK(encode_edge(e) == code);
      const auto digits = testing::digits_of(code, shape.colours());
      for (int c = 0; c < shape.colours(); ++c) CHECK(e[c] == digits[c]);
      seen.insert(encode_edge(e));
    }
    CHECK(seen.size() == shape.edge_space());
  }
}

TEST_CASE("encode and decode agree on sampled edges for d = 4, 5") {
  Rng rng(11);
  for (int d = 4; d <= 5; ++d) {
    const Shape shape(d);
    for (int trial = 0; trial < 2000; ++trial) {
      std::vector<int> choice;
      for (int c = 0; c < shape.colours(); ++c) choice.push_back(rng.below(shape.colours()));
      const Edge e(shape, choice);
      CHECK(decode_edge(encode_edge(e), shape) == e);
    }
  }
}

TEST_CASE("zeros") {
  const Shape d4(4);
  CHECK(zeros(parse_edge(d4, "00000")) == 5);
  CHECK(zeros(parse_edge(d4, "31000")) == 3);
  CHECK(zeros(parse_edge(Shape(2), "121")) == 0);
}

TEST_CASE("adjacent edges") {
  const Shape d2(2);
  std::vector<std::string> got;
  for (const Edge& e : adjacent_edges(parse_edge(d2, "000"))) got.push_back(to_string(e));
  std::sort(got.begin(), got.end());
  CHECK(got == std::vector<std::string>{"001", "002", "010", "020", "100", "200"});

  const Shape d4(4);
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Edge e = testing::random_edge(d4, rng);
    const auto adj = adjacent_edges(e);
    CHECK(adj.size() == 20);
    std::set<EdgeCode> codes;
    for (const Edge& f : adj) {
      codes.insert(encode_edge(f));
      CHECK(testing::hamming(testing::digits_of(encode_edge(e), 5), testing::digits_of(encode_edge(f), 5)) == 1);
    }
    CHECK(codes.size() == 20);
  }
}

TEST_CASE("adjacency is symmetric") {
  for (int d = 1; d <= 3; ++d) {
    const Shape shape(d);
    for (EdgeCode a = 0; a < shape.edge_space(); ++a) {
      for (const Edge& b : adjacent_edges(decode_edge(a, shape))) {
        const auto back = adjacent_edges(b);
        CHECK(std::count(back.begin(), back.end(), decode_edge(a, shape)) == 1);
      }
    }
  }
}

TEST_CASE("transversals") {
  const Shape d4(4);
  const std::vector<int> zero{0, 0, 0, 0};
  const Transversal t = Transversal::from_indices(d4, 0, zero);
  CHECK(to_string(t) == "*0000");
  CHECK(t.code() == 0);
  const std::vector<int> ones{1, 1, 1, 1};
  CHECK(t.disjoint_from(Transversal::from_indices(d4, 0, ones)));
  const std::vector<int> mixed{1, 0, 1, 1};
  CHECK_FALSE(t.disjoint_from(Transversal::from_indices(d4, 0, mixed)));
  for (EdgeCode code = 0; code < d4.transversal_space(); code += 37) {
    CHECK(decode_transversal(code, d4, 2).code() == code);
  }
}

TEST_CASE("octahedra with base") {
  const Shape d2(2);
  const std::vector<int> zero{0, 0};
  const auto list = octahedra_with_base(d2, Transversal::from_indices(d2, 0, zero));
  std::vector<std::string> seconds;
  for (const auto& o : list) seconds.push_back(to_string(o.second()));
  CHECK(seconds == std::vector<std::string>{"*11", "*21", "*12", "*22"});

  const Shape d4(4);
  const std::vector<int> zero4{0, 0, 0, 0};
  const auto base = Transversal::from_indices(d4, 0, zero4);
  const auto big = octahedra_with_base(d4, base);
  CHECK(big.size() == 256);
  for (const auto& o : big) CHECK(o.first().disjoint_from(o.second()));
}

TEST_CASE("octahedra per colour match a brute-force pair enumeration") {
  CHECK(octahedra_per_colour(Shape(2)) == 18);
  CHECK(octahedra_per_colour(Shape(3)) == 864);
  CHECK(octahedra_per_colour(Shape(4)) == 80000);
  for (int d = 1; d <= 3; ++d) {
    const Shape shape(d);
    for (int colour = 0; colour < shape.colours(); ++colour) {
      const auto mine = all_octahedra(shape, colour);
      const auto ref = testing::reference_octahedra(shape, colour);
      CHECK(mine.size() == octahedra_per_colour(shape));
      CHECK(ref.size() == mine.size());
      std::set<std::pair<EdgeCode, EdgeCode>> keys;
      for (const auto& o : mine) {
        CHECK(o.omitted_colour() == colour);
        CHECK(o.first().code() < o.second().code());
        CHECK(o.first().disjoint_from(o.second()));
        keys.insert({o.first().code(), o.second().code()});
      }
      CHECK(keys.size() == mine.size());
    }
  }
}

TEST_CASE("octahedra through the base transversal are among all octahedra") {
  const Shape d3(3);
  const auto all = all_octahedra(d3, 0);
  const std::vector<int> zero{0, 0, 0};
  for (const auto& o : octahedra_with_base(d3, Transversal::from_indices(d3, 0, zero))) {
    CHECK(std::find(all.begin(), all.end(), o) != all.end());
  }
}

TEST_CASE("edge set bookkeeping matches a recount") {
  Rng rng(3);
  const Shape d3(3);
  EdgeSet h(d3);
  for (int step = 0; step < 2000; ++step) {
    const Edge e = testing::random_edge(d3, rng);
    if (h.contains(e)) {
      h.remove(e);
    } else {
      h.add(e);
    }
    if (step % 97 == 0) {
      std::vector<int> count(16, 0);
      for (EdgeCode c : h.codes()) {
        const auto digits = testing::digits_of(c, 4);
        for (int col = 0; col < 4; ++col) ++count[col * 4 + digits[col]];
      }
      for (int col = 0; col < 4; ++col) {
        for (int i = 0; i < 4; ++i) CHECK(h.incidence({col, i}) == count[col * 4 + i]);
      }
      CHECK(std::is_sorted(h.codes().begin(), h.codes().end()));
    }
  }
  CHECK_THROWS_AS(EdgeSet(d3).remove(parse_edge(d3, "0000")), std::invalid_argument);
  EdgeSet one(d3);
  one.add(parse_edge(d3, "0000"));
  CHECK_THROWS_AS(one.add(parse_edge(d3, "0000")), std::invalid_argument);
  CHECK(EdgeSet::full(d3).size() == 256);
}

TEST_CASE("edge list round trip") {
  Rng rng(8);
  const Shape d3(3);
  const EdgeSet h = testing::random_edge_set(d3, rng, 20);
  std::ostringstream out;
  write_edge_list(out, h);
  std::istringstream in("# comment\n\n" + out.str());
  CHECK(read_edge_list(in) == h);
  std::ostringstream again;
  write_edge_list(again, read_edge_list(*std::make_unique<std::istringstream>(out.str())));
  CHECK(again.str() == out.str());
}

TEST_CASE("edge list diagnostics carry line numbers") {
  const auto error_line = [](const std::string& text) {
    std::istringstream in(text);
    try {
      read_edge_list(in);
    } catch (const FormatError& ex) {
      return ex.line();
    }
    return -1;
  };
  CHECK(error_line("0 0 0\n") == 1);
  CHECK(error_line("# c\nd=2\n0 0 0\n0 0 3\n") == 4);
  CHECK(error_line("d=2\n0 0\n") == 2);
  CHECK(error_line("d=2\n0 0 0\n0 0 0\n") == 3);
  CHECK(error_line("d=9\n") == 1);
  CHECK(error_line("d=2\n0 x 0\n") == 2);
  CHECK(error_line("") == 0);
}

}  // TEST_SUITE

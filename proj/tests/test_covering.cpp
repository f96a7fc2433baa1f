#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <set>
#include <vector>

#include "corpus.hpp"
#include "pcs/pcs.hpp"

using pcs::CoverBall;
using pcs::CubeId;
using pcs::EdgePath;
using pcs::PrecubicalSet;
using pcs::Sign;
using pcs::Walk;

namespace {

Walk walk_of(const PrecubicalSet& x, const char* start, std::initializer_list<int> steps) {
  Walk w;
  w.start_vertex = x.find(start)->index;
  w.steps = steps;
  return w;
}

EdgePath path_of(const PrecubicalSet& x, const char* start,
                 std::initializer_list<const char*> edges) {
  EdgePath p;
  p.base = &x;
  p.start = *x.find(start);
  for (const char* e : edges) p.edges.push_back(*x.find(e));
  return p;
}

/// Signed step sum: net winding of a walk on a one-edge instance.
long long net_steps(const Walk& w) {
  long long n = 0;
  for (int s : w.steps) n += pcs::step_is_forward(s) ? 1 : -1;
  return n;
}

}  // namespace

TEST_CASE("walk encoding and evaluation") {
  CHECK(pcs::step_forward(3) == 6);
  CHECK(pcs::step_backward(3) == 7);
  CHECK(pcs::step_edge(7) == 3);
  CHECK(pcs::step_is_forward(6));
  CHECK_FALSE(pcs::step_is_forward(7));
  CHECK(pcs::step_inverse(6) == 7);
  CHECK(pcs::step_inverse(7) == 6);

  PrecubicalSet x = pcs::standard_cube(2);
  int x0 = x.find("x0")->index;
  int x1 = x.find("x1")->index;
  int e0x = x.find("0x")->index;

  Walk w = walk_of(x, "00", {pcs::step_forward(x0)});
  CHECK(pcs::walk_end(x, w) == x.find("10")->index);

  w = walk_of(x, "00", {pcs::step_forward(e0x), pcs::step_forward(x1),
                        pcs::step_backward(x1)});
  CHECK(pcs::walk_end(x, w) == x.find("01")->index);

  CHECK_THROWS_AS(pcs::walk_end(x, walk_of(x, "00", {pcs::step_forward(x1)})),
                  pcs::DomainError);
  CHECK_THROWS_AS(pcs::walk_end(x, walk_of(x, "00", {pcs::step_backward(x0)})),
                  pcs::DomainError);
  CHECK_THROWS_AS(pcs::walk_end(x, walk_of(x, "00", {99})), pcs::DomainError);
  CHECK_THROWS_AS(pcs::walk_end(x, Walk{-1, {}}), pcs::DomainError);

  EdgePath p = path_of(x, "00", {"x0", "1x"});
  Walk wp = pcs::walk_of_path(p);
  CHECK(wp.start_vertex == x.find("00")->index);
  CHECK(wp.steps == std::vector<int>{pcs::step_forward(x0),
                                     pcs::step_forward(x.find("1x")->index)});
}

TEST_CASE("square relations pair the two monotone boundary paths") {
  PrecubicalSet c2 = pcs::standard_cube(2);
  auto rels = pcs::square_relations(c2);
  REQUIRE(rels.size() == 1);
  CHECK(rels[0].square == *c2.find("xx"));
  CHECK(rels[0].left.start == *c2.find("00"));
  CHECK(rels[0].left.edges == std::vector<CubeId>{*c2.find("x0"), *c2.find("1x")});
  CHECK(rels[0].right.edges == std::vector<CubeId>{*c2.find("0x"), *c2.find("x1")});
  CHECK(pcs::path_end(rels[0].left) == *c2.find("11"));
  CHECK(pcs::path_end(rels[0].right) == *c2.find("11"));

  CHECK(pcs::square_relations(pcs::gen_circle()).empty());

  PrecubicalSet t = pcs::gen_torus();
  auto trels = pcs::square_relations(t);
  REQUIRE(trels.size() == 1);
  CHECK(trels[0].left.edges == std::vector<CubeId>{*t.find("b"), *t.find("a")});
  CHECK(trels[0].right.edges == std::vector<CubeId>{*t.find("a"), *t.find("b")});
}

TEST_CASE("normalize reduces free cancellations") {
  PrecubicalSet x = pcs::gen_circle();
  auto rels = pcs::square_relations(x);

  pcs::NormalizeOutcome o =
      normalize(x, rels, walk_of(x, "v", {pcs::step_forward(0), pcs::step_backward(0)}), 1000);
  REQUIRE(o.known);
  CHECK(o.canonical.steps.empty());

  o = normalize(x, rels,
                walk_of(x, "v", {pcs::step_backward(0), pcs::step_forward(0),
                                 pcs::step_forward(0)}),
                1000);
  REQUIRE(o.known);
  CHECK(o.canonical.steps == std::vector<int>{pcs::step_forward(0)});

  // already canonical input comes back unchanged
  Walk canon = walk_of(x, "v", {pcs::step_forward(0), pcs::step_forward(0)});
  o = normalize(x, rels, canon, 1000);
  REQUIRE(o.known);
  CHECK(o.canonical.steps == canon.steps);
}

TEST_CASE("normalize identifies the torus commutation") {
  PrecubicalSet t = pcs::gen_torus();
  auto rels = pcs::square_relations(t);
  int a = t.find("a")->index;
  int b = t.find("b")->index;

  pcs::NormalizeOutcome ab = normalize(
      t, rels, walk_of(t, "v", {pcs::step_forward(a), pcs::step_forward(b)}), 10000);
  pcs::NormalizeOutcome ba = normalize(
      t, rels, walk_of(t, "v", {pcs::step_forward(b), pcs::step_forward(a)}), 10000);
  REQUIRE(ab.known);
  REQUIRE(ba.known);
  CHECK(ab.canonical.steps == ba.canonical.steps);
  CHECK(ab.canonical.steps ==
        std::vector<int>{pcs::step_forward(a), pcs::step_forward(b)});

  // mixed-sign consequence of the same square: a+ b+ a- is b+'s class
  pcs::NormalizeOutcome mixed = normalize(
      t, rels,
      walk_of(t, "v", {pcs::step_forward(a), pcs::step_forward(b), pcs::step_backward(a)}),
      10000);
  REQUIRE(mixed.known);
  CHECK(mixed.canonical.steps == std::vector<int>{pcs::step_forward(b)});
}

TEST_CASE("normalize keeps distinct wedge loops distinct") {
  PrecubicalSet w = pcs::gen_wedge(2);
  auto rels = pcs::square_relations(w);
  pcs::NormalizeOutcome o01 =
      normalize(w, rels, walk_of(w, "v", {pcs::step_forward(0), pcs::step_forward(1)}), 1000);
  pcs::NormalizeOutcome o10 =
      normalize(w, rels, walk_of(w, "v", {pcs::step_forward(1), pcs::step_forward(0)}), 1000);
  REQUIRE(o01.known);
  REQUIRE(o10.known);
  CHECK(o01.canonical.steps != o10.canonical.steps);
}

TEST_CASE("normalize budget handling") {
  PrecubicalSet t = pcs::gen_torus();
  auto rels = pcs::square_relations(t);
  Walk w = walk_of(t, "v", {pcs::step_forward(0), pcs::step_forward(1),
                            pcs::step_forward(0), pcs::step_forward(1)});

  CHECK_THROWS_AS(normalize(t, rels, w, 0), pcs::DomainError);

  pcs::NormalizeOutcome tiny = normalize(t, rels, w, 1);
  CHECK_FALSE(tiny.known);
  CHECK(tiny.rewrites_used >= 1);

  pcs::NormalizeOutcome big = normalize(t, rels, w, 100000);
  REQUIRE(big.known);

  // outcome is stable once the class is exhausted
  pcs::NormalizeOutcome bigger = normalize(t, rels, w, 1000000);
  REQUIRE(bigger.known);
  CHECK(big.canonical.steps == bigger.canonical.steps);
}

TEST_CASE("normalize is constant on a class and idempotent") {
  std::mt19937 rng(1234);
  PrecubicalSet t = pcs::gen_torus();
  auto rels = pcs::square_relations(t);
  for (int trial = 0; trial < 25; ++trial) {
    int len = std::uniform_int_distribution<int>(0, 5)(rng);
    Walk w{0, {}};
    for (int i = 0; i < len; ++i)
      w.steps.push_back(std::uniform_int_distribution<int>(0, 3)(rng));
    pcs::NormalizeOutcome o = normalize(t, rels, w, 200000);
    REQUIRE(o.known);
    pcs::NormalizeOutcome again = normalize(t, rels, o.canonical, 200000);
    REQUIRE(again.known);
    CHECK(again.canonical.steps == o.canonical.steps);
    CHECK(pcs::walk_end(t, o.canonical) == pcs::walk_end(t, w));
  }
}

TEST_CASE("circle cover balls are directed lines") {
  PrecubicalSet x = pcs::gen_circle();
  for (int radius = 0; radius <= 4; ++radius) {
    CoverBall ball = pcs::build_cover_ball(x, *x.find("v"), radius, 10000);
    CHECK(ball.certified);
    CHECK(static_cast<int>(ball.nodes.size()) == 2 * radius + 1);
    CHECK(ball.dart_count() == static_cast<std::size_t>(2 * radius));
    CHECK(ball.nodes_at_layer(0) == 1);
    for (int l = 1; l <= radius; ++l) CHECK(ball.nodes_at_layer(l) == 2);

    // line structure: each node has one out-dart except the +radius end
    std::set<long long> positions;
    int sinks = 0;
    for (std::size_t n = 0; n < ball.nodes.size(); ++n) {
      positions.insert(net_steps(ball.nodes[n].canonical));
      if (ball.darts[n].empty()) ++sinks;
      else CHECK(ball.darts[n].size() == 1);
    }
    CHECK(sinks == 1);  // only the +radius end has no lift inside the window
    CHECK(positions.size() == ball.nodes.size());
    CHECK(*positions.begin() == -radius);
    CHECK(*positions.rbegin() == radius);
    CHECK(pcs::check_antisymmetry(ball).pass);
  }
}

TEST_CASE("torus cover ball matches the grid diamond") {
  PrecubicalSet t = pcs::gen_torus();
  CoverBall ball = pcs::build_cover_ball(t, *t.find("v"), 2, 100000);
  CHECK(ball.certified);
  CHECK(ball.nodes.size() == 13);  // |{(i,j) : |i|+|j| <= 2}|
  CHECK(ball.dart_count() == 16);
  CHECK(ball.nodes_at_layer(0) == 1);
  CHECK(ball.nodes_at_layer(1) == 4);
  CHECK(ball.nodes_at_layer(2) == 8);
  CHECK(pcs::check_antisymmetry(ball).pass);
}

TEST_CASE("wedge cover ball grows like the free group") {
  PrecubicalSet w = pcs::gen_wedge(2);
  CoverBall ball = pcs::build_cover_ball(w, *w.find("v"), 3, 10000);
  CHECK(ball.certified);
  // 1 + 4 + 4*3 + 4*9
  CHECK(ball.nodes.size() == 53);
  CHECK(ball.nodes_at_layer(1) == 4);
  CHECK(ball.nodes_at_layer(2) == 12);
  CHECK(ball.nodes_at_layer(3) == 36);
  CHECK(pcs::check_antisymmetry(ball).pass);
}

TEST_CASE("simply connected bases are their own cover") {
  PrecubicalSet c2 = pcs::standard_cube(2);
  for (int radius = 2; radius <= 4; ++radius) {
    CoverBall ball = pcs::build_cover_ball(c2, *c2.find("00"), radius, 10000);
    CHECK(ball.certified);
    CHECK(ball.nodes.size() == 4);
    CHECK(ball.dart_count() == 4);
    CHECK(pcs::check_antisymmetry(ball).pass);
  }

  PrecubicalSet g = pcs::gen_grid(2, 2);
  CoverBall ball = pcs::build_cover_ball(g, *g.find("v_0_0"), 5, 100000);
  CHECK(ball.certified);
  CHECK(ball.nodes.size() == 9);
  CHECK(ball.dart_count() == 12);
}

TEST_CASE("punctured grid cover separates the two routes around the hole") {
  PrecubicalSet g = pcs::gen_grid(2, 2, {{1, 1, 1, 1}});
  CoverBall ball = pcs::build_cover_ball(g, *g.find("v_0_0"), 4, 100000);
  CHECK(ball.certified);
  // 9 base vertices plus a second class over the far corner: the two
  // monotone routes around the missing cell do not commute
  CHECK(ball.nodes.size() == 10);
  CHECK(ball.dart_count() == 12);
  int far = g.find("v_2_2")->index;
  int over_far = 0;
  for (const pcs::CoverNode& n : ball.nodes) over_far += n.vertex == far ? 1 : 0;
  CHECK(over_far == 2);
  CHECK(pcs::check_antisymmetry(ball).pass);
}

TEST_CASE("cover ball rejects bad arguments") {
  PrecubicalSet x = pcs::gen_circle();
  CHECK_THROWS_AS(pcs::build_cover_ball(x, CubeId{1, 0}, 2, 100), pcs::DomainError);
  CHECK_THROWS_AS(pcs::build_cover_ball(x, CubeId{0, 5}, 2, 100), pcs::DomainError);
  CHECK_THROWS_AS(pcs::build_cover_ball(x, CubeId{0, 0}, -1, 100), pcs::DomainError);
  CHECK_THROWS_AS(pcs::build_cover_ball(x, CubeId{0, 0}, 2, 0), pcs::DomainError);

  // disconnected base: two far-apart circles
  PrecubicalSet two;
  for (const char* v : {"u", "w"}) two.add_cube(0, v);
  for (const char* e : {"p", "q"}) two.add_cube(1, e);
  two.set_face(*two.find("p"), Sign::Minus, 1, *two.find("u"));
  two.set_face(*two.find("p"), Sign::Plus, 1, *two.find("u"));
  two.set_face(*two.find("q"), Sign::Minus, 1, *two.find("w"));
  two.set_face(*two.find("q"), Sign::Plus, 1, *two.find("w"));
  CHECK_THROWS_AS(pcs::build_cover_ball(two, *two.find("u"), 2, 100), pcs::DomainError);
}

TEST_CASE("starved budgets yield uncertified balls") {
  PrecubicalSet t = pcs::gen_torus();
  CoverBall ball = pcs::build_cover_ball(t, *t.find("v"), 3, 1);
  CHECK_FALSE(ball.certified);
  CHECK(ball.budget_report.unknown_count > 0);
  CHECK(ball.budget_report.normalize_calls > 0);
  CHECK_THROWS_AS(pcs::check_antisymmetry(ball), pcs::PreconditionError);
}

TEST_CASE("cover balls are deterministic") {
  PrecubicalSet t = pcs::gen_torus();
  CoverBall a = pcs::build_cover_ball(t, *t.find("v"), 3, 1000000);
  CoverBall b = pcs::build_cover_ball(t, *t.find("v"), 3, 1000000);
  REQUIRE(a.nodes.size() == b.nodes.size());
  for (std::size_t i = 0; i < a.nodes.size(); ++i) {
    CHECK(a.nodes[i].canonical.steps == b.nodes[i].canonical.steps);
    CHECK(a.nodes[i].vertex == b.nodes[i].vertex);
    CHECK(a.nodes[i].layer == b.nodes[i].layer);
  }
  CHECK(a.darts == b.darts);
}

TEST_CASE("lifting paths through the circle ball") {
  PrecubicalSet x = pcs::gen_circle();
  CoverBall ball = pcs::build_cover_ball(x, *x.find("v"), 4, 10000);

  pcs::LiftResult lift = pcs::lift_path(ball, path_of(x, "v", {"e"}), 0);
  CHECK(lift.nodes.size() == 2);
  CHECK(net_steps(ball.nodes[lift.end_node].canonical) == 1);

  lift = pcs::lift_path(ball, path_of(x, "v", {}), 0);
  CHECK(lift.end_node == 0);

  // winding number n lands on line position n; the lift never closes up
  for (int n = 1; n <= 4; ++n) {
    EdgePath loop = path_of(x, "v", {});
    loop.edges.assign(n, *x.find("e"));
    lift = pcs::lift_path(ball, loop, 0);
    CHECK(net_steps(ball.nodes[lift.end_node].canonical) == pcs::degree(x, loop));
    CHECK((lift.end_node == 0) == (n == 0));
  }

  // deck translation: starting k steps up shifts the endpoint by k
  for (int k = -2; k <= 2; ++k) {
    int from = -1;
    for (std::size_t n = 0; n < ball.nodes.size(); ++n)
      if (net_steps(ball.nodes[n].canonical) == k) from = static_cast<int>(n);
    REQUIRE(from >= 0);
    EdgePath loop = path_of(x, "v", {"e", "e"});
    lift = pcs::lift_path(ball, loop, from);
    CHECK(net_steps(ball.nodes[lift.end_node].canonical) == k + 2);
  }

  // out the window
  EdgePath five = path_of(x, "v", {});
  five.edges.assign(5, *x.find("e"));
  CHECK_THROWS_AS(pcs::lift_path(ball, five, 0), pcs::SearchLimitError);
}

TEST_CASE("lifting respects concatenation and basepoint loops") {
  PrecubicalSet t = pcs::gen_torus();
  CoverBall ball = pcs::build_cover_ball(t, *t.find("v"), 4, 1000000);

  EdgePath ab = path_of(t, "v", {"a", "b"});
  EdgePath ba = path_of(t, "v", {"b", "a"});
  pcs::LiftResult la = pcs::lift_path(ball, ab, 0);
  pcs::LiftResult lb = pcs::lift_path(ball, ba, 0);
  CHECK(la.end_node == lb.end_node);  // the square identifies them
  CHECK(la.end_node != 0);

  // lift of a concatenation = lift of the tail from the head's endpoint
  EdgePath abba = pcs::concatenate(ab, ba);
  pcs::LiftResult lcat = pcs::lift_path(ball, abba, 0);
  pcs::LiftResult ltail = pcs::lift_path(ball, ba, la.end_node);
  CHECK(lcat.end_node == ltail.end_node);
  CHECK(lcat.nodes.size() == 5);

  CHECK_THROWS_AS(pcs::lift_path(ball, ab, 999), pcs::DomainError);

  PrecubicalSet g = pcs::gen_grid(2, 2);
  CoverBall gball = pcs::build_cover_ball(g, *g.find("v_0_0"), 5, 100000);
  EdgePath wrong_start = EdgePath{&g, *g.find("v_1_1"), {}};
  CHECK_THROWS_AS(pcs::lift_path(gball, wrong_start, 0), pcs::DomainError);
}

TEST_CASE("every small basepoint loop lifts open unless trivial") {
  // On the circle and torus: basepoint loops of length <= 4 must return
  // to the root node exactly when they are empty.
  auto check = [](const PrecubicalSet& x) {
    CoverBall ball = pcs::build_cover_ball(x, CubeId{0, 0}, 4, 1000000);
    REQUIRE(ball.certified);
    std::vector<EdgePath> loops;
    loops.push_back(EdgePath{&x, CubeId{0, 0}, {}});
    std::vector<std::vector<CubeId>> frontier = {{}};
    for (int len = 1; len <= 4; ++len) {
      std::vector<std::vector<CubeId>> next;
      for (const auto& pre : frontier) {
        for (int e = 0; e < x.count(1); ++e) {
          auto seq = pre;
          seq.push_back(CubeId{1, e});
          EdgePath p{&x, CubeId{0, 0}, seq};
          if (pcs::path_defect(p) == std::nullopt) {
            next.push_back(seq);
            if (pcs::is_loop(p)) loops.push_back(p);
          }
        }
      }
      frontier = next;
    }
    for (const EdgePath& loop : loops) {
      pcs::LiftResult lift = pcs::lift_path(ball, loop, 0);
      CHECK((lift.end_node == 0) == loop.edges.empty());
    }
  };
  check(pcs::gen_circle());
  check(pcs::gen_torus());
}

TEST_CASE("antisymmetry verdict on a fabricated directed cycle") {
  // No valid instance can produce this, so wire a two-node dart cycle by
  // hand and confirm the checker reports it with a faithful projection.
  PrecubicalSet x = pcs::gen_circle();
  CoverBall ball;
  ball.base = &x;
  ball.basepoint = 0;
  ball.radius = 1;
  ball.budget = 100;
  ball.certified = true;
  ball.nodes.push_back(pcs::CoverNode{Walk{0, {}}, 0, 0});
  ball.nodes.push_back(pcs::CoverNode{Walk{0, {pcs::step_forward(0)}}, 0, 1});
  ball.darts.assign(2, {});
  ball.darts[0][0] = 1;
  ball.darts[1][0] = 0;

  pcs::AntisymmetryVerdict v = pcs::check_antisymmetry(ball);
  CHECK_FALSE(v.pass);
  REQUIRE(v.cycle_nodes.size() >= 3);
  CHECK(v.cycle_nodes.front() == v.cycle_nodes.back());
  CHECK(pcs::path_defect(v.projected_cycle) == std::nullopt);
  CHECK(pcs::is_loop(v.projected_cycle));
  CHECK(v.projected_cycle.edges.size() == v.cycle_nodes.size() - 1);
  // the projection is a genuine essential loop, isolating the fabrication
  CHECK(v.cross_check_essential);
}

TEST_CASE("antisymmetry passes on every corpus ball") {
  for (const auto& [name, x] : corpus::instances()) {
    INFO(name);
    CoverBall ball = pcs::build_cover_ball(x, CubeId{0, 0}, 4, 1000000);
    REQUIRE(ball.certified);
    CHECK(pcs::check_antisymmetry(ball).pass);
  }
}

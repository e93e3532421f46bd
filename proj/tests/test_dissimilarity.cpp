#include <catch2/catch.hpp>

#include <cstdio>
#include <filesystem>

#include "oracles.hpp"
#include "rmds/dissimilarity.hpp"
#include "rmds/graph.hpp"
#include "rmds/shortest_paths.hpp"

using rmds::Graph;

TEST_CASE("from_shortest_paths copies finite distances verbatim") {
  Graph path(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  auto delta = rmds::from_shortest_paths(rmds::shortest_paths(path));
  CHECK(delta(0, 2) == 2.0);

  std::vector<rmds::Edge> k3 = {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}};
  auto dk3 = rmds::from_shortest_paths(rmds::shortest_paths(Graph(3, k3)));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      CHECK(dk3(i, j) == (i == j ? 0.0 : 1.0));
    }
  }

  Graph edge(2, {{0, 1, 2.5}});
  CHECK(rmds::from_shortest_paths(rmds::shortest_paths(edge))(0, 1) == 2.5);
}

TEST_CASE("from_shortest_paths rejects infinite entries") {
  Graph g(3, {{0, 1, 1.0}});
  CHECK_THROWS_AS(rmds::from_shortest_paths(rmds::shortest_paths(g)),
                  rmds::ValidationError);
}

TEST_CASE("ectd closed forms: K2, K3, P3") {
  // single unit edge: volume 2, unit effective resistance
  Graph k2(2, {{0, 1, 1.0}});
  CHECK(rmds::ectd(k2)(0, 1) == Approx(std::sqrt(2.0)).margin(1e-10));

  // triangle: r_eff = 2/3 (1 in parallel with 2 in series), volume 6
  Graph k3(3, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 0, 1.0}});
  auto d3 = rmds::ectd(k3);
  CHECK(d3(0, 1) == Approx(2.0).margin(1e-10));
  CHECK(d3(1, 2) == Approx(2.0).margin(1e-10));

  // path endpoints: two unit resistances in series, volume 4
  Graph p3(3, {{0, 1, 1.0}, {1, 2, 1.0}});
  CHECK(rmds::ectd(p3)(0, 2) == Approx(std::sqrt(8.0)).margin(1e-10));
}

TEST_CASE("ectd matches the effective-resistance oracle") {
  rmds::detail::Rng rng(41);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 3 + static_cast<int>(rng.uniform() * 17);
    Graph g = oracle::random_connected_graph(rng, n, 0.25, trial % 2 == 0);
    auto delta = rmds::ectd(g);
    const double volume = g.volume();
    for (int pair = 0; pair < 8; ++pair) {
      const int a = static_cast<int>(rng.uniform() * n);
      int b = static_cast<int>(rng.uniform() * n);
      if (a == b) b = (b + 1) % n;
      const double r = oracle::effective_resistance(g, a, b);
      REQUIRE(delta(a, b) * delta(a, b) ==
              Approx(volume * r).epsilon(1e-8));
    }
  }
}

TEST_CASE("ectd deflation and eigendecomposition routes agree") {
  rmds::detail::Rng rng(43);
  Graph g = oracle::random_connected_graph(rng, 15, 0.2, false);
  rmds::EctdOptions eig;
  eig.method = rmds::PinvMethod::eigendecomposition;
  auto a = rmds::ectd(g);
  auto b = rmds::ectd(g, eig);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("ectd output is a metric") {
  rmds::detail::Rng rng(47);
  for (int trial = 0; trial < 4; ++trial) {
    const int n = 5 + static_cast<int>(rng.uniform() * 25);
    Graph g = oracle::random_connected_graph(rng, n, 0.15);
    auto d = rmds::ectd(g);
    for (int i = 0; i < n; ++i) {
      REQUIRE(d(i, i) == 0.0);
      for (int j = 0; j < n; ++j) {
        REQUIRE(d(i, j) == d(j, i));
        REQUIRE(d(i, j) >= 0.0);
        for (int k = 0; k < n; ++k) {
          REQUIRE(d(i, k) <= d(i, j) + d(j, k) + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("a second disjoint route strictly shrinks the commute distance") {
  // host path long enough that the volume growth cannot cancel the gain
  std::vector<rmds::Edge> edges;
  for (int i = 0; i < 7; ++i) edges.push_back({i, i + 1, 1.0});
  Graph base(8, edges);
  const double before = rmds::ectd(base)(0, 2);

  edges.push_back({0, 8, 1.0});
  edges.push_back({8, 2, 1.0});
  Graph augmented(9, edges);
  const double after = rmds::ectd(augmented)(0, 2);
  CHECK(after < before);
}

TEST_CASE("ectd rejects disconnected graphs and oversized problems") {
  Graph g(3, {{0, 1, 1.0}});
  CHECK_THROWS_AS(rmds::ectd(g), rmds::ValidationError);

  rmds::detail::Rng rng(53);
  Graph big = oracle::random_connected_graph(rng, 10, 0.2);
  rmds::EctdOptions opts;
  opts.max_dense_nodes = 5;
  CHECK_THROWS_AS(rmds::ectd(big, opts), rmds::ValidationError);
}

TEST_CASE("dissimilarity cache round-trips bit-exactly") {
  rmds::detail::Rng rng(59);
  Graph g = oracle::random_connected_graph(rng, 12, 0.3, false);
  auto delta = rmds::ectd(g);
  const auto path =
      std::filesystem::temp_directory_path() / "rmds_cache_test.bin";
  rmds::write_dissimilarity_cache(path, delta);
  auto back = rmds::read_dissimilarity_cache(path);
  REQUIRE(back.rows() == delta.rows());
  for (int i = 0; i < delta.rows(); ++i) {
    for (int j = 0; j < delta.cols(); ++j) {
      REQUIRE(back(i, j) == delta(i, j));
    }
  }
  std::filesystem::remove(path);
}

TEST_CASE("dissimilarity cache rejects foreign files") {
  const auto path =
      std::filesystem::temp_directory_path() / "rmds_cache_bogus.bin";
  {
    std::ofstream out(path, std::ios::binary);
    out << "definitely not a cache";
  }
  CHECK_THROWS_AS(rmds::read_dissimilarity_cache(path), rmds::ParseError);
  std::filesystem::remove(path);
}

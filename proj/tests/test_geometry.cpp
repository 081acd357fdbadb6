#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "semshift/embedding.hpp"
#include "semshift/geometry.hpp"
#include "semshift/util.hpp"
#include "support/oracles.hpp"

using namespace semshift;

namespace {

EmbeddingMatrix matrix_of(const std::vector<std::vector<float>>& rows) {
  EmbeddingMatrix m;
  for (const auto& r : rows) m.append_row(r);
  return m;
}

EmbeddingMatrix random_unit_matrix(std::size_t n, std::size_t d,
                                   std::uint64_t seed) {
  Rng rng(seed);
  EmbeddingMatrix m(d);
  std::vector<float> row(d);
  for (std::size_t i = 0; i < n; ++i) {
    double norm = 0.0;
    std::vector<double> v(d);
    for (auto& x : v) {
      x = rng.next_gaussian();
      norm += x * x;
    }
    norm = std::sqrt(norm);
    for (std::size_t j = 0; j < d; ++j)
      row[j] = static_cast<float>(v[j] / norm);
    m.append_row(row);
  }
  return m;
}

}  // namespace

TEST_CASE("cosine_distance basics") {
  std::vector<double> a{1.0, 0.0}, b{0.0, 1.0}, neg{-1.0, 0.0};
  CHECK(cosine_distance(a, a) == 0.0);
  CHECK(cosine_distance(a, b) == Catch::Approx(1.0));
  CHECK(cosine_distance(a, neg) == Catch::Approx(2.0));
  CHECK_THROWS_AS(cosine_distance(a, std::vector<double>{1.0, 0.0, 0.0}),
                  DimensionMismatchError);
  CHECK_THROWS_AS(cosine_distance(a, std::vector<double>{0.0, 0.0}),
                  ZeroVectorError);
}

TEST_CASE("mpd on hand-built matrices") {
  CHECK(mpd(matrix_of({{1, 0}, {1, 0}})) == Catch::Approx(0.0).margin(1e-12));
  // four axis-aligned unit rows: four pair distances of 1, two of 2
  auto m = matrix_of({{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
  CHECK(mpd(m) == Catch::Approx(4.0 / 3.0).epsilon(1e-12));
  EmbeddingMatrix one;
  one.append_row(std::vector<float>{1.0f, 0.0f});
  CHECK_THROWS_AS(mpd(one), TooFewRowsError);
}

TEST_CASE("mpd matches the double-loop oracle on random matrices") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::size_t n = 20 + seed * 13;
    std::size_t d = 4 + seed * 3;
    auto m = random_unit_matrix(n, d, seed);
    double fast = mpd(m);
    double slow = oracles::brute_mpd(m);
    CHECK(std::abs(fast - slow) <= 1e-9 * std::max(1.0, std::abs(slow)));
  }
}

TEST_CASE("mpd_curve equals per-prefix recomputation") {
  auto m = random_unit_matrix(10, 4, 99);
  auto curve = mpd_curve(m, 1);
  REQUIRE(curve.prefix_sizes.size() == 9);
  for (std::size_t i = 0; i < curve.prefix_sizes.size(); ++i) {
    EmbeddingMatrix prefix(m.dim());
    for (std::size_t r = 0; r < curve.prefix_sizes[i]; ++r)
      prefix.append_row(m.row(r));
    CHECK(curve.mpd_values[i] ==
          Catch::Approx(oracles::brute_mpd(prefix)).margin(1e-9));
  }
  CHECK(curve.prefix_sizes.back() == m.rows());
  CHECK(curve.mpd_values.back() == Catch::Approx(mpd(m)).margin(1e-12));

  SECTION("constant matrix gives all zeros") {
    auto c = matrix_of({{0, 1}, {0, 1}, {0, 1}, {0, 1}});
    for (double v : mpd_curve(c, 1).mpd_values)
      CHECK(v == Catch::Approx(0.0).margin(1e-12));
  }
  SECTION("stride still ends at n") {
    auto curve3 = mpd_curve(m, 3);
    CHECK(curve3.prefix_sizes.front() == 2);
    CHECK(curve3.prefix_sizes.back() == 10);
    for (std::size_t i = 1; i < curve3.prefix_sizes.size(); ++i)
      CHECK(curve3.prefix_sizes[i] > curve3.prefix_sizes[i - 1]);
  }
}

TEST_CASE("dilution_stats on hand-built groups") {
  SECTION("identical pair") {
    auto st = dilution_stats(matrix_of({{1, 0}, {1, 0}}));
    CHECK(st.c_pair == Catch::Approx(0.0).margin(1e-12));
    CHECK(st.c_mean == Catch::Approx(0.0).margin(1e-12));
    CHECK(st.mu_norm == Catch::Approx(1.0).epsilon(1e-9));
  }
  SECTION("orthogonal pair") {
    auto st = dilution_stats(matrix_of({{1, 0}, {0, 1}}));
    CHECK(st.c_pair == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(st.mu_norm == Catch::Approx(std::sqrt(0.5)).epsilon(1e-12));
    CHECK(st.c_mean == Catch::Approx(1.0 - std::sqrt(0.5)).epsilon(1e-9));
  }
  SECTION("antipodal pair degenerates in pooling mode") {
    CHECK_THROWS_AS(dilution_stats(matrix_of({{1, 0}, {-1, 0}})),
                    DegeneratePoolError);
  }
  SECTION("k = 1 is rejected") {
    CHECK_THROWS_AS(dilution_stats(matrix_of({{1, 0}})), TooFewRowsError);
  }
  SECTION("unnormalized rows are rejected") {
    CHECK_THROWS_AS(dilution_stats(matrix_of({{3, 4}, {1, 0}})),
                    NotNormalizedError);
  }
}

TEST_CASE("theorem1_cmean closed form") {
  CHECK(theorem1_cmean(0.0, 2) == 0.0);
  CHECK(theorem1_cmean(0.0, 50) == 0.0);
  CHECK(theorem1_cmean(1.0, 2) == Catch::Approx(1.0 - std::sqrt(0.5)));
  CHECK(theorem1_cmean(2.0, 2) == Catch::Approx(1.0));
  CHECK_THROWS_AS(theorem1_cmean(2.0, 3), OutOfDomainError);
  CHECK_THROWS_AS(theorem1_cmean(-0.1, 2), InputError);
  CHECK_THROWS_AS(theorem1_cmean(0.5, 1), InputError);
}

TEST_CASE("theorem identity holds exactly for pooled groups") {
  std::size_t checked = 0;
  for (std::size_t d : {2ul, 8ul, 384ul}) {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      std::size_t k = 2 + seed % 9;
      auto m = random_unit_matrix(k, d, seed * 1000 + d);
      DilutionStats st;
      try {
        st = dilution_stats(m);
      } catch (const DegeneratePoolError&) {
        continue;
      }
      if (st.mu_norm <= 1e-6) continue;
      CHECK(std::abs(st.c_mean - theorem1_cmean(st.c_pair, k)) <= 1e-9);
      CHECK(std::abs(st.c_mean - (1.0 - st.mu_norm)) <= 1e-12);
      ++checked;
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("theorem1_cmean is strictly increasing in c_pair") {
  for (std::size_t k : {2ul, 3ul, 10ul, 50ul}) {
    double limit = static_cast<double>(k) / static_cast<double>(k - 1);
    double prev = -1.0;
    for (int i = 0; i <= 200; ++i) {
      double c = limit * i / 201.0;
      double v = theorem1_cmean(c, k);
      CHECK(v > prev);
      prev = v;
    }
  }
}

TEST_CASE("spearman_rho") {
  std::vector<double> x{1, 2, 3, 4, 5};
  std::vector<double> cube{1, 8, 27, 64, 125};
  CHECK(spearman_rho(x, cube) == Catch::Approx(1.0));
  std::vector<double> rev{5, 4, 3, 2, 1};
  CHECK(spearman_rho(x, rev) == Catch::Approx(-1.0));

  // tied example, frozen from the average-rank definition by hand:
  // ranks x = [1, 2.5, 2.5, 4], ranks y = [1, 3, 2, 4] -> rho = sqrt(0.9)
  std::vector<double> tx{1, 2, 2, 4}, ty{1, 3, 2, 4};
  CHECK(spearman_rho(tx, ty) == Catch::Approx(0.9486832980505138).epsilon(1e-12));
  CHECK(spearman_rho(tx, ty) == Catch::Approx(oracles::brute_spearman(tx, ty)));

  CHECK_THROWS_AS(spearman_rho({1, 2}, {1, 2, 3}), LengthMismatchError);
  CHECK_THROWS_AS(spearman_rho({1, 1, 1}, {1, 2, 3}), DegenerateInputError);
}

TEST_CASE("kendall_tau") {
  std::vector<double> x{1, 2, 3, 4, 5};
  CHECK(kendall_tau(x, x) == Catch::Approx(1.0));
  std::vector<double> rev{5, 4, 3, 2, 1};
  CHECK(kendall_tau(x, rev) == Catch::Approx(-1.0));
  std::vector<double> tx{1, 2, 2, 3, 3}, ty{2, 2, 1, 3, 3};
  CHECK(kendall_tau(tx, ty) ==
        Catch::Approx(oracles::brute_kendall_tau_b(tx, ty)).epsilon(1e-12));
  CHECK_THROWS_AS(kendall_tau({2, 2, 2}, {1, 2, 3}), DegenerateInputError);
}

TEST_CASE("rank correlations match brute force on random tied series") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 3 + rng.next_below(48);
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = static_cast<double>(rng.next_below(8));
    for (auto& v : y) v = static_cast<double>(rng.next_below(8));
    auto constant = [](const std::vector<double>& v) {
      for (double e : v)
        if (e != v[0]) return true;
      return false;
    };
    if (!constant(x) || !constant(y)) continue;
    CHECK(std::abs(spearman_rho(x, y) - oracles::brute_spearman(x, y)) <= 1e-12);
    CHECK(std::abs(kendall_tau(x, y) - oracles::brute_kendall_tau_b(x, y)) <=
          1e-12);
  }
}

TEST_CASE("rank correlations are invariant under increasing transforms") {
  Rng rng(11);
  std::vector<double> x(30), y(30);
  for (auto& v : x) v = rng.next_double();
  for (auto& v : y) v = static_cast<double>(rng.next_below(6));
  auto cube = [](std::vector<double> v) {
    for (auto& e : v) e = e * e * e + 2.0;
    return v;
  };
  CHECK(spearman_rho(x, y) == spearman_rho(cube(x), y));
  CHECK(kendall_tau(x, y) == kendall_tau(x, cube(y)));
}

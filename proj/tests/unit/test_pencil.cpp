#include "doctest.h"

#include "oracles.hpp"
#include "planted_kcf.hpp"
#include "oversamp/pencil.hpp"
#include "oversamp/reduction.hpp"

#include <random>

using namespace oversamp;
using oversamp::testing::poly;

namespace {

SamplingProblem quadratic_problem() { return make_problem(GeneratorSpec{BSpline{3}}, SystemSpec{Identity{}}, 4, 5); }

RationalMatrix diag(std::initializer_list<Rational> d) {
  RationalMatrix m(d.size(), d.size());
  std::size_t i = 0;
  for (const auto& x : d) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

// Dimension of the space of polynomial vectors x(lambda) of degree <= d with
// (A - lambda B) x(lambda) = 0, from the coefficient equations
// A x_k - B x_{k-1} = 0, k = 0..d+1.
std::size_t null_dimension(const ExactPencil& p, int d) {
  const std::size_t m = p.rows();
  const std::size_t n = p.cols();
  const auto blocks = static_cast<std::size_t>(d + 1);
  RationalMatrix t((blocks + 1) * m, blocks * n);
  for (std::size_t k = 0; k < blocks; ++k) {
    t.set_block(k * m, k * n, p.A);
    t.set_block((k + 1) * m, k * n, -p.B);
  }
  return blocks * n - rank(t);
}

}  // namespace

TEST_SUITE("pencil") {
  TEST_CASE("structure of the reduced pencils") {
    const auto trace = reduce(quadratic_problem());
    REQUIRE(trace.compression);
    const auto m2 = staircase(trace.compression->M2);
    CHECK(m2.left_minimal_indices == std::vector<int>{2});
    CHECK(m2.right_minimal_indices.empty());
    CHECK(m2.zero_jordan_blocks.empty());
    CHECK(m2.infinite_blocks.empty());
    CHECK(m2.finite_nonzero.empty());

    const auto full = staircase(trace.full);
    CHECK(full.infinite_blocks == std::vector<int>{1, 1});
    CHECK(full.left_minimal_indices == std::vector<int>{2});
    CHECK(full.right_minimal_indices.empty());
    CHECK(full.zero_jordan_blocks.empty());
    CHECK(full.finite_nonzero.empty());
    full.check_sizes();
  }

  TEST_CASE("identity pencil") {
    for (std::size_t k = 1; k <= 5; ++k) {
      const auto id = RationalMatrix::identity(k);
      const auto ks = staircase(ExactPencil(id, id));
      REQUIRE(ks.finite_nonzero.size() == 1);
      CHECK(std::abs(ks.finite_nonzero[0].value - Complex(1.0, 0.0)) < 1e-8);
      CHECK(ks.finite_nonzero[0].block_sizes == std::vector<int>(k, 1));
      CHECK(ks.normal_rank() == k);
    }
  }

  TEST_CASE("normal rank") {
    const auto trace = reduce(quadratic_problem());
    CHECK(normal_rank(trace.compression->M2) == 2);
    CHECK(normal_rank(trace.full) == 4);
    CHECK(normal_rank(ExactPencil(RationalMatrix(3, 2), RationalMatrix(3, 2))) == 0);

    std::mt19937_64 rng(5);
    CHECK(normal_rank(trace.full.cast<double>(), rng) == 4);
    CHECK(normal_rank(trace.compression->M2.cast<double>(), rng) == 2);
    CHECK(normal_rank(FloatPencil(Matrix<double>(2, 3), Matrix<double>(2, 3)), rng) == 0);
  }

  TEST_CASE("spectrum oracle") {
    const auto trace = reduce(quadratic_problem());
    const auto m2 = spectrum_oracle(trace.compression->M2);
    CHECK(m2.normal_rank == 2);
    CHECK(m2.minor_gcd.degree() == 0);
    CHECK_FALSE(m2.has_finite_eigenvalues());

    // diag(-lambda, 1 - lambda) has eigenvalues 0 and 1.
    const auto zi = spectrum_oracle(ExactPencil(diag({0, 1}), diag({1, 1})));
    CHECK(zi.minor_gcd == poly({{1, -1}, {2, 1}}));
    CHECK_FALSE(zi.only_zero_eigenvalue());
    CHECK(zi.zero_multiplicity() == 1);

    const auto z = spectrum_oracle(ExactPencil(diag({0, 1}), diag({1, 0})));
    CHECK(z.minor_gcd == poly({{1, 1}}));
    CHECK(z.only_zero_eigenvalue());
    CHECK(z.zero_multiplicity() == 1);

    const auto two = spectrum_oracle(ExactPencil(diag({2, 1}), diag({1, 1})));
    CHECK(two.minor_gcd == poly({{0, 2}, {1, -3}, {2, 1}}));
    CHECK_FALSE(two.only_zero_eigenvalue());
    auto roots = polynomial_roots(two.minor_gcd);
    REQUIRE(roots.size() == 2);
    std::sort(roots.begin(), roots.end(), [](Complex a, Complex b) { return a.real() < b.real(); });
    CHECK(std::abs(roots[0] - Complex(1, 0)) < 1e-10);
    CHECK(std::abs(roots[1] - Complex(2, 0)) < 1e-10);

    const auto ks = staircase(ExactPencil(diag({2, 1}), diag({1, 1})));
    CHECK(oracle_agrees(ks, two));
    CHECK_FALSE(oracle_agrees(ks, z));
  }

  TEST_CASE("canonical blocks are recovered") {
    testing::PlantedBlocks b;
    b.right = {0, 2};
    b.left = {1};
    b.jordan = {{0, 2}, {3, 1}};
    b.infinite = {2};
    const auto k = staircase(testing::canonical_pencil(b));
    CHECK(k.same_structure(b.expected()));
  }

  TEST_CASE("planted structures survive unimodular disguise") {
    std::mt19937_64 rng(2024);
    int ambiguous = 0;
    for (int trial = 0; trial < 300; ++trial) {
      const auto blocks = testing::random_blocks(rng);
      const auto pencil = testing::disguise(testing::canonical_pencil(blocks), rng);
      CAPTURE(trial);
      try {
        const auto k = staircase(pencil);
        CHECK(k.same_structure(blocks.expected()));
        CHECK(oracle_agrees(k, spectrum_oracle(pencil)));
      } catch (const RankAmbiguousError&) {
        ++ambiguous;
      }
    }
    CHECK(ambiguous == 0);
  }

  TEST_CASE("sizes are checked") {
    KroneckerStructure k;
    k.rows = 2;
    k.cols = 3;
    k.right_minimal_indices = {2};
    CHECK_NOTHROW(k.check_sizes());
    k.rows = 3;
    CHECK_THROWS_AS(k.check_sizes(), Error);
  }

  TEST_CASE("ambiguous rank decisions are reported") {
    RationalMatrix a = diag({1, frac(1, 10000000000)});
    RationalMatrix b = diag({0, 0});
    try {
      staircase(ExactPencil(a, b));
      FAIL("expected RankAmbiguous");
    } catch (const RankAmbiguousError& e) {
      CHECK(e.kind() == ErrorKind::RankAmbiguous);
      CHECK_FALSE(e.singular_values().empty());
      CHECK(e.threshold() > 0.0);
    }
  }

  TEST_CASE("left null vectors have degree at least N - 1") {
    for (const auto& p : {quadratic_problem(), make_problem(GeneratorSpec{BSpline{4}}, SystemSpec{Identity{}}, 5, 6),
                          make_problem(GeneratorSpec{BSpline{2}}, SystemSpec{Identity{}}, 3, 4),
                          make_problem(GeneratorSpec{BSpline{4}}, SystemSpec{Identity{}}, 4, 5)}) {
      const auto trace = reduce(p);
      const ExactPencil transposed(trace.full.A.transpose(), trace.full.B.transpose());
      CAPTURE(p.r);
      CAPTURE(p.N);
      for (int d = 0; d < p.N - 1; ++d) CHECK(null_dimension(transposed, d) == 0);
      CHECK(null_dimension(transposed, p.N - 1) == 1);
    }
  }
}

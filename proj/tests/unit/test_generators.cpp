#include "doctest.h"

#include "oracles.hpp"
#include "oversamp/generators.hpp"

#include <random>

using namespace oversamp;
using oversamp::testing::poly;

namespace {

SamplingProblem quadratic_problem() { return make_problem(GeneratorSpec{BSpline{3}}, SystemSpec{Identity{}}, 4, 5); }

}  // namespace

TEST_SUITE("generators") {
  TEST_CASE("quadratic spline values") {
    const GeneratorSpec n3{BSpline{3}};
    CHECK(generator_eval(n3, frac(4, 5)) == frac(8, 25));
    CHECK(generator_eval(n3, frac(9, 5)) == frac(33, 50));
    CHECK(generator_eval(n3, frac(14, 5)) == frac(1, 50));
    CHECK(generator_eval(n3, frac(-1, 3)) == 0);
    CHECK(generator_eval(n3, Rational(3)) == 0);
    CHECK(generator_eval(n3, Rational(7)) == 0);
  }

  TEST_CASE("recurrence matches independent closed forms") {
    for (int num = -10; num <= 70; ++num) {
      const Rational t = frac(num, 7);
      CHECK(generator_eval(GeneratorSpec{BSpline{3}}, t) == testing::n3_closed_form(t));
      for (int m = 2; m <= 5; ++m) {
        CHECK(generator_eval(GeneratorSpec{BSpline{m}}, t) == testing::bspline_truncated_power(m, t));
      }
    }
  }

  TEST_CASE("de Boor float evaluation agrees with exact values") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1.0, 7.0);
    for (int m = 2; m <= 6; ++m) {
      const GeneratorSpec g{BSpline{m}};
      for (int i = 0; i < 200; ++i) {
        const Rational t(static_cast<long>(u(rng) * 4096), 4096);
        CHECK(std::abs(generator_eval_double(g, t.get_d()) - generator_eval(g, t).get_d()) < 1e-12);
      }
    }
  }

  TEST_CASE("piecewise generator equals the spline it tabulates") {
    PiecewisePoly pw;
    pw.breakpoints = {0, 1, 2, 3};
    pw.pieces = {{0, 0, frac(1, 2)}, {frac(-3, 2), 3, -1}, {frac(9, 2), -3, frac(1, 2)}};
    const GeneratorSpec g{pw};
    validate_generator(g);
    for (int num = -5; num <= 35; ++num) {
      const Rational t = frac(num, 10);
      CHECK(generator_eval(g, t) == testing::n3_closed_form(t));
      CHECK(std::abs(generator_eval_double(g, t.get_d()) - testing::n3_closed_form(t).get_d()) < 1e-14);
    }
  }

  TEST_CASE("invalid generators are rejected") {
    CHECK_THROWS_AS(validate_generator(GeneratorSpec{BSpline{1}}), Error);
    PiecewisePoly jump;
    jump.breakpoints = {0, 1, 2};
    jump.pieces = {{0, 1}, {1}};  // t on [0,1), then 1, then 0 at 2: discontinuous at 2
    CHECK_THROWS_AS(validate_generator(GeneratorSpec{jump}), Error);
    PiecewisePoly offset;
    offset.breakpoints = {1, 2};
    offset.pieces = {{0}};
    CHECK_THROWS_AS(validate_generator(GeneratorSpec{offset}), Error);
  }

  TEST_CASE("samples of the quadratic spline problem") {
    const auto p = quadratic_problem();
    CHECK(p.N == 3);
    const SampleTable t = lphi_samples(p);
    CHECK(t.at(1, 1) == frac(1, 2));
    CHECK(t.at(5, -3) == frac(1, 50));
    for (int n = -5; n <= 5; ++n) {
      if (n <= 0 || n >= p.N) CHECK(t.at(1, n) == 0);
    }
  }

  TEST_CASE("build_G reproduces the five Laurent polynomials") {
    const GMatrix g = build_G(quadratic_problem());
    REQUIRE(g.g.size() == 5);
    CHECK(g.g[0] == poly({{1, frac(1, 2)}, {2, frac(1, 2)}}));
    CHECK(g.g[1] == poly({{0, frac(8, 25)}, {1, frac(33, 50)}, {2, frac(1, 50)}}));
    CHECK(g.g[2] == poly({{-1, frac(9, 50)}, {0, frac(37, 50)}, {1, frac(2, 25)}}));
    CHECK(g.g[3] == poly({{-2, frac(2, 25)}, {-1, frac(37, 50)}, {0, frac(9, 50)}}));
    CHECK(g.g[4] == poly({{-3, frac(1, 50)}, {-2, frac(33, 50)}, {-1, frac(8, 25)}}));
    CHECK(g.g[0].term_count() <= 2);
    for (std::size_t j = 1; j < 5; ++j) CHECK(g.g[j].term_count() <= 3);
  }

  TEST_CASE("numeric G matches its defining sum") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (const auto& p : {quadratic_problem(), make_problem(GeneratorSpec{BSpline{4}}, SystemSpec{Shift{frac(-1, 3)}}, 5, 7),
                          make_problem(GeneratorSpec{BSpline{2}}, SystemSpec{Identity{}}, 3, 4)}) {
      const GMatrix g = build_G(p);
      for (double w : {0.0, u(rng), u(rng)}) {
        const Complex z0 = std::polar(1.0, -2.0 * std::numbers::pi * w);
        CHECK((g.eval(z0) - testing::direct_G(p, z0)).norm() < 1e-12);
      }
    }
  }

  TEST_CASE("shift and FIR systems") {
    const GeneratorSpec n3{BSpline{3}};
    const auto sh = make_problem(n3, SystemSpec{Shift{frac(-1, 2)}}, 4, 5);
    CHECK(sh.N == 4);  // supp L phi = [1/2, 7/2]
    CHECK(lphi_eval(n3, SystemSpec{Shift{frac(-1, 2)}}, Rational(1)) == generator_eval(n3, frac(1, 2)));

    FirCombination fir{{{0, 1}, {frac(1, 2), frac(-1, 3)}}};
    CHECK(support_bound(n3, SystemSpec{fir}) == 4);
    CHECK(lphi_eval(n3, SystemSpec{fir}, Rational(1)) ==
          generator_eval(n3, Rational(1)) - frac(1, 3) * generator_eval(n3, frac(1, 2)));

    CHECK_THROWS_AS(make_problem(n3, SystemSpec{Shift{frac(1, 2)}}, 4, 5), Error);
    CHECK_THROWS_AS(make_problem(n3, SystemSpec{FirCombination{{{0, 0}}}}, 4, 5), Error);
  }

  TEST_CASE("problem validation") {
    const GeneratorSpec n3{BSpline{3}};
    CHECK_THROWS_AS(make_problem(n3, SystemSpec{Identity{}}, 4, 4), Error);
    CHECK_THROWS_AS(make_problem(n3, SystemSpec{Identity{}}, 2, 5), Error);  // N = 3 > r
    auto p = quadratic_problem();
    p.N = 4;
    CHECK_THROWS_AS(validate_problem(p), Error);
    CHECK(quadratic_problem().period() == frac(4, 5));
  }

  TEST_CASE("sample rows are finite with bounded valuation") {
    for (int m = 2; m <= 4; ++m) {
      for (auto [r, s] : {std::pair{4, 5}, std::pair{4, 6}, std::pair{5, 6}}) {
        const auto p = make_problem(GeneratorSpec{BSpline{m}}, SystemSpec{Identity{}}, r, s);
        const GMatrix g = build_G(p);
        for (const auto& gj : g.g) {
          CHECK(gj.valuation() >= -(r - 1));
          CHECK(gj.degree() <= p.N);
        }
      }
    }
  }
}

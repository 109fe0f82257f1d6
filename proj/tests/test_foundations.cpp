#include <cmath>
#include <vector>

#include "doctest.h"
#include "tfdg/ddouble.hpp"
#include "tfdg/errors.hpp"
#include "tfdg/gammafn.hpp"
#include "tfdg/quadrature.hpp"
#include "tfdg/time_grid.hpp"

using namespace tfdg;

namespace {

// |a - ref| <= tol * |ref|, measured in double-double so errors below 1e-16
// remain visible.
void check_dd(const DD& a, const DD& ref, double rel_tol) {
  DD diff = dd_abs(dd_sub(a, ref));
  double scale = std::abs(ref.value());
  CAPTURE(a.hi);
  CAPTURE(ref.hi);
  CHECK(diff.value() <= rel_tol * scale);
}

}  // namespace

TEST_CASE("double-double add, mul, div keep the low word") {
  DD big = dd_add(DD(1.0e20), DD(1.0));
  DD back = dd_sub(big, DD(1.0e20));
  CHECK(back.hi == 1.0);
  CHECK(back.lo == 0.0);

  DD third = dd_div(DD(1.0), DD(3.0));
  check_dd(dd_mul(third, DD(3.0)), DD(1.0), 1.0e-31);

  CHECK(dd_npow(DD(3.0), 7).value() == 2187.0);
  CHECK(dd_npow(DD(2.0), 100).hi == std::ldexp(1.0, 100));

  check_dd(dd_sqrt(DD(2.0)), DD(1.4142135623730951, -9.667293313452913e-17), 1.0e-31);
  DD s = dd_sqrt(DD(7.3));
  check_dd(dd_mul(s, s), DD(7.3), 1.0e-31);
}

TEST_CASE("double-double exp matches high-precision references") {
  check_dd(dd_exp(DD(0.5)), DD(1.6487212707001282, -4.731568479435833e-17), 1.0e-29);
  check_dd(dd_exp(DD(-3.25)), DD(0.03877420783172201, 1.1433418851841824e-18), 1.0e-29);
  check_dd(dd_exp(DD(36.7)), DD(8681754200535380.0, 0.326667438982321), 1.0e-29);
  check_dd(dd_exp(DD(0.0)), DD(1.0), 0.0);
  CHECK(dd_exp(DD(-800.0)).value() == 0.0);
  CHECK_THROWS_AS((void)dd_exp(DD(710.0)), Error);
}

TEST_CASE("double-double log matches high-precision references") {
  check_dd(dd_log(DD(3.0)), DD(1.0986122886681098, -9.07129723500153e-17), 1.0e-28);
  check_dd(dd_log(DD(0.017)), DD(-4.074541934925921, -2.5012055862239175e-16), 1.0e-28);
  check_dd(dd_log(dd_exp(DD(12.34))), DD(12.34), 1.0e-28);
  check_dd(dd_exp(dd_log(DD(1234.5678))), DD(1234.5678), 1.0e-28);
  CHECK_THROWS_AS((void)dd_log(DD(0.0)), Error);
  CHECK_THROWS_AS((void)dd_log(DD(-2.0)), Error);
}

TEST_CASE("double-double gamma matches high-precision references") {
  // straight Stirling range
  check_dd(dd_gamma(DD(40.25)), DD(5.117762131845142e+46, -1.1850421661601278e+30), 5.0e-28);
  // recurrence lift, moderate and hard (many steps, near-pole small argument)
  check_dd(dd_gamma(DD(0.5)), DD(1.772453850905516, -7.666586499825799e-17), 5.0e-28);
  check_dd(dd_gamma(DD(0.3)), DD(2.991568987687591, -8.576219985605117e-17), 5.0e-28);
  check_dd(dd_gamma(DD(2.7)), DD(1.5446858458505939, 1.0866264859932564e-16), 5.0e-28);
  check_dd(dd_gamma(DD(10.3)), DD(716430.6890623764, 1.641409919496974e-11), 5.0e-28);
  check_dd(dd_gamma(DD(0.05)), DD(19.470085311255513, -1.2489984034922555e-15), 5.0e-28);
  // integers stay exact to working precision
  check_dd(dd_gamma(DD(6.0)), DD(120.0), 1.0e-28);
  check_dd(dd_gamma(DD(1.0)), DD(1.0), 1.0e-29);
  CHECK_THROWS_AS((void)dd_gamma(DD(0.0)), Error);
  CHECK_THROWS_AS((void)dd_gamma(DD(-1.5)), Error);
}

TEST_CASE("double-double log-gamma stays finite past the overflow point") {
  check_dd(dd_exp(dd_lgamma(DD(10.3))), dd_gamma(DD(10.3)), 1.0e-27);
  check_dd(dd_exp(dd_lgamma(DD(0.3))), dd_gamma(DD(0.3)), 1.0e-27);
  // Gamma(300.5) overflows double; lgamma must not
  DD lg = dd_lgamma(DD(300.5));
  CHECK(std::isfinite(lg.hi));
  CHECK(lg.hi == doctest::Approx(std::lgamma(300.5)).epsilon(1.0e-14));
  CHECK(std::abs(dd_lgamma(DD(1.0)).value()) <= 1.0e-28);
}

TEST_CASE("reciprocal gamma handles poles, reflection and overflow") {
  CHECK(rgammafn(1.0) == 1.0);
  CHECK(rgammafn(0.0) == 0.0);
  CHECK(rgammafn(-1.0) == 0.0);
  CHECK(rgammafn(-17.0) == 0.0);
  CHECK(rgammafn(1.6) * gammafn(1.6) == doctest::Approx(1.0).epsilon(1.0e-14));
  CHECK(gammafn(1.6) == doctest::Approx(0.8935153492876903).epsilon(1.0e-14));
  // reflection region
  CHECK(rgammafn(-2.5) == doctest::Approx(-1.057855469152043).epsilon(1.0e-13));
  CHECK(rgammafn(-0.49) == doctest::Approx(-0.28186594150554874).epsilon(1.0e-13));
  // Gamma overflows for x > ~171.6; the reciprocal just underflows to zero
  CHECK(rgammafn(180.0) == 0.0);
  CHECK(rgammafn(170.0) > 0.0);
  // far into the left half-axis the reciprocal grows like Gamma(1 - x)
  double r = rgammafn(-120.5);
  REQUIRE(std::isfinite(r));
  CHECK(r < 0.0);
  CHECK(std::log(-r) == doctest::Approx(std::lgamma(121.5) - std::log(M_PI)).epsilon(1.0e-12));
}

TEST_CASE("sinpi is exact at integers and half-integers") {
  CHECK(sinpi(0.0) == 0.0);
  CHECK(sinpi(1.0) == 0.0);
  CHECK(sinpi(100.0) == 0.0);
  CHECK(sinpi(-7.0) == 0.0);
  CHECK(sinpi(0.5) == 1.0);
  CHECK(sinpi(2.5) == 1.0);
  CHECK(sinpi(-0.5) == -1.0);
  CHECK(sinpi(1.0e15 + 0.5) == 1.0);
  CHECK(sinpi(0.25) == doctest::Approx(std::sqrt(0.5)).epsilon(1.0e-15));
}

TEST_CASE("Gauss-Legendre rules integrate polynomials exactly") {
  for (int n = 1; n <= 8; ++n) {
    QuadRule r = gauss_legendre(n);
    REQUIRE(r.size() == static_cast<std::size_t>(n));
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double got = 0.0;
      for (std::size_t i = 0; i < r.size(); ++i) got += r.w[i] * std::pow(r.x[i], k);
      double want = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
      CAPTURE(n);
      CAPTURE(k);
      CHECK(got == doctest::Approx(want).epsilon(1.0e-13).scale(1.0));
    }
  }

  QuadRule r = scaled_to(gauss_legendre(3), 2.0, 5.0);
  double got = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) got += r.w[i] * std::pow(r.x[i], 3);
  CHECK(got == doctest::Approx((625.0 - 16.0) / 4.0).epsilon(1.0e-14));
}

TEST_CASE("Gauss-Jacobi first moment matches the Beta closed form") {
  for (double a : {-0.49, 0.0, 0.6}) {
    for (double b : {-0.3, 0.0, 1.0}) {
      QuadRule r = gauss_jacobi(4, a, b);
      double mu0 = 0.0;
      for (double w : r.w) mu0 += w;
      double want = std::pow(2.0, a + b + 1.0) * gammafn(a + 1.0) * gammafn(b + 1.0) /
                    gammafn(a + b + 2.0);
      CAPTURE(a);
      CAPTURE(b);
      CHECK(mu0 == doctest::Approx(want).epsilon(1.0e-13));
    }
  }
  CHECK_THROWS_AS((void)gauss_jacobi(4, -1.0, 0.0), Error);
}

TEST_CASE("folded singular rules integrate monomials against the weight") {
  for (double sigma : {-0.49, -0.25, 0.6}) {
    QuadRule left = gauss_jacobi_left(8, sigma, 0.0, 1.0);
    QuadRule right = gauss_jacobi_right(8, sigma, 0.0, 1.0);
    for (int k = 0; k <= 15; ++k) {
      double gl = 0.0, gr = 0.0;
      for (std::size_t i = 0; i < left.size(); ++i) gl += left.w[i] * std::pow(left.x[i], k);
      for (std::size_t i = 0; i < right.size(); ++i) gr += right.w[i] * std::pow(right.x[i], k);
      // int_0^1 x^sigma x^k dx and int_0^1 (1-x)^sigma x^k dx
      double want_l = 1.0 / (k + sigma + 1.0);
      double want_r = gammafn(k + 1.0) * gammafn(sigma + 1.0) / gammafn(k + sigma + 2.0);
      CAPTURE(sigma);
      CAPTURE(k);
      CHECK(gl == doctest::Approx(want_l).epsilon(1.0e-12));
      CHECK(gr == doctest::Approx(want_r).epsilon(1.0e-12));
    }
  }

  // shifted interval: int_2^3.5 (x-2)^s (c0 + c1 x) dx
  double s = -0.4, len = 1.5;
  QuadRule r = gauss_jacobi_left(6, s, 2.0, 3.5);
  double got = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) got += r.w[i] * (0.7 + 1.3 * r.x[i]);
  double p1 = std::pow(len, s + 1.0) / (s + 1.0);
  double p2 = std::pow(len, s + 2.0) / (s + 2.0);
  CHECK(got == doctest::Approx(0.7 * p1 + 1.3 * (p2 + 2.0 * p1)).epsilon(1.0e-13));
}

TEST_CASE("uniform time grids have exact nodes and slab lookup") {
  TimeGrid g = TimeGrid::uniform(8, 1.0);
  CHECK(g.steps() == 8);
  CHECK(g.horizon() == 1.0);
  CHECK(g.node(3) == 0.375);
  CHECK(g.tau(5) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(g.is_uniform());
  CHECK(g.slab_of(0.0) == 1);
  CHECK(g.slab_of(0.375) == 3);
  CHECK(g.slab_of(0.3750001) == 4);
  CHECK(g.slab_of(1.0) == 8);

  TimeGrid irregular(std::vector<double>{0.0, 0.1, 0.5, 1.0});
  CHECK_FALSE(irregular.is_uniform());
  CHECK(irregular.slab_of(0.1) == 1);
  CHECK(irregular.slab_of(0.2) == 2);

  CHECK_THROWS_AS(TimeGrid(std::vector<double>{0.5, 1.0}), Error);
  CHECK_THROWS_AS(TimeGrid(std::vector<double>{0.0, 0.5, 0.5}), Error);
  CHECK_THROWS_AS(TimeGrid(std::vector<double>{0.0}), Error);
}

TEST_CASE("step functions evaluate by slab and expose jumps") {
  TimeGrid g(std::vector<double>{0.0, 0.25, 0.5, 1.0});
  ScalarStepFunction v(g, {2.0, 5.0, 3.0});
  CHECK(v.at(0.0) == 2.0);
  CHECK(v.at(0.25) == 2.0);
  CHECK(v.at(0.26) == 5.0);
  CHECK(v.at(1.0) == 3.0);
  std::vector<double> d = step_jumps(v);
  REQUIRE(d.size() == 3);
  CHECK(d[0] == 2.0);
  CHECK(d[1] == 3.0);
  CHECK(d[2] == -2.0);
}

TEST_CASE("convolution weights: uniform table against the direct formula") {
  double alpha = 0.4;
  TimeGrid g = TimeGrid::uniform(4, 1.0);
  WeightTable w(alpha, g);
  CHECK(w.toeplitz());
  CHECK(w(1, 1) == doctest::Approx(0.6473262700093445).epsilon(1.0e-14));
  CHECK(w(3, 1) == doctest::Approx(w(4, 2)).epsilon(1.0e-15));

  auto pos = [](double x) { return x > 0.0 ? x : 0.0; };
  double ig = 1.0 / gammafn(1.0 + alpha);
  for (std::size_t j = 1; j <= 4; ++j) {
    for (std::size_t i = 1; i <= j; ++i) {
      double tj = g.node(j), tj1 = g.node(j - 1), ti = g.node(i), ti1 = g.node(i - 1);
      double direct = ig * (std::pow(tj - ti1, alpha) - std::pow(pos(tj - ti), alpha) -
                            std::pow(pos(tj1 - ti1), alpha) + std::pow(pos(tj1 - ti), alpha));
      CAPTURE(j);
      CAPTURE(i);
      CHECK(w(j, i) == doctest::Approx(direct).epsilon(1.0e-13));
      if (i < j) CHECK(w(j, i) < 0.0);
    }
    CHECK(w.diag(j) > 0.0);
    CHECK(w.diag(j) == doctest::Approx(std::pow(g.tau(j), alpha) * ig).epsilon(1.0e-14));
  }
}

TEST_CASE("convolution weights: rows sum to the exact telescoped value") {
  for (double alpha : {0.25, 0.5, 0.75, 0.99}) {
    TimeGrid uni = TimeGrid::uniform(32, 2.0);
    TimeGrid irr(std::vector<double>{0.0, 0.1, 0.3, 0.35, 0.8, 1.0});
    for (const TimeGrid& g : {uni, irr}) {
      WeightTable w(alpha, g);
      for (std::size_t j = 1; j <= g.steps(); ++j) {
        std::vector<double> row(j);
        w.row(j, row.data());
        double sum = 0.0;
        for (std::size_t i = j; i-- > 0;) sum += row[i];
        CAPTURE(alpha);
        CAPTURE(j);
        CHECK(sum == doctest::Approx(w.row_sum_exact(j)).epsilon(1.0e-12));
        CHECK(row[j - 1] == doctest::Approx(w.diag(j)).epsilon(1.0e-15));
      }
    }
  }
}

TEST_CASE("convolution weights collapse to the classical scheme at order one") {
  TimeGrid g = TimeGrid::uniform(6, 1.5);
  WeightTable w(1.0, g);
  for (std::size_t j = 1; j <= 6; ++j) {
    CHECK(w.diag(j) == doctest::Approx(0.25).epsilon(1.0e-14));
    for (std::size_t i = 1; i < j; ++i)
      CHECK(w(j, i) == 0.0);
  }
  CHECK_THROWS_AS(WeightTable(0.0, g), Error);
  CHECK_THROWS_AS(WeightTable(1.2, g), Error);
}

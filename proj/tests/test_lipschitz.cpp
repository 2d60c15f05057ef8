#include <cmath>
#include <random>

#include "doctest.h"

#include "conelip/bounds.hpp"
#include "conelip/certify.hpp"
#include "conelip/errors.hpp"

using namespace conelip;

namespace {

ConvexMap abs_shift(double c) {
  return ConvexMap::max_affine({{{make_vector({1}), -c}, {make_vector({-1}), c}}}, Domain::whole(1));
}

ConvexMap sup_norm_map() {
  return ConvexMap::max_affine(
      {{{make_vector({1, 0}), 0}, {make_vector({-1, 0}), 0}, {make_vector({0, 1}), 0}, {make_vector({0, -1}), 0}}},
      Domain::whole(2));
}

ConvexMap coordinate_squares() {
  Matrix e1 = Matrix::Zero(2, 2), e2 = Matrix::Zero(2, 2);
  e1(0, 0) = 1;
  e2(1, 1) = 1;
  return ConvexMap::quadratic({{e1, Vector::Zero(2), 0.0}, {e2, Vector::Zero(2), 0.0}}, Domain::whole(2));
}

ConvexMap t_squared() { return ConvexMap::quadratic({{Matrix::Identity(1, 1), Vector::Zero(1), 0.0}}, Domain::whole(1)); }

// test-side pair sampler, independent of empirical_lipschitz
template <class F>
double sampled_slope(F&& ratio, int pairs, std::uint64_t seed, Eigen::Index n, double radius) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-radius, radius);
  double best = 0.0;
  for (int i = 0; i < pairs; ++i) {
    Vector x(n), y(n);
    for (Eigen::Index k = 0; k < n; ++k) {
      x[k] = u(rng);
      y[k] = u(rng);
    }
    best = std::max(best, ratio(x, y));
  }
  return best;
}

}  // namespace

TEST_CASE("scalar certificate for t squared") {
  auto phi = Section::scalar([](double t) { return t * t; });
  auto res = certify_1d(phi, -2, -1, 1, 2);
  REQUIRE_FALSE(refused(res));
  const auto& c = certificate(res);
  CHECK(c.constant == 3.0);
  CHECK(*c.inputs.A == -3.0);
  CHECK(*c.inputs.B == 3.0);
  double grid = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    double s = -1 + 2.0 * i / n, t = -1 + 2.0 * (i + 1) / n;
    grid = std::max(grid, std::abs(t * t - s * s) / (t - s));
  }
  CHECK(std::abs(grid - 2.0) <= 1e-3);
  CHECK(grid <= c.constant);
  CHECK_THROWS_AS(certify_1d(phi, -1, -2, 1, 2), InputError);
}

TEST_CASE("scalar certificate for affine and constant sections") {
  auto aff = certify_1d(Section::scalar([](double t) { return -2.5 * t + 1; }), 0, 1, 2, 3);
  CHECK(certificate(aff).constant == doctest::Approx(2.5).epsilon(1e-14));
  auto cst = certify_1d(Section::scalar([](double) { return 4.0; }), 0, 1, 2, 3);
  CHECK(certificate(cst).constant == 0.0);
}

TEST_CASE("scalar certificate refuses a concave section") {
  auto res = certify_1d(Section::scalar([](double t) { return -t * t; }), -2, -1, 1, 2);
  CHECK(refused(res));
}

TEST_CASE("ball certificate for the sup norm") {
  auto f = sup_norm_map();
  auto p = SeminormSpec::sup_norm(2);
  auto res = certify_ball(f, SeminormSpec::abs(), p, make_vector({0, 0}), 1, 0.5, 1.0);
  REQUIRE_FALSE(refused(res));
  const auto& c = certificate(res);
  CHECK(c.constant == 4.0);
  double emp = sampled_slope(
      [&](const Vector& x, const Vector& y) { return std::abs(f.scalar(x) - f.scalar(y)) / p(x - y); }, 20000, 3, 2,
      0.5);
  CHECK(emp <= 1.0 + 1e-12);
  CHECK(emp > 0.9);
  auto e = empirical_lipschitz(f, c.region, SeminormSpec::abs(), p, 10000, 1);
  CHECK(e.max_ratio <= 1.0 + 1e-12);
}

TEST_CASE("ball certificate computes beta when omitted") {
  auto res = certify_ball(sup_norm_map(), SeminormSpec::abs(), SeminormSpec::sup_norm(2), make_vector({0, 0}), 1, 0.5);
  const auto& c = certificate(res);
  CHECK(c.inputs.beta_certified);
  CHECK(*c.inputs.beta == doctest::Approx(1.0));
  CHECK(c.constant == doctest::Approx(4.0));
}

TEST_CASE("zero map gets a zero constant") {
  auto zero = ConvexMap::max_affine({{{make_vector({0, 0}), 0.0}}}, Domain::whole(2));
  auto res = certify_ball(zero, SeminormSpec::abs(), SeminormSpec::sup_norm(2), make_vector({0, 0}), 1, 0.5);
  CHECK(certificate(res).constant == 0.0);
}

TEST_CASE("vector ball certificate with a full gauge") {
  auto f = coordinate_squares();
  auto q = SeminormSpec::sup_ball_gauge(2);
  auto p = SeminormSpec::sup_norm(2);
  auto res = certify_ball(f, q, p, make_vector({0, 0}), 1, 0.5, 1.0);
  const auto& c = certificate(res);
  CHECK(c.constant == 4.0);
  double emp = sampled_slope([&](const Vector& x, const Vector& y) { return q(f(x) - f(y)) / p(x - y); }, 20000, 4, 2,
                             0.5);
  CHECK(emp <= 4.0);
  CHECK(emp <= 1.0 + 1e-12);
}

TEST_CASE("ball certificate preconditions") {
  auto f = sup_norm_map();
  auto p = SeminormSpec::sup_norm(2);
  CHECK_THROWS_AS(certify_ball(f, SeminormSpec::abs(), p, make_vector({0, 0}), 1, 1), InputError);
  CHECK_THROWS_AS(certify_ball(f, SeminormSpec::abs(), p, make_vector({0, 0}), 1, 0), InputError);
  auto boxed = ConvexMap::max_affine({{{make_vector({1, 0}), 0}}}, Domain::box(make_vector({-1, -1}), make_vector({1, 1})));
  CHECK_THROWS_AS(certify_ball(boxed, SeminormSpec::abs(), p, make_vector({0, 0}), 2, 1), InputError);
  // a weighted l1 norm with two positive weights is not full for the orthant
  CHECK_THROWS_AS(certify_ball(coordinate_squares(), SeminormSpec::l1_norm(2), p, make_vector({0, 0}), 1, 0.5),
                  InputError);
}

TEST_CASE("understated beta is refused with a witness") {
  auto res = certify_ball(sup_norm_map(), SeminormSpec::abs(), SeminormSpec::sup_norm(2), make_vector({0, 0}), 2, 1,
                          0.5);
  REQUIRE(refused(res));
  const auto& r = std::get<Refusal>(res);
  REQUIRE(r.witness);
  CHECK(r.observed > r.bound);
  CHECK(sup_norm_map().scalar(*r.witness) > 0.5);
}

TEST_CASE("constant grows with the inner radius") {
  auto f = sup_norm_map();
  auto p = SeminormSpec::sup_norm(2);
  double prev = 0.0;
  for (double r : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    double L = certificate(certify_ball(f, SeminormSpec::abs(), p, make_vector({0, 0}), 1, r, 1.0)).constant;
    CHECK(L == doctest::Approx(2.0 / (1 - r)));
    CHECK(L > prev);
    prev = L;
  }
}

TEST_CASE("degenerate directions of a seminorm with kernel") {
  // f depends on x1 only, p ignores x2
  auto f = ConvexMap::max_affine({{{make_vector({1, 0}), 0}, {make_vector({-1, 0}), 0}}}, Domain::whole(2));
  auto p = SeminormSpec::weighted_sup(make_vector({1, 0}));
  auto res = certify_ball(f, SeminormSpec::abs(), p, make_vector({0, 0}), 1, 0.5);
  REQUIRE_FALSE(refused(res));
  auto e = empirical_lipschitz(f, certificate(res).region, SeminormSpec::abs(), p, 10000, 2);
  CHECK(e.degenerate_pairs > 0);
  CHECK(e.degenerate_max_gap <= 1e-9);
  CHECK(e.max_ratio <= certificate(res).constant);
}

TEST_CASE("compact cover for t squared") {
  auto f = t_squared();
  auto p = SeminormSpec::abs();
  std::vector<Vector> cloud;
  for (int i = 0; i <= 100; ++i) cloud.push_back(make_vector({-1 + 0.02 * i}));
  auto left = certificate(certify_ball(f, p, p, make_vector({-0.5}), 1.5, 0.6));
  auto right = certificate(certify_ball(f, p, p, make_vector({0.5}), 1.0, 0.6));
  auto res = certify_compact(f, cloud, {left, right});
  REQUIRE_FALSE(refused(res));
  const auto& c = certificate(res);
  CHECK(c.constant == std::max(left.constant, right.constant));
  double worst = 0.0;
  for (const auto& x : cloud)
    for (const auto& y : cloud)
      if (x[0] != y[0]) worst = std::max(worst, std::abs(f.scalar(x) - f.scalar(y)) / std::abs(x[0] - y[0]));
  CHECK(worst <= c.constant);
  CHECK(worst == doctest::Approx(2.0).epsilon(0.02));

  auto single = certificate(certify_ball(f, p, p, make_vector({0}), 2, 1.5));
  CHECK(certificate(certify_compact(f, cloud, {single})).constant == single.constant);

  auto gap = certificate(certify_ball(f, p, p, make_vector({-0.5}), 1, 0.4));
  CHECK_THROWS_AS(certify_compact(f, cloud, {gap}), InputError);
}

TEST_CASE("compact cover for an affine map") {
  auto f = ConvexMap::max_affine({{{make_vector({-1.5}), 2.0}}}, Domain::whole(1));
  auto p = SeminormSpec::abs();
  std::vector<Vector> cloud{make_vector({-1}), make_vector({0}), make_vector({1})};
  auto a = certificate(certify_ball(f, p, p, make_vector({-0.5}), 2, 1));
  auto b = certificate(certify_ball(f, p, p, make_vector({0.5}), 2, 1));
  CHECK(certificate(certify_compact(f, cloud, {a, b})).constant == std::max(a.constant, b.constant));
}

TEST_CASE("o-Lipschitz certificate for coordinate squares") {
  auto f = coordinate_squares();
  auto res = certify_o_lipschitz(f, make_vector({0, 0}), 1, 0.5, make_vector({1, 1}));
  const auto& c = certificate(res);
  REQUIRE(c.lattice_constant);
  CHECK(*c.lattice_constant == make_vector({4, 4}));
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  for (int i = 0; i < 5000; ++i) {
    Vector x = make_vector({u(rng), u(rng)}), y = make_vector({u(rng), u(rng)});
    double d = (x - y).cwiseAbs().maxCoeff();
    for (int k = 0; k < 2; ++k) CHECK(std::abs(x[k] * x[k] - y[k] * y[k]) <= 4 * d + 1e-12);
  }
  double ratio = o_lipschitz_coordinate_ratio(c, evaluator_of(f), 10000, 1);
  CHECK(ratio <= 1.0 + 1e-9);
  auto e = empirical_lipschitz(f, c.region, SeminormSpec::sup_norm(2), SeminormSpec::sup_norm(2), 10000, 1);
  CHECK(e.max_ratio <= c.lattice_constant->maxCoeff() * (1 + 1e-9));
}

TEST_CASE("o-Lipschitz certificate edge cases") {
  auto zero = ConvexMap::max_affine({{{make_vector({0, 0}), 0.0}}, {{make_vector({0, 0}), 0.0}}}, Domain::whole(2));
  auto z = certificate(certify_o_lipschitz(zero, make_vector({0, 0}), 1, 0.5, make_vector({0, 0})));
  CHECK(*z.lattice_constant == make_vector({0, 0}));
  CHECK(refused(certify_o_lipschitz(coordinate_squares(), make_vector({0, 0}), 1, 0.5, make_vector({0.5, 1}))));
  CHECK_THROWS_AS(certify_o_lipschitz(coordinate_squares(), make_vector({0, 0}), 1, 0.5, make_vector({-1, 1})),
                  InputError);
  // scalar target: same constant as the ball formula with beta = z
  auto s = sup_norm_map();
  auto o = certificate(certify_o_lipschitz(s, make_vector({0, 0}), 1, 0.5, make_vector({1})));
  auto b = certificate(certify_ball(s, SeminormSpec::abs(), SeminormSpec::sup_norm(2), make_vector({0, 0}), 1, 0.5, 1.0));
  CHECK((*o.lattice_constant)[0] == b.constant);
}

TEST_CASE("equi-Lipschitz family of shifted absolute values") {
  std::vector<ConvexMap> fam;
  for (int k = 1; k <= 100; ++k) fam.push_back(abs_shift(1.0 / k));
  auto p = SeminormSpec::abs();
  auto res = certify_equi(fam, p, p, make_vector({0}), 2, 1);
  const auto& c = certificate(res);
  CHECK(*c.inputs.beta <= 3.0 + 1e-12);
  CHECK(c.constant == doctest::Approx(6.0));
  CHECK(c.inputs.piece_constants.size() == 100);
  for (const auto& f : fam) {
    double worst = 0.0;
    for (int i = 0; i < 400; ++i) {
      double s = -1 + i / 200.0, t = s + 1 / 200.0;
      worst = std::max(worst, std::abs(f.scalar(make_vector({t})) - f.scalar(make_vector({s}))) / (t - s));
    }
    CHECK(worst <= 1.0 + 1e-12);
  }
}

TEST_CASE("equi family edge cases") {
  auto p = SeminormSpec::abs();
  auto one = std::vector<ConvexMap>{abs_shift(0.3)};
  auto e = certificate(certify_equi(one, p, p, make_vector({0}), 2, 1));
  auto b = certificate(certify_ball(one[0], p, p, make_vector({0}), 2, 1));
  CHECK(e.constant == b.constant);

  std::vector<ConvexMap> lines;
  for (double c : {-1.0, -0.4, 0.0, 0.7, 1.0}) lines.push_back(ConvexMap::max_affine({{{make_vector({c}), 0.0}}}, Domain::whole(1)));
  double R = 3, r = 1;
  CHECK(certificate(certify_equi(lines, p, p, make_vector({0}), R, r)).constant == doctest::Approx(2 * R / (R - r)));

  CHECK_THROWS_AS(certify_equi({}, p, p, make_vector({0}), 2, 1), InputError);
  std::vector<ConvexMap> mixed{abs_shift(0), ConvexMap::nonconvex_control({{Matrix::Identity(1, 1), Vector::Zero(1), 0.0}}, Domain::whole(1))};
  auto bad = certify_equi(mixed, p, p, make_vector({0}), 2, 1);
  REQUIRE(refused(bad));
  CHECK(*std::get<Refusal>(bad).member == 1);
}

TEST_CASE("equi certification is deterministic") {
  std::vector<ConvexMap> fam;
  for (int k = 1; k <= 20; ++k) fam.push_back(abs_shift(0.05 * k));
  auto p = SeminormSpec::abs();
  auto a = certificate(certify_equi(fam, p, p, make_vector({0}), 2, 1));
  auto b = certificate(certify_equi(fam, p, p, make_vector({0}), 2, 1));
  CHECK(a.constant == b.constant);
  CHECK(a.inputs.piece_constants == b.inputs.piece_constants);
}

TEST_CASE("empirical oracle values") {
  auto p = SeminormSpec::abs();
  auto region = CertRegion::ball(make_vector({0}), 1, p);
  auto e = empirical_lipschitz(t_squared(), region, p, p, 10000, 1);
  CHECK(e.max_ratio <= 2.0);
  CHECK(e.max_ratio > 1.99);
  auto cst = ConvexMap::max_affine({{{make_vector({0}), 5.0}}}, Domain::whole(1));
  CHECK(empirical_lipschitz(cst, region, p, p, 1000, 1).max_ratio == 0.0);
  auto aff = ConvexMap::max_affine({{{make_vector({3}), 1.0}}}, Domain::whole(1));
  CHECK(empirical_lipschitz(aff, region, p, p, 1000, 1).max_ratio == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("beta bound methods") {
  auto b = beta_bound(sup_norm_map(), SeminormSpec::abs(), SeminormSpec::sup_norm(2), make_vector({0, 0}), 1);
  CHECK(b.certified);
  CHECK(b.value == doctest::Approx(1.0));
  auto q = beta_bound(coordinate_squares(), SeminormSpec::sup_ball_gauge(2), SeminormSpec::sup_norm(2),
                      make_vector({0, 0}), 1);
  CHECK(q.certified);
  CHECK(q.value >= 1.0 - 1e-12);
}

TEST_CASE("fullness") {
  CHECK(check_fullness(SeminormSpec::sup_norm(3), PolyCone::orthant(3)).full);
  CHECK(check_fullness(SeminormSpec::sup_norm(3), PolyCone::orthant(3)).exact);
  auto l1 = check_fullness(SeminormSpec::l1_norm(2), PolyCone::orthant(2));
  CHECK_FALSE(l1.full);
  REQUIRE(l1.witness);
}

TEST_CASE("oracle attachment reports domination") {
  auto res = certify_ball(sup_norm_map(), SeminormSpec::abs(), SeminormSpec::sup_norm(2), make_vector({0, 0}), 1, 0.5);
  auto c = attach_oracle(certificate(res), {evaluator_of(sup_norm_map())}, 5000, 3);
  REQUIRE(c.oracle);
  CHECK(c.oracle->dominated);
  CHECK(c.oracle->pairs == 5000);
  CHECK(c.oracle->seed == 3);
}

TEST_CASE("map moving along the kernel of p is refused") {
  // B_p[0, 1] is a slab unbounded in x1, where f(x) = |x1| has no bound
  auto f = ConvexMap::max_affine({{{make_vector({1, 0}), 0}, {make_vector({-1, 0}), 0}}}, Domain::whole(2));
  auto p = SeminormSpec::weighted_sup(make_vector({0, 1}));
  auto res = certify_ball(f, SeminormSpec::abs(), p, make_vector({0, 0}), 1, 0.5);
  REQUIRE(refused(res));
  const auto& r = std::get<Refusal>(res);
  REQUIRE(r.witness);
  CHECK(p(*r.witness) <= 1.0);
  CHECK(f.scalar(*r.witness) > 1e3);
  CHECK(refused(certify_ball(f, SeminormSpec::abs(), p, make_vector({0, 0}), 1, 0.5, 10.0)));
  auto g = ConvexMap::max_affine({{{make_vector({0, 1}), 0}, {make_vector({0, -1}), 0}}}, Domain::whole(2));
  auto e = certify_equi({g, f}, SeminormSpec::abs(), p, make_vector({0, 0}), 1, 0.5);
  REQUIRE(refused(e));
  CHECK(*std::get<Refusal>(e).member == 1);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "recmahler/error.hpp"
#include "recmahler/transform.hpp"

using namespace recmahler;

namespace {

LinearRecurrence rec(std::vector<long> c, std::vector<long> init) {
  return LinearRecurrence::make(std::vector<BigInt>(c.begin(), c.end()), std::vector<BigInt>(init.begin(), init.end()));
}

IntMatrix mat(std::vector<std::vector<long>> m) {
  IntMatrix out;
  for (auto& r : m) out.emplace_back(r.begin(), r.end());
  return out;
}

OmegaTransform fib_omega() { return OmegaTransform::companion(rec({1, 1}, {1, 2})); }

MPoint point(std::vector<Rat> c, Place p = Place::infinity()) { return MPoint{std::move(c), p}; }

}  // namespace

TEST_CASE("companion matrix") {
  CHECK(fib_omega().matrix() == mat({{1, 1}, {1, 0}}));
  CHECK(OmegaTransform::companion(rec({2, 0, 1}, {1, 0, 0})).matrix() == mat({{2, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
  CHECK(fib_omega().power(3) == mat({{3, 2}, {2, 1}}));
  CHECK(fib_omega().char_poly() == rec({1, 1}, {1, 2}).char_poly());
  CHECK(OmegaTransform::companion(rec({2, 0, 1}, {1, 0, 0})).char_poly() == rec({2, 0, 1}, {1, 0, 0}).char_poly());
}

TEST_CASE("apply") {
  const Rat a(1, 3);
  const auto o = fib_omega();
  CHECK(apply(o, point({1, a}), 1).coords == std::vector<Rat>{a, 1});
  CHECK(apply(o, point({1, a}), 3).coords == std::vector<Rat>{a * a, a});
  CHECK(apply(o, point({Rat(5, 7), a}), 0).coords == std::vector<Rat>{Rat(5, 7), a});
  CHECK(apply(o, point({-1, Rat(-2)}), 2).coords == std::vector<Rat>{Rat(-2), Rat(2)});
  CHECK_THROWS_AS(apply(o, point({1, 2}), 40, 1000), Error);
  CHECK_THROWS_AS(apply(o, point({0, 2}), 1), Error);
  CHECK_THROWS_AS(apply(o, point({1}), 1), Error);
}

TEST_CASE("semigroup law of the action") {
  std::mt19937_64 rng(1);
  const auto o = OmegaTransform::companion(rec({1, 0, 1}, {1, 1, 1}));
  for (int i = 0; i < 30; ++i) {
    const std::size_t a = rng() % 12, b = rng() % 12;
    MPoint z = point({make_rat(static_cast<long>(rng() % 5) + 1, 3), make_rat(-2, static_cast<long>(rng() % 4) + 1), Rat(7, 5)});
    CHECK(apply(o, z, a + b).coords == apply(o, apply(o, z, b), a).coords);
  }
}

TEST_CASE("monomial exponents follow the action of Omega^k") {
  const auto r = rec({1, 1}, {1, 2});
  CHECK(monomial_exponents(r, 0) == std::vector<BigInt>{2, 1});
  CHECK(monomial_exponents(r, 3) == std::vector<BigInt>{8, 5});
  std::mt19937_64 rng(8);
  for (int t = 0; t < 5; ++t) {
    const std::size_t n = 2 + rng() % 3;
    std::vector<long> c(n), init(n);
    for (auto& x : c) x = static_cast<long>(rng() % 3);
    c.front() = 1;
    c.back() = 1;
    for (auto& x : init) x = 1 + static_cast<long>(rng() % 4);
    const auto rr = rec(c, init);
    const auto o = OmegaTransform::companion(rr);
    const auto e = monomial_exponents(rr, 0);
    for (std::size_t k = 0; k <= 60; ++k) {
      // e^T Omega^k
      const IntMatrix W = o.power(k);
      std::vector<BigInt> row(n, 0);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) row[j] += e[i] * W[i][j];
      CHECK(row == monomial_exponents(rr, k));
    }
  }
}

TEST_CASE("check_I") {
  CHECK(check_I(fib_omega()).verdict == Verdict::Pass);
  CHECK(check_I(OmegaTransform(mat({{0, 1}, {1, 0}}))).verdict == Verdict::Fail);
  const Clause singular = check_I(OmegaTransform(mat({{1, 1}, {0, 0}})));
  CHECK(singular.verdict == Verdict::Fail);
  CHECK(singular.evidence.find("det=0") != std::string::npos);
}

TEST_CASE("check_II") {
  CHECK(check_II(fib_omega(), 60).verdict == Verdict::Pass);
  CHECK(check_II(OmegaTransform(mat({{1, 1}, {0, 1}})), 60).verdict == Verdict::Fail);
  const auto rep = check_omega(OmegaTransform(mat({{1, 1}, {0, 1}})), point({1, Rat(1, 2)}));
  CHECK(rep.clauses[1].evidence.find("not evaluated") != std::string::npos);
}

TEST_CASE("check_III") {
  const auto o = fib_omega();
  const auto r = check_III(o, point({1, Rat(1, 2)}), 60);
  CHECK(r.clause.verdict == Verdict::Pass);
  // -log|z_2^(k)| = F_{k-1} log 2 and F_{k-1}/phi^k -> 1/(sqrt5 phi)
  const double phi = (1 + std::sqrt(5.0)) / 2;
  CHECK(std::abs(r.c - std::log(2.0) / (std::sqrt(5.0) * phi)) < 1e-6);
  CHECK(check_III(o, point({1, 2}), 60).clause.verdict == Verdict::Fail);
  CHECK(check_III(o, point({1, 2}, Place::prime(2)), 60).clause.verdict == Verdict::Pass);
}

TEST_CASE("check_IV cofactor route") {
  const auto r = check_IV(fib_omega(), point({1, 2}, Place::prime(2)));
  CHECK(r.method == "cofactor-test");
  CHECK(r.clause.verdict == Verdict::Pass);
  CHECK(r.clause.evidence.find("A_i1 = -1.618033989e+00 -1.000000000e+00") != std::string::npos);
  // a point with |z|_p > 1 does not satisfy the sufficient condition
  CHECK(check_IV(fib_omega(), point({1, Rat(1, 2)}, Place::prime(2))).clause.verdict == Verdict::Unknown);
}

TEST_CASE("check_IV bounded relation search") {
  const auto r = check_IV(fib_omega(), point({1, Rat(1, 2)}));
  CHECK(r.method == "masser-search");
  CHECK(r.clause.verdict == Verdict::Pass);
  const auto ones = check_IV(fib_omega(), point({1, 1}));
  CHECK(ones.clause.verdict == Verdict::Fail);
  CHECK(ones.witness == std::vector<BigInt>{0, 1});
  // z = (4, 2): z1^(k) = 2^{2F_{k+1}+F_k}, z2^(k) = 2^{2F_k+F_{k-1}}, no fixed relation
  CHECK(check_IV(fib_omega(), point({4, 2})).clause.verdict == Verdict::Pass);
  // z = (-1, 1): z1^(k) = (-1)^{F_{k+1}}, and its square is 1
  const auto sign = check_IV(fib_omega(), point({-1, 1}));
  CHECK(sign.clause.verdict == Verdict::Fail);
  // (2, 3) has two independent bases; still exact through the coprime base
  CHECK(check_IV(fib_omega(), point({Rat(2), Rat(3)})).clause.verdict == Verdict::Pass);
}

TEST_CASE("cofactor route agrees with the direct checks on companion matrices") {
  for (auto [c, z] : std::vector<std::pair<std::vector<long>, std::vector<Rat>>>{
           {{1, 1}, {1, 2}}, {{2, 1}, {1, 2}}, {{1, 0, 1}, {1, 1, 2}}, {{1, 1, 1}, {2, 1, 2}}}) {
    const auto r = rec(c, std::vector<long>(c.size(), 1));
    if (check_condition(r, Place::prime(2)).overall != Verdict::Pass) continue;
    const auto o = OmegaTransform::companion(r);
    const MPoint p = point(z, Place::prime(2));
    const auto iv = check_IV(o, p);
    CHECK(check_I(o).verdict == Verdict::Pass);
    CHECK(check_II(o).verdict == Verdict::Pass);
    if (iv.clause.verdict == Verdict::Pass) CHECK(check_III(o, p).clause.verdict == Verdict::Pass);
  }
}

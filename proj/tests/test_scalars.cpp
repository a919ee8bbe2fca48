#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <random>

#include "recmahler/backend.hpp"
#include "recmahler/bijet.hpp"
#include "recmahler/height.hpp"

using namespace recmahler;

namespace {

Rat q(const char* s) { return parse_rat(s); }

Rat random_rat(std::mt19937_64& rng, long range = 50) {
  std::uniform_int_distribution<long> num(-range, range), den(1, range);
  return make_rat(num(rng), den(rng));
}

}  // namespace

TEST_CASE("rationals print as n/d and parse back") {
  CHECK(to_string(q("6/4")) == "3/2");
  CHECK(to_string(q("-5")) == "-5");
  CHECK_THROWS_AS(parse_rat("1/0"), Error);
  CHECK_THROWS_AS(parse_rat("x"), Error);
  CHECK(valuation(q("5/6"), 3) == -1);
  CHECK(multinomial(1, 2, 3) == 60);
}

TEST_CASE("padic_abs") {
  CHECK(padic_abs(Rat(12), 2) == q("1/4"));
  CHECK(padic_abs(q("5/6"), 3) == Rat(3));
  CHECK(padic_abs(Rat(7), 5) == Rat(1));
  CHECK(padic_abs(Rat(0), 5) == Rat(0));
}

TEST_CASE("height and norm") {
  CHECK(height(q("3/7")).norm == Rat(7));
  CHECK(height(Rat(-5)).norm == Rat(5));
  const Height z = height(Rat(0));
  CHECK(z.house == Rat(0));
  CHECK(z.den == 1);
  CHECK(z.norm == Rat(1));
}

TEST_CASE("norm is submultiplicative and nearly subadditive") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const Rat a = random_rat(rng), b = random_rat(rng);
    const Rat na = height(a).norm, nb = height(b).norm;
    CHECK(height(a * b).norm <= na * nb);
    CHECK(height(a + b).norm <= 2 * na * nb);
  }
}

TEST_CASE("liouville_check") {
  CHECK(liouville_check(q("3/7"), Place::infinity()));
  CHECK(liouville_check(Rat(8), Place::prime(2)));
  CHECK(liouville_check(q("1/2"), Place::infinity()));
  CHECK_THROWS_AS(liouville_check(Rat(0), Place::infinity()), Error);
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const Rat a = random_rat(rng, 1000);
    if (sgn(a) == 0) continue;
    CHECK(liouville_check(a, Place::infinity()));
    CHECK(liouville_check(a, Place::prime(3)));
  }
}

TEST_CASE("place parsing") {
  CHECK(Place::parse("inf").is_infinite());
  CHECK(Place::parse("p:7").p() == 7);
  CHECK(Place::parse("5").p() == 5);
  CHECK_THROWS_AS(Place::parse("p:4"), Error);
  CHECK_THROWS_AS(Place::parse("x"), Error);
}

TEST_CASE("complex balls enclose the exact value") {
  const ComplexBall third = ComplexBall::from_rat(q("1/3"), 128);
  CHECK_FALSE(third.rad().value().is_zero());
  const ComplexBall one = third * ComplexBall::from_rat(Rat(3), 128);
  CHECK(one.overlaps(ComplexBall::from_rat(Rat(1), 128)));
  CHECK(ComplexBall::from_rat(Rat(2), 128).is_exact_zero() == false);
  CHECK((ComplexBall::from_rat(Rat(2), 128) - ComplexBall::from_rat(Rat(2), 128)).is_exact_zero());
  CHECK_THROWS_AS(ComplexBall(128).inverse(), Error);
  const ComplexBall inv = ComplexBall::from_rat(q("3/7"), q("-2/5"), 128).inverse();
  // 1/(3/7 - 2i/5) = (3/7 + 2i/5) / (9/49 + 4/25)
  const Rat n = q("9/49") + q("4/25");
  CHECK(inv.overlaps(ComplexBall::from_rat(q("3/7") / n, q("2/5") / n, 128)));
}

// Random expression trees evaluated at P and 2P: the 2P midpoint must lie in
// the P ball.
TEST_CASE("ball error radii are sound under precision doubling") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::pair<Rat, Rat>> leaves;
    for (int i = 0; i < 6; ++i) leaves.emplace_back(random_rat(rng), random_rat(rng));
    std::vector<int> ops;
    for (int i = 0; i < 12; ++i) ops.push_back(static_cast<int>(rng() % 4));
    auto run = [&](mpfr_prec_t prec) {
      std::vector<ComplexBall> stack;
      for (auto& [re, im] : leaves) stack.push_back(ComplexBall::from_rat(re, im, prec));
      std::size_t pick = 0;
      ComplexBall acc = stack[0];
      for (int op : ops) {
        const ComplexBall& b = stack[++pick % stack.size()];
        switch (op) {
          case 0: acc += b; break;
          case 1: acc -= b; break;
          case 2: acc *= b; break;
          default:
            if (!b.contains_zero()) acc *= b.inverse();
            break;
        }
      }
      return acc;
    };
    const ComplexBall lo = run(96), hi = run(192);
    CHECK(distance_upper(lo.midpoint(), hi.midpoint()) <= lo.rad() + hi.rad());
  }
}

TEST_CASE("p-adic arithmetic matches exact rationals modulo p^P") {
  std::mt19937_64 rng(5);
  for (long p : {2L, 3L, 7L}) {
    for (int i = 0; i < 200; ++i) {
      Rat a = random_rat(rng), b = random_rat(rng);
      if (sgn(a) == 0 || sgn(b) == 0) continue;
      // keep valuations >= 0
      a = Rat(a.get_num()) / Rat(a.get_den() / gcd(BigInt(a.get_den()), BigInt(p * p * p * p * p * p)));
      const PAdic pa = PAdic::from_rat(a, p, 20), pb = PAdic::from_rat(b, p, 20);
      CHECK((pa + pb).agrees_with(a + b));
      CHECK((pa - pb).agrees_with(a - b));
      CHECK((pa * pb).agrees_with(a * b));
      CHECK(pb.inverse().agrees_with(Rat(1) / b));
    }
  }
  const PAdic eight = PAdic::from_rat(Rat(8), 2, 10);
  CHECK(eight.valuation() == 3);
  CHECK((eight - eight).zero());
  CHECK((eight - eight).abs_prec() == 13);
  CHECK_THROWS_AS((eight - eight).inverse(), Error);
}

TEST_CASE("jet_mul") {
  const ExactContext ctx;
  const auto x = coordinate_jet<Rat>(2, 2, true, Rat(0), ctx);
  const auto y = coordinate_jet<Rat>(2, 2, false, Rat(0), ctx);
  const auto xy = x * y;
  CHECK(xy.at(1, 1) == 1);
  CHECK(xy.at(0, 0) == 0);
  CHECK(xy.at(1, 0) == 0);

  const auto one = BiJet<Rat>::constant(0, 2, Rat(1), Rat(0));
  const auto yy = coordinate_jet<Rat>(0, 2, false, Rat(0), ctx);
  const auto prod = (one - yy) * (one + yy + yy * yy);
  CHECK(prod.at(0, 0) == 1);
  CHECK(prod.at(0, 1) == 0);
  CHECK(prod.at(0, 2) == 0);

  const auto one_x = BiJet<Rat>::constant(1, 0, Rat(1), Rat(0)) + coordinate_jet<Rat>(1, 0, true, Rat(0), ctx);
  const auto sq = one_x * one_x;
  CHECK(sq.at(0, 0) == 1);
  CHECK(sq.at(1, 0) == 2);

  CHECK_THROWS_AS(x * BiJet<Rat>(1, 1, Rat(0)), Error);
}

TEST_CASE("jet_recip") {
  const ExactContext ctx;
  const auto one = BiJet<Rat>::constant(0, 2, Rat(1), Rat(0));
  const auto y = coordinate_jet<Rat>(0, 2, false, Rat(0), ctx);
  const auto r = (one - y).recip();
  CHECK(r.at(0, 0) == 1);
  CHECK(r.at(0, 1) == 1);
  CHECK(r.at(0, 2) == 1);
  CHECK(BiJet<Rat>::constant(1, 1, Rat(2), Rat(0)).recip().at(0, 0) == q("1/2"));
  CHECK_THROWS_AS(y.recip(), Error);

  const ComplexContext cctx{200};
  const ComplexBall zero = Backend<ComplexBall>::from_rat(Rat(0), cctx);
  auto a = BiJet<ComplexBall>::constant(3, 3, ComplexBall::from_rat(q("2/3"), cctx.bits), zero);
  a += coordinate_jet<ComplexBall>(3, 3, true, q("1/5"), cctx) * coordinate_jet<ComplexBall>(3, 3, false, q("-1/7"), cctx);
  const auto round_trip = a * a.recip();
  for (int l = 0; l <= 3; ++l)
    for (int m = 0; m <= 3; ++m)
      CHECK(round_trip.at(l, m).overlaps(ComplexBall::from_rat(Rat(l == 0 && m == 0 ? 1 : 0), cctx.bits)));

  const PAdicContext pctx{3, 30};
  const PAdic pzero = Backend<PAdic>::from_rat(Rat(0), pctx);
  auto pa = BiJet<PAdic>::constant(2, 2, PAdic::from_rat(q("2/5"), 3, 30), pzero);
  pa += coordinate_jet<PAdic>(2, 2, true, Rat(3), pctx);
  const auto pr = pa * pa.recip();
  CHECK(pr.at(0, 0).agrees_with(Rat(1)));
  CHECK(pr.at(1, 0).agrees_with(Rat(0)));
  CHECK(pr.at(2, 1).agrees_with(Rat(0)));
}

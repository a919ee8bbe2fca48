#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "recmahler/error.hpp"
#include "recmahler/functions.hpp"

using namespace recmahler;

namespace {

LinearRecurrence rec(std::vector<long> c, std::vector<long> init) {
  return LinearRecurrence::make(std::vector<BigInt>(c.begin(), c.end()), std::vector<BigInt>(init.begin(), init.end()));
}

// R_k = F_{k+2}: 1, 2, 3, 5, 8, ...
LinearRecurrence fib2() { return rec({1, 1}, {1, 2}); }

FunctionInstance inst(FunctionId id, Rat a = Rat(1, 2), Place place = Place::infinity()) {
  return FunctionInstance{fib2(), a, place, id};
}

const Precision kP{256, 64};

// exact q lies in the ball
bool holds(const ComplexBall& b, const Rat& q) {
  return b.overlaps(ComplexBall::from_rat(q, 2048));
}

bool close(const ComplexBall& a, const ComplexBall& b) { return a.overlaps(b); }

const ComplexBall& ball(const EvalResult& r, int l = 0, int m = 0) { return r.complex().at(l, m); }

Rat ak(const LinearRecurrence& R, const Rat& a, std::size_t k) { return pow(a, R.term(k).get_ui()); }

// Direct partial sums, written independently of the evaluator's kernels.
// Terms with R_k > 4096 are dropped; for |x| <= 1 and a = 1/2 they weigh
// less than 2^-4000, which oracle() adds to the radius.
std::size_t cap(const LinearRecurrence& R, std::size_t K) {
  std::size_t k = 0;
  while (k < K && R.term(k + 1) <= 4096) ++k;
  return k;
}

ComplexBall oracle(const Rat& q) { return ComplexBall::from_rat(q, 512).add_error(Bound::pow2(-4000)); }

Rat direct_F(const LinearRecurrence& R, const Rat& a, const Rat& x, std::size_t K) {
  Rat s = 0;
  K = cap(R, K);
  for (std::size_t k = 0; k <= K; ++k) s += ak(R, a, k) * pow(x, k);
  return s;
}

Rat direct_G(const LinearRecurrence& R, const Rat& a, const Rat& y, std::size_t K) {
  Rat s = 1;
  K = cap(R, K);
  for (std::size_t k = 0; k <= K; ++k) s *= 1 - ak(R, a, k) * y;
  return s;
}

Rat direct_H(const LinearRecurrence& R, const Rat& a, const Rat& x, const Rat& y, std::size_t K) {
  Rat s = 0;
  K = cap(R, K);
  for (std::size_t k = 0; k <= K; ++k) s += ak(R, a, k) * pow(x, k) / (1 - ak(R, a, k) * y);
  return s;
}

Rat direct_Theta(const LinearRecurrence& R, const Rat& a, const Rat& x, const Rat& y, std::size_t K) {
  Rat s = 0;
  K = cap(R, K);
  for (std::size_t k = 0; k <= K; ++k) {
    Rat prod = 1;
    for (std::size_t j = 0; j <= K; ++j)
      if (j != k) prod *= 1 - ak(R, a, j) * y;
    s += ak(R, a, k) * pow(x, k) * prod;
  }
  return s;
}

Bound bits(long e) { return Bound::pow2(e); }

}  // namespace

TEST_CASE("F at a=1/2 agrees with a long exact partial sum") {
  const auto r = eval_F(inst(FunctionId::F), Rat(1), kP);
  CHECK(r.tail < bits(-200));
  // oracle: 120 terms at 512 bits
  const auto expected = oracle(direct_F(fib2(), Rat(1, 2), Rat(1), 119));
  CHECK(close(ball(r), expected));
  CHECK(ball(r).rad() < bits(-200));
}

TEST_CASE("F at x=0 is a^{R_0} exactly") {
  const auto r = eval_F(inst(FunctionId::F), Rat(0), kP);
  CHECK(r.K == 0);
  CHECK(holds(ball(r), Rat(1, 2)));
  CHECK(ball(r).rad().value().is_zero());
}

TEST_CASE("F at a=2, p=2, x=1 has valuation 1") {
  const auto r = eval_F(inst(FunctionId::F, Rat(2), Place::prime(2)), Rat(1), kP);
  const PAdic v = r.padic().at(0, 0);
  CHECK_FALSE(v.zero());
  CHECK(v.valuation() == 1);
  CHECK(r.tail_valuation >= 64);
  // p-adic reduction of a longer exact sum agrees to the certified precision
  CHECK(v.agrees_with(direct_F(fib2(), Rat(2), Rat(1), r.K + 8)));
}

TEST_CASE("G: empty effect at 0, an exact zero, and a value in (0,1)") {
  const auto g0 = eval_G(inst(FunctionId::G), Rat(0), kP);
  CHECK(holds(ball(g0), Rat(1)));
  CHECK(ball(g0).rad().value().is_zero());

  const auto g2 = eval_G(inst(FunctionId::G), Rat(2), kP);
  CHECK(ball(g2).is_exact_zero());
  REQUIRE(!g2.zero_factors.empty());
  CHECK(g2.zero_factors.front() == 0);

  const auto g1 = eval_G(inst(FunctionId::G), Rat(1), kP);
  CHECK(g1.partial.at(0, 0) > 0);
  CHECK(g1.partial.at(0, 0) < 1);
  CHECK(close(ball(g1), oracle(direct_G(fib2(), Rat(1, 2), Rat(1), 59))));
}

TEST_CASE("H: certified value, pole detection, and H(x,0) = F(x)") {
  const auto h = eval_H(inst(FunctionId::H), Rat(1, 3), Rat(1, 4), kP);
  CHECK(h.tail < bits(-200));
  CHECK(close(ball(h), oracle(direct_H(fib2(), Rat(1, 2), Rat(1, 3), Rat(1, 4), 80))));

  try {
    eval_H(inst(FunctionId::H), Rat(1, 3), Rat(2), kP);
    FAIL("expected a pole");
  } catch (const PoleError& e) {
    CHECK(e.index() == 0);
    CHECK(e.code() == ErrorCode::PoleAtY);
  }
  // a=1/2, R_2 = 3: pole at y = 8 found at index 2
  try {
    eval_H(inst(FunctionId::H), Rat(1), Rat(8), kP);
    FAIL("expected a pole");
  } catch (const PoleError& e) {
    CHECK(e.index() == 2);
  }

  for (const Rat x : {Rat(-2), Rat(1, 5), Rat(3)})
    CHECK(close(ball(eval_H(inst(FunctionId::H), x, Rat(0), kP)), ball(eval_F(inst(FunctionId::F), x, kP))));
}

TEST_CASE("Theta specializations") {
  const auto I = inst(FunctionId::Theta);
  for (const Rat x : {Rat(-3), Rat(-1, 2), Rat(0), Rat(2, 7), Rat(5)})
    CHECK(close(ball(eval_Theta(I, x, Rat(0), kP)), ball(eval_F(I, x, kP))));

  // Theta(1, y) = -G'(y)
  FunctionInstance G = I;
  G.id = FunctionId::G;
  const auto gj = jet_eval(G, Rat(0), Rat(1, 3), 0, 1, kP);
  CHECK(close(ball(eval_Theta(I, Rat(1), Rat(1, 3), kP)), -ball(gj, 0, 1)));
}

TEST_CASE("Theta at a zero of G is finite and nonzero") {
  const auto I = inst(FunctionId::Theta);
  const auto t = eval_Theta(I, Rat(1), Rat(2), kP);
  REQUIRE(!t.zero_factors.empty());
  CHECK(t.zero_factors.front() == 0);
  CHECK_FALSE(ball(t).contains_zero());
  // only k=0 survives: a^{R_0} prod_{j>=1} (1 - a^{R_j} 2)
  const Rat surviving = Rat(1, 2) * direct_G(fib2().shift(1), Rat(1, 2), Rat(2), 58);
  CHECK(close(ball(t), oracle(surviving)));
  CHECK(close(ball(t), oracle(direct_Theta(fib2(), Rat(1, 2), Rat(1), Rat(2), 59))));
}

TEST_CASE("exact truncation matches the naive double loop") {
  const auto I = inst(FunctionId::Theta);
  for (const auto& xy : std::vector<std::pair<Rat, Rat>>{{Rat(1), Rat(2)}, {Rat(1, 3), Rat(1, 4)}, {Rat(-2), Rat(4)},
                                                         {Rat(3), Rat(8)}}) {
    std::vector<std::size_t> zeros;
    const auto J = partial_jet(I, xy.first, xy.second, 0, 0, 9, &zeros);
    CHECK(J.at(0, 0) == direct_Theta(fib2(), Rat(1, 2), xy.first, xy.second, 9));
  }
}

TEST_CASE("jet rows and columns match F, G and F_m") {
  const auto I = inst(FunctionId::Theta);
  FunctionInstance F = I, G = I, H = I, Fm = I;
  F.id = FunctionId::F;
  G.id = FunctionId::G;
  H.id = FunctionId::H;
  Fm.id = FunctionId::Fm;

  // Theta row m=0 at y=0 is the jet of F
  const auto tj = jet_eval(I, Rat(1, 3), Rat(0), 3, 2, kP);
  const auto fj = jet_eval(F, Rat(1, 3), Rat(0), 3, 0, kP);
  for (int l = 0; l <= 3; ++l) CHECK(close(ball(tj, l, 0), ball(fj, l, 0)));

  // Theta column at x=1: coefficient (0,m) is -(m+1) G_{m+1}
  const auto tc = jet_eval(I, Rat(1), Rat(1, 5), 0, 3, kP);
  const auto gc = jet_eval(G, Rat(0), Rat(1, 5), 0, 4, kP);
  for (int m = 0; m <= 3; ++m) {
    const ComplexBall scaled = gc.complex().at(0, m + 1) * ComplexBall::from_rat(Rat(-(m + 1)), 256);
    CHECK(close(ball(tc, 0, m), scaled));
  }

  // m! times the m-th y-coefficient of H at y=0 is F_m
  const auto hj = jet_eval(H, Rat(2, 3), Rat(0), 0, 3, kP);
  for (long m = 0; m <= 3; ++m) {
    Fm.m = m;
    const ComplexBall lhs = ball(hj, 0, static_cast<int>(m)) * ComplexBall::from_rat(Rat(factorial(m)), 256);
    CHECK(close(lhs, ball(eval_F(Fm, Rat(2, 3), kP))));
  }
}

TEST_CASE("Theta = G H and G' = -G H(1, .) off the poles") {
  const auto I = inst(FunctionId::Theta);
  FunctionInstance G = I, H = I;
  G.id = FunctionId::G;
  H.id = FunctionId::H;
  const Rat x(2, 5), y(-3, 7);
  const auto t = jet_eval(I, x, y, 2, 2, kP).complex();
  const auto g = jet_eval(G, x, y, 2, 2, kP).complex();
  const auto h = jet_eval(H, x, y, 2, 2, kP).complex();
  const auto gh = g * h;
  for (int l = 0; l <= 2; ++l)
    for (int m = 0; m <= 2; ++m) CHECK(close(t.at(l, m), gh.at(l, m)));

  const auto g1 = jet_eval(G, Rat(0), y, 0, 1, kP);
  const auto h1 = eval_H(I, Rat(1), y, kP);
  CHECK(close(ball(g1, 0, 1), -(ball(g1) * ball(h1))));
}

TEST_CASE("Xi is the y-derivative of Theta") {
  const auto I = inst(FunctionId::Theta);
  FunctionInstance X = I;
  X.id = FunctionId::Xi;
  const auto t = jet_eval(I, Rat(1, 3), Rat(2), 1, 2, kP);
  const auto xi = jet_eval(X, Rat(1, 3), Rat(2), 1, 1, kP);
  CHECK(close(ball(xi, 0, 0), ball(t, 0, 1)));
  CHECK(close(ball(xi, 1, 1), ball(t, 1, 2) * ComplexBall::from_rat(Rat(2), 256)));
  CHECK(close(ball(eval_Xi(I, Rat(1, 3), Rat(2), kP)), ball(t, 0, 1)));
}

TEST_CASE("first-order jets agree with central differences") {
  const auto I = inst(FunctionId::Theta);
  const Precision hp{512, 64};
  const Rat x(1, 3), y(1, 4), h = make_rat(1, BigInt(1) << 40);
  const auto j = jet_eval(I, x, y, 1, 1, hp);
  const auto dx = (ball(eval_Theta(I, x + h, y, hp)) - ball(eval_Theta(I, x - h, y, hp))) *
                  ComplexBall::from_rat(1 / (2 * h), 512);
  const auto dy = (ball(eval_Theta(I, x, y + h, hp)) - ball(eval_Theta(I, x, y - h, hp))) *
                  ComplexBall::from_rat(1 / (2 * h), 512);
  const double jx = ball(j, 1, 0).re().to_double(), jy = ball(j, 0, 1).re().to_double();
  CHECK(std::abs(dx.re().to_double() - jx) <= 1e-10 * std::abs(jx));
  CHECK(std::abs(dy.re().to_double() - jy) <= 1e-10 * std::abs(jy));
}

TEST_CASE("tail soundness under doubled precision") {
  std::mt19937_64 rng(7);
  const std::vector<FunctionId> ids{FunctionId::F, FunctionId::G, FunctionId::H, FunctionId::Theta, FunctionId::Xi};
  for (int i = 0; i < 25; ++i) {
    const Rat x = make_rat(static_cast<long>(rng() % 13) - 6, static_cast<long>(rng() % 5) + 1);
    // keep y off the poles 2, 4, 8, 32, ...
    const Rat y = make_rat(static_cast<long>(rng() % 11) - 5, 3);
    const Rat a = make_rat(1, static_cast<long>(rng() % 3) + 2);
    FunctionInstance I = inst(ids[i % ids.size()], a);
    const int L = static_cast<int>(rng() % 2), M = static_cast<int>(rng() % 2);
    const auto lo = jet_eval(I, x, y, L, M, {128, 32});
    const auto hi = jet_eval(I, x, y, L, M, {512, 128});
    CHECK(hi.K >= lo.K);
    for (int l = 0; l <= lo.complex().L(); ++l)
      for (int m = 0; m <= lo.complex().M(); ++m) CHECK(close(lo.complex().at(l, m), hi.complex().at(l, m)));
  }
}

TEST_CASE("p-adic and complex reduce the same exact truncation") {
  const LinearRecurrence R = fib2();
  FunctionInstance I{R, Rat(2, 3), Place::prime(2), FunctionId::Theta};
  const Rat x(1, 3), y(5, 7);
  const auto pr = jet_eval(I, x, y, 1, 1, kP);
  CHECK(pr.tail_valuation >= 64);
  const auto exact = partial_jet(I, x, y, 1, 1, pr.K + 6);
  for (int l = 0; l <= 1; ++l)
    for (int m = 0; m <= 1; ++m) CHECK(pr.padic().at(l, m).agrees_with(exact.at(l, m)));

  // same truncation in the complex backend: the midpoint rounds that rational
  FunctionInstance C = I;
  C.a = Rat(1, 3);
  C.place = Place::infinity();
  const auto cr = jet_eval(C, x, y, 0, 0, kP);
  CHECK(holds(ball(cr), partial_jet(C, x, y, 0, 0, cr.K).at(0, 0)));

  // 3-adic H with a pole-free y of negative valuation
  FunctionInstance P3{R, Rat(3), Place::prime(3), FunctionId::H};
  const auto h3 = eval_H(P3, Rat(1, 3), Rat(1, 81), kP);
  CHECK(h3.padic().at(0, 0).agrees_with(direct_H(R, Rat(3), Rat(1, 3), Rat(1, 81), h3.K + 10)));
}

TEST_CASE("bad scales and non-growing recurrences") {
  CHECK_THROWS_AS(eval_F(inst(FunctionId::F, Rat(2)), Rat(1), kP), Error);
  CHECK_THROWS_AS(eval_F(inst(FunctionId::F, Rat(1, 2), Place::prime(2)), Rat(1), kP), Error);
  FunctionInstance periodic{rec({0, 1}, {1, 2}), Rat(1, 2), Place::infinity(), FunctionId::F};
  try {
    eval_F(periodic, Rat(1), kP);
    FAIL("expected NotGrowing");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotGrowing);
  }
}

TEST_CASE("d-ary function") {
  CHECK(ball(eval_gdary(Rat(1, 3), Rat(0), 2, Place::infinity(), kP)).is_exact_zero());
  CHECK(holds(ball(eval_gdary(Rat(0), Rat(2, 5), 3, Place::infinity(), kP)), Rat(2, 5)));
  // g(x; z) = x g(x; z^d) + z
  const Rat x(1, 2), z(1, 2);
  const auto lhs = eval_gdary(x, z, 2, Place::infinity(), kP);
  const auto rhs = eval_gdary(x, z * z, 2, Place::infinity(), kP);
  const ComplexBall residual = ball(lhs) - ComplexBall::from_rat(x, 256) * ball(rhs) - ComplexBall::from_rat(z, 256);
  CHECK(residual.contains_zero());
  CHECK(residual.abs_upper() < bits(-200));
  // 5-adic, |x|_5 > 1
  const auto g5 = eval_gdary(Rat(1, 5), Rat(5), 3, Place::prime(5), kP);
  Rat s = 0;
  for (unsigned long k = 0; k < 8; ++k) s += pow(Rat(1, 5), k) * pow(Rat(5), static_cast<unsigned long>(std::pow(3, k)));
  CHECK(g5.padic().at(0, 0).agrees_with(s));
  CHECK_THROWS_AS(eval_gdary(x, Rat(1), 2, Place::infinity(), kP), Error);
  CHECK_THROWS_AS(eval_gdary(x, z, 1, Place::infinity(), kP), Error);
}

TEST_CASE("several-variable functions at gamma specialize") {
  const LinearRecurrence R = fib2();
  const MPoint gamma{{Rat(1), Rat(1, 2)}, Place::infinity()};
  const auto I = inst(FunctionId::F);

  CHECK(close(ball(eval_multi(FunctionId::GMulti, R, Rat(0), gamma, 0, Rat(1), 0, kP)),
              ball(eval_G(I, Rat(1), kP))));
  CHECK(close(ball(eval_multi(FunctionId::FMulti, R, Rat(1), gamma, 0, Rat(0), 0, kP)),
              ball(eval_F(I, Rat(1), kP))));
  CHECK(close(ball(eval_multi(FunctionId::HMulti, R, Rat(1), gamma, 0, Rat(1, 3), 0, kP)),
              oracle(direct_H(R, Rat(1, 2), Rat(1), Rat(1, 3), 60))));

  // f_m(x; gamma) = F_m(x)/m! with x-derivatives
  FunctionInstance Fm = I;
  Fm.id = FunctionId::Fm;
  Fm.m = 2;
  const auto fm = eval_multi(FunctionId::FMulti, R, Rat(3, 4), gamma, 2, Rat(0), 2, kP);
  const auto Fj = jet_eval(Fm, Rat(3, 4), Rat(0), 2, 0, kP);
  for (int l = 0; l <= 2; ++l)
    CHECK(close(ball(fm, l, 0) * ComplexBall::from_rat(Rat(2), 256), ball(Fj, l, 0)));

  // h_jm(x; gamma) with l x-derivatives is the (l, m) coefficient of H at (x, beta)
  FunctionInstance H = I;
  H.id = FunctionId::H;
  const auto hm = eval_multi(FunctionId::HMulti, R, Rat(1, 2), gamma, 1, Rat(3), 1, kP);
  const auto Hj = jet_eval(H, Rat(1, 2), Rat(3), 1, 1, kP);
  CHECK(close(ball(hm, 0, 0), ball(Hj, 0, 1)));
  CHECK(close(ball(hm, 1, 0), ball(Hj, 1, 1)));
}

TEST_CASE("several-variable functional equations") {
  const LinearRecurrence R = fib2();
  const auto omega = OmegaTransform::companion(R);
  const MPoint z{{Rat(2, 3), Rat(-1, 2)}, Place::infinity()};
  const MPoint oz = apply(omega, z, 1);
  const Rat Mz = monomial_value(R, z, 0);
  CHECK(monomial_value(R, oz, 0) == monomial_value(R, z, 1));

  const Rat x(3, 2), beta(5, 4);
  // f_m(x; z) = x f_m(x; Omega z) + M(z)^{m+1}
  const auto f = eval_multi(FunctionId::FMulti, R, x, z, 1, Rat(0), 0, kP);
  const auto fo = eval_multi(FunctionId::FMulti, R, x, oz, 1, Rat(0), 0, kP);
  CHECK(close(ball(f), ComplexBall::from_rat(x, 256) * ball(fo) + ComplexBall::from_rat(Mz * Mz, 256)));
  // g_j(z) = (1 - beta M(z)) g_j(Omega z)
  const auto g = eval_multi(FunctionId::GMulti, R, Rat(0), z, 0, beta, 0, kP);
  const auto go = eval_multi(FunctionId::GMulti, R, Rat(0), oz, 0, beta, 0, kP);
  CHECK(close(ball(g), ComplexBall::from_rat(1 - beta * Mz, 256) * ball(go)));
  // h_jm(x; z) = x h_jm(x; Omega z) + (M/(1 - beta M))^{m+1}, and the derivative rule
  const auto h = eval_multi(FunctionId::HMulti, R, x, z, 2, beta, 1, kP);
  const auto ho = eval_multi(FunctionId::HMulti, R, x, oz, 2, beta, 1, kP);
  const Rat top = pow(Mz / (1 - beta * Mz), 3);
  CHECK(close(ball(h), ComplexBall::from_rat(x, 256) * ball(ho) + ComplexBall::from_rat(top, 256)));
  CHECK(close(ball(h, 1, 0), ComplexBall::from_rat(x, 256) * ball(ho, 1, 0) + ball(ho)));

  CHECK_THROWS_AS(eval_multi(FunctionId::FMulti, R, x, MPoint{{Rat(2), Rat(1, 3)}, Place::infinity()}, 0, Rat(0), 0, kP),
                  Error);
  CHECK_THROWS_AS(eval_multi(FunctionId::GMulti, R, x, MPoint{{Rat(1), Rat(-1)}, Place::infinity()}, 0, Rat(1), 0, kP),
                  Error);
  // 3-adic point
  const MPoint z3{{Rat(1, 2), Rat(3)}, Place::prime(3)};
  const auto g3 = eval_multi(FunctionId::GMulti, R, Rat(0), z3, 0, Rat(2), 0, kP);
  CHECK(g3.padic().at(0, 0).agrees_with(partial_multi(FunctionId::GMulti, R, Rat(0), z3, 0, Rat(2), 0, g3.K + 6).at(0, 0)));
}

TEST_CASE("N_beta") {
  const LinearRecurrence R = fib2();
  const auto one = n_beta(R, Rat(1, 2), Rat(2));
  CHECK(one.count == 1);
  CHECK(one.witnesses == std::vector<std::size_t>{0});
  CHECK(n_beta(R, Rat(1, 2), Rat(3)).count == 0);
  CHECK(n_beta(R, Rat(1, 2), Rat(1, 2)).count == 0);
  // F_k itself repeats 1 at k = 1, 2
  const auto two = n_beta(rec({1, 1}, {0, 1}), Rat(1, 2), Rat(2));
  CHECK(two.count == 2);
  CHECK(two.witnesses == std::vector<std::size_t>{1, 2});
}

TEST_CASE("function ids round-trip") {
  for (auto id : {FunctionId::F, FunctionId::Fm, FunctionId::G, FunctionId::H, FunctionId::Theta, FunctionId::Xi,
                  FunctionId::GDary, FunctionId::FMulti, FunctionId::GMulti, FunctionId::HMulti})
    CHECK(parse_function_id(function_name(id)) == id);
  CHECK_THROWS_AS(parse_function_id("zeta"), Error);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dqw/polynomial.hpp"
#include "dqw/sampling.hpp"
#include "dqw/series.hpp"

using namespace dqw;

namespace {

SpacePtr plane() { return Space::base(2); }

Polynomial coord(const SpacePtr& sp, int v) { return Polynomial::coordinate(sp, v); }

// Independent oracle for rational-coefficient products: scale both factors to
// integer coefficients, multiply, and divide the scale back out.
Polynomial scaled_integer_product(const Polynomial& p, const Polynomial& q) {
    mpz_class scale_p(1), scale_q(1);
    for (const auto& [I, c] : p.terms())
        scale_p = lcm(scale_p, c.re().get_den());
    for (const auto& [I, c] : q.terms())
        scale_q = lcm(scale_q, c.re().get_den());
    Polynomial pi = p.scaled(Scalar(mpq_class(scale_p), mpq_class(0)));
    Polynomial qi = q.scaled(Scalar(mpq_class(scale_q), mpq_class(0)));
    Polynomial prod = pi * qi;
    return prod.scaled(Scalar(mpq_class(1, scale_p * scale_q), mpq_class(0)));
}

} // namespace

TEST_CASE("scalar arithmetic is exact and normalized") {
    Scalar half(1, 2);
    Scalar third(1, 3);
    CHECK(half + third == Scalar(5, 6));
    CHECK(half * third == Scalar(1, 6));
    CHECK((Scalar(2, 4)) == half); // gcd reduction
    CHECK(Scalar::i() * Scalar::i() == Scalar(-1));
    CHECK(Scalar(3) - Scalar(3) == Scalar::zero());
}

TEST_CASE("scalar inversion and conjugation") {
    Scalar z(mpq_class(1), mpq_class(2)); // 1 + 2i
    CHECK(z * z.inverse() == Scalar::one());
    CHECK(z.conj() == Scalar(mpq_class(1), mpq_class(-2)));
    CHECK(z.str() == "1+2i");
    CHECK(Scalar::i().str() == "i");
    CHECK((-Scalar::i()).str() == "-i");
    CHECK(Scalar(-2, 3).str() == "-2/3");
    CHECK_THROWS(Scalar::zero().inverse());
}

TEST_CASE("difference of squares") {
    auto sp = plane();
    Polynomial x1 = coord(sp, 0);
    Polynomial one = Polynomial::constant(sp, Scalar::one());
    CHECK((x1 + one) * (x1 - one) == x1 * x1 - one);
}

TEST_CASE("additive identity") {
    auto sp = plane();
    Rng rng(17);
    SampleOptions opt;
    Polynomial p = random_polynomial(rng, sp, opt);
    CHECK(p + Polynomial(sp) == p);
}

TEST_CASE("rational coefficient product against integer-scaled oracle") {
    auto sp = plane();
    Polynomial p = coord(sp, 0).scaled(Scalar(1, 2));
    Polynomial q = coord(sp, 1).scaled(Scalar(2, 3));
    Polynomial expect = (coord(sp, 0) * coord(sp, 1)).scaled(Scalar(1, 3));
    CHECK(p * q == expect);
    CHECK(scaled_integer_product(p, q) == expect);

    Rng rng(23);
    SampleOptions opt;
    opt.gaussian = false;
    for (int t = 0; t < 20; ++t) {
        Polynomial a = random_polynomial(rng, sp, opt).scaled(Scalar(1, rng.range(1, 7)));
        Polynomial b = random_polynomial(rng, sp, opt).scaled(Scalar(1, rng.range(1, 7)));
        CHECK(a * b == scaled_integer_product(a, b));
    }
}

TEST_CASE("variable-set mismatch is rejected") {
    Polynomial p = coord(plane(), 0);
    Polynomial q = coord(Space::base(3), 0);
    CHECK_THROWS(p * q);
}

TEST_CASE("partial derivatives") {
    auto sp = plane();
    Polynomial x1 = coord(sp, 0);
    CHECK((x1 * x1 * x1).derivative(0) == (x1 * x1).scaled(Scalar(3)));
    CHECK((coord(sp, 0) * coord(sp, 1)).derivative(1) == x1);
    CHECK(Polynomial::constant(sp, Scalar(7)).derivative(0).is_zero());
    CHECK_THROWS(x1.derivative_by_name("zz"));
}

TEST_CASE("mixed partials commute") {
    auto sp = Space::base(3);
    Rng rng(5);
    SampleOptions opt;
    for (int t = 0; t < 30; ++t) {
        Polynomial p = random_polynomial(rng, sp, opt);
        int i = static_cast<int>(rng.uniform(3)), j = static_cast<int>(rng.uniform(3));
        CHECK(p.derivative(i).derivative(j) == p.derivative(j).derivative(i));
    }
}

TEST_CASE("ring axioms on sampled polynomials") {
    auto sp = plane();
    Rng rng(41);
    SampleOptions opt;
    for (int t = 0; t < 25; ++t) {
        Polynomial a = random_polynomial(rng, sp, opt);
        Polynomial b = random_polynomial(rng, sp, opt);
        Polynomial c = random_polynomial(rng, sp, opt);
        CHECK(a * b == b * a);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
    }
}

TEST_CASE("substitution: binomial expansion at a segment endpoint") {
    // p = w^2 under w -> t w + (1 - t) v
    SpacePtr src = Space::named({"w"}, 0);
    SpacePtr dst = Space::named({"v", "w", "t"}, 0);
    Polynomial w2 = coord(src, 0) * coord(src, 0);
    Polynomial v = coord(dst, 0), w = coord(dst, 1), t = coord(dst, 2);
    Polynomial one = Polynomial::constant(dst, Scalar::one());
    Polynomial image = t * w + (one - t) * v;
    Polynomial expect = t * t * w * w + (t * (one - t) * v * w).scaled(Scalar(2)) +
                        (one - t) * (one - t) * v * v;
    CHECK(w2.substitute({image}) == expect);
}

TEST_CASE("substitution: identity map and diagonal evaluation") {
    auto sp = plane();
    Rng rng(7);
    SampleOptions opt;
    Polynomial p = random_polynomial(rng, sp, opt);
    CHECK(p.substitute({coord(sp, 0), coord(sp, 1)}) == p);

    // q - v under q -> v collapses to zero
    SpacePtr qs = Space::named({"q1", "v1"}, 0);
    Polynomial diff = coord(qs, 0) - coord(qs, 1);
    CHECK(diff.substitute({coord(qs, 1), coord(qs, 1)}).is_zero());
}

TEST_CASE("substitution is an algebra morphism") {
    auto sp = plane();
    SpacePtr dst = Space::base(3);
    Rng rng(11);
    SampleOptions opt;
    for (int t = 0; t < 20; ++t) {
        Polynomial p = random_polynomial(rng, sp, opt);
        Polynomial q = random_polynomial(rng, sp, opt);
        std::vector<Polynomial> images = {random_polynomial(rng, dst, opt),
                                          random_polynomial(rng, dst, opt)};
        CHECK((p * q).substitute(images) == p.substitute(images) * q.substitute(images));
    }
}

TEST_CASE("simplex integration basics") {
    SpacePtr sp = Space::named({"t1", "t2", "v", "w"}, 0);
    Polynomial one = Polynomial::constant(sp, Scalar::one());
    // volume of the ordered 2-simplex
    CHECK(integrate_simplex(one, 2) == Polynomial::constant(sp, Scalar(1, 2)));
    // integral of t1 over [0,1]
    CHECK(integrate_simplex(coord(sp, 0), std::vector<int>{0}) ==
          Polynomial::constant(sp, Scalar(1, 2)));
}

TEST_CASE("simplex integration: segment average, reused by the chain maps") {
    SpacePtr sp = Space::named({"t1", "v", "w"}, 0);
    Polynomial t = coord(sp, 0), v = coord(sp, 1), w = coord(sp, 2);
    Polynomial one = Polynomial::constant(sp, Scalar::one());
    Polynomial p = (t * v + (one - t) * w).scaled(Scalar(2));
    CHECK(integrate_simplex(p, 1) == v + w);
}

TEST_CASE("simplex volumes are inverse factorials") {
    for (int k = 1; k <= 5; ++k) {
        std::vector<std::string> names;
        for (int j = 1; j <= k; ++j)
            names.push_back("t" + std::to_string(j));
        SpacePtr sp = Space::named(names, 0);
        Polynomial one = Polynomial::constant(sp, Scalar::one());
        Scalar expect = Scalar::one() / factorial_scalar(static_cast<unsigned>(k));
        CHECK(integrate_simplex(one, k) == Polynomial::constant(sp, expect));
    }
}

TEST_CASE("series addition and cauchy product respect caps") {
    using S = FormalSeries<Scalar>;
    S a(3, Scalar::zero());
    S b(2, Scalar::zero());
    for (int r = 0; r <= 3; ++r)
        a.coeff(r) = Scalar(r + 1);
    for (int r = 0; r <= 2; ++r)
        b.coeff(r) = Scalar(1);
    S sum = a + b;
    CHECK(sum.order_cap() == 2);
    CHECK(sum.coeff(2) == Scalar(4));
    S prod = a.cauchy(b, [](const Scalar& x, const Scalar& y) { return x * y; });
    CHECK(prod.order_cap() == 2);
    // (1 + 2l + 3l^2)(1 + l + l^2): l^2 coefficient 1 + 2 + 3
    CHECK(prod.coeff(2) == Scalar(6));
    CHECK_THROWS(a.truncated(5));
}

TEST_CASE("canonical polynomial rendering") {
    auto sp = plane();
    Polynomial p = coord(sp, 0) * coord(sp, 0) - Polynomial::constant(sp, Scalar::one());
    CHECK(p.str() == "x1^2 - 1");
    Polynomial q = coord(sp, 1).scaled(Scalar(1, 3));
    CHECK(q.str() == "1/3*x2");
    CHECK(Polynomial(sp).str() == "0");
    Polynomial r = coord(sp, 0).scaled(Scalar::i());
    CHECK(r.str() == "i*x1");
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dqw/sampling.hpp"
#include "dqw/star.hpp"

using namespace dqw;

namespace {

SpacePtr plane() { return Space::base(2); }

Polynomial star_poly(const StarProduct& S, const Polynomial& f, const Polynomial& g, int r) {
    return S.cochain(r).apply_to({f, g}, Polynomial::constant(S.space(), Scalar::one()));
}

} // namespace

TEST_CASE("moyal product on coordinates") {
    StarProduct S = moyal_star(3);
    SpacePtr M = S.space();
    Polynomial x1 = Polynomial::coordinate(M, 0);
    Polynomial x2 = Polynomial::coordinate(M, 1);

    // x1 * x2 = x1 x2 + lambda, x2 * x1 = x1 x2
    CHECK(star_poly(S, x1, x2, 0) == x1 * x2);
    CHECK(star_poly(S, x1, x2, 1) == Polynomial::constant(M, Scalar::one()));
    CHECK(star_poly(S, x1, x2, 2).is_zero());
    CHECK(star_poly(S, x2, x1, 0) == x1 * x2);
    CHECK(star_poly(S, x2, x1, 1).is_zero());
}

TEST_CASE("moyal product on quadratics") {
    StarProduct S = moyal_star(3);
    SpacePtr M = S.space();
    Polynomial x1 = Polynomial::coordinate(M, 0);
    Polynomial x2 = Polynomial::coordinate(M, 1);
    Polynomial a = x1 * x1, b = x2 * x2;
    // (x1^2) * (x2^2) = (x1 x2)^2 + 4 lambda x1 x2 + 2 lambda^2
    CHECK(star_poly(S, a, b, 0) == a * b);
    CHECK(star_poly(S, a, b, 1) == (x1 * x2).scaled(Scalar(4)));
    CHECK(star_poly(S, a, b, 2) == Polynomial::constant(M, Scalar(2)));
    CHECK(star_poly(S, a, b, 3).is_zero());
}

TEST_CASE("zero matrix gives the undeformed product") {
    SpacePtr M = plane();
    std::vector<DiffOp> fields = {DiffOp::coordinate_derivative(M, 0),
                                  DiffOp::coordinate_derivative(M, 1)};
    std::vector<std::vector<Scalar>> A(2, std::vector<Scalar>(2, Scalar::zero()));
    StarProduct S = exp_star(fields, A, 3);
    Rng rng(3);
    SampleOptions opt;
    for (int t = 0; t < 20; ++t) {
        Polynomial f = random_polynomial(rng, M, opt);
        Polynomial g = random_polynomial(rng, M, opt);
        CHECK(star_poly(S, f, g, 0) == f * g);
        for (int r = 1; r <= 3; ++r)
            CHECK(star_poly(S, f, g, r).is_zero());
    }
}

TEST_CASE("unit acts trivially") {
    StarProduct S = moyal_star(3);
    SpacePtr M = S.space();
    Polynomial one = Polynomial::constant(M, Scalar::one());
    Rng rng(5);
    SampleOptions opt;
    for (int t = 0; t < 20; ++t) {
        Polynomial f = random_polynomial(rng, M, opt);
        PolySeries fs = poly_series(f, 3);
        PolySeries l = star_multiply(S, poly_series(one, 3), fs);
        PolySeries r = star_multiply(S, fs, poly_series(one, 3));
        CHECK(l == fs);
        CHECK(r == fs);
    }
}

TEST_CASE("star product reduces to the pointwise product mod lambda") {
    StarProduct S = moyal_star(2);
    SpacePtr M = S.space();
    Rng rng(7);
    SampleOptions opt;
    for (int t = 0; t < 20; ++t) {
        Polynomial f = random_polynomial(rng, M, opt);
        Polynomial g = random_polynomial(rng, M, opt);
        PolySeries prod = star_multiply(S, poly_series(f, 2), poly_series(g, 2));
        CHECK(prod.coeff(0) == f * g);
    }
}

TEST_CASE("non-commuting fields are rejected with the offending pair") {
    SpacePtr M = plane();
    Polynomial x1 = Polynomial::coordinate(M, 0);
    DiffOp X1 = DiffOp::coordinate_derivative(M, 0);
    DiffOp X2 = DiffOp::coordinate_derivative(M, 1).left_mult(x1); // x1 d2
    std::vector<std::vector<Scalar>> A(2, std::vector<Scalar>(2, Scalar(1)));
    try {
        exp_star({X1, X2}, A, 2);
        CHECK(false);
    } catch (const std::invalid_argument& e) {
        CHECK(std::string(e.what()).find("1 and 2") != std::string::npos);
    }
}

TEST_CASE("exponential star products are associative order by order") {
    Rng rng(11);
    SampleOptions opt;

    // Moyal on R^2, a commuting-field product on R^1, and a dense matrix on R^2.
    std::vector<StarProduct> products;
    products.push_back(moyal_star(3));
    {
        SpacePtr L = Space::base(1);
        std::vector<std::vector<Scalar>> A = {{Scalar(1, 2)}};
        products.push_back(exp_star({DiffOp::coordinate_derivative(L, 0)}, A, 3));
    }
    {
        SpacePtr M = plane();
        std::vector<std::vector<Scalar>> A = {{Scalar(1), Scalar(2)}, {Scalar(-1), Scalar(1, 3)}};
        products.push_back(exp_star({DiffOp::coordinate_derivative(M, 0),
                                     DiffOp::coordinate_derivative(M, 1)},
                                    A, 3));
    }

    for (const auto& S : products) {
        for (int t = 0; t < 50; ++t) {
            Polynomial a = random_polynomial(rng, S.space(), opt);
            Polynomial b = random_polynomial(rng, S.space(), opt);
            Polynomial c = random_polynomial(rng, S.space(), opt);
            for (int r = 0; r <= 3; ++r)
                CHECK(associativity_defect(S, a, b, c, r).is_zero());
        }
    }
}

TEST_CASE("order-zero associativity always holds") {
    StarProduct S = trivial_star(plane(), 1);
    Rng rng(13);
    SampleOptions opt;
    Polynomial a = random_polynomial(rng, S.space(), opt);
    Polynomial b = random_polynomial(rng, S.space(), opt);
    Polynomial c = random_polynomial(rng, S.space(), opt);
    CHECK(associativity_defect(S, a, b, c, 0).is_zero());
}

TEST_CASE("corrupting a cochain produces a witnessed defect") {
    StarProduct M3 = moyal_star(3);
    SpacePtr M = M3.space();
    std::vector<MultiDiffOp> cochains;
    for (int r = 0; r <= 3; ++r)
        cochains.push_back(M3.cochain(r));
    // A non-closed perturbation: second order in the first slot.
    MultiDiffOp junk(2, M, M);
    junk.add_function_term({{2, 0}, unit_index(2, 1)},
                           Polynomial::constant(M, Scalar::one()));
    cochains[2] += junk;
    StarProduct corrupted(M, cochains);
    Polynomial x1 = Polynomial::coordinate(M, 0);
    Polynomial x2 = Polynomial::coordinate(M, 1);
    bool witnessed = false;
    Rng rng(17);
    SampleOptions opt;
    for (int t = 0; t < 50 && !witnessed; ++t) {
        Polynomial a = random_polynomial(rng, M, opt);
        Polynomial b = random_polynomial(rng, M, opt);
        Polynomial c = random_polynomial(rng, M, opt);
        witnessed = !associativity_defect(corrupted, a, b, c, 2).is_zero();
    }
    CHECK(witnessed);
}

TEST_CASE("poisson bracket of the moyal product") {
    StarProduct S = moyal_star(2);
    SpacePtr M = S.space();
    Polynomial x1 = Polynomial::coordinate(M, 0);
    Polynomial x2 = Polynomial::coordinate(M, 1);
    CHECK(poisson_bracket(S, x1, x2) ==
          Polynomial::constant(M, Scalar::i() * Scalar(1, 2)));
    CHECK_THROWS(poisson_bracket(trivial_star(M, 0), x1, x2));
}

TEST_CASE("poisson bracket properties") {
    StarProduct S = moyal_star(2);
    SpacePtr M = S.space();
    Rng rng(19);
    SampleOptions opt;
    for (int t = 0; t < 30; ++t) {
        Polynomial f = random_polynomial(rng, M, opt);
        Polynomial g = random_polynomial(rng, M, opt);
        Polynomial h = random_polynomial(rng, M, opt);
        CHECK(poisson_bracket(S, f, f).is_zero());
        CHECK(poisson_bracket(S, f, g) == -poisson_bracket(S, g, f));
        CHECK(poisson_bracket(S, f, g * h) ==
              poisson_bracket(S, f, g) * h + g * poisson_bracket(S, f, h));
        Polynomial jac = poisson_bracket(S, f, poisson_bracket(S, g, h)) +
                         poisson_bracket(S, g, poisson_bracket(S, h, f)) +
                         poisson_bracket(S, h, poisson_bracket(S, f, g));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("identity equivalence leaves the product unchanged") {
    StarProduct S = moyal_star(3);
    EquivalenceOp T(S.space(), std::vector<DiffOp>(3, DiffOp(S.space())));
    CHECK(apply_equivalence(T, S) == S);
}

TEST_CASE("equivalences preserve the poisson bracket and unitality") {
    StarProduct S = moyal_star(3);
    SpacePtr M = S.space();
    Rng rng(23);
    SampleOptions opt;
    opt.n_terms = 2;
    for (int t = 0; t < 8; ++t) {
        std::vector<DiffOp> terms;
        for (int r = 1; r <= 3; ++r) {
            DiffOp T = random_diffop(rng, M, 2, opt);
            // enforce T_r(1) = 0 by dropping the multiplication part
            DiffOp clean(M);
            for (const auto& [J, c] : T.terms())
                if (order_of(J) > 0)
                    clean.add_term(J, c);
            terms.push_back(clean);
        }
        EquivalenceOp T(M, terms);
        StarProduct S2 = apply_equivalence(T, S);
        CHECK(poisson_cochain(S2) == poisson_cochain(S));
        for (int r = 1; r <= 3; ++r) {
            CHECK(S2.cochain(r).annihilates_constants(0));
            CHECK(S2.cochain(r).annihilates_constants(1));
        }
    }
}

TEST_CASE("equivalence transforms are invertible series") {
    SpacePtr M = plane();
    Rng rng(29);
    SampleOptions opt;
    opt.n_terms = 2;
    std::vector<DiffOp> terms;
    for (int r = 1; r <= 3; ++r) {
        DiffOp T = random_diffop(rng, M, 2, opt);
        DiffOp clean(M);
        for (const auto& [J, c] : T.terms())
            if (order_of(J) > 0)
                clean.add_term(J, c);
        terms.push_back(clean);
    }
    EquivalenceOp T(M, terms);
    std::vector<DiffOp> inv = T.inverse_terms();
    // (id + sum T_s)(id + sum U_s) = id order by order
    for (int s = 1; s <= 3; ++s) {
        DiffOp acc = terms[static_cast<size_t>(s) - 1] + inv[static_cast<size_t>(s) - 1];
        for (int j = 1; j < s; ++j)
            acc += compose(terms[static_cast<size_t>(j) - 1], inv[static_cast<size_t>(s - j) - 1]);
        CHECK(acc.is_zero());
    }
}

TEST_CASE("rejects equivalences that move the unit") {
    SpacePtr M = plane();
    DiffOp bad = DiffOp::mult(Polynomial::coordinate(M, 0));
    CHECK_THROWS(EquivalenceOp(M, {bad}));
}

TEST_CASE("lambda-square reparametrization has a degenerate bracket") {
    StarProduct S = moyal_star(3);
    StarProduct S2 = reparametrize_square(S);
    CHECK(S2.cochain(1).is_zero());
    CHECK(S2.cochain(2) == S.cochain(1));
    CHECK(S2.cochain(3).is_zero());
    CHECK(poisson_cochain(S2).is_zero());
}

TEST_CASE("naturality flag") {
    CHECK(moyal_star(3).is_natural());
}

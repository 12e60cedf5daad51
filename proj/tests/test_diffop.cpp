#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dqw/multidiffop.hpp"
#include "dqw/sampling.hpp"

using namespace dqw;

namespace {

SpacePtr base2() { return Space::base(2); }
// Total space R^2 over a rank-1 image: coordinates y1 (base), y2 (fiber).
SpacePtr line_over_line() { return Space::total(2, 1); }

} // namespace

TEST_CASE("pullback renames base coordinates and kills the rest") {
    SpacePtr M = base2();
    SpacePtr N = line_over_line();
    CHECK(pullback(Polynomial::coordinate(M, 0), N) == Polynomial::coordinate(N, 0));
    CHECK(pullback(Polynomial::coordinate(M, 1), N).is_zero());
    SpacePtr small = Space::base(1);
    CHECK_THROWS(pullback(Polynomial::coordinate(small, 0), Space::total(3, 2)));
}

TEST_CASE("pullback is a unital algebra morphism") {
    SpacePtr M = Space::base(3);
    SpacePtr N = Space::total(4, 2);
    Rng rng(3);
    SampleOptions opt;
    CHECK(pullback(Polynomial::constant(M, Scalar::one()), N) ==
          Polynomial::constant(N, Scalar::one()));
    for (int t = 0; t < 20; ++t) {
        Polynomial a = random_polynomial(rng, M, opt);
        Polynomial b = random_polynomial(rng, M, opt);
        CHECK(pullback(a * b, N) == pullback(a, N) * pullback(b, N));
    }
}

TEST_CASE("canonical commutation relation") {
    SpacePtr M = base2();
    DiffOp d1 = DiffOp::coordinate_derivative(M, 0);
    DiffOp x1 = DiffOp::mult(Polynomial::coordinate(M, 0));
    DiffOp expect = compose(x1, d1) + DiffOp::identity(M);
    CHECK(compose(d1, x1) == expect);
    CHECK(compose(d1, DiffOp::identity(M)) == d1);
}

TEST_CASE("symbol commutator with a pulled-back coordinate") {
    // d^J o mult(pr* x^i) - mult(pr* x^i) o d^J acts as the symbol derivative
    SpacePtr M = base2();
    SpacePtr N = Space::total(3, 2);
    for (int i = 0; i < 2; ++i) {
        MultiIndex J = {1, 2, 1};
        DiffOp dJ = DiffOp::derivative(N, J);
        DiffOp mult = DiffOp::mult(pullback(Polynomial::coordinate(M, i), N));
        DiffOp bracket = compose(dJ, mult) - compose(mult, dJ);
        MultiIndex J2 = J;
        --J2[static_cast<size_t>(i)];
        DiffOp expect = DiffOp::derivative(N, J2).scaled(Scalar(J[static_cast<size_t>(i)]));
        CHECK(bracket == expect);
    }
}

TEST_CASE("composition is associative and the commutator satisfies Jacobi") {
    SpacePtr M = base2();
    Rng rng(9);
    SampleOptions opt;
    opt.n_terms = 2;
    for (int t = 0; t < 12; ++t) {
        DiffOp a = random_diffop(rng, M, 2, opt);
        DiffOp b = random_diffop(rng, M, 2, opt);
        DiffOp c = random_diffop(rng, M, 1, opt);
        CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
        DiffOp jac = commutator(a, commutator(b, c)) + commutator(b, commutator(c, a)) +
                     commutator(c, commutator(a, b));
        CHECK(jac.is_zero());
    }
}

TEST_CASE("operator application matches composition") {
    SpacePtr M = base2();
    Rng rng(13);
    SampleOptions opt;
    for (int t = 0; t < 12; ++t) {
        DiffOp a = random_diffop(rng, M, 2, opt);
        DiffOp b = random_diffop(rng, M, 2, opt);
        Polynomial f = random_polynomial(rng, M, opt);
        CHECK(compose(a, b).apply(f) == a.apply(b.apply(f)));
    }
}

TEST_CASE("vertical split by symbol support") {
    SpacePtr N = line_over_line(); // k = 1: y1 base, y2 fiber
    DiffOp d2 = DiffOp::coordinate_derivative(N, 1);
    CHECK(d2.vertical_part() == d2);
    CHECK(d2.horizontal_remainder().is_zero());

    DiffOp d1 = DiffOp::coordinate_derivative(N, 0);
    CHECK(d1.vertical_part().is_zero());
    CHECK(d1.horizontal_remainder() == d1);

    // f d_{y1} d_{y2} has a base component in its symbol: nothing vertical
    DiffOp mixed(N);
    mixed.add_term({1, 1}, Polynomial::coordinate(N, 1));
    CHECK(mixed.vertical_part().is_zero());
    CHECK(mixed.horizontal_remainder() == mixed);
    CHECK(mixed.vertical_part() + mixed.horizontal_remainder() == mixed);
}

TEST_CASE("vertical operators commute with pulled-back multiplication") {
    SpacePtr M = base2();
    SpacePtr N = Space::total(3, 2);
    Rng rng(21);
    SampleOptions opt;
    for (int t = 0; t < 15; ++t) {
        DiffOp D = random_diffop(rng, N, 2, opt).vertical_part();
        Polynomial a = random_polynomial(rng, M, opt);
        DiffOp mult = DiffOp::mult(pullback(a, N));
        CHECK(commutator(D, mult).is_zero());
    }
}

TEST_CASE("arity-0 cochains act as bare operators") {
    SpacePtr M = base2();
    SpacePtr N = line_over_line();
    DiffOp D = DiffOp::coordinate_derivative(N, 1);
    MultiDiffOp phi = MultiDiffOp::element(M, D);
    Polynomial f = Polynomial::coordinate(N, 1) * Polynomial::coordinate(N, 1);
    CHECK(phi.apply_to({}, f) == Polynomial::coordinate(N, 1).scaled(Scalar(2)));
}

TEST_CASE("single-jet cochain evaluates to a multiplication operator") {
    SpacePtr M = base2();
    SpacePtr N = line_over_line();
    MultiDiffOp phi(1, M, N);
    phi.add_term({unit_index(2, 0)}, DiffOp::identity(N));
    DiffOp result = phi.apply({Polynomial::coordinate(M, 0)});
    CHECK(result == DiffOp::identity(N)); // pr*(d x1 / d x1) = 1
}

TEST_CASE("multidiffop action is multilinear") {
    SpacePtr M = base2();
    SpacePtr N = line_over_line();
    Rng rng(31);
    SampleOptions opt;
    opt.n_terms = 2;
    for (int t = 0; t < 10; ++t) {
        MultiDiffOp phi = random_multidiffop(rng, 2, M, N, 2, 1, opt);
        Polynomial a = random_polynomial(rng, M, opt);
        Polynomial a2 = random_polynomial(rng, M, opt);
        Polynomial b = random_polynomial(rng, M, opt);
        Scalar c = random_scalar(rng, opt);
        DiffOp lhs = phi.apply({a.scaled(c) + a2, b});
        DiffOp rhs = phi.apply({a, b}).scaled(c) + phi.apply({a2, b});
        CHECK(lhs == rhs);
    }
}

TEST_CASE("post-composition expands derivatives over the jets") {
    SpacePtr M = base2();
    SpacePtr N = line_over_line();
    Rng rng(37);
    SampleOptions opt;
    opt.n_terms = 2;
    for (int t = 0; t < 10; ++t) {
        MultiDiffOp phi = random_multidiffop(rng, 1, M, N, 2, 1, opt);
        DiffOp D = random_diffop(rng, N, 2, opt);
        Polynomial a = random_polynomial(rng, M, opt);
        Polynomial f = random_polynomial(rng, N, opt);
        MultiDiffOp Dphi = post_compose(D, phi);
        CHECK(Dphi.apply_to({a}, f) == D.apply(phi.apply_to({a}, f)));
    }
}

TEST_CASE("argument pre-composition matches evaluation") {
    SpacePtr M = base2();
    SpacePtr N = line_over_line();
    Rng rng(43);
    SampleOptions opt;
    opt.n_terms = 2;
    for (int t = 0; t < 10; ++t) {
        MultiDiffOp phi = random_multidiffop(rng, 2, M, N, 2, 1, opt);
        DiffOp T = random_diffop(rng, M, 2, opt);
        Polynomial a = random_polynomial(rng, M, opt);
        Polynomial b = random_polynomial(rng, M, opt);
        Polynomial f = random_polynomial(rng, N, opt);
        MultiDiffOp pre = pre_compose_arg(phi, 0, T);
        CHECK(pre.apply_to({a, b}, f) == phi.apply_to({T.apply(a), b}, f));
    }
}

TEST_CASE("function-cochain insertion matches evaluation") {
    SpacePtr M = base2();
    SpacePtr N = line_over_line();
    Rng rng(47);
    SampleOptions opt;
    opt.n_terms = 2;
    for (int t = 0; t < 10; ++t) {
        MultiDiffOp phi = random_multidiffop(rng, 1, M, N, 2, 1, opt);
        MultiDiffOp psi = random_function_cochain(rng, 2, M, M, 2, opt);
        Polynomial a = random_polynomial(rng, M, opt);
        Polynomial b = random_polynomial(rng, M, opt);
        Polynomial f = random_polynomial(rng, N, opt);
        Polynomial one = Polynomial::constant(M, Scalar::one());
        MultiDiffOp ins = insert_function_cochain(phi, psi);
        CHECK(ins.apply_to({a, b}, f) == phi.apply_to({psi.apply_to({a, b}, one)}, f));
    }
}

TEST_CASE("value composition matches operator composition") {
    SpacePtr M = base2();
    SpacePtr N = line_over_line();
    Rng rng(53);
    SampleOptions opt;
    opt.n_terms = 2;
    for (int t = 0; t < 10; ++t) {
        MultiDiffOp phi = random_multidiffop(rng, 1, M, N, 2, 1, opt);
        MultiDiffOp psi = random_multidiffop(rng, 1, M, N, 2, 1, opt);
        Polynomial a = random_polynomial(rng, M, opt);
        Polynomial b = random_polynomial(rng, M, opt);
        Polynomial f = random_polynomial(rng, N, opt);
        MultiDiffOp comp = compose_values(phi, psi);
        CHECK(comp.apply_to({a, b}, f) == phi.apply({a}).apply(psi.apply({b}).apply(f)));
    }
}

TEST_CASE("extension helpers match their evaluations") {
    SpacePtr M = base2();
    SpacePtr N = line_over_line();
    Rng rng(59);
    SampleOptions opt;
    opt.n_terms = 2;
    for (int t = 0; t < 10; ++t) {
        MultiDiffOp phi = random_multidiffop(rng, 1, M, N, 2, 1, opt);
        Polynomial a = random_polynomial(rng, M, opt);
        Polynomial b = random_polynomial(rng, M, opt);
        Polynomial f = random_polynomial(rng, N, opt);

        CHECK(left_action_extension(phi).apply_to({a, b}, f) ==
              pullback(a, N) * phi.apply_to({b}, f));
        CHECK(merge_extension(phi, 1).apply_to({a, b}, f) == phi.apply_to({a * b}, f));
        CHECK(right_action_extension(phi).apply_to({a, b}, f) ==
              phi.apply({a}).apply(pullback(b, N) * f));
    }
}

#include "dqw/star.hpp"

#include <stdexcept>
#include <string>

namespace dqw {

StarProduct::StarProduct(SpacePtr space, std::vector<MultiDiffOp> cochains)
    : space_(std::move(space)), cochains_(std::move(cochains)) {
    if (cochains_.empty())
        throw std::invalid_argument("StarProduct: need at least C_0");
    if (cochains_[0] != multiplication_cochain(2, space_))
        throw std::invalid_argument("StarProduct: C_0 must be the pointwise product");
    for (size_t r = 1; r < cochains_.size(); ++r) {
        const auto& C = cochains_[r];
        if (C.arity() != 2 || !same_space(C.source(), space_) || !same_space(C.target(), space_))
            throw std::invalid_argument("StarProduct: cochains must be bidifferential on the space");
        if (!C.has_function_values())
            throw std::invalid_argument("StarProduct: cochain values must be functions");
        if (!C.annihilates_constants(0) || !C.annihilates_constants(1))
            throw std::invalid_argument("StarProduct: unitality fails at order " + std::to_string(r));
    }
}

bool StarProduct::is_natural() const {
    for (int r = 1; r <= order_cap(); ++r)
        if (cochain(r).order_in_arg(0) > r || cochain(r).order_in_arg(1) > r)
            return false;
    return true;
}

StarProduct trivial_star(const SpacePtr& space, int order_cap) {
    std::vector<MultiDiffOp> cochains;
    cochains.push_back(multiplication_cochain(2, space));
    for (int r = 1; r <= order_cap; ++r)
        cochains.push_back(MultiDiffOp::zero(2, space, space));
    return StarProduct(space, std::move(cochains));
}

StarProduct exp_star(const std::vector<DiffOp>& fields,
                     const std::vector<std::vector<Scalar>>& matrix, int order_cap) {
    if (fields.empty())
        throw std::invalid_argument("exp_star: need at least one field");
    const SpacePtr space = fields[0].space();
    const size_t p = fields.size();
    if (matrix.size() != p)
        throw std::invalid_argument("exp_star: matrix size mismatch");
    for (const auto& row : matrix)
        if (row.size() != p)
            throw std::invalid_argument("exp_star: matrix must be square over the fields");
    for (const auto& X : fields) {
        require_same_space(X.space(), space, "exp_star fields");
        if (X.order() > 1 || !X.apply_one().is_zero())
            throw std::invalid_argument("exp_star: fields must be first order with no constant term");
    }
    for (size_t i = 0; i < p; ++i)
        for (size_t j = i + 1; j < p; ++j)
            if (!commutator(fields[i], fields[j]).is_zero())
                throw std::invalid_argument("exp_star: fields " + std::to_string(i + 1) + " and " +
                                            std::to_string(j + 1) + " do not commute");

    std::vector<MultiDiffOp> cochains;
    cochains.push_back(multiplication_cochain(2, space));

    // Tensor-square expansion: Q^r (a (x) b) as a list of (left, right) pairs.
    std::vector<std::pair<DiffOp, DiffOp>> power = {
        {DiffOp::identity(space), DiffOp::identity(space)}};
    for (int r = 1; r <= order_cap; ++r) {
        std::vector<std::pair<DiffOp, DiffOp>> next;
        for (const auto& [L, R] : power)
            for (size_t i = 0; i < p; ++i)
                for (size_t j = 0; j < p; ++j) {
                    if (matrix[i][j].is_zero())
                        continue;
                    next.emplace_back(compose(fields[i], L).scaled(matrix[i][j]),
                                      compose(fields[j], R));
                }
        power = std::move(next);
        MultiDiffOp C(2, space, space);
        Scalar inv_fact = Scalar::one() / factorial_scalar(static_cast<unsigned>(r));
        for (const auto& [L, R] : power)
            for (const auto& [I, cl] : L.terms())
                for (const auto& [J, cr] : R.terms())
                    C.add_function_term({I, J}, (cl * cr).scaled(inv_fact));
        cochains.push_back(std::move(C));
    }
    StarProduct S(space, std::move(cochains));
    S.set_generators(ExpStarData{fields, matrix});
    return S;
}

StarProduct moyal_star(int order_cap) {
    SpacePtr M = Space::base(2);
    std::vector<DiffOp> fields = {DiffOp::coordinate_derivative(M, 0),
                                  DiffOp::coordinate_derivative(M, 1)};
    std::vector<std::vector<Scalar>> A = {{Scalar(0), Scalar(1)}, {Scalar(0), Scalar(0)}};
    return exp_star(fields, A, order_cap);
}

PolySeries poly_series(const Polynomial& f, int order_cap) {
    return PolySeries::constant(order_cap, Polynomial(f.space()), f);
}

PolySeries star_multiply(const StarProduct& S, const PolySeries& f, const PolySeries& g) {
    int cap = std::min({S.order_cap(), f.order_cap(), g.order_cap()});
    PolySeries out(cap, Polynomial(S.space()));
    for (int r = 0; r <= cap; ++r)
        for (int u = 0; u <= r; ++u)
            for (int v = 0; u + v <= r; ++v)
                out.coeff(r) += S.cochain(r - u - v).apply_to({f.coeff(u), g.coeff(v)},
                                                              Polynomial::constant(S.space(),
                                                                                   Scalar::one()));
    return out;
}

Polynomial associativity_defect(const StarProduct& S, const Polynomial& a, const Polynomial& b,
                                const Polynomial& c, int r) {
    if (r > S.order_cap())
        throw std::invalid_argument("associativity_defect: order above the cap");
    Polynomial one = Polynomial::constant(S.space(), Scalar::one());
    Polynomial out(S.space());
    for (int u = 0; u <= r; ++u) {
        const auto& Cu = S.cochain(u);
        const auto& Cv = S.cochain(r - u);
        out += Cu.apply_to({Cv.apply_to({a, b}, one), c}, one);
        out -= Cu.apply_to({a, Cv.apply_to({b, c}, one)}, one);
    }
    return out;
}

Polynomial poisson_bracket(const StarProduct& S, const Polynomial& f, const Polynomial& g) {
    if (S.order_cap() < 1)
        throw std::invalid_argument("poisson_bracket: order cap must be >= 1");
    Polynomial one = Polynomial::constant(S.space(), Scalar::one());
    const auto& C1 = S.cochain(1);
    Polynomial anti = C1.apply_to({f, g}, one) - C1.apply_to({g, f}, one);
    return anti.scaled(Scalar::i() * Scalar(1, 2));
}

MultiDiffOp poisson_cochain(const StarProduct& S) {
    if (S.order_cap() < 1)
        throw std::invalid_argument("poisson_cochain: order cap must be >= 1");
    const MultiDiffOp& C1 = S.cochain(1);
    MultiDiffOp anti = C1 - permute_args(C1, {1, 0});
    return anti.scaled(Scalar::i() * Scalar(1, 2));
}

StarProduct reparametrize_square(const StarProduct& S) {
    std::vector<MultiDiffOp> cochains;
    for (int r = 0; r <= S.order_cap(); ++r)
        cochains.push_back(r % 2 == 0 ? S.cochain(r / 2)
                                      : MultiDiffOp::zero(2, S.space(), S.space()));
    return StarProduct(S.space(), std::move(cochains));
}

EquivalenceOp::EquivalenceOp(SpacePtr space, std::vector<DiffOp> higher_terms)
    : space_(std::move(space)), higher_(std::move(higher_terms)) {
    for (const auto& T : higher_) {
        require_same_space(T.space(), space_, "equivalence terms");
        if (!T.apply_one().is_zero())
            throw std::invalid_argument("EquivalenceOp: T(1) = 1 requires T_r(1) = 0");
    }
}

std::vector<DiffOp> EquivalenceOp::inverse_terms() const {
    std::vector<DiffOp> inv;
    for (int s = 1; s <= order_cap(); ++s) {
        DiffOp U = -term(s);
        for (int j = 1; j < s; ++j)
            U -= compose(inv[static_cast<size_t>(j) - 1], term(s - j));
        inv.push_back(U);
    }
    return inv;
}

StarProduct apply_equivalence(const EquivalenceOp& T, const StarProduct& S) {
    require_same_space(T.space(), S.space(), "apply_equivalence");
    if (T.order_cap() < S.order_cap())
        throw std::invalid_argument("apply_equivalence: order caps must match");
    const SpacePtr& M = S.space();
    const int N = S.order_cap();
    std::vector<DiffOp> inv = T.inverse_terms();

    auto T_of = [&](int r) { return r == 0 ? DiffOp::identity(M) : T.term(r); };
    auto U_of = [&](int r) { return r == 0 ? DiffOp::identity(M) : inv.at(static_cast<size_t>(r) - 1); };

    std::vector<MultiDiffOp> cochains;
    for (int r = 0; r <= N; ++r) {
        MultiDiffOp C(2, M, M);
        for (int s = 0; s <= r; ++s)
            for (int u = 0; s + u <= r; ++u)
                for (int v = 0; s + u + v <= r; ++v) {
                    int w = r - s - u - v;
                    MultiDiffOp inner = S.cochain(u);
                    if (v > 0)
                        inner = pre_compose_arg(inner, 0, T_of(v));
                    if (w > 0)
                        inner = pre_compose_arg(inner, 1, T_of(w));
                    if (s > 0)
                        inner = post_compose(U_of(s), inner).values_applied_to_one();
                    C += inner;
                }
        cochains.push_back(std::move(C));
    }
    return StarProduct(M, std::move(cochains));
}

} // namespace dqw

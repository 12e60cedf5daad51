#include "dqw/polynomial.hpp"

#include <algorithm>
#include <stdexcept>

namespace dqw {

Polynomial Polynomial::constant(SpacePtr space, const Scalar& c) {
    Polynomial p(std::move(space));
    p.add_term(zero_index(p.space_->dim()), c);
    return p;
}

Polynomial Polynomial::coordinate(SpacePtr space, int var) {
    if (var < 0 || var >= space->dim())
        throw std::invalid_argument("Polynomial: unknown variable index");
    Polynomial p(std::move(space));
    p.add_term(unit_index(p.space_->dim(), var), Scalar::one());
    return p;
}

Polynomial Polynomial::monomial(SpacePtr space, const MultiIndex& I, const Scalar& c) {
    Polynomial p(std::move(space));
    if (static_cast<int>(I.size()) != p.space_->dim())
        throw std::invalid_argument("Polynomial: multi-index length mismatch");
    p.add_term(I, c);
    return p;
}

bool Polynomial::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && order_of(terms_.begin()->first) == 0);
}

Scalar Polynomial::coeff(const MultiIndex& I) const {
    auto it = terms_.find(I);
    return it == terms_.end() ? Scalar::zero() : it->second;
}

int Polynomial::total_degree() const {
    if (terms_.empty())
        return -1;
    return order_of(terms_.rbegin()->first);
}

int Polynomial::degree_in(int var) const {
    int d = 0;
    for (const auto& [I, c] : terms_)
        d = std::max(d, I[static_cast<size_t>(var)]);
    return d;
}

void Polynomial::add_term(const MultiIndex& I, const Scalar& c) {
    if (c.is_zero())
        return;
    auto [it, inserted] = terms_.emplace(I, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

Polynomial Polynomial::operator-() const {
    Polynomial r(space_);
    for (const auto& [I, c] : terms_)
        r.terms_.emplace(I, -c);
    return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    require_same_space(space_, o.space_, "poly add");
    for (const auto& [I, c] : o.terms_)
        add_term(I, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    require_same_space(space_, o.space_, "poly sub");
    for (const auto& [I, c] : o.terms_)
        add_term(I, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    require_same_space(a.space_, b.space_, "poly mul");
    Polynomial r(a.space_);
    for (const auto& [I, c] : a.terms_)
        for (const auto& [J, d] : b.terms_)
            r.add_term(add_indices(I, J), c * d);
    return r;
}

Polynomial Polynomial::scaled(const Scalar& c) const {
    Polynomial r(space_);
    if (c.is_zero())
        return r;
    for (const auto& [I, d] : terms_)
        r.terms_.emplace(I, c * d);
    return r;
}

Polynomial Polynomial::pow(int e) const {
    if (e < 0)
        throw std::invalid_argument("Polynomial: negative power");
    Polynomial r = constant(space_, Scalar::one());
    for (int j = 0; j < e; ++j)
        r *= *this;
    return r;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
    return same_space(a.space_, b.space_) && a.terms_ == b.terms_;
}

Polynomial Polynomial::derivative(int var) const {
    if (var < 0 || var >= space_->dim())
        throw std::invalid_argument("Polynomial: unknown variable for derivative");
    Polynomial r(space_);
    for (const auto& [I, c] : terms_) {
        int e = I[static_cast<size_t>(var)];
        if (e == 0)
            continue;
        MultiIndex J = I;
        J[static_cast<size_t>(var)] = e - 1;
        r.add_term(J, c * Scalar(e));
    }
    return r;
}

Polynomial Polynomial::derivative(const MultiIndex& I) const {
    Polynomial r = *this;
    for (size_t v = 0; v < I.size(); ++v)
        for (int j = 0; j < I[v]; ++j)
            r = r.derivative(static_cast<int>(v));
    return r;
}

Polynomial Polynomial::derivative_by_name(const std::string& var) const {
    int v = space_->index_of(var);
    if (v < 0)
        throw std::invalid_argument("Polynomial: unknown variable '" + var + "'");
    return derivative(v);
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& images) const {
    if (static_cast<int>(images.size()) != space_->dim())
        throw std::invalid_argument("substitute: every coordinate must be mapped");
    if (images.empty())
        throw std::invalid_argument("substitute: empty image list");
    SpacePtr target = images.front().space();
    for (const auto& img : images)
        require_same_space(target, img.space(), "substitute images");
    Polynomial r(target);
    for (const auto& [I, c] : terms_) {
        Polynomial term = Polynomial::constant(target, c);
        for (size_t v = 0; v < I.size(); ++v)
            if (I[v] > 0)
                term *= images[v].pow(I[v]);
        r += term;
    }
    return r;
}

std::string Polynomial::str() const {
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [I, c] = *it;
        std::string mono;
        for (size_t v = 0; v < I.size(); ++v) {
            if (I[v] == 0)
                continue;
            if (!mono.empty())
                mono += "*";
            mono += space_->name(static_cast<int>(v));
            if (I[v] > 1)
                mono += "^" + std::to_string(I[v]);
        }
        std::string cs = c.str();
        bool negated = false;
        if (!first && cs.size() > 1 && cs[0] == '-' && c.im() == 0) {
            negated = true;
            cs = cs.substr(1);
        }
        if (!first)
            out += negated ? " - " : " + ";
        const bool needs_paren = !c.is_real() && c.re() != 0;
        if (mono.empty()) {
            out += needs_paren ? "(" + cs + ")" : cs;
        } else if (cs == "1") {
            out += mono;
        } else if (cs == "-1" && !first) {
            out += mono; // sign already emitted
        } else if (cs == "-1") {
            out += "-" + mono;
        } else {
            out += (needs_paren ? "(" + cs + ")" : cs) + "*" + mono;
        }
        first = false;
    }
    return out;
}

Polynomial antiderivative(const Polynomial& p, int var) {
    Polynomial r(p.space());
    for (const auto& [I, c] : p.terms()) {
        MultiIndex J = I;
        int e = ++J[static_cast<size_t>(var)];
        r.add_term(J, c * Scalar(1, e));
    }
    return r;
}

namespace {

// Substitutes a single variable by an image on the same space.
Polynomial subst_one(const Polynomial& p, int var, const Polynomial& image) {
    Polynomial r(p.space());
    for (const auto& [I, c] : p.terms()) {
        MultiIndex J = I;
        int e = J[static_cast<size_t>(var)];
        J[static_cast<size_t>(var)] = 0;
        Polynomial term = Polynomial::monomial(p.space(), J, c);
        if (e > 0)
            term *= image.pow(e);
        r += term;
    }
    return r;
}

} // namespace

Polynomial integrate_simplex(const Polynomial& p, const std::vector<int>& tvars) {
    Polynomial r = p;
    // Innermost variable first: t_k from 0 to t_{k-1}, ..., t_1 from 0 to 1.
    for (size_t j = tvars.size(); j-- > 0;) {
        int var = tvars[j];
        Polynomial anti = antiderivative(r, var);
        Polynomial upper =
            j == 0 ? Polynomial::constant(p.space(), Scalar::one())
                   : Polynomial::coordinate(p.space(), tvars[j - 1]);
        // Lower limit 0 contributes nothing: every term of anti has a positive
        // power of the integration variable.
        r = subst_one(anti, var, upper);
    }
    return r;
}

Polynomial integrate_simplex(const Polynomial& p, int k, const std::string& prefix) {
    std::vector<int> tvars;
    for (int j = 1; j <= k; ++j) {
        int v = p.space()->index_of(prefix + std::to_string(j));
        if (v < 0)
            throw std::invalid_argument("integrate_simplex: missing variable " + prefix +
                                        std::to_string(j));
        tvars.push_back(v);
    }
    return integrate_simplex(p, tvars);
}

Polynomial transfer(const Polynomial& p, const SpacePtr& target) {
    std::vector<int> where(static_cast<size_t>(p.space()->dim()), -1);
    for (int v = 0; v < p.space()->dim(); ++v)
        where[static_cast<size_t>(v)] = target->index_of(p.space()->name(v));
    Polynomial r(target);
    for (const auto& [I, c] : p.terms()) {
        MultiIndex J = zero_index(target->dim());
        for (size_t v = 0; v < I.size(); ++v) {
            if (I[v] == 0)
                continue;
            if (where[v] < 0)
                throw std::invalid_argument("transfer: variable " + p.space()->name(static_cast<int>(v)) +
                                            " not present in target space");
            J[static_cast<size_t>(where[v])] = I[v];
        }
        r.add_term(J, c);
    }
    return r;
}

Polynomial rename_positional(const Polynomial& p, const SpacePtr& target) {
    if (p.space()->dim() != target->dim())
        throw std::invalid_argument("rename_positional: dimension mismatch");
    Polynomial r(target);
    for (const auto& [I, c] : p.terms())
        r.add_term(I, c);
    return r;
}

Polynomial pullback(const Polynomial& a, const SpacePtr& N) {
    const int k = N->base_rank;
    if (k > a.space()->dim())
        throw std::invalid_argument("pullback: rank mismatch between spaces");
    std::vector<Polynomial> images;
    for (int v = 0; v < a.space()->dim(); ++v) {
        if (v < k)
            images.push_back(Polynomial::coordinate(N, v));
        else
            images.push_back(Polynomial(N));
    }
    return a.substitute(images);
}

} // namespace dqw

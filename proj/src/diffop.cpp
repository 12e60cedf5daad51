#include "dqw/diffop.hpp"

#include <algorithm>
#include <stdexcept>

namespace dqw {

DiffOp DiffOp::identity(SpacePtr space) {
    DiffOp d(space);
    d.add_term(zero_index(space->dim()), Polynomial::constant(space, Scalar::one()));
    return d;
}

DiffOp DiffOp::mult(const Polynomial& g) {
    DiffOp d(g.space());
    d.add_term(zero_index(g.space()->dim()), g);
    return d;
}

DiffOp DiffOp::derivative(SpacePtr space, const MultiIndex& J) {
    DiffOp d(space);
    d.add_term(J, Polynomial::constant(space, Scalar::one()));
    return d;
}

DiffOp DiffOp::coordinate_derivative(SpacePtr space, int var) {
    return derivative(space, unit_index(space->dim(), var));
}

bool DiffOp::is_identity() const {
    return terms_.size() == 1 && order_of(terms_.begin()->first) == 0 &&
           terms_.begin()->second == Polynomial::constant(space_, Scalar::one());
}

int DiffOp::order() const {
    int o = -1;
    for (const auto& [J, c] : terms_)
        o = std::max(o, order_of(J));
    return o;
}

void DiffOp::add_term(const MultiIndex& J, const Polynomial& coeff) {
    if (coeff.is_zero())
        return;
    require_same_space(space_, coeff.space(), "diffop coefficient");
    auto [it, inserted] = terms_.emplace(J, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

Polynomial DiffOp::coeff(const MultiIndex& J) const {
    auto it = terms_.find(J);
    return it == terms_.end() ? Polynomial(space_) : it->second;
}

Polynomial DiffOp::apply(const Polynomial& f) const {
    require_same_space(space_, f.space(), "diffop apply");
    Polynomial r(space_);
    for (const auto& [J, c] : terms_)
        r += c * f.derivative(J);
    return r;
}

Polynomial DiffOp::apply_one() const { return coeff(zero_index(space_->dim())); }

DiffOp DiffOp::operator-() const {
    DiffOp r(space_);
    for (const auto& [J, c] : terms_)
        r.terms_.emplace(J, -c);
    return r;
}

DiffOp& DiffOp::operator+=(const DiffOp& o) {
    require_same_space(space_, o.space_, "diffop add");
    for (const auto& [J, c] : o.terms_)
        add_term(J, c);
    return *this;
}

DiffOp& DiffOp::operator-=(const DiffOp& o) {
    require_same_space(space_, o.space_, "diffop sub");
    for (const auto& [J, c] : o.terms_)
        add_term(J, -c);
    return *this;
}

DiffOp DiffOp::scaled(const Scalar& c) const {
    DiffOp r(space_);
    if (c.is_zero())
        return r;
    for (const auto& [J, d] : terms_)
        r.terms_.emplace(J, d.scaled(c));
    return r;
}

DiffOp DiffOp::left_mult(const Polynomial& g) const {
    DiffOp r(space_);
    for (const auto& [J, c] : terms_)
        r.add_term(J, g * c);
    return r;
}

bool operator==(const DiffOp& a, const DiffOp& b) {
    return same_space(a.space_, b.space_) && a.terms_ == b.terms_;
}

DiffOp DiffOp::vertical_part() const {
    const int k = space_->base_rank;
    DiffOp r(space_);
    for (const auto& [J, c] : terms_) {
        bool vertical = true;
        for (int i = 0; i < k; ++i)
            if (J[static_cast<size_t>(i)] != 0) {
                vertical = false;
                break;
            }
        if (vertical)
            r.add_term(J, c);
    }
    return r;
}

DiffOp DiffOp::horizontal_remainder() const {
    DiffOp r = *this;
    r -= vertical_part();
    return r;
}

bool DiffOp::is_vertical() const { return horizontal_remainder().is_zero(); }

std::string DiffOp::str() const {
    if (terms_.empty())
        return "0";
    std::string out;
    for (const auto& [J, c] : terms_) {
        if (!out.empty())
            out += " + ";
        out += "(" + c.str() + ")";
        if (order_of(J) > 0) {
            out += "*D^(";
            for (size_t v = 0; v < J.size(); ++v) {
                if (v)
                    out += ",";
                out += std::to_string(J[v]);
            }
            out += ")";
        }
    }
    return out;
}

namespace {

// Enumerates all K' <= K, invoking fn(K', binom(K,K')).
template <typename Fn> void for_each_subindex(const MultiIndex& K, Fn&& fn) {
    MultiIndex Kp = zero_index(static_cast<int>(K.size()));
    while (true) {
        fn(Kp, binomial_index(K, Kp));
        size_t v = 0;
        for (; v < K.size(); ++v) {
            if (Kp[v] < K[v]) {
                ++Kp[v];
                break;
            }
            Kp[v] = 0;
        }
        if (v == K.size())
            break;
    }
}

} // namespace

DiffOp compose(const DiffOp& D, const DiffOp& E) {
    require_same_space(D.space(), E.space(), "diffop compose");
    DiffOp r(D.space());
    for (const auto& [K, dc] : D.terms()) {
        for (const auto& [L, ec] : E.terms()) {
            // d^K o (ec * d^L) = sum_{K'<=K} C(K,K') (d^{K'} ec) d^{K-K'+L}
            for_each_subindex(K, [&](const MultiIndex& Kp, long long binom) {
                Polynomial coeff = dc * ec.derivative(Kp).scaled(Scalar(binom));
                r.add_term(add_indices(sub_indices(K, Kp), L), coeff);
            });
        }
    }
    return r;
}

DiffOp commutator(const DiffOp& D, const DiffOp& E) { return compose(D, E) - compose(E, D); }

} // namespace dqw

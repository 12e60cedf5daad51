#include "dqw/multidiffop.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace dqw {

bool ArgJetsLess::operator()(const ArgJets& a, const ArgJets& b) const {
    if (a.size() != b.size())
        return a.size() < b.size();
    GradedLexLess less;
    for (size_t s = 0; s < a.size(); ++s) {
        if (less(a[s], b[s]))
            return true;
        if (less(b[s], a[s]))
            return false;
    }
    return false;
}

MultiDiffOp::MultiDiffOp(int arity, SpacePtr source, SpacePtr target)
    : arity_(arity), source_(std::move(source)), target_(std::move(target)) {
    if (arity < 0)
        throw std::invalid_argument("MultiDiffOp: negative arity");
    if (target_->base_rank > source_->dim())
        throw std::invalid_argument("MultiDiffOp: projection rank exceeds source dimension");
}

MultiDiffOp MultiDiffOp::zero(int arity, SpacePtr source, SpacePtr target) {
    return MultiDiffOp(arity, std::move(source), std::move(target));
}

MultiDiffOp MultiDiffOp::element(SpacePtr source, const DiffOp& value) {
    MultiDiffOp phi(0, std::move(source), value.space());
    phi.add_term({}, value);
    return phi;
}

void MultiDiffOp::add_term(const ArgJets& jets, const DiffOp& value) {
    if (value.is_zero())
        return;
    if (static_cast<int>(jets.size()) != arity_)
        throw std::invalid_argument("MultiDiffOp: jet tuple length != arity");
    require_same_space(target_, value.space(), "multidiffop value");
    auto [it, inserted] = terms_.emplace(jets, value);
    if (!inserted) {
        it->second += value;
        if (it->second.is_zero())
            terms_.erase(it);
    }
}

void MultiDiffOp::add_function_term(const ArgJets& jets, const Polynomial& value) {
    add_term(jets, DiffOp::mult(value));
}

DiffOp MultiDiffOp::apply(const std::vector<Polynomial>& args) const {
    if (static_cast<int>(args.size()) != arity_)
        throw std::invalid_argument("MultiDiffOp: argument count != arity");
    for (const auto& a : args)
        require_same_space(a.space(), source_, "multidiffop argument");
    DiffOp result(target_);
    for (const auto& [jets, value] : terms_) {
        Polynomial factor = Polynomial::constant(target_, Scalar::one());
        bool dead = false;
        for (size_t s = 0; s < jets.size(); ++s) {
            Polynomial jet = pullback(args[s].derivative(jets[s]), target_);
            if (jet.is_zero()) {
                dead = true;
                break;
            }
            factor *= jet;
        }
        if (!dead)
            result += value.left_mult(factor);
    }
    return result;
}

Polynomial MultiDiffOp::apply_to(const std::vector<Polynomial>& args,
                                 const Polynomial& f) const {
    return apply(args).apply(f);
}

MultiDiffOp MultiDiffOp::operator-() const {
    MultiDiffOp r(arity_, source_, target_);
    for (const auto& [jets, v] : terms_)
        r.terms_.emplace(jets, -v);
    return r;
}

MultiDiffOp& MultiDiffOp::operator+=(const MultiDiffOp& o) {
    if (arity_ != o.arity_)
        throw std::invalid_argument("MultiDiffOp: arity mismatch in add");
    require_same_space(source_, o.source_, "multidiffop add");
    require_same_space(target_, o.target_, "multidiffop add");
    for (const auto& [jets, v] : o.terms_)
        add_term(jets, v);
    return *this;
}

MultiDiffOp& MultiDiffOp::operator-=(const MultiDiffOp& o) { return *this += -o; }

MultiDiffOp MultiDiffOp::scaled(const Scalar& c) const {
    MultiDiffOp r(arity_, source_, target_);
    if (c.is_zero())
        return r;
    for (const auto& [jets, v] : terms_)
        r.terms_.emplace(jets, v.scaled(c));
    return r;
}

bool operator==(const MultiDiffOp& a, const MultiDiffOp& b) {
    return a.arity_ == b.arity_ && same_space(a.source_, b.source_) &&
           same_space(a.target_, b.target_) && a.terms_ == b.terms_;
}

int MultiDiffOp::order_in_arg(int slot) const {
    int o = 0;
    for (const auto& [jets, v] : terms_)
        o = std::max(o, order_of(jets[static_cast<size_t>(slot)]));
    return o;
}

int MultiDiffOp::value_order() const {
    int o = -1;
    for (const auto& [jets, v] : terms_)
        o = std::max(o, v.order());
    return o;
}

bool MultiDiffOp::annihilates_constants(int slot) const {
    for (const auto& [jets, v] : terms_)
        if (order_of(jets[static_cast<size_t>(slot)]) == 0)
            return false;
    return true;
}

MultiDiffOp MultiDiffOp::vertical_values() const {
    MultiDiffOp r(arity_, source_, target_);
    for (const auto& [jets, v] : terms_)
        r.add_term(jets, v.vertical_part());
    return r;
}

MultiDiffOp MultiDiffOp::values_applied_to_one() const {
    MultiDiffOp r(arity_, source_, target_);
    for (const auto& [jets, v] : terms_)
        r.add_term(jets, DiffOp::mult(v.apply_one()));
    return r;
}

bool MultiDiffOp::has_function_values() const {
    for (const auto& [jets, v] : terms_)
        if (v.order() > 0)
            return false;
    return true;
}

std::string MultiDiffOp::str() const {
    if (terms_.empty())
        return "0";
    std::string out;
    for (const auto& [jets, v] : terms_) {
        if (!out.empty())
            out += "  +  ";
        out += "[";
        for (size_t s = 0; s < jets.size(); ++s) {
            if (s)
                out += "; ";
            out += "(";
            for (size_t c = 0; c < jets[s].size(); ++c) {
                if (c)
                    out += ",";
                out += std::to_string(jets[s][c]);
            }
            out += ")";
        }
        out += "] " + v.str();
    }
    return out;
}

namespace {

// Multi-index restricted to the first k coordinates (base-supported part
// check) and its transfer to the source space (dimension m >= k).
bool base_supported(const MultiIndex& K, int k) {
    for (size_t i = static_cast<size_t>(k); i < K.size(); ++i)
        if (K[i] != 0)
            return false;
    return true;
}

MultiIndex to_source_index(const MultiIndex& K, int m, int k) {
    MultiIndex I = zero_index(m);
    for (int i = 0; i < k; ++i)
        I[static_cast<size_t>(i)] = K[static_cast<size_t>(i)];
    return I;
}

// Splittings of derivative monomials with multinomial weights.
// Enumerates tuples (K_1..K_p) of base-supported indices with sum <= K,
// calling fn(parts, remaining = K - sum, weight) where weight is the full
// multinomial coefficient of distributing K over (parts..., remaining).
void for_each_split(const MultiIndex& K, int parts, int base_k,
                    const std::function<void(const std::vector<MultiIndex>&, const MultiIndex&,
                                             long long)>& fn) {
    std::vector<MultiIndex> chosen;
    MultiIndex rest = K;
    long long weight = 1;
    std::function<void()> rec = [&]() {
        if (static_cast<int>(chosen.size()) == parts) {
            fn(chosen, rest, weight);
            return;
        }
        // enumerate base-supported Kp <= rest
        MultiIndex Kp = zero_index(static_cast<int>(K.size()));
        while (true) {
            long long w = binomial_index(rest, Kp);
            MultiIndex saved = rest;
            long long saved_weight = weight;
            rest = sub_indices(rest, Kp);
            weight *= w;
            chosen.push_back(Kp);
            rec();
            chosen.pop_back();
            rest = saved;
            weight = saved_weight;
            // advance Kp within first base_k coordinates, bounded by rest
            int v = 0;
            for (; v < base_k; ++v) {
                if (Kp[static_cast<size_t>(v)] < rest[static_cast<size_t>(v)]) {
                    ++Kp[static_cast<size_t>(v)];
                    break;
                }
                Kp[static_cast<size_t>(v)] = 0;
            }
            if (v == base_k)
                break;
        }
    };
    rec();
}

} // namespace

// Core expansion: V o mult(prod_s pr*(d_{I_s} a_s)) o W, distributing the
// derivatives of V over the pulled-back jets by Leibniz. jet_slots lists the
// term's (slot, index) pairs to differentiate; offsets map them into the
// result's slots.
static void expand_compose(const DiffOp& V, const std::vector<std::pair<int, MultiIndex>>& jets,
                           const DiffOp* W, MultiDiffOp& out, const ArgJets& fixed_jets,
                           const Scalar& prefactor) {
    const SpacePtr& N = V.space();
    const int k = N->base_rank;
    const int m = out.source()->dim();
    const int p = static_cast<int>(jets.size());
    for (const auto& [K, vK] : V.terms()) {
        for_each_split(K, p, k,
                       [&](const std::vector<MultiIndex>& parts, const MultiIndex& rest,
                           long long weight) {
                           ArgJets new_jets = fixed_jets;
                           for (int t = 0; t < p; ++t) {
                               if (!base_supported(parts[static_cast<size_t>(t)], k))
                                   return; // enumeration is base-bounded; guard anyway
                               auto& J = new_jets[static_cast<size_t>(jets[static_cast<size_t>(t)].first)];
                               J = add_indices(jets[static_cast<size_t>(t)].second,
                                               to_source_index(parts[static_cast<size_t>(t)], m, k));
                           }
                           DiffOp tail = DiffOp::derivative(N, rest);
                           if (W != nullptr)
                               tail = compose(tail, *W);
                           DiffOp value = tail.left_mult(vK).scaled(prefactor * Scalar(weight));
                           out.add_term(new_jets, value);
                       });
    }
}

MultiDiffOp post_compose(const DiffOp& D, const MultiDiffOp& phi) {
    require_same_space(D.space(), phi.target(), "post_compose");
    MultiDiffOp out(phi.arity(), phi.source(), phi.target());
    for (const auto& [jets, V] : phi.terms()) {
        std::vector<std::pair<int, MultiIndex>> jet_list;
        for (int s = 0; s < phi.arity(); ++s)
            jet_list.emplace_back(s, jets[static_cast<size_t>(s)]);
        ArgJets fixed(static_cast<size_t>(phi.arity()), MultiIndex(zero_index(phi.source()->dim())));
        expand_compose(D, jet_list, &V, out, fixed, Scalar::one());
    }
    return out;
}

MultiDiffOp value_right_compose(const MultiDiffOp& phi, const DiffOp& D) {
    require_same_space(D.space(), phi.target(), "value_right_compose");
    MultiDiffOp out(phi.arity(), phi.source(), phi.target());
    for (const auto& [jets, V] : phi.terms())
        out.add_term(jets, compose(V, D));
    return out;
}

MultiDiffOp pre_compose_arg(const MultiDiffOp& phi, int slot, const DiffOp& T) {
    require_same_space(T.space(), phi.source(), "pre_compose_arg");
    if (slot < 0 || slot >= phi.arity())
        throw std::invalid_argument("pre_compose_arg: slot out of range");
    MultiDiffOp out(phi.arity(), phi.source(), phi.target());
    for (const auto& [jets, V] : phi.terms()) {
        const MultiIndex& I = jets[static_cast<size_t>(slot)];
        for (const auto& [L, tL] : T.terms()) {
            // d_I(T a) = sum_{I''<=I} C(I,I'') (d_{I''} t_L) d_{I-I''+L} a
            for (MultiIndex Ipp = zero_index(phi.source()->dim());;) {
                long long binom = binomial_index(I, Ipp);
                Polynomial factor = tL.derivative(Ipp);
                if (!factor.is_zero()) {
                    ArgJets new_jets = jets;
                    new_jets[static_cast<size_t>(slot)] = add_indices(sub_indices(I, Ipp), L);
                    out.add_term(new_jets,
                                 V.left_mult(pullback(factor, phi.target())).scaled(Scalar(binom)));
                }
                size_t v = 0;
                for (; v < Ipp.size(); ++v) {
                    if (Ipp[v] < I[v]) {
                        ++Ipp[v];
                        break;
                    }
                    Ipp[v] = 0;
                }
                if (v == Ipp.size())
                    break;
            }
        }
    }
    return out;
}

MultiDiffOp insert_function_cochain(const MultiDiffOp& phi, const MultiDiffOp& psi) {
    if (phi.arity() != 1)
        throw std::invalid_argument("insert_function_cochain: phi must be unary");
    require_same_space(phi.source(), psi.source(), "insert_function_cochain");
    require_same_space(psi.source(), psi.target(), "insert_function_cochain: psi must be scalar-valued on the source");
    if (!psi.has_function_values())
        throw std::invalid_argument("insert_function_cochain: psi must have function values");
    const int q = psi.arity();
    const int m = phi.source()->dim();
    MultiDiffOp out(q, phi.source(), phi.target());
    for (const auto& [jets, V] : phi.terms()) {
        const MultiIndex& I = jets[0];
        for (const auto& [pjets, pvalue] : psi.terms()) {
            Polynomial g = pvalue.apply_one();
            // d_I(g * prod_t d_{J_t} a_t): distribute I over the q+1 factors.
            for_each_split(I, q, m,
                           [&](const std::vector<MultiIndex>& parts, const MultiIndex& I0,
                               long long weight) {
                               Polynomial factor = g.derivative(I0);
                               if (factor.is_zero())
                                   return;
                               ArgJets new_jets(static_cast<size_t>(q));
                               for (int t = 0; t < q; ++t)
                                   new_jets[static_cast<size_t>(t)] = add_indices(
                                       pjets[static_cast<size_t>(t)], parts[static_cast<size_t>(t)]);
                               out.add_term(new_jets,
                                            V.left_mult(pullback(factor, phi.target()))
                                                .scaled(Scalar(weight)));
                           });
        }
    }
    return out;
}

MultiDiffOp compose_values(const MultiDiffOp& phi, const MultiDiffOp& psi) {
    require_same_space(phi.source(), psi.source(), "compose_values");
    require_same_space(phi.target(), psi.target(), "compose_values");
    const int p = phi.arity(), q = psi.arity();
    MultiDiffOp out(p + q, phi.source(), phi.target());
    for (const auto& [fjets, V] : phi.terms()) {
        for (const auto& [pjets, W] : psi.terms()) {
            ArgJets fixed(static_cast<size_t>(p + q), zero_index(phi.source()->dim()));
            for (int s = 0; s < p; ++s)
                fixed[static_cast<size_t>(s)] = fjets[static_cast<size_t>(s)];
            std::vector<std::pair<int, MultiIndex>> jet_list;
            for (int t = 0; t < q; ++t)
                jet_list.emplace_back(p + t, pjets[static_cast<size_t>(t)]);
            expand_compose(V, jet_list, &W, out, fixed, Scalar::one());
        }
    }
    return out;
}

MultiDiffOp permute_args(const MultiDiffOp& phi, const std::vector<int>& perm) {
    if (static_cast<int>(perm.size()) != phi.arity())
        throw std::invalid_argument("permute_args: permutation length mismatch");
    MultiDiffOp out(phi.arity(), phi.source(), phi.target());
    for (const auto& [jets, V] : phi.terms()) {
        ArgJets new_jets(jets.size());
        for (size_t s = 0; s < jets.size(); ++s)
            new_jets[s] = jets[static_cast<size_t>(perm[s])];
        out.add_term(new_jets, V);
    }
    return out;
}

MultiDiffOp multiplication_cochain(int arity, const SpacePtr& source) {
    MultiDiffOp out(arity, source, source);
    ArgJets jets(static_cast<size_t>(arity), zero_index(source->dim()));
    out.add_term(jets, DiffOp::identity(source));
    return out;
}

MultiDiffOp left_action_extension(const MultiDiffOp& phi) {
    MultiDiffOp out(phi.arity() + 1, phi.source(), phi.target());
    for (const auto& [jets, V] : phi.terms()) {
        ArgJets new_jets;
        new_jets.push_back(zero_index(phi.source()->dim()));
        new_jets.insert(new_jets.end(), jets.begin(), jets.end());
        out.add_term(new_jets, V);
    }
    return out;
}

MultiDiffOp merge_extension(const MultiDiffOp& phi, int i) {
    if (i < 1 || i > phi.arity())
        throw std::invalid_argument("merge_extension: position out of range");
    MultiDiffOp out(phi.arity() + 1, phi.source(), phi.target());
    for (const auto& [jets, V] : phi.terms()) {
        const MultiIndex& I = jets[static_cast<size_t>(i - 1)];
        // d_I(a*b) = sum_{I'<=I} C(I,I') (d_{I'} a)(d_{I-I'} b)
        for (MultiIndex Ip = zero_index(phi.source()->dim());;) {
            ArgJets new_jets;
            new_jets.reserve(jets.size() + 1);
            for (size_t s = 0; s + 1 <= static_cast<size_t>(i - 1); ++s)
                new_jets.push_back(jets[s]);
            new_jets.push_back(Ip);
            new_jets.push_back(sub_indices(I, Ip));
            for (size_t s = static_cast<size_t>(i); s < jets.size(); ++s)
                new_jets.push_back(jets[s]);
            out.add_term(new_jets, V.scaled(Scalar(binomial_index(I, Ip))));
            size_t v = 0;
            for (; v < Ip.size(); ++v) {
                if (Ip[v] < I[v]) {
                    ++Ip[v];
                    break;
                }
                Ip[v] = 0;
            }
            if (v == Ip.size())
                break;
        }
    }
    return out;
}

MultiDiffOp right_action_extension(const MultiDiffOp& phi) {
    const int p = phi.arity();
    MultiDiffOp out(p + 1, phi.source(), phi.target());
    for (const auto& [jets, V] : phi.terms()) {
        ArgJets fixed(static_cast<size_t>(p + 1), zero_index(phi.source()->dim()));
        for (int s = 0; s < p; ++s)
            fixed[static_cast<size_t>(s)] = jets[static_cast<size_t>(s)];
        std::vector<std::pair<int, MultiIndex>> jet_list;
        jet_list.emplace_back(p, zero_index(phi.source()->dim()));
        expand_compose(V, jet_list, nullptr, out, fixed, Scalar::one());
    }
    return out;
}

} // namespace dqw

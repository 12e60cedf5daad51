#include "dqw/sampling.hpp"

namespace dqw {

namespace {

std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

} // namespace

std::uint64_t Rng::next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
}

std::uint64_t Rng::uniform(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

long Rng::range(long lo, long hi) {
    return lo + static_cast<long>(uniform(static_cast<std::uint64_t>(hi - lo + 1)));
}

Rng Rng::child(std::uint64_t tag) const {
    Rng c(mix(state_ ^ mix(tag ^ 0xA5A5A5A5A5A5A5A5ULL)));
    return c;
}

Scalar random_scalar(Rng& rng, const SampleOptions& opt) {
    long h = opt.coeff_height;
    long re = rng.range(-h, h);
    long im = 0;
    if (opt.gaussian && rng.uniform(3) == 0)
        im = rng.range(-h, h);
    if (re == 0 && im == 0)
        re = 1;
    return Scalar(mpq_class(re), mpq_class(im));
}

namespace {

MultiIndex random_index(Rng& rng, int dim, int max_total) {
    MultiIndex I = zero_index(dim);
    int total = static_cast<int>(rng.uniform(static_cast<std::uint64_t>(max_total) + 1));
    for (int j = 0; j < total; ++j)
        ++I[static_cast<size_t>(rng.uniform(static_cast<std::uint64_t>(dim)))];
    return I;
}

} // namespace

Polynomial random_polynomial(Rng& rng, const SpacePtr& space, const SampleOptions& opt) {
    Polynomial p(space);
    for (int t = 0; t < opt.n_terms; ++t)
        p.add_term(random_index(rng, space->dim(), opt.max_degree), random_scalar(rng, opt));
    if (p.is_zero())
        p = Polynomial::constant(space, Scalar::one());
    return p;
}

DiffOp random_diffop(Rng& rng, const SpacePtr& space, int max_order, const SampleOptions& opt) {
    DiffOp d(space);
    for (int t = 0; t < opt.n_terms; ++t) {
        MultiIndex J = random_index(rng, space->dim(), max_order);
        Polynomial c(space);
        c.add_term(random_index(rng, space->dim(), opt.max_degree), random_scalar(rng, opt));
        d.add_term(J, c);
    }
    if (d.is_zero())
        d = DiffOp::identity(space);
    return d;
}

MultiDiffOp random_multidiffop(Rng& rng, int arity, const SpacePtr& source, const SpacePtr& target,
                               int max_jet_order, int max_value_order, const SampleOptions& opt) {
    MultiDiffOp phi(arity, source, target);
    for (int t = 0; t < opt.n_terms; ++t) {
        ArgJets jets(static_cast<size_t>(arity));
        for (int s = 0; s < arity; ++s)
            jets[static_cast<size_t>(s)] = random_index(rng, source->dim(), max_jet_order);
        DiffOp v(target);
        MultiIndex J = random_index(rng, target->dim(), max_value_order);
        Polynomial c(target);
        c.add_term(random_index(rng, target->dim(), opt.max_degree), random_scalar(rng, opt));
        v.add_term(J, c);
        phi.add_term(jets, v);
    }
    return phi;
}

MultiDiffOp random_function_cochain(Rng& rng, int arity, const SpacePtr& source,
                                    const SpacePtr& target, int max_jet_order,
                                    const SampleOptions& opt) {
    return random_multidiffop(rng, arity, source, target, max_jet_order, 0, opt);
}

BarChain random_bar_chain(Rng& rng, int m, int degree, const SampleOptions& opt) {
    SpacePtr sp = bar_space(m, degree);
    return BarChain{m, degree, random_polynomial(rng, sp, opt)};
}

KoszulChain random_koszul_chain(Rng& rng, int m, int degree, const SampleOptions& opt) {
    SpacePtr sp = pair_space(m);
    KoszulChain out = KoszulChain::zero(m, degree);
    // random increasing tuple
    for (int t = 0; t < 2; ++t) {
        IncTuple T;
        for (int v = 0; v < m && static_cast<int>(T.size()) < degree; ++v)
            if (rng.uniform(2) == 0 || m - v <= degree - static_cast<int>(T.size()))
                T.push_back(v);
        if (static_cast<int>(T.size()) != degree)
            continue;
        out.add(T, random_polynomial(rng, sp, opt));
    }
    if (out.is_zero() && degree <= m) {
        IncTuple T;
        for (int v = 0; v < degree; ++v)
            T.push_back(v);
        out.add(T, random_polynomial(rng, sp, opt));
    }
    return out;
}

KoszulCochain random_koszul_cochain(Rng& rng, int m, int degree, const SpacePtr& target,
                                    int max_value_order, bool vertical_values,
                                    const SampleOptions& opt) {
    KoszulCochain out = KoszulCochain::zero(m, degree, target);
    for (int t = 0; t < 2; ++t) {
        IncTuple T;
        for (int v = 0; v < m && static_cast<int>(T.size()) < degree; ++v)
            if (rng.uniform(2) == 0 || m - v <= degree - static_cast<int>(T.size()))
                T.push_back(v);
        if (static_cast<int>(T.size()) != degree)
            continue;
        DiffOp v = random_diffop(rng, target, max_value_order, opt);
        if (vertical_values) {
            v = v.vertical_part();
            if (v.is_zero())
                v = DiffOp::mult(random_polynomial(rng, target, opt));
        }
        out.add(T, v);
    }
    return out;
}

} // namespace dqw

#include "dqw/hochschild.hpp"

#include "dqw/cohomology.hpp"
#include "dqw/koszul.hpp"
#include "dqw/sampling.hpp"

#include <algorithm>
#include <stdexcept>

namespace dqw {

MultiDiffOp hochschild_differential(const MultiDiffOp& phi) {
    const int p = phi.arity();
    MultiDiffOp out = left_action_extension(phi);
    for (int i = 1; i <= p; ++i) {
        MultiDiffOp term = merge_extension(phi, i);
        out += i % 2 == 0 ? term : -term;
    }
    MultiDiffOp right = right_action_extension(phi);
    out += (p + 1) % 2 == 0 ? right : -right;
    return out;
}

CocycleCheck is_cocycle(const MultiDiffOp& phi, std::uint64_t seed) {
    CocycleCheck res;
    MultiDiffOp d = hochschild_differential(phi);
    res.closed = d.is_zero();
    if (res.closed)
        return res;
    // Hunt a witness tuple: coordinates first, then random polynomials.
    const SpacePtr& M = phi.source();
    std::vector<std::vector<Polynomial>> candidates;
    const int p = d.arity();
    for (int v = 0; v < M->dim(); ++v)
        candidates.push_back(
            std::vector<Polynomial>(static_cast<size_t>(p), Polynomial::coordinate(M, v)));
    Rng rng(seed);
    SampleOptions opt;
    for (int t = 0; t < 64; ++t) {
        std::vector<Polynomial> args;
        for (int s = 0; s < p; ++s)
            args.push_back(random_polynomial(rng, M, opt));
        candidates.push_back(std::move(args));
    }
    for (const auto& args : candidates) {
        DiffOp value = d.apply(args);
        if (!value.is_zero()) {
            std::string w = "(";
            for (size_t s = 0; s < args.size(); ++s)
                w += (s ? ", " : "") + args[s].str();
            w += ") -> " + value.str();
            res.witness = w;
            return res;
        }
    }
    res.witness = "nonzero differential; no witness sampled";
    return res;
}

MultiDiffOp antisymmetrize(const MultiDiffOp& phi) {
    const int p = phi.arity();
    if (p <= 1)
        return phi;
    std::vector<int> perm(static_cast<size_t>(p));
    for (int s = 0; s < p; ++s)
        perm[static_cast<size_t>(s)] = s;
    MultiDiffOp out = MultiDiffOp::zero(p, phi.source(), phi.target());
    long long count = 0;
    do {
        int inv = 0;
        for (int a = 0; a < p; ++a)
            for (int b = a + 1; b < p; ++b)
                if (perm[static_cast<size_t>(a)] > perm[static_cast<size_t>(b)])
                    ++inv;
        MultiDiffOp term = permute_args(phi, perm);
        out += inv % 2 == 0 ? term : -term;
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out.scaled(Scalar(1, count));
}

KoszulCochain class_of(const MultiDiffOp& phi, ModuleTag tag) {
    CocycleCheck check = is_cocycle(phi);
    if (!check.closed)
        throw std::invalid_argument("class_of: input is not a cocycle; witness " + check.witness);
    MultiDiffOp reduced = tag == ModuleTag::DiffOps ? phi.vertical_values() : phi;
    reduced = antisymmetrize(reduced);

    const int p = phi.arity();
    const int m = phi.source()->dim();
    KoszulCochain eta = KoszulCochain::zero(m, p, phi.target());
    for (const auto& [jets, V] : reduced.terms()) {
        IncTuple T;
        bool unit_jets = true;
        for (const auto& I : jets) {
            if (order_of(I) != 1) {
                unit_jets = false;
                break;
            }
            for (int v = 0; v < m; ++v)
                if (I[static_cast<size_t>(v)] == 1)
                    T.push_back(v);
        }
        if (!unit_jets)
            throw std::invalid_argument(
                "class_of: antisymmetrized cocycle has a non-unit jet term (finding)");
        bool increasing = true;
        for (size_t s = 0; s + 1 < T.size(); ++s)
            if (T[s] >= T[s + 1])
                increasing = false;
        if (!increasing)
            continue; // accounted for by the sorted term of the antisymmetric cochain
        eta.add(T, V);
    }
    if (koszul_cochain_embed(eta, phi.source()) != reduced)
        throw std::invalid_argument(
            "class_of: antisymmetrization is not exterior-basis shaped (finding)");

    if (tag == ModuleTag::Functions)
        return eta; // the cochain differential is trivial for symmetric values

    ClassReduction red = reduce_koszul_class(eta);
    if (!red.exact_part_verified)
        throw std::invalid_argument("class_of: could not certify the exact part (finding)");
    return red.harmonic;
}

} // namespace dqw

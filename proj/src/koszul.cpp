#include "dqw/koszul.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace dqw {

WedgeResult wedge_insert(int i, const IncTuple& T) {
    WedgeResult r;
    int below = 0;
    for (int t : T) {
        if (t == i)
            return r; // sign 0
        if (t < i)
            ++below;
    }
    r.tuple = T;
    r.tuple.insert(std::upper_bound(r.tuple.begin(), r.tuple.end(), i), i);
    r.sign = below % 2 == 0 ? 1 : -1;
    return r;
}

SpacePtr bar_space(int m, int degree) {
    std::vector<std::string> names;
    for (int c = 1; c <= m; ++c)
        names.push_back("v" + std::to_string(c));
    for (int b = 1; b <= degree; ++b)
        for (int c = 1; c <= m; ++c)
            names.push_back("q" + std::to_string(b) + "_" + std::to_string(c));
    for (int c = 1; c <= m; ++c)
        names.push_back("w" + std::to_string(c));
    return Space::named(std::move(names), 0);
}

SpacePtr pair_space(int m) { return bar_space(m, 0); }

BarChain BarChain::make(int m, int degree, Polynomial p) {
    if (!same_space(p.space(), bar_space(m, degree)))
        throw std::invalid_argument("BarChain: polynomial not on the block space");
    return BarChain{m, degree, std::move(p)};
}

KoszulChain KoszulChain::zero(int m, int degree) { return KoszulChain{m, degree, {}}; }

void KoszulChain::add(const IncTuple& T, const Polynomial& p) {
    if (static_cast<int>(T.size()) != degree)
        throw std::invalid_argument("KoszulChain: tuple size != degree");
    if (p.is_zero())
        return;
    auto [it, inserted] = comps.emplace(T, p);
    if (!inserted) {
        it->second += p;
        if (it->second.is_zero())
            comps.erase(it);
    }
}

bool operator==(const KoszulChain& a, const KoszulChain& b) {
    return a.m == b.m && a.degree == b.degree && a.comps == b.comps;
}

KoszulCochain KoszulCochain::zero(int m, int degree, SpacePtr target) {
    return KoszulCochain{m, degree, std::move(target), {}};
}

void KoszulCochain::add(const IncTuple& T, const DiffOp& value) {
    if (static_cast<int>(T.size()) != degree)
        throw std::invalid_argument("KoszulCochain: tuple size != degree");
    if (value.is_zero())
        return;
    auto [it, inserted] = comps.emplace(T, value);
    if (!inserted) {
        it->second += value;
        if (it->second.is_zero())
            comps.erase(it);
    }
}

bool operator==(const KoszulCochain& a, const KoszulCochain& b) {
    return a.m == b.m && a.degree == b.degree && same_space(a.target, b.target) &&
           a.comps == b.comps;
}

KoszulCochain KoszulCochain::scaled(const Scalar& c) const {
    KoszulCochain r = zero(m, degree, target);
    if (c.is_zero())
        return r;
    for (const auto& [T, v] : comps)
        r.comps.emplace(T, v.scaled(c));
    return r;
}

KoszulCochain operator+(const KoszulCochain& a, const KoszulCochain& b) {
    KoszulCochain r = a;
    for (const auto& [T, v] : b.comps)
        r.add(T, v);
    return r;
}

KoszulCochain operator-(const KoszulCochain& a, const KoszulCochain& b) {
    return a + b.scaled(Scalar(-1));
}

namespace {

// Substitution between m-block spaces: source block b maps to target block
// assign[b]; both polynomials use m coordinates per block.
Polynomial block_subst(const Polynomial& p, int m, const SpacePtr& target,
                       const std::vector<int>& assign) {
    std::vector<Polynomial> images;
    const int src_blocks = p.space()->dim() / m;
    images.reserve(static_cast<size_t>(p.space()->dim()));
    for (int b = 0; b < src_blocks; ++b)
        for (int c = 0; c < m; ++c)
            images.push_back(Polynomial::coordinate(target, assign[static_cast<size_t>(b)] * m + c));
    return p.substitute(images);
}

// Substitution of an entire block space onto the base space (all blocks to
// the base coordinates).
Polynomial diagonal_to_base(const Polynomial& p, int m, const SpacePtr& base) {
    std::vector<Polynomial> images;
    const int src_blocks = p.space()->dim() / m;
    for (int b = 0; b < src_blocks; ++b)
        for (int c = 0; c < m; ++c)
            images.push_back(Polynomial::coordinate(base, c));
    return p.substitute(images);
}

// Derivative along one block with the exponents of an m-multi-index.
Polynomial block_derivative(const Polynomial& p, int m, int block, const MultiIndex& I) {
    Polynomial r = p;
    for (int c = 0; c < m; ++c)
        for (int j = 0; j < I[static_cast<size_t>(c)]; ++j)
            r = r.derivative(block * m + c);
    return r;
}

std::vector<std::vector<int>> permutations_with_sign(int k, std::vector<int>& signs) {
    std::vector<int> perm(static_cast<size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> perms;
    signs.clear();
    do {
        int inv = 0;
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b)
                if (perm[static_cast<size_t>(a)] > perm[static_cast<size_t>(b)])
                    ++inv;
        perms.push_back(perm);
        signs.push_back(inv % 2 == 0 ? 1 : -1);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return perms;
}

// All index tuples (i_1..i_k) in [0,m)^k.
bool advance_tuple(std::vector<int>& idx, int m) {
    for (size_t v = 0; v < idx.size(); ++v) {
        if (++idx[v] < m)
            return true;
        idx[v] = 0;
    }
    return false;
}

} // namespace

BarChain bar_differential(const BarChain& chi) {
    if (chi.degree < 1)
        throw std::invalid_argument("bar_differential: degree must be >= 1 (use the augmentation)");
    const int k = chi.degree, m = chi.m;
    SpacePtr target = bar_space(m, k - 1);
    Polynomial out(target);
    for (int i = 0; i <= k; ++i) {
        // duplicate the i-th entry of the shorter tuple (v, q_1..q_{k-1}, w)
        std::vector<int> assign(static_cast<size_t>(k + 2));
        for (int j = 0; j <= k + 1; ++j)
            assign[static_cast<size_t>(j)] = j <= i ? j : j - 1;
        Polynomial term = block_subst(chi.poly, m, target, assign);
        out += i % 2 == 0 ? term : -term;
    }
    return BarChain{m, k - 1, out};
}

Polynomial bar_augmentation(const BarChain& chi, const SpacePtr& base) {
    if (chi.degree != 0)
        throw std::invalid_argument("bar_augmentation: degree must be 0");
    return diagonal_to_base(chi.poly, chi.m, base);
}

BarChain bar_unit(const Polynomial& a) {
    const int m = a.space()->dim();
    SpacePtr target = pair_space(m);
    std::vector<Polynomial> images;
    for (int c = 0; c < m; ++c)
        images.push_back(Polynomial::coordinate(target, c));
    return BarChain{m, 0, a.substitute(images)};
}

BarChain bar_homotopy(const BarChain& chi) {
    const int k = chi.degree, m = chi.m;
    SpacePtr target = bar_space(m, k + 1);
    // chi's w-slot receives the new last q-block; the result ignores w.
    std::vector<int> assign(static_cast<size_t>(k + 2));
    for (int j = 0; j <= k + 1; ++j)
        assign[static_cast<size_t>(j)] = j;
    Polynomial out = block_subst(chi.poly, m, target, assign);
    if (k % 2 == 0)
        out = -out;
    return BarChain{m, k + 1, out};
}

KoszulChain koszul_differential(const KoszulChain& omega) {
    if (omega.degree < 1)
        throw std::invalid_argument("koszul_differential: degree must be >= 1");
    const int m = omega.m;
    SpacePtr sp = pair_space(m);
    KoszulChain out = KoszulChain::zero(m, omega.degree - 1);
    for (const auto& [T, p] : omega.comps) {
        for (size_t pos = 0; pos < T.size(); ++pos) {
            int i = T[pos];
            IncTuple rest;
            for (size_t s = 0; s < T.size(); ++s)
                if (s != pos)
                    rest.push_back(T[s]);
            Polynomial xi = Polynomial::coordinate(sp, i) - Polynomial::coordinate(sp, m + i);
            Polynomial term = xi * p;
            out.add(rest, pos % 2 == 0 ? term : -term);
        }
    }
    return out;
}

Polynomial koszul_augmentation(const KoszulChain& omega, const SpacePtr& base) {
    if (omega.degree != 0)
        throw std::invalid_argument("koszul_augmentation: degree must be 0");
    auto it = omega.comps.find(IncTuple{});
    Polynomial p = it == omega.comps.end() ? Polynomial(pair_space(omega.m)) : it->second;
    return diagonal_to_base(p, omega.m, base);
}

KoszulChain koszul_unit(const Polynomial& a) {
    BarChain b = bar_unit(a);
    KoszulChain r = KoszulChain::zero(b.m, 0);
    r.add(IncTuple{}, b.poly);
    return r;
}

KoszulChain koszul_homotopy(const KoszulChain& omega) {
    const int m = omega.m, k = omega.degree;
    SpacePtr sp = pair_space(m);
    // working space (v, w, t)
    std::vector<std::string> names = sp->names;
    names.push_back("t");
    SpacePtr work = Space::named(names, 0);
    const int tvar = 2 * m;
    Polynomial t = Polynomial::coordinate(work, tvar);
    Polynomial one_minus_t = Polynomial::constant(work, Scalar::one()) - t;
    std::vector<Polynomial> images;
    for (int c = 0; c < m; ++c)
        images.push_back(Polynomial::coordinate(work, c)); // v fixed
    for (int c = 0; c < m; ++c)
        images.push_back(t * Polynomial::coordinate(work, m + c) +
                         one_minus_t * Polynomial::coordinate(work, c)); // w -> tw + (1-t)v

    KoszulChain out = KoszulChain::zero(m, k + 1);
    for (const auto& [T, p] : omega.comps) {
        for (int j = 0; j < m; ++j) {
            WedgeResult w = wedge_insert(j, T);
            if (w.sign == 0)
                continue;
            Polynomial dw = p.derivative(m + j); // d/dw^j on the pair space
            if (dw.is_zero())
                continue;
            Polynomial integrand = dw.substitute(images) * t.pow(k);
            Polynomial integral = integrate_simplex(integrand, {tvar});
            Polynomial res = transfer(integral, sp);
            out.add(w.tuple, res.scaled(Scalar(-w.sign)));
        }
    }
    return out;
}

BarChain koszul_to_bar(const KoszulChain& omega) {
    const int m = omega.m, k = omega.degree;
    SpacePtr target = bar_space(m, k);
    // v and w blocks keep their roles; q-blocks are fresh.
    std::vector<int> assign = {0, k + 1};
    Polynomial out(target);
    std::vector<int> signs;
    auto perms = permutations_with_sign(k, signs);
    for (const auto& [T, p] : omega.comps) {
        Polynomial base = block_subst(p, m, target, assign);
        for (size_t pi = 0; pi < perms.size(); ++pi) {
            Polynomial factor = Polynomial::constant(target, Scalar(signs[pi]));
            for (int a = 0; a < k; ++a) {
                int block = perms[pi][static_cast<size_t>(a)] + 1; // q_{sigma(a)+1}
                int comp = T[static_cast<size_t>(a)];
                factor *= Polynomial::coordinate(target, block * m + comp) -
                          Polynomial::coordinate(target, comp);
            }
            out += base * factor;
        }
    }
    return BarChain{m, k, out};
}

namespace {

// Shared inner integral of G and the explicit projection: the iterated
// simplex integral of the mixed q-partial of chi at convex combinations,
// as a polynomial on the pair space.
Polynomial g_integral(const BarChain& chi, const std::vector<int>& idx) {
    const int m = chi.m, k = chi.degree;
    SpacePtr sp = pair_space(m);
    std::vector<std::string> names = sp->names;
    for (int j = 1; j <= k; ++j)
        names.push_back("t" + std::to_string(j));
    SpacePtr work = Space::named(names, 0);

    Polynomial mixed = chi.poly;
    for (int a = 0; a < k; ++a)
        mixed = mixed.derivative((a + 1) * m + idx[static_cast<size_t>(a)]);
    if (mixed.is_zero())
        return Polynomial(sp);

    std::vector<Polynomial> images;
    for (int c = 0; c < m; ++c)
        images.push_back(Polynomial::coordinate(work, c)); // v
    for (int a = 1; a <= k; ++a) {
        Polynomial t = Polynomial::coordinate(work, 2 * m + (a - 1));
        Polynomial omt = Polynomial::constant(work, Scalar::one()) - t;
        for (int c = 0; c < m; ++c)
            images.push_back(t * Polynomial::coordinate(work, c) +
                             omt * Polynomial::coordinate(work, m + c)); // q_a -> t_a v + (1-t_a) w
    }
    for (int c = 0; c < m; ++c)
        images.push_back(Polynomial::coordinate(work, m + c)); // w

    std::vector<int> tvars;
    for (int j = 0; j < k; ++j)
        tvars.push_back(2 * m + j);
    Polynomial integral = integrate_simplex(mixed.substitute(images), tvars);
    return transfer(integral, sp);
}

} // namespace

KoszulChain bar_to_koszul(const BarChain& chi) {
    const int m = chi.m, k = chi.degree;
    KoszulChain out = KoszulChain::zero(m, k);
    std::vector<int> idx(static_cast<size_t>(k), 0);
    if (k == 0) {
        out.add(IncTuple{}, g_integral(chi, idx));
        return out;
    }
    do {
        // wedge e^{i_1} ^ .. ^ e^{i_k}: skip repeats, sort with sign
        IncTuple T;
        int sign = 1;
        bool zero = false;
        for (int a = 0; a < k && !zero; ++a) {
            WedgeResult w = wedge_insert(idx[static_cast<size_t>(a)], T);
            if (w.sign == 0)
                zero = true;
            else {
                // prepend convention: e^{i_a} multiplies from the right of the
                // already-collected wedge, so count positions from the left
                int below = 0;
                for (int t : T)
                    if (t < idx[static_cast<size_t>(a)])
                        ++below;
                int above = static_cast<int>(T.size()) - below;
                sign *= (above % 2 == 0) ? 1 : -1;
                T = w.tuple;
            }
        }
        if (zero)
            continue;
        Polynomial integral = g_integral(chi, idx);
        out.add(T, integral.scaled(Scalar(sign)));
    } while (advance_tuple(idx, m));
    return out;
}

BarChain bar_projection(const BarChain& chi) {
    const int m = chi.m, k = chi.degree;
    SpacePtr target = bar_space(m, k);
    Polynomial out(target);
    std::vector<int> signs;
    auto perms = permutations_with_sign(k, signs);
    std::vector<int> idx(static_cast<size_t>(k), 0);
    do {
        Polynomial integral = g_integral(chi, idx);
        if (integral.is_zero())
            continue;
        Polynomial lifted = block_subst(integral, m, target, {0, k + 1});
        for (size_t pi = 0; pi < perms.size(); ++pi) {
            Polynomial factor = Polynomial::constant(target, Scalar(signs[pi]));
            for (int a = 0; a < k; ++a) {
                int comp = idx[static_cast<size_t>(perms[pi][static_cast<size_t>(a)])];
                factor *= Polynomial::coordinate(target, (a + 1) * m + comp) -
                          Polynomial::coordinate(target, comp);
            }
            out += lifted * factor;
        }
    } while (k > 0 && advance_tuple(idx, m));
    return BarChain{m, k, out};
}

DiffOp BarCochain::eval(const BarChain& chi) const {
    const MultiDiffOp& phi = rep;
    const int m = chi.m, k = degree;
    if (chi.degree != k)
        throw std::invalid_argument("BarCochain: degree mismatch");
    const SpacePtr& M = phi.source();
    const SpacePtr& N = phi.target();
    DiffOp out(N);
    for (const auto& [jets, V] : phi.terms()) {
        Polynomial mixed = chi.poly;
        for (int a = 0; a < k; ++a)
            mixed = block_derivative(mixed, m, a + 1, jets[static_cast<size_t>(a)]);
        mixed = block_derivative(mixed, m, k + 1, jets[static_cast<size_t>(k)]); // w-jets
        if (mixed.is_zero())
            continue;
        Polynomial diag = diagonal_to_base(mixed, m, M);
        out += V.left_mult(pullback(diag, N));
    }
    return out;
}

MultiDiffOp evaluator_to_cochain(const BarCochain& psi) {
    if (!is_ae_linear(psi))
        throw std::invalid_argument("evaluator_to_cochain: evaluator is not A^e-linear");
    const MultiDiffOp& rep = psi.rep;
    MultiDiffOp out(psi.degree, rep.source(), rep.target());
    const MultiIndex zero = zero_index(rep.source()->dim());
    for (const auto& [jets, V] : rep.terms()) {
        if (jets.back() != zero)
            continue;
        ArgJets front(jets.begin(), jets.end() - 1);
        out.add_term(front, V);
    }
    return out;
}

BarCochain cochain_to_evaluator(const MultiDiffOp& phi) {
    return BarCochain{phi.arity(), right_action_extension(phi)};
}

BarCochain evaluator_differential(const BarCochain& psi) {
    const int k = psi.degree;
    MultiDiffOp rep = left_action_extension(psi.rep);
    for (int i = 1; i <= k + 1; ++i) {
        MultiDiffOp term = merge_extension(psi.rep, i);
        rep += i % 2 == 0 ? term : -term;
    }
    return BarCochain{k + 1, rep};
}

bool is_ae_linear(const BarCochain& psi) {
    const MultiDiffOp& rep = psi.rep;
    MultiDiffOp front(psi.degree, rep.source(), rep.target());
    const MultiIndex zero = zero_index(rep.source()->dim());
    for (const auto& [jets, V] : rep.terms()) {
        if (jets.back() != zero)
            continue;
        ArgJets f(jets.begin(), jets.end() - 1);
        front.add_term(f, V);
    }
    return right_action_extension(front) == rep;
}

MultiDiffOp koszul_cochain_embed(const KoszulCochain& phi, const SpacePtr& source) {
    const int k = phi.degree;
    MultiDiffOp out(k, source, phi.target);
    std::vector<int> signs;
    auto perms = permutations_with_sign(k, signs);
    for (const auto& [T, V] : phi.comps) {
        for (size_t pi = 0; pi < perms.size(); ++pi) {
            ArgJets jets(static_cast<size_t>(k));
            for (int a = 0; a < k; ++a)
                jets[static_cast<size_t>(a)] =
                    unit_index(source->dim(), T[static_cast<size_t>(perms[pi][static_cast<size_t>(a)])]);
            out.add_term(jets, V.scaled(Scalar(signs[pi])));
        }
    }
    return out;
}

} // namespace dqw

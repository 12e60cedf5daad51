#pragma once

#include "dqw/multidiffop.hpp"

#include <map>
#include <vector>

namespace dqw {

/// Strictly increasing 0-based coordinate tuples indexing the exterior basis.
using IncTuple = std::vector<int>;

/// Sign of e^i wedge e^T and the enlarged tuple; zero (nullopt-like flag via
/// sign 0) when i already occurs in T.
struct WedgeResult {
    IncTuple tuple;
    int sign = 0;
};
WedgeResult wedge_insert(int i, const IncTuple& T);

/// Space of the (degree+2)-fold product carrying a bar chain: coordinate
/// blocks v, q_1..q_degree, w, each of dimension m.
SpacePtr bar_space(int m, int degree);
/// Two-block space (v, w) carrying Koszul chains.
SpacePtr pair_space(int m);

/// Element of the bar complex: a polynomial on the block space.
struct BarChain {
    int m = 0;
    int degree = 0;
    Polynomial poly;

    static BarChain make(int m, int degree, Polynomial p);
};

/// Element of the Koszul complex: exterior-basis components over functions on
/// the pair space.
struct KoszulChain {
    int m = 0;
    int degree = 0;
    std::map<IncTuple, Polynomial> comps;

    static KoszulChain zero(int m, int degree);
    void add(const IncTuple& T, const Polynomial& p);
    bool is_zero() const { return comps.empty(); }
    friend bool operator==(const KoszulChain& a, const KoszulChain& b);
};

/// Element of Hom(K_k, M) ~ Lambda^k(R^m) (x) M with values in operators on
/// the module's total space.
struct KoszulCochain {
    int m = 0;
    int degree = 0;
    SpacePtr target;
    std::map<IncTuple, DiffOp> comps;

    static KoszulCochain zero(int m, int degree, SpacePtr target);
    void add(const IncTuple& T, const DiffOp& value);
    bool is_zero() const { return comps.empty(); }
    friend bool operator==(const KoszulCochain& a, const KoszulCochain& b);
    KoszulCochain scaled(const Scalar& c) const;
    friend KoszulCochain operator+(const KoszulCochain& a, const KoszulCochain& b);
    friend KoszulCochain operator-(const KoszulCochain& a, const KoszulCochain& b);
};

// --- bar complex ------------------------------------------------------------

/// Alternating sum of diagonal insertions; degree k -> k-1, k >= 1.
BarChain bar_differential(const BarChain& chi);
/// Augmentation (eps a)(v) = a(v,v) of a degree-0 chain, onto the base space.
Polynomial bar_augmentation(const BarChain& chi, const SpacePtr& base);
/// (eta a)(v,w) = a(v): unit of the augmented complex.
BarChain bar_unit(const Polynomial& a);
/// Contracting homotopy dropping the last argument.
BarChain bar_homotopy(const BarChain& chi);

// --- Koszul complex ---------------------------------------------------------

/// Contraction with v - w on the exterior part; degree k -> k-1.
KoszulChain koszul_differential(const KoszulChain& omega);
Polynomial koszul_augmentation(const KoszulChain& omega, const SpacePtr& base);
KoszulChain koszul_unit(const Polynomial& a);
/// Integral homotopy along the segment from v to w.
KoszulChain koszul_homotopy(const KoszulChain& omega);

// --- chain maps -------------------------------------------------------------

/// F: evaluates the form part on (q_j - v).
BarChain koszul_to_bar(const KoszulChain& omega);
/// G: iterated simplex integrals of mixed q-partials at convex combinations.
KoszulChain bar_to_koszul(const BarChain& chi);
/// The explicit antisymmetrized-integral projection (equals F o G).
BarChain bar_projection(const BarChain& chi);

// --- evaluators and the Hochschild bridge -----------------------------------

/// Differential A^e-linear evaluator on bar chains, stored in local form: the
/// representation is a (degree+1)-ary cochain whose trailing slot carries the
/// w-jets. Built canonically from a Hochschild cochain.
struct BarCochain {
    int degree = 0;
    MultiDiffOp rep; // arity degree + 1

    /// Evaluates on an arbitrary bar chain of matching degree.
    DiffOp eval(const BarChain& chi) const;
};

/// The isomorphism onto Hochschild cochains: psi |-> psi(1 (x) a_1 .. a_k (x) 1).
MultiDiffOp evaluator_to_cochain(const BarCochain& psi);
/// Its inverse: the canonical local form of a Hochschild cochain.
BarCochain cochain_to_evaluator(const MultiDiffOp& phi);
/// Pullback of the bar differential on evaluators.
BarCochain evaluator_differential(const BarCochain& psi);
/// Structural A^e-linearity test of the stored local form.
bool is_ae_linear(const BarCochain& psi);

/// Embedding Lambda^k (x) M -> Hochschild cochains,
/// phi |-> sum (d_{i_1} a_1)..(d_{i_k} a_k) phi(e^{i_1} ^ .. ^ e^{i_k}).
MultiDiffOp koszul_cochain_embed(const KoszulCochain& phi, const SpacePtr& source);

} // namespace dqw

#include "dqw/deformation.hpp"

#include "dqw/hochschild.hpp"
#include "dqw/sampling.hpp"

#include <algorithm>
#include <stdexcept>

namespace dqw {

namespace {

MultiDiffOp zero_order_action(const SpacePtr& base, const SpacePtr& total) {
    MultiDiffOp phi(1, base, total);
    phi.add_term({zero_index(base->dim())}, DiffOp::identity(total));
    return phi;
}

// Function-valued base cochain reinterpreted with module values.
MultiDiffOp with_module_values(const MultiDiffOp& phi, const SpacePtr& total) {
    if (!phi.has_function_values())
        throw std::invalid_argument("with_module_values: function values required");
    MultiDiffOp out(phi.arity(), phi.source(), total);
    for (const auto& [jets, v] : phi.terms())
        out.add_term(jets, DiffOp::mult(pullback(v.apply_one(), total)));
    return out;
}

std::string first_witness(const MultiDiffOp& defect, std::uint64_t seed) {
    const SpacePtr& M = defect.source();
    Rng rng(seed);
    SampleOptions opt;
    for (int t = 0; t < 64; ++t) {
        std::vector<Polynomial> args;
        for (int s = 0; s < defect.arity(); ++s)
            args.push_back(t == 0 ? Polynomial::coordinate(M, s % M->dim())
                                  : random_polynomial(rng, M, opt));
        DiffOp v = defect.apply(args);
        if (!v.is_zero()) {
            std::string w = "(";
            for (size_t s = 0; s < args.size(); ++s)
                w += (s ? ", " : "") + args[s].str();
            return w + ") -> " + v.str();
        }
    }
    return "structural defect without sampled witness";
}

} // namespace

ModuleStructure::ModuleStructure(ModuleSide side, StarProduct star, SpacePtr total,
                                 std::vector<MultiDiffOp> cochains)
    : side_(side), star_(std::move(star)), total_(std::move(total)),
      cochains_(std::move(cochains)) {
    if (cochains_.empty())
        throw std::invalid_argument("ModuleStructure: need at least the order-zero cochain");
    if (static_cast<int>(cochains_.size()) - 1 != star_.order_cap())
        throw std::invalid_argument("ModuleStructure: cochain count must match the star cap");
    if (total_->base_rank != star_.space()->dim())
        throw std::invalid_argument(
            "ModuleStructure: total space base rank must equal the base dimension");
    if (cochains_[0] != zero_order_action(star_.space(), total_))
        throw std::invalid_argument("ModuleStructure: order-zero action must be the pullback");
    for (const auto& c : cochains_) {
        if (c.arity() != 1 || !same_space(c.source(), star_.space()) ||
            !same_space(c.target(), total_))
            throw std::invalid_argument("ModuleStructure: cochains must be unary base-to-total");
    }
}

bool ModuleStructure::is_fiber_preserving() const {
    for (int r = 1; r <= order_cap(); ++r)
        if (!cochain(r).values_applied_to_one().is_zero())
            return false;
    return true;
}

PolySeries ModuleStructure::act(const Polynomial& a, const PolySeries& f) const {
    int cap = std::min(order_cap(), f.order_cap());
    PolySeries out(cap, Polynomial(total_));
    for (int r = 0; r <= cap; ++r)
        for (int u = 0; u <= r; ++u)
            out.coeff(r) += cochain(r - u).apply({a}).apply(f.coeff(u));
    return out;
}

MultiDiffOp module_axiom_defect(const ModuleStructure& M, int s) {
    if (s > M.order_cap())
        throw std::invalid_argument("module_axiom_defect: order above the cap");
    const StarProduct& S = M.star();
    MultiDiffOp out = MultiDiffOp::zero(2, S.space(), M.total_space());
    for (int u = 0; u <= s; ++u) {
        out += insert_function_cochain(M.cochain(s - u), S.cochain(u));
        if (M.side() == ModuleSide::Left) {
            // a . (b . f): L_u(a) o L_{s-u}(b)
            out -= compose_values(M.cochain(u), M.cochain(s - u));
        } else {
            // (f . a) . b: R_{s-u}(b) o R_u(a), read as a cochain in (a, b)
            out -= permute_args(compose_values(M.cochain(s - u), M.cochain(u)), {1, 0});
        }
    }
    return out;
}

DefectReport check_module_to_order(const ModuleStructure& M, int r, std::uint64_t seed) {
    DefectReport rep;
    for (int s = 0; s <= r; ++s) {
        MultiDiffOp defect = module_axiom_defect(M, s);
        if (!defect.is_zero())
            rep.issues.push_back({s, "module axiom defect at order " + std::to_string(s),
                                  first_witness(defect, seed + static_cast<std::uint64_t>(s))});
    }
    return rep;
}

MultiDiffOp module_obstruction(const ModuleStructure& M, int r) {
    if (M.side() != ModuleSide::Left)
        throw std::invalid_argument("module_obstruction: defined for left modules");
    if (r + 1 > M.star().order_cap())
        throw std::invalid_argument("module_obstruction: star cap too small for order r+1");
    DefectReport valid = check_module_to_order(M, r);
    if (!valid.ok())
        throw std::invalid_argument("module_obstruction: input is not a module to order " +
                                    std::to_string(r));
    const StarProduct& S = M.star();
    MultiDiffOp R = MultiDiffOp::zero(2, S.space(), M.total_space());
    for (int j = 0; j <= r; ++j)
        R += insert_function_cochain(M.cochain(j), S.cochain(r + 1 - j));
    for (int j = 1; j <= r; ++j)
        R -= compose_values(M.cochain(j), M.cochain(r + 1 - j));
    if (!hochschild_differential(R).is_zero())
        throw std::logic_error("module_obstruction: obstruction cocycle is not closed");
    return R;
}

ModuleStructure transport_module(const ModuleStructure& M, const std::vector<DiffOp>& t_terms) {
    const int cap = M.order_cap();
    for (const auto& T : t_terms)
        require_same_space(T.space(), M.total_space(), "transport_module");
    EquivalenceOp T(M.total_space(), t_terms);
    std::vector<DiffOp> inv = T.inverse_terms();
    auto T_of = [&](int r) {
        return r == 0 ? DiffOp::identity(M.total_space()) : T.term(r);
    };
    auto U_of = [&](int r) {
        return r == 0 ? DiffOp::identity(M.total_space()) : inv.at(static_cast<size_t>(r) - 1);
    };
    if (static_cast<int>(t_terms.size()) < cap)
        throw std::invalid_argument("transport_module: need T_1..T_cap");
    std::vector<MultiDiffOp> cochains;
    for (int s = 0; s <= cap; ++s) {
        MultiDiffOp c = MultiDiffOp::zero(1, M.star().space(), M.total_space());
        for (int u = 0; u <= s; ++u)
            for (int v = 0; u + v <= s; ++v) {
                int w = s - u - v;
                MultiDiffOp inner = M.cochain(v);
                if (w > 0)
                    inner = value_right_compose(inner, U_of(w));
                if (u > 0)
                    inner = post_compose(T_of(u), inner);
                c += inner;
            }
        cochains.push_back(std::move(c));
    }
    return ModuleStructure(M.side(), M.star(), M.total_space(), std::move(cochains));
}

MultiDiffOp equivalence_obstruction(const ModuleStructure& from, const ModuleStructure& to,
                                    const std::vector<DiffOp>& t_terms, int r) {
    if (from.side() != ModuleSide::Left || to.side() != ModuleSide::Left)
        throw std::invalid_argument("equivalence_obstruction: defined for left modules");
    if (r + 1 > from.order_cap() || r + 1 > to.order_cap())
        throw std::invalid_argument("equivalence_obstruction: order cap too small");
    if (static_cast<int>(t_terms.size()) < r)
        throw std::invalid_argument("equivalence_obstruction: need T_1..T_r");
    const SpacePtr& P = from.total_space();
    auto T_of = [&](int s) {
        return s == 0 ? DiffOp::identity(P) : t_terms.at(static_cast<size_t>(s) - 1);
    };
    // Precondition: T intertwines the structures to order r.
    for (int s = 0; s <= r; ++s) {
        MultiDiffOp defect = MultiDiffOp::zero(1, from.star().space(), P);
        for (int u = 0; u <= s; ++u) {
            defect += post_compose(T_of(u), from.cochain(s - u));
            defect -= value_right_compose(to.cochain(s - u), T_of(u));
        }
        if (!defect.is_zero())
            throw std::invalid_argument(
                "equivalence_obstruction: T is not an equivalence; first failing order " +
                std::to_string(s));
    }
    MultiDiffOp E = MultiDiffOp::zero(1, from.star().space(), P);
    for (int s = 0; s <= r; ++s) {
        E += value_right_compose(to.cochain(r + 1 - s), T_of(s));
        E -= post_compose(T_of(s), from.cochain(r + 1 - s));
    }
    if (!hochschild_differential(E).is_zero())
        throw std::logic_error("equivalence_obstruction: obstruction cocycle is not closed");
    return E;
}

BimoduleStructure::BimoduleStructure(ModuleStructure left, ModuleStructure right)
    : left_(std::move(left)), right_(std::move(right)) {
    if (left_.side() != ModuleSide::Left || right_.side() != ModuleSide::Right)
        throw std::invalid_argument("BimoduleStructure: sides must be (left, right)");
    if (!(left_.star() == right_.star()))
        throw std::invalid_argument("BimoduleStructure: both sides must share the star product");
    require_same_space(left_.total_space(), right_.total_space(), "BimoduleStructure");
    if (left_.order_cap() != right_.order_cap())
        throw std::invalid_argument("BimoduleStructure: order caps must match");
}

MultiDiffOp bimodule_compat_defect(const BimoduleStructure& B, int s) {
    // (a . f) . b - a . (f . b) at lambda^s, as a cochain in (a, b).
    MultiDiffOp out = MultiDiffOp::zero(2, B.star().space(), B.total_space());
    for (int u = 0; u <= s; ++u) {
        out += permute_args(compose_values(B.right().cochain(s - u), B.left().cochain(u)), {1, 0});
        out -= compose_values(B.left().cochain(u), B.right().cochain(s - u));
    }
    return out;
}

DefectReport check_bimodule_to_order(const BimoduleStructure& B, int r, std::uint64_t seed) {
    DefectReport rep = check_module_to_order(B.left(), r, seed);
    DefectReport right = check_module_to_order(B.right(), r, seed + 101);
    for (auto& i : right.issues) {
        i.what = "right " + i.what;
        rep.issues.push_back(i);
    }
    for (int s = 0; s <= r; ++s) {
        MultiDiffOp defect = bimodule_compat_defect(B, s);
        if (!defect.is_zero())
            rep.issues.push_back({s, "bimodule compatibility defect at order " + std::to_string(s),
                                  first_witness(defect, seed + 500 + static_cast<std::uint64_t>(s))});
    }
    return rep;
}

SemiPoissonBracket SemiPoissonBracket::checked(MultiDiffOp cochain, const StarProduct& S) {
    SemiPoissonBracket br(std::move(cochain));
    std::string bad;
    if (!sp_leibniz_defect(br, S).is_zero())
        bad = "derivation property in the first argument";
    else if (!sp_module_defect(br, S).is_zero())
        bad = "module compatibility with the Poisson bracket";
    else if (!sp_jacobi_defect(br, S).is_zero())
        bad = "Jacobi-type identity";
    if (!bad.empty())
        throw std::invalid_argument("SemiPoissonBracket: " + bad +
                                    " fails (input is not a bimodule semiclassical limit)");
    return br;
}

SemiPoissonBracket SemiPoissonBracket::unchecked(MultiDiffOp cochain) {
    return SemiPoissonBracket(std::move(cochain));
}

bool SemiPoissonBracket::is_fiber_preserving() const {
    return cochain_.values_applied_to_one().is_zero();
}

bool SemiPoissonBracket::is_natural() const {
    for (const auto& [jets, v] : cochain_.terms())
        if (v.order() > 1 || !v.apply_one().is_zero())
            return false;
    return true;
}

SemiPoissonBracket sp_bracket_of(const BimoduleStructure& B) {
    if (B.order_cap() < 1)
        throw std::invalid_argument("sp_bracket_of: order cap must be >= 1");
    MultiDiffOp c = (B.left().cochain(1) - B.right().cochain(1)).scaled(Scalar::i() * Scalar(1, 2));
    return SemiPoissonBracket::checked(std::move(c), B.star());
}

MultiDiffOp sp_leibniz_defect(const SemiPoissonBracket& br, const StarProduct& S) {
    MultiDiffOp left_ext = left_action_extension(br.cochain());
    return merge_extension(br.cochain(), 1) - left_ext - permute_args(left_ext, {1, 0});
}

MultiDiffOp sp_module_defect(const SemiPoissonBracket& br, const StarProduct& S) {
    MultiDiffOp left_ext = left_action_extension(br.cochain());
    MultiDiffOp poisson = with_module_values(poisson_cochain(S), br.total_space());
    return right_action_extension(br.cochain()) - poisson - permute_args(left_ext, {1, 0});
}

MultiDiffOp sp_jacobi_defect(const SemiPoissonBracket& br, const StarProduct& S) {
    MultiDiffOp nested = compose_values(br.cochain(), br.cochain());
    return nested - permute_args(nested, {1, 0}) -
           insert_function_cochain(br.cochain(), poisson_cochain(S));
}

SpPropertyReport check_sp_properties(const SemiPoissonBracket& br, const StarProduct& S,
                                     std::uint64_t seed) {
    SpPropertyReport rep;
    MultiDiffOp d1 = sp_leibniz_defect(br, S);
    MultiDiffOp d2 = sp_module_defect(br, S);
    MultiDiffOp d3 = sp_jacobi_defect(br, S);
    rep.leibniz_ok = d1.is_zero();
    rep.module_ok = d2.is_zero();
    rep.jacobi_ok = d3.is_zero();
    rep.fiber_preserving = br.is_fiber_preserving();
    rep.natural = br.is_natural();
    if (!rep.leibniz_ok)
        rep.issues.push_back({1, "derivation in the first argument fails", first_witness(d1, seed)});
    if (!rep.module_ok)
        rep.issues.push_back({2, "module property fails", first_witness(d2, seed + 1)});
    if (!rep.jacobi_ok)
        rep.issues.push_back({3, "Jacobi-type identity fails", first_witness(d3, seed + 2)});
    return rep;
}

std::optional<SymplecticForm> standard_symplectic_form(const StarProduct& S) {
    const SpacePtr& M = S.space();
    const int m = M->dim();
    if (m % 2 != 0 || S.order_cap() < 1)
        return std::nullopt;
    MultiDiffOp pi = poisson_cochain(S);
    SymplecticForm form;
    MultiDiffOp expected = MultiDiffOp::zero(2, M, M);
    for (int p = 0; p < m / 2; ++p) {
        ArgJets jets = {unit_index(m, 2 * p), unit_index(m, 2 * p + 1)};
        auto it = pi.terms().find(jets);
        if (it == pi.terms().end())
            return std::nullopt;
        Polynomial c = it->second.apply_one();
        if (!c.is_constant())
            return std::nullopt;
        Scalar cp = c.constant_term();
        if (cp.is_zero())
            return std::nullopt;
        form.pair_constants.push_back(cp);
        expected.add_function_term(jets, Polynomial::constant(M, cp));
        expected.add_function_term({unit_index(m, 2 * p + 1), unit_index(m, 2 * p)},
                                   Polynomial::constant(M, -cp));
    }
    if (!(expected == pi))
        return std::nullopt;
    return form;
}

std::vector<DiffOp> lift_generators(const SemiPoissonBracket& br, const StarProduct& S) {
    auto form = standard_symplectic_form(S);
    if (!form)
        throw std::invalid_argument(
            "lift_generators: star product is not standard symplectic (degenerate Poisson bracket)");
    const SpacePtr& M = S.space();
    const int m = M->dim();
    std::vector<DiffOp> gens(static_cast<size_t>(m), DiffOp(br.total_space()));
    for (int p = 0; p < m / 2; ++p) {
        Scalar inv = form->pair_constants[static_cast<size_t>(p)].inverse();
        // d/dx^{2p}   = -(1/c_p) X_{x^{2p+1}},  d/dx^{2p+1} = (1/c_p) X_{x^{2p}}
        gens[static_cast<size_t>(2 * p)] =
            br.apply(Polynomial::coordinate(M, 2 * p + 1)).scaled(-inv);
        gens[static_cast<size_t>(2 * p + 1)] =
            br.apply(Polynomial::coordinate(M, 2 * p)).scaled(inv);
    }
    return gens;
}

HorizontalLift::HorizontalLift(SemiPoissonBracket br, const StarProduct& S)
    : bracket_(std::move(br)) {
    if (!bracket_.is_natural())
        throw std::invalid_argument(
            "HorizontalLift: bracket is not natural, the lift would not be a vector field");
    generators_ = lift_generators(bracket_, S);
}

DiffOp HorizontalLift::of_hamiltonian(const Polynomial& a) const { return bracket_.apply(a); }

Polynomial curvature(const SemiPoissonBracket& br, const StarProduct& S, const Polynomial& a,
                     const Polynomial& b, const Polynomial& f) {
    Polynomial nested = br.apply_to(a, br.apply_to(b, f)) - br.apply_to(b, br.apply_to(a, f));
    return nested - br.apply_to(poisson_bracket(S, a, b), f);
}

namespace {

DiffOp lift_symbol(const MultiIndex& J, const std::vector<DiffOp>& gens, const SpacePtr& total) {
    DiffOp out = DiffOp::identity(total);
    for (size_t v = 0; v < J.size(); ++v)
        for (int e = 0; e < J[v]; ++e)
            out = compose(gens[v], out);
    return out;
}

} // namespace

DiffOp lift_diffop(const DiffOp& D, const SemiPoissonBracket& br, const StarProduct& S) {
    std::vector<DiffOp> gens = lift_generators(br, S);
    const SpacePtr& P = br.total_space();
    DiffOp out(P);
    for (const auto& [J, c] : D.terms())
        out += lift_symbol(J, gens, P).left_mult(pullback(c, P));
    return out;
}

BimoduleStructure build_bimodule_from_sp(const StarProduct& S, const SemiPoissonBracket& br,
                                         const SpacePtr& total) {
    require_same_space(br.total_space(), total, "build_bimodule_from_sp");
    std::vector<DiffOp> gens = lift_generators(br, S);
    std::vector<MultiDiffOp> left, right;
    for (int r = 0; r <= S.order_cap(); ++r) {
        MultiDiffOp L(1, S.space(), total), R(1, S.space(), total);
        for (const auto& [jets, v] : S.cochain(r).terms()) {
            Polynomial g = pullback(v.apply_one(), total);
            L.add_term({jets[0]}, lift_symbol(jets[1], gens, total).left_mult(g));
            R.add_term({jets[1]}, lift_symbol(jets[0], gens, total).left_mult(g));
        }
        left.push_back(std::move(L));
        right.push_back(std::move(R));
    }
    return BimoduleStructure(
        ModuleStructure(ModuleSide::Left, S, total, std::move(left)),
        ModuleStructure(ModuleSide::Right, S, total, std::move(right)));
}

std::vector<DiffOp> trivial_coordinate_lift(const SpacePtr& base, const SpacePtr& total) {
    if (total->base_rank != base->dim())
        throw std::invalid_argument("trivial_coordinate_lift: rank mismatch");
    std::vector<DiffOp> gens;
    for (int v = 0; v < base->dim(); ++v)
        gens.push_back(DiffOp::coordinate_derivative(total, v));
    return gens;
}

BimoduleStructure flat_lift_bimodule(const StarProduct& S, const SpacePtr& total) {
    std::vector<DiffOp> gens = trivial_coordinate_lift(S.space(), total);
    std::vector<MultiDiffOp> left, right;
    for (int r = 0; r <= S.order_cap(); ++r) {
        MultiDiffOp L(1, S.space(), total), R(1, S.space(), total);
        for (const auto& [jets, v] : S.cochain(r).terms()) {
            Polynomial g = pullback(v.apply_one(), total);
            L.add_term({jets[0]}, lift_symbol(jets[1], gens, total).left_mult(g));
            R.add_term({jets[1]}, lift_symbol(jets[0], gens, total).left_mult(g));
        }
        left.push_back(std::move(L));
        right.push_back(std::move(R));
    }
    return BimoduleStructure(
        ModuleStructure(ModuleSide::Left, S, total, std::move(left)),
        ModuleStructure(ModuleSide::Right, S, total, std::move(right)));
}

SemiPoissonBracket flat_bracket(const StarProduct& S, const SpacePtr& total) {
    return sp_bracket_of(flat_lift_bimodule(S, total));
}

DefectReport check_modifier(const BimoduleModifier& Q, const BimoduleStructure& B) {
    DefectReport rep;
    const StarProduct& S = B.star();
    for (size_t i = 0; i < Q.pairs.size(); ++i) {
        const auto& [E, D] = Q.pairs[i];
        for (int r = 0; r <= S.order_cap(); ++r) {
            MultiDiffOp defect = post_compose(E, S.cochain(r)).values_applied_to_one() -
                                 pre_compose_arg(S.cochain(r), 0, E) -
                                 pre_compose_arg(S.cochain(r), 1, E);
            if (!defect.is_zero()) {
                rep.issues.push_back({r,
                                      "E_" + std::to_string(i + 1) +
                                          " is not a star derivation at order " + std::to_string(r),
                                      ""});
                break;
            }
        }
        for (int r = 0; r <= B.order_cap(); ++r) {
            if (!(post_compose(D, B.left().cochain(r)) ==
                  value_right_compose(B.left().cochain(r), D))) {
                rep.issues.push_back({r, "D_" + std::to_string(i + 1) +
                                             " is not a left module homomorphism at order " +
                                             std::to_string(r),
                                      ""});
                break;
            }
            if (!(post_compose(D, B.right().cochain(r)) ==
                  value_right_compose(B.right().cochain(r), D))) {
                rep.issues.push_back({r, "D_" + std::to_string(i + 1) +
                                             " is not a right module homomorphism at order " +
                                             std::to_string(r),
                                      ""});
                break;
            }
        }
        for (size_t j = i + 1; j < Q.pairs.size(); ++j) {
            if (!commutator(E, Q.pairs[j].first).is_zero())
                rep.issues.push_back({0, "E pair (" + std::to_string(i + 1) + "," +
                                             std::to_string(j + 1) + ") does not commute",
                                      ""});
            if (!commutator(D, Q.pairs[j].second).is_zero())
                rep.issues.push_back({0, "D pair (" + std::to_string(i + 1) + "," +
                                             std::to_string(j + 1) + ") does not commute",
                                      ""});
        }
    }
    return rep;
}

BimoduleStructure modify_bimodule(const BimoduleStructure& B, const BimoduleModifier& Q,
                                  int lambda_power) {
    if (lambda_power < 1)
        throw std::invalid_argument("modify_bimodule: lambda power must be >= 1");
    DefectReport rep = check_modifier(Q, B);
    if (!rep.ok())
        throw std::invalid_argument("modify_bimodule: " + rep.issues.front().what);
    const int cap = B.order_cap();
    const SpacePtr& M = B.star().space();
    const SpacePtr& P = B.total_space();

    // Powers of Q as tensor pairs (E-composition, D-composition), with 1/s!.
    std::vector<std::vector<std::pair<DiffOp, DiffOp>>> powers;
    powers.push_back({{DiffOp::identity(M), DiffOp::identity(P)}});
    for (int s = 1; s * lambda_power <= cap; ++s) {
        std::vector<std::pair<DiffOp, DiffOp>> next;
        for (const auto& [E, D] : powers.back())
            for (const auto& [Ei, Di] : Q.pairs)
                next.emplace_back(compose(Ei, E), compose(Di, D));
        powers.push_back(std::move(next));
    }

    std::vector<MultiDiffOp> left;
    for (int r = 0; r <= cap; ++r) {
        MultiDiffOp c = MultiDiffOp::zero(1, M, P);
        for (int s = 0; s * lambda_power <= r; ++s) {
            if (static_cast<size_t>(s) >= powers.size())
                break;
            int u = r - s * lambda_power;
            Scalar inv_fact = Scalar::one() / factorial_scalar(static_cast<unsigned>(s));
            for (const auto& [E, D] : powers[static_cast<size_t>(s)]) {
                MultiDiffOp term = B.left().cochain(u);
                if (s > 0) {
                    term = pre_compose_arg(term, 0, E);
                    term = value_right_compose(term, D);
                }
                c += term.scaled(inv_fact);
            }
        }
        left.push_back(std::move(c));
    }
    return BimoduleStructure(ModuleStructure(ModuleSide::Left, B.star(), P, std::move(left)),
                             B.right());
}

MultiDiffOp sp_shift_cochain(const BimoduleModifier& Q, const SpacePtr& base,
                             const SpacePtr& total) {
    MultiDiffOp out = MultiDiffOp::zero(1, base, total);
    for (const auto& [E, D] : Q.pairs)
        for (const auto& [L, c] : E.terms())
            out.add_term({L}, D.left_mult(pullback(c, total)));
    return out.scaled(Scalar::i() * Scalar(1, 2));
}

StarProduct lift_star_product(const StarProduct& S, const std::vector<DiffOp>& lifts,
                              const SpacePtr& total) {
    const SpacePtr& M = S.space();
    const int m = M->dim();
    const int k = total->base_rank;
    if (k != m)
        throw std::invalid_argument("lift_star_product: total space must fiber over the base");
    if (static_cast<int>(lifts.size()) != m)
        throw std::invalid_argument("lift_star_product: one lift per base coordinate");
    for (int j = 0; j < m; ++j) {
        const DiffOp& V = lifts[static_cast<size_t>(j)];
        require_same_space(V.space(), total, "lift_star_product");
        if (V.order() > 1 || !V.apply_one().is_zero())
            throw std::invalid_argument("lift_star_product: lifts must be vector fields");
        // projection property V_j(pr* b) = pr*(d_j b)
        for (int i = 0; i < k; ++i) {
            Polynomial c = V.coeff(unit_index(total->dim(), i));
            Polynomial want = i == j ? Polynomial::constant(total, Scalar::one())
                                     : Polynomial(total);
            if (!(c == want))
                throw std::invalid_argument(
                    "lift_star_product: lift " + std::to_string(j + 1) +
                    " does not project onto the base coordinate derivation");
        }
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (!commutator(lifts[static_cast<size_t>(i)], lifts[static_cast<size_t>(j)]).is_zero())
                throw std::invalid_argument("lift_star_product: lift is not flat, generators " +
                                            std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                                            " do not commute");

    std::vector<MultiDiffOp> cochains;
    for (int r = 0; r <= S.order_cap(); ++r) {
        MultiDiffOp C(2, total, total);
        for (const auto& [jets, v] : S.cochain(r).terms()) {
            Polynomial g = pullback(v.apply_one(), total);
            DiffOp L = lift_symbol(jets[0], lifts, total);
            DiffOp R = lift_symbol(jets[1], lifts, total);
            for (const auto& [K, cl] : L.terms())
                for (const auto& [Lx, cr] : R.terms())
                    C.add_function_term({K, Lx}, g * cl * cr);
        }
        cochains.push_back(std::move(C));
    }
    return StarProduct(total, std::move(cochains));
}

BimoduleStructure bimodule_from_subalgebra(const StarProduct& lifted,
                                           const StarProduct& base_star) {
    const SpacePtr& P = lifted.space();
    const SpacePtr& M = base_star.space();
    const int k = P->base_rank;
    if (k != M->dim())
        throw std::invalid_argument("bimodule_from_subalgebra: rank mismatch");
    std::vector<MultiDiffOp> left, right;
    for (int r = 0; r <= std::min(lifted.order_cap(), base_star.order_cap()); ++r) {
        MultiDiffOp L(1, M, P), R(1, M, P);
        for (const auto& [jets, v] : lifted.cochain(r).terms()) {
            Polynomial h = v.apply_one();
            const MultiIndex& K = jets[0];
            const MultiIndex& Lx = jets[1];
            auto base_part = [&](const MultiIndex& J) -> std::optional<MultiIndex> {
                MultiIndex I = zero_index(M->dim());
                for (int i = 0; i < P->dim(); ++i) {
                    if (J[static_cast<size_t>(i)] == 0)
                        continue;
                    if (i >= k)
                        return std::nullopt;
                    I[static_cast<size_t>(i)] = J[static_cast<size_t>(i)];
                }
                return I;
            };
            if (auto I = base_part(K))
                L.add_term({*I}, DiffOp::derivative(P, Lx).left_mult(h));
            if (auto I = base_part(Lx))
                R.add_term({*I}, DiffOp::derivative(P, K).left_mult(h));
        }
        left.push_back(std::move(L));
        right.push_back(std::move(R));
    }
    return BimoduleStructure(
        ModuleStructure(ModuleSide::Left, base_star, P, std::move(left)),
        ModuleStructure(ModuleSide::Right, base_star, P, std::move(right)));
}

} // namespace dqw

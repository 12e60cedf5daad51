#pragma once

#include "dqw/star.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dqw {

enum class ModuleSide { Left, Right };

struct CheckIssue {
    int order = 0;
    std::string what;
    std::string witness;
};

struct DefectReport {
    std::vector<CheckIssue> issues;
    bool ok() const { return issues.empty(); }
};

/// Module deformation of the total space over a deformed base algebra.
/// Left: a . f = sum lambda^r L_r(a)(f); right structures store the cochains
/// in the algebra argument as well, f . a = sum lambda^r R_r(a)(f). In both
/// cases the order-zero cochain is multiplication by the pullback.
class ModuleStructure {
  public:
    ModuleStructure(ModuleSide side, StarProduct star, SpacePtr total,
                    std::vector<MultiDiffOp> cochains);

    ModuleSide side() const { return side_; }
    const StarProduct& star() const { return star_; }
    const SpacePtr& total_space() const { return total_; }
    int order_cap() const { return static_cast<int>(cochains_.size()) - 1; }
    const MultiDiffOp& cochain(int r) const { return cochains_.at(static_cast<size_t>(r)); }

    /// a . 1 = pr* a, i.e. all higher cochain values kill the unit.
    bool is_fiber_preserving() const;

    /// The action of a truncated to the order cap, applied to f.
    PolySeries act(const Polynomial& a, const PolySeries& f) const;

    friend bool operator==(const ModuleStructure& a, const ModuleStructure& b) {
        return a.side_ == b.side_ && a.star_ == b.star_ && same_space(a.total_, b.total_) &&
               a.cochains_ == b.cochains_;
    }

  private:
    ModuleSide side_;
    StarProduct star_;
    SpacePtr total_;
    std::vector<MultiDiffOp> cochains_;
};

/// The defect of the module axiom at order s as an exact cochain identity:
/// zero iff the axiom holds at that order.
MultiDiffOp module_axiom_defect(const ModuleStructure& M, int s);

/// Exact per-order verification; issues carry sampled witness triples.
DefectReport check_module_to_order(const ModuleStructure& M, int r, std::uint64_t seed = 1);

/// Order-(r+1) extension obstruction of a left module valid to order r:
///   R_r(a,b) = sum_{j=0}^r L_j(C_{r+1-j}(a,b), .) - sum_{j=1}^r L_j(a, L_{r+1-j}(b, .)).
/// Verified to be closed under the Hochschild differential.
MultiDiffOp module_obstruction(const ModuleStructure& M, int r);

/// Transported structure a ~. f = T(a . T^{-1} f) for T = id + sum T_s.
ModuleStructure transport_module(const ModuleStructure& M, const std::vector<DiffOp>& t_terms);

/// Order-(r+1) obstruction for extending an equivalence T (valid to order r)
/// between two left modules:
///   E_r(a) = sum_{s=0}^r (Lt_{r+1-s}(a, T_s .) - T_s L_{r+1-s}(a, .)).
/// Verified to be closed; throws with the first failing order when T is not
/// an equivalence to order r.
MultiDiffOp equivalence_obstruction(const ModuleStructure& from, const ModuleStructure& to,
                                    const std::vector<DiffOp>& t_terms, int r);

class BimoduleStructure {
  public:
    BimoduleStructure(ModuleStructure left, ModuleStructure right);

    const ModuleStructure& left() const { return left_; }
    const ModuleStructure& right() const { return right_; }
    const StarProduct& star() const { return left_.star(); }
    const SpacePtr& total_space() const { return left_.total_space(); }
    int order_cap() const { return left_.order_cap(); }
    bool is_fiber_preserving() const {
        return left_.is_fiber_preserving() && right_.is_fiber_preserving();
    }

  private:
    ModuleStructure left_;
    ModuleStructure right_;
};

/// Compatibility defect (a.f).b - a.(f.b) at order s, as a cochain identity.
MultiDiffOp bimodule_compat_defect(const BimoduleStructure& B, int s);
DefectReport check_bimodule_to_order(const BimoduleStructure& B, int r, std::uint64_t seed = 1);

/// Semi-classical limit of a bimodule deformation.
class SemiPoissonBracket {
  public:
    /// Verifies the three semi-Poisson properties exactly; throws otherwise.
    static SemiPoissonBracket checked(MultiDiffOp cochain, const StarProduct& S);
    /// No verification (negative controls).
    static SemiPoissonBracket unchecked(MultiDiffOp cochain);

    const MultiDiffOp& cochain() const { return cochain_; }
    const SpacePtr& total_space() const { return cochain_.target(); }
    DiffOp apply(const Polynomial& a) const { return cochain_.apply({a}); }
    Polynomial apply_to(const Polynomial& a, const Polynomial& f) const {
        return apply(a).apply(f);
    }

    /// {a, 1} = 0.
    bool is_fiber_preserving() const;
    /// Derivation in the second argument (vector-field values).
    bool is_natural() const;

  private:
    explicit SemiPoissonBracket(MultiDiffOp cochain) : cochain_(std::move(cochain)) {}
    MultiDiffOp cochain_;
};

/// (i/2)(L_1 - R_1); the semi-Poisson properties are verified exactly.
SemiPoissonBracket sp_bracket_of(const BimoduleStructure& B);

/// Exact defect cochains of the three semi-Poisson properties.
MultiDiffOp sp_leibniz_defect(const SemiPoissonBracket& br, const StarProduct& S);
MultiDiffOp sp_module_defect(const SemiPoissonBracket& br, const StarProduct& S);
MultiDiffOp sp_jacobi_defect(const SemiPoissonBracket& br, const StarProduct& S);

struct SpPropertyReport {
    bool leibniz_ok = false;
    bool module_ok = false;
    bool jacobi_ok = false;
    bool fiber_preserving = false;
    bool natural = false;
    std::vector<CheckIssue> issues;
    bool ok() const { return leibniz_ok && module_ok && jacobi_ok; }
};

/// Report-only check (exact identities plus sampled witnesses on failure).
SpPropertyReport check_sp_properties(const SemiPoissonBracket& br, const StarProduct& S,
                                     std::uint64_t seed = 1);

/// Constant coefficients c_p of a star product whose Poisson bracket is the
/// standard block pairing {x^{2p-1}, x^{2p}} = c_p; empty when the bracket is
/// not of that shape or degenerate.
struct SymplecticForm {
    std::vector<Scalar> pair_constants;
};
std::optional<SymplecticForm> standard_symplectic_form(const StarProduct& S);

/// Lifts of the coordinate derivations through the bracket, well-defined for
/// any bracket satisfying the semi-Poisson identities over a standard
/// symplectic star.
std::vector<DiffOp> lift_generators(const SemiPoissonBracket& br, const StarProduct& S);

/// Horizontal lift of Hamiltonian vector fields; requires a natural bracket
/// so the lifts are vector fields.
class HorizontalLift {
  public:
    HorizontalLift(SemiPoissonBracket br, const StarProduct& S);
    /// X_a^h(f) = {a, f}.
    DiffOp of_hamiltonian(const Polynomial& a) const;
    const std::vector<DiffOp>& generators() const { return generators_; }
    const SemiPoissonBracket& bracket() const { return bracket_; }

  private:
    SemiPoissonBracket bracket_;
    std::vector<DiffOp> generators_;
};

/// Curvature evaluation {a,{b,f}} - {b,{a,f}} - {{a,b},f}; identically zero
/// exactly when the Jacobi-type property holds.
Polynomial curvature(const SemiPoissonBracket& br, const StarProduct& S, const Polynomial& a,
                     const Polynomial& b, const Polynomial& f);

/// Enveloping-algebra lift of a differential operator on the base through
/// the bracket: an algebra morphism with mult(a) |-> mult(pr* a) and
/// Hamiltonian fields mapping to the bracket action.
DiffOp lift_diffop(const DiffOp& D, const SemiPoissonBracket& br, const StarProduct& S);

/// Bimodule built by lifting both argument slots of every star cochain.
BimoduleStructure build_bimodule_from_sp(const StarProduct& S, const SemiPoissonBracket& br,
                                         const SpacePtr& total);

/// Coordinate lift over a trivial bundle and the resulting flat structures.
std::vector<DiffOp> trivial_coordinate_lift(const SpacePtr& base, const SpacePtr& total);
BimoduleStructure flat_lift_bimodule(const StarProduct& S, const SpacePtr& total);
SemiPoissonBracket flat_bracket(const StarProduct& S, const SpacePtr& total);

/// Left-module twist data: star-product derivations paired with bimodule
/// endomorphisms, pairwise commuting within each family.
struct BimoduleModifier {
    std::vector<std::pair<DiffOp, DiffOp>> pairs; // (E on base, D on total)
};

/// Verifies the modifier invariants against a bimodule; issues name the
/// failing pair.
DefectReport check_modifier(const BimoduleModifier& Q, const BimoduleStructure& B);

/// New left structure l o exp(lambda^power Q); the right structure is reused
/// unchanged. Throws when the modifier invariants fail.
BimoduleStructure modify_bimodule(const BimoduleStructure& B, const BimoduleModifier& Q,
                                  int lambda_power = 1);

/// The induced first-order bracket shift (i/2) sum pr*(E_i a) D_i.
MultiDiffOp sp_shift_cochain(const BimoduleModifier& Q, const SpacePtr& base,
                             const SpacePtr& total);

/// Star product on the total space obtained by lifting every cochain through
/// commuting lifted derivations; throws when the lift is not flat.
StarProduct lift_star_product(const StarProduct& S, const std::vector<DiffOp>& lifts,
                              const SpacePtr& total);

/// The fiber-preserving bimodule a . f = pr*a *_P f of a subalgebra
/// deformation.
BimoduleStructure bimodule_from_subalgebra(const StarProduct& lifted, const StarProduct& base_star);

} // namespace dqw

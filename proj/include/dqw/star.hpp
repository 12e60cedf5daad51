#pragma once

#include "dqw/multidiffop.hpp"
#include "dqw/series.hpp"

#include <optional>
#include <vector>

namespace dqw {

using PolySeries = FormalSeries<Polynomial>;

/// Generator data of an exponential star product: commuting first-order
/// fields and the constant coefficient matrix.
struct ExpStarData {
    std::vector<DiffOp> fields;
    std::vector<std::vector<Scalar>> matrix;
};

/// Truncated star product: bidifferential cochains C_0..C_N with C_0 the
/// pointwise product and C_r(1,.) = C_r(.,1) = 0 for r >= 1.
class StarProduct {
  public:
    StarProduct(SpacePtr space, std::vector<MultiDiffOp> cochains);

    const SpacePtr& space() const { return space_; }
    int order_cap() const { return static_cast<int>(cochains_.size()) - 1; }
    const MultiDiffOp& cochain(int r) const { return cochains_.at(static_cast<size_t>(r)); }
    const std::optional<ExpStarData>& generators() const { return generators_; }
    void set_generators(ExpStarData g) { generators_ = std::move(g); }

    /// True when every C_r has order <= r in each argument.
    bool is_natural() const;

    friend bool operator==(const StarProduct& a, const StarProduct& b) {
        return same_space(a.space_, b.space_) && a.cochains_ == b.cochains_;
    }

  private:
    SpacePtr space_;
    std::vector<MultiDiffOp> cochains_;
    std::optional<ExpStarData> generators_;
};

/// Undeformed product truncated at the given cap.
StarProduct trivial_star(const SpacePtr& space, int order_cap);

/// Star product of commuting first-order fields with no constant term:
/// one deformation order per power of the exponent, so
/// C_r(a,b) = 1/r! sum A^{i_1 j_1}..A^{i_r j_r} (X_{i_1}..X_{i_r} a)(X_{j_1}..X_{j_r} b).
/// Throws naming the offending pair when two fields fail to commute.
StarProduct exp_star(const std::vector<DiffOp>& fields,
                     const std::vector<std::vector<Scalar>>& matrix, int order_cap);

/// Weyl-Moyal product on R^2 for the strictly upper-triangular unit matrix.
StarProduct moyal_star(int order_cap);

/// Cauchy product of truncated series through the star cochains.
PolySeries star_multiply(const StarProduct& S, const PolySeries& f, const PolySeries& g);
PolySeries poly_series(const Polynomial& f, int order_cap);

/// Coefficient of lambda^r in (a*b)*c - a*(b*c).
Polynomial associativity_defect(const StarProduct& S, const Polynomial& a, const Polynomial& b,
                                const Polynomial& c, int r);

/// First-order antisymmetrization i/2 (C_1(f,g) - C_1(g,f)).
Polynomial poisson_bracket(const StarProduct& S, const Polynomial& f, const Polynomial& g);
/// The same bracket as a bidifferential cochain.
MultiDiffOp poisson_cochain(const StarProduct& S);

/// Formal reparametrization lambda -> lambda^2 (degenerate semiclassical
/// limit; the Poisson bracket of the result vanishes).
StarProduct reparametrize_square(const StarProduct& S);

/// Equivalence transformation T = id + lambda T_1 + ... with T(1) = 1.
class EquivalenceOp {
  public:
    EquivalenceOp(SpacePtr space, std::vector<DiffOp> higher_terms);

    const SpacePtr& space() const { return space_; }
    int order_cap() const { return static_cast<int>(higher_.size()); }
    /// T_r for r >= 1; T_0 is the identity.
    const DiffOp& term(int r) const { return higher_.at(static_cast<size_t>(r) - 1); }
    /// Series inverse by order recursion, as the list U_1..U_N.
    std::vector<DiffOp> inverse_terms() const;

  private:
    SpacePtr space_;
    std::vector<DiffOp> higher_;
};

/// The equivalent product T^{-1}(T(f) * T(g)).
StarProduct apply_equivalence(const EquivalenceOp& T, const StarProduct& S);

} // namespace dqw

#pragma once

#include "dqw/polynomial.hpp"

#include <map>
#include <string>

namespace dqw {

/// Differential operator with polynomial coefficients in normal form:
/// D = sum_J coeff_J * d^J with coefficients to the left of the derivative
/// symbols. Composition re-normalizes via Leibniz expansion.
class DiffOp {
  public:
    using TermMap = std::map<MultiIndex, Polynomial, GradedLexLess>;

    DiffOp() = default;
    explicit DiffOp(SpacePtr space) : space_(std::move(space)) {}

    static DiffOp identity(SpacePtr space);
    /// Multiplication operator f |-> g*f.
    static DiffOp mult(const Polynomial& g);
    /// Pure derivative monomial d^J.
    static DiffOp derivative(SpacePtr space, const MultiIndex& J);
    /// Coordinate vector field d/dx_var.
    static DiffOp coordinate_derivative(SpacePtr space, int var);

    const SpacePtr& space() const { return space_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_identity() const;
    int order() const; // max |J|, -1 when zero

    void add_term(const MultiIndex& J, const Polynomial& coeff);
    Polynomial coeff(const MultiIndex& J) const;

    Polynomial apply(const Polynomial& f) const;
    /// Value on the unit: the symbol-free coefficient.
    Polynomial apply_one() const;

    DiffOp operator-() const;
    DiffOp& operator+=(const DiffOp& o);
    DiffOp& operator-=(const DiffOp& o);
    friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
    friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }
    DiffOp scaled(const Scalar& c) const;
    /// Left multiplication by a polynomial: g * D in normal form.
    DiffOp left_mult(const Polynomial& g) const;

    friend bool operator==(const DiffOp& a, const DiffOp& b);
    friend bool operator!=(const DiffOp& a, const DiffOp& b) { return !(a == b); }

    /// The terms whose derivative symbol has no component along the first
    /// base_rank coordinates. These commute with multiplication by pullbacks.
    DiffOp vertical_part() const;
    DiffOp horizontal_remainder() const;
    bool is_vertical() const;

    std::string str() const;

  private:
    SpacePtr space_;
    TermMap terms_;
};

/// Operator composition (D o E)(f) = D(E(f)), re-normalized by Leibniz.
DiffOp compose(const DiffOp& D, const DiffOp& E);
DiffOp commutator(const DiffOp& D, const DiffOp& E);

} // namespace dqw

#pragma once

#include "dqw/scalar.hpp"
#include "dqw/space.hpp"

#include <map>
#include <string>
#include <vector>

namespace dqw {

/// Sparse multivariate polynomial over Gaussian rationals on a fixed space.
/// Zero terms are never stored; term order is graded lexicographic, so
/// structural equality coincides with mathematical equality.
class Polynomial {
  public:
    using TermMap = std::map<MultiIndex, Scalar, GradedLexLess>;

    Polynomial() = default;
    explicit Polynomial(SpacePtr space) : space_(std::move(space)) {}

    static Polynomial constant(SpacePtr space, const Scalar& c);
    static Polynomial coordinate(SpacePtr space, int var);
    static Polynomial monomial(SpacePtr space, const MultiIndex& I, const Scalar& c);

    const SpacePtr& space() const { return space_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Coefficient of the given monomial (zero if absent).
    Scalar coeff(const MultiIndex& I) const;
    Scalar constant_term() const { return coeff(zero_index(space_->dim())); }
    int total_degree() const; // -1 for the zero polynomial
    int degree_in(int var) const;

    void add_term(const MultiIndex& I, const Scalar& c);

    Polynomial operator-() const;
    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

    Polynomial scaled(const Scalar& c) const;
    Polynomial pow(int e) const;

    friend bool operator==(const Polynomial& a, const Polynomial& b);
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Exact formal partial derivative with respect to the var-th coordinate.
    Polynomial derivative(int var) const;
    Polynomial derivative(const MultiIndex& I) const;
    Polynomial derivative_by_name(const std::string& var) const;

    /// Composes with the given coordinate images: every coordinate of this
    /// polynomial must be mapped to a polynomial on the common target space.
    Polynomial substitute(const std::vector<Polynomial>& images) const;

    /// Canonical rendering, highest graded-lex term first.
    std::string str() const;

  private:
    SpacePtr space_;
    TermMap terms_;
};

/// Nested integral over the ordered simplex 1 >= t_1 >= ... >= t_k >= 0 for
/// the named variables tvars (innermost last). The t-variables are eliminated
/// (zero exponent in the result, which stays on the same space).
Polynomial integrate_simplex(const Polynomial& p, const std::vector<int>& tvars);
Polynomial integrate_simplex(const Polynomial& p, int k, const std::string& prefix = "t");

/// Antiderivative in a single variable (constant of integration zero).
Polynomial antiderivative(const Polynomial& p, int var);

/// Maps a polynomial to a space that contains (by name) all variables the
/// polynomial actually uses; other variables of the source are required to be
/// absent from its support.
Polynomial transfer(const Polynomial& p, const SpacePtr& target);

/// Same exponents, new coordinate names; spaces must have equal dimension.
Polynomial rename_positional(const Polynomial& p, const SpacePtr& target);

/// Pullback along the canonical projection: a on M maps to
/// a(y^1..y^k, 0, .., 0) on N where k = N->base_rank. Unital algebra morphism.
Polynomial pullback(const Polynomial& a, const SpacePtr& N);

} // namespace dqw

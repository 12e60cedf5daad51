#pragma once

#include "dqw/diffop.hpp"

#include <map>
#include <string>
#include <vector>

namespace dqw {

/// One multi-index per argument slot; the jets pr*(d_I a) of the arguments.
using ArgJets = std::vector<MultiIndex>;

struct ArgJetsLess {
    bool operator()(const ArgJets& a, const ArgJets& b) const;
};

/// Multidifferential operator in the local normal form
///   phi(a_1..a_p) = sum pr*(d_{I_1} a_1) ... pr*(d_{I_p} a_p) * value,
/// with arguments on a source space M and DiffOp values on a target space N
/// whose base_rank determines the projection pr : N -> M. Function-valued
/// cochains are the special case of multiplication-operator values. The
/// normal form is unique, so structural equality is operator equality.
class MultiDiffOp {
  public:
    using TermMap = std::map<ArgJets, DiffOp, ArgJetsLess>;

    MultiDiffOp() = default;
    MultiDiffOp(int arity, SpacePtr source, SpacePtr target);

    static MultiDiffOp zero(int arity, SpacePtr source, SpacePtr target);
    /// Arity-0 cochain holding a bare module element.
    static MultiDiffOp element(SpacePtr source, const DiffOp& value);

    int arity() const { return arity_; }
    const SpacePtr& source() const { return source_; }
    const SpacePtr& target() const { return target_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const ArgJets& jets, const DiffOp& value);
    void add_function_term(const ArgJets& jets, const Polynomial& value_on_target);

    /// Evaluates the argument slots, leaving a differential operator.
    DiffOp apply(const std::vector<Polynomial>& args) const;
    Polynomial apply_to(const std::vector<Polynomial>& args, const Polynomial& f) const;

    MultiDiffOp operator-() const;
    MultiDiffOp& operator+=(const MultiDiffOp& o);
    MultiDiffOp& operator-=(const MultiDiffOp& o);
    friend MultiDiffOp operator+(MultiDiffOp a, const MultiDiffOp& b) { return a += b; }
    friend MultiDiffOp operator-(MultiDiffOp a, const MultiDiffOp& b) { return a -= b; }
    MultiDiffOp scaled(const Scalar& c) const;

    friend bool operator==(const MultiDiffOp& a, const MultiDiffOp& b);
    friend bool operator!=(const MultiDiffOp& a, const MultiDiffOp& b) { return !(a == b); }

    /// Max jet order in one argument slot.
    int order_in_arg(int slot) const;
    int value_order() const;
    /// True when every term differentiates the given slot at least once,
    /// i.e. the cochain vanishes on constants in that slot.
    bool annihilates_constants(int slot) const;
    /// Per-term vertical projection of the values (trivial flat connection).
    MultiDiffOp vertical_values() const;
    /// Values evaluated on the unit, kept as multiplication operators.
    MultiDiffOp values_applied_to_one() const;
    bool has_function_values() const;

    std::string str() const;

  private:
    int arity_ = 0;
    SpacePtr source_;
    SpacePtr target_;
    TermMap terms_;
};

/// D o phi: the operator D applied after the cochain, Leibniz-expanded over
/// the argument jets (derivatives along base directions become higher jets).
MultiDiffOp post_compose(const DiffOp& D, const MultiDiffOp& phi);

/// phi with every value composed with D on the right (D acts first).
MultiDiffOp value_right_compose(const MultiDiffOp& phi, const DiffOp& D);

/// phi(a_1, .., T a_slot, .., a_p) as a cochain; T acts on the source.
MultiDiffOp pre_compose_arg(const MultiDiffOp& phi, int slot, const DiffOp& T);

/// phi(psi(a_1..a_q)) for unary phi and a function-valued cochain psi whose
/// source and target both live on phi's source space.
MultiDiffOp insert_function_cochain(const MultiDiffOp& phi, const MultiDiffOp& psi);

/// (a_1..a_p, b_1..b_q) |-> phi(a_1..a_p) o psi(b_1..b_q) as operators.
MultiDiffOp compose_values(const MultiDiffOp& phi, const MultiDiffOp& psi);

/// Argument permutation: the result's slot s carries phi's jets from slot
/// perm[s] (for an involution this is phi with arguments permuted by perm).
MultiDiffOp permute_args(const MultiDiffOp& phi, const std::vector<int>& perm);

/// Multiplication cochain (a_1..a_p) |-> a_1 * ... * a_p on the source.
MultiDiffOp multiplication_cochain(int arity, const SpacePtr& source);

/// (a_0, a_1..a_p) |-> pr*(a_0) * phi(a_1..a_p): a fresh leading slot.
MultiDiffOp left_action_extension(const MultiDiffOp& phi);

/// (a_1..a_{p+1}) |-> phi(a_1, .., a_i * a_{i+1}, .., a_{p+1}); i is 1-based.
MultiDiffOp merge_extension(const MultiDiffOp& phi, int i);

/// (a_1..a_{p+1}) |-> phi(a_1..a_p) o mult(pr* a_{p+1}): the right module
/// action of a fresh trailing argument, Leibniz-expanded.
MultiDiffOp right_action_extension(const MultiDiffOp& phi);

} // namespace dqw

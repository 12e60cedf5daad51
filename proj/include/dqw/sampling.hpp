#pragma once

#include "dqw/koszul.hpp"
#include "dqw/multidiffop.hpp"

#include <cstdint>

namespace dqw {

/// Deterministic splittable generator (splitmix64). All property evidence
/// flows from a single recorded seed through derived children, so identical
/// seeds reproduce identical reports on any platform.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed), seed0_(seed) {}

    std::uint64_t next();
    /// Uniform value in [0, n).
    std::uint64_t uniform(std::uint64_t n);
    /// Integer in [lo, hi].
    long range(long lo, long hi);
    /// Independent child stream for a named sub-check.
    Rng child(std::uint64_t tag) const;

    std::uint64_t seed() const { return seed0_; }

  private:
    std::uint64_t state_;
    std::uint64_t seed0_ = 0;
};

struct SampleOptions {
    int max_degree = 3;
    int n_terms = 3;
    int coeff_height = 4;
    bool gaussian = true; // allow imaginary parts
};

Scalar random_scalar(Rng& rng, const SampleOptions& opt);
Polynomial random_polynomial(Rng& rng, const SpacePtr& space, const SampleOptions& opt);
/// Nonzero-term operator with symbol order <= max_order.
DiffOp random_diffop(Rng& rng, const SpacePtr& space, int max_order, const SampleOptions& opt);
MultiDiffOp random_multidiffop(Rng& rng, int arity, const SpacePtr& source, const SpacePtr& target,
                               int max_jet_order, int max_value_order, const SampleOptions& opt);
/// Function-valued variant (multiplication-operator values).
MultiDiffOp random_function_cochain(Rng& rng, int arity, const SpacePtr& source,
                                    const SpacePtr& target, int max_jet_order,
                                    const SampleOptions& opt);
BarChain random_bar_chain(Rng& rng, int m, int degree, const SampleOptions& opt);
KoszulChain random_koszul_chain(Rng& rng, int m, int degree, const SampleOptions& opt);
KoszulCochain random_koszul_cochain(Rng& rng, int m, int degree, const SpacePtr& target,
                                    int max_value_order, bool vertical_values,
                                    const SampleOptions& opt);

} // namespace dqw

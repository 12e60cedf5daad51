#pragma once

#include "dqw/multidiffop.hpp"

#include <optional>
#include <string>

namespace dqw {

struct KoszulCochain;

enum class ModuleTag { Functions, DiffOps };

/// Hochschild differential on differential cochains with the module structure
/// (a . D . b)(f) = pr*a D(pr*b f):
///   (d phi)(a_1..a_{p+1}) = a_1 phi(a_2..) + sum (-1)^i phi(..a_i a_{i+1}..)
///                           + (-1)^{p+1} phi(a_1..a_p) . a_{p+1}
MultiDiffOp hochschild_differential(const MultiDiffOp& phi);

struct CocycleCheck {
    bool closed = false;
    std::string witness; // rendered argument tuple when not closed
};

/// Exact structural test (unique normal form); the witness is a sampled
/// argument tuple on which the differential does not vanish.
CocycleCheck is_cocycle(const MultiDiffOp& phi, std::uint64_t seed = 1);

/// Total antisymmetrization with the 1/p! normalization, making it a
/// projection: Alt(phi)(a_1..a_p) = 1/p! sum_sigma sign(sigma) phi(a_sigma).
MultiDiffOp antisymmetrize(const MultiDiffOp& phi);

/// Cohomology-class representative of a closed cochain on the Koszul side:
/// project values to the vertical part (for DiffOp modules), antisymmetrize,
/// read off the exterior-basis coefficients, and reduce modulo the image of
/// the Koszul cochain differential. Coboundaries map to zero.
KoszulCochain class_of(const MultiDiffOp& phi, ModuleTag tag);

} // namespace dqw

#pragma once

#include <memory>
#include <string>
#include <vector>

namespace dqw {

/// Exponent/derivative multi-index over a fixed variable set.
using MultiIndex = std::vector<int>;

int order_of(const MultiIndex& I);
MultiIndex zero_index(int dim);
MultiIndex unit_index(int dim, int var);
MultiIndex add_indices(const MultiIndex& a, const MultiIndex& b);
/// a - b; requires b <= a componentwise.
MultiIndex sub_indices(const MultiIndex& a, const MultiIndex& b);
bool leq_indices(const MultiIndex& a, const MultiIndex& b);
/// Product of componentwise binomial coefficients C(a_j, b_j).
long long binomial_index(const MultiIndex& a, const MultiIndex& b);

/// Graded lexicographic order: by total order |I| first, then lexicographic.
struct GradedLexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const;
};

struct Space;
using SpacePtr = std::shared_ptr<const Space>;

/// Named coordinate set. The first `base_rank` coordinates are the image of
/// the canonical projection (pullbacks of the base coordinates); the rest are
/// fiber directions.
struct Space {
    std::vector<std::string> names;
    int base_rank = 0;

    int dim() const { return static_cast<int>(names.size()); }
    const std::string& name(int i) const { return names.at(static_cast<size_t>(i)); }
    /// Index of a named coordinate, -1 if absent.
    int index_of(const std::string& n) const;

    /// Base model R^m with coordinates prefix1..prefixm; base_rank = m.
    static SpacePtr base(int m, const std::string& prefix = "x");
    /// Total space R^n over a rank-k projection; coordinates prefix1..prefixn.
    static SpacePtr total(int n, int k, const std::string& prefix = "y");
    static SpacePtr named(std::vector<std::string> names, int base_rank);
};

bool same_space(const SpacePtr& a, const SpacePtr& b);
void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* what);

} // namespace dqw

#include "dqw/space.hpp"

#include "dqw/scalar.hpp"

#include <numeric>
#include <stdexcept>

namespace dqw {

int order_of(const MultiIndex& I) { return std::accumulate(I.begin(), I.end(), 0); }

MultiIndex zero_index(int dim) { return MultiIndex(static_cast<size_t>(dim), 0); }

MultiIndex unit_index(int dim, int var) {
    MultiIndex I = zero_index(dim);
    I.at(static_cast<size_t>(var)) = 1;
    return I;
}

MultiIndex add_indices(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r = a;
    for (size_t j = 0; j < r.size(); ++j)
        r[j] += b[j];
    return r;
}

MultiIndex sub_indices(const MultiIndex& a, const MultiIndex& b) {
    MultiIndex r = a;
    for (size_t j = 0; j < r.size(); ++j) {
        r[j] -= b[j];
        if (r[j] < 0)
            throw std::invalid_argument("sub_indices: not componentwise <=");
    }
    return r;
}

bool leq_indices(const MultiIndex& a, const MultiIndex& b) {
    for (size_t j = 0; j < a.size(); ++j)
        if (a[j] > b[j])
            return false;
    return true;
}

long long binomial_index(const MultiIndex& a, const MultiIndex& b) {
    long long r = 1;
    for (size_t j = 0; j < a.size(); ++j)
        r *= binomial_ll(a[j], b[j]);
    return r;
}

bool GradedLexLess::operator()(const MultiIndex& a, const MultiIndex& b) const {
    int oa = order_of(a), ob = order_of(b);
    if (oa != ob)
        return oa < ob;
    return a < b;
}

int Space::index_of(const std::string& n) const {
    for (int i = 0; i < dim(); ++i)
        if (names[static_cast<size_t>(i)] == n)
            return i;
    return -1;
}

SpacePtr Space::base(int m, const std::string& prefix) { return total(m, m, prefix); }

SpacePtr Space::total(int n, int k, const std::string& prefix) {
    if (k < 0 || k > n)
        throw std::invalid_argument("Space: base_rank out of range");
    auto sp = std::make_shared<Space>();
    for (int i = 1; i <= n; ++i)
        sp->names.push_back(prefix + std::to_string(i));
    sp->base_rank = k;
    return sp;
}

SpacePtr Space::named(std::vector<std::string> names, int base_rank) {
    if (base_rank < 0 || base_rank > static_cast<int>(names.size()))
        throw std::invalid_argument("Space: base_rank out of range");
    auto sp = std::make_shared<Space>();
    sp->names = std::move(names);
    sp->base_rank = base_rank;
    return sp;
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    return a->names == b->names && a->base_rank == b->base_rank;
}

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* what) {
    if (!same_space(a, b))
        throw std::invalid_argument(std::string(what) + ": variable-set mismatch");
}

} // namespace dqw

#include "dqw/cohomology.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <functional>
#include <iomanip>
#include <map>
#include <sstream>
#include <stdexcept>

namespace dqw {

KoszulCochain koszul_cochain_differential(const KoszulCochain& phi) {
    const int k = phi.target->base_rank;
    KoszulCochain out = KoszulCochain::zero(phi.m, phi.degree + 1, phi.target);
    for (const auto& [T, D] : phi.comps) {
        for (const auto& [J, f] : D.terms()) {
            for (int i = 0; i < k; ++i) {
                int e = J[static_cast<size_t>(i)];
                if (e == 0)
                    continue;
                WedgeResult w = wedge_insert(i, T);
                if (w.sign == 0)
                    continue;
                MultiIndex J2 = J;
                --J2[static_cast<size_t>(i)];
                DiffOp value(phi.target);
                value.add_term(J2, f.scaled(Scalar(-w.sign * e)));
                out.add(w.tuple, value);
            }
        }
    }
    return out;
}

KoszulCochain koszul_cochain_contraction(const KoszulCochain& phi) {
    const int k = phi.target->base_rank;
    KoszulCochain out = KoszulCochain::zero(phi.m, phi.degree - 1, phi.target);
    if (phi.degree == 0)
        throw std::invalid_argument("koszul_cochain_contraction: degree 0");
    for (const auto& [T, D] : phi.comps) {
        for (size_t pos = 0; pos < T.size(); ++pos) {
            int t = T[pos];
            if (t >= k)
                continue;
            IncTuple rest;
            for (size_t s = 0; s < T.size(); ++s)
                if (s != pos)
                    rest.push_back(T[s]);
            int sign = pos % 2 == 0 ? 1 : -1;
            for (const auto& [J, f] : D.terms()) {
                MultiIndex J2 = J;
                ++J2[static_cast<size_t>(t)];
                DiffOp value(phi.target);
                value.add_term(J2, f.scaled(Scalar(-sign)));
                out.add(rest, value);
            }
        }
    }
    return out;
}

namespace {

int base_weight(const IncTuple& T, const MultiIndex& J, int k) {
    int w = 0;
    for (int t : T)
        if (t < k)
            ++w;
    for (int i = 0; i < k; ++i)
        w += J[static_cast<size_t>(i)];
    return w;
}

// Splits a cochain into graded slices by base weight.
std::map<int, KoszulCochain> weight_split(const KoszulCochain& phi) {
    const int k = phi.target->base_rank;
    std::map<int, KoszulCochain> slices;
    for (const auto& [T, D] : phi.comps) {
        for (const auto& [J, f] : D.terms()) {
            int w = base_weight(T, J, k);
            auto it = slices.find(w);
            if (it == slices.end())
                it = slices.emplace(w, KoszulCochain::zero(phi.m, phi.degree, phi.target)).first;
            DiffOp value(phi.target);
            value.add_term(J, f);
            it->second.add(T, value);
        }
    }
    return slices;
}

} // namespace

ClassReduction reduce_koszul_class(const KoszulCochain& phi) {
    ClassReduction r;
    r.harmonic = KoszulCochain::zero(phi.m, phi.degree, phi.target);
    KoszulCochain exact_part = r.harmonic;
    KoszulCochain primitive = KoszulCochain::zero(phi.m, phi.degree - 1 < 0 ? 0 : phi.degree - 1,
                                                  phi.target);
    bool have_primitive = false;
    for (const auto& [w, slice] : weight_split(phi)) {
        if (w == 0) {
            r.harmonic = r.harmonic + slice;
        } else {
            exact_part = exact_part + slice;
            if (phi.degree > 0) {
                KoszulCochain contr = koszul_cochain_contraction(slice).scaled(
                    Scalar(1, w));
                primitive = have_primitive ? primitive + contr : contr;
                have_primitive = true;
            }
        }
    }
    if (!have_primitive)
        r.exact_part_verified = exact_part.is_zero();
    else
        r.exact_part_verified = koszul_cochain_differential(primitive) == exact_part;
    return r;
}

long long bareiss_rank(std::vector<std::vector<long long>> mat) {
    if (mat.empty() || mat[0].empty())
        return 0;
    const size_t rows = mat.size(), cols = mat[0].size();
    std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
    for (size_t r = 0; r < rows; ++r)
        for (size_t c = 0; c < cols; ++c)
            a[r][c] = static_cast<long>(mat[r][c]);
    mpz_class prev(1);
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t pivot = rank;
        while (pivot < rows && a[pivot][col] == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        std::swap(a[pivot], a[rank]);
        for (size_t r = rank + 1; r < rows; ++r) {
            for (size_t c = col + 1; c < cols; ++c)
                a[r][c] = (a[rank][col] * a[r][c] - a[r][col] * a[rank][c]) / prev;
            a[r][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return static_cast<long long>(rank);
}

namespace {

std::vector<IncTuple> subsets_of_size(int lo, int hi, int size) {
    std::vector<IncTuple> out;
    IncTuple cur;
    std::function<void(int)> rec = [&](int start) {
        if (static_cast<int>(cur.size()) == size) {
            out.push_back(cur);
            return;
        }
        for (int v = start; v < hi; ++v) {
            cur.push_back(v);
            rec(v + 1);
            cur.pop_back();
        }
    };
    rec(lo);
    return out;
}

std::vector<MultiIndex> indices_with_total(int slots, int total) {
    std::vector<MultiIndex> out;
    MultiIndex cur(static_cast<size_t>(slots), 0);
    std::function<void(int, int)> rec = [&](int pos, int rest) {
        if (pos == slots) {
            if (rest == 0)
                out.push_back(cur);
            return;
        }
        for (int e = 0; e <= rest; ++e) {
            cur[static_cast<size_t>(pos)] = e;
            rec(pos + 1, rest - e);
        }
        cur[static_cast<size_t>(pos)] = 0;
    };
    rec(0, total);
    return out;
}

std::vector<MultiIndex> indices_up_to_total(int slots, int max_total) {
    std::vector<MultiIndex> out;
    for (int t = 0; t <= max_total; ++t)
        for (auto& I : indices_with_total(slots, t))
            out.push_back(I);
    return out;
}

long long choose(long long n, long long r) { return binomial_ll(n, r); }

// One weight slice of the base complex on (T_base, J_base): pure de Rham
// combinatorics, independent of the block data. Returns per-piece dimensions
// and the ranks of the differential out of each piece.
struct SliceData {
    std::vector<long long> dims;  // by base form degree j_b = 0..min(N,k)
    std::vector<long long> ranks; // rank of d: piece j_b -> j_b+1
};

SliceData slice_complex(int k, int N) {
    SliceData sd;
    const int top = std::min(N, k);
    std::vector<std::vector<std::pair<IncTuple, MultiIndex>>> bases;
    for (int jb = 0; jb <= top; ++jb) {
        std::vector<std::pair<IncTuple, MultiIndex>> basis;
        for (const auto& T : subsets_of_size(0, k, jb))
            for (const auto& J : indices_with_total(k, N - jb))
                basis.emplace_back(T, J);
        sd.dims.push_back(static_cast<long long>(basis.size()));
        bases.push_back(std::move(basis));
    }
    for (int jb = 0; jb <= top; ++jb) {
        if (jb == top) {
            sd.ranks.push_back(0);
            break;
        }
        std::map<std::pair<IncTuple, MultiIndex>, size_t> row_index;
        for (size_t r = 0; r < bases[static_cast<size_t>(jb) + 1].size(); ++r)
            row_index[bases[static_cast<size_t>(jb) + 1][r]] = r;
        std::vector<std::vector<long long>> mat(
            bases[static_cast<size_t>(jb) + 1].size(),
            std::vector<long long>(bases[static_cast<size_t>(jb)].size(), 0));
        for (size_t c = 0; c < bases[static_cast<size_t>(jb)].size(); ++c) {
            const auto& [T, J] = bases[static_cast<size_t>(jb)][c];
            for (int i = 0; i < k; ++i) {
                int e = J[static_cast<size_t>(i)];
                if (e == 0)
                    continue;
                WedgeResult w = wedge_insert(i, T);
                if (w.sign == 0)
                    continue;
                MultiIndex J2 = J;
                --J2[static_cast<size_t>(i)];
                mat[row_index.at({w.tuple, J2})][c] += -w.sign * e;
            }
        }
        sd.ranks.push_back(mat.empty() || mat[0].empty() ? 0 : bareiss_rank(mat));
    }
    return sd;
}

} // namespace

long long closed_form_dimension(const Truncation& t, int degree) {
    const long long coeffs = choose(t.n + t.max_coeff_degree, t.max_coeff_degree);
    if (t.tag == ModuleTag::Functions)
        return choose(t.m, degree) * coeffs;
    const long long vert = choose(t.n - t.k + t.max_operator_order, t.max_operator_order);
    return choose(t.m - t.k, degree) * vert * coeffs;
}

CohomologyReport truncated_cohomology(const Truncation& t) {
    if (t.k < 0 || t.k > std::min(t.m, t.n))
        throw std::invalid_argument("Truncation: need 0 <= k <= min(m, n)");
    if (t.max_coeff_degree < 0 || t.max_operator_order < 0)
        throw std::invalid_argument("Truncation: negative bounds");
    CohomologyReport rep;
    rep.trunc = t;
    SpacePtr N = Space::total(t.n, t.k);

    const long long n_coeffs = choose(t.n + t.max_coeff_degree, t.max_coeff_degree);
    auto coeff_monomials = indices_up_to_total(t.n, t.max_coeff_degree);

    std::vector<DegreeDims> dims(static_cast<size_t>(t.m) + 1);
    for (int j = 0; j <= t.m; ++j) {
        dims[static_cast<size_t>(j)].degree = j;
        dims[static_cast<size_t>(j)].closed_form = closed_form_dimension(t, j);
    }

    if (t.tag == ModuleTag::Functions) {
        // The differential vanishes; every basis element is a cycle.
        for (int j = 0; j <= t.m; ++j) {
            long long dim = choose(t.m, j) * n_coeffs;
            auto& dd = dims[static_cast<size_t>(j)];
            dd.cochain_dim = dim;
            dd.kernel_dim = dim;
            dd.image_from_below = 0;
            dd.homology = dim;
        }
        // Representatives: e^T (x) monomial.
        for (int j = 0; j <= t.m; ++j) {
            for (const auto& T : subsets_of_size(0, t.m, j)) {
                for (const auto& F : coeff_monomials) {
                    KoszulCochain r = KoszulCochain::zero(t.m, j, N);
                    r.add(T, DiffOp::mult(Polynomial::monomial(N, F, Scalar::one())));
                    rep.representatives.push_back(std::move(r));
                }
            }
        }
    } else {
        // Vertical symbols and base weights; every included slice is complete.
        std::map<int, SliceData> slices; // keyed by weight N
        auto vertical_symbols = indices_up_to_total(t.n - t.k, t.max_operator_order);
        for (int w = 0; w <= t.max_operator_order; ++w)
            slices.emplace(w, slice_complex(t.k, w));
        const long long n_blocks_coeff = n_coeffs;
        for (const auto& Jvert : vertical_symbols) {
            const int ov = order_of(Jvert);
            for (int tb = 0; tb <= t.m - t.k; ++tb) {
                const long long n_tnb = choose(t.m - t.k, tb);
                for (int w = 0; w <= t.max_operator_order - ov; ++w) {
                    const SliceData& sd = slices.at(w);
                    const long long mult = n_blocks_coeff * n_tnb;
                    for (size_t jb = 0; jb < sd.dims.size(); ++jb) {
                        int deg = static_cast<int>(jb) + tb;
                        auto& dd = dims[static_cast<size_t>(deg)];
                        dd.cochain_dim += mult * sd.dims[jb];
                        dd.kernel_dim += mult * (sd.dims[jb] - sd.ranks[jb]);
                        if (jb > 0)
                            dd.image_from_below += mult * sd.ranks[jb - 1];
                    }
                }
            }
        }
        for (int j = 0; j <= t.m; ++j) {
            auto& dd = dims[static_cast<size_t>(j)];
            dd.homology = dd.kernel_dim - dd.image_from_below;
        }
        // Representatives: weight-zero generators e^{T_nonbase} (x) f y^{J_vert}.
        for (const auto& Jvert : vertical_symbols) {
            MultiIndex sym = zero_index(t.n);
            for (int i = 0; i < t.n - t.k; ++i)
                sym[static_cast<size_t>(t.k + i)] = Jvert[static_cast<size_t>(i)];
            for (int tb = 0; tb <= t.m - t.k; ++tb) {
                for (const auto& Tnb : subsets_of_size(t.k, t.m, tb)) {
                    for (const auto& F : coeff_monomials) {
                        KoszulCochain r = KoszulCochain::zero(t.m, tb, N);
                        DiffOp value(N);
                        value.add_term(sym, Polynomial::monomial(N, F, Scalar::one()));
                        r.add(Tnb, value);
                        rep.representatives.push_back(std::move(r));
                    }
                }
            }
        }
    }

    rep.degrees = std::move(dims);
    rep.all_match = true;
    for (const auto& dd : rep.degrees)
        if (dd.homology != dd.closed_form)
            rep.all_match = false;
    return rep;
}

CohomologyReport hkr_compare(const Truncation& t) { return truncated_cohomology(t); }

std::string CohomologyReport::table() const {
    std::ostringstream os;
    os << std::setw(6) << "degree" << " | " << std::setw(6) << "direct" << " | " << std::setw(11)
       << "closed-form" << " | match\n";
    for (const auto& dd : degrees) {
        os << std::setw(6) << dd.degree << " | " << std::setw(6) << dd.homology << " | "
           << std::setw(11) << dd.closed_form << " | "
           << (dd.homology == dd.closed_form ? "yes" : "NO") << "\n";
    }
    return os.str();
}

} // namespace dqw

#pragma once

#include "dqw/scalar.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace dqw {

/// Coefficient list c_0..c_N in the deformation parameter, truncated at a
/// fixed order cap. Combining two series truncates at the minimum cap.
template <typename T> class FormalSeries {
  public:
    FormalSeries(int order_cap, T zero)
        : cap_(order_cap), zero_(zero),
          coeffs_(static_cast<size_t>(order_cap) + 1, std::move(zero)) {
        if (order_cap < 0)
            throw std::invalid_argument("FormalSeries: negative order cap");
    }

    static FormalSeries constant(int order_cap, T zero, T c0) {
        FormalSeries s(order_cap, std::move(zero));
        s.coeffs_[0] = std::move(c0);
        return s;
    }

    int order_cap() const { return cap_; }
    const T& coeff(int r) const { return coeffs_.at(static_cast<size_t>(r)); }
    T& coeff(int r) { return coeffs_.at(static_cast<size_t>(r)); }

    FormalSeries truncated(int cap) const {
        if (cap > cap_)
            throw std::invalid_argument("FormalSeries: cannot extend the cap");
        FormalSeries s(cap, zero_);
        for (int r = 0; r <= cap; ++r)
            s.coeffs_[static_cast<size_t>(r)] = coeffs_[static_cast<size_t>(r)];
        return s;
    }

    friend FormalSeries operator+(const FormalSeries& a, const FormalSeries& b) {
        int cap = std::min(a.cap_, b.cap_);
        FormalSeries s = a.truncated(cap);
        for (int r = 0; r <= cap; ++r)
            s.coeff(r) = s.coeff(r) + b.coeff(r);
        return s;
    }

    /// Cauchy product with a caller-supplied coefficient product.
    FormalSeries cauchy(const FormalSeries& b,
                        const std::function<T(const T&, const T&)>& mul) const {
        int cap = std::min(cap_, b.cap_);
        FormalSeries s(cap, zero_);
        for (int r = 0; r <= cap; ++r)
            for (int u = 0; u <= r; ++u)
                s.coeff(r) = s.coeff(r) + mul(coeff(u), b.coeff(r - u));
        return s;
    }

    friend bool operator==(const FormalSeries& a, const FormalSeries& b) {
        return a.cap_ == b.cap_ && a.coeffs_ == b.coeffs_;
    }

  private:
    int cap_;
    T zero_;
    std::vector<T> coeffs_;
};

} // namespace dqw

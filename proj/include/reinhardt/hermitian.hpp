#pragma once

#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace reinhardt {

using cplx = std::complex<double>;
using MultiIndex = std::vector<int>;

inline std::string multi_index_string(const MultiIndex& k)
{
    std::string out = "(";
    for (std::size_t i = 0; i < k.size(); ++i) out += (i ? "," : "") + std::to_string(k[i]);
    return out + ")";
}

/// One coefficient a_KL of z^K conj(z)^L.
struct HermitianEntry {
    MultiIndex K, L;
    cplx a;
};

/// Real polynomial sum a_KL z^K conj(z)^L with wt(K) = wt(L) = 1/2 under weights
/// alpha_j = 2 m_j, and a_KL = conj(a_LK). Weights are checked in exact integer arithmetic.
class HermitianPolynomial {
public:
    HermitianPolynomial(std::vector<long long> m, std::vector<HermitianEntry> entries) : m_(std::move(m))
    {
        for (long long mj : m_)
            if (mj < 1) throw RejectionError("Hermitian polynomial: every m_j must be a positive integer");
        for (auto& e : entries) {
            check_index(e.K, e);
            check_index(e.L, e);
            table_[{e.K, e.L}] += e.a;
        }
        for (const auto& [key, a] : table_) {
            auto it = table_.find({key.second, key.first});
            const cplx partner = it == table_.end() ? cplx{0.0, 0.0} : it->second;
            if (std::abs(a - std::conj(partner)) > 1e-12 * std::max(1.0, std::abs(a)))
                throw RejectionError("Hermitian polynomial: a" + multi_index_string(key.first) +
                                     multi_index_string(key.second) + " is not the conjugate of a" +
                                     multi_index_string(key.second) + multi_index_string(key.first));
        }
    }

    /// Builds the table for weights alpha_j, which must all be even integers.
    static HermitianPolynomial with_alphas(std::span<const double> alphas, std::vector<HermitianEntry> entries)
    {
        std::vector<long long> m;
        for (double a : alphas) {
            const double half = a / 2.0;
            if (half != std::round(half) || half < 1.0)
                throw RejectionError("Hermitian polynomial: weight " + std::to_string(a) + " is not an even integer");
            m.push_back(static_cast<long long>(half));
        }
        return HermitianPolynomial(std::move(m), std::move(entries));
    }

    /// Real value of the polynomial at z; the imaginary residue must be negligible.
    double operator()(std::span<const cplx> z) const
    {
        detail::require(z.size() == m_.size(), "Hermitian polynomial: arity mismatch");
        cplx sum{0.0, 0.0};
        double scale = 0.0;
        for (const auto& [key, a] : table_) {
            const cplx term = a * power(z, key.first) * std::conj(power(z, key.second));
            sum += term;
            scale += std::abs(term);
        }
        if (std::abs(sum.imag()) > 1e-12 * scale)
            throw EvaluationError("Hermitian polynomial: imaginary part " + std::to_string(sum.imag()) +
                                  " is not negligible");
        return sum.real();
    }

    const std::vector<long long>& m() const noexcept { return m_; }
    std::size_t size() const noexcept { return table_.size(); }

    /// All multi-indices K with wt(K) = 1/2, in lexicographic order.
    static std::vector<MultiIndex> half_weight_indices(const std::vector<long long>& m)
    {
        std::vector<MultiIndex> out;
        MultiIndex cur(m.size(), 0);
        const long long l = lcm_of(m);
        enumerate(m, l, 0, 0, cur, out);
        return out;
    }

private:
    static long long lcm_of(const std::vector<long long>& m)
    {
        long long l = 1;
        for (long long v : m) l = std::lcm(l, v);
        return l;
    }

    // wt(K) = sum k_j / (2 m_j) = 1/2  <=>  sum k_j * (l / m_j) = l.
    static void enumerate(const std::vector<long long>& m, long long l, std::size_t j, long long acc, MultiIndex& cur,
                          std::vector<MultiIndex>& out)
    {
        if (j == m.size()) {
            if (acc == l) out.push_back(cur);
            return;
        }
        for (int kj = 0; acc + kj * (l / m[j]) <= l; ++kj) {
            cur[j] = kj;
            enumerate(m, l, j + 1, acc + kj * (l / m[j]), cur, out);
        }
        cur[j] = 0;
    }

    void check_index(const MultiIndex& k, const HermitianEntry& e) const
    {
        const std::string pair = "a" + multi_index_string(e.K) + multi_index_string(e.L);
        if (k.size() != m_.size()) throw RejectionError("Hermitian polynomial: " + pair + " has the wrong length");
        const long long l = lcm_of(m_);
        long long acc = 0;
        for (std::size_t j = 0; j < k.size(); ++j) {
            if (k[j] < 0) throw RejectionError("Hermitian polynomial: " + pair + " has a negative index");
            acc += k[j] * (l / m_[j]);
        }
        if (acc != l) throw RejectionError("Hermitian polynomial: " + pair + " has an index of weight != 1/2");
    }

    static cplx power(std::span<const cplx> z, const MultiIndex& k)
    {
        cplx v{1.0, 0.0};
        for (std::size_t j = 0; j < k.size(); ++j)
            for (int i = 0; i < k[j]; ++i) v *= z[j];
        return v;
    }

    std::vector<long long> m_;
    std::map<std::pair<MultiIndex, MultiIndex>, cplx> table_;
};

/// Evaluates sum a_KL z^K conj(z)^L after validating the table.
inline double bp_polynomial_eval(const HermitianPolynomial& p, std::span<const cplx> z) { return p(z); }

} // namespace reinhardt

#pragma once

#include "pkern/error.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

namespace pkern::field {

/// Element of F_{p^r}, encoded as the base-p digits of its coordinates in the
/// polynomial basis 1, x, ..., x^{r-1}.
using Elem = std::uint32_t;

/**
 * The finite field F_{p^r} with table-driven arithmetic.
 *
 * Multiplication uses discrete log tables with respect to a primitive element;
 * the defining polynomial is the first primitive polynomial in lexicographic
 * order, so field tables are reproducible.
 */
class GaloisField {
public:
    /// Largest supported field size.
    static constexpr int kMaxOrder = 1024;

    GaloisField(int p, int r) : p_(p), r_(r)
    {
        detail::require(is_prime(p), "field characteristic must be prime");
        detail::require(r >= 1, "extension degree must be at least 1");
        long q = 1;
        for (int i = 0; i < r; ++i) {
            q *= p;
            detail::require(q <= kMaxOrder, "field too large");
        }
        q_ = static_cast<int>(q);
        build_tables();
    }

    /// Shared instance per (p, r).
    static const GaloisField& get(int p, int r)
    {
        static std::mutex mu;
        static std::map<std::pair<int, int>, std::unique_ptr<GaloisField>> cache;
        std::lock_guard lock(mu);
        auto& slot = cache[{p, r}];
        if (!slot)
            slot = std::make_unique<GaloisField>(p, r);
        return *slot;
    }

    int characteristic() const { return p_; }
    int degree() const { return r_; }
    int order() const { return q_; }

    Elem zero() const { return 0; }
    Elem one() const { return 1; }

    Elem add(Elem a, Elem b) const { return add_[a * q_ + b]; }
    Elem neg(Elem a) const { return neg_[a]; }
    Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

    Elem mul(Elem a, Elem b) const
    {
        if (a == 0 || b == 0)
            return 0;
        int s = log_[a] + log_[b];
        if (s >= q_ - 1)
            s -= q_ - 1;
        return exp_[s];
    }

    Elem inv(Elem a) const
    {
        detail::require(a != 0, "division by zero in finite field");
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }

    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    Elem pow(Elem a, long e) const
    {
        if (e == 0)
            return 1;
        if (a == 0)
            return 0;
        long n = q_ - 1;
        long k = (static_cast<long>(log_[a]) * (((e % n) + n) % n)) % n;
        return exp_[k];
    }

    /// a -> a^p.
    Elem frob(Elem a) const { return frob_[a]; }
    /// Inverse of a -> a^p.
    Elem frob_inv(Elem a) const { return frob_inv_[a]; }

    /// a -> a^{p^k} for any integer k.
    Elem frob_pow(Elem a, int k) const
    {
        k %= r_;
        if (k < 0)
            k += r_;
        for (int i = 0; i < k; ++i)
            a = frob(a);
        return a;
    }

    /// Image of an integer under Z -> F_p.
    Elem from_int(long v) const
    {
        long m = ((v % p_) + p_) % p_;
        return static_cast<Elem>(m);
    }

    /// Generator of the multiplicative group.
    Elem primitive() const { return exp_[q_ > 2 ? 1 : 0]; }

    /// Coefficients of the defining polynomial (low degree first, monic).
    const std::vector<int>& modulus() const { return modulus_; }

private:
    static bool is_prime(int p)
    {
        if (p < 2)
            return false;
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0)
                return false;
        return true;
    }

    std::vector<int> digits(Elem a) const
    {
        std::vector<int> d(static_cast<std::size_t>(r_));
        for (int i = 0; i < r_; ++i) {
            d[i] = static_cast<int>(a % p_);
            a /= p_;
        }
        return d;
    }

    Elem from_digits(const std::vector<int>& d) const
    {
        Elem a = 0;
        for (int i = r_ - 1; i >= 0; --i)
            a = a * p_ + static_cast<Elem>(d[i]);
        return a;
    }

    /// Multiplication by x modulo the monic polynomial f (low-first coefficients).
    Elem times_x(Elem a, const std::vector<int>& f) const
    {
        std::vector<int> d = digits(a);
        int top = d[r_ - 1];
        for (int i = r_ - 1; i > 0; --i)
            d[i] = d[i - 1];
        d[0] = 0;
        for (int i = 0; i < r_; ++i)
            d[i] = ((d[i] - top * f[i]) % p_ + p_) % p_;
        return from_digits(d);
    }

    void build_tables()
    {
        add_.assign(static_cast<std::size_t>(q_) * q_, 0);
        neg_.assign(q_, 0);
        for (int a = 0; a < q_; ++a) {
            auto da = digits(a);
            std::vector<int> dn(r_);
            for (int i = 0; i < r_; ++i)
                dn[i] = (p_ - da[i]) % p_;
            neg_[a] = from_digits(dn);
            for (int b = 0; b < q_; ++b) {
                auto db = digits(b);
                std::vector<int> ds(r_);
                for (int i = 0; i < r_; ++i)
                    ds[i] = (da[i] + db[i]) % p_;
                add_[a * q_ + b] = from_digits(ds);
            }
        }

        exp_.assign(q_, 0);
        log_.assign(q_, 0);
        if (r_ == 1) {
            // find a primitive root mod p
            for (int g = 1; g < p_; ++g) {
                if (try_generator([&](Elem a) { return static_cast<Elem>((a * g) % p_); }))
                    break;
            }
            modulus_ = {0, 1};
        } else {
            // enumerate monic f of degree r in lexicographic order of coefficients
            long count = 1;
            for (int i = 0; i < r_; ++i)
                count *= p_;
            bool ok = false;
            for (long code = 0; code < count && !ok; ++code) {
                std::vector<int> f(static_cast<std::size_t>(r_));
                long c = code;
                for (int i = 0; i < r_; ++i) {
                    f[i] = static_cast<int>(c % p_);
                    c /= p_;
                }
                if (f[0] == 0)
                    continue;
                ok = try_generator([&](Elem a) { return times_x(a, f); });
                if (ok) {
                    modulus_ = f;
                    modulus_.push_back(1);
                }
            }
            detail::ensure(ok, "no primitive polynomial found");
        }

        frob_.assign(q_, 0);
        frob_inv_.assign(q_, 0);
        for (int a = 0; a < q_; ++a) {
            Elem b = pow(static_cast<Elem>(a), p_);
            frob_[a] = b;
            frob_inv_[b] = static_cast<Elem>(a);
        }
        for (int a = 0; a < q_; ++a)
            detail::ensure(frob_pow(static_cast<Elem>(a), r_) == static_cast<Elem>(a),
                           "Frobenius does not have order r");
    }

    /// Fills exp/log if repeated multiplication by g visits all q-1 nonzero
    /// elements before returning to 1.
    template <class MulG>
    bool try_generator(MulG mul_g)
    {
        std::vector<bool> seen(q_, false);
        Elem cur = 1;
        for (int k = 0; k < q_ - 1; ++k) {
            if (cur == 0 || seen[cur])
                return false;
            seen[cur] = true;
            exp_[k] = cur;
            log_[cur] = k;
            cur = mul_g(cur);
        }
        return cur == 1;
    }

    int p_ = 2;
    int r_ = 1;
    int q_ = 2;
    std::vector<int> modulus_;
    std::vector<Elem> add_, neg_, exp_, frob_, frob_inv_;
    std::vector<int> log_;
};

} // namespace pkern::field

#pragma once

#include "pkern/error.hpp"
#include "pkern/field/galois_field.hpp"

#include <climits>
#include <string>
#include <vector>

namespace pkern::field {

/**
 * Laurent polynomial sum_k c_k t^{val + k} over F_{p^r}.
 *
 * The zero polynomial has no coefficients and may carry a null field pointer;
 * binary operations take the field from whichever operand has one.
 */
class Poly {
public:
    Poly() = default;
    explicit Poly(const GaloisField* F) : F_(F) {}

    /// c t^e.
    static Poly monomial(const GaloisField& F, Elem c, int e = 0)
    {
        Poly p(&F);
        if (c != 0) {
            p.val_ = e;
            p.c_.push_back(c);
        }
        return p;
    }

    static Poly constant(const GaloisField& F, Elem c) { return monomial(F, c, 0); }
    static Poly one(const GaloisField& F) { return monomial(F, 1, 0); }

    /// From coefficients of t^0, t^1, ...
    static Poly from_coeffs(const GaloisField& F, std::vector<Elem> coeffs, int shift = 0)
    {
        Poly p(&F);
        p.c_ = std::move(coeffs);
        p.val_ = shift;
        p.trim();
        return p;
    }

    const GaloisField* field() const { return F_; }
    bool is_zero() const { return c_.empty(); }

    /// t-adic valuation; INT_MAX for zero.
    int valuation() const { return is_zero() ? INT_MAX : val_; }
    /// Degree of the top term; INT_MIN for zero.
    int top_degree() const { return is_zero() ? INT_MIN : val_ + static_cast<int>(c_.size()) - 1; }

    /// Coefficient of t^e.
    Elem coeff(int e) const
    {
        if (is_zero() || e < val_ || e > top_degree())
            return 0;
        return c_[e - val_];
    }

    /// Lowest nonzero coefficient.
    Elem low_coeff() const { return is_zero() ? 0 : c_.front(); }

    /// this * t^{-valuation}, a polynomial with nonzero constant term.
    Poly unit_part() const
    {
        Poly p = *this;
        if (!p.is_zero())
            p.val_ = 0;
        return p;
    }

    Poly shifted(int k) const
    {
        Poly p = *this;
        if (!p.is_zero())
            p.val_ += k;
        return p;
    }

    /// Sum of the terms with exponent < n.
    Poly truncated(int n) const
    {
        Poly p(F_);
        for (int e = val_; e < n && e <= top_degree(); ++e)
            if (!is_zero())
                p.set(e, coeff(e));
        p.trim();
        return p;
    }

    /// Coefficientwise a -> a^{p^k}.
    Poly frob(int k = 1) const
    {
        Poly p = *this;
        for (auto& a : p.c_)
            a = F_->frob_pow(a, k);
        return p;
    }

    Poly operator-() const
    {
        Poly p = *this;
        for (auto& a : p.c_)
            a = F_->neg(a);
        return p;
    }

    friend Poly operator+(const Poly& a, const Poly& b)
    {
        if (a.is_zero())
            return b;
        if (b.is_zero())
            return a;
        const GaloisField* F = a.F_;
        int lo = std::min(a.val_, b.val_);
        int hi = std::max(a.top_degree(), b.top_degree());
        Poly r(F);
        r.val_ = lo;
        r.c_.assign(static_cast<std::size_t>(hi - lo + 1), 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            r.c_[a.val_ - lo + i] = a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i) {
            auto& slot = r.c_[b.val_ - lo + i];
            slot = F->add(slot, b.c_[i]);
        }
        r.trim();
        return r;
    }

    friend Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

    friend Poly operator*(const Poly& a, const Poly& b)
    {
        if (a.is_zero() || b.is_zero())
            return Poly(a.F_ ? a.F_ : b.F_);
        const GaloisField* F = a.F_;
        Poly r(F);
        r.val_ = a.val_ + b.val_;
        r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0)
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r.c_[i + j] = F->add(r.c_[i + j], F->mul(a.c_[i], b.c_[j]));
        }
        r.trim();
        return r;
    }

    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scaled(Elem s) const
    {
        if (s == 0)
            return Poly(F_);
        Poly p = *this;
        for (auto& a : p.c_)
            a = F_->mul(a, s);
        return p;
    }

    friend bool operator==(const Poly& a, const Poly& b)
    {
        if (a.is_zero() || b.is_zero())
            return a.is_zero() && b.is_zero();
        return a.val_ == b.val_ && a.c_ == b.c_;
    }

    /// Exact quotient a / b when b divides a with a polynomial quotient; throws
    /// otherwise.
    friend Poly exact_div(const Poly& a, const Poly& b)
    {
        detail::require(!b.is_zero(), "division by zero polynomial");
        if (a.is_zero())
            return a;
        const GaloisField* F = b.F_;
        Poly rem = a;
        Poly q(F);
        Elem lead_inv = F->inv(b.c_.front());
        // divide from the low end (power series division), check exactness
        int steps = a.top_degree() - b.top_degree() - (a.valuation() - b.valuation()) + 1;
        for (int k = 0; k < steps && !rem.is_zero(); ++k) {
            int e = rem.valuation() - b.valuation();
            Poly term = monomial(*F, F->mul(rem.low_coeff(), lead_inv), e);
            q += term;
            rem -= term * b;
        }
        detail::require(rem.is_zero(), "inexact polynomial division");
        return q;
    }

    std::string to_string() const
    {
        if (is_zero())
            return "0";
        std::string s;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0)
                continue;
            if (!s.empty())
                s += " + ";
            int e = val_ + static_cast<int>(i);
            s += std::to_string(c_[i]);
            if (e != 0)
                s += "*t^" + std::to_string(e);
        }
        return s;
    }

private:
    void set(int e, Elem v)
    {
        if (c_.empty()) {
            val_ = e;
            c_.push_back(v);
            return;
        }
        if (e < val_) {
            c_.insert(c_.begin(), static_cast<std::size_t>(val_ - e), 0);
            val_ = e;
        }
        if (e > top_degree())
            c_.resize(static_cast<std::size_t>(e - val_ + 1), 0);
        c_[e - val_] = v;
    }

    void trim()
    {
        while (!c_.empty() && c_.back() == 0)
            c_.pop_back();
        std::size_t lead = 0;
        while (lead < c_.size() && c_[lead] == 0)
            ++lead;
        if (lead == c_.size()) {
            c_.clear();
            val_ = 0;
            return;
        }
        if (lead) {
            c_.erase(c_.begin(), c_.begin() + static_cast<long>(lead));
            val_ += static_cast<int>(lead);
        }
    }

    const GaloisField* F_ = nullptr;
    int val_ = 0;
    std::vector<Elem> c_;
};

} // namespace pkern::field

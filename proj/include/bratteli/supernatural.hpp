#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "bratteli/extnat.hpp"

namespace bratteli {

inline std::vector<Int> primes_up_to(unsigned long bound) {
    std::vector<bool> sieve(bound + 1, true);
    std::vector<Int> out;
    for (unsigned long p = 2; p <= bound; ++p) {
        if (!sieve[p]) continue;
        out.emplace_back(p);
        for (unsigned long k = p * p; k <= bound; k += p) sieve[k] = false;
    }
    return out;
}

/// Formal product of primes with multiplicities in N ∪ {inf}. Only
/// primes with positive multiplicity are stored; an absent prime has
/// multiplicity zero.
class SupernaturalNumber {
public:
    SupernaturalNumber() = default;

    static SupernaturalNumber one() { return {}; }

    /// Trial division; factors above 10^6 are accepted as primes only
    /// when the remaining cofactor clears the trial bound squared.
    static SupernaturalNumber from_integer(Int n) {
        if (n < 1) throw std::invalid_argument("SupernaturalNumber: need n >= 1");
        SupernaturalNumber s;
        const unsigned long trial_bound = 1000000;
        for (unsigned long p = 2; Int(p) * Int(p) <= n && p <= trial_bound; p += (p == 2 ? 1 : 2)) {
            while (n % p == 0) {
                s.bump(Int(p), ExtNat(1));
                n /= p;
            }
        }
        if (n > 1) {
            if (n > Int(trial_bound) * Int(trial_bound))
                throw std::domain_error("SupernaturalNumber: cofactor too large to certify prime");
            s.bump(n, ExtNat(1));
        }
        return s;
    }

    /// All primes up to the bound, each with infinite multiplicity.
    static SupernaturalNumber universal(unsigned long prime_bound) {
        SupernaturalNumber s;
        for (const Int& p : primes_up_to(prime_bound)) s.mult_[p] = ExtNat::infinity();
        return s;
    }

    void set(const Int& prime, const ExtNat& multiplicity) {
        if (multiplicity.is_zero())
            mult_.erase(prime);
        else
            mult_[prime] = multiplicity;
    }

    void bump(const Int& prime, const ExtNat& by) {
        if (by.is_zero()) return;
        auto it = mult_.find(prime);
        if (it == mult_.end())
            mult_[prime] = by;
        else
            it->second += by;
    }

    ExtNat multiplicity(const Int& prime) const {
        auto it = mult_.find(prime);
        return it == mult_.end() ? ExtNat(0) : it->second;
    }

    SupernaturalNumber& operator*=(const SupernaturalNumber& o) {
        for (const auto& [p, m] : o.mult_) bump(p, m);
        return *this;
    }
    friend SupernaturalNumber operator*(SupernaturalNumber a, const SupernaturalNumber& b) {
        a *= b;
        return a;
    }

    bool divides(const SupernaturalNumber& o) const {
        for (const auto& [p, m] : mult_)
            if (!(m <= o.multiplicity(p))) return false;
        return true;
    }

    friend bool operator==(const SupernaturalNumber& a, const SupernaturalNumber& b) {
        return a.mult_ == b.mult_;
    }

    const std::map<Int, ExtNat>& factors() const { return mult_; }

    /// Restriction to primes <= bound (for comparing against closed
    /// forms that are infinite on every prime).
    SupernaturalNumber truncated(unsigned long prime_bound) const {
        SupernaturalNumber s;
        for (const auto& [p, m] : mult_)
            if (p <= Int(prime_bound)) s.mult_[p] = m;
        return s;
    }

    std::string str() const {
        if (mult_.empty()) return "1";
        std::string s;
        for (const auto& [p, m] : mult_) {
            if (!s.empty()) s += "*";
            s += p.get_str();
            if (!(m == ExtNat(1))) s += "^" + m.str();
        }
        return s;
    }

private:
    std::map<Int, ExtNat> mult_;
};

/// Pair of supernatural numbers carried by a product of triangular
/// factors T(a,b) = [[a,0],[a-b,b]]; products compose as
/// T(a,b)T(c,d) = T(ac,bd).
struct TriangularPair {
    SupernaturalNumber a;
    SupernaturalNumber b;

    friend bool operator==(const TriangularPair& x, const TriangularPair& y) {
        return x.a == y.a && x.b == y.b;
    }
    std::string str() const { return "(" + a.str() + ", " + b.str() + ")"; }
};

}  // namespace bratteli

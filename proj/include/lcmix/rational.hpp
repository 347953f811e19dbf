#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "lcmix/errors.hpp"

namespace lcmix {

// Exact rational on int64 with __int128 intermediates. Sparsity thresholds are
// strict inequalities at the boundary, so none of this may go through floats.
class Rat {
public:
    Rat() : num_(0), den_(1) {}
    Rat(long long n) : num_(n), den_(1) {}
    Rat(long long n, long long d) : num_(n), den_(d) { normalize(); }

    long long num() const { return num_; }
    long long den() const { return den_; }

    Rat operator+(const Rat& o) const {
        return from128((__int128)num_ * o.den_ + (__int128)o.num_ * den_,
                       (__int128)den_ * o.den_);
    }
    Rat operator-(const Rat& o) const {
        return from128((__int128)num_ * o.den_ - (__int128)o.num_ * den_,
                       (__int128)den_ * o.den_);
    }
    Rat operator*(const Rat& o) const {
        return from128((__int128)num_ * o.num_, (__int128)den_ * o.den_);
    }
    Rat operator/(const Rat& o) const {
        if (o.num_ == 0) throw InputError("rational division by zero");
        return from128((__int128)num_ * o.den_, (__int128)den_ * o.num_);
    }
    Rat operator-() const { return Rat(-num_, den_); }

    bool operator==(const Rat& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const {
        return (__int128)num_ * o.den_ < (__int128)o.num_ * den_;
    }
    bool operator<=(const Rat& o) const { return !(o < *this); }
    bool operator>(const Rat& o) const { return o < *this; }
    bool operator>=(const Rat& o) const { return !(*this < o); }

    long long floor() const {
        long long q = num_ / den_;
        if (num_ % den_ != 0 && num_ < 0) --q;
        return q;
    }

    double to_double() const { return (double)num_ / (double)den_; }

    std::string str() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    // Accepts "p/q" or "p". Whole-string match only.
    static Rat parse(const std::string& s);

private:
    long long num_;
    long long den_; // > 0

    void normalize() {
        if (den_ == 0) throw InputError("rational with zero denominator");
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        long long g = std::gcd(num_ < 0 ? -num_ : num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    static Rat from128(__int128 n, __int128 d) {
        if (d == 0) throw InputError("rational with zero denominator");
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n;
        __int128 b = d;
        while (b != 0) { __int128 t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        const __int128 lim = 0x7fffffffffffffffLL;
        if (n > lim || n < -lim || d > lim)
            throw InputError("rational overflow beyond 64 bits");
        Rat r;
        r.num_ = (long long)n;
        r.den_ = (long long)d;
        return r;
    }
};

inline Rat Rat::parse(const std::string& s) {
    auto slash = s.find('/');
    try {
        size_t used = 0;
        if (slash == std::string::npos) {
            long long n = std::stoll(s, &used);
            if (used != s.size()) throw InputError("trailing characters in rational: " + s);
            return Rat(n);
        }
        long long n = std::stoll(s.substr(0, slash), &used);
        if (used != slash) throw InputError("bad numerator in rational: " + s);
        long long d = std::stoll(s.substr(slash + 1), &used);
        if (used != s.size() - slash - 1) throw InputError("bad denominator in rational: " + s);
        return Rat(n, d);
    } catch (const std::invalid_argument&) {
        throw InputError("cannot parse rational: " + s);
    } catch (const std::out_of_range&) {
        throw InputError("rational out of range: " + s);
    }
}

} // namespace lcmix

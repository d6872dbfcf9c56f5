#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace gptdyn {

/// Exact rational number, always held in lowest terms with a positive
/// denominator. Parsing accepts "p/q" and plain integers.
class Rat {
   public:
    Rat() = default;
    Rat(int64_t v) : v_(static_cast<long>(v)) {}  // NOLINT: implicit by design of the arithmetic
    Rat(int64_t num, int64_t den);
    explicit Rat(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

    static Rat parse(std::string_view text);

    mpz_class num() const { return v_.get_num(); }
    mpz_class den() const { return v_.get_den(); }
    const mpq_class &raw() const { return v_; }

    bool is_zero() const { return sgn(v_) == 0; }
    int sign() const { return sgn(v_); }
    bool is_integer() const { return v_.get_den() == 1; }

    /// "p/q" always, including "1/1" and "0/1".
    std::string to_string() const;
    /// "p/q", or "p" when the denominator is 1.
    std::string to_short_string() const;
    double to_double() const { return v_.get_d(); }

    Rat operator-() const { return Rat(mpq_class(-v_)); }
    Rat &operator+=(const Rat &o) { v_ += o.v_; return *this; }
    Rat &operator-=(const Rat &o) { v_ -= o.v_; return *this; }
    Rat &operator*=(const Rat &o) { v_ *= o.v_; return *this; }
    Rat &operator/=(const Rat &o);

    friend Rat operator+(Rat a, const Rat &b) { return a += b; }
    friend Rat operator-(Rat a, const Rat &b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat &b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat &b) { return a /= b; }

    friend bool operator==(const Rat &a, const Rat &b) { return a.v_ == b.v_; }
    friend std::strong_ordering operator<=>(const Rat &a, const Rat &b) {
        int c = cmp(a.v_, b.v_);
        return c < 0 ? std::strong_ordering::less
                     : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }

   private:
    mpq_class v_{0};
};

Rat abs(const Rat &r);

std::ostream &operator<<(std::ostream &out, const Rat &r);

}  // namespace gptdyn

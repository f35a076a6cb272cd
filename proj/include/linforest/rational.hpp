#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace linforest {

// Exact rational arithmetic for threshold parameters (nu, tau, eta, ...).
// All comparisons against counts are done by integer cross-multiplication so
// that conditions like |RN(S)| >= |S| + nu*n never depend on float rounding.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    // Accepts "3", "3/4" and decimal strings like "0.25".
    static Rational parse(const std::string& s) {
        if (s.empty()) throw std::invalid_argument("rational: empty string");
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            long long n = std::stoll(s.substr(0, slash));
            long long d = std::stoll(s.substr(slash + 1));
            return Rational(n, d);
        }
        auto dot = s.find('.');
        if (dot == std::string::npos) return Rational(std::stoll(s));
        std::string head = s.substr(0, dot), tail = s.substr(dot + 1);
        if (tail.size() > 15) tail = tail.substr(0, 15);
        bool neg = !head.empty() && head[0] == '-';
        long long ip = head.empty() || head == "-" ? 0 : std::stoll(head);
        long long den = 1;
        for (size_t i = 0; i < tail.size(); ++i) den *= 10;
        long long fp = tail.empty() ? 0 : std::stoll(tail);
        long long num = (ip < 0 ? -ip : ip) * den + fp;
        return Rational(neg ? -num : num, den);
    }

    Rational operator+(const Rational& o) const { return Rational(num * o.den + o.num * den, den * o.den); }
    Rational operator-(const Rational& o) const { return Rational(num * o.den - o.num * den, den * o.den); }
    Rational operator*(const Rational& o) const { return Rational(num * o.num, den * o.den); }
    Rational operator/(const Rational& o) const {
        if (o.num == 0) throw std::invalid_argument("rational: divide by zero");
        return Rational(num * o.den, den * o.num);
    }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const { return num * o.den < o.num * den; }
    bool operator<=(const Rational& o) const { return num * o.den <= o.num * den; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const { return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den); }
};

// count >= r * n, exactly.
inline bool count_at_least(long long count, const Rational& r, long long n) {
    return count * r.den >= r.num * n;
}

// count < r * n, exactly.
inline bool count_below(long long count, const Rational& r, long long n) {
    return count * r.den < r.num * n;
}

// Smallest integer >= r*n.
inline long long ceil_mul(const Rational& r, long long n) {
    long long p = r.num * n;
    long long q = r.den;
    long long d = p / q;
    if (p % q != 0 && p > 0) ++d;
    return d;
}

// Largest integer <= r*n.
inline long long floor_mul(const Rational& r, long long n) {
    long long p = r.num * n;
    long long q = r.den;
    long long d = p / q;
    if (p % q != 0 && p < 0) --d;
    return d;
}

}  // namespace linforest

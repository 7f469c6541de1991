#pragma once

// Exact truncated power series in x (size), y (number of parts) and t (an
// extra statistic), with arbitrary-precision integer coefficients.

#include <compare>
#include <cstddef>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "pattern.hpp"

namespace popcomp {

using BigInt = boost::multiprecision::cpp_int;

/// Maximum degree kept per variable.
struct Truncation {
    int nx = 0;
    int ny = 0;
    int nt = 0;

    Truncation() = default;
    Truncation(int nx_, int ny_, int nt_ = 0) : nx(nx_), ny(ny_), nt(nt_) {
        if (nx < 0 || ny < 0 || nt < 0) throw error("truncation degrees must be non-negative");
    }
    /// ny defaults to nx since a composition never has more parts than its size.
    static Truncation xy(int nx_) { return Truncation(nx_, nx_, 0); }

    bool covers(int i, int j, int l) const {
        return i >= 0 && j >= 0 && l >= 0 && i <= nx && j <= ny && l <= nt;
    }
    std::size_t volume() const {
        return static_cast<std::size_t>(nx + 1) * static_cast<std::size_t>(ny + 1) *
               static_cast<std::size_t>(nt + 1);
    }

    friend bool operator==(Truncation const&, Truncation const&) = default;
};

struct Exponent {
    int i = 0;  // x
    int j = 0;  // y
    int l = 0;  // t
    friend auto operator<=>(Exponent const&, Exponent const&) = default;
};

class TruncSeries {
public:
    using Terms = std::map<Exponent, BigInt>;

    explicit TruncSeries(Truncation trunc) : trunc_(trunc) {}

    static TruncSeries zero(Truncation trunc) { return TruncSeries(trunc); }
    static TruncSeries one(Truncation trunc) { return constant(trunc, 1); }
    static TruncSeries constant(Truncation trunc, BigInt c) {
        return monomial(trunc, {0, 0, 0}, std::move(c));
    }
    /// c x^i y^j t^l, or zero when the exponent lies beyond the truncation.
    static TruncSeries monomial(Truncation trunc, Exponent e, BigInt c = 1) {
        TruncSeries s(trunc);
        s.add_term(e, c);
        return s;
    }

    Truncation const& trunc() const noexcept { return trunc_; }
    Terms const& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }

    BigInt coeff(int i, int j, int l = 0) const {
        if (!trunc_.covers(i, j, l))
            throw error("coefficient (" + std::to_string(i) + "," + std::to_string(j) + "," +
                        std::to_string(l) + ") lies beyond the truncation");
        auto it = terms_.find({i, j, l});
        return it == terms_.end() ? BigInt(0) : it->second;
    }

    /// Adds c to the coefficient at e; terms beyond the truncation are dropped.
    void add_term(Exponent e, BigInt const& c) {
        if (!trunc_.covers(e.i, e.j, e.l) || c == 0) return;
        auto [it, fresh] = terms_.try_emplace(e, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    TruncSeries& operator+=(TruncSeries const& o) {
        check(o);
        for (auto const& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    TruncSeries& operator-=(TruncSeries const& o) {
        check(o);
        for (auto const& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    TruncSeries& operator*=(TruncSeries const& o) { return *this = *this * o; }

    friend TruncSeries operator+(TruncSeries a, TruncSeries const& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, TruncSeries const& b) { return a -= b; }
    friend TruncSeries operator-(TruncSeries a) {
        for (auto& [e, c] : a.terms_) c = -c;
        return a;
    }
    friend TruncSeries operator*(BigInt const& k, TruncSeries a) {
        if (k == 0) return TruncSeries(a.trunc_);
        for (auto& [e, c] : a.terms_) c *= k;
        return a;
    }

    friend TruncSeries operator*(TruncSeries const& a, TruncSeries const& b) {
        a.check(b);
        Truncation const& t = a.trunc_;
        std::vector<BigInt> acc(t.volume());
        std::vector<bool> touched(t.volume(), false);
        for (auto const& [ea, ca] : a.terms_)
            for (auto const& [eb, cb] : b.terms_) {
                Exponent e{ea.i + eb.i, ea.j + eb.j, ea.l + eb.l};
                if (!t.covers(e.i, e.j, e.l)) continue;
                std::size_t k = a.index(e);
                acc[k] += ca * cb;
                touched[k] = true;
            }
        TruncSeries out(t);
        for (std::size_t k = 0; k < acc.size(); ++k)
            if (touched[k] && acc[k] != 0) out.terms_.emplace_hint(out.terms_.end(), a.exponent(k), std::move(acc[k]));
        return out;
    }

    friend bool operator==(TruncSeries const&, TruncSeries const&) = default;

    /// Sum of coefficients over the y exponent (y = 1), kept at ny = 0.
    /// Exact only when ny is at least the largest possible part count.
    TruncSeries at_y_one() const {
        TruncSeries out(Truncation(trunc_.nx, 0, trunc_.nt));
        for (auto const& [e, c] : terms_) out.add_term({e.i, 0, e.l}, c);
        return out;
    }

    /// Coefficient of t^l as a series in x, y (nt = 0).
    TruncSeries t_slice(int l) const {
        TruncSeries out(Truncation(trunc_.nx, trunc_.ny, 0));
        for (auto const& [e, c] : terms_)
            if (e.l == l) out.add_term({e.i, e.j, 0}, c);
        return out;
    }

    /// Same coefficients under a larger or smaller truncation.
    TruncSeries retruncated(Truncation t) const {
        TruncSeries out(t);
        for (auto const& [e, c] : terms_) out.add_term(e, c);
        return out;
    }

    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto const& [e, c] : terms_) {
            BigInt mag = c < 0 ? BigInt(-c) : c;
            os << (c < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
            bool unit = e.i == 0 && e.j == 0 && e.l == 0;
            if (mag != 1 || unit) os << mag;
            auto var = [&](char const* v, int d) {
                if (d == 0) return;
                os << v;
                if (d > 1) os << '^' << d;
            };
            var("x", e.i);
            var("y", e.j);
            var("t", e.l);
            first = false;
        }
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, TruncSeries const& s) { return os << s.str(); }

private:
    friend TruncSeries reciprocal(TruncSeries const& a);

    void check(TruncSeries const& o) const {
        if (!(trunc_ == o.trunc_)) throw error("truncation mismatch in series arithmetic");
    }
    std::size_t index(Exponent e) const {
        return (static_cast<std::size_t>(e.i) * static_cast<std::size_t>(trunc_.ny + 1) +
                static_cast<std::size_t>(e.j)) *
                   static_cast<std::size_t>(trunc_.nt + 1) +
               static_cast<std::size_t>(e.l);
    }
    Exponent exponent(std::size_t k) const {
        auto nt1 = static_cast<std::size_t>(trunc_.nt + 1);
        auto ny1 = static_cast<std::size_t>(trunc_.ny + 1);
        return {static_cast<int>(k / (nt1 * ny1)), static_cast<int>((k / nt1) % ny1),
                static_cast<int>(k % nt1)};
    }

    Truncation trunc_;
    Terms terms_;
};

/// Multiplicative inverse up to the truncation. The constant term must be a
/// unit (+1 or -1). Coefficients are solved in lexicographic exponent order,
/// which lists every proper divisor of a monomial before the monomial.
inline TruncSeries reciprocal(TruncSeries const& a) {
    BigInt a0 = a.coeff(0, 0, 0);
    if (a0 != 1 && a0 != -1) throw error("reciprocal needs a unit constant term");
    Truncation const& t = a.trunc();
    std::vector<BigInt> b(t.volume());
    std::vector<std::pair<Exponent, BigInt const*>> rest;
    for (auto const& [e, c] : a.terms())
        if (!(e.i == 0 && e.j == 0 && e.l == 0)) rest.emplace_back(e, &c);

    for (std::size_t k = 0; k < b.size(); ++k) {
        Exponent e = a.exponent(k);
        BigInt s = (k == 0) ? BigInt(1) : BigInt(0);
        for (auto const& [ea, ca] : rest) {
            if (ea.i > e.i || ea.j > e.j || ea.l > e.l) continue;
            s -= *ca * b[a.index({e.i - ea.i, e.j - ea.j, e.l - ea.l})];
        }
        b[k] = a0 == 1 ? s : BigInt(-s);
    }
    TruncSeries out(t);
    for (std::size_t k = 0; k < b.size(); ++k)
        if (b[k] != 0) out.terms_.emplace_hint(out.terms_.end(), out.exponent(k), std::move(b[k]));
    return out;
}

inline TruncSeries pow(TruncSeries const& a, unsigned k) {
    TruncSeries result = TruncSeries::one(a.trunc());
    TruncSeries base = a;
    while (k) {
        if (k & 1u) result *= base;
        k >>= 1u;
        if (k) base *= base;
    }
    return result;
}

enum class Elementary {
    sum_xa,                 // y * sum_{a in A} x^a
    one_minus_xay_product,  // prod_{a in A} (1 - x^a y)
    unit,                   // 1
};

inline TruncSeries elementary(std::vector<int> const& parts, Elementary kind, Truncation trunc) {
    switch (kind) {
        case Elementary::sum_xa: {
            TruncSeries s(trunc);
            for (int a : parts) s.add_term({a, 1, 0}, 1);
            return s;
        }
        case Elementary::one_minus_xay_product: {
            TruncSeries s = TruncSeries::one(trunc);
            for (int a : parts) s *= TruncSeries::one(trunc) - TruncSeries::monomial(trunc, {a, 1, 0});
            return s;
        }
        case Elementary::unit:
            break;
    }
    return TruncSeries::one(trunc);
}

inline TruncSeries elementary(PartSet const& parts, Elementary kind, Truncation trunc) {
    return elementary(parts.parts(), kind, trunc);
}

}  // namespace popcomp

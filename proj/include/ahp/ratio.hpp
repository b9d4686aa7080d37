#pragma once

#include <charconv>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>

namespace ahp {

/// Exact rational judgment value. Always normalized: gcd(num, den) == 1 and den > 0.
class Ratio {
public:
    constexpr Ratio() = default;
    constexpr Ratio(std::int64_t value) : num_(value), den_(1) {}
    constexpr Ratio(std::int64_t num, std::int64_t den) : num_(num), den_(den) { normalize(); }

    constexpr std::int64_t num() const { return num_; }
    constexpr std::int64_t den() const { return den_; }

    constexpr double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

    /// Undefined for zero; callers check positivity first.
    constexpr Ratio reciprocal() const { return Ratio(den_, num_); }

    constexpr bool positive() const { return num_ > 0; }
    constexpr bool is_integer() const { return den_ == 1; }

    friend constexpr bool operator==(const Ratio&, const Ratio&) = default;

    friend constexpr auto operator<=>(const Ratio& a, const Ratio& b) {
        // den > 0 on both sides; values in this domain are small so the products fit.
        return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
    }

    /// `7`, `1/7`, `22/7`; negative values keep the sign on the numerator.
    std::string to_string() const {
        if (den_ == 1) return std::to_string(num_);
        return std::to_string(num_) + "/" + std::to_string(den_);
    }

    /// Accepts `n`, `p/q` and plain decimals (`3.5` parses as 7/2). Returns nullopt on anything else,
    /// including zero denominators and values whose exact form would not fit in 64 bits.
    static std::optional<Ratio> parse(std::string_view text) {
        auto trim = [](std::string_view s) {
            while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
            while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
            return s;
        };
        text = trim(text);
        if (text.empty()) return std::nullopt;

        if (auto slash = text.find('/'); slash != std::string_view::npos) {
            auto p = parse_decimal(trim(text.substr(0, slash)));
            auto q = parse_decimal(trim(text.substr(slash + 1)));
            if (!p || !q || q->num_ == 0) return std::nullopt;
            // (a/b) / (c/d) = (a*d) / (b*c)
            __int128 n = static_cast<__int128>(p->num_) * q->den_;
            __int128 d = static_cast<__int128>(p->den_) * q->num_;
            return from_wide(n, d);
        }
        return parse_decimal(text);
    }

private:
    static std::optional<Ratio> from_wide(__int128 n, __int128 d) {
        if (d == 0) return std::nullopt;
        if (d < 0) { n = -n; d = -d; }
        __int128 a = n < 0 ? -n : n, b = d;
        while (b != 0) { auto t = a % b; a = b; b = t; }
        if (a > 1) { n /= a; d /= a; }
        constexpr __int128 limit = INT64_MAX;
        if (n > limit || n < -limit || d > limit) return std::nullopt;
        return Ratio(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d));
    }

    static std::optional<Ratio> parse_decimal(std::string_view s) {
        if (s.empty()) return std::nullopt;
        bool negative = false;
        if (s.front() == '+' || s.front() == '-') {
            negative = s.front() == '-';
            s.remove_prefix(1);
        }
        auto dot = s.find('.');
        std::string_view whole = s.substr(0, dot);
        std::string_view frac = dot == std::string_view::npos ? std::string_view{} : s.substr(dot + 1);
        if (whole.empty() && frac.empty()) return std::nullopt;
        if (whole.size() + frac.size() > 18) return std::nullopt;
        for (char c : whole) if (c < '0' || c > '9') return std::nullopt;
        for (char c : frac) if (c < '0' || c > '9') return std::nullopt;

        std::string digits{whole};
        digits += frac;
        std::int64_t n = 0;
        if (!digits.empty()) {
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
            if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
        }
        __int128 d = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) d *= 10;
        return from_wide(negative ? -static_cast<__int128>(n) : n, d);
    }

    constexpr void normalize() {
        if (den_ < 0) { num_ = -num_; den_ = -den_; }
        auto g = std::gcd(num_, den_);
        if (g > 1) { num_ /= g; den_ /= g; }
    }

    std::int64_t num_ = 1;
    std::int64_t den_ = 1;
};

} // namespace ahp

#include "sqspan/rational.hpp"

#include <limits>
#include <stdexcept>

namespace sqspan {

Rat rat_from_parts(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    return Rat(BigInt(num), BigInt(den));
}

std::optional<std::pair<std::int64_t, std::int64_t>> rat_to_int64_parts(const Rat& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    static const BigInt lo = std::numeric_limits<std::int64_t>::min();
    static const BigInt hi = std::numeric_limits<std::int64_t>::max();
    if (num < lo || num > hi || den > hi) return std::nullopt;
    return std::make_pair(num.convert_to<std::int64_t>(), den.convert_to<std::int64_t>());
}

std::string rat_to_string(const Rat& r) {
    const BigInt num = boost::multiprecision::numerator(r);
    const BigInt den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

Rat rat_from_string(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(BigInt(s));
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rat(num, den);
}

Rat sqrt2_convergent(std::int64_t max_denominator) {
    if (max_denominator < 1) throw std::invalid_argument("max_denominator must be >= 1");
    // Convergents of sqrt(2) = [1; 2, 2, 2, ...]: p/q with
    // p' = p + 2q, q' = p + q, starting at 1/1.
    BigInt p = 1, q = 1;
    while (true) {
        BigInt np = p + 2 * q;
        BigInt nq = p + q;
        if (nq > max_denominator) break;
        p = np;
        q = nq;
    }
    return Rat(p, q);
}

}  // namespace sqspan

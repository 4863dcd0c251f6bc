#include "pmlab/cook.hpp"

#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pmlab {

namespace {
constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
}

std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b) { return a > kMax - b ? kMax : a + b; }

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    return a > kMax / b ? kMax : a * b;
}

std::uint64_t saturating_pow(std::uint64_t n, std::uint64_t e) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 0; i < e && r != 0 && r != kMax; ++i) r = saturating_mul(r, n);
    if (n == 0 && e > 0) return 0;
    return r;
}

CookResult cook_exponent(std::uint64_t k, std::uint64_t c, const Exceptions& exceptions) {
    if (c == 0) throw std::invalid_argument("cook_exponent: c must be at least 1");
    CookResult r;
    while ((std::uint64_t{1} << r.b) < c) ++r.b;
    for (const auto& [n, v] : exceptions) r.d = std::max(r.d, v);
    r.k_prime = saturating_add(saturating_add(saturating_add(k, r.b), c), r.d);
    return r;
}

Exceptions parse_exceptions(std::string_view text) {
    Exceptions out;
    std::istringstream in{std::string(text)};
    int number = 0;
    for (std::string line; std::getline(in, line);) {
        ++number;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string n, v, rest;
        if (!(fields >> n)) continue;
        if (!(fields >> v) || (fields >> rest))
            throw std::invalid_argument("line " + std::to_string(number) + ": expected `n value`");
        try {
            std::size_t pn = 0, pv = 0;
            const auto nn = std::stoull(n, &pn);
            const auto vv = std::stoull(v, &pv);
            if (pn != n.size() || pv != v.size() || n.front() == '-' || v.front() == '-') throw std::invalid_argument("");
            if (!out.emplace(nn, vv).second)
                throw std::invalid_argument("line " + std::to_string(number) + ": duplicate n");
        } catch (const std::logic_error& e) {
            const std::string what = e.what();
            if (what.rfind("line ", 0) == 0) throw;
            throw std::invalid_argument("line " + std::to_string(number) + ": expected unsigned integers");
        }
    }
    return out;
}

}  // namespace pmlab

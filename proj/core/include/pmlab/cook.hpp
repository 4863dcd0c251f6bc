#pragma once

#include <cstdint>
#include <map>
#include <string_view>

namespace pmlab {

// Finitely many n where f(n) > c n^k, with their values f(n).
using Exceptions = std::map<std::uint64_t, std::uint64_t>;

struct CookResult {
    std::uint64_t b = 0;  // minimal b with c <= 2^b
    std::uint64_t d = 0;  // largest exception value, 0 if none
    std::uint64_t k_prime = 0;
};

// f(n) <= c n^k outside `exceptions` implies f(n) <= n^k' + k' for all n,
// with k' = k + b + c + d. Throws std::invalid_argument when c == 0.
CookResult cook_exponent(std::uint64_t k, std::uint64_t c, const Exceptions& exceptions = {});

// `n value` per line; `#` starts a comment. Throws std::invalid_argument.
Exceptions parse_exceptions(std::string_view text);

// n^e saturated at UINT64_MAX, with 0^0 = 1.
std::uint64_t saturating_pow(std::uint64_t n, std::uint64_t e);
std::uint64_t saturating_add(std::uint64_t a, std::uint64_t b);
std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b);

}  // namespace pmlab

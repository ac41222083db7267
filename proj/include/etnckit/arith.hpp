#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace etnckit {

using BigInt = mpz_class;
using Rational = mpq_class;

bool is_prime(std::int64_t n);
std::vector<std::int64_t> prime_factors(std::int64_t n);  // distinct, ascending
std::vector<std::int64_t> divisors(std::int64_t n);       // ascending
std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t lcm64(std::int64_t a, std::int64_t b);
std::int64_t mod(std::int64_t a, std::int64_t m);  // result in [0, m)
std::int64_t ipow(std::int64_t base, int exp);
// v_p(n) for n != 0.
int valuation(std::int64_t n, std::int64_t p);
int valuation(const BigInt& n, std::int64_t p);

// Reduce a rational with denominator prime to p into [0, p^k). Throws
// Precondition when p divides the denominator.
BigInt rational_mod(const Rational& x, const BigInt& modulus, std::int64_t p);

Rational parse_rational(const std::string& text);
std::string to_string(const Rational& x);  // "a" or "a/b"

}  // namespace etnckit

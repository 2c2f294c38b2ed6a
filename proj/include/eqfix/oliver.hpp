#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "eqfix/group.hpp"

namespace eqfix {

/// The congruence modulus attached to a group: 0 means exact equality,
/// 1 means no condition, absent means undetermined.
struct Modulus {
    std::optional<long long> value;

    static Modulus known(long long n) { return {n}; }
    static Modulus unknown() { return {std::nullopt}; }

    bool is_known() const { return value.has_value(); }

    /// x == 0 mod n, with mod 0 read as integer equality.
    bool divides(long long x) const
    {
        const long long n = *value;
        return n == 0 ? x == 0 : x % n == 0;
    }
};

enum class OliverTag { Zero, One, NontrivialUnknown };

/// Zero carries a normal subgroup P of prime-power-or-trivial order with
/// cyclic quotient; NontrivialUnknown carries a chain P <| H <| G with
/// |P| and |G/H| prime-power-or-trivial and H/P cyclic.
struct OliverClass {
    OliverTag tag;
    std::optional<Subgroup> witness_p;
    std::optional<Subgroup> witness_h;
};

OliverClass classify(const GroupPtr& g, int enumeration_cap = 400);

/// One entry per distinct prime dividing |G|: (p, |G / N(Sylow_p)|).
std::vector<std::pair<long long, long long>> sylow_normalizer_indices(const GroupPtr& g,
                                                                      int enumeration_cap = 400);

/// Integers a_i with 1 + sum a_i * m_i = 0, by extended gcd folded left.
std::vector<long long> degree_zero_coefficients(const std::vector<long long>& indices);

Modulus effective_modulus(const OliverClass& c, std::optional<long long> override_value);

/// Largest square-free factor: 0 for Zero, 1 for One, unknown otherwise.
Modulus square_free_modulus(const OliverClass& c);

}  // namespace eqfix

// SPDX-License-Identifier: Apache-2.0
//
// Exact arithmetic on the Vilenkin group G: finitely supported digit
// sequences x = sum a_j g_j over GF(p) with coordinatewise addition mod p.
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vilfra/rational.hpp"

namespace vilfra {

inline constexpr int kMaxPrime = 257;

/// The prime p defining G. Construction rejects non-primes and p > 257.
class GroupParams {
public:
    explicit GroupParams(int p);

    int p() const { return p_; }

    friend bool operator==(const GroupParams&, const GroupParams&) = default;

private:
    int p_;
};

/// p^n as an integer; n must be non-negative and the result must fit.
std::int64_t ipow(int p, int n);

/// Element of G stored as a sparse digit map with no zero entries, so
/// structural equality is group equality.
class GroupElement {
public:
    explicit GroupElement(GroupParams params) : params_(params) {}
    GroupElement(GroupParams params, const std::map<int, int>& digits);

    /// a * g_n
    static GroupElement basis(GroupParams params, int n, int a = 1);

    const GroupParams& params() const { return params_; }
    const std::map<int, int>& digits() const { return digits_; }
    int digit(int j) const;
    bool is_zero() const { return digits_.empty(); }

    std::string str() const;

    friend bool operator==(const GroupElement& a, const GroupElement& b) {
        return a.params_ == b.params_ && a.digits_ == b.digits_;
    }
    /// Orders elements by their Monna value.
    friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b);

private:
    GroupParams params_;
    std::map<int, int> digits_;
};

GroupElement add(const GroupElement& x, const GroupElement& y);
GroupElement negate(const GroupElement& x);
GroupElement subtract(const GroupElement& x, const GroupElement& y);
/// k-fold scalar multiple x + ... + x.
GroupElement scale(const GroupElement& x, int k);

inline GroupElement operator+(const GroupElement& x, const GroupElement& y) { return add(x, y); }
inline GroupElement operator-(const GroupElement& x, const GroupElement& y) { return subtract(x, y); }

/// A^k x: every digit index j moves to j - k.
GroupElement dilate(const GroupElement& x, int k);

/// Monna map sum a_n p^{-n-1}, exact.
Rational monna(const GroupElement& x);

/// x in G_n, i.e. every digit below index n vanishes.
bool in_subgroup(const GroupElement& x, int n);

/// H_0^{(s)}: the p^s elements a_{-1}g_{-1} + ... + a_{-s}g_{-s}, in increasing
/// Monna order, so position i holds the element with Monna value i.
std::vector<GroupElement> enumerate_h0(GroupParams params, int s);

/// Element of H_0^{(s)} whose Monna value is `index`.
GroupElement h0_element(GroupParams params, int s, std::int64_t index);

}  // namespace vilfra

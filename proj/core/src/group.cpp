// SPDX-License-Identifier: Apache-2.0
#include "vilfra/group.hpp"

#include <sstream>

#include "vilfra/errors.hpp"

namespace vilfra {

namespace {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void require_same(const GroupParams& a, const GroupParams& b) {
    if (!(a == b)) throw ParameterError("group elements over different primes");
}

int mod(int a, int p) { return ((a % p) + p) % p; }

}  // namespace

GroupParams::GroupParams(int p) : p_(p) {
    if (!is_prime(p)) throw ParameterError("p must be prime, got " + std::to_string(p));
    if (p > kMaxPrime) throw ParameterError("p must not exceed 257, got " + std::to_string(p));
}

std::int64_t ipow(int p, int n) {
    if (n < 0) throw ParameterError("negative exponent in ipow");
    std::int64_t v = 1;
    for (int i = 0; i < n; ++i) {
        if (__builtin_mul_overflow(v, static_cast<std::int64_t>(p), &v))
            throw ParameterError("p^n overflows 64 bits");
    }
    return v;
}

GroupElement::GroupElement(GroupParams params, const std::map<int, int>& digits) : params_(params) {
    for (auto [j, a] : digits) {
        const int d = mod(a, params_.p());
        if (d) digits_.emplace(j, d);
    }
}

GroupElement GroupElement::basis(GroupParams params, int n, int a) { return GroupElement(params, {{n, a}}); }

int GroupElement::digit(int j) const {
    auto it = digits_.find(j);
    return it == digits_.end() ? 0 : it->second;
}

std::string GroupElement::str() const {
    if (digits_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto [j, a] : digits_) {
        if (!first) os << " + ";
        first = false;
        if (a != 1) os << a;
        os << "g_" << j;
    }
    return os.str();
}

std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
    // Monna weight p^{-j-1} is largest for the smallest index, so compare
    // digits from the most negative index upward.
    auto ia = a.digits_.begin(), ib = b.digits_.begin();
    while (ia != a.digits_.end() || ib != b.digits_.end()) {
        if (ib == b.digits_.end() || (ia != a.digits_.end() && ia->first < ib->first))
            return std::strong_ordering::greater;
        if (ia == a.digits_.end() || ib->first < ia->first) return std::strong_ordering::less;
        if (ia->second != ib->second) return ia->second <=> ib->second;
        ++ia;
        ++ib;
    }
    return std::strong_ordering::equal;
}

GroupElement add(const GroupElement& x, const GroupElement& y) {
    require_same(x.params(), y.params());
    std::map<int, int> d = x.digits();
    for (auto [j, a] : y.digits()) d[j] += a;
    return GroupElement(x.params(), d);
}

GroupElement negate(const GroupElement& x) {
    std::map<int, int> d;
    for (auto [j, a] : x.digits()) d[j] = -a;
    return GroupElement(x.params(), d);
}

GroupElement subtract(const GroupElement& x, const GroupElement& y) { return add(x, negate(y)); }

GroupElement scale(const GroupElement& x, int k) {
    std::map<int, int> d;
    for (auto [j, a] : x.digits()) d[j] = static_cast<int>((static_cast<long long>(a) * mod(k, x.params().p())) % x.params().p());
    return GroupElement(x.params(), d);
}

GroupElement dilate(const GroupElement& x, int k) {
    std::map<int, int> d;
    for (auto [j, a] : x.digits()) d.emplace(j - k, a);
    return GroupElement(x.params(), d);
}

Rational monna(const GroupElement& x) {
    Rational r;
    for (auto [j, a] : x.digits()) r = r + Rational(a) * Rational::power(x.params().p(), -j - 1);
    return r;
}

bool in_subgroup(const GroupElement& x, int n) { return x.digits().empty() || x.digits().begin()->first >= n; }

GroupElement h0_element(GroupParams params, int s, std::int64_t index) {
    std::map<int, int> d;
    for (int k = 1; k <= s; ++k) {
        d[-k] = static_cast<int>(index % params.p());
        index /= params.p();
    }
    return GroupElement(params, d);
}

std::vector<GroupElement> enumerate_h0(GroupParams params, int s) {
    if (s < 0) throw ParameterError("enumerate_h0 needs s >= 0");
    const std::int64_t count = ipow(params.p(), s);
    std::vector<GroupElement> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) out.push_back(h0_element(params, s, i));
    return out;
}

}  // namespace vilfra

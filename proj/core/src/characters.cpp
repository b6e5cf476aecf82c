// SPDX-License-Identifier: Apache-2.0
#include "vilfra/characters.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "vilfra/errors.hpp"

namespace vilfra {

namespace {

int mod(long long a, int p) { return static_cast<int>(((a % p) + p) % p); }

void require_same(const GroupParams& a, const GroupParams& b) {
    if (!(a == b)) throw ParameterError("objects over different primes");
}

std::map<int, int> canonical(const std::map<int, int>& in, int p, int below) {
    std::map<int, int> out;
    for (auto [j, a] : in) {
        if (j < below) continue;
        const int e = mod(a, p);
        if (e) out.emplace(j, e);
    }
    return out;
}

std::string product_str(const std::map<int, int>& e) {
    if (e.empty()) return "1";
    std::ostringstream os;
    for (auto [j, a] : e) {
        os << "r_" << j;
        if (a != 1) os << "^" << a;
    }
    return os.str();
}

}  // namespace

std::complex<double> UnitPhase::value() const {
    const double angle = 2.0 * std::numbers::pi * numerator / p;
    return {std::cos(angle), std::sin(angle)};
}

Character::Character(GroupParams params, const std::map<int, int>& exponents)
    : params_(params), exponents_(canonical(exponents, params.p(), std::numeric_limits<int>::min())) {}

Character Character::rademacher(GroupParams params, int n, int a) { return Character(params, {{n, a}}); }

int Character::exponent(int j) const {
    auto it = exponents_.find(j);
    return it == exponents_.end() ? 0 : it->second;
}

std::optional<int> Character::top_index() const {
    if (exponents_.empty()) return std::nullopt;
    return exponents_.rbegin()->first;
}

std::string Character::str() const { return product_str(exponents_); }

Character multiply(const Character& a, const Character& b) {
    require_same(a.params(), b.params());
    std::map<int, int> e = a.exponents();
    for (auto [j, x] : b.exponents()) e[j] += x;
    return Character(a.params(), e);
}

Character inverse(const Character& chi) {
    std::map<int, int> e;
    for (auto [j, a] : chi.exponents()) e[j] = -a;
    return Character(chi.params(), e);
}

UnitPhase pair(const Character& chi, const GroupElement& x) {
    require_same(chi.params(), x.params());
    const int p = chi.params().p();
    long long acc = 0;
    const auto& small = chi.exponents().size() <= x.digits().size() ? chi.exponents() : x.digits();
    const auto& large = chi.exponents().size() <= x.digits().size() ? x.digits() : chi.exponents();
    for (auto [j, a] : small) {
        auto it = large.find(j);
        if (it != large.end()) acc += static_cast<long long>(a) * it->second;
    }
    return {mod(acc, p), p};
}

Character dilate_char(const Character& chi, int k) {
    std::map<int, int> e;
    for (auto [j, a] : chi.exponents()) e.emplace(j + k, a);
    return Character(chi.params(), e);
}

bool in_annihilator(const Character& chi, int n) {
    auto top = chi.top_index();
    return !top || *top < n;
}

CharNorm norm(const Character& chi) {
    auto top = chi.top_index();
    if (!top) return CharNorm{true, 0, Rational(0)};
    return CharNorm{false, *top + 1, Rational::power(chi.params().p(), *top + 1)};
}

double log_p_plus(const CharNorm& n) {
    if (n.at_most_one()) return 1.0;
    return static_cast<double>(n.level);
}

CharCoset::CharCoset(GroupParams params, int level, const std::map<int, int>& rep_exponents)
    : params_(params), level_(level), rep_(canonical(rep_exponents, params.p(), level)) {}

CharCoset::CharCoset(int level, const Character& rep) : CharCoset(rep.params(), level, rep.exponents()) {}

int CharCoset::exponent(int j) const {
    auto it = rep_.find(j);
    return it == rep_.end() ? 0 : it->second;
}

std::optional<int> CharCoset::top_index() const {
    if (rep_.empty()) return std::nullopt;
    return rep_.rbegin()->first;
}

bool CharCoset::contains(const Character& chi) const {
    require_same(params_, chi.params());
    return CharCoset(level_, chi).rep_ == rep_;
}

bool CharCoset::contains(const CharCoset& other) const {
    if (other.level_ < level_) {
        return contains(other.representative());
    }
    if (other.level_ > level_) return false;
    return other.rep_ == rep_;
}

std::string CharCoset::str() const {
    std::ostringstream os;
    os << "G_" << level_ << "^perp";
    if (!rep_.empty()) os << " " << product_str(rep_);
    return os.str();
}

bool operator<(const CharCoset& a, const CharCoset& b) {
    if (a.level_ != b.level_) return a.level_ < b.level_;
    return a.rep_ < b.rep_;
}

bool disjoint(const CharCoset& a, const CharCoset& b) {
    require_same(a.params(), b.params());
    // cosets in a nested chain of subgroups are either disjoint or nested
    const CharCoset& coarse = a.level() >= b.level() ? a : b;
    const CharCoset& fine = a.level() >= b.level() ? b : a;
    return !coarse.contains(fine.representative());
}

CharCoset coset_dilate(const CharCoset& c, int k) {
    std::map<int, int> e;
    for (auto [j, a] : c.rep_exponents()) e.emplace(j + k, a);
    return CharCoset(c.params(), c.level() + k, e);
}

std::vector<CharCoset> coset_atoms(const CharCoset& c, int atom_level) {
    if (atom_level > c.level())
        throw ResolutionError("atom level " + std::to_string(atom_level) + " is coarser than coset level " +
                              std::to_string(c.level()));
    const int p = c.params().p();
    const int width = c.level() - atom_level;
    const std::int64_t count = ipow(p, width);
    std::vector<CharCoset> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::int64_t i = 0; i < count; ++i) {
        std::map<int, int> e = c.rep_exponents();
        std::int64_t rest = i;
        for (int j = atom_level; j < c.level(); ++j) {
            e[j] = static_cast<int>(rest % p);
            rest /= p;
        }
        out.emplace_back(c.params(), atom_level, e);
    }
    return out;
}

Rational coset_measure(const CharCoset& c) { return Rational::power(c.params().p(), c.level()); }

}  // namespace vilfra

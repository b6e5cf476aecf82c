// SPDX-License-Identifier: Apache-2.0
//
// The character group X with the canonical Rademacher system
// (r_n, x) = exp(2 pi i x_n / p). A character is a finite product of r_j^{alpha_j}.
#pragma once

#include <complex>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vilfra/group.hpp"
#include "vilfra/rational.hpp"

namespace vilfra {

/// exp(2 pi i numerator / p), carried exactly as an integer mod p.
struct UnitPhase {
    int numerator = 0;
    int p = 2;

    std::complex<double> value() const;
    friend bool operator==(const UnitPhase&, const UnitPhase&) = default;
};

inline UnitPhase operator*(UnitPhase a, UnitPhase b) { return {(a.numerator + b.numerator) % a.p, a.p}; }

class Character {
public:
    explicit Character(GroupParams params) : params_(params) {}
    Character(GroupParams params, const std::map<int, int>& exponents);

    /// r_n^a
    static Character rademacher(GroupParams params, int n, int a = 1);

    const GroupParams& params() const { return params_; }
    const std::map<int, int>& exponents() const { return exponents_; }
    int exponent(int j) const;
    bool is_trivial() const { return exponents_.empty(); }
    /// Largest index carrying a nonzero exponent; empty for the trivial character.
    std::optional<int> top_index() const;

    std::string str() const;

    friend bool operator==(const Character& a, const Character& b) {
        return a.params_ == b.params_ && a.exponents_ == b.exponents_;
    }

private:
    GroupParams params_;
    std::map<int, int> exponents_;
};

Character multiply(const Character& a, const Character& b);
Character inverse(const Character& chi);
inline Character operator*(const Character& a, const Character& b) { return multiply(a, b); }

UnitPhase pair(const Character& chi, const GroupElement& x);

/// chi A^k: every exponent index j moves to j + k.
Character dilate_char(const Character& chi, int k);

/// chi in G_n^perp, i.e. every nonzero exponent sits below index n.
bool in_annihilator(const Character& chi, int n);

/// ||chi|| = p^n for chi in G_n^perp \ G_{n-1}^perp. The trivial character
/// has no such n; it is flagged by `trivial` and has `value` 0.
struct CharNorm {
    bool trivial = false;
    int level = 0;
    Rational value;

    bool at_most_one() const { return trivial || level <= 0; }
};

CharNorm norm(const Character& chi);

/// log_p^+ ||chi||: log_p ||chi|| when ||chi|| > 1, otherwise 1.
double log_p_plus(const CharNorm& n);

/// Coset G_level^perp * chi. Exponents below `level` are absorbed by the
/// subgroup and never stored.
class CharCoset {
public:
    CharCoset(GroupParams params, int level) : params_(params), level_(level) {}
    CharCoset(GroupParams params, int level, const std::map<int, int>& rep_exponents);
    CharCoset(int level, const Character& rep);

    const GroupParams& params() const { return params_; }
    int level() const { return level_; }
    const std::map<int, int>& rep_exponents() const { return rep_; }
    int exponent(int j) const;
    Character representative() const { return Character(params_, rep_); }
    std::optional<int> top_index() const;

    bool contains(const Character& chi) const;
    /// this coset contains all of `other`
    bool contains(const CharCoset& other) const;

    std::string str() const;

    friend bool operator==(const CharCoset& a, const CharCoset& b) {
        return a.params_ == b.params_ && a.level_ == b.level_ && a.rep_ == b.rep_;
    }
    friend bool operator<(const CharCoset& a, const CharCoset& b);

private:
    GroupParams params_;
    int level_;
    std::map<int, int> rep_;
};

bool disjoint(const CharCoset& a, const CharCoset& b);

/// Coset image under chi -> chi A^k; level and representative indices shift by k.
CharCoset coset_dilate(const CharCoset& c, int k);

/// The p^(level - atom_level) cosets of G_atom_level^perp partitioning c,
/// ordered lexicographically by the exponent tuple (alpha_{atom_level},
/// ..., alpha_{level-1}) with alpha_{atom_level} varying fastest.
std::vector<CharCoset> coset_atoms(const CharCoset& c, int atom_level);

/// nu(G_n^perp chi) = p^n.
Rational coset_measure(const CharCoset& c);

}  // namespace vilfra

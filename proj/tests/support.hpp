// SPDX-License-Identifier: Apache-2.0
//
// Shared helpers for the test binaries: seeded random objects and a few
// brute-force evaluations that do not go through the library's fast paths.
#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "vilfra/characters.hpp"
#include "vilfra/group.hpp"
#include "vilfra/stepfunc.hpp"

namespace vtest {

using namespace vilfra;

inline GroupElement random_element(std::mt19937_64& rng, GroupParams P, int lo, int hi) {
    std::uniform_int_distribution<int> d(0, P.p() - 1);
    std::map<int, int> m;
    for (int j = lo; j <= hi; ++j) m[j] = d(rng);
    return GroupElement(P, m);
}

inline Character random_character(std::mt19937_64& rng, GroupParams P, int lo, int hi) {
    std::uniform_int_distribution<int> d(0, P.p() - 1);
    std::map<int, int> m;
    for (int j = lo; j <= hi; ++j) m[j] = d(rng);
    return Character(P, m);
}

inline StepFunctionG random_signal(std::mt19937_64& rng, GroupParams P, int support, int resolution) {
    std::normal_distribution<double> nd;
    StepFunctionG f(P, support, resolution);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = {nd(rng), nd(rng)};
    return f;
}

/// exp(2 pi i k / p) from the digit sum, without UnitPhase
inline Complex omega(int p, long k) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(((k % p) + p) % p) / p;
    return {std::cos(a), std::sin(a)};
}

/// sum_j alpha_j x_j computed from the raw maps
inline long digit_pairing(const Character& chi, const GroupElement& x) {
    long s = 0;
    for (auto [j, a] : chi.exponents()) s += static_cast<long>(a) * x.digit(j);
    return s;
}

/// integral of F's square modulus over a coset, by membership of every atom
inline double band_integral_by_membership(const StepFunctionX& F, const CharCoset& c) {
    double acc = 0.0;
    if (c.level() < F.atom_level()) {
        for (std::size_t i = 0; i < F.size(); ++i)
            if (F.atom_coset(i).contains(c)) acc += std::norm(F[i]) * std::pow(double(F.params().p()), c.level());
        return acc;
    }
    for (std::size_t i = 0; i < F.size(); ++i)
        if (c.contains(F.atom_character(i))) acc += std::norm(F[i]) * F.atom_measure();
    return acc;
}

}  // namespace vtest

// SPDX-License-Identifier: Apache-2.0
//
// Step functions on G and on X sampled on finite digit windows, the fast
// Vilenkin-Chrestenson transform between them, and band/weighted integrals.
//
// Window layout is little-endian p-ary: the lowest digit (or exponent) index
// of the window is the least significant position of the flat index.
#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "vilfra/characters.hpp"
#include "vilfra/group.hpp"

namespace vilfra {

using Complex = std::complex<double>;

struct Tolerance {
    double relative = 1e-10;
    double absolute = 1e-12;
};

/// f in D_{G_M'}(G_{-N''}): supported in G_{-N''}, constant on cosets of G_{M'}.
/// Digits j in [-N'', M'-1] address the p^{M'+N''} atoms.
class StepFunctionG {
public:
    StepFunctionG(GroupParams params, int support_level, int resolution_level);
    StepFunctionG(GroupParams params, int support_level, int resolution_level, std::vector<Complex> values);

    static StepFunctionG from_function(GroupParams params, int support_level, int resolution_level,
                                       const std::function<Complex(const GroupElement&)>& fn);

    const GroupParams& params() const { return params_; }
    int support_level() const { return support_level_; }
    int resolution_level() const { return resolution_level_; }
    int width() const { return support_level_ + resolution_level_; }
    std::size_t size() const { return values_.size(); }

    std::span<const Complex> values() const { return values_; }
    std::span<Complex> values() { return values_; }
    Complex& operator[](std::size_t i) { return values_[i]; }
    const Complex& operator[](std::size_t i) const { return values_[i]; }

    /// mu of one atom, p^{-M'}
    double atom_measure() const;
    /// Representative of atom i with digits only inside the window.
    GroupElement atom_element(std::size_t i) const;
    std::optional<std::size_t> index_of(const GroupElement& x) const;
    /// f(x); zero outside the support.
    Complex operator()(const GroupElement& x) const;

private:
    GroupParams params_;
    int support_level_;
    int resolution_level_;
    std::vector<Complex> values_;
};

/// F in D_{G_{-K}^perp}(G_L^perp): supported in G_L^perp, constant on cosets of
/// G_{-K}^perp. Exponents j in [-K, L-1] address the p^{K+L} atoms.
class StepFunctionX {
public:
    StepFunctionX(GroupParams params, int atom_level, int support_level);
    StepFunctionX(GroupParams params, int atom_level, int support_level, std::vector<Complex> values);

    static StepFunctionX from_function(GroupParams params, int atom_level, int support_level,
                                       const std::function<Complex(const Character&)>& fn);
    /// c.level must not be finer than atom_level and c must lie in G_support^perp.
    static StepFunctionX indicator(const CharCoset& c, int atom_level, int support_level);

    const GroupParams& params() const { return params_; }
    int atom_level() const { return atom_level_; }
    int support_level() const { return support_level_; }
    int width() const { return support_level_ - atom_level_; }
    std::size_t size() const { return values_.size(); }

    std::span<const Complex> values() const { return values_; }
    std::span<Complex> values() { return values_; }
    Complex& operator[](std::size_t i) { return values_[i]; }
    const Complex& operator[](std::size_t i) const { return values_[i]; }

    /// nu of one atom, p^{atom_level}
    double atom_measure() const;
    Character atom_character(std::size_t i) const;
    CharCoset atom_coset(std::size_t i) const;
    std::optional<std::size_t> index_of(const Character& chi) const;
    /// F(chi); zero outside the support.
    Complex operator()(const Character& chi) const;

private:
    GroupParams params_;
    int atom_level_;
    int support_level_;
    std::vector<Complex> values_;
};

/// Zero-extend the support and/or replicate values onto a finer resolution.
StepFunctionG embed(const StepFunctionG& f, int support_level, int resolution_level);
/// Zero-extend the support and/or replicate values onto finer atoms.
StepFunctionX embed(const StepFunctionX& F, int atom_level, int support_level);
/// Coarsen to a lower resolution and/or shrink the support; throws
/// ResolutionError when the discarded structure is not constant/zero.
StepFunctionG coarsen(const StepFunctionG& f, int support_level, int resolution_level, double tol = 1e-12);

/// f^(chi) = integral f(x) conj((chi, x)) dmu by p-ary butterfly passes.
StepFunctionX forward_transform(const StepFunctionG& f);
/// f(x) = integral F(chi) (chi, x) dnu.
StepFunctionG inverse_transform(const StepFunctionX& F);

/// In-place tensor DFT over `width` p-ary positions of a flat little-endian
/// array: out[alpha] = sum_a in[a] omega^{sign * <alpha, a>}. Unnormalized.
void dft_positions(std::vector<Complex>& values, int p, int width, int sign);

namespace reference {
/// Dense O(n^2) evaluation of the same sums, for testing.
StepFunctionX forward_transform(const StepFunctionG& f);
StepFunctionG inverse_transform(const StepFunctionX& F);
}  // namespace reference

/// Integral of f * conj(g) on the smallest common window.
Complex inner_product(const StepFunctionG& f, const StepFunctionG& g);
Complex inner_product(const StepFunctionX& F, const StepFunctionX& G);
double l2_norm(const StepFunctionG& f);
double l2_norm(const StepFunctionX& F);
double max_abs_diff(const StepFunctionG& f, const StepFunctionG& g);
double max_abs_diff(const StepFunctionX& F, const StepFunctionX& G);

/// Integral of |F|^2 over the coset c. Cosets finer than F's atoms pick up the
/// atom value times nu(c).
double integrate_band(const StepFunctionX& F, const CharCoset& c);
/// Integral of |F|^2 over the shell G_n^perp \ G_{n-1}^perp.
double shell_integral(const StepFunctionX& F, int n);

/// Shell-constant weight gamma(chi) = gamma_n on G_n^perp \ G_{n-1}^perp, with
/// gamma_n = 1 for n <= 0.
struct WeightSpec {
    enum class Kind { power, log, general };

    Kind kind = Kind::power;
    int m = 1;            // power: gamma_n = p^{n m}
    double epsilon = 1.0;  // log: gamma_n = (n + 1)^{1 + epsilon / 2}
    std::vector<double> gammas;            // general: gamma_1, gamma_2, ...
    std::optional<double> tail_beyond;     // general: certified sum of 1/gamma_n past the list

    static WeightSpec power(int m);
    static WeightSpec log(double epsilon);
    static WeightSpec general(std::vector<double> gammas, std::optional<double> tail_beyond);

    /// Throws WeightError for non-positive, decreasing, or non-summable weights.
    void validate() const;
    double gamma(int n, int p) const;
    /// Upper bound on sum_{k >= from} 1/gamma_k (exact for power weights).
    double reciprocal_tail(int from, int p) const;
};

/// Integral over X of gamma^2(chi A^l) |F(chi)|^2.
double weighted_norm(const StepFunctionX& F, const WeightSpec& w, int dilation_shift);

}  // namespace vilfra

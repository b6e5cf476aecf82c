// SPDX-License-Identifier: Apache-2.0
#include "vilfra/refinable.hpp"

#include <cmath>

#include "vilfra/errors.hpp"

namespace vilfra {

int eval_mask(const MaskArray& mask, const CharCoset& c) {
    if (c.level() != -mask.N())
        throw ResolutionError("mask is defined on cosets of level " + std::to_string(-mask.N()) + ", got " +
                              std::to_string(c.level()));
    return eval_mask(mask, c.representative());
}

int eval_mask(const MaskArray& mask, const Character& chi) {
    std::vector<int> t(static_cast<std::size_t>(mask.N() + 1));
    for (int i = 0; i <= mask.N(); ++i) t[static_cast<std::size_t>(i)] = chi.exponent(i - mask.N());
    return mask.at(t);
}

int phi_hat_product(const MaskArray& mask, const Character& chi, std::optional<int> factors) {
    const int N = mask.N();
    // factor k reads exponents alpha_{k-N}, ..., alpha_k
    const int stable = chi.top_index() ? *chi.top_index() + N + 1 : 0;
    const int count = factors ? *factors : stable;
    std::vector<int> t(static_cast<std::size_t>(N + 1));
    for (int k = 0; k < count; ++k) {
        for (int i = 0; i <= N; ++i) t[static_cast<std::size_t>(i)] = chi.exponent(k - N + i);
        if (!mask.at(t)) return 0;
    }
    return 1;
}

StepFunctionX build_phi_hat(const MaskArray& mask, int H) {
    const int N = mask.N();
    const int M = H - 2 * N + 1;
    if (M < 0) throw ParameterError("H - 2N + 1 must be non-negative");
    // one shell beyond the claimed support, so the vanishing there is checked
    StepFunctionX wide(mask.params(), -N, M + 1);
    for (std::size_t i = 0; i < wide.size(); ++i) {
        const Character chi = wide.atom_character(i);
        wide[i] = phi_hat_product(mask, chi);
        if (wide[i] != Complex{} && !in_annihilator(chi, M))
            throw InvariantError("phi^ does not vanish on " + chi.str() + " outside G_" + std::to_string(M) + "^perp");
    }
    StepFunctionX F(mask.params(), -N, M);
    for (std::size_t i = 0; i < F.size(); ++i) F[i] = wide[i];
    return F;
}

RefinableFunction make_refinable(const MaskArray& mask, int H) {
    StepFunctionX phi_hat = build_phi_hat(mask, H);
    const int M = H - 2 * mask.N() + 1;
    StepFunctionG phi = coarsen(inverse_transform(phi_hat), mask.N(), M);
    return RefinableFunction{mask.params(), mask.N(), H, M, mask, std::move(phi_hat), std::move(phi)};
}

RefinableFunction build_refinable(const NValidTree& t) {
    const auto report = validate(t);
    if (!report.ok()) throw ParameterError("tree is not N-valid: " + report.violations.front());
    return make_refinable(mask_from_tree(t), t.height);
}

double refinement_residual(const MaskArray& mask, const StepFunctionX& phi_hat) {
    double worst = 0.0;
    for (std::size_t i = 0; i < phi_hat.size(); ++i) {
        const Character chi = phi_hat.atom_character(i);
        const Complex rhs = static_cast<double>(eval_mask(mask, chi)) * phi_hat(dilate_char(chi, -1));
        worst = std::max(worst, std::abs(phi_hat[i] - rhs));
    }
    return worst;
}

double refinement_residual(const RefinableFunction& r) { return refinement_residual(r.mask, r.phi_hat); }

std::map<GroupElement, Complex> beta_coeffs(const RefinableFunction& r, std::optional<int> digits) {
    const int D = digits ? *digits : r.N + 1;
    if (D < r.N + 1) throw ParameterError("beta coefficients need at least N+1 digits");
    const int p = r.params.p();
    // atoms of G_1^perp at level 1-D; position d-1 carries alpha_{1-d}, which
    // pairs with h_{-d} after the dilation chi A^{-1}
    std::vector<Complex> v(static_cast<std::size_t>(ipow(p, D)));
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::map<int, int> e;
        std::size_t rest = i;
        for (int d = 1; d <= D; ++d) {
            e[1 - d] = static_cast<int>(rest % static_cast<std::size_t>(p));
            rest /= static_cast<std::size_t>(p);
        }
        v[i] = eval_mask(r.mask, Character(r.params, e));
    }
    dft_positions(v, p, D, +1);
    const double scale = std::pow(static_cast<double>(p), -D);  // p^{-1} * nu(atom)
    std::map<GroupElement, Complex> out;
    for (std::size_t i = 0; i < v.size(); ++i) out.emplace(h0_element(r.params, D, static_cast<std::int64_t>(i)), v[i] * scale);
    return out;
}

Complex mask_from_beta(const std::map<GroupElement, Complex>& beta, const Character& chi) {
    const Character shifted = dilate_char(chi, -1);
    Complex acc = 0.0;
    for (const auto& [h, b] : beta) acc += b * std::conj(pair(shifted, h).value());
    return acc;
}

}  // namespace vilfra

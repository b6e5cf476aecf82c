// SPDX-License-Identifier: Apache-2.0
//
// Step refinable functions generated by a 0/1 mask: phi^ is the infinite
// product of dilated masks, phi its inverse transform.
#pragma once

#include <map>
#include <optional>

#include "vilfra/characters.hpp"
#include "vilfra/stepfunc.hpp"
#include "vilfra/trees.hpp"

namespace vilfra {

/// phi^ lives on atoms of level -N over G_M^perp; phi lives in D_{G_M}(G_{-N}).
struct RefinableFunction {
    GroupParams params;
    int N;
    int H;
    int M;
    MaskArray mask;
    StepFunctionX phi_hat;
    StepFunctionG phi;
};

/// m_0 on a coset of G_{-N}^perp; exponents at index >= 1 are ignored
/// (periodic extension). Other levels throw ResolutionError.
int eval_mask(const MaskArray& mask, const CharCoset& c);
int eval_mask(const MaskArray& mask, const Character& chi);

/// prod_{k=0}^{factors-1} m_0(chi A^{-k}). Without `factors` the product runs
/// until every remaining factor reads the all-zero window.
int phi_hat_product(const MaskArray& mask, const Character& chi, std::optional<int> factors = std::nullopt);

/// phi^ on G_M^perp with M = H - 2N + 1. The product is evaluated on G_{M+1}^perp
/// and throws InvariantError when it does not vanish on the outer shell.
StepFunctionX build_phi_hat(const MaskArray& mask, int H);

RefinableFunction make_refinable(const MaskArray& mask, int H);
/// Validates the tree first; invalid trees throw ParameterError.
RefinableFunction build_refinable(const NValidTree& t);

/// max over atoms of |phi^(chi) - m_0(chi) phi^(chi A^{-1})|
double refinement_residual(const MaskArray& mask, const StepFunctionX& phi_hat);
double refinement_residual(const RefinableFunction& r);

/// beta_h = p^{-1} integral over G_1^perp of m_0(chi) (chi A^{-1}, h), for h in
/// H_0^{(digits)} (default N+1). Keys are ordered by Monna value.
std::map<GroupElement, Complex> beta_coeffs(const RefinableFunction& r, std::optional<int> digits = std::nullopt);

/// m_0(chi) = sum_h beta_h conj((chi A^{-1}, h)).
Complex mask_from_beta(const std::map<GroupElement, Complex>& beta, const Character& chi);

}  // namespace vilfra

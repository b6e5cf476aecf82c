// SPDX-License-Identifier: Apache-2.0
//
// Tight wavelet frames whose generators have coset indicators as Fourier
// transforms: psi^(j) = xi_j 1_{E_j}. Construction by tiling the shell
// G_{M+1}^perp \ G_M^perp with dilated cosets, and the analysis/synthesis
// operators of the resulting system.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "vilfra/characters.hpp"
#include "vilfra/refinable.hpp"
#include "vilfra/stepfunc.hpp"

namespace vilfra {

struct FrameGenerator {
    CharCoset E;  // level -s
    int s = 0;
    int t = 0;
    Complex xi{1.0, 0.0};
};

struct FrameSystem {
    GroupParams params;
    int N;
    int M;
    std::optional<RefinableFunction> refinable;
    std::vector<FrameGenerator> generators;

    int q() const { return static_cast<int>(generators.size()); }
    /// max t(j)
    int l() const;
};

struct FrameReport {
    std::vector<std::string> violations;
    std::vector<CharCoset> uncovered;
    bool ok() const { return violations.empty(); }
};

/// Atoms of level -N inside G_{M+1}^perp on which phi^(chi A^{-1}) = 1.
std::vector<CharCoset> support_set(const RefinableFunction& r);
std::vector<CharCoset> support_set(const StepFunctionX& phi_hat, int N, int M);

/// Deterministic exact cover of the shell by images E A^t, candidates tried in
/// order of (s, exponents of E, t). Throws ConstructionError listing the
/// uncovered atoms when no cover exists.
FrameSystem tiling_search(const RefinableFunction& r);

/// Generator constraints, disjointness of the E_j and of the E_j A^{t(j)},
/// exact cover of the shell, and admissibility against phi^ when present.
FrameReport verify_frame(const FrameSystem& fs);
/// The images E_j A^{t(j)+k} tile G_{M+1+k}^perp \ G_{M+k}^perp.
FrameReport verify_shell(const FrameSystem& fs, int k);

struct Thm32Result {
    std::optional<FrameSystem> system;
    FrameReport report;
};

/// Generators G_{-N+1}^perp r_{-N+1}^{j1} (j1 in J1) and
/// G_{-N}^perp r_{-N}^j r_{-N+1}^{j2} (0 < j < p, j2 in J2), each shifted so its
/// image lands in the shell. The result is validated; failures are reported,
/// not thrown. A bad partition or a vanishing phi^ throws ParameterError.
Thm32Result construct_thm32(const RefinableFunction& r, const std::set<int>& J1, const std::set<int>& J2);

/// psi(x) = xi p^{-s} (chi_rep, x) 1_{G_{-s}}(x).
StepFunctionG psi_closed_form(const FrameGenerator& g);

/// Coefficients of one band E_j A^n. Entry i belongs to the shift h in
/// H_0^{(digits)} whose Monna value is i; every other h gives zero.
struct CoefficientBand {
    int j = 0;
    int n = 0;
    int digits = 0;
    std::vector<Complex> c;
};

struct CoefficientTable {
    GroupParams params{2};
    int support_level = 0;     // of the analyzed signal
    int resolution_level = 0;
    int n_min = 0;             // populated levels, common to all generators
    int n_max = 0;
    double tail = 0.0;         // integral of |f^|^2 over all bands with n < n_min
    std::vector<CoefficientBand> bands;  // ordered by (n, j); zero bands omitted

    const CoefficientBand* find(int j, int n) const;
    Complex at(int j, int n, const GroupElement& h) const;
    double energy() const;
};

struct AnalyzeOptions {
    std::optional<int> n_min;
    std::optional<int> n_max;
};

/// Default level window: above n_max every band misses supp f^; below n_min
/// the remaining mass is at most 2^{-80} of the mass on the smallest atom.
std::pair<int, int> default_levels(const StepFunctionG& f, const FrameSystem& fs);

/// c_{n,h}^(j) = p^{-n/2} conj(xi_j) int_{E_j A^n} f^(chi) (chi A^{-n}, h) dnu by
/// one small transform per band.
CoefficientTable analyze(const StepFunctionG& f, const FrameSystem& fs, const AnalyzeOptions& options = {});
/// Same table from direct inner products <f, p^{n/2} psi^(j)(A^n . - h)>.
CoefficientTable analyze_direct(const StepFunctionG& f, const FrameSystem& fs, const AnalyzeOptions& options = {});

/// sum over bands with n <= n_max of sum_h c psi_{n,h}, built in the Fourier
/// domain. The window is refined as far as needed to represent the partial
/// sum; bands finer than that window lie in fully included shells and enter
/// through their average.
StepFunctionG synthesize_partial(const CoefficientTable& ct, const FrameSystem& fs,
                                 std::optional<int> n_max = std::nullopt);
/// The same sum evaluated pointwise on the same window.
StepFunctionG synthesize_direct(const CoefficientTable& ct, const FrameSystem& fs,
                                std::optional<int> n_max = std::nullopt);

/// |sum |c|^2 + tail - ||f||^2| / ||f||^2, or the absolute difference for f = 0.
double parseval_gap(const StepFunctionG& f, const FrameSystem& fs);
double parseval_gap(const StepFunctionG& f, const CoefficientTable& ct);

/// p^{n/2} psi(A^n x - h)
Complex frame_element(const FrameGenerator& g, int n, const GroupElement& h, const GroupElement& x);

}  // namespace vilfra

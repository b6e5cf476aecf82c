// SPDX-License-Identifier: Apache-2.0
//
// Approximation by partial frame sums: exact residuals and the bounds that
// control them.
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "vilfra/frames.hpp"
#include "vilfra/stepfunc.hpp"

namespace vilfra {

/// R = (sum_j sum_{n > Ntilde} int_{E_j A^n} |f^|^2)^{1/2}
double residual(const StepFunctionG& f, const FrameSystem& fs, int Ntilde);

struct BoundValue {
    double value = 0.0;
    bool hypothesis_met = true;  // false when Ntilde <= N
};

/// p^{M/2} (N+1) sum_{n > Ntilde} (int over shell n - l + M + 1 of |f^|^2)^{1/2}
BoundValue bound_thm41(const StepFunctionG& f, const FrameSystem& fs, int Ntilde);

/// (N+1) p^{M/2} (int gamma^2(chi A^l) |f^|^2)^{1/2} sum_{n > Ntilde} 1/gamma_{n+1}
double bound_weighted(const StepFunctionG& f, const FrameSystem& fs, int Ntilde, const WeightSpec& w);

/// (N+1) / ((p^m - 1) p^{m Ntilde + 2}) (int (1 + ||chi||^{m+l})^2 |f^|^2)^{1/2}, evaluated
/// exactly as written. Reported only; it is not a proven bound.
double bound_43_as_stated(const StepFunctionG& f, const FrameSystem& fs, int Ntilde, int m);

struct RateRow {
    int Ntilde = 0;
    double residual = 0.0;
    double bound_thm41 = 0.0;
    bool thm41_applies = true;
    double bound_weighted = 0.0;
    std::optional<double> bound_43;
    /// smallest applicable bound minus the residual
    double slack = 0.0;
};

struct RateReport {
    std::vector<RateRow> rows;
    WeightSpec weight;
    int l = 0;
    int p = 2;
};

RateReport rate_sweep(const StepFunctionG& f, const FrameSystem& fs, int Ntilde_min, int Ntilde_max, const WeightSpec& w);

std::string to_csv(const RateReport& report);

/// Least-squares slope of log_p R against Ntilde over rows with R > 1e-13;
/// empty with fewer than two such rows.
std::optional<double> fit_slope(const RateReport& report);

/// Signal whose transform equals sqrt(power(n)) on each shell n = 1..top_shell
/// and vanishes elsewhere.
StepFunctionG shell_signal(GroupParams params, int top_shell, const std::function<double(int)>& power);

}  // namespace vilfra

// SPDX-License-Identifier: Apache-2.0
#include "vilfra/approx.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "vilfra/errors.hpp"

namespace vilfra {

namespace {

double pow_p(int p, double n) { return std::pow(static_cast<double>(p), n); }

// sum_{n=a}^{b} r^n for r > 1
double geometric(double r, int a, int b) {
    if (b < a) return 0.0;
    return (std::pow(r, b + 1) - std::pow(r, a)) / (r - 1.0);
}

// |f^|^2 on the atom G_{-K}^perp
double origin_power(const StepFunctionX& F) { return std::norm(F[0]); }

double shell_root_sum(const StepFunctionX& F, int a, int b) {
    // sum_{n'=a}^{b} (int over shell n' of |F|^2)^{1/2}
    const int p = F.params().p();
    const int K = -F.atom_level();
    b = std::min(b, F.support_level());
    if (b < a) return 0.0;
    double acc = 0.0;
    // shells inside the origin atom have integral |F0|^2 (1 - 1/p) p^{n'}
    const int deep_top = std::min(b, -K);
    if (a <= deep_top)
        acc += std::sqrt(origin_power(F) * (1.0 - 1.0 / p)) * geometric(std::sqrt(static_cast<double>(p)), a, deep_top);
    for (int n = std::max(a, -K + 1); n <= b; ++n) acc += std::sqrt(shell_integral(F, n));
    return acc;
}

}  // namespace

double residual(const StepFunctionG& f, const FrameSystem& fs, int Ntilde) {
    if (!(f.params() == fs.params)) throw ParameterError("signal and frame use different primes");
    const StepFunctionX F = forward_transform(f);
    const int p = fs.params.p();
    const int K = f.support_level(), L = f.resolution_level();
    double acc = 0.0;
    for (const auto& g : fs.generators) {
        // shells k <= -K - M - 1 sit inside the origin atom
        const int deep_top = g.t - K - fs.M - 1;
        const int lo = Ntilde + 1;
        if (lo <= deep_top) acc += origin_power(F) * pow_p(p, -g.s) * geometric(p, lo, deep_top);
        for (int n = std::max(lo, deep_top + 1); n <= g.t + L - fs.M - 1; ++n)
            acc += integrate_band(F, coset_dilate(g.E, n));
    }
    return std::sqrt(acc);
}

BoundValue bound_thm41(const StepFunctionG& f, const FrameSystem& fs, int Ntilde) {
    const StepFunctionX F = forward_transform(f);
    const int shift = fs.M + 1 - fs.l();
    const double sum = shell_root_sum(F, Ntilde + 1 + shift, std::numeric_limits<int>::max() / 2);
    return {pow_p(fs.params.p(), fs.M / 2.0) * (fs.N + 1) * sum, Ntilde > fs.N};
}

double bound_weighted(const StepFunctionG& f, const FrameSystem& fs, int Ntilde, const WeightSpec& w) {
    w.validate();
    const StepFunctionX F = forward_transform(f);
    const int p = fs.params.p();
    return (fs.N + 1) * pow_p(p, fs.M / 2.0) * std::sqrt(weighted_norm(F, w, fs.l())) * w.reciprocal_tail(Ntilde + 2, p);
}

double bound_43_as_stated(const StepFunctionG& f, const FrameSystem& fs, int Ntilde, int m) {
    if (m < 1) throw WeightError("power weight needs m >= 1");
    const StepFunctionX F = forward_transform(f);
    const int p = fs.params.p();
    const int K = -F.atom_level();
    const int e = m + fs.l();
    double integral = 0.0;
    // ||chi|| = p^n on shell n; shells below the origin atom's level are summed
    // until their contribution underflows
    for (int n = -K - 1100; n <= -K; ++n) {
        const double w = 1.0 + pow_p(p, static_cast<double>(n) * e);
        integral += w * w * origin_power(F) * (1.0 - 1.0 / p) * pow_p(p, n);
    }
    for (int n = -K + 1; n <= F.support_level(); ++n) {
        const double w = 1.0 + pow_p(p, static_cast<double>(n) * e);
        integral += w * w * shell_integral(F, n);
    }
    const double c = (fs.N + 1) / ((pow_p(p, m) - 1.0) * pow_p(p, static_cast<double>(m) * Ntilde + 2.0));
    return c * std::sqrt(integral);
}

RateReport rate_sweep(const StepFunctionG& f, const FrameSystem& fs, int Ntilde_min, int Ntilde_max, const WeightSpec& w) {
    if (Ntilde_min > Ntilde_max) throw ParameterError("empty range");
    w.validate();
    RateReport rep{{}, w, fs.l(), fs.params.p()};
    for (int Nt = Ntilde_min; Nt <= Ntilde_max; ++Nt) {
        RateRow row;
        row.Ntilde = Nt;
        row.residual = residual(f, fs, Nt);
        const BoundValue b = bound_thm41(f, fs, Nt);
        row.bound_thm41 = b.value;
        row.thm41_applies = b.hypothesis_met;
        row.bound_weighted = bound_weighted(f, fs, Nt, w);
        if (w.kind == WeightSpec::Kind::power) row.bound_43 = bound_43_as_stated(f, fs, Nt, w.m);
        double best = row.bound_weighted;
        if (row.thm41_applies) best = std::min(best, row.bound_thm41);
        row.slack = best - row.residual;
        rep.rows.push_back(row);
    }
    return rep;
}

std::string to_csv(const RateReport& report) {
    std::ostringstream out;
    out << "\xC3\x91,residual,bound_thm41,bound_weighted,bound_43_as_stated,slack\n";
    char buf[64];
    auto num = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    for (const auto& r : report.rows) {
        out << r.Ntilde << ',' << num(r.residual) << ',' << num(r.bound_thm41) << ',' << num(r.bound_weighted) << ','
            << (r.bound_43 ? num(*r.bound_43) : std::string()) << ',' << num(r.slack) << '\n';
    }
    return out.str();
}

std::optional<double> fit_slope(const RateReport& report) {
    std::vector<std::pair<double, double>> pts;
    const double lp = std::log(static_cast<double>(report.p));
    for (const auto& r : report.rows)
        if (r.residual > 1e-13) pts.emplace_back(r.Ntilde, std::log(r.residual) / lp);
    if (pts.size() < 2) return std::nullopt;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double n = static_cast<double>(pts.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

StepFunctionG shell_signal(GroupParams params, int top_shell, const std::function<double(int)>& power) {
    if (top_shell < 1) throw ParameterError("need at least one shell");
    StepFunctionX F(params, 0, top_shell);
    for (std::size_t i = 0; i < F.size(); ++i) {
        const auto top = F.atom_character(i).top_index();
        if (top) F[i] = std::sqrt(power(*top + 1));
    }
    return inverse_transform(F);
}

}  // namespace vilfra

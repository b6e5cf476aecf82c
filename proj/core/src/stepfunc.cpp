// SPDX-License-Identifier: Apache-2.0
#include "vilfra/stepfunc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vilfra/errors.hpp"

namespace vilfra {

namespace {

std::size_t window_size(const GroupParams& params, int width) {
    if (width < 0) throw ResolutionError("window width must be non-negative");
    return static_cast<std::size_t>(ipow(params.p(), width));
}

std::vector<Complex> unit_roots(int p) {
    std::vector<Complex> w(static_cast<std::size_t>(p));
    for (int k = 0; k < p; ++k) w[static_cast<std::size_t>(k)] = UnitPhase{k, p}.value();
    return w;
}

// twiddle[alpha * p + a] = omega^{sign * alpha * a}
std::vector<Complex> twiddles(int p, int sign) {
    const auto P = static_cast<std::size_t>(p);
    std::vector<Complex> w(P * P);
    for (std::size_t alpha = 0; alpha < P; ++alpha)
        for (std::size_t a = 0; a < P; ++a) {
            const long long e = static_cast<long long>(sign) * static_cast<long long>(alpha * a);
            w[alpha * P + a] = UnitPhase{static_cast<int>(((e % p) + p) % p), p}.value();
        }
    return w;
}

// In-place tensor-product DFT over every p-ary position: for each position,
// out[alpha] = sum_a in[a] omega^{sign * alpha * a}. Products are written out
// by hand; std::complex multiplication goes through the slow NaN-recovery path.
void butterfly_passes(std::vector<Complex>& v, int p, int width, int sign) {
    const std::size_t P = static_cast<std::size_t>(p);
    const std::vector<Complex> tw = twiddles(p, sign);
    std::vector<Complex> in(P);
    std::size_t stride = 1;
    for (int pos = 0; pos < width; ++pos) {
        const std::size_t block = stride * P;
        for (std::size_t base = 0; base < v.size(); base += block) {
            for (std::size_t off = 0; off < stride; ++off) {
                const std::size_t start = base + off;
                if (p == 2) {
                    const Complex a = v[start], b = v[start + stride];
                    v[start] = a + b;
                    v[start + stride] = a - b;
                    continue;
                }
                for (std::size_t a = 0; a < P; ++a) in[a] = v[start + a * stride];
                for (std::size_t alpha = 0; alpha < P; ++alpha) {
                    const Complex* row = tw.data() + alpha * P;
                    double re = 0.0, im = 0.0;
                    for (std::size_t a = 0; a < P; ++a) {
                        re += in[a].real() * row[a].real() - in[a].imag() * row[a].imag();
                        im += in[a].real() * row[a].imag() + in[a].imag() * row[a].real();
                    }
                    v[start + alpha * stride] = {re, im};
                }
            }
        }
        stride = block;
    }
}

double pow_p(int p, int n) { return std::pow(static_cast<double>(p), n); }

// Phase index sum_pos digit_i(pos) * digit_j(pos) mod p.
int digit_dot(std::size_t i, std::size_t j, int p, int width) {
    long long acc = 0;
    for (int pos = 0; pos < width; ++pos) {
        acc += static_cast<long long>(i % p) * static_cast<long long>(j % p);
        i /= p;
        j /= p;
    }
    return static_cast<int>(acc % p);
}

}  // namespace

void dft_positions(std::vector<Complex>& values, int p, int width, int sign) {
    if (values.size() != window_size(GroupParams(p), width)) throw ResolutionError("dft length mismatch");
    butterfly_passes(values, p, width, sign);
}

// ---------------------------------------------------------------- StepFunctionG

StepFunctionG::StepFunctionG(GroupParams params, int support_level, int resolution_level)
    : params_(params),
      support_level_(support_level),
      resolution_level_(resolution_level),
      values_(window_size(params, support_level + resolution_level)) {}

StepFunctionG::StepFunctionG(GroupParams params, int support_level, int resolution_level, std::vector<Complex> values)
    : params_(params), support_level_(support_level), resolution_level_(resolution_level), values_(std::move(values)) {
    if (values_.size() != window_size(params, width()))
        throw ResolutionError("value table length does not match the window");
}

StepFunctionG StepFunctionG::from_function(GroupParams params, int support_level, int resolution_level,
                                           const std::function<Complex(const GroupElement&)>& fn) {
    StepFunctionG f(params, support_level, resolution_level);
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = fn(f.atom_element(i));
    return f;
}

double StepFunctionG::atom_measure() const { return pow_p(params_.p(), -resolution_level_); }

GroupElement StepFunctionG::atom_element(std::size_t i) const {
    std::map<int, int> d;
    const auto p = static_cast<std::size_t>(params_.p());
    for (int j = -support_level_; j < resolution_level_; ++j) {
        d[j] = static_cast<int>(i % p);
        i /= p;
    }
    return GroupElement(params_, d);
}

std::optional<std::size_t> StepFunctionG::index_of(const GroupElement& x) const {
    if (!in_subgroup(x, -support_level_)) return std::nullopt;
    std::size_t idx = 0, scale = 1;
    for (int j = -support_level_; j < resolution_level_; ++j) {
        idx += static_cast<std::size_t>(x.digit(j)) * scale;
        scale *= static_cast<std::size_t>(params_.p());
    }
    return idx;
}

Complex StepFunctionG::operator()(const GroupElement& x) const {
    auto i = index_of(x);
    return i ? values_[*i] : Complex{};
}

// ---------------------------------------------------------------- StepFunctionX

StepFunctionX::StepFunctionX(GroupParams params, int atom_level, int support_level)
    : params_(params),
      atom_level_(atom_level),
      support_level_(support_level),
      values_(window_size(params, support_level - atom_level)) {}

StepFunctionX::StepFunctionX(GroupParams params, int atom_level, int support_level, std::vector<Complex> values)
    : params_(params), atom_level_(atom_level), support_level_(support_level), values_(std::move(values)) {
    if (values_.size() != window_size(params, width()))
        throw ResolutionError("value table length does not match the window");
}

StepFunctionX StepFunctionX::from_function(GroupParams params, int atom_level, int support_level,
                                           const std::function<Complex(const Character&)>& fn) {
    StepFunctionX F(params, atom_level, support_level);
    for (std::size_t i = 0; i < F.size(); ++i) F[i] = fn(F.atom_character(i));
    return F;
}

StepFunctionX StepFunctionX::indicator(const CharCoset& c, int atom_level, int support_level) {
    if (c.level() < atom_level) throw ResolutionError("coset finer than the requested atoms");
    StepFunctionX F(c.params(), atom_level, support_level);
    for (std::size_t i = 0; i < F.size(); ++i)
        if (c.contains(F.atom_character(i))) F[i] = 1.0;
    return F;
}

double StepFunctionX::atom_measure() const { return pow_p(params_.p(), atom_level_); }

Character StepFunctionX::atom_character(std::size_t i) const {
    std::map<int, int> e;
    const auto p = static_cast<std::size_t>(params_.p());
    for (int j = atom_level_; j < support_level_; ++j) {
        e[j] = static_cast<int>(i % p);
        i /= p;
    }
    return Character(params_, e);
}

CharCoset StepFunctionX::atom_coset(std::size_t i) const { return CharCoset(atom_level_, atom_character(i)); }

std::optional<std::size_t> StepFunctionX::index_of(const Character& chi) const {
    if (!in_annihilator(chi, support_level_)) return std::nullopt;
    std::size_t idx = 0, scale = 1;
    for (int j = atom_level_; j < support_level_; ++j) {
        idx += static_cast<std::size_t>(chi.exponent(j)) * scale;
        scale *= static_cast<std::size_t>(params_.p());
    }
    return idx;
}

Complex StepFunctionX::operator()(const Character& chi) const {
    auto i = index_of(chi);
    return i ? values_[*i] : Complex{};
}

// ---------------------------------------------------------------- windows

StepFunctionG embed(const StepFunctionG& f, int support_level, int resolution_level) {
    if (support_level < f.support_level() || resolution_level < f.resolution_level())
        throw ResolutionError("embed target window must contain the source window");
    StepFunctionG out(f.params(), support_level, resolution_level);
    const auto low = static_cast<std::size_t>(ipow(f.params().p(), support_level - f.support_level()));
    const std::size_t n = f.size();
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (i % low) continue;
        out[i] = f[(i / low) % n];
    }
    return out;
}

StepFunctionX embed(const StepFunctionX& F, int atom_level, int support_level) {
    if (atom_level > F.atom_level() || support_level < F.support_level())
        throw ResolutionError("embed target window must contain the source window");
    StepFunctionX out(F.params(), atom_level, support_level);
    const auto low = static_cast<std::size_t>(ipow(F.params().p(), F.atom_level() - atom_level));
    const std::size_t n = F.size();
    for (std::size_t i = 0; i < out.size(); ++i) {
        const std::size_t rest = i / low;
        if (rest >= n) continue;
        out[i] = F[rest];
    }
    return out;
}

StepFunctionG coarsen(const StepFunctionG& f, int support_level, int resolution_level, double tol) {
    if (support_level > f.support_level() || resolution_level > f.resolution_level())
        throw ResolutionError("coarsen target must be inside the source window");
    StepFunctionG out(f.params(), support_level, resolution_level);
    std::vector<bool> seen(out.size(), false);
    for (std::size_t i = 0; i < f.size(); ++i) {
        auto j = out.index_of(f.atom_element(i));
        if (!j) {
            if (std::abs(f[i]) > tol) throw ResolutionError("function does not vanish outside the target support");
            continue;
        }
        if (!seen[*j]) {
            out[*j] = f[i];
            seen[*j] = true;
        } else if (std::abs(out[*j] - f[i]) > tol) {
            throw ResolutionError("function is not constant on the target cosets");
        }
    }
    return out;
}

// ---------------------------------------------------------------- transforms

StepFunctionX forward_transform(const StepFunctionG& f) {
    std::vector<Complex> v(f.values().begin(), f.values().end());
    butterfly_passes(v, f.params().p(), f.width(), -1);
    const double mu = f.atom_measure();
    for (auto& x : v) x *= mu;
    return StepFunctionX(f.params(), -f.support_level(), f.resolution_level(), std::move(v));
}

StepFunctionG inverse_transform(const StepFunctionX& F) {
    std::vector<Complex> v(F.values().begin(), F.values().end());
    butterfly_passes(v, F.params().p(), F.width(), +1);
    const double nu = F.atom_measure();
    for (auto& x : v) x *= nu;
    return StepFunctionG(F.params(), -F.atom_level(), F.support_level(), std::move(v));
}

namespace reference {

StepFunctionX forward_transform(const StepFunctionG& f) {
    const int p = f.params().p();
    const auto roots = unit_roots(p);
    StepFunctionX out(f.params(), -f.support_level(), f.resolution_level());
    for (std::size_t alpha = 0; alpha < out.size(); ++alpha) {
        Complex acc = 0.0;
        for (std::size_t a = 0; a < f.size(); ++a)
            acc += f[a] * roots[static_cast<std::size_t>((p - digit_dot(alpha, a, p, f.width())) % p)];
        out[alpha] = acc * f.atom_measure();
    }
    return out;
}

StepFunctionG inverse_transform(const StepFunctionX& F) {
    const int p = F.params().p();
    const auto roots = unit_roots(p);
    StepFunctionG out(F.params(), -F.atom_level(), F.support_level());
    for (std::size_t a = 0; a < out.size(); ++a) {
        Complex acc = 0.0;
        for (std::size_t alpha = 0; alpha < F.size(); ++alpha)
            acc += F[alpha] * roots[static_cast<std::size_t>(digit_dot(alpha, a, p, F.width()))];
        out[a] = acc * F.atom_measure();
    }
    return out;
}

}  // namespace reference

// ---------------------------------------------------------------- integrals

Complex inner_product(const StepFunctionG& f, const StepFunctionG& g) {
    if (!(f.params() == g.params())) throw ParameterError("inner product over different primes");
    const int s = std::max(f.support_level(), g.support_level());
    const int r = std::max(f.resolution_level(), g.resolution_level());
    const StepFunctionG a = embed(f, s, r), b = embed(g, s, r);
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * std::conj(b[i]);
    return acc * a.atom_measure();
}

Complex inner_product(const StepFunctionX& F, const StepFunctionX& G) {
    if (!(F.params() == G.params())) throw ParameterError("inner product over different primes");
    const int lo = std::min(F.atom_level(), G.atom_level());
    const int hi = std::max(F.support_level(), G.support_level());
    const StepFunctionX a = embed(F, lo, hi), b = embed(G, lo, hi);
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * std::conj(b[i]);
    return acc * a.atom_measure();
}

double l2_norm(const StepFunctionG& f) {
    double acc = 0.0;
    for (const auto& v : f.values()) acc += std::norm(v);
    return std::sqrt(acc * f.atom_measure());
}

double l2_norm(const StepFunctionX& F) {
    double acc = 0.0;
    for (const auto& v : F.values()) acc += std::norm(v);
    return std::sqrt(acc * F.atom_measure());
}

double max_abs_diff(const StepFunctionG& f, const StepFunctionG& g) {
    const int s = std::max(f.support_level(), g.support_level());
    const int r = std::max(f.resolution_level(), g.resolution_level());
    const StepFunctionG a = embed(f, s, r), b = embed(g, s, r);
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double max_abs_diff(const StepFunctionX& F, const StepFunctionX& G) {
    const int lo = std::min(F.atom_level(), G.atom_level());
    const int hi = std::max(F.support_level(), G.support_level());
    const StepFunctionX a = embed(F, lo, hi), b = embed(G, lo, hi);
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

double integrate_band(const StepFunctionX& F, const CharCoset& c) {
    if (!(F.params() == c.params())) throw ParameterError("band over a different prime");
    const int p = F.params().p();
    const int L = F.support_level();
    if (c.level() >= L) {
        // c either contains all of G_L^perp or misses it entirely
        if (!c.rep_exponents().empty()) return 0.0;
        double acc = 0.0;
        for (const auto& v : F.values()) acc += std::norm(v);
        return acc * F.atom_measure();
    }
    if (auto top = c.top_index(); top && *top >= L) return 0.0;

    const int atom = F.atom_level();
    std::size_t fixed = 0;
    for (auto [j, a] : c.rep_exponents()) {
        if (j < atom) continue;
        fixed += static_cast<std::size_t>(a) * static_cast<std::size_t>(ipow(p, j - atom));
    }
    if (c.level() < atom) return std::norm(F[fixed]) * pow_p(p, c.level());
    const auto free = static_cast<std::size_t>(ipow(p, c.level() - atom));
    double acc = 0.0;
    for (std::size_t t = 0; t < free; ++t) acc += std::norm(F[fixed + t]);
    return acc * F.atom_measure();
}

double shell_integral(const StepFunctionX& F, int n) {
    double acc = 0.0;
    for (int a = 1; a < F.params().p(); ++a) acc += integrate_band(F, CharCoset(F.params(), n - 1, {{n - 1, a}}));
    return acc;
}

// ---------------------------------------------------------------- weights

WeightSpec WeightSpec::power(int m) {
    WeightSpec w;
    w.kind = Kind::power;
    w.m = m;
    return w;
}

WeightSpec WeightSpec::log(double epsilon) {
    WeightSpec w;
    w.kind = Kind::log;
    w.epsilon = epsilon;
    return w;
}

WeightSpec WeightSpec::general(std::vector<double> gammas, std::optional<double> tail_beyond) {
    WeightSpec w;
    w.kind = Kind::general;
    w.gammas = std::move(gammas);
    w.tail_beyond = tail_beyond;
    return w;
}

void WeightSpec::validate() const {
    switch (kind) {
        case Kind::power:
            if (m < 1) throw WeightError("power weight needs m >= 1; sum of 1/gamma_n diverges otherwise");
            break;
        case Kind::log:
            if (!(epsilon > 0.0)) throw WeightError("logarithmic weight needs epsilon > 0");
            break;
        case Kind::general: {
            double prev = 1.0;
            for (double g : gammas) {
                if (!(g > 0.0)) throw WeightError("weights must be positive");
                if (g < prev) throw WeightError("weights must be nondecreasing");
                prev = g;
            }
            if (!tail_beyond || !std::isfinite(*tail_beyond) || *tail_beyond < 0.0)
                throw WeightError("general weight needs a certified finite tail of sum 1/gamma_n");
            break;
        }
    }
}

double WeightSpec::gamma(int n, int p) const {
    if (n <= 0) return 1.0;
    switch (kind) {
        case Kind::power:
            return pow_p(p, n * m);
        case Kind::log:
            return std::pow(static_cast<double>(n) + 1.0, 1.0 + epsilon / 2.0);
        case Kind::general:
            if (static_cast<std::size_t>(n) > gammas.size())
                throw WeightError("general weight sequence too short for shell " + std::to_string(n));
            return gammas[static_cast<std::size_t>(n) - 1];
    }
    return 1.0;
}

double WeightSpec::reciprocal_tail(int from, int p) const {
    validate();
    const double ones = from <= 0 ? static_cast<double>(1 - from) : 0.0;  // gamma_k = 1 for from <= k <= 0
    const int first = std::max(from, 1);
    switch (kind) {
        case Kind::power: {
            const double r = pow_p(p, -m);
            return ones + std::pow(r, first) / (1.0 - r);
        }
        case Kind::log: {
            // sum_{k >= a} (k+1)^{-1-eps/2} <= integral_{a-1}^inf (x+1)^{-1-eps/2} dx
            //                               = (2/eps) a^{-eps/2}, loosened to (2/eps)(a-1)^{-eps/2} for a >= 2
            if (from >= 2) return 2.0 / (epsilon * std::pow(static_cast<double>(from - 1), epsilon / 2.0));
            return ones + 2.0 / epsilon;
        }
        case Kind::general: {
            double acc = ones;
            for (std::size_t k = static_cast<std::size_t>(first); k <= gammas.size(); ++k) acc += 1.0 / gammas[k - 1];
            return acc + *tail_beyond;
        }
    }
    return 0.0;
}

double weighted_norm(const StepFunctionX& F, const WeightSpec& w, int dilation_shift) {
    if (dilation_shift < 0) throw ParameterError("dilation shift must be non-negative");
    const int p = F.params().p();
    const int L = F.support_level();
    // shells n with n + l <= 0 all carry weight 1: lump them into one coset
    const int flat_top = std::min(-dilation_shift, L);
    double acc = integrate_band(F, CharCoset(F.params(), flat_top));
    for (int n = flat_top + 1; n <= L; ++n) {
        const double g = w.gamma(n + dilation_shift, p);
        acc += g * g * shell_integral(F, n);
    }
    return acc;
}

}  // namespace vilfra

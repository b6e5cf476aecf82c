// SPDX-License-Identifier: Apache-2.0
#include "vilfra/frames.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vilfra/errors.hpp"

namespace vilfra {

namespace {

double pow_p(int p, int n) { return std::pow(static_cast<double>(p), n); }

std::size_t upow(int p, int n) { return static_cast<std::size_t>(ipow(p, n)); }

Complex root(int p, int k) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(((k % p) + p) % p) / p;
    return {std::cos(a), std::sin(a)};
}

std::map<int, int> window_exponents(std::size_t flat, int p, int lo, int hi) {
    std::map<int, int> e;
    for (int j = lo; j <= hi; ++j) {
        e[j] = static_cast<int>(flat % static_cast<std::size_t>(p));
        flat /= static_cast<std::size_t>(p);
    }
    return e;
}

// Flat index in the window [a, .] of the coset's first atom at level a; the
// coset's atoms are base + u for u < p^{level - a}.
std::size_t coset_base(const CharCoset& c, int a) {
    std::size_t base = 0;
    for (auto [j, e] : c.rep_exponents())
        if (j >= a) base += static_cast<std::size_t>(e) * upow(c.params().p(), j - a);
    return base;
}

bool admissible_at(const StepFunctionX& phi_hat, const Character& chi) {
    return std::abs(phi_hat(dilate_char(chi, -1)) - Complex(1.0, 0.0)) < 1e-9;
}

void check_cover(const FrameSystem& fs, int k, FrameReport& rep) {
    const int p = fs.params.p();
    const int a = -fs.N + k, hi = fs.M + k;
    const std::size_t size = upow(p, hi - a + 1);
    const std::size_t shell_start = upow(p, hi - a);
    std::vector<std::uint8_t> count(size, 0);
    for (std::size_t j = 0; j < fs.generators.size(); ++j) {
        const auto& g = fs.generators[j];
        const CharCoset img = coset_dilate(g.E, g.t + k);
        const auto top = img.top_index();
        if (img.level() < a || !top || *top != hi || img.level() > hi) {
            rep.violations.push_back("image of generator " + std::to_string(j) + " is " + img.str() +
                                     ", not inside the shell at level " + std::to_string(hi + 1));
            continue;
        }
        const std::size_t base = coset_base(img, a);
        const std::size_t free = upow(p, img.level() - a);
        for (std::size_t u = 0; u < free; ++u)
            if (count[base + u] < 255) ++count[base + u];
    }
    std::size_t missing = 0, doubled = 0;
    for (std::size_t i = shell_start; i < size; ++i) {
        if (count[i] == 0) {
            if (rep.uncovered.size() < 64) rep.uncovered.emplace_back(fs.params, a,
                                                                      window_exponents(i, p, a, hi));
            ++missing;
        } else if (count[i] > 1) {
            ++doubled;
        }
    }
    if (missing) rep.violations.push_back(std::to_string(missing) + " atoms of the shell are not covered");
    if (doubled) rep.violations.push_back(std::to_string(doubled) + " atoms of the shell are covered more than once");
}

}  // namespace

int FrameSystem::l() const {
    int l = 0;
    for (const auto& g : generators) l = std::max(l, g.t);
    return l;
}

std::vector<CharCoset> support_set(const RefinableFunction& r) { return support_set(r.phi_hat, r.N, r.M); }

std::vector<CharCoset> support_set(const StepFunctionX& phi_hat, int N, int M) {
    const int p = phi_hat.params().p();
    std::vector<CharCoset> out;
    const std::size_t size = upow(p, M + N + 1);
    for (std::size_t i = 0; i < size; ++i) {
        const Character chi(phi_hat.params(), window_exponents(i, p, -N, M));
        if (admissible_at(phi_hat, chi)) out.emplace_back(-N, chi);
    }
    return out;
}

FrameReport verify_frame(const FrameSystem& fs) {
    FrameReport rep;
    for (std::size_t j = 0; j < fs.generators.size(); ++j) {
        const auto& g = fs.generators[j];
        const std::string name = "generator " + std::to_string(j);
        if (g.s < 0 || g.s > fs.N) rep.violations.push_back(name + ": s = " + std::to_string(g.s) + " outside [0, N]");
        if (g.t < 0) rep.violations.push_back(name + ": negative shift");
        if (g.E.level() != -g.s) rep.violations.push_back(name + ": E has level " + std::to_string(g.E.level()) + ", expected -s");
        if (auto top = g.E.top_index(); top && *top > fs.M)
            rep.violations.push_back(name + ": E reaches index " + std::to_string(*top) + " beyond M");
        if (std::abs(std::abs(g.xi) - 1.0) > 1e-12) rep.violations.push_back(name + ": |xi| != 1");
    }
    for (std::size_t i = 0; i < fs.generators.size(); ++i)
        for (std::size_t j = i + 1; j < fs.generators.size(); ++j) {
            const auto& a = fs.generators[i];
            const auto& b = fs.generators[j];
            if (!disjoint(a.E, b.E))
                rep.violations.push_back("E_" + std::to_string(i) + " and E_" + std::to_string(j) + " intersect");
            if (!disjoint(coset_dilate(a.E, a.t), coset_dilate(b.E, b.t)))
                rep.violations.push_back("images of E_" + std::to_string(i) + " and E_" + std::to_string(j) + " intersect");
        }
    check_cover(fs, 0, rep);
    if (fs.refinable) {
        for (std::size_t j = 0; j < fs.generators.size(); ++j) {
            const auto& E = fs.generators[j].E;
            if (E.level() < -fs.N) continue;
            for (const auto& atom : coset_atoms(E, -fs.N)) {
                if (!admissible_at(fs.refinable->phi_hat, atom.representative())) {
                    rep.violations.push_back("E_" + std::to_string(j) + " leaves the region phi^(chi A^-1) = 1 at " +
                                             atom.str());
                    break;
                }
            }
        }
    }
    return rep;
}

FrameReport verify_shell(const FrameSystem& fs, int k) {
    FrameReport rep;
    check_cover(fs, k, rep);
    return rep;
}

// ---------------------------------------------------------------- tiling search

namespace {

struct Candidate {
    int s;
    int t;
    std::vector<int> e;  // exponents of E at indices -s .. M
    std::size_t e_base;  // first level -N atom of E in the window [-N, M]
    std::size_t e_free;
    std::size_t img_base;
    std::size_t img_free;
};

class TilingSearch {
public:
    TilingSearch(const RefinableFunction& r)
        : r_(r), p_(r.params.p()), N_(r.N), M_(r.M), size_(upow(p_, M_ + N_ + 1)), shell_start_(upow(p_, M_ + N_)),
          admissible_(size_), used_(size_, 0), covered_(size_, 0) {
        for (std::size_t i = 0; i < size_; ++i)
            admissible_[i] = admissible_at(r.phi_hat, Character(r.params, window_exponents(i, p_, -N_, M_)));
    }

    FrameSystem run() {
        std::vector<CharCoset> hopeless;
        for (std::size_t x = shell_start_; x < size_; ++x) {
            bool any = false;
            for (const auto& c : candidates(x))
                if (admissible(c)) { any = true; break; }
            if (!any && hopeless.size() < 64) hopeless.emplace_back(r_.params, -N_, window_exponents(x, p_, -N_, M_));
        }
        if (!hopeless.empty()) throw ConstructionError("no admissible coset covers " + describe(hopeless));

        struct Frame {
            std::size_t target;
            std::vector<Candidate> cands;
            std::size_t next = 0;
            bool placed = false;
        };
        std::vector<Frame> stack;
        stack.push_back({shell_start_, candidates(shell_start_)});
        std::size_t budget = 50'000'000;
        std::size_t deepest_target = shell_start_;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.placed) {
                apply(f.cands[f.next - 1], -1);
                f.placed = false;
            }
            bool moved = false;
            while (f.next < f.cands.size()) {
                if (budget-- == 0) throw ConstructionError("tiling search exceeded its node budget");
                const Candidate& c = f.cands[f.next++];
                if (!fits(c)) continue;
                apply(c, +1);
                f.placed = true;
                moved = true;
                break;
            }
            if (!moved) {
                stack.pop_back();
                continue;
            }
            std::size_t nx = f.target;
            while (nx < size_ && covered_[nx]) ++nx;
            if (nx == size_) return assemble(stack);
            deepest_target = std::max(deepest_target, nx);
            stack.push_back({nx, candidates(nx)});
        }
        throw ConstructionError("no exact cover of the shell exists; search stalled at " +
                                describe({CharCoset(r_.params, -N_, window_exponents(deepest_target, p_, -N_, M_))}));
    }

private:
    std::vector<Candidate> candidates(std::size_t x) const {
        std::vector<Candidate> out;
        std::vector<int> alpha(static_cast<std::size_t>(M_ + N_ + 1));
        std::size_t rest = x;
        for (auto& a : alpha) {
            a = static_cast<int>(rest % static_cast<std::size_t>(p_));
            rest /= static_cast<std::size_t>(p_);
        }
        auto at = [&](int j) { return alpha[static_cast<std::size_t>(j + N_)]; };
        for (int s = 0; s <= N_; ++s) {
            std::vector<Candidate> level;
            for (int t = 0; t <= M_ + s; ++t) {
                Candidate c{s, t, {}, 0, upow(p_, N_ - s), 0, upow(p_, t - s + N_)};
                for (int i = -s; i <= M_; ++i) {
                    const int e = i + t <= M_ ? at(i + t) : 0;
                    c.e.push_back(e);
                    c.e_base += static_cast<std::size_t>(e) * upow(p_, i + N_);
                }
                c.img_base = x - x % c.img_free;
                level.push_back(std::move(c));
            }
            std::stable_sort(level.begin(), level.end(),
                             [](const Candidate& a, const Candidate& b) { return a.e < b.e; });
            for (auto& c : level) out.push_back(std::move(c));
        }
        return out;
    }

    bool admissible(const Candidate& c) const {
        for (std::size_t u = 0; u < c.e_free; ++u)
            if (!admissible_[c.e_base + u]) return false;
        return true;
    }

    bool fits(const Candidate& c) const {
        for (std::size_t u = 0; u < c.e_free; ++u)
            if (!admissible_[c.e_base + u] || used_[c.e_base + u]) return false;
        for (std::size_t u = 0; u < c.img_free; ++u)
            if (covered_[c.img_base + u]) return false;
        return true;
    }

    void apply(const Candidate& c, int delta) {
        for (std::size_t u = 0; u < c.e_free; ++u) used_[c.e_base + u] = static_cast<std::uint8_t>(used_[c.e_base + u] + delta);
        for (std::size_t u = 0; u < c.img_free; ++u)
            covered_[c.img_base + u] = static_cast<std::uint8_t>(covered_[c.img_base + u] + delta);
    }

    template <class Stack>
    FrameSystem assemble(const Stack& stack) const {
        FrameSystem fs{r_.params, N_, M_, r_, {}};
        for (const auto& f : stack) {
            const Candidate& c = f.cands[f.next - 1];
            std::map<int, int> rep;
            for (int i = -c.s; i <= M_; ++i)
                if (int e = c.e[static_cast<std::size_t>(i + c.s)]) rep[i] = e;
            fs.generators.push_back({CharCoset(r_.params, -c.s, rep), c.s, c.t, Complex(1.0, 0.0)});
        }
        return fs;
    }

    static std::string describe(const std::vector<CharCoset>& cs) {
        std::string s;
        for (std::size_t i = 0; i < cs.size(); ++i) s += (i ? ", " : "") + cs[i].str();
        return s;
    }

    const RefinableFunction& r_;
    int p_, N_, M_;
    std::size_t size_, shell_start_;
    std::vector<bool> admissible_;
    std::vector<std::uint8_t> used_, covered_;
};

}  // namespace

FrameSystem tiling_search(const RefinableFunction& r) {
    FrameSystem fs = TilingSearch(r).run();
    const FrameReport rep = verify_frame(fs);
    if (!rep.ok()) throw InvariantError("tiling search produced an invalid system: " + rep.violations.front());
    return fs;
}

Thm32Result construct_thm32(const RefinableFunction& r, const std::set<int>& J1, const std::set<int>& J2) {
    const int p = r.params.p();
    const int N = r.N;
    std::set<int> all;
    for (int j : J1) {
        if (j < 1 || j >= p) throw ParameterError("J1 entry " + std::to_string(j) + " outside 1..p-1");
        all.insert(j);
    }
    for (int j : J2) {
        if (j < 1 || j >= p) throw ParameterError("J2 entry " + std::to_string(j) + " outside 1..p-1");
        if (J1.count(j)) throw ParameterError("J1 and J2 share " + std::to_string(j));
        all.insert(j);
    }
    if (static_cast<int>(all.size()) != p - 1) throw ParameterError("J1 and J2 must partition 1..p-1");
    // phi^ must not vanish on G_{-N+2}^perp A^{-1}
    for (const auto& atom : coset_atoms(CharCoset(r.params, -N + 2), -N)) {
        if (std::abs(r.phi_hat(dilate_char(atom.representative(), -1))) < 1e-12)
            throw ParameterError("phi^ vanishes on G_{-N+2}^perp A^-1 at " + atom.str());
    }
    FrameSystem fs{r.params, N, r.M, r, {}};
    const int t = r.M + N - 1;  // both families have their top exponent at -N+1
    for (int j1 : J1) fs.generators.push_back({CharCoset(r.params, -N + 1, {{-N + 1, j1}}), N - 1, t, Complex(1.0, 0.0)});
    for (int j = 1; j < p; ++j)
        for (int j2 : J2) fs.generators.push_back({CharCoset(r.params, -N, {{-N, j}, {-N + 1, j2}}), N, t, Complex(1.0, 0.0)});
    Thm32Result out;
    out.report = verify_frame(fs);
    if (out.report.ok()) out.system = std::move(fs);
    return out;
}

StepFunctionG psi_closed_form(const FrameGenerator& g) {
    const auto top = g.E.top_index();
    const int res = top ? *top + 1 : -g.s;
    const Character rep = g.E.representative();
    const double amp = pow_p(g.E.params().p(), -g.s);
    return StepFunctionG::from_function(g.E.params(), g.s, res, [&](const GroupElement& x) {
        return g.xi * amp * pair(rep, x).value();
    });
}

Complex frame_element(const FrameGenerator& g, int n, const GroupElement& h, const GroupElement& x) {
    const GroupElement y = dilate(x, n) - h;
    if (!in_subgroup(y, -g.s)) return {};
    const int p = g.E.params().p();
    return std::pow(static_cast<double>(p), 0.5 * n) * g.xi * pow_p(p, -g.s) * pair(g.E.representative(), y).value();
}

// ---------------------------------------------------------------- coefficient table

const CoefficientBand* CoefficientTable::find(int j, int n) const {
    for (const auto& b : bands)
        if (b.j == j && b.n == n) return &b;
    return nullptr;
}

Complex CoefficientTable::at(int j, int n, const GroupElement& h) const {
    const CoefficientBand* b = find(j, n);
    if (!b) return {};
    if (!in_subgroup(h, -b->digits)) return {};
    std::int64_t idx = 0;
    for (auto [d, a] : h.digits()) {
        if (d >= 0) return {};
        idx += a * ipow(params.p(), -d - 1);
    }
    return b->c[static_cast<std::size_t>(idx)];
}

double CoefficientTable::energy() const {
    double acc = 0.0;
    for (const auto& b : bands)
        for (const auto& v : b.c) acc += std::norm(v);
    return acc;
}

std::pair<int, int> default_levels(const StepFunctionG& f, const FrameSystem& fs) {
    if (fs.generators.empty()) throw ParameterError("frame system has no generators");
    const int p = f.params().p();
    const int K = f.support_level(), L = f.resolution_level();
    int t_min = fs.generators.front().t, t_max = t_min;
    for (const auto& g : fs.generators) {
        t_min = std::min(t_min, g.t);
        t_max = std::max(t_max, g.t);
    }
    const int extra = static_cast<int>(std::ceil(80.0 * std::log(2.0) / std::log(static_cast<double>(p))));
    const int hi = t_max + L - fs.M - 1;
    const int lo = -K - extra + t_min - fs.M;
    return {std::min(lo, hi), hi};
}

namespace {

struct BandShape {
    CharCoset B;
    int level;
    int digits;   // D
    int free;     // D - s
    std::size_t base;
};

// nullopt when the band misses supp f^ entirely
std::optional<BandShape> band_shape(const FrameGenerator& g, int n, int K, int L) {
    CharCoset B = coset_dilate(g.E, n);
    if (auto top = B.top_index(); top && *top >= L) return std::nullopt;
    if (B.level() >= L && !B.rep_exponents().empty()) return std::nullopt;
    const int D = std::max(K + n, g.s);
    const std::size_t base = coset_base(B, -K);
    const int level = B.level();
    return BandShape{std::move(B), level, D, D - g.s, base};
}

// flat index (window [-K, L-1]) of the atom with free digits u inside the band
std::size_t band_atom(const BandShape& b, std::size_t u, int p, int K) {
    std::size_t idx = b.base;
    for (int q = 0; q < b.free; ++q) {
        idx += static_cast<std::size_t>(u % static_cast<std::size_t>(p)) * upow(p, b.level - 1 - q + K);
        u /= static_cast<std::size_t>(p);
    }
    return idx;
}

// sum_{d=1}^{s} e_{-d} h_{-d}, with h_{-d} the (d-1)-th digit of the fixed part
int fixed_phase(const FrameGenerator& g, std::size_t fixed, int p) {
    int acc = 0;
    for (int d = 1; d <= g.s; ++d) {
        acc += g.E.exponent(-d) * static_cast<int>(fixed % static_cast<std::size_t>(p));
        fixed /= static_cast<std::size_t>(p);
    }
    return acc % p;
}

double band_tail(const StepFunctionX& F, const FrameSystem& fs, int n_min) {
    int k_star = n_min - fs.generators.front().t;
    for (const auto& g : fs.generators) k_star = std::min(k_star, n_min - g.t);
    double tail = integrate_band(F, CharCoset(fs.params, fs.M + k_star));
    for (const auto& g : fs.generators)
        for (int n = g.t + k_star; n < n_min; ++n) tail += integrate_band(F, coset_dilate(g.E, n));
    return tail;
}

template <class BandFn>
CoefficientTable build_table(const StepFunctionG& f, const FrameSystem& fs, const AnalyzeOptions& options, BandFn fn) {
    if (!(f.params() == fs.params)) throw ParameterError("signal and frame use different primes");
    const auto [lo_default, hi_default] = default_levels(f, fs);
    CoefficientTable ct;
    ct.params = fs.params;
    ct.support_level = f.support_level();
    ct.resolution_level = f.resolution_level();
    ct.n_min = options.n_min.value_or(lo_default);
    ct.n_max = options.n_max.value_or(hi_default);
    if (ct.n_min > ct.n_max) throw ParameterError("empty level range");
    const StepFunctionX F = forward_transform(f);
    ct.tail = band_tail(F, fs, ct.n_min);
    const int K = f.support_level(), L = f.resolution_level();
    for (int n = ct.n_min; n <= ct.n_max; ++n) {
        for (std::size_t j = 0; j < fs.generators.size(); ++j) {
            const auto shape = band_shape(fs.generators[j], n, K, L);
            if (!shape) continue;
            CoefficientBand band{static_cast<int>(j), n, shape->digits, {}};
            band.c = fn(F, fs.generators[j], n, *shape);
            ct.bands.push_back(std::move(band));
        }
    }
    return ct;
}

}  // namespace

CoefficientTable analyze(const StepFunctionG& f, const FrameSystem& fs, const AnalyzeOptions& options) {
    const int p = fs.params.p();
    return build_table(f, fs, options, [&](const StepFunctionX& F, const FrameGenerator& g, int n, const BandShape& b) {
        const int K = -F.atom_level();
        std::vector<Complex> A(upow(p, b.free));
        for (std::size_t u = 0; u < A.size(); ++u) A[u] = F[band_atom(b, u, p, K)];
        dft_positions(A, p, b.free, +1);
        const double scale = std::pow(static_cast<double>(p), -0.5 * n) * pow_p(p, n - b.digits);
        const std::size_t fixed_count = upow(p, g.s);
        std::vector<Complex> c(upow(p, b.digits));
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = scale * A[i / fixed_count] * root(p, fixed_phase(g, i % fixed_count, p)) * std::conj(g.xi);
        return c;
    });
}

CoefficientTable analyze_direct(const StepFunctionG& f, const FrameSystem& fs, const AnalyzeOptions& options) {
    return build_table(f, fs, options, [&](const StepFunctionX&, const FrameGenerator& g, int n, const BandShape& b) {
        const auto top = b.B.top_index();
        const int res = std::max(f.resolution_level(), top ? *top + 1 : b.level);
        const StepFunctionG fine = embed(f, f.support_level(), res);
        std::vector<GroupElement> xs;
        xs.reserve(fine.size());
        for (std::size_t i = 0; i < fine.size(); ++i) xs.push_back(fine.atom_element(i));
        const double mu = fine.atom_measure();
        std::vector<Complex> c(upow(fs.params.p(), b.digits));
        for (std::size_t hi = 0; hi < c.size(); ++hi) {
            const GroupElement h = h0_element(fs.params, b.digits, static_cast<std::int64_t>(hi));
            Complex acc = 0.0;
            for (std::size_t i = 0; i < fine.size(); ++i)
                if (fine[i] != Complex{}) acc += fine[i] * std::conj(frame_element(g, n, h, xs[i]));
            c[hi] = acc * mu;
        }
        return c;
    });
}

// ---------------------------------------------------------------- synthesis

namespace {

struct SynthesisWindow {
    int atom_level;  // a <= -K
    std::vector<const CoefficientBand*> bands;
};

SynthesisWindow synthesis_window(const CoefficientTable& ct, const FrameSystem& fs, std::optional<int> n_max) {
    const int K = ct.support_level, L = ct.resolution_level;
    SynthesisWindow w{-K, {}};
    const int top_n = n_max ? std::min(*n_max, ct.n_max) : ct.n_max;
    for (const auto& b : ct.bands)
        if (b.n <= top_n) w.bands.push_back(&b);
    if (w.bands.empty() || !n_max || *n_max >= ct.n_max) return w;
    // shells k <= k_lo are fully included, so G_{M+1+k_lo}^perp is a union of
    // included bands; partially included shells need every band resolved
    int k_lo = top_n - fs.generators.front().t;
    for (const auto& g : fs.generators) k_lo = std::min(k_lo, top_n - g.t);
    w.atom_level = std::min(w.atom_level, fs.M + 1 + k_lo);
    for (const CoefficientBand* b : w.bands) {
        const auto& g = fs.generators[static_cast<std::size_t>(b->j)];
        if (b->n - g.t > k_lo) w.atom_level = std::min(w.atom_level, b->n - g.s);
    }
    if (L - w.atom_level > 0 && std::pow(static_cast<double>(ct.params.p()), L - w.atom_level) > 67108864.0)
        throw ResolutionError("partial sum up to level " + std::to_string(top_n) + " needs a window of p^" +
                              std::to_string(L - w.atom_level) + " atoms");
    return w;
}

}  // namespace

StepFunctionG synthesize_partial(const CoefficientTable& ct, const FrameSystem& fs, std::optional<int> n_max) {
    const int p = ct.params.p();
    const int K = ct.support_level, L = ct.resolution_level;
    const SynthesisWindow w = synthesis_window(ct, fs, n_max);
    StepFunctionX FK(ct.params, -K, L);
    struct Deep {
        CharCoset B;
        Complex v;
    };
    std::vector<Deep> deep;
    for (const CoefficientBand* b : w.bands) {
        const auto& g = fs.generators[static_cast<std::size_t>(b->j)];
        const auto shape = band_shape(g, b->n, K, L);
        if (!shape || shape->digits != b->digits) throw ParameterError("coefficient table does not match the frame");
        const std::size_t fixed_count = upow(p, g.s);
        std::vector<Complex> G(upow(p, shape->free));
        for (std::size_t i = 0; i < b->c.size(); ++i)
            G[i / fixed_count] += b->c[i] * root(p, -fixed_phase(g, i % fixed_count, p));
        dft_positions(G, p, shape->free, -1);
        const Complex scale = std::pow(static_cast<double>(p), -0.5 * b->n) * g.xi;
        if (shape->level >= -K) {
            for (std::size_t u = 0; u < G.size(); ++u) FK[band_atom(*shape, u, p, K)] += scale * G[u];
        } else {
            deep.push_back({shape->B, scale * G[0]});
        }
    }
    const int a = w.atom_level;
    StepFunctionX F = embed(FK, a, L);
    for (const auto& d : deep) {
        const std::size_t base = coset_base(d.B, a);
        if (d.B.level() >= a) {
            const std::size_t free = upow(p, d.B.level() - a);
            for (std::size_t u = 0; u < free; ++u) F[base + u] += d.v;
        } else {
            F[base] += d.v * pow_p(p, d.B.level() - a);
        }
    }
    return inverse_transform(F);
}

StepFunctionG synthesize_direct(const CoefficientTable& ct, const FrameSystem& fs, std::optional<int> n_max) {
    const SynthesisWindow w = synthesis_window(ct, fs, n_max);
    StepFunctionG out(ct.params, -w.atom_level, ct.resolution_level);
    for (std::size_t i = 0; i < out.size(); ++i) {
        const GroupElement x = out.atom_element(i);
        Complex acc = 0.0;
        for (const CoefficientBand* b : w.bands) {
            const auto& g = fs.generators[static_cast<std::size_t>(b->j)];
            for (std::size_t hi = 0; hi < b->c.size(); ++hi) {
                if (b->c[hi] == Complex{}) continue;
                acc += b->c[hi] * frame_element(g, b->n, h0_element(ct.params, b->digits, static_cast<std::int64_t>(hi)), x);
            }
        }
        out[i] = acc;
    }
    return out;
}

double parseval_gap(const StepFunctionG& f, const FrameSystem& fs) { return parseval_gap(f, analyze(f, fs)); }

double parseval_gap(const StepFunctionG& f, const CoefficientTable& ct) {
    const double norm2 = std::pow(l2_norm(f), 2);
    const double gap = std::abs(ct.energy() + ct.tail - norm2);
    return norm2 > 0.0 ? gap / norm2 : gap;
}

}  // namespace vilfra

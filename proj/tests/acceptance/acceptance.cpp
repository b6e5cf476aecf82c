// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "support.hpp"
#include "vilfra/approx.hpp"
#include "vilfra/errors.hpp"
#include "vilfra/frames.hpp"
#include "vilfra/refinable.hpp"
#include "vilfra/trees.hpp"
#include "vilfra_cli/cli.hpp"
#include "vilfra_cli/io.hpp"

using namespace vilfra;

namespace {

struct Outcome {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            if (ok) detail << "first failure: " << what << "; ";
            ok = false;
        }
    }
};

using Criterion = std::function<void(Outcome&)>;

NValidTree star_tree(int p) {
    NValidTree t;
    t.params = GroupParams(p);
    t.N = 1;
    t.height = 1;
    t.nodes = {{0, 0, std::nullopt}};
    for (int a = 1; a < p; ++a) t.nodes.push_back({a, a, 0});
    return t;
}

struct TreeCase {
    int p, N, H;
    std::uint64_t seed;
    bool full = false;
};

const std::vector<TreeCase>& tree_cases() {
    static const std::vector<TreeCase> cases{
        {2, 1, 1, 0}, {3, 1, 1, 0}, {5, 1, 1, 0}, {3, 1, 2, 1},  {5, 1, 3, 2},  {2, 2, 3, 1},
        {2, 2, 4, 3}, {3, 2, 4, 7}, {3, 2, 6, 2}, {5, 2, 4, 5}, {2, 3, 6, 1}, {3, 2, 5, 4, true}};
    return cases;
}

std::vector<RefinableFunction> refinables() {
    std::vector<RefinableFunction> out;
    for (const auto& c : tree_cases())
        out.push_back(build_refinable(generate(GroupParams(c.p), c.N, c.H, {.seed = c.seed, .full_first_level = c.full})));
    return out;
}

struct NamedFrame {
    std::string name;
    FrameSystem fs;
};

std::vector<NamedFrame> frames() {
    std::vector<NamedFrame> out;
    for (int p : {2, 3, 5}) out.push_back({"haar p=" + std::to_string(p), tiling_search(build_refinable(star_tree(p)))});
    out.push_back({"tiling p=2 N=2 H=3", tiling_search(build_refinable(generate(GroupParams(2), 2, 3, {.seed = 1})))});
    out.push_back({"tiling p=3 N=2 H=4", tiling_search(build_refinable(generate(GroupParams(3), 2, 4, {.seed = 7})))});
    out.push_back({"tiling p=5 N=1 H=3", tiling_search(build_refinable(generate(GroupParams(5), 1, 3, {.seed = 2})))});
    const auto r = build_refinable(generate(GroupParams(3), 2, 5, {.seed = 4, .full_first_level = true}));
    auto thm = construct_thm32(r, {1, 2}, {});
    if (thm.system) out.push_back({"explicit p=3 N=2 H=5", *thm.system});
    return out;
}

// products straight from the mask table
int product_oracle(const MaskArray& m, const Character& chi, int factors) {
    int v = 1;
    for (int k = 0; k < factors && v; ++k) {
        std::vector<int> tuple;
        for (int j = k - m.N(); j <= k; ++j) tuple.push_back(chi.exponent(j));
        v *= m.at(tuple);
    }
    return v;
}

double rel_l2(const StepFunctionG& a, const StepFunctionG& ref) {
    const int s = std::max(a.support_level(), ref.support_level());
    const int r = std::max(a.resolution_level(), ref.resolution_level());
    const StepFunctionG ea = embed(a, s, r), eb = embed(ref, s, r);
    double acc = 0.0;
    for (std::size_t i = 0; i < ea.size(); ++i) acc += std::norm(ea[i] - eb[i]);
    const double d = std::sqrt(acc * ea.atom_measure());
    const double n = l2_norm(ref);
    return n > 0 ? d / n : d;
}

// -------------------------------------------------------------------- criteria

void transforms(Outcome& o) {
    std::mt19937_64 rng(1001);
    double fwd = 0.0, inv = 0.0, plan = 0.0, round = 0.0;
    for (int p : {2, 3, 5})
        for (int trial = 0; trial < 100; ++trial) {
            const int s = trial % 3, r = (trial / 3) % 3;
            const StepFunctionG f = vtest::random_signal(rng, GroupParams(p), s, r);
            const StepFunctionX F = forward_transform(f);
            fwd = std::max(fwd, max_abs_diff(F, reference::forward_transform(f)));
            inv = std::max(inv, max_abs_diff(inverse_transform(F), reference::inverse_transform(F)));
            plan = std::max(plan, std::abs(l2_norm(F) - l2_norm(f)) / l2_norm(f));
            round = std::max(round, max_abs_diff(inverse_transform(F), f));
        }
    o.require(fwd <= 1e-12 && inv <= 1e-12, "fast vs dense transform");
    o.require(plan <= 1e-10, "Plancherel");
    o.require(round <= 1e-12, "roundtrip");
    o.detail << "fast-vs-dense " << std::max(fwd, inv) << ", Plancherel " << plan << ", roundtrip " << round;
}

void coset_formulas(Outcome& o) {
    std::mt19937_64 rng(1002);
    double worst = 0.0;
    for (int p : {2, 3, 5}) {
        const GroupParams P(p);
        for (int n = -2; n <= 2; ++n) {
            const double pn = std::pow(double(p), n);
            auto ind_G = [&](const GroupElement& x) { return in_subgroup(x, n) ? 1.0 : 0.0; };
            // integral over G_n of the characters, and over G_n^perp of x
            const StepFunctionX F = forward_transform(StepFunctionG::from_function(P, 2, 2, ind_G));
            worst = std::max(worst, max_abs_diff(F, StepFunctionX::from_function(P, -2, 2, [&](const Character& c) {
                                                     return in_annihilator(c, n) ? 1.0 / pn : 0.0;
                                                 })));
            const StepFunctionG g = inverse_transform(StepFunctionX::indicator(CharCoset(P, n), -2, 2));
            worst = std::max(worst, max_abs_diff(g, StepFunctionG::from_function(P, 2, 2, [&](const GroupElement& x) {
                                                     return pn * ind_G(x);
                                                 })));
            for (int trial = 0; trial < 4; ++trial) {
                const Character chi = vtest::random_character(rng, P, n, 2);
                const StepFunctionG gc = inverse_transform(StepFunctionX::indicator(CharCoset(n, chi), -2, 3));
                worst = std::max(worst, max_abs_diff(gc, StepFunctionG::from_function(P, 2, 3, [&](const GroupElement& x) {
                                                         return pn * ind_G(x) * vtest::omega(p, vtest::digit_pairing(chi, x));
                                                     })));
                const GroupElement h = vtest::random_element(rng, P, -2, n - 1);
                const StepFunctionX Fh = forward_transform(StepFunctionG::from_function(
                    P, 2, 2, [&](const GroupElement& x) { return in_subgroup(x - h, n) ? 1.0 : 0.0; }));
                worst = std::max(worst, max_abs_diff(Fh, StepFunctionX::from_function(P, -2, 2, [&](const Character& c) {
                                                         return in_annihilator(c, n)
                                                                    ? std::conj(vtest::omega(p, vtest::digit_pairing(c, h))) / pn
                                                                    : Complex{};
                                                     })));
            }
        }
    }
    o.require(worst <= 1e-12, "coset indicator transforms");
    o.detail << "max deviation " << worst << " over n in -2..2, p in {2,3,5}";
}

void orthonormality(Outcome& o) {
    std::mt19937_64 rng(1003);
    double worst = 0.0;
    int cosets = 0;
    for (int p : {2, 3, 5})
        for (int nu = 1; nu <= 3; ++nu)
            for (int s = 0; s <= 2; ++s)
                for (int trial = 0; trial < 2; ++trial) {
                    const GroupParams P(p);
                    const CharCoset c(-s, vtest::random_character(rng, P, -s, 3));
                    const auto atoms = coset_atoms(c, -s - nu);
                    const auto hs = enumerate_h0(P, nu);
                    const double w = std::pow(double(p), -nu);  // atom measure times p^s
                    for (const auto& h1 : hs)
                        for (const auto& h2 : hs) {
                            const GroupElement a = dilate(h1, s), b = dilate(h2, s);
                            Complex acc = 0.0;
                            for (const auto& at : atoms) {
                                const Character chi = at.representative();
                                acc += vtest::omega(p, vtest::digit_pairing(chi, a)) *
                                       std::conj(vtest::omega(p, vtest::digit_pairing(chi, b)));
                            }
                            worst = std::max(worst, std::abs(acc * w - (h1 == h2 ? 1.0 : 0.0)));
                        }
                    ++cosets;
                }
    o.require(worst <= 1e-10, "Gram matrix");
    o.detail << cosets << " cosets, max |G - I| " << worst;
}

void tree_pipeline(Outcome& o) {
    int generated = 0;
    for (const auto& c : tree_cases())
        for (std::uint64_t seed : {c.seed, c.seed + 11, c.seed + 97}) {
            const NValidTree t = generate(GroupParams(c.p), c.N, c.H, {.seed = seed, .full_first_level = c.full});
            o.require(validate(t).ok(), "generated tree fails validation");
            ++generated;
        }
    int haar_like = 0, valid = 0;
    for (int k = 1; k <= 4; ++k)
        for (int labels = 0; labels < (1 << (k + 1)); ++labels) {
            NValidTree t;
            t.params = GroupParams(2);
            t.N = 1;
            t.height = 1;
            t.nodes = {{0, labels & 1, std::nullopt}};
            for (int c = 1; c <= k; ++c) t.nodes.push_back({c, (labels >> c) & 1, 0});
            if (validate(t).ok()) {
                ++valid;
                haar_like += k == 1 && t.nodes[0].label == 0 && t.nodes[1].label == 1;
            }
        }
    o.require(valid == 1 && haar_like == 1, "exhaustive enumeration");
    std::mt19937_64 rng(1004);
    int atoms = 0;
    for (const auto& r : refinables()) {
        o.require(r.M == r.H - 2 * r.N + 1, "M");
        for (const auto& a : coset_atoms(CharCoset(r.params, r.M + 1), -r.N)) {
            const Character chi = a.representative();
            const int v = product_oracle(r.mask, chi, r.M + r.N + 2);
            // constant across the coset: perturb exponents below -N
            const Character fine(r.params, [&] {
                auto e = chi.exponents();
                for (int j = -r.N - 3; j < -r.N; ++j) e[j] = static_cast<int>(rng() % r.params.p());
                return e;
            }());
            o.require(product_oracle(r.mask, fine, r.M + r.N + 5) == v, "phi^ not constant on a coset");
            o.require(product_oracle(r.mask, chi, r.H - r.N + 2) == v, "truncated product differs");
            if (!in_annihilator(chi, r.M)) o.require(v == 0, "phi^ nonzero on the outer shell");
            o.require(std::abs(r.phi_hat(chi) - double(v)) == 0.0, "stored phi^ differs from product");
            ++atoms;
        }
    }
    o.detail << generated << " generated trees valid, exhaustive H=1 search: " << valid << " valid tree (Haar), "
             << atoms << " atoms checked";
}

void refinement(Outcome& o) {
    double res = 0.0, outside = 0.0, eq = 0.0, mask = 0.0;
    std::mt19937_64 rng(1005);
    for (const auto& r : refinables()) {
        res = std::max(res, refinement_residual(r));
        for (auto& [h, b] : beta_coeffs(r, r.N + 2))
            if (!in_subgroup(h, -r.N - 1)) outside = std::max(outside, std::abs(b));
        const auto beta = beta_coeffs(r);
        for (const auto& a : coset_atoms(CharCoset(r.params, 1), -r.N))
            mask = std::max(mask, std::abs(mask_from_beta(beta, a.representative()) - double(eval_mask(r.mask, a))));
        for (int trial = 0; trial < 200; ++trial) {
            const GroupElement x = vtest::random_element(rng, r.params, -r.N - 1, r.M + 1);
            Complex rhs = 0.0;
            for (auto& [h, b] : beta) rhs += b * r.phi(dilate(x, 1) - h);
            eq = std::max(eq, std::abs(r.phi(x) - double(r.params.p()) * rhs));
        }
    }
    const RefinableFunction haar = build_refinable(star_tree(2));
    double hb = 0.0;
    for (auto& [h, b] : beta_coeffs(haar))
        hb = std::max(hb, std::abs(b - ((h.is_zero() || h == GroupElement::basis(GroupParams(2), -1)) ? 0.5 : 0.0)));
    o.require(res <= 1e-12, "refinement residual");
    o.require(outside <= 1e-10, "beta support");
    o.require(eq <= 1e-10, "time-domain refinement equation");
    o.require(mask <= 1e-10, "mask reconstruction");
    o.require(hb <= 1e-14, "Haar beta");
    o.detail << "residual " << res << ", beta outside H_0^(N+1) " << outside << ", time-domain " << eq
             << ", mask rebuild " << mask << ", Haar beta dev " << hb;
}

void construction(Outcome& o) {
    for (int p : {2, 3, 5}) {
        const FrameSystem fs = tiling_search(build_refinable(star_tree(p)));
        o.require(fs.q() == p - 1, "q = p - 1");
        for (const auto& g : fs.generators) o.require(g.t == 0 && g.s == 0, "t = 0");
    }
    int systems = 0, atoms = 0;
    for (const auto& [name, fs] : frames()) {
        o.require(verify_frame(fs).ok(), name + ": verify_frame");
        for (std::size_t a = 0; a < fs.generators.size(); ++a)
            for (std::size_t b = a + 1; b < fs.generators.size(); ++b) {
                o.require(disjoint(fs.generators[a].E, fs.generators[b].E), name + ": E overlap");
                o.require(disjoint(coset_dilate(fs.generators[a].E, fs.generators[a].t),
                                   coset_dilate(fs.generators[b].E, fs.generators[b].t)),
                          name + ": image overlap");
            }
        int finest = 0;
        for (const auto& g : fs.generators) {
            finest = std::min(finest, g.t - g.s);
            for (const auto& at : coset_atoms(g.E, std::min(-fs.N, g.E.level())))
                o.require(fs.refinable->phi_hat(dilate_char(at.representative(), -1)) == Complex(1.0),
                          name + ": admissibility");
        }
        for (int k = 0; k <= 2; ++k)
            for (const auto& at : coset_atoms(CharCoset(fs.params, fs.M + 1 + k), finest + k)) {
                const Character chi = at.representative();
                int count = 0;
                for (const auto& g : fs.generators) count += coset_dilate(g.E, g.t + k).contains(chi);
                o.require(count == (in_annihilator(chi, fs.M + k) ? 0 : 1), name + ": shell cover");
                ++atoms;
            }
        ++systems;
    }
    o.detail << "Haar-type q = p-1 at t = 0 for p in {2,3,5}; " << systems << " systems, " << atoms
             << " shell atoms covered exactly once";
}

void parseval(Outcome& o) {
    std::mt19937_64 rng(1007);
    double worst = 0.0;
    int signals = 0;
    for (const auto& [name, fs] : frames())
        for (int trial = 0; trial < 100; ++trial) {
            const StepFunctionG f = vtest::random_signal(rng, fs.params, 1 + trial % 2, trial % 3);
            worst = std::max(worst, parseval_gap(f, fs));
            ++signals;
        }
    const FrameSystem haar = tiling_search(build_refinable(star_tree(2)));
    const StepFunctionG one = StepFunctionG::from_function(GroupParams(2), 0, 1, [](const GroupElement&) { return 1.0; });
    const double g0 = parseval_gap(one, haar);
    o.require(worst <= 1e-9, "random Parseval gap");
    o.require(g0 <= 4 * std::numeric_limits<double>::epsilon(), "Haar indicator gap");
    o.detail << signals << " signals, max gap " << worst << ", Haar 1_{G_0} gap " << g0;
}

void band_identity(Outcome& o) {
    std::mt19937_64 rng(1008);
    double band = 0.0, dual = 0.0;
    int bands = 0;
    for (const auto& [name, fs] : frames())
        for (int trial = 0; trial < 4; ++trial) {
            const StepFunctionG f = vtest::random_signal(rng, fs.params, 1 + trial % 2, trial % 2);
            const StepFunctionX F = forward_transform(f);
            const CoefficientTable ct = analyze(f, fs);
            for (std::size_t j = 0; j < fs.generators.size(); ++j)
                for (int n = ct.n_min; n <= ct.n_max; ++n) {
                    double e = 0.0;
                    if (const auto* b = ct.find(static_cast<int>(j), n))
                        for (auto c : b->c) e += std::norm(c);
                    const double want = vtest::band_integral_by_membership(F, coset_dilate(fs.generators[j].E, n));
                    band = std::max(band, std::abs(e - want));
                    ++bands;
                }
            const CoefficientTable direct = analyze_direct(f, fs, {.n_min = ct.n_max - 3, .n_max = ct.n_max});
            for (const auto& b : direct.bands) {
                const auto* fast = ct.find(b.j, b.n);
                for (std::size_t i = 0; i < b.c.size(); ++i)
                    dual = std::max(dual, std::abs((fast ? fast->c.at(i) : Complex{}) - b.c[i]));
            }
        }
    o.require(band <= 1e-9, "per-band identity");
    o.require(dual <= 1e-9, "dual path");
    o.detail << bands << " bands, max band deviation " << band << ", dual-path " << dual;
}

void shell_sum_bound(Outcome& o) {
    std::mt19937_64 rng(1009);
    double slack = std::numeric_limits<double>::infinity(), live_slack = slack;
    int rows = 0, live = 0;
    for (const auto& [name, fs] : frames())
        for (int trial = 0; trial < 5; ++trial) {
            // enough resolution that bands beyond Ntilde > N still carry energy
            int res = fs.M + fs.l() + fs.N + 2 + trial % 2;
            while (ipow(fs.params.p(), res + trial % 2) > 20000) --res;
            const StepFunctionG f = vtest::random_signal(rng, fs.params, trial % 2, res);
            const auto [lo, hi] = default_levels(f, fs);
            for (int Nt = fs.N + 1; Nt <= std::max(hi, fs.N + 1) + 1; ++Nt) {
                const BoundValue b = bound_thm41(f, fs, Nt);
                o.require(b.hypothesis_met, "hypothesis flag");
                const double R = residual(f, fs, Nt);
                slack = std::min(slack, b.value - R);
                ++rows;
                if (R > 0.0) {
                    ++live;
                    live_slack = std::min(live_slack, (b.value - R) / R);
                }
            }
            // smaller Ntilde as well, where the flag is down
            for (int Nt = std::max(lo, -4); Nt <= fs.N; ++Nt) o.require(!bound_thm41(f, fs, Nt).hypothesis_met, "flag");
        }
    o.require(slack >= -1e-9, "bound below residual");
    o.require(live > rows / 3, "too few rows with a nonzero residual");
    o.detail << rows << " rows with Ntilde > N (" << live << " with nonzero residual), min slack " << slack
             << ", smallest relative margin where R > 0: " << live_slack;
}

void rates(Outcome& o) {
    std::ostringstream slopes;
    auto slope_check = [&](const std::string& name, const FrameSystem& fs, int m) {
        const int p = fs.params.p();
        const StepFunctionG f = shell_signal(fs.params, 8, [&](int n) { return std::pow(double(p), -n * (2.0 * m + 1)); });
        const int start = fs.l() - fs.M;
        const auto s = fit_slope(rate_sweep(f, fs, start, start + 7, WeightSpec::power(m)));
        o.require(s && std::abs(*s + m) <= 0.1 * m, name + " slope");
        slopes << name << " m=" << m << ": " << (s ? *s : 0.0) << "; ";
    };
    const auto fr = frames();
    for (int m : {1, 2}) {
        for (std::size_t i = 0; i < 3; ++i) slope_check(fr[i].name, fr[i].fs, m);
        slope_check(fr[4].name, fr[4].fs, m);
    }
    std::mt19937_64 rng(1010);
    double slack = std::numeric_limits<double>::infinity();
    int rows = 0, below43 = 0, rows43 = 0;
    for (const auto& [name, fs] : fr)
        for (int trial = 0; trial < 3; ++trial) {
            const StepFunctionG f = vtest::random_signal(rng, fs.params, 1 + trial, 1);
            const auto [lo, hi] = default_levels(f, fs);
            for (const WeightSpec& w : {WeightSpec::power(1), WeightSpec::power(2), WeightSpec::log(1.0), WeightSpec::log(2.0)}) {
                for (const auto& row : rate_sweep(f, fs, std::max(lo, -6), hi + 1, w).rows) {
                    slack = std::min(slack, row.bound_weighted - row.residual);
                    ++rows;
                    if (row.bound_43) {
                        ++rows43;
                        below43 += *row.bound_43 < row.residual;
                    }
                }
            }
        }
    o.require(slack >= -1e-9, "weighted bound below residual");
    o.detail << slopes.str() << "weighted bound min slack " << slack << " over " << rows
             << " rows; as-stated power-weight value below the residual in " << below43 << " of " << rows43
             << " rows (reported only)";
}

void cli_end_to_end(Outcome& o) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("vilfra_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    auto path = [&](const std::string& n) { return (dir / n).string(); };
    auto run = [&](std::vector<std::string> args, std::string* out = nullptr) {
        std::ostringstream so, se;
        const int code = cli::dispatch(args, so, se);
        if (out) *out = so.str();
        if (code != 0) {
            std::string joined;
            for (const auto& a : args) joined += a + " ";
            o.require(false, joined + "-> " + std::to_string(code) + " " + se.str());
        }
        return code;
    };
    auto slurp = [](const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        return std::string(std::istreambuf_iterator<char>(in), {});
    };
    double worst = 0.0;
    int pipelines = 0;
    struct Case {
        int p, N, H;
    };
    for (Case c : {Case{2, 1, 1}, Case{3, 2, 4}, Case{5, 1, 2}}) {
        std::mt19937_64 rng(static_cast<std::uint64_t>(c.p * 100 + c.H));
        io::write_json(path("signal.json"), io::to_json(vtest::random_signal(rng, GroupParams(c.p), 2, 1)));
        std::string files[2][4];
        for (int rerun = 0; rerun < 2; ++rerun) {
            const std::string tag = std::to_string(rerun);
            run({"tree", "generate", "--p", std::to_string(c.p), "--N", std::to_string(c.N), "--height",
                 std::to_string(c.H), "--seed", "7", "--out", path("tree" + tag + ".json")});
            run({"frame", "build", "--tree", path("tree" + tag + ".json"), "--out", path("frame" + tag + ".json")});
            run({"analyze", "--frame", path("frame" + tag + ".json"), "--signal", path("signal.json"), "--out",
                 path("coeffs" + tag + ".json")});
            std::string summary;
            run({"synthesize", "--frame", path("frame" + tag + ".json"), "--coeffs", path("coeffs" + tag + ".json"),
                 "--out", path("synth" + tag + ".json")},
                &summary);
            const double e = rel_l2(io::signal_from_json(io::read_json(path("synth" + tag + ".json"))),
                                    io::signal_from_json(io::read_json(path("signal.json"))));
            worst = std::max(worst, e);
            int k = 0;
            for (const char* stem : {"tree", "frame", "coeffs", "synth"}) files[rerun][k++] = slurp(path(stem + tag + ".json"));
        }
        for (int k = 0; k < 4; ++k) o.require(!files[0][k].empty() && files[0][k] == files[1][k], "rerun not byte-identical");
        ++pipelines;
    }
    fs::remove_all(dir);
    o.require(worst <= 1e-9, "roundtrip");
    o.detail << pipelines << " pipelines, max relative roundtrip error " << worst << ", reruns byte-identical";
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, Criterion>> criteria{
        {"transforms", transforms},           {"coset-formulas", coset_formulas},
        {"orthonormality", orthonormality},   {"tree-pipeline", tree_pipeline},
        {"refinement", refinement},           {"frame-construction", construction},
        {"parseval", parseval},               {"band-identity", band_identity},
        {"residual-bound", shell_sum_bound},    {"rates", rates},
        {"cli-end-to-end", cli_end_to_end},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        o.detail.precision(3);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail << "exception: " << e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failures += !o.ok;
        std::printf("%s %2zu %s: %s (%.1fs)\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.str().c_str(), secs);
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}

// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <functional>
#include <map>

#include "vilfra/errors.hpp"
#include "vilfra/trees.hpp"

using namespace vilfra;

namespace {

NValidTree make_tree(int p, int N, int H, std::vector<TreeNode> nodes) {
    NValidTree t;
    t.params = GroupParams(p);
    t.N = N;
    t.height = H;
    t.nodes = std::move(nodes);
    return t;
}

NValidTree haar_tree() { return make_tree(2, 1, 1, {{0, 0, std::nullopt}, {1, 1, 0}}); }

int level_of(const NValidTree& t, int id) {
    int l = 0;
    for (int cur = id;;) {
        const auto& n = *std::find_if(t.nodes.begin(), t.nodes.end(), [&](const TreeNode& x) { return x.id == cur; });
        if (!n.parent) return l;
        cur = *n.parent;
        ++l;
    }
}

const TreeNode& node(const NValidTree& t, int id) {
    return *std::find_if(t.nodes.begin(), t.nodes.end(), [&](const TreeNode& x) { return x.id == id; });
}

// Chains of N labels ending at each node, ancestor first, counted independently.
std::map<std::vector<int>, int> chain_counts(const NValidTree& t) {
    std::map<std::vector<int>, int> c;
    for (const auto& n : t.nodes) {
        std::vector<int> w;
        const TreeNode* cur = &n;
        while (static_cast<int>(w.size()) < t.N) {
            w.insert(w.begin(), cur->label);
            if (!cur->parent) break;
            cur = &node(t, *cur->parent);
        }
        if (static_cast<int>(w.size()) == t.N) ++c[w];
    }
    return c;
}

bool oracle_valid(const NValidTree& t) {
    int height = 0;
    for (const auto& n : t.nodes) {
        const int l = level_of(t, n.id);
        height = std::max(height, l);
        if (l < t.N && n.label != 0) return false;
    }
    if (height != t.height) return false;
    const auto c = chain_counts(t);
    if (static_cast<std::int64_t>(c.size()) != ipow(t.params.p(), t.N)) return false;
    for (auto& [w, k] : c)
        if (k != 1) return false;
    return true;
}

}  // namespace

TEST_CASE("validate examples") {
    CHECK(validate(haar_tree()).ok());

    const auto bad_root = validate(make_tree(2, 1, 0, {{0, 1, std::nullopt}}));
    CHECK_FALSE(bad_root.ok());
    CHECK(std::find(bad_root.violations.begin(), bad_root.violations.end(), "root label nonzero") !=
          bad_root.violations.end());

    const auto twice = validate(make_tree(2, 1, 1, {{0, 0, std::nullopt}, {1, 1, 0}, {2, 1, 0}}));
    CHECK_FALSE(twice.ok());
    REQUIRE(twice.duplicated_words.size() == 1);
    CHECK(twice.duplicated_words[0] == std::vector<int>{1});

    const auto missing = validate(make_tree(3, 1, 1, {{0, 0, std::nullopt}, {1, 1, 0}}));
    REQUIRE(missing.missing_words.size() == 1);
    CHECK(missing.missing_words[0] == std::vector<int>{2});

    CHECK_FALSE(validate(make_tree(2, 1, 2, {{0, 0, std::nullopt}, {1, 1, 0}})).ok());
}

TEST_CASE("structural defects throw") {
    CHECK_THROWS_AS(validate(make_tree(2, 1, 1, {{0, 0, std::nullopt}, {1, 1, std::nullopt}})), StructuralError);
    CHECK_THROWS_AS(validate(make_tree(2, 1, 1, {{0, 0, 1}, {1, 1, 0}})), StructuralError);
    CHECK_THROWS_AS(validate(make_tree(2, 1, 1, {{0, 0, std::nullopt}, {1, 1, 7}})), StructuralError);
    CHECK_THROWS_AS(validate(make_tree(2, 1, 1, {{0, 0, std::nullopt}, {0, 1, 0}})), StructuralError);
    CHECK_THROWS_AS(validate(make_tree(2, 1, 1, {})), StructuralError);
}

TEST_CASE("validate agrees with brute force on all small binary trees") {
    // every labelling of every parent structure on up to 4 nodes, node i's parent < i
    int checked = 0, valid = 0;
    for (int n = 1; n <= 4; ++n) {
        std::vector<int> par(static_cast<std::size_t>(n), -1);
        std::function<void(int)> shapes = [&](int i) {
            if (i == n) {
                for (int labels = 0; labels < (1 << n); ++labels) {
                    std::vector<TreeNode> nodes;
                    for (int k = 0; k < n; ++k)
                        nodes.push_back({k, (labels >> k) & 1,
                                         k == 0 ? std::nullopt : std::optional<int>(par[static_cast<std::size_t>(k)])});
                    for (int N = 1; N <= 2; ++N)
                        for (int H = N; H <= 3; ++H) {
                            const NValidTree t = make_tree(2, N, H, nodes);
                            const bool ok = validate(t).ok();
                            CHECK(ok == oracle_valid(t));
                            ++checked;
                            valid += ok;
                        }
                }
                return;
            }
            for (int q = 0; q < i; ++q) {
                par[static_cast<std::size_t>(i)] = q;
                shapes(i + 1);
            }
        };
        shapes(1);
    }
    CHECK(checked > 100);
    CHECK(valid > 0);
}

TEST_CASE("exhaustive search at p=2, N=1, H=1 finds only the Haar tree") {
    // height 1: a root with k children
    int found = 0;
    for (int k = 1; k <= 3; ++k)
        for (int labels = 0; labels < (1 << (k + 1)); ++labels) {
            std::vector<TreeNode> nodes{{0, labels & 1, std::nullopt}};
            for (int c = 1; c <= k; ++c) nodes.push_back({c, (labels >> c) & 1, 0});
            const NValidTree t = make_tree(2, 1, 1, nodes);
            if (validate(t).ok()) {
                ++found;
                CHECK(k == 1);
                CHECK(nodes[0].label == 0);
                CHECK(nodes[1].label == 1);
            }
        }
    CHECK(found == 1);
    const NValidTree g = generate(GroupParams(2), 1, 1, {.seed = 99});
    CHECK(validate(g).ok());
    REQUIRE(g.nodes.size() == 2);
    CHECK(chain_counts(g) == chain_counts(haar_tree()));
}

TEST_CASE("generated trees are valid and deterministic") {
    struct Case {
        int p, N, H;
    };
    for (Case c : {Case{2, 1, 1}, Case{3, 1, 1}, Case{3, 1, 2}, Case{2, 2, 3}, Case{2, 2, 4},
                   Case{3, 2, 3}, Case{3, 2, 4}, Case{3, 2, 6}, Case{5, 1, 3}, Case{5, 2, 5}, Case{2, 3, 5}}) {
        for (std::uint64_t seed : {0u, 1u, 7u, 12345u}) {
            CAPTURE(c.p);
            CAPTURE(c.N);
            CAPTURE(c.H);
            const NValidTree t = generate(GroupParams(c.p), c.N, c.H, {.seed = seed});
            CHECK(validate(t).ok());
            CHECK(oracle_valid(t));
            const NValidTree u = generate(GroupParams(c.p), c.N, c.H, {.seed = seed});
            CHECK(t.nodes == u.nodes);
        }
    }
}

TEST_CASE("generator reports infeasible parameters") {
    CHECK_THROWS_AS(generate(GroupParams(2), 1, 2, {}), InfeasibleError);
    CHECK_THROWS_AS(generate(GroupParams(2), 2, 2 + 4, {}), InfeasibleError);
    CHECK_THROWS_AS(generate(GroupParams(2), 2, 1, {}), ParameterError);
    CHECK_THROWS_AS(generate(GroupParams(2), 0, 1, {}), ParameterError);
}

TEST_CASE("full first level mode") {
    for (int p : {2, 3, 5}) {
        const NValidTree t = generate(GroupParams(p), 2, 2 + p, {.seed = 3, .full_first_level = true});
        CHECK(validate(t).ok());
        CHECK(has_full_level_N(t));
    }
    CHECK(has_full_level_N(haar_tree()));
    CHECK_FALSE(has_full_level_N(make_tree(3, 1, 2, {{0, 0, std::nullopt}, {1, 1, 0}, {2, 2, 1}})));
}

TEST_CASE("gamma windows: Haar and degenerate trees") {
    CHECK(gamma_windows(haar_tree()) == std::set<std::vector<int>>{{1, 0}});
    CHECK(gamma_windows(make_tree(2, 2, 1, {{0, 0, std::nullopt}, {1, 0, 0}})).empty());
    const MaskArray m = mask_from_tree(haar_tree());
    CHECK(m.at(std::vector<int>{0, 0}) == 1);
    CHECK(m.at(std::vector<int>{1, 0}) == 1);
    CHECK(m.at(std::vector<int>{0, 1}) == 0);
    CHECK(m.at(std::vector<int>{1, 1}) == 0);
}

TEST_CASE("gamma windows for N=1 join each node to the previous level and the root") {
    for (int p : {3, 5})
        for (int H = 1; H < p; ++H) {
            const NValidTree t = generate(GroupParams(p), 1, H, {.seed = 5});
            std::set<std::vector<int>> want;
            for (const auto& v : t.nodes) {
                if (!v.parent) continue;
                const int lv = level_of(t, v.id);
                for (const auto& u : t.nodes)
                    if (level_of(t, u.id) == lv - 1 || !u.parent) want.insert({v.label, u.label});
            }
            CHECK(gamma_windows(t) == want);
        }
}

TEST_CASE("gamma window properties on generated trees") {
    for (int seed = 0; seed < 6; ++seed) {
        const NValidTree t = generate(GroupParams(3), 2, 4, {.seed = static_cast<std::uint64_t>(seed)});
        const auto windows = gamma_windows(t);
        // every chain of N+1 tree vertices is a window
        int chains = 0;
        for (const auto& v : t.nodes) {
            std::vector<int> w;
            const TreeNode* cur = &v;
            while (static_cast<int>(w.size()) <= t.N) {
                w.push_back(cur->label);
                if (!cur->parent) break;
                cur = &node(t, *cur->parent);
            }
            if (static_cast<int>(w.size()) == t.N + 1 && level_of(t, v.id) >= t.N) {
                CHECK(windows.count(w) == 1);
                ++chains;
            }
        }
        CHECK(chains == 8);
        CHECK(windows.size() >= 8);
        for (const auto& w : windows) {
            CHECK(w.size() == 3);
            // the trailing N letters form a tree word
            const std::vector<int> tail(w.begin() + 1, w.end());
            CHECK(chain_counts(t).count({tail.rbegin(), tail.rend()}) == 1);
        }
        const MaskArray m = mask_from_tree(t);
        const bool zero_is_window = windows.count({0, 0, 0}) == 1;
        CHECK(m.count_ones() == windows.size() + (zero_is_window ? 0 : 1));
    }
}

TEST_CASE("mask array indexing") {
    MaskArray m(GroupParams(3), 2);
    CHECK(m.size() == 27);
    const std::vector<int> t{2, 0, 1};
    CHECK(m.index(t) == 2 + 0 * 3 + 1 * 9);
    CHECK(m.tuple(m.index(t)) == t);
    m.set(t, 1);
    CHECK(m.at(t) == 1);
    CHECK(m.count_ones() == 1);
    CHECK_THROWS_AS(m.set(t, 2), ParameterError);
    CHECK_THROWS_AS(m.index(std::vector<int>{0, 0}), ParameterError);
    CHECK_THROWS_AS(m.index(std::vector<int>{0, 3, 0}), ParameterError);
}

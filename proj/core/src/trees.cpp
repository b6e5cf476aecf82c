// SPDX-License-Identifier: Apache-2.0
#include "vilfra/trees.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "vilfra/errors.hpp"

namespace vilfra {

namespace {

// Parent/child/level tables for a structurally sound node list.
struct TreeIndex {
    std::vector<int> parent;  // position of parent, -1 for the root
    std::vector<int> level;
    std::vector<int> label;
    int root = -1;
    int max_level = 0;

    explicit TreeIndex(const NValidTree& t) {
        const std::size_t n = t.nodes.size();
        if (n == 0) throw StructuralError("tree has no nodes");
        std::map<int, int> pos;
        for (std::size_t i = 0; i < n; ++i)
            if (!pos.emplace(t.nodes[i].id, static_cast<int>(i)).second)
                throw StructuralError("duplicate node id " + std::to_string(t.nodes[i].id));
        parent.assign(n, -1);
        label.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            label[i] = t.nodes[i].label;
            if (!t.nodes[i].parent) {
                if (root >= 0) throw StructuralError("multiple roots");
                root = static_cast<int>(i);
                continue;
            }
            auto it = pos.find(*t.nodes[i].parent);
            if (it == pos.end())
                throw StructuralError("node " + std::to_string(t.nodes[i].id) + " has unknown parent");
            parent[i] = it->second;
        }
        if (root < 0) throw StructuralError("no root (parent links form a cycle)");
        level.assign(n, -1);
        level[static_cast<std::size_t>(root)] = 0;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<int> chain;
            int v = static_cast<int>(i);
            while (level[static_cast<std::size_t>(v)] < 0) {
                chain.push_back(v);
                if (chain.size() > n) throw StructuralError("parent links form a cycle");
                v = parent[static_cast<std::size_t>(v)];
                if (v < 0) throw StructuralError("parent links form a cycle");
            }
            int l = level[static_cast<std::size_t>(v)];
            for (auto it = chain.rbegin(); it != chain.rend(); ++it) level[static_cast<std::size_t>(*it)] = ++l;
        }
        max_level = *std::max_element(level.begin(), level.end());
    }

    /// Labels of v and its next len-1 ancestors, deepest first; empty if the
    /// chain runs past the root.
    std::vector<int> word(int v, int len) const {
        std::vector<int> w;
        for (int k = 0; k < len; ++k) {
            if (v < 0) return {};
            w.push_back(label[static_cast<std::size_t>(v)]);
            v = parent[static_cast<std::size_t>(v)];
        }
        return w;
    }
};

std::string word_str(const std::vector<int>& w) {
    std::ostringstream os;
    os << "(";
    for (std::size_t i = 0; i < w.size(); ++i) os << (i ? "," : "") << w[i];
    os << ")";
    return os.str();
}

// Fisher-Yates with raw mt19937_64 draws so orderings do not depend on the
// standard library's distribution implementation.
template <typename T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[static_cast<std::size_t>(rng() % i)]);
}

}  // namespace

ValidationReport validate(const NValidTree& t) {
    const TreeIndex idx(t);
    ValidationReport r;
    const int p = t.params.p();
    const int N = t.N;
    if (N < 1) r.violations.push_back("N must be at least 1");
    if (t.height < N) r.violations.push_back("height must be at least N");
    if (idx.max_level != t.height)
        r.violations.push_back("declared height " + std::to_string(t.height) + " but tree has height " +
                               std::to_string(idx.max_level));
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        const int lab = idx.label[i];
        if (lab < 0 || lab >= p) {
            r.violations.push_back("node " + std::to_string(t.nodes[i].id) + " label out of range");
            continue;
        }
        if (lab != 0 && static_cast<int>(i) == idx.root) r.violations.push_back("root label nonzero");
        else if (lab != 0 && idx.level[i] < N)
            r.violations.push_back("node " + std::to_string(t.nodes[i].id) + " at level " +
                                   std::to_string(idx.level[i]) + " has nonzero label");
    }
    if (!r.ok() || N < 1) return r;

    std::map<std::vector<int>, int> counts;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        if (idx.level[i] < N - 1) continue;
        auto w = idx.word(static_cast<int>(i), N);
        std::reverse(w.begin(), w.end());
        ++counts[w];
    }
    const std::int64_t total = ipow(p, N);
    for (std::int64_t code = 0; code < total; ++code) {
        std::vector<int> w(static_cast<std::size_t>(N));
        std::int64_t rest = code;
        for (int k = N - 1; k >= 0; --k) {
            w[static_cast<std::size_t>(k)] = static_cast<int>(rest % p);
            rest /= p;
        }
        const int c = counts.count(w) ? counts[w] : 0;
        if (c == 0) {
            r.missing_words.push_back(w);
            r.violations.push_back("word " + word_str(w) + " missing");
        } else if (c > 1) {
            r.duplicated_words.push_back(w);
            r.violations.push_back("word " + word_str(w) + " appears " + std::to_string(c) + " times");
        }
    }
    return r;
}

// ---------------------------------------------------------------- generation

namespace {

// States are length-N words stored deepest letter first and encoded as
// sum w_i p^i. A child labeled c of state u is c + p * (u mod p^{N-1}).
class TreeSearch {
public:
    TreeSearch(int p, int N, int depth, const GenerateOptions& opt)
        : p_(p), N_(N), D_(depth), full_(opt.full_first_level), rng_(opt.seed) {
        states_ = static_cast<int>(ipow(p, N));
        low_ = static_cast<int>(ipow(p, N - 1));
        labels_.resize(static_cast<std::size_t>(p - 1));
        for (int c = 1; c < p; ++c) labels_[static_cast<std::size_t>(c - 1)] = c;
        seeded_shuffle(labels_, rng_);
        order_.resize(static_cast<std::size_t>(states_ - 1));
        for (int s = 1; s < states_; ++s) order_[static_cast<std::size_t>(s - 1)] = s;
        seeded_shuffle(order_, rng_);
    }

    bool run() {
        depth_.assign(static_cast<std::size_t>(states_), -1);
        parent_.assign(static_cast<std::size_t>(states_), -1);
        depth_[0] = 0;
        return extend_path(0, 0);
    }

    const std::vector<int>& depth() const { return depth_; }
    const std::vector<int>& parent() const { return parent_; }

private:
    bool first_level_state(int s) const { return s < p_ && s != 0; }

    bool extend_path(int state, int d) {
        if (d == D_) return complete();
        for (int c : all_labels()) {
            const int next = c + p_ * (state % low_);
            if (next == 0 || depth_[static_cast<std::size_t>(next)] >= 0) continue;
            if (full_ && first_level_state(next) != (d == 0)) continue;
            depth_[static_cast<std::size_t>(next)] = d + 1;
            parent_[static_cast<std::size_t>(next)] = state;
            if (extend_path(next, d + 1)) return true;
            depth_[static_cast<std::size_t>(next)] = -1;
            parent_[static_cast<std::size_t>(next)] = -1;
        }
        return false;
    }

    std::vector<int> all_labels() const {
        std::vector<int> v{0};
        v.insert(v.end(), labels_.begin(), labels_.end());
        return v;
    }

    // Attach every remaining state at the smallest depth available; this is
    // optimal once the deepest chain is fixed, so failure rejects the chain.
    bool complete() {
        std::vector<int> saved_depth = depth_, saved_parent = parent_;
        if (full_) {
            for (int c = 1; c < p_; ++c) {
                if (depth_[static_cast<std::size_t>(c)] < 0) {
                    depth_[static_cast<std::size_t>(c)] = 1;
                    parent_[static_cast<std::size_t>(c)] = 0;
                }
            }
        }
        for (int d = 1; d <= D_; ++d) {
            for (int s : order_) {
                if (depth_[static_cast<std::size_t>(s)] >= 0) continue;
                const int tail = s / p_;  // s with its deepest letter dropped
                for (int x = 0; x < p_; ++x) {
                    const int u = tail + low_ * x;
                    if (depth_[static_cast<std::size_t>(u)] == d - 1) {
                        depth_[static_cast<std::size_t>(s)] = d;
                        parent_[static_cast<std::size_t>(s)] = u;
                        break;
                    }
                }
            }
        }
        for (int s = 1; s < states_; ++s) {
            if (depth_[static_cast<std::size_t>(s)] < 0) {
                depth_ = std::move(saved_depth);
                parent_ = std::move(saved_parent);
                return false;
            }
        }
        return true;
    }

    int p_, N_, D_;
    bool full_;
    std::mt19937_64 rng_;
    int states_ = 0, low_ = 1;
    std::vector<int> labels_, order_, depth_, parent_;
};

}  // namespace

NValidTree generate(GroupParams params, int N, int H, const GenerateOptions& options) {
    const int p = params.p();
    if (N < 1) throw ParameterError("N must be at least 1");
    if (H < N) throw ParameterError("height must be at least N");
    const int D = H - N + 1;
    const std::int64_t states = ipow(p, N);
    if (D < N || D > states - 1)
        throw InfeasibleError("no " + std::to_string(N) + "-valid tree of height " + std::to_string(H) +
                              " exists for p = " + std::to_string(p));
    TreeSearch search(p, N, D, options);
    if (!search.run())
        throw InfeasibleError("backtracking exhausted for p = " + std::to_string(p) + ", N = " + std::to_string(N) +
                              ", H = " + std::to_string(H));

    NValidTree t;
    t.params = params;
    t.N = N;
    t.height = H;
    for (int l = 0; l < N; ++l)
        t.nodes.push_back({l, 0, l == 0 ? std::nullopt : std::optional<int>(l - 1)});
    // node ids in (depth, state) order
    std::vector<std::pair<int, int>> by_depth;
    for (int s = 1; s < states; ++s) by_depth.emplace_back(search.depth()[static_cast<std::size_t>(s)], s);
    std::sort(by_depth.begin(), by_depth.end());
    std::vector<int> node_of(static_cast<std::size_t>(states), -1);
    node_of[0] = N - 1;
    int next_id = N;
    for (auto [d, s] : by_depth) {
        const int parent_state = search.parent()[static_cast<std::size_t>(s)];
        node_of[static_cast<std::size_t>(s)] = next_id;
        t.nodes.push_back({next_id, s % p, node_of[static_cast<std::size_t>(parent_state)]});
        ++next_id;
    }
    return t;
}

// ---------------------------------------------------------------- Gamma, masks

std::set<std::vector<int>> gamma_windows(const NValidTree& t) {
    const TreeIndex idx(t);
    const int N = t.N;
    const auto n = static_cast<int>(t.nodes.size());
    // the unique node carrying the all-zero N-word sits at level N-1
    int zero_state = -1;
    for (int i = 0; i < n; ++i)
        if (idx.level[static_cast<std::size_t>(i)] == N - 1) zero_state = i;

    std::set<std::vector<int>> out;
    for (int v = 0; v < n; ++v) {
        const int lv = idx.level[static_cast<std::size_t>(v)];
        if (lv < N) continue;
        const int par = idx.parent[static_cast<std::size_t>(v)];
        const std::vector<int> ancestors = idx.word(par, N - 1);
        std::vector<int> preds{par};
        for (int u = 0; u < n; ++u) {
            if (u == par) continue;
            const int lu = idx.level[static_cast<std::size_t>(u)];
            if (lu < N - 1) continue;
            if (lu != lv - 1 && u != zero_state) continue;
            if (idx.word(u, N - 1) == ancestors) preds.push_back(u);
        }
        for (int u : preds) {
            std::vector<int> w{idx.label[static_cast<std::size_t>(v)]};
            const auto su = idx.word(u, N);
            w.insert(w.end(), su.begin(), su.end());
            out.insert(std::move(w));
        }
    }
    return out;
}

MaskArray::MaskArray(GroupParams params, int N)
    : params_(params), N_(N), entries_(static_cast<std::size_t>(ipow(params.p(), N + 1)), 0) {}

std::size_t MaskArray::index(std::span<const int> tuple) const {
    if (tuple.size() != static_cast<std::size_t>(N_ + 1)) throw ParameterError("mask index needs N+1 entries");
    std::size_t i = 0, scale = 1;
    for (int a : tuple) {
        if (a < 0 || a >= params_.p()) throw ParameterError("mask index entry out of range");
        i += static_cast<std::size_t>(a) * scale;
        scale *= static_cast<std::size_t>(params_.p());
    }
    return i;
}

void MaskArray::set(std::span<const int> tuple, int value) { set_index(index(tuple), value); }

void MaskArray::set_index(std::size_t i, int value) {
    if (value != 0 && value != 1) throw ParameterError("mask entries are 0 or 1");
    entries_.at(i) = static_cast<std::uint8_t>(value);
}

std::vector<int> MaskArray::tuple(std::size_t i) const {
    std::vector<int> t(static_cast<std::size_t>(N_ + 1));
    for (auto& a : t) {
        a = static_cast<int>(i % static_cast<std::size_t>(params_.p()));
        i /= static_cast<std::size_t>(params_.p());
    }
    return t;
}

std::size_t MaskArray::count_ones() const { return static_cast<std::size_t>(std::count(entries_.begin(), entries_.end(), 1)); }

MaskArray mask_from_tree(const NValidTree& t) {
    MaskArray m(t.params, t.N);
    m.set_index(0, 1);
    for (const auto& w : gamma_windows(t)) m.set(w, 1);
    return m;
}

bool has_full_level_N(const NValidTree& t) {
    std::map<int, const TreeNode*> by_id;
    for (const auto& n : t.nodes) by_id[n.id] = &n;
    std::multiset<int> labels;
    for (const auto& n : t.nodes) {
        int level = 0;
        for (const TreeNode* cur = &n; cur->parent; cur = by_id.at(*cur->parent))
            if (++level > t.height) throw StructuralError("cycle through node " + std::to_string(n.id));
        if (level == t.N) labels.insert(n.label);
    }
    std::multiset<int> want;
    for (int a = 1; a < t.params.p(); ++a) want.insert(a);
    return labels == want;
}

}  // namespace vilfra

// SPDX-License-Identifier: Apache-2.0
//
// N-valid trees, the augmented graph Gamma, and the 0/1 mask array they induce.
#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "vilfra/group.hpp"

namespace vilfra {

struct TreeNode {
    int id = 0;
    int label = 0;
    std::optional<int> parent;

    friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

/// Labeled rooted tree; levels are counted from the root at level 0.
struct NValidTree {
    GroupParams params{2};
    int N = 1;
    int height = 1;
    std::vector<TreeNode> nodes;
};

/// Label words are written ancestor -> descendant.
struct ValidationReport {
    std::vector<std::string> violations;
    std::vector<std::vector<int>> missing_words;
    std::vector<std::vector<int>> duplicated_words;

    bool ok() const { return violations.empty(); }
};

/// Checks the zero-label prefix, exactly-once coverage of every length-N word,
/// and the declared height. Structural defects (several roots, cycles,
/// dangling parents, repeated ids) throw StructuralError instead.
ValidationReport validate(const NValidTree& t);

struct GenerateOptions {
    std::uint64_t seed = 0;
    /// Require the N-th level to consist of exactly the labels 1, ..., p-1.
    bool full_first_level = false;
};

/// Backtracking construction of an N-valid tree of exact height H; the seed
/// only permutes branch order. Throws InfeasibleError when none exists.
NValidTree generate(GroupParams params, int N, int H, const GenerateOptions& options = {});

/// The nodes at level N carry exactly the labels 1, ..., p-1, once each.
bool has_full_level_N(const NValidTree& t);

/// Windows (alpha_{-N}, ..., alpha_0) of N+1 consecutive vertices in Gamma,
/// read deepest node first.
std::set<std::vector<int>> gamma_windows(const NValidTree& t);

/// (N+1)-dimensional 0/1 array lambda indexed by (alpha_{-N}, ..., alpha_0).
class MaskArray {
public:
    MaskArray(GroupParams params, int N);

    const GroupParams& params() const { return params_; }
    int N() const { return N_; }
    std::size_t size() const { return entries_.size(); }

    /// tuple[0] = alpha_{-N}, ..., tuple[N] = alpha_0
    std::size_t index(std::span<const int> tuple) const;
    int at(std::span<const int> tuple) const { return entries_[index(tuple)]; }
    int at_index(std::size_t i) const { return entries_[i]; }
    void set(std::span<const int> tuple, int value);
    void set_index(std::size_t i, int value);
    std::vector<int> tuple(std::size_t i) const;
    std::size_t count_ones() const;

private:
    GroupParams params_;
    int N_;
    std::vector<std::uint8_t> entries_;
};

/// lambda = 1 at the all-zero tuple and on every Gamma window, 0 elsewhere.
MaskArray mask_from_tree(const NValidTree& t);

}  // namespace vilfra

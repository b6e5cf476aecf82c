// SPDX-License-Identifier: Apache-2.0
//
// JSON file formats for signals, trees, frames and coefficient tables.
// Complex numbers are [re, im] pairs.
#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "vilfra/frames.hpp"
#include "vilfra/stepfunc.hpp"
#include "vilfra/trees.hpp"

namespace vilfra::io {

using nlohmann::json;

json to_json(const StepFunctionG& f);
StepFunctionG signal_from_json(const json& j);

json to_json(const NValidTree& t);
NValidTree tree_from_json(const json& j);

json to_json(const FrameSystem& fs);
/// The refinable function is not stored in frame files; admissibility can
/// only be rechecked with the tree at hand.
FrameSystem frame_from_json(const json& j);

json to_json(const CoefficientTable& ct);
CoefficientTable table_from_json(const json& j);

json read_json(const std::filesystem::path& path);
/// Two-space indented, trailing newline.
void write_json(const std::filesystem::path& path, const json& j);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace vilfra::io

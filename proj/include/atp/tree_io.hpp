#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "atp/morph.hpp"

namespace atp {

enum class TreeFormat { Json, Dot };

/// Structured serialization: splits, rules, memorized forms and per-node TP
/// statistics. Reloading yields an equal tree.
std::string tree_to_json(const LearnedTree& tree, int indent = 2);
LearnedTree tree_from_json(const std::string& text);

/// Graphviz rendering. Ending sets print bracketed and "|"-separated; the
/// branch for instances lacking a feature is labeled with a leading "¬".
std::string tree_to_dot(const LearnedTree& tree);

/// Throws std::runtime_error when the file cannot be written or read.
void save_tree(const LearnedTree& tree, const std::filesystem::path& path,
               TreeFormat format = TreeFormat::Json);
LearnedTree load_tree(const std::filesystem::path& path);

}  // namespace atp

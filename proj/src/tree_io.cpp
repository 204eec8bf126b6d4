#include "atp/tree_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace atp {
namespace {

using nlohmann::json;

json change_json(const Change& c) {
  return json{{"delete", c.delete_count}, {"suffix", to_utf8(c.suffix)}};
}

Change change_from(const json& j) {
  return Change{j.at("delete").get<std::size_t>(), from_utf8(j.at("suffix").get<std::string>())};
}

json feature_json(const Feature& f) {
  if (f.is_categorical()) return json{{"categorical", f.tag()}};
  json endings = json::array();
  for (const auto& e : f.endings()) endings.push_back(to_utf8(e));
  return json{{"endings", endings}};
}

Feature feature_from(const json& j) {
  if (j.contains("categorical")) return Feature::categorical(j.at("categorical").get<std::string>());
  std::vector<Segments> endings;
  for (const auto& e : j.at("endings")) endings.push_back(from_utf8(e.get<std::string>()));
  return Feature::ending_set(std::move(endings));
}

json node_json(const Node& node) {
  json j;
  const auto& s = node.stats;
  j["stats"] = {{"support", s.support},
                {"top_change", change_json(s.top_change)},
                {"top_count", s.top_count},
                {"exceptions", s.verdict.e},
                {"threshold", s.verdict.threshold},
                {"productive", s.verdict.productive}};
  if (node.split) {
    j["split"] = feature_json(*node.split);
    j["present"] = node_json(node.present());
    j["absent"] = node_json(node.absent());
    return j;
  }
  j["rule"] = node.rule ? change_json(*node.rule) : json(nullptr);
  json memorized = json::array();
  for (const auto& m : node.memorized) {
    memorized.push_back({{"lemma", to_utf8(m.lemma)},
                         {"features", m.features},
                         {"inflection", to_utf8(m.inflection)},
                         {"frequency", m.frequency}});
  }
  j["memorized"] = memorized;
  return j;
}

Node node_from(const json& j) {
  Node node;
  const auto& s = j.at("stats");
  node.stats.support = s.at("support").get<std::size_t>();
  node.stats.top_change = change_from(s.at("top_change"));
  node.stats.top_count = s.at("top_count").get<std::size_t>();
  node.stats.verdict = TpVerdict{node.stats.support, s.at("exceptions").get<std::size_t>(),
                                 s.at("threshold").get<double>(), s.at("productive").get<bool>()};
  if (j.contains("split")) {
    node.split = feature_from(j.at("split"));
    node.children.push_back(node_from(j.at("present")));
    node.children.push_back(node_from(j.at("absent")));
    return node;
  }
  if (!j.at("rule").is_null()) node.rule = change_from(j.at("rule"));
  for (const auto& m : j.at("memorized")) {
    node.memorized.push_back(MemorizedEntry{from_utf8(m.at("lemma").get<std::string>()),
                                            m.at("features").get<FeatureSet>(),
                                            from_utf8(m.at("inflection").get<std::string>()),
                                            m.at("frequency").get<double>()});
  }
  return node;
}

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

void dot_node(const Node& node, std::size_t& next_id, std::ostringstream& out) {
  const std::size_t id = next_id++;
  const auto& s = node.stats;
  std::string label;
  if (!node.is_leaf()) {
    label = "n=" + std::to_string(s.support);
  } else if (node.rule) {
    label = dot_escape(describe(*node.rule)) + "\\nn=" + std::to_string(s.support) +
            " e=" + std::to_string(s.verdict.e);
  } else {
    label = "memorized\\nn=" + std::to_string(s.support);
  }
  out << "  n" << id << " [label=\"" << label << "\""
      << (node.is_leaf() ? ", shape=box" : "") << "];\n";
  if (node.is_leaf()) return;
  const std::string feature = dot_escape(node.split->label());
  const std::size_t present_id = next_id;
  dot_node(node.present(), next_id, out);
  const std::size_t absent_id = next_id;
  dot_node(node.absent(), next_id, out);
  out << "  n" << id << " -> n" << present_id << " [label=\"" << feature << "\"];\n";
  out << "  n" << id << " -> n" << absent_id << " [label=\"¬" << feature << "\"];\n";
}

}  // namespace

std::string tree_to_json(const LearnedTree& tree, int indent) {
  json j;
  j["format"] = "atp-tree";
  j["version"] = 1;
  j["declared_features"] = tree.declared_tags;
  j["training_size"] = tree.training_size;
  json space = json::array();
  for (const auto& f : tree.feature_space) space.push_back(feature_json(f));
  j["feature_space"] = space;
  j["root"] = node_json(tree.root);
  return j.dump(indent);
}

LearnedTree tree_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
    if (j.at("format") != "atp-tree") throw std::runtime_error("not an atp tree file");
    LearnedTree tree;
    tree.declared_tags = j.at("declared_features").get<FeatureSet>();
    tree.training_size = j.at("training_size").get<std::size_t>();
    for (const auto& f : j.at("feature_space")) tree.feature_space.push_back(feature_from(f));
    tree.root = node_from(j.at("root"));
    return tree;
  } catch (const json::exception& e) {
    throw std::runtime_error(std::string("malformed tree file: ") + e.what());
  }
}

std::string tree_to_dot(const LearnedTree& tree) {
  std::ostringstream out;
  out << "digraph atp {\n  node [fontname=\"Helvetica\"];\n";
  std::size_t next_id = 0;
  dot_node(tree.root, next_id, out);
  out << "}\n";
  return out.str();
}

void save_tree(const LearnedTree& tree, const std::filesystem::path& path, TreeFormat format) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << (format == TreeFormat::Json ? tree_to_json(tree) + "\n" : tree_to_dot(tree));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

LearnedTree load_tree(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return tree_from_json(buf.str());
}

}  // namespace atp

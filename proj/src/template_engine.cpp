#include "template_engine.hpp"

#include <memory>
#include <sstream>

#include "error.hpp"

namespace srk {

bool TemplateValue::truthy() const {
  if (is_string()) return !as_string().empty();
  if (is_list()) return !as_list().empty();
  return true;
}

namespace {

struct Node;
using NodeList = std::vector<Node>;

struct Node {
  enum class Kind { text, substitute, loop, branch };
  Kind kind = Kind::text;
  std::string text;        // text payload or variable path
  std::string loop_var;    // loop: bound name
  NodeList body;           // loop body / if-true branch
  NodeList alternative;    // if-false branch
};

struct Parser {
  const std::string& source;
  std::size_t pos = 0;

  bool at_end() const { return pos >= source.size(); }

  // next "{{" or "{%" at or after pos
  std::size_t next_tag() const {
    std::size_t brace = source.find("{{", pos);
    std::size_t block = source.find("{%", pos);
    return std::min(brace, block);
  }

  static std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t");
    std::size_t e = s.find_last_not_of(" \t");
    if (b == std::string_view::npos) return "";
    return std::string(s.substr(b, e - b + 1));
  }

  // Parses until one of the given terminators; returns the terminator hit.
  std::string parse_into(NodeList& nodes, const std::vector<std::string>& terminators) {
    while (!at_end()) {
      std::size_t tag = next_tag();
      if (tag > pos) {
        Node text;
        text.kind = Node::Kind::text;
        text.text = source.substr(pos, std::min(tag, source.size()) - pos);
        nodes.push_back(std::move(text));
        pos = std::min(tag, source.size());
        continue;
      }
      if (source[pos + 1] == '{') {
        std::size_t close = source.find("}}", pos);
        if (close == std::string::npos) throw InvalidError("template: unterminated {{");
        Node sub;
        sub.kind = Node::Kind::substitute;
        sub.text = trim(std::string_view(source).substr(pos + 2, close - pos - 2));
        nodes.push_back(std::move(sub));
        pos = close + 2;
        continue;
      }
      std::size_t close = source.find("%}", pos);
      if (close == std::string::npos) throw InvalidError("template: unterminated {%");
      std::string command = trim(std::string_view(source).substr(pos + 2, close - pos - 2));
      pos = close + 2;
      if (pos < source.size() && source[pos] == '\n') ++pos;  // trim the tag's newline

      for (const auto& term : terminators)
        if (command == term) return command;

      if (command.rfind("for ", 0) == 0) {
        std::istringstream words(command.substr(4));
        std::string var, in, path;
        words >> var >> in >> path;
        if (in != "in" || var.empty() || path.empty())
          throw InvalidError("template: malformed loop '" + command + "'");
        Node loop;
        loop.kind = Node::Kind::loop;
        loop.loop_var = var;
        loop.text = path;
        parse_into(loop.body, {"endfor"});
        nodes.push_back(std::move(loop));
        continue;
      }
      if (command.rfind("if ", 0) == 0) {
        Node branch;
        branch.kind = Node::Kind::branch;
        branch.text = trim(command.substr(3));
        std::string hit = parse_into(branch.body, {"else", "endif"});
        if (hit == "else") parse_into(branch.alternative, {"endif"});
        nodes.push_back(std::move(branch));
        continue;
      }
      throw InvalidError("template: unknown command '" + command + "'");
    }
    if (!terminators.empty())
      throw InvalidError("template: missing closing tag for '" + terminators.back() + "'");
    return "";
  }
};

struct Scope {
  const Scope* parent = nullptr;
  std::string name;
  const TemplateValue* value = nullptr;
};

const TemplateValue* find_root(const Scope* scope, const std::string& name,
                               const TemplateValue& root) {
  for (const Scope* s = scope; s != nullptr; s = s->parent)
    if (s->name == name) return s->value;
  if (root.is_map()) {
    auto it = root.as_map().find(name);
    if (it != root.as_map().end()) return &it->second;
  }
  return nullptr;
}

const TemplateValue& lookup(const std::string& path, const Scope* scope,
                            const TemplateValue& root) {
  std::size_t dot = path.find('.');
  const std::string head = path.substr(0, dot);
  const TemplateValue* value = find_root(scope, head, root);
  if (value == nullptr) throw InvalidError("template: unknown variable '" + path + "'");
  while (dot != std::string::npos) {
    std::size_t next = path.find('.', dot + 1);
    const std::string key = path.substr(dot + 1, next == std::string::npos ? next : next - dot - 1);
    if (!value->is_map()) throw InvalidError("template: '" + path + "' indexes a non-map");
    auto it = value->as_map().find(key);
    if (it == value->as_map().end())
      throw InvalidError("template: unknown variable '" + path + "'");
    value = &it->second;
    dot = next;
  }
  return *value;
}

void render_nodes(const NodeList& nodes, const Scope* scope, const TemplateValue& root,
                  std::string& out) {
  for (const Node& node : nodes) {
    switch (node.kind) {
      case Node::Kind::text:
        out += node.text;
        break;
      case Node::Kind::substitute: {
        const TemplateValue& value = lookup(node.text, scope, root);
        if (!value.is_string())
          throw InvalidError("template: '" + node.text + "' is not a string");
        out += value.as_string();
        break;
      }
      case Node::Kind::branch: {
        const TemplateValue& value = lookup(node.text, scope, root);
        render_nodes(value.truthy() ? node.body : node.alternative, scope, root, out);
        break;
      }
      case Node::Kind::loop: {
        const TemplateValue& value = lookup(node.text, scope, root);
        if (!value.is_list())
          throw InvalidError("template: '" + node.text + "' is not a list");
        const auto& items = value.as_list();
        for (std::size_t i = 0; i < items.size(); ++i) {
          TemplateValue loop_info(TemplateValue::Map{
              {"first", TemplateValue::boolean(i == 0)},
              {"last", TemplateValue::boolean(i + 1 == items.size())},
              {"index", TemplateValue(std::to_string(i + 1))}});
          Scope loop_scope{scope, "loop", &loop_info};
          Scope item_scope{&loop_scope, node.loop_var, &items[i]};
          render_nodes(node.body, &item_scope, root, out);
        }
        break;
      }
    }
  }
}

}  // namespace

std::string render_template(const std::string& source, const TemplateValue& root) {
  Parser parser{source};
  NodeList nodes;
  parser.parse_into(nodes, {});
  std::string out;
  render_nodes(nodes, nullptr, root, out);
  return out;
}

}  // namespace srk

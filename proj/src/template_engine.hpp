#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace srk {

// Tree of strings, lists and maps fed to render_template.
class TemplateValue {
 public:
  using List = std::vector<TemplateValue>;
  using Map = std::map<std::string, TemplateValue>;

  TemplateValue() : data_(std::string()) {}
  TemplateValue(std::string s) : data_(std::move(s)) {}
  TemplateValue(const char* s) : data_(std::string(s)) {}
  TemplateValue(List items) : data_(std::move(items)) {}
  TemplateValue(Map fields) : data_(std::move(fields)) {}
  static TemplateValue boolean(bool b) { return TemplateValue(b ? "1" : ""); }

  bool is_string() const { return std::holds_alternative<std::string>(data_); }
  bool is_list() const { return std::holds_alternative<List>(data_); }
  bool is_map() const { return std::holds_alternative<Map>(data_); }
  const std::string& as_string() const { return std::get<std::string>(data_); }
  const List& as_list() const { return std::get<List>(data_); }
  const Map& as_map() const { return std::get<Map>(data_); }

  // Empty strings and empty lists are false; everything else is true.
  bool truthy() const;

 private:
  std::variant<std::string, List, Map> data_;
};

// Minimal text-template language: {{ dotted.path }} substitution,
// {% for x in path %} ... {% endfor %} loops (binding x plus loop.first,
// loop.last, loop.index), and {% if path %} ... {% else %} ... {% endif %}.
// A newline directly after a {% ... %} tag is swallowed so block tags can
// sit on their own lines.
std::string render_template(const std::string& source, const TemplateValue& root);

}  // namespace srk

#include "doctest.h"
#include "error.hpp"
#include "template_engine.hpp"

using namespace srk;
using List = TemplateValue::List;
using Map = TemplateValue::Map;

TEST_CASE("substitution and dotted paths") {
  TemplateValue root(Map{{"name", TemplateValue("f")},
                         {"inner", TemplateValue(Map{{"x", TemplateValue("42")}})}});
  CHECK(render_template("double {{ name }}() { return {{ inner.x }}; }", root) ==
        "double f() { return 42; }");
  CHECK_THROWS_AS(render_template("{{ missing }}", root), InvalidError);
  CHECK_THROWS_AS(render_template("{{ inner.missing }}", root), InvalidError);
}

TEST_CASE("loops bind the item and loop metadata") {
  TemplateValue root(Map{{"items", TemplateValue(List{TemplateValue("a"), TemplateValue("b"),
                                                      TemplateValue("c")})}});
  CHECK(render_template("{% for x in items %}{{ x }}{% endfor %}", root) == "abc");
  CHECK(render_template(
            "{% for x in items %}{% if loop.first %}[{% endif %}{{ x }}"
            "{% if loop.last %}]{% else %}, {% endif %}{% endfor %}",
            root) == "[a, b, c]");
  CHECK(render_template("{% for x in items %}{{ loop.index }}{% endfor %}", root) == "123");
}

TEST_CASE("branches") {
  TemplateValue root(Map{{"yes", TemplateValue("1")},
                         {"no", TemplateValue("")},
                         {"empty_list", TemplateValue(List{})}});
  CHECK(render_template("{% if yes %}A{% else %}B{% endif %}", root) == "A");
  CHECK(render_template("{% if no %}A{% else %}B{% endif %}", root) == "B");
  CHECK(render_template("{% if empty_list %}A{% endif %}", root).empty());
}

TEST_CASE("newline after a block tag is swallowed") {
  TemplateValue root(Map{{"items", TemplateValue(List{TemplateValue("x"), TemplateValue("y")})}});
  CHECK(render_template("{% for i in items %}\nline {{ i }}\n{% endfor %}\ndone", root) ==
        "line x\nline y\ndone");
}

TEST_CASE("malformed templates are rejected") {
  TemplateValue root{Map{}};
  CHECK_THROWS_AS(render_template("{{ open", root), InvalidError);
  CHECK_THROWS_AS(render_template("{% for x items %}{% endfor %}", root), InvalidError);
  CHECK_THROWS_AS(render_template("{% if x %}no end", root), InvalidError);
  CHECK_THROWS_AS(render_template("{% bogus %}", root), InvalidError);
}

TEST_CASE("nested scopes shadow outer names") {
  TemplateValue root(Map{
      {"x", TemplateValue("outer")},
      {"rows", TemplateValue(List{TemplateValue(Map{{"cols", TemplateValue(List{TemplateValue("1")})}})})}});
  CHECK(render_template("{% for x in rows %}{% for c in x.cols %}{{ c }}{% endfor %}{% endfor %}{{ x }}",
                        root) == "1outer");
}

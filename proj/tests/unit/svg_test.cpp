#include <regex>
#include <vector>

#include "beamlabel/optimizer.hpp"
#include "beamlabel/proximity.hpp"
#include "beamlabel/svg.hpp"
#include "beamlabel/synthetic.hpp"
#include "doctest.h"

using namespace beamlabel;

namespace {

// Tags open and close in order; comments, declarations and self-closing tags are skipped.
bool balanced(const std::string& doc) {
  std::vector<std::string> stack;
  const std::regex tag(R"(<(/?)([A-Za-z][\w:-]*)([^>]*?)(/?)>)");
  for (auto it = std::sregex_iterator(doc.begin(), doc.end(), tag); it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    if (m[4].length()) continue;
    if (m[1].length()) {
      if (stack.empty() || stack.back() != m[2].str()) return false;
      stack.pop_back();
    } else {
      stack.push_back(m[2].str());
    }
  }
  return stack.empty();
}

}  // namespace

TEST_CASE("escaping covers the xml specials") {
  CHECK(xml_escape("a<b>&\"c'") == "a&lt;b&gt;&amp;&quot;c&apos;");
}

TEST_CASE("rendered documents are well formed") {
  Scene s = generate_synthetic(25, 4, Rect(0, 0, 250, 150), {Density::Clustered, Script::Cjk});
  s.features[0].text = "A<&>B";
  const auto init = initial_layout(s.features, s.config);
  const ProximityGraph g = build_dt(init);
  SvgOptions opts;
  opts.graph = &g;
  const std::string doc = render_svg(init, s.features, s.config.screen, opts);
  CHECK(doc.rfind("<?xml", 0) == 0);
  CHECK(doc.find("<svg") != std::string::npos);
  CHECK(doc.find("A&lt;&amp;&gt;B") != std::string::npos);
  CHECK(balanced(doc));
  CHECK(doc.find("class=\"conflict\"") != std::string::npos);

  const RunResult r = run(s.features, s.config);
  const std::string after = render_svg(r.labels, s.features, s.config.screen);
  CHECK(balanced(after));
}

#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "jointsel/experiments.hpp"
#include "jointsel/io.hpp"
#include "jointsel/random.hpp"
#include "jointsel/svg.hpp"

using namespace jointsel;

TEST_CASE("doubles round trip through the shortest form") {
  Rng rng = make_rng(404);
  std::vector<double> values = {0.0,    -0.0,   0.1,   1.0 / 3.0, 1e-12,
                                -2.5e7, 0.4863, 1e300, 5e-324};
  for (int i = 0; i < 500; ++i)
    values.push_back((uniform01(rng) - 0.5) * std::pow(10.0, i % 40 - 20));
  for (double v : values) {
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK_THROWS_AS(parse_double("not-a-number"), std::invalid_argument);
  CHECK_THROWS_AS(parse_double("1.5x"), std::invalid_argument);
}

TEST_CASE("csv reader splits rows and keeps comments separate") {
  std::stringstream in("# hello\na,b,c\n1,2,3\n\n# tail\n4,5,6\n");
  const CsvDocument doc = read_csv(in);
  REQUIRE(doc.comments.size() == 2);
  REQUIRE(doc.rows.size() == 3);
  CHECK(doc.rows[0] == std::vector<std::string>{"a", "b", "c"});
  CHECK(doc.rows[2] == std::vector<std::string>{"4", "5", "6"});
}

TEST_CASE("figure datasets round trip exactly") {
  FigureDataset ds;
  ds.figure_id = "rum-contour";
  ds.provenance = "jointsel test dataset";
  ds.seed = 12345;
  ds.columns = {"sigma_a", "sigma_h", "p_joint"};
  Rng rng = make_rng(9);
  for (int r = 0; r < 40; ++r)
    ds.rows.push_back({uniform01(rng), uniform01(rng), uniform01(rng)});

  std::stringstream buffer;
  ds.write_csv(buffer);
  const FigureDataset back = FigureDataset::read_csv(buffer);
  CHECK(back.figure_id == ds.figure_id);
  CHECK(back.provenance == ds.provenance);
  CHECK(back.seed == ds.seed);
  CHECK(back.columns == ds.columns);
  REQUIRE(back.rows.size() == ds.rows.size());
  for (std::size_t r = 0; r < ds.rows.size(); ++r)
    CHECK(back.rows[r] == ds.rows[r]);
}

TEST_CASE("success estimate csv carries config and estimate fields") {
  const PipelineConfig config = PipelineConfig::mallows(4, 2, 1.25, 0.75, 0.5);
  SuccessEstimate est;
  est.p_joint = 0.625;
  est.p_algo = 0.5;
  est.p_human = 0.375;
  est.trials = 1000;
  est.seed = 7;
  std::stringstream buffer;
  write_success_estimate_csv(buffer, config, est);
  const CsvDocument doc = read_csv(buffer);
  REQUIRE(doc.rows.size() == 2);
  const auto& row = doc.rows[1];
  CHECK(row[0] == "mallows");
  CHECK(row[1] == "4");
  CHECK(row[2] == "2");
  CHECK(parse_double(row[3]) == 1.25);
  CHECK(parse_double(row[7]) == 0.5);
  CHECK(parse_double(row[8]) == 0.625);
  CHECK(row[14] == "1000");
}

namespace {

// Checks that every opened tag is closed in order; good enough to catch
// malformed output from the renderers.
bool well_formed_xml(const std::string& text) {
  std::vector<std::string> stack;
  std::size_t pos = 0;
  while ((pos = text.find('<', pos)) != std::string::npos) {
    const std::size_t end = text.find('>', pos);
    if (end == std::string::npos) return false;
    std::string tag = text.substr(pos + 1, end - pos - 1);
    pos = end + 1;
    if (tag.empty()) return false;
    if (tag.front() == '?' || tag.front() == '!') continue;
    if (tag.back() == '/') continue;  // self-closing
    if (tag.front() == '/') {
      const std::string name = tag.substr(1);
      if (stack.empty() || stack.back() != name) return false;
      stack.pop_back();
    } else {
      const std::size_t space = tag.find_first_of(" \t\n");
      stack.push_back(space == std::string::npos ? tag
                                                 : tag.substr(0, space));
    }
  }
  return stack.empty();
}

}  // namespace

TEST_CASE("line charts render well-formed, self-contained svg") {
  svg::LineChart chart;
  chart.title = "success by presented count";
  chart.x_label = "k";
  chart.y_label = "P(success)";
  chart.baseline = 0.6364;
  chart.baseline_label = "algorithm alone";
  for (double w : {0.0, 0.5, 1.0}) {
    svg::Series series;
    series.label = "weight " + format_double(w);
    for (int k = 1; k <= 5; ++k) {
      series.x.push_back(k);
      series.y.push_back(0.5 + 0.05 * k - 0.1 * w);
    }
    chart.series.push_back(series);
  }
  const std::string text = svg::render_line_chart(chart);
  CHECK(text.rfind("<svg", 0) == 0);
  CHECK(well_formed_xml(text));
  CHECK(text.find("href") == std::string::npos);
}

TEST_CASE("heatmaps render well-formed, self-contained svg") {
  svg::Heatmap map;
  map.title = "margin";
  map.x_label = "sigma_a";
  map.y_label = "sigma_h";
  map.x_ticks = {0.1, 0.2, 0.3};
  map.y_ticks = {0.1, 0.2, 0.3};
  map.cells = {{0.1, -0.2, 0.3}, {0.0, 0.2, -0.1}, {0.4, 0.1, 0.0}};
  map.marks = {{1, 0, 2}, {0, 3, 0}, {4, 0, 7}};
  map.draw_diagonal = true;
  const std::string text = svg::render_heatmap(map);
  CHECK(text.rfind("<svg", 0) == 0);
  CHECK(well_formed_xml(text));
  CHECK(text.find("href") == std::string::npos);
}

#include "eqbearing/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

namespace eqbearing {
namespace {

std::vector<SampleRecord> short_run() {
  RunConfig cfg;
  cfg.duration = 0.3;
  cfg.noise.outlier_prob = 0.2;
  cfg.seed = 4;
  return run_single(cfg);
}

std::string csv_text(const std::vector<SampleRecord>& records) {
  std::ostringstream out;
  write_csv(records, out);
  return out.str();
}

TEST(Csv, HeaderOnlyForEmptyInput) {
  EXPECT_EQ(csv_text({}),
            "t,xi_x,xi_y,xi_z,y_x,y_y,y_z,outlier,xihat_eqv_x,xihat_eqv_y,xihat_eqv_z,"
            "xihat_naive_x,xihat_naive_y,xihat_naive_z,angle_err_eqv,angle_err_naive,V,Vdot\n");
}

TEST(Csv, OneRecordIsTwoLines) {
  const auto records = short_run();
  const std::string text = csv_text({records.front()});
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 2);
  EXPECT_EQ(text.back(), '\n');
  EXPECT_EQ(text.find('\r'), std::string::npos);
}

TEST(Csv, ReadBackIsExact) {
  const auto records = short_run();
  std::istringstream in(csv_text(records));
  const auto back = read_csv(in);
  ASSERT_EQ(back.size(), records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].t, records[i].t);
    EXPECT_EQ(back[i].xi, records[i].xi);
    EXPECT_EQ(back[i].y, records[i].y);
    EXPECT_EQ(back[i].outlier, records[i].outlier);
    EXPECT_EQ(back[i].xihat_eqv, records[i].xihat_eqv);
    EXPECT_EQ(back[i].xihat_naive, records[i].xihat_naive);
    EXPECT_EQ(back[i].angle_err_eqv, records[i].angle_err_eqv);
    EXPECT_EQ(back[i].V, records[i].V);
    EXPECT_EQ(back[i].Vdot, records[i].Vdot);
  }
}

TEST(Csv, SeventeenSignificantDigits) {
  SampleRecord r;
  r.t = 0.1;
  const std::string text = csv_text({r});
  EXPECT_NE(text.find("\n0.10000000000000001,"), std::string::npos);
}

TEST(Csv, RejectsBadInput) {
  std::istringstream wrong_header("a,b\n");
  EXPECT_THROW(read_csv(wrong_header), std::runtime_error);
  std::istringstream short_row(std::string(kCsvHeader) + "\n1,2,3\n");
  EXPECT_THROW(read_csv(short_row), std::runtime_error);
  EXPECT_THROW(write_csv({}, "/nonexistent-dir/x.csv"), std::runtime_error);
}

TEST(Plot, StructureAndDeterminism) {
  const auto records = short_run();
  const std::string svg = render_plot(records);
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_EQ(svg, render_plot(records));
  const auto a_begin = svg.find("<g id=\"panel-a\">");
  const auto a_end = svg.find("</g>", a_begin);
  ASSERT_NE(a_begin, std::string::npos);
  const std::string panel_a = svg.substr(a_begin, a_end - a_begin);
  std::size_t curves = 0;
  for (std::size_t p = panel_a.find("<polyline"); p != std::string::npos;
       p = panel_a.find("<polyline", p + 1)) {
    ++curves;
  }
  EXPECT_EQ(curves, 6u);
  // Truth dashed, estimates solid.
  std::size_t dashed = 0;
  for (std::size_t p = panel_a.find("stroke-dasharray"); p != std::string::npos;
       p = panel_a.find("stroke-dasharray", p + 1)) {
    ++dashed;
  }
  EXPECT_EQ(dashed, 3u);
  EXPECT_NE(svg.find("angle_err_eqv"), std::string::npos);
  EXPECT_NE(svg.find("angle_err_naive"), std::string::npos);
  EXPECT_NE(svg.find("class=\"outlier\""), std::string::npos);
  EXPECT_EQ(svg.find("href"), std::string::npos);  // self-contained
  EXPECT_THROW(render_plot({}), std::invalid_argument);
}

TEST(Plot, WritesFile) {
  const auto path = std::filesystem::temp_directory_path() / "eqbearing_plot_test.svg";
  const auto records = short_run();
  write_plot(records, path.string());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(ss.str(), render_plot(records));
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace eqbearing

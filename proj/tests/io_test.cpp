#include <gtest/gtest.h>

#include <fstream>
#include <sstream>
#include <tuple>

#include "support.hpp"
#include "tda/io.hpp"
#include "tda/svg.hpp"

using namespace tda;
using namespace tda::testing;

namespace {

std::istringstream text(const std::string& s) { return std::istringstream(s); }

std::size_t occurrences(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

template <class Fn>
std::string parse_error(Fn fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Parse, PointCloud) {
  auto in = text("x,y\n# comment\n0, 1\n\n2 3.5\n-1e-1\t4\n");
  const auto pc = io::parse_point_cloud(in, true);
  ASSERT_EQ(pc.size(), 3u);
  EXPECT_EQ(pc[1], (Point{2, 3.5}));
  EXPECT_EQ(pc[2], (Point{-0.1, 4}));
  auto bad = text("0 1\n2\n");
  EXPECT_NE(parse_error([&] { io::parse_point_cloud(bad); }).find("line 2"), std::string::npos);
  auto nan = text("0 abc\n");
  EXPECT_NE(parse_error([&] { io::parse_point_cloud(nan); }).find("line 1"), std::string::npos);
}

TEST(Parse, LowerTriangle) {
  auto in = text("1\n2 3\n");
  const auto d = io::parse_lower_triangle(in);
  ASSERT_EQ(d.size(), 3u);
  EXPECT_EQ(d(1, 0), 1);
  EXPECT_EQ(d(0, 2), 2);
  EXPECT_EQ(d(2, 1), 3);
  auto bad = text("1\n2\n");
  EXPECT_NE(parse_error([&] { io::parse_lower_triangle(bad); }).find("line 2"), std::string::npos);
  auto negative = text("-1\n");
  EXPECT_THROW(io::parse_lower_triangle(negative), InvalidMetric);
}

TEST(Parse, ComplexTakesClosure) {
  auto in = text("0 1 2\n3\n");
  const auto k = io::parse_complex(in);
  EXPECT_EQ(k, build_complex({{0, 1, 2}, {3}}));
  auto bad = text("0 1\n1 x\n");
  EXPECT_NE(parse_error([&] { io::parse_complex(bad); }).find("line 2"), std::string::npos);
  auto dup = text("0 0\n");
  EXPECT_THROW(io::parse_complex(dup), Error);
}

TEST(Parse, FiltrationAndValues) {
  auto in = text("0 0\n0 1\n0.5 0 1\n");
  const auto fc = io::parse_filtration(in);
  EXPECT_EQ(fc.size(), 3u);
  EXPECT_EQ(fc.at(0.25), build_complex({{0}, {1}}));
  auto early = text("0 0\n0.5 1\n0.2 0 1\n");
  EXPECT_THROW(io::parse_filtration(early), InvalidFiltration);
  auto short_line = text("0.5\n");
  EXPECT_NE(parse_error([&] { io::parse_filtration(short_line); }).find("line 1"), std::string::npos);

  auto vals = text("0 1.5\n# x\n3 -2\n");
  EXPECT_EQ(io::parse_values(vals), (std::map<Vertex, double>{{0, 1.5}, {3, -2}}));
  auto twice = text("0 1\n0 2\n");
  EXPECT_NE(parse_error([&] { io::parse_values(twice); }).find("line 2"), std::string::npos);
}

TEST(Parse, CoverAndNumberList) {
  const auto c = io::parse_cover("-1.5,-0.3;-0.8,0.8; 0.3,1.5");
  ASSERT_EQ(c.size(), 3u);
  EXPECT_EQ(c[1], (OpenInterval{-0.8, 0.8}));
  EXPECT_THROW(io::parse_cover("0,1,2"), ParseError);
  EXPECT_THROW(io::parse_cover("0,1;0.5,2;0.8,3"), NonlinearNerve);
  EXPECT_EQ(io::parse_number_list("-2, 0,2 3.5"), (std::vector<double>{-2, 0, 2, 3.5}));
  EXPECT_THROW(io::parse_number_list("1,x"), ParseError);
}

TEST(Parse, Zigzag) {
  const Field f3(3);
  auto in = text("dims 1 2 1\nfwd 1 2\nbwd 1 1\n");
  const auto z = io::parse_zigzag(in, f3);
  EXPECT_EQ(z.dims, (std::vector<std::size_t>{1, 2, 1}));
  ASSERT_EQ(z.arrows.size(), 2u);
  EXPECT_EQ(z.arrows[0].direction, Direction::forward);
  EXPECT_EQ(z.arrows[0].map, Matrix::from_rows(2, 1, {1, 2}, f3));
  EXPECT_EQ(z.arrows[1].direction, Direction::backward);
  EXPECT_EQ(z.arrows[1].map, Matrix::from_rows(2, 1, {1, 1}, f3));

  auto wrong_count = text("dims 1 2\nfwd 1\n");
  EXPECT_NE(parse_error([&] { io::parse_zigzag(wrong_count, f3); }).find("line 2"), std::string::npos);
  auto wrong_dir = text("dims 1 1\nsideways 1\n");
  EXPECT_NE(parse_error([&] { io::parse_zigzag(wrong_dir, f3); }).find("line 2"), std::string::npos);
  auto missing = text("dims 1 1 1\nfwd 1\n");
  EXPECT_THROW(io::parse_zigzag(missing, f3), ParseError);
  auto no_dims = text("fwd 1\n");
  EXPECT_THROW(io::parse_zigzag(no_dims, f3), ParseError);
}

TEST(Parse, TorusZigzagFile) {
  std::ifstream in(std::string(TDA_DATA_DIR) + "/torus_f1.zigzag");
  ASSERT_TRUE(in);
  const auto z = io::parse_zigzag(in, Field(2));
  EXPECT_EQ(decompose_zigzag(z), (std::vector<IntegerBar>{{1, 5, 1}, {2, 4, 1}}));
}

TEST(Parse, Cosheaf) {
  const Field f2(2);
  for (const auto& [name, h0, h1] : {std::tuple{"closed_interval", 1u, 0u}, std::tuple{"half_open_interval", 0u, 0u},
                                     std::tuple{"open_interval", 0u, 1u}}) {
    std::ifstream in(std::string(TDA_DATA_DIR) + "/" + name + ".cosheaf");
    ASSERT_TRUE(in) << name;
    const auto c = io::parse_cosheaf(in, f2);
    EXPECT_EQ(cosheaf_homology(c, 0, f2).dimension, h0) << name;
    EXPECT_EQ(cosheaf_homology(c, 1, f2).dimension, h1) << name;
  }
  auto late_simplex = text("0 1\nstalk 0 1\n1 2\n");
  EXPECT_NE(parse_error([&] { io::parse_cosheaf(late_simplex, f2); }).find("line 3"), std::string::npos);
  auto off_base = text("0 1\nstalk 0,2 1\n");
  EXPECT_THROW(io::parse_cosheaf(off_base, f2), ParseError);
  auto short_map = text("0 1\nstalk 0 1\nstalk 0,1 1\nmap 0 0,1\n");
  EXPECT_NE(parse_error([&] { io::parse_cosheaf(short_map, f2); }).find("line 4"), std::string::npos);
}

TEST(BarcodeJson, RoundTripIsByteIdentical) {
  const Field f3(3);
  const Barcode bc({{0, 0.1, 1.0 / 3}, {0, 0, kInfinity}, {1, 0.25, 0.7000000000000001}, {2, -1e-300, 5e10}});
  const auto once = io::write_barcode(bc, f3);
  const auto back = io::read_barcode(once);
  EXPECT_EQ(back.barcode, bc);
  EXPECT_EQ(back.field.characteristic(), 3u);
  EXPECT_EQ(io::write_barcode(back.barcode, back.field), once);
  EXPECT_NE(once.find("\"death\": null"), std::string::npos);
  EXPECT_EQ(once.find("order"), std::string::npos);
}

TEST(BarcodeJson, SuperlevelRoundTrip) {
  const auto m = standard_torus();
  const auto bc = compute_barcode(superlevel_filtration(m.complex(), m.values()), Field(2), {.descending = true});
  ASSERT_TRUE(bc.descending());
  const auto once = io::write_barcode(bc, Field(2));
  EXPECT_NE(once.find("\"order\": \"superlevel\""), std::string::npos);
  const auto back = io::read_barcode(once);
  EXPECT_EQ(back.barcode, bc);
  for (const auto& b : back.barcode.bars()) {
    if (b.is_infinite()) {
      EXPECT_LT(b.death, 0);
    }
  }
  EXPECT_EQ(io::write_barcode(back.barcode, back.field), once);
}

TEST(BarcodeJson, Malformed) {
  EXPECT_THROW(io::read_barcode("{"), ParseError);
  EXPECT_THROW(io::read_barcode("{\"field\": 2}"), ParseError);
  EXPECT_THROW(io::read_barcode("{\"field\": 2, \"bars\": [{\"dim\": 0}]}"), ParseError);
  EXPECT_THROW(io::read_barcode("{\"field\": 4, \"bars\": []}"), Error);
}

TEST(Svg, EmptyBarcodeDrawsAxesOnly) {
  const auto svg = render_svg(Barcode{});
  EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_NE(svg.find("class=\"axes\""), std::string::npos);
  EXPECT_EQ(occurrences(svg, "class=\"band\""), 0u);
  EXPECT_EQ(occurrences(svg, "<line class=\"bar"), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Svg, SingleFiniteBar) {
  const auto svg = render_svg(Barcode({{1, 0.5, 2}}));
  EXPECT_EQ(occurrences(svg, "<line class=\"bar\""), 1u);
  EXPECT_EQ(occurrences(svg, "class=\"arrow\""), 0u);
  EXPECT_EQ(occurrences(svg, "data-dim=\"1\""), 1u);
  EXPECT_NE(svg.find(">H1<"), std::string::npos);
}

TEST(Svg, TorusBandsAndArrows) {
  const auto m = standard_torus();
  const auto bc = compute_barcode(lower_star_filtration(m.complex(), m.values()));
  ASSERT_EQ(bc.size(), 4u);
  const auto svg = render_svg(bc);
  EXPECT_EQ(occurrences(svg, "<line class=\"bar"), 4u);
  EXPECT_EQ(occurrences(svg, "<line class=\"bar infinite\""), 4u);
  EXPECT_EQ(occurrences(svg, "class=\"arrow\""), 4u);
  EXPECT_EQ(occurrences(svg, "class=\"band\""), 3u);
  // lowest degree on top
  EXPECT_LT(svg.find("data-dim=\"0\""), svg.find("data-dim=\"2\""));
  EXPECT_EQ(render_svg(bc), svg);
}

TEST(Svg, RespectsSize) {
  const auto svg = render_svg(Barcode({{0, 0, 1}}), {320, 200, 20});
  EXPECT_NE(svg.find("width=\"320\" height=\"200\""), std::string::npos);
  EXPECT_THROW(write_svg(Barcode{}, "/nonexistent-dir/x.svg"), Error);
}

#include "thermogap/export.h"

#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "thermogap/ento.h"

using namespace thermogap;

namespace {

std::string read_file(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST(export, format_double_round_trips) {
    for (double v : {0.1, 1.0 / 3, 0.4330127018922193, 1e-300, -2.5, 0.0}) {
        EXPECT_EQ(std::stod(format_double(v)), v);
    }
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}

TEST(export, cone_csv_round_trip) {
    auto records = sweep_cone(0.3, 12);
    std::string text = cone_csv(records);
    EXPECT_EQ(text.substr(0, text.find('\n')), kConeCsvHeader);
    EXPECT_EQ(text.find('\r'), std::string::npos);
    EXPECT_EQ(text.back(), '\n');
    auto parsed = parse_cone_csv(text);
    ASSERT_EQ(parsed.size(), records.size());
    for (size_t i = 0; i < parsed.size(); i++) {
        EXPECT_EQ(parsed[i].p0, records[i].p0);
        EXPECT_EQ(parsed[i].rho10_max, records[i].rho10_max);
        EXPECT_EQ(parsed[i].case_id, records[i].case_id);
        EXPECT_EQ(parsed[i].g11_star, records[i].g11_star);
    }
}

TEST(export, parse_rejects_malformed) {
    EXPECT_THROW(parse_cone_csv("nope\n"), std::runtime_error);
    std::string header = std::string(kConeCsvHeader) + "\n";
    EXPECT_THROW(parse_cone_csv(header + "0.5,0,0,true,0\n"), std::runtime_error);
    EXPECT_THROW(parse_cone_csv(header + "0.5,0,0,maybe,0,case1,0,0\n"), std::runtime_error);
    EXPECT_THROW(parse_cone_csv(header + "0.5,0,0,true,0,infeasible,0,0\n"), std::runtime_error);
}

TEST(export, golden_cone_fixture) {
    std::string expected = read_file(std::string(THERMOGAP_TEST_DATA) + "/cone_q0.5_grid10.csv");
    ASSERT_FALSE(expected.empty());
    EXPECT_EQ(cone_csv(sweep_cone(0.5, 10)), expected);
}

TEST(export, gap_csv_row) {
    std::string text = gap_csv(sweep_gap({0.5}, {0}, {0}));
    std::istringstream in(text);
    std::string header, row, extra;
    std::getline(in, header);
    std::getline(in, row);
    EXPECT_EQ(header, kGapCsvHeader);
    EXPECT_FALSE(std::getline(in, extra));
    EXPECT_EQ(row.substr(0, 6), "0.5,0,");
    EXPECT_EQ(row.substr(row.size() - 5), ",true");
    EXPECT_EQ(gap_csv({}), std::string(kGapCsvHeader) + "\n");
}

TEST(export, simulate_csv_layout) {
    GapSample s;
    s.index = 3;
    s.transition = Matrix3r::Identity();
    s.rho10 = 0.25;
    s.bound_eq7 = 0.5;
    s.in_window = true;
    std::string text = simulate_csv({s});
    EXPECT_EQ(text, std::string(kSimulateCsvHeader) + "\n3,1,1,0,0,0,0,0,0,1,0.25,0.5,true\n");
}

TEST(export, cone_svg_contents) {
    std::string svg = cone_svg(sweep_cone(0.5, 20), 0.5, 20);
    EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
    EXPECT_NE(svg.find("<polyline"), std::string::npos);
    EXPECT_NE(svg.find(">max 0."), std::string::npos);
    EXPECT_NE(svg.find(">min 0"), std::string::npos);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    EXPECT_EQ(svg, cone_svg(sweep_cone(0.5, 20), 0.5, 20));
}

// Runs the command-line binary end to end and checks files and exit codes.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "thermogap/export.h"

namespace fs = std::filesystem;

namespace {

int run(const std::string &args) {
    std::string cmd = std::string(THERMOGAP_CLI) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const fs::path &path) {
    std::ifstream f(path, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

class Cli : public ::testing::Test {
   protected:
    void SetUp() override {
        dir = fs::temp_directory_path() /
              ("thermogap_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir);
        fs::create_directories(dir);
    }
    void TearDown() override {
        fs::remove_all(dir);
    }
    std::string path(const std::string &name) const {
        return (dir / name).string();
    }
    fs::path dir;
};

}  // namespace

TEST_F(Cli, cone_grid50) {
    ASSERT_EQ(run("cone --q 0.5 --grid 50 --out " + path("cone.csv") + " --meta " + path("meta.json")), 0);
    auto rows = thermogap::parse_cone_csv(read_file(path("cone.csv")));
    EXPECT_EQ(rows.size(), 2500u);
    EXPECT_NE(read_file(path("meta.json")).find("\"feasible_points\""), std::string::npos);
}

TEST_F(Cli, cone_golden_fixture) {
    ASSERT_EQ(run("cone --q 0.5 --grid 10 --out " + path("cone.csv") + " --meta " + path("meta.json")), 0);
    EXPECT_EQ(read_file(path("cone.csv")), read_file(std::string(THERMOGAP_TEST_DATA) + "/cone_q0.5_grid10.csv"));
}

TEST_F(Cli, cone_svg_and_json) {
    ASSERT_EQ(run("cone --q 0.5 --grid 20 --format json --out " + path("cone.json") + " --svg " + path("cone.svg") +
                  " --meta " + path("meta.json")),
              0);
    EXPECT_NE(read_file(path("cone.json")).find("\"rho10_max\""), std::string::npos);
    EXPECT_NE(read_file(path("cone.svg")).find("<polyline"), std::string::npos);
}

TEST_F(Cli, usage_errors) {
    EXPECT_EQ(run("cone --q 1.5 --grid 10 --out " + path("x.csv")), 2);
    EXPECT_EQ(run("cone --q 0.5 --grid 1 --out " + path("x.csv")), 2);
    EXPECT_EQ(run("cone --bogus"), 2);
    EXPECT_EQ(run(""), 2);
    EXPECT_EQ(run("gap --q 0.5,abc --out " + path("g.csv")), 2);
    EXPECT_EQ(run("simulate --pattern weird --out " + path("s.csv")), 2);
    EXPECT_EQ(run("verify --criteria nonsense"), 2);
    EXPECT_FALSE(fs::exists(path("x.csv")));
}

TEST_F(Cli, unwritable_path) {
    EXPECT_EQ(run("cone --q 0.5 --grid 5 --out " + path("missing/dir/cone.csv")), 3);
}

TEST_F(Cli, gap_rows_and_warnings) {
    ASSERT_EQ(run("gap --q 0.5,0.7 --epsilon 0 --delta 0 --out " + path("gap.csv") + " --meta " + path("meta.json")), 0);
    std::string text = read_file(path("gap.csv"));
    std::istringstream in(text);
    std::string header, r1, r2;
    std::getline(in, header);
    std::getline(in, r1);
    std::getline(in, r2);
    EXPECT_EQ(header, thermogap::kGapCsvHeader);
    EXPECT_NE(r1.find(",0.0011218245"), std::string::npos);
    EXPECT_EQ(r1.substr(r1.size() - 5), ",true");
    EXPECT_EQ(r2.substr(r2.size() - 6), ",false");
    std::string meta = read_file(path("meta.json"));
    EXPECT_NE(meta.find("q = 0.69999999999999996"), std::string::npos);
    EXPECT_NE(meta.find("first order in epsilon"), std::string::npos);
}

TEST_F(Cli, gap_empty_grid) {
    ASSERT_EQ(run("gap --q '' --out " + path("gap.csv") + " --meta " + path("meta.json")), 0);
    EXPECT_EQ(read_file(path("gap.csv")), std::string(thermogap::kGapCsvHeader) + "\n");
}

TEST_F(Cli, simulate_deterministic_and_bounded) {
    std::string args = "simulate --q 0.5 --bath-k 4 --bath-base 2 --samples 500 --seed 42 --out ";
    ASSERT_EQ(run(args + path("a.csv") + " --meta " + path("a.json")), 0);
    ASSERT_EQ(run(args + path("b.csv") + " --meta " + path("b.json")), 0);
    std::string a = read_file(path("a.csv"));
    EXPECT_EQ(a, read_file(path("b.csv")));
    EXPECT_EQ(read_file(path("a.json")), read_file(path("b.json")));

    std::istringstream in(a);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, thermogap::kSimulateCsvHeader);
    int rows = 0;
    while (std::getline(in, line)) {
        std::vector<double> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            if (cell != "true" && cell != "false") {
                cells.push_back(std::stod(cell));
            }
        }
        ASSERT_EQ(cells.size(), 12u);
        EXPECT_LE(cells[10], cells[11] + 1e-10);
        rows++;
    }
    EXPECT_EQ(rows, 500);
    std::string meta = read_file(path("a.json"));
    EXPECT_NE(meta.find("\"delta_report\""), std::string::npos);
    EXPECT_NE(meta.find("\"epsilon_eff\""), std::string::npos);
}

TEST_F(Cli, simulate_resource_guard) {
    EXPECT_EQ(run("simulate --q 0.5 --bath-k 16 --bath-base 2 --samples 1 --out " + path("s.csv")), 3);
    EXPECT_EQ(run("simulate --q 0.5 --bath-k 3 --samples 1 --out " + path("s.csv")), 2);
}

TEST_F(Cli, verify_subsets_and_forced_failure) {
    EXPECT_EQ(run("verify --criteria gap"), 0);
    EXPECT_EQ(run("verify --criteria 2 --force-fail"), 1);
    EXPECT_EQ(run("verify --criteria 4,5"), 0);
}

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "rfde/solution_io.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
    const std::string command = std::string(RFDE_CLI_PATH) + " " + args + " > cli_stdout.txt 2> cli_stderr.txt";
    const int status = std::system(command.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_all(const fs::path& p) {
    std::ifstream in(p);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<std::string>> csv(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::vector<std::string>> rows;
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

std::size_t column(const std::vector<std::string>& header, const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    FAIL("missing column " << name);
    return 0;
}

}  // namespace

TEST_CASE("solve writes a solution file") {
    REQUIRE(run("solve --problem mms --L 20 --m 3 --out cli_s.json") == 0);
    const auto file = rfde::load_solution("cli_s.json");
    CHECK(std::abs(file.omega - 2.0) <= 1e-4);
    CHECK(file.converged);
    CHECK(file.intervals == 20);

    REQUIRE(run("solve --problem mms --L 20 --m 3 --out cli_s2.json") == 0);
    CHECK(read_all("cli_s.json") == read_all("cli_s2.json"));
}

TEST_CASE("solve options") {
    CHECK(run("solve --problem logistic --param r=1.7 --L 20 --m 3 --phase trivial:k=1,level=1 --tol 1e-9 --out "
              "cli_l.json") == 0);
    const auto file = rfde::load_solution("cli_l.json");
    CHECK(file.params.at("r") == 1.7);
    CHECK(run("solve --problem mms --L 12 --m 3 --phase integral --out cli_i.json") == 0);
    CHECK(run("solve --problem dist-logistic --L 12 --m 3 --M 10 --jacobian fd --out cli_d.json") == 0);
    CHECK(rfde::load_solution("cli_d.json").quadrature_nodes == 10);
}

TEST_CASE("converge reports orders") {
    REQUIRE(run("converge --problem mms --m 3 --L 10,20,40 --reference exact --out cli_c.csv") == 0);
    const auto rows = csv("cli_c.csv");
    REQUIRE(rows.size() == 4);
    const auto order = column(rows[0], "order_est");
    CHECK(rows[1][order].empty());
    for (std::size_t r = 2; r < rows.size(); ++r) {
        const double value = std::stod(rows[r][order]);
        CHECK(value >= 2.7);
        CHECK(value <= 4.2);
    }
}

TEST_CASE("floquet of a saved solution") {
    REQUIRE(run("solve --problem mms --L 20 --m 3 --out cli_f.json") == 0);
    REQUIRE(run("floquet --solution cli_f.json --threshold 0.05 --out cli_f.csv") == 0);
    const auto rows = csv("cli_f.csv");
    CHECK(rows[0] == std::vector<std::string>{"re", "im", "modulus"});
    CHECK(rows.size() == 1 + 61 * 2);
    CHECK(std::abs(std::stod(rows[1][2]) - 1.0) <= 1e-4);
    CHECK(run("floquet --solution missing.json --out cli_f.csv") == 1);
}

TEST_CASE("continue and integrate") {
    REQUIRE(run("continue --problem logistic --param r --from 1.7 --to 2.4 --steps 4 --L 20 --m 3 --out cli_n.csv") == 0);
    const auto rows = csv("cli_n.csv");
    REQUIRE(rows.size() == 5);
    const auto flag = column(rows[0], "flag");
    for (std::size_t r = 1; r < rows.size(); ++r) CHECK(rows[r][flag] == "ok");

    REQUIRE(run("integrate --problem logistic --t-end 5 --dt 0.01 --out cli_t.csv") == 0);
    const auto traj = csv("cli_t.csv");
    CHECK(traj[0] == std::vector<std::string>{"t", "y1"});
    CHECK(std::stod(traj.back()[0]) == doctest::Approx(5.0));
}

TEST_CASE("usage errors exit with 2") {
    CHECK(run("solve --problem nosuch --L 20 --m 3 --out x.json") == 2);
    CHECK(!read_all("cli_stderr.txt").empty());
    CHECK(run("solve --problem mms --L 20 --m 3") == 2);
    CHECK(run("solve --problem mms --L 20 --m 3 --bogus 1 --out x.json") == 2);
    CHECK(run("solve --problem mms --L 20 --m 3 --param mu --out x.json") == 2);
    CHECK(run("converge --problem mms --m 3 --L 20,10 --out x.csv") == 2);
    CHECK(run("converge --problem logistic --m 3 --L 10,20 --reference exact --out x.csv") == 2);
    CHECK(run("") == 2);
}

TEST_CASE("non-convergence exits with 1") {
    CHECK(run("solve --problem logistic --L 20 --m 3 --max-iter 1 --out x.json") == 1);
}

// End-to-end CLI tests: run the built binary and pin the documented
// interfaces (exit codes, CSV/JSON schemas, determinism, golden outputs).

#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout only
};

RunResult run_cli(const std::string& args) {
    const std::string cmd = std::string(RABI_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::size_t got = 0;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int status = pclose(pipe);
    return RunResult{WEXITSTATUS(status), out};
}

std::string temp_path(const std::string& name) {
    return std::string("/tmp/rabi_cli_test_") + name;
}

}  // namespace

TEST_CASE("canon: golden outputs") {
    CHECK(run_cli("canon \"comm(sp,sm)\"").output == "2*sz\n");
    CHECK(run_cli("canon \"a*ad\"").output == "ad*a + 1\n");
    CHECK(run_cli("canon \"a*ad*a*ad\"").output == "ad^2*a^2 + 3*ad*a + 1\n");
    CHECK(run_cli("canon \"comm(sp,sm) - 2*sz\"").output == "0\n");
    const RunResult r = run_cli("canon \"comm(sp,sm)\"");
    CHECK(r.exit_code == 0);
}

TEST_CASE("canon: syntax errors exit 2") {
    CHECK(run_cli("canon \"a*+\"").exit_code == 2);
    CHECK(run_cli("canon \"frobnicate\"").exit_code == 2);
}

TEST_CASE("verify: default run emits an all-pass JSON report and exit 0") {
    const RunResult r = run_cli("verify --omega 1 --omega0 1 --g 0.1");
    REQUIRE(r.exit_code == 0);
    const nlohmann::json doc = nlohmann::json::parse(r.output);
    CHECK(doc["params"]["omega"] == 1.0);
    REQUIRE(doc["checks"].is_array());
    CHECK(doc["checks"].size() >= 50);
    for (const auto& check : doc["checks"]) CHECK(check["pass"] == true);
}

TEST_CASE("verify: margin 0 surfaces failures through exit 1") {
    const RunResult r = run_cli("verify --margin 0");
    CHECK(r.exit_code == 1);
    const nlohmann::json doc = nlohmann::json::parse(r.output);
    bool any_fail = false;
    for (const auto& check : doc["checks"])
        if (check["pass"] == false) any_fail = true;
    CHECK(any_fail);
}

TEST_CASE("verify: invalid parameters exit 2") {
    CHECK(run_cli("verify --g -1").exit_code == 2);
    CHECK(run_cli("verify --r 1.5").exit_code == 2);
    CHECK(run_cli("verify --nmax 1").exit_code == 2);
}

TEST_CASE("prove: one PROVED line per identity, exit 0") {
    CHECK(run_cli("prove --suite symbolic").exit_code == 0);
    CHECK(run_cli("prove --suite numeric").exit_code == 2);
    const RunResult r = run_cli("prove");
    CHECK(r.exit_code == 0);
    std::istringstream in(r.output);
    std::string line;
    int lines = 0;
    while (std::getline(in, line)) {
        ++lines;
        CHECK(line.find("PROVED") != std::string::npos);
    }
    CHECK(lines == 21);
}

TEST_CASE("sweep: phase distance minimized at g = 0.5 on the documented grid") {
    const RunResult r = run_cli("sweep --g-from 0.3 --g-to 0.7 --steps 81");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.output);
    std::string line;
    std::getline(in, line);
    CHECK(line == "g,beta_sq,phase_re,phase_im,phase_distance,relation_residual");
    double best_g = -1.0, best_dist = 1e300;
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::istringstream cells(line);
        std::string cell;
        std::getline(cells, cell, ',');
        const double g = std::stod(cell);
        std::getline(cells, cell, ',');
        std::getline(cells, cell, ',');
        std::getline(cells, cell, ',');
        std::getline(cells, cell, ',');
        const double dist = std::stod(cell);
        std::getline(cells, cell, ',');
        CHECK(std::stod(cell) <= 1e-10);
        if (dist < best_dist) {
            best_dist = dist;
            best_g = g;
        }
    }
    CHECK(rows == 81);
    CHECK(best_g == 0.5);
    CHECK(best_dist <= 1e-12);
}

TEST_CASE("spectrum: CSV header and ascending eigenvalues") {
    const RunResult r = run_cli("spectrum --model ajc --nmax 10");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.output);
    std::string line;
    std::getline(in, line);
    CHECK(line == "index,eigenvalue,parity,certified");
    double prev = -1e300;
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        std::istringstream cells(line);
        std::string cell;
        std::getline(cells, cell, ',');
        std::getline(cells, cell, ',');
        const double ev = std::stod(cell);
        CHECK(ev >= prev);
        prev = ev;
    }
    CHECK(rows == 22);
}

TEST_CASE("evolve: trajectory CSV from a basis state") {
    const RunResult r = run_cli(
        "evolve --model ajc --state 0,g --tmax 1 --dt 0.5 --observables Nbar,N,parity");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.output);
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,Nbar,N,parity,leakage");
    std::getline(in, line);
    {
        std::istringstream cells(line);
        std::string cell;
        std::getline(cells, cell, ',');
        CHECK(std::stod(cell) == 0.0);
        for (double expected : {2.0, 0.0, 1.0}) {
            std::getline(cells, cell, ',');
            CHECK(std::abs(std::stod(cell) - expected) <= 1e-12);
        }
    }
    int rows = 1;
    while (std::getline(in, line)) ++rows;
    CHECK(rows == 3);
}

TEST_CASE("evolve: explicit amplitude list") {
    // dim = 2*(2+1) = 6 entries; equal weight on |0,g> and |1,e>
    const std::string amps = "0,0;0.70710678118654752,0;0.70710678118654752,0;0,0;0,0;0,0";
    const RunResult r = run_cli("evolve --model ajc --nmax 2 --state-amps \"" + amps +
                                "\" --tmax 0.2 --dt 0.1 --observables Nbar");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.output);
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,Nbar,leakage");
    std::getline(in, line);
    {
        // <Nbar> = 2 on the invariant block
        std::istringstream cells(line);
        std::string cell;
        std::getline(cells, cell, ',');
        std::getline(cells, cell, ',');
        CHECK(std::abs(std::stod(cell) - 2.0) <= 1e-12);
    }
}

TEST_CASE("evolve: bad observable or state exits 2") {
    CHECK(run_cli("evolve --model jc --state 0,g --tmax 1 --dt 0.5 --observables Qx")
              .exit_code == 2);
    CHECK(run_cli("evolve --model jc --state 0,x --tmax 1 --dt 0.5 --observables N")
              .exit_code == 2);
    CHECK(run_cli("evolve --model nope --state 0,g --tmax 1 --dt 0.5 --observables N")
              .exit_code == 2);
}

TEST_CASE("dump: free evolution takes a time argument") {
    // at t = 0 the evolution is the identity: dim nonzero entries, all 1
    const RunResult r = run_cli("dump --op U0 --t 0 --nmax 2");
    REQUIRE(r.exit_code == 0);
    std::istringstream in(r.output);
    std::string line;
    std::getline(in, line);
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(line.find(",1,0") != std::string::npos);
    }
    CHECK(rows == 6);
    CHECK(run_cli("dump --op U0bar --t 0.7 --nmax 4").exit_code == 0);
}

TEST_CASE("prove: --out writes the proof lines to a file") {
    const std::string path = temp_path("proofs.txt");
    const RunResult direct = run_cli("prove");
    const RunResult filed = run_cli("prove --out " + path);
    CHECK(filed.exit_code == 0);
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == direct.output);
}

TEST_CASE("dump: sparse matrix CSV of sz") {
    const RunResult r = run_cli("dump --op sz --nmax 2");
    REQUIRE(r.exit_code == 0);
    CHECK(r.output ==
          "row,col,re,im\n"
          "0,0,0.5,0\n"
          "1,1,-0.5,0\n"
          "2,2,0.5,0\n"
          "3,3,-0.5,0\n"
          "4,4,0.5,0\n"
          "5,5,-0.5,0\n");
    CHECK(run_cli("dump --op bogus").exit_code == 2);
}

TEST_CASE("config file: values load, flags override, strict schema") {
    const std::string good = temp_path("good.json");
    {
        std::ofstream out(good);
        out << R"({"omega":1,"omega0":1,"g":0.1,"r":0})";
    }
    CHECK(run_cli("verify --config " + good).exit_code == 0);

    // flag wins over file value
    const std::string gc = temp_path("gc.json");
    {
        std::ofstream out(gc);
        out << R"({"g":-1})";
    }
    CHECK(run_cli("verify --config " + gc + " --g 0.1").exit_code == 0);
    CHECK(run_cli("verify --config " + gc).exit_code == 2);

    const std::string unknown = temp_path("unknown.json");
    {
        std::ofstream out(unknown);
        out << R"({"omeag":1})";
    }
    CHECK(run_cli("verify --config " + unknown).exit_code == 2);

    const std::string typed = temp_path("typed.json");
    {
        std::ofstream out(typed);
        out << R"({"omega":"one"})";
    }
    CHECK(run_cli("verify --config " + typed).exit_code == 2);

    const std::string broken = temp_path("broken.json");
    {
        std::ofstream out(broken);
        out << "{\"omega\": 1,,}";
    }
    CHECK(run_cli("verify --config " + broken).exit_code == 2);
}

TEST_CASE("determinism: identical invocations produce byte-identical output") {
    const RunResult a = run_cli("verify --omega 1.1 --omega0 0.9 --g 0.2");
    const RunResult b = run_cli("verify --omega 1.1 --omega0 0.9 --g 0.2");
    CHECK(a.output == b.output);
    const RunResult c = run_cli("sweep --g-from 0.4 --g-to 0.6 --steps 11");
    const RunResult d = run_cli("sweep --g-from 0.4 --g-to 0.6 --steps 11");
    CHECK(c.output == d.output);
}

TEST_CASE("--out writes the same bytes to a file") {
    const std::string path = temp_path("spectrum.csv");
    const RunResult direct = run_cli("spectrum --model jc --nmax 6");
    const RunResult filed = run_cli("spectrum --model jc --nmax 6 --out " + path);
    CHECK(filed.exit_code == 0);
    CHECK(filed.output.empty());
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == direct.output);
}

TEST_CASE("usage errors exit 2") {
    CHECK(run_cli("").exit_code == 2);
    CHECK(run_cli("spectrum").exit_code == 2);           // missing --model
    CHECK(run_cli("sweep --g-from 0.5").exit_code == 2); // missing required flags
    CHECK(run_cli("frobnicate").exit_code == 2);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const std::string kBell = BELL_CLI_PATH;

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args, const std::string& env = "")
{
    static int counter = 0;
    const fs::path dir = fs::temp_directory_path() / "bell_cli_e2e";
    fs::create_directories(dir);
    const fs::path out = dir / ("out" + std::to_string(counter++) + ".txt");
    const std::string cmd =
        env + (env.empty() ? "" : " ") + kBell + " " + args + " > " + out.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    std::ifstream in(out);
    std::ostringstream os;
    os << in.rdbuf();
    r.out = os.str();
    return r;
}

fs::path write_file(const std::string& name, const std::string& content)
{
    const fs::path dir = fs::temp_directory_path() / "bell_cli_e2e";
    fs::create_directories(dir);
    const fs::path p = dir / name;
    std::ofstream out(p);
    out << content;
    return p;
}

const std::string kChshTable =
    "1 0 | 1 0\n0 1 | 0 1\n---\n1 0 | 0 1\n0 1 | 1 0\n";
const std::string kConstant3Table =
    "1 2 | 1 0\n0 1 | 2 1\n---\n1 0 | 0 1\n2 1 | -1 0\n";
const std::string kDoubledZg2Table =
    "2 2 | 2 0\n0 2 | 2 2\n---\n2 0 | 0 2\n2 2 | 0 0\n";

}  // namespace

TEST_CASE("eval on the uniform behavior")
{
    const auto table = write_file("chsh.txt", kChshTable);
    const RunResult r = run("eval " + table.string() + " --uniform");
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out)["value"].get<double>() == doctest::Approx(2.0));
}

TEST_CASE("eval against a fixture realization")
{
    const auto table = write_file("chsh.txt", kChshTable);
    const fs::path real = fs::temp_directory_path() / "bell_cli_e2e" / "chsh_real.json";
    CHECK(run("fixture --family chsh --out " + real.string()).exit_code == 0);
    const RunResult r = run("eval " + table.string() + " --realization " + real.string());
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out)["value"].get<double>() ==
          doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("scenario guard on eval")
{
    const auto table = write_file("chsh.txt", kChshTable);
    CHECK(run("eval " + table.string() + " --uniform --scenario 2,2,2,2").exit_code == 0);
    CHECK(run("eval " + table.string() + " --uniform --scenario 2,2,3,3").exit_code == 1);
}

TEST_CASE("local-bound enumerates exactly")
{
    const auto table = write_file("chsh.txt", kChshTable);
    const RunResult r = run("local-bound " + table.string());
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["value"].get<double>() == 3.0);
    CHECK(j["exact"].get<bool>());
    CHECK(j["maximizer_count"].get<int>() == 8);
}

TEST_CASE("show renders the block layout")
{
    const auto table = write_file("chsh.txt", kChshTable);
    const RunResult r = run("show " + table.string());
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("---") != std::string::npos);
    CHECK(r.out.find('|') != std::string::npos);
}

TEST_CASE("ns-const certifies the constant-3 rewriting")
{
    const auto table = write_file("c3.txt", kConstant3Table);
    const RunResult r = run("ns-const " + table.string());
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["equivalent"].get<bool>());
    CHECK(j["k"].get<double>() == doctest::Approx(3.0));
    CHECK(j["alpha"].is_number());
}

TEST_CASE("ns-equiv certifies the doubling identity")
{
    const auto a = write_file("chsh.txt", kChshTable);
    const auto b = write_file("zg2x2.txt", kDoubledZg2Table);
    const RunResult r = run("ns-equiv " + a.string() + " " + b.string());
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["equivalent"].get<bool>());
    CHECK(j["k"].get<double>() == doctest::Approx(-3.0));
}

TEST_CASE("ow-check family verdicts and the expectation flag")
{
    const RunResult ok = run("ow-check --family chsh-xor");
    CHECK(ok.exit_code == 0);
    CHECK(json::parse(ok.out)["verdict"].get<std::string>() == "ow");

    const RunResult fail = run("ow-check --family cglmp2 --expect-ow");
    CHECK(fail.exit_code == 2);
    CHECK(json::parse(fail.out)["verdict"].get<std::string>() == "not-ow");

    // a loose tolerance flips the verdict; the env var carries it
    const RunResult loose = run("ow-check --family cglmp2 --expect-ow", "BELL_TOL=0.2");
    CHECK(loose.exit_code == 0);
    CHECK(json::parse(loose.out)["verdict"].get<std::string>() == "ow");
}

TEST_CASE("ow-check against an explicit table and realization")
{
    const auto table = write_file("chsh.txt", kChshTable);
    const fs::path real = fs::temp_directory_path() / "bell_cli_e2e" / "chsh_real.json";
    CHECK(run("fixture --family chsh --out " + real.string()).exit_code == 0);
    const RunResult r = run("ow-check " + table.string() + " --realization " +
                            real.string() + " --direction b2a");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["direction"].get<std::string>() == "bob_to_alice");
    CHECK(j["verdict"].get<std::string>() == "ow");
}

TEST_CASE("ow-search rehabilitates the cumulative form")
{
    const RunResult r = run("ow-search --family cglmp2");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j["found"].get<bool>());
    CHECK(j["report"]["verdict"].get<std::string>() == "ow");
}

TEST_CASE("gamma-solve on the tilted family")
{
    const RunResult r = run("gamma-solve --family tilted --theta 0.3");
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out)["gamma"].get<double>() == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("seesaw reaches the xor-game maximum")
{
    const auto table = write_file("chsh.txt", kChshTable);
    const RunResult r =
        run("seesaw " + table.string() + " --dims 2,2 --restarts 4 --seed 5");
    CHECK(r.exit_code == 0);
    CHECK(json::parse(r.out)["value"].get<double>() ==
          doctest::Approx(2.0 + std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("family emits parameters and tables")
{
    const RunResult r = run("family three-param --seed 3");
    CHECK(r.exit_code == 0);
    const json j = json::parse(r.out);
    CHECK(j.contains("alpha00"));
    CHECK(j.contains("table"));
    CHECK(j.contains("local_bound"));
}

TEST_CASE("scan is deterministic and all-saturating")
{
    const fs::path dir = fs::temp_directory_path() / "bell_cli_e2e";
    const fs::path a = dir / "scan_a.csv";
    const fs::path b = dir / "scan_b.csv";
    CHECK(run("scan three-param --samples 5 --seed 7 --out " + a.string()).exit_code == 0);
    CHECK(run("scan three-param --samples 5 --seed 7 --out " + b.string()).exit_code == 0);

    std::ifstream fa(a), fb(b);
    std::stringstream sa, sb;
    sa << fa.rdbuf();
    sb << fb.rdbuf();
    CHECK(sa.str() == sb.str());  // byte-identical for equal seed and config
    CHECK(sa.str().rfind("seed,alpha00,alpha01,alpha10,alpha11,value,max_gap,verdict",
                         0) == 0);
    // header + 5 rows, each saturating
    int lines = 0, ow_count = 0;
    std::istringstream is(sa.str());
    std::string line;
    while (std::getline(is, line)) {
        ++lines;
        if (line.find(",ow") != std::string::npos) ++ow_count;
    }
    CHECK(lines == 6);
    CHECK(ow_count == 5);
}

TEST_CASE("cglmp reports")
{
    const RunResult gd = run("cglmp --d 4 --game gd --expect-ow");
    CHECK(gd.exit_code == 0);
    CHECK(json::parse(gd.out)["verdict"].get<std::string>() == "ow");

    const RunResult zg = run("cglmp --d 3 --game zg --expect-ow");
    CHECK(zg.exit_code == 2);

    const RunResult table1 = run("cglmp --d 3 --report table1 --format text");
    CHECK(table1.exit_code == 0);
    CHECK(table1.out.find("(1,2)") != std::string::npos);

    const RunResult table1j = run("cglmp --d 3 --report table1");
    CHECK(table1j.exit_code == 0);
    CHECK(json::parse(table1j.out)["contexts"].size() == 6);
}

TEST_CASE("mermin reports")
{
    const RunResult ti = run("mermin --type i --expect-ow");
    CHECK(ti.exit_code == 0);
    const json j = json::parse(ti.out);
    CHECK(j["verdict"].get<std::string>() == "ow");
    CHECK(j["direction"].get<std::string>() == "one_to_two");

    const RunResult tii = run("mermin --type ii");
    CHECK(tii.exit_code == 0);
    CHECK(json::parse(tii.out)["contexts"].size() == 16);
}

TEST_CASE("fixture families emit loadable documents")
{
    for (const std::string fam : {"chsh", "ghz"}) {
        const RunResult r = run("fixture --family " + fam);
        CHECK(r.exit_code == 0);
        const json j = json::parse(r.out);
        CHECK(j.contains("dims"));
        CHECK(j.contains("state"));
        CHECK(j.contains("measurements"));
    }
    const RunResult tilted = run("fixture --family tilted --theta 0.5");
    CHECK(tilted.exit_code == 0);
    const RunResult cglmp = run("fixture --family cglmp --d 5");
    CHECK(json::parse(cglmp.out)["dims"][0].get<int>() == 5);
}

TEST_CASE("usage errors exit with code 1")
{
    CHECK(run("no-such-subcommand").exit_code == 1);
    CHECK(run("ow-check --family no-such-family").exit_code == 1);
    CHECK(run("eval /nonexistent/table.txt --uniform").exit_code == 1);
    CHECK(run("local-bound").exit_code == 1);
}

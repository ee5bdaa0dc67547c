// End-to-end checks of the installed CLI surface: exit codes, file output,
// and determinism across worker counts.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

const std::string cli = SPINECHO_CLI_PATH;

int run(const std::string& args) {
    const std::string cmd = cli + " " + args + " 2>/dev/null";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct TempFile {
    explicit TempFile(std::string p) : path(std::move(p)) {}
    ~TempFile() { std::remove(path.c_str()); }
    std::string path;
};

}  // namespace

TEST_CASE("successful run writes the CSV and exits 0") {
    unsetenv("ECHO_THREADS");
    TempFile out("cli_ok.csv");
    const int rc = run("le --lambda 1.0 --t-lo 0 --t-hi 0.5 --t-step 0.1 --sizes 20 --output " +
                       out.path);
    CHECK(rc == 0);
    const std::string text = slurp(out.path);
    CHECK(text.rfind("experiment,gamma,lambda,n_sites,delta,mu,nu,g,t,value,flag\n", 0) == 0);
    CHECK(text.find("le_time_lambda,1,1,20,") != std::string::npos);
}

TEST_CASE("config errors exit 1") {
    CHECK(run("le --sizes 101 --lambda 1.0 --t-hi 1 --t-lo 0 --t-step 0.5") == 1);

    TempFile cfg("cli_bad.json");
    {
        std::ofstream os(cfg.path);
        os << "{\"experiment\":\"le_time_lambda\",\"chain\":{\"sizes\":[7],\"junk\":1}}";
    }
    CHECK(run("run " + cfg.path) == 1);
    CHECK(run("run does_not_exist.json") == 1);
    CHECK(run("") == 1);  // missing subcommand
}

TEST_CASE("numerical errors exit 2") {
    // thermodynamic d beta/d lambda diverges logarithmically at lambda = 1
    CHECK(run("berry --derivative --gammas 1.0 --lambda 1.0 --sizes 0") == 2);
}

TEST_CASE("help exits 0") {
    CHECK(run("--help") == 0);
    CHECK(run("le --help") == 0);
}

TEST_CASE("thread count does not change the bytes") {
    unsetenv("ECHO_THREADS");
    TempFile a("cli_t1.csv"), b("cli_t4.csv");
    const std::string common =
        "le --lambda-lo 0.8 --lambda-hi 1.2 --lambda-step 0.05 --sizes 30 "
        "--t-lo 0 --t-hi 1 --t-step 0.05 --delta 0.05 ";
    CHECK(run(common + "--threads 1 --output " + a.path) == 0);
    CHECK(run(common + "--threads 4 --output " + b.path) == 0);
    const std::string ta = slurp(a.path);
    CHECK(!ta.empty());
    CHECK(ta == slurp(b.path));
}

TEST_CASE("json format emits a parseable array") {
    unsetenv("ECHO_THREADS");
    TempFile out("cli_json.json");
    CHECK(run("oracle --instances 5 --seed 7 --format json --output " + out.path) == 0);
    const std::string text = slurp(out.path);
    CHECK(text.rfind("[", 0) == 0);
    CHECK(text.find("\"experiment\":\"oracle_check\"") != std::string::npos);
}

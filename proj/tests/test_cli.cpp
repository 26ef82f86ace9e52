#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
    int exit_code{};
    std::string output;
};

std::string cli_path() {
    const char* path = std::getenv("COINOPT_CLI");
    REQUIRE_MESSAGE(path != nullptr, "COINOPT_CLI must point at the built binary");
    return path;
}

RunResult run(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult res;
    char buf[4096];
    while (std::size_t n = std::fread(buf, 1, sizeof(buf), pipe)) res.output.append(buf, n);
    const int status = pclose(pipe);
    res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return res;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("price prints the anchor value") {
    const auto r = run("price --class quanto-inverse --side call --spot 30000 --strike 25000 "
                       "--vol 2.0 --rate 0 --tau 10d --quanto-fix 25000");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "4123.757944201624\n");
}

TEST_CASE("zero duration prints the payoff") {
    const auto r = run("price --class standard --side call --spot 30000 --strike 25000 "
                       "--vol 2.0 --rate 0 --tau 0d");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "5000\n");
}

TEST_CASE("payoff subcommand") {
    const auto r = run("payoff --class quanto-inverse --side put --strike 9000 "
                       "--quanto-fix 9000 --settle 3500");
    CHECK(r.exit_code == 0);
    CHECK(r.output.substr(0, 8) == "14142.85");
}

TEST_CASE("greeks subcommand emits a csv row") {
    const auto r = run("greeks --class inverse --side call --spot 30000 --strike 25000 "
                       "--vol 0.8 --rate 0.01 --tau 30d");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("price,delta,gamma,vega,volga,vanna,theta\n") == 0);
}

TEST_CASE("validation failures exit with code 2") {
    CHECK(run("price --class swap --side call --spot 1 --strike 1 --vol 1 --rate 0 --tau 1d")
              .exit_code == 2);
    CHECK(run("price --class standard --side call --spot 1 --strike 1 --vol 1 --rate 0 "
              "--tau 1w").exit_code == 2);
    CHECK(run("price --class quanto-inverse --side call --spot 1 --strike 1 --vol 1 --rate 0 "
              "--tau 1d").exit_code == 2);  // missing fix
    CHECK(run("nonsense").exit_code == 2);
}

TEST_CASE("table1 reproduces the displayed cells") {
    const auto r = run("table1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("BTC,call,quanto-inverse,30000,3750,USD") != std::string::npos);
    CHECK(r.output.find("BTC,put,quanto-inverse,10000,33750,USD") != std::string::npos);
    CHECK(r.output.find("ETH,put,quanto-inverse,500,5000,USD") != std::string::npos);
    CHECK(r.output.find("BTC,call,inverse,40000,0.375,BTC") != std::string::npos);
}

TEST_CASE("verify and hedge are deterministic") {
    const std::string verify_args = "verify --paths 50000 --grid 5 --seed 11";
    const auto v1 = run(verify_args + " --workers 1");
    const auto v2 = run(verify_args + " --workers 8");
    CHECK(v1.exit_code == 0);
    CHECK(v1.output == v2.output);

    const std::string hedge_args =
        "hedge --class quanto-inverse --side call --spot 25000 --strike 25000 --vol 0.75 "
        "--rate 0 --tau 30d --quanto-fix 25000 --rho 0.9 --rebalance 1d --paths 500 --seed 3";
    const auto h1 = run(hedge_args + " --workers 1");
    const auto h2 = run(hedge_args + " --workers 4");
    CHECK(h1.exit_code == 0);
    CHECK(h1.output == h2.output);
    CHECK(h1.output.find("mean_pnl,std_pnl") == 0);
}

TEST_CASE("surface and curves write csv grids") {
    const std::string surface_out = "cli_test_surface.csv";
    const auto s = run("surface --class quanto-inverse --side call --strike 25000 "
                       "--quanto-fix 25000 --rate 0 --spot-grid 10000:60000:11 "
                       "--tau 10d,90d --vol 0.75 --out " + surface_out);
    CHECK(s.exit_code == 0);
    const auto surface = slurp(surface_out);
    CHECK(surface.find("class,side,strike,vol,tau_years,spot,price\n") == 0);
    // header + 11 spots x 2 maturities x 1 vol
    CHECK(std::count(surface.begin(), surface.end(), '\n') == 23);

    const std::string curves_out = "cli_test_curves.csv";
    const auto c = run("curves --out " + curves_out);
    CHECK(c.exit_code == 0);
    CHECK(slurp(curves_out).find("class,side,maturity_days,strike,") == 0);
    std::remove(surface_out.c_str());
    std::remove(curves_out.c_str());
}

TEST_CASE("chain pricing end to end") {
    const std::string in_path = "cli_test_chain_in.csv";
    const std::string out_path = "cli_test_chain_out.csv";
    {
        std::ofstream in(in_path);
        in << "instrument,class,spot,vol,rate,quanto_fix,observed_price\n"
           << "BTC-30SEP22-25000-C,quanto-inverse,30000,2.0,0,25000,\n";
    }
    const auto r = run("chain price --in " + in_path + " --out " + out_path +
                       " --asof 2022-09-20");
    CHECK(r.exit_code == 0);
    const auto out = slurp(out_path);
    CHECK(out.find("instrument,price,delta,gamma,vega,volga,vanna,theta,implied_vol\n") == 0);
    CHECK(out.find("BTC-30SEP22-25000-C,4123.757944201624") != std::string::npos);

    CHECK(run("chain price --in missing_file.csv --out " + out_path).exit_code == 2);
    std::remove(in_path.c_str());
    std::remove(out_path.c_str());
}

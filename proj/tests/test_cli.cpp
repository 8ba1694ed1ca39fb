#include "freefft/cli.hpp"

#include <json.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace freefft;
using freefft::cli::run;

namespace {

namespace fs = std::filesystem;

cli::RunResult go(std::vector<std::string> args)
{
    args.insert(args.begin(), "freefft");
    return run(args);
}

fs::path write_temp(const std::string& name, const std::string& body)
{
    auto p = fs::temp_directory_path() / name;
    std::ofstream(p) << body;
    return p;
}

} // namespace

TEST(Cli, CertifyFftExample)
{
    auto r = go({"certify-fft", "-m", "2", "-n", "2", "-t", "1", "--F", "preset:identity", "-k", "2", "--format", "json"});
    EXPECT_EQ(r.exit_code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    EXPECT_EQ(j["schema"], 1);
    EXPECT_EQ(j["status"], "certified");
    ASSERT_EQ(j["cases"].size(), 1u);
    EXPECT_EQ(j["cases"][0]["dim_coinv"], 16);
    EXPECT_EQ(j["cases"][0]["dim_theta"], 16);
    EXPECT_EQ(j["cases"][0]["bidegree"], nlohmann::json::array({2, 2}));
    EXPECT_EQ(j["params"]["k"], 2);
    EXPECT_EQ(j["params"]["d"], "auto");
}

TEST(Cli, ClassicalExample)
{
    auto r = go({"classical", "-m", "2", "-n", "2", "-t", "1", "--max-degree", "2", "--format", "json"});
    EXPECT_EQ(r.exit_code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    bool found = false;
    for (const auto& c : j["cases"])
        if (c["label"] == "fft2" && c["bidegree"][0] == 2) {
            EXPECT_EQ(c["dim_coinv"], 1);
            found = true;
        }
    EXPECT_TRUE(found);
}

TEST(Cli, SingularFileRejected)
{
    auto p = write_temp("freefft_singular.json", R"([["1","2"],["2","4"]])");
    auto r = go({"certify-fft", "-t", "2", "--F", "file:" + p.string(), "-k", "1"});
    EXPECT_EQ(r.exit_code, 3);
    EXPECT_NE(r.err.find("singular"), std::string::npos);
    fs::remove(p);
}

TEST(Cli, MalformedF)
{
    auto bad = write_temp("freefft_bad.json", R"([["1","x"],["0","1"]])");
    EXPECT_EQ(go({"certify-fft", "-t", "2", "--F", "file:" + bad.string(), "-k", "1"}).exit_code, 3);
    auto notjson = write_temp("freefft_notjson.json", "[[1,");
    EXPECT_EQ(go({"certify-fft", "-t", "2", "--F", "file:" + notjson.string(), "-k", "1"}).exit_code, 3);
    auto wrong = write_temp("freefft_wrong.json", R"([["1"]])");
    EXPECT_EQ(go({"certify-fft", "-t", "2", "--F", "file:" + wrong.string(), "-k", "1"}).exit_code, 3);
    EXPECT_EQ(go({"certify-fft", "-t", "2", "--F", "file:/nonexistent/f.json", "-k", "1"}).exit_code, 3);
    EXPECT_EQ(go({"certify-fft", "-t", "2", "--F", "preset:nope", "-k", "1"}).exit_code, 3);
    EXPECT_EQ(go({"certify-fft", "-t", "2", "--F", "preset:diag:1,0", "-k", "1"}).exit_code, 3);
    for (const auto& p : {bad, notjson, wrong})
        fs::remove(p);
}

TEST(Cli, RationalFFile)
{
    auto p = write_temp("freefft_rat.json", R"([["1/2","0"],["0","-3"]])");
    auto r = go({"certify-fft", "-t", "2", "--F", "file:" + p.string(), "-k", "1", "--format", "json"});
    EXPECT_EQ(r.exit_code, 0) << r.err;
    EXPECT_EQ(nlohmann::json::parse(r.out)["params"]["F"], nlohmann::json::parse(R"([["1/2","0"],["0","-3"]])"));
    fs::remove(p);
}

TEST(Cli, UsageErrors)
{
    EXPECT_EQ(go({}).exit_code, 3);
    EXPECT_EQ(go({"bogus"}).exit_code, 3);
    EXPECT_EQ(go({"certify-fft", "-m", "0", "-k", "1"}).exit_code, 3);
    EXPECT_EQ(go({"certify-fft", "-k", "-1"}).exit_code, 3);
    EXPECT_EQ(go({"certify-fft", "-k", "2", "-d", "3"}).exit_code, 3);
    EXPECT_EQ(go({"certify-fft", "-k", "1", "-d", "many"}).exit_code, 3);
    EXPECT_EQ(go({"certify-fft", "-k", "1", "--format", "xml"}).exit_code, 3);
}

TEST(Cli, HelpExitsZero)
{
    auto r = go({"--help"});
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_NE(r.out.find("certify-fft"), std::string::npos);
    auto s = go({"certify-fft", "--help"});
    EXPECT_EQ(s.exit_code, 0);
    EXPECT_NE(s.out.find("i+j+2"), std::string::npos);
}

TEST(Cli, DeterministicJson)
{
    std::vector<std::string> args{"coinvariants", "-m", "2", "-n", "1", "-t", "2", "--F", "preset:jordan",
                                  "--max-degree", "2", "--seed", "7", "--format", "json"};
    auto a = go(args);
    auto b = go(args);
    EXPECT_EQ(a.exit_code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    args.push_back("--jobs");
    args.push_back("4");
    EXPECT_EQ(go(args).out, a.out);
}

TEST(Cli, CoinvariantsSweepCoversOffDiagonal)
{
    auto r = go({"coinvariants", "-m", "1", "-n", "1", "-t", "2", "--max-degree", "2", "--format", "json"});
    EXPECT_EQ(r.exit_code, 0) << r.err;
    auto j = nlohmann::json::parse(r.out);
    std::size_t off = 0;
    for (const auto& c : j["cases"]) {
        EXPECT_TRUE(c["certified"].get<bool>());
        if (c["bidegree"][0] != c["bidegree"][1]) {
            ++off;
            EXPECT_EQ(c["dim_coinv"], 0);
        }
    }
    EXPECT_GT(off, 0u);
}

TEST(Cli, OtherCommands)
{
    EXPECT_EQ(go({"theta-rank", "-m", "2", "-n", "2", "-t", "2", "-k", "2"}).exit_code, 0);
    EXPECT_EQ(go({"intertwiners", "-t", "2", "-i", "1", "-j", "1"}).exit_code, 0);
    EXPECT_EQ(go({"hopf-check", "-t", "2", "--F", "preset:diag:1,2"}).exit_code, 0);
    EXPECT_EQ(go({"correspondence", "-m", "2", "-n", "1", "-t", "2", "-k", "1"}).exit_code, 0);
}

TEST(Cli, TextAndCsv)
{
    auto text = go({"theta-rank", "-m", "2", "-n", "2", "-t", "1", "-k", "2"});
    EXPECT_EQ(text.exit_code, 0);
    EXPECT_NE(text.out.find("certified"), std::string::npos);
    auto csv = go({"theta-rank", "-m", "2", "-n", "2", "-t", "1", "--max-degree", "2", "--format", "csv"});
    EXPECT_EQ(csv.exit_code, 0);
    std::size_t lines = 0;
    for (char c : csv.out)
        lines += c == '\n';
    EXPECT_EQ(lines, 4u); // header + k = 0, 1, 2
    EXPECT_EQ(csv.out.rfind("label,", 0), 0u);
}

TEST(Cli, CacheDirPersists)
{
    auto dir = fs::temp_directory_path() / "freefft_cli_cache";
    fs::remove_all(dir);
    fs::create_directories(dir);
    ::setenv("COINV_CACHE_DIR", dir.string().c_str(), 1);
    auto r = go({"hopf-check", "-t", "2", "--F", "preset:diag:1,5"});
    ::unsetenv("COINV_CACHE_DIR");
    EXPECT_EQ(r.exit_code, 0) << r.err;
    EXPECT_FALSE(fs::is_empty(dir));
    fs::remove_all(dir);
}

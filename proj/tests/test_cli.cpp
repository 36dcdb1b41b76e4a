// Runs the built hmtool and checks output and exit status.

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run hmtool(const std::string& args, const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + "\"" HMTOOL_PATH "\" " + args + " 2>/dev/null";
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int st = pclose(p);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

nlohmann::json json_of(const Run& r) { return nlohmann::json::parse(r.out); }

std::vector<std::string> column(const nlohmann::json& table, std::size_t c) {
    std::vector<std::string> v;
    for (auto& row : table["rows"]) v.push_back(row[c]["value"]);
    return v;
}

}  // namespace

TEST(Cli, DimsMonomial) {
    auto r = hmtool("dims --poly 'z*w' --m-max 6 --format json");
    ASSERT_EQ(r.status, 0);
    auto j = json_of(r);
    EXPECT_EQ(column(j["tables"][0], 1), (std::vector<std::string>{"1", "2", "3", "3", "3", "3", "3"}));
    EXPECT_TRUE(j["pass"]);
}

TEST(Cli, DimsFourTermExample) {
    auto r = hmtool("dims --poly 'z*w^5+z^2*w^3+z^3*w^5+z^5*w' --m-min 30 --m-max 32 --format json");
    ASSERT_EQ(r.status, 0);
    EXPECT_EQ(column(json_of(r)["tables"][0], 1), (std::vector<std::string>{"6", "6", "6"}));
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(hmtool("dims --poly 0").status, 2);
    EXPECT_EQ(hmtool("dims --poly 'z +* w'").status, 2);
    EXPECT_EQ(hmtool("dims").status, 2);
    EXPECT_EQ(hmtool("nosuchcommand").status, 2);
    EXPECT_EQ(hmtool("dims --poly z --format xml").status, 2);
    EXPECT_EQ(hmtool("phi-dc --theta1 2 --theta2 1").status, 2);
}

TEST(Cli, LevelCeiling) {
    EXPECT_EQ(hmtool("dims --poly z --m-max 61").status, 2);
    EXPECT_EQ(hmtool("dims --poly z --m-max 10", "HM_LEVEL_CEILING=5").status, 2);
    EXPECT_EQ(hmtool("dims --poly z --m-max 10 --level-ceiling 12", "HM_LEVEL_CEILING=5").status, 0);
    EXPECT_EQ(hmtool("dims --poly z --m-max 3", "HM_LEVEL_CEILING=abc").status, 2);
}

TEST(Cli, GradedExpect) {
    EXPECT_EQ(hmtool("graded --poly 'z^2-2*z*w+w^2' --expect graded").status, 0);
    EXPECT_EQ(hmtool("graded --poly 'z^2-2*z*w+w^2' --expect not-graded").status, 1);
    EXPECT_EQ(hmtool("graded --poly 'w-1/2' --level-max 8 --expect not-graded").status, 0);
    EXPECT_EQ(hmtool("graded --poly w --expect maybe").status, 2);
}

TEST(Cli, Commutators) {
    auto refused = hmtool("commutators --poly 'w-1/2' --level-max 4 --format json");
    EXPECT_EQ(refused.status, 3);
    EXPECT_EQ(json_of(refused)["tables"][0]["name"], "certificate");
    EXPECT_EQ(hmtool("commutators --poly w --expect zero").status, 0);
    EXPECT_EQ(hmtool("commutators --poly w --expect nonzero").status, 1);
    EXPECT_EQ(hmtool("commutators --poly 'z^2' --pair zz --level-max 6 --expect nonzero").status, 0);
    EXPECT_EQ(hmtool("commutators --poly 'w-1/2' --level-max 4 --levelwise").status, 0);
    EXPECT_EQ(hmtool("commutators --poly w --pair zx").status, 2);
}

TEST(Cli, PhiDc) {
    auto r = hmtool("phi-dc --theta1 'z^2' --theta2 1 --trunc 12 --expect fail");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("defect = -Q1 f exactly"), std::string::npos);
    EXPECT_EQ(hmtool("phi-dc --theta1 z --theta2 w --trunc 12 --expect pass").status, 0);
    EXPECT_EQ(hmtool("phi-dc --theta1 z --theta2 w --trunc 12 --expect fail").status, 1);
    EXPECT_EQ(hmtool("phi-dc --theta1 z --theta2 w --trunc 100").status, 2);
}

TEST(Cli, ThetaA) {
    auto r = hmtool("theta-a --a 1/2 --format json");
    EXPECT_EQ(r.status, 0);
    auto j = json_of(r);
    EXPECT_EQ(j["inputs"]["trunc"], "24");
    EXPECT_EQ(json_of(hmtool("theta-a --a 1/2 --format json", "HM_DEFAULT_TRUNC=16"))["inputs"]["trunc"], "16");
    EXPECT_EQ(hmtool("theta-a --a 3/2").status, 2);
}

TEST(Cli, VerifyPaperSuite) {
    auto r = hmtool("verify-paper --suite transference");
    EXPECT_EQ(r.status, 0);
    EXPECT_NE(r.out.find("PASS 5:"), std::string::npos);
    EXPECT_EQ(hmtool("verify-paper --suite nonsense").status, 2);
}

TEST(Cli, CsvAndDecimals) {
    auto r = hmtool("dims --poly 'z+w' --m-max 2 --format csv");
    EXPECT_EQ(r.status, 0);
    EXPECT_EQ(r.out.rfind("m,dim,predicted,agree\r\n", 0), 0u);
    auto d = hmtool("theta-a --a 1/2 --decimals 3 --format json");
    auto j = json_of(d);
    EXPECT_EQ(j["tables"][0]["rows"][1][1]["display"], "0.750");
}

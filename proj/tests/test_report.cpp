#include <hm/report.hpp>

#include <gtest/gtest.h>

using namespace hm;

namespace {

Report sample() {
    Report r;
    r.command = "dims";
    r.inputs = {{"poly", "z*w"}, {"m-max", "3"}};
    r.notes = {"levels with no closed form are marked -"};
    Table t{"slices", {"m", "computed", "weight", "bound"}, {}};
    t.rows.push_back({exact_cell(0L), exact_cell(1L), exact_cell(GR(mpq_class(1, 3))), bounded_cell(1.5e-7)});
    t.rows.push_back({exact_cell(1L), text_cell("a, \"quoted\" label"), exact_cell(GR(mpq_class(2), mpq_class(-1, 4))),
                      bounded_cell(0)});
    r.tables.push_back(t);
    r.checks.push_back({"1", "agreement", true, ""});
    r.checks.push_back({"2", "second, with comma", false, "line one\nline two"});
    return r;
}

}  // namespace

TEST(Report, JsonRoundTrip) {
    Report r = sample();
    EXPECT_EQ(report_from_json(to_json(r)), r);
    attach_decimals(r, 4);
    auto back = report_from_json(nlohmann::ordered_json::parse(to_json(r).dump()));
    EXPECT_EQ(back, r);
}

TEST(Report, JsonShape) {
    auto j = to_json(sample());
    EXPECT_EQ(j["command"], "dims");
    EXPECT_EQ(j["inputs"]["poly"], "z*w");
    EXPECT_EQ(j["pass"], false);
    EXPECT_EQ(j["tables"][0]["rows"][0][3]["tag"], "bounded");
    EXPECT_EQ(j["tables"][0]["rows"][0][2]["value"], "1/3");
    EXPECT_FALSE(j["tables"][0]["rows"][0][2].contains("display"));
    // key order follows insertion
    std::vector<std::string> keys;
    for (auto& [k, v] : j.items()) keys.push_back(k);
    EXPECT_EQ(keys, (std::vector<std::string>{"command", "inputs", "notes", "tables", "checks", "pass"}));
}

TEST(Report, DecimalsAreLabelledDisplayOnly) {
    Report r = sample();
    attach_decimals(r, 4);
    auto& row0 = r.tables[0].rows[0];
    ASSERT_TRUE(row0[2].display);
    EXPECT_EQ(*row0[2].display, "0.3333");
    EXPECT_EQ(row0[2].value, "1/3");  // exact value untouched
    EXPECT_FALSE(row0[1].display);    // integers get no rendering
    EXPECT_EQ(*r.tables[0].rows[1][2].display, "2.0000-0.2500*I");
    EXPECT_NE(r.notes.back().find("display-only"), std::string::npos);
}

TEST(Report, TagNames) {
    for (CellTag t : {CellTag::exact, CellTag::bounded, CellTag::text, CellTag::display}) EXPECT_EQ(parse_tag(tag_name(t)), t);
    EXPECT_THROW(parse_tag("fuzzy"), std::invalid_argument);
}

TEST(Report, CsvQuotingAndBlocks) {
    std::string csv = render_csv(sample());
    EXPECT_EQ(csv.rfind("m,computed,weight,bound\r\n", 0), 0u);
    EXPECT_NE(csv.find("\"a, \"\"quoted\"\" label\""), std::string::npos);
    EXPECT_NE(csv.find("\r\n\r\nid,claim,result,detail\r\n"), std::string::npos);
    EXPECT_NE(csv.find("2,\"second, with comma\",fail,\"line one\nline two\"\r\n"), std::string::npos);
    EXPECT_EQ(csv_field("plain"), "plain");
}

TEST(Report, TableRendering) {
    std::string s = render_table(sample());
    EXPECT_EQ(s.rfind("dims\n  poly: z*w\n", 0), 0u);
    EXPECT_NE(s.find("<= 1.500000e-07"), std::string::npos);
    EXPECT_NE(s.find("PASS 1: agreement\n"), std::string::npos);
    EXPECT_NE(s.find("FAIL 2: second, with comma -- line one"), std::string::npos);
    EXPECT_NE(s.find("note: levels with no closed form"), std::string::npos);
}

#pragma once

// Command reports: one structure rendered as an aligned table, CSV or JSON.

#include <hm/parse.hpp>

#include <nlohmann/json.hpp>

#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace hm {

// exact: rational or Gaussian rational text, or an integer.
// bounded: a certified floating upper bound.
// text: a label, verdict or rendered polynomial.
// display: a decimal rendering of an exact value, never used for verdicts.
enum class CellTag { exact, bounded, text, display };

inline const char* tag_name(CellTag t) {
    switch (t) {
        case CellTag::exact: return "exact";
        case CellTag::bounded: return "bounded";
        case CellTag::display: return "display";
        default: return "text";
    }
}

inline CellTag parse_tag(const std::string& s) {
    if (s == "exact") return CellTag::exact;
    if (s == "bounded") return CellTag::bounded;
    if (s == "display") return CellTag::display;
    if (s == "text") return CellTag::text;
    throw std::invalid_argument("unknown cell tag '" + s + "'");
}

struct Cell {
    std::string value;
    CellTag tag = CellTag::text;
    std::optional<std::string> display;  // decimal rendering attached under --decimals

    friend bool operator==(const Cell&, const Cell&) = default;
};

inline Cell exact_cell(long v) { return {std::to_string(v), CellTag::exact, std::nullopt}; }
inline Cell exact_cell(const GR& v) { return {v.str(), CellTag::exact, std::nullopt}; }
inline Cell exact_cell(const mpq_class& v) { return {v.get_str(), CellTag::exact, std::nullopt}; }
inline Cell text_cell(std::string s) { return {std::move(s), CellTag::text, std::nullopt}; }
inline Cell bool_cell(bool b) { return text_cell(b ? "true" : "false"); }
inline Cell bounded_cell(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6e", v);
    return {buf, CellTag::bounded, std::nullopt};
}

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    friend bool operator==(const Table&, const Table&) = default;
};

struct Check {
    std::string id;
    std::string claim;
    bool pass = false;
    std::string detail;

    friend bool operator==(const Check&, const Check&) = default;
};

struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> inputs;
    std::vector<std::string> notes;
    std::vector<Table> tables;
    std::vector<Check> checks;

    bool all_pass() const {
        for (auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    friend bool operator==(const Report&, const Report&) = default;
};

// Decimal rendering of exact cells, labelled display-only.
inline std::string decimal_text(const std::string& exact, int digits) {
    GR v;
    try {
        HElement e = parse_element(exact, ParseMode::polynomial);
        if (e.size() > 1 || (e.size() == 1 && !(e.terms().begin()->first == MonomialIndex{0, 0}))) return {};
        v = e.coeff({0, 0});
    } catch (const ParseError&) {
        return {};
    }
    char buf[80];
    if (v.is_real()) std::snprintf(buf, sizeof buf, "%.*f", digits, v.real_double());
    else std::snprintf(buf, sizeof buf, "%.*f%+.*f*I", digits, v.real_double(), digits, v.imag_double());
    return buf;
}

inline void attach_decimals(Report& r, int digits) {
    for (auto& t : r.tables)
        for (auto& row : t.rows)
            for (auto& c : row)
                if (c.tag == CellTag::exact && c.value.find('/') != std::string::npos) {
                    auto d = decimal_text(c.value, digits);
                    if (!d.empty()) c.display = d;
                }
    r.notes.push_back("decimal renderings are display-only; verdicts use the exact values");
}

// ---- JSON ----

inline nlohmann::ordered_json to_json(const Cell& c) {
    nlohmann::ordered_json j{{"value", c.value}, {"tag", tag_name(c.tag)}};
    if (c.display) j["display"] = *c.display;
    return j;
}

inline nlohmann::ordered_json to_json(const Report& r) {
    using json = nlohmann::ordered_json;
    json j;
    j["command"] = r.command;
    j["inputs"] = json::object();
    for (auto& [k, v] : r.inputs) j["inputs"][k] = v;
    j["notes"] = r.notes;
    j["tables"] = json::array();
    for (auto& t : r.tables) {
        json jt{{"name", t.name}, {"columns", t.columns}, {"rows", json::array()}};
        for (auto& row : t.rows) {
            json jr = json::array();
            for (auto& c : row) jr.push_back(to_json(c));
            jt["rows"].push_back(jr);
        }
        j["tables"].push_back(jt);
    }
    j["checks"] = json::array();
    for (auto& c : r.checks) j["checks"].push_back({{"id", c.id}, {"claim", c.claim}, {"pass", c.pass}, {"detail", c.detail}});
    j["pass"] = r.all_pass();
    return j;
}

inline Report report_from_json(const nlohmann::ordered_json& j) {
    Report r;
    r.command = j.at("command").get<std::string>();
    for (auto& [k, v] : j.at("inputs").items()) r.inputs.emplace_back(k, v.get<std::string>());
    r.notes = j.at("notes").get<std::vector<std::string>>();
    for (auto& jt : j.at("tables")) {
        Table t;
        t.name = jt.at("name").get<std::string>();
        t.columns = jt.at("columns").get<std::vector<std::string>>();
        for (auto& jr : jt.at("rows")) {
            std::vector<Cell> row;
            for (auto& jc : jr) {
                Cell c{jc.at("value").get<std::string>(), parse_tag(jc.at("tag").get<std::string>()), std::nullopt};
                if (jc.contains("display")) c.display = jc["display"].get<std::string>();
                row.push_back(c);
            }
            t.rows.push_back(row);
        }
        r.tables.push_back(t);
    }
    for (auto& jc : j.at("checks"))
        r.checks.push_back({jc.at("id").get<std::string>(), jc.at("claim").get<std::string>(), jc.at("pass").get<bool>(),
                            jc.at("detail").get<std::string>()});
    return r;
}

// ---- text renderings ----

inline std::string cell_text(const Cell& c) {
    std::string s = c.value;
    if (c.tag == CellTag::bounded) s = "<= " + s;
    if (c.display) s += " (~" + *c.display + ")";
    return s;
}

inline std::string render_table(const Report& r) {
    std::ostringstream os;
    os << r.command << "\n";
    for (auto& [k, v] : r.inputs) os << "  " << k << ": " << v << "\n";
    for (auto& t : r.tables) {
        os << "\n" << t.name << "\n";
        std::vector<std::size_t> w(t.columns.size());
        for (std::size_t c = 0; c < t.columns.size(); ++c) w[c] = t.columns[c].size();
        for (auto& row : t.rows)
            for (std::size_t c = 0; c < row.size() && c < w.size(); ++c) w[c] = std::max(w[c], cell_text(row[c]).size());
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t c = 0; c < cells.size(); ++c) {
                os << "  " << cells[c];
                if (c + 1 < cells.size()) os << std::string(w[c] - cells[c].size(), ' ');
            }
            os << "\n";
        };
        line(t.columns);
        for (auto& row : t.rows) {
            std::vector<std::string> cells;
            for (auto& c : row) cells.push_back(cell_text(c));
            line(cells);
        }
    }
    if (!r.checks.empty()) os << "\n";
    for (auto& c : r.checks) {
        os << (c.pass ? "PASS " : "FAIL ") << c.id << ": " << c.claim;
        if (!c.detail.empty()) os << " -- " << c.detail;
        os << "\n";
    }
    for (auto& n : r.notes) os << "note: " << n << "\n";
    return os.str();
}

inline std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

// One CSV block per table, separated by blank lines. Checks become a final table.
inline std::string render_csv(const Report& r) {
    std::ostringstream os;
    bool first = true;
    auto block = [&](const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) {
        if (!first) os << "\r\n";
        first = false;
        for (std::size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << csv_field(header[c]);
        os << "\r\n";
        for (auto& row : rows) {
            for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << csv_field(row[c]);
            os << "\r\n";
        }
    };
    for (auto& t : r.tables) {
        std::vector<std::vector<std::string>> rows;
        for (auto& row : t.rows) {
            std::vector<std::string> cells;
            for (auto& c : row) cells.push_back(c.display ? c.value + " (~" + *c.display + ")" : c.value);
            rows.push_back(cells);
        }
        block(t.columns, rows);
    }
    if (!r.checks.empty()) {
        std::vector<std::vector<std::string>> rows;
        for (auto& c : r.checks) rows.push_back({c.id, c.claim, c.pass ? "pass" : "fail", c.detail});
        block({"id", "claim", "result", "detail"}, rows);
    }
    return os.str();
}

}  // namespace hm

#include <doctest.h>

#include <json.hpp>
#include <sstream>

#include "tbl/report.hpp"

using namespace tbl;
using nlohmann::json;

namespace {

std::vector<VerificationReport> sample() {
    SuiteOptions o;
    o.pattern = "T2_9";
    o.threads = 1;
    auto rs = run_suite(o);
    IdentityCase bad;
    bad.theorem_id = "T2_1";
    bad.q = 5;
    bad.char_index = 2;
    bad.k = 0;
    bad.nu = 0.3;
    const auto extra = run_cases({bad});
    rs.insert(rs.end(), extra.begin(), extra.end());
    return rs;
}

json strip_times(json j) {
    if (j.is_object()) {
        j.erase("wall_ms");
        for (auto& [k, v] : j.items()) v = strip_times(v);
    } else if (j.is_array()) {
        for (auto& v : j) v = strip_times(v);
    }
    return j;
}

}  // namespace

TEST_CASE("record fields") {
    const auto rs = sample();
    REQUIRE(rs.size() >= 4);
    const auto j = json::parse(report_record(rs[0]));
    for (const char* key : {"theorem_id", "params", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_err", "rel_err",
                            "tolerance", "pass", "terms", "wall_ms"})
        CHECK(j.contains(key));
    CHECK(j["theorem_id"] == "T2_9");
    CHECK(j["params"]["q"].is_number_integer());
    CHECK(j["params"].contains("a"));
    CHECK(j["params"].contains("x"));
    CHECK_FALSE(j["params"].contains("alpha"));
    CHECK(j["terms"]["lhs"].get<long long>() > 0);
    CHECK(j["pass"].get<bool>() == rs[0].pass);
    CHECK(j["rel_err"].get<double>() == rs[0].rel_err);
    CHECK_FALSE(j.contains("error"));

    const auto e = json::parse(report_record(rs.back()));
    CHECK(e["pass"] == false);
    CHECK(e["error"].get<std::string>().find("odd primitive") != std::string::npos);
}

TEST_CASE("jsonl has one parseable record per line") {
    const auto rs = sample();
    std::ostringstream os;
    write_jsonl(os, rs);
    std::istringstream is(os.str());
    std::string line;
    size_t n = 0;
    while (std::getline(is, line)) {
        const auto j = json::parse(line);
        CHECK(j["theorem_id"] == rs[n].input.theorem_id);
        ++n;
    }
    CHECK(n == rs.size());
}

TEST_CASE("json document and summary") {
    const auto rs = sample();
    std::ostringstream os;
    write_json(os, rs);
    const auto j = json::parse(os.str());
    CHECK(j["cases"].size() == rs.size());
    const auto s = summarize(rs);
    CHECK(j["summary"]["total"] == s.total);
    CHECK(j["summary"]["passed"] == s.passed);
    CHECK(s.total == s.passed + s.failed);
    CHECK(s.errored == 1);
    CHECK(s.failed >= 1);
}

TEST_CASE("output is deterministic apart from timings") {
    std::ostringstream a, b;
    write_json(a, sample());
    write_json(b, sample());
    CHECK(strip_times(json::parse(a.str())) == strip_times(json::parse(b.str())));
}

TEST_CASE("text output") {
    const auto rs = sample();
    std::ostringstream os;
    write_text(os, rs);
    const std::string t = os.str();
    CHECK(t.find("T2_9") != std::string::npos);
    CHECK(t.find("ERROR") != std::string::npos);
    CHECK(t.find(std::to_string(summarize(rs).passed) + "/" + std::to_string(rs.size()) + " passed") !=
          std::string::npos);
}

#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <map>
#include <sstream>

#include <json.hpp>

#include "helpers.hpp"
#include "kgfe/cli.hpp"
#include "kgfe/scoring.hpp"

using namespace kgfe;

namespace {

struct Run {
    int code = 0;
    std::string out;
    std::string err;
};

Run invoke(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    Run r;
    r.code = cli::run(std::move(args), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

}  // namespace

TEST_CASE("usage errors exit with code 1") {
    CHECK(invoke({}).code == 1);
    CHECK(invoke({"frobnicate"}).code == 1);
    CHECK(invoke({"rank", "--context", "Canada"}).code == 1);  // missing --graph
    CHECK(invoke({"rank", "--graph", "g.tsv", "--context", "C", "--candidates", "x",
                  "--bogus-flag"})
              .code == 1);

    test::TempFile file(test::kCanadaTsv, ".tsv");
    const Run r = invoke({"rank", "--graph", file.path(), "--context", "Canada"});
    CHECK(r.code == 1);  // neither --candidates nor --candidates-file
    CHECK(r.err.find("candidates") != std::string::npos);
}

TEST_CASE("help exits cleanly") {
    const Run r = invoke({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("rank") != std::string::npos);
}

TEST_CASE("data errors exit with code 2") {
    CHECK(invoke({"stats", "--graph", "/nonexistent/graph.tsv"}).code == 2);

    test::TempFile bad("a\tb\n", ".tsv");
    const Run parse_fail = invoke({"stats", "--graph", bad.path()});
    CHECK(parse_fail.code == 2);
    CHECK(parse_fail.err.find("line 1") != std::string::npos);

    test::TempFile file(test::kCanadaTsv, ".tsv");
    const Run unknown = invoke({"distances", "--graph", file.path(), "--context", "Atlantis"});
    CHECK(unknown.code == 2);
    CHECK(unknown.err.find("Atlantis") != std::string::npos);
}

TEST_CASE("rank emits ordered rows with Biden last") {
    test::TempFile file(test::kCanadaTsv, ".tsv");
    const Run r = invoke({"rank", "--graph", file.path(), "--context", "Canada", "--candidates",
                          "Trudeau,Harper,Biden", "--alpha", "5", "--lambda", "1", "--format",
                          "table"});
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header, row1, row2, row3;
    std::getline(lines, header);
    std::getline(lines, row1);
    std::getline(lines, row2);
    std::getline(lines, row3);
    CHECK(header.find("entity") == 0);
    CHECK(row1.find("Trudeau") == 0);
    CHECK(row2.find("Harper") == 0);
    CHECK(row3.find("Biden") == 0);
    CHECK(row3.find("null") != std::string::npos);
}

TEST_CASE("distances lists every entity") {
    test::TempFile file(test::kCanadaTsv, ".tsv");
    const Run r = invoke(
        {"distances", "--graph", file.path(), "--context", "Canada", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["schema"] == 1);
    REQUIRE(doc["results"].size() == 5);
    std::map<std::string, nlohmann::json> by_label;
    for (const auto& rec : doc["results"]) {
        by_label[rec["entity"]] = rec["distance"];
    }
    CHECK(by_label["Canada"] == 0);
    CHECK(by_label["Trudeau"] == 1);
    CHECK(by_label["Harper"] == 1);
    CHECK(by_label["PrimeMinister"] == 2);
    CHECK(by_label["Biden"].is_null());
}

TEST_CASE("stats reports diameter and suggested alpha") {
    test::TempFile file(test::kCanadaTsv, ".tsv");
    const Run r = invoke({"stats", "--graph", file.path(), "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["entities"] == 5);
    CHECK(doc["relations"] == 4);
    CHECK(doc["edges"] == 6);
    CHECK(doc["diameter"] == 2);
    CHECK(doc["suggested_alpha"] == 3);
}

TEST_CASE("explain renders the chain, the cycle stays out of the path") {
    test::TempFile file(test::kCanadaTsv, ".tsv");

    const Run position = invoke({"explain", "--graph", file.path(), "--context", "Canada",
                                 "PrimeMinister", "--alpha", "5"});
    REQUIRE(position.code == 0);
    CHECK(position.out == "Canada -hasLeader-> Trudeau -holdsPosition-> PrimeMinister\n");

    const Run biden =
        invoke({"explain", "--graph", file.path(), "--context", "Canada", "Biden", "--alpha", "5"});
    REQUIRE(biden.code == 0);
    CHECK(biden.out == "no path from context to 'Biden' (surprise = alpha = 5)\n");

    const Run self =
        invoke({"explain", "--graph", file.path(), "--context", "Canada", "Canada", "--alpha", "5"});
    REQUIRE(self.code == 0);
    CHECK(self.out == "Canada (distance 0; in context)\n");

    CHECK(invoke({"explain", "--graph", file.path(), "--context", "Canada", "Nobody"}).code == 2);
}

TEST_CASE("omitted alpha is computed and echoed to stderr") {
    test::TempFile file(test::kCanadaTsv, ".tsv");
    const Run r = invoke({"rank", "--graph", file.path(), "--context", "Canada", "--candidates",
                          "Trudeau,Biden"});
    REQUIRE(r.code == 0);
    CHECK(r.err.find("diameter + 1 = 3") != std::string::npos);
}

TEST_CASE("json output round-trips every score card field") {
    test::TempFile file(test::kCanadaTsv, ".tsv");
    const Run r = invoke({"rank", "--graph", file.path(), "--context", "Canada", "--candidates",
                          "Trudeau,Harper,PrimeMinister,Biden,Canada", "--alpha", "5", "--lambda",
                          "1", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["schema"] == 1);
    CHECK(doc["alpha"] == 5.0);
    CHECK(doc["lambda"] == 1.0);
    CHECK(doc["mode"] == "pragmatic");

    const KnowledgeGraph graph = parse_tsv(test::kCanadaTsv);
    ScoringParams params;
    params.alpha = 5.0;
    params.lambda = 1.0;
    const std::vector<EntityId> candidates = {
        *graph.find_entity("Trudeau"), *graph.find_entity("Harper"),
        *graph.find_entity("PrimeMinister"), *graph.find_entity("Biden"),
        *graph.find_entity("Canada")};
    const auto cards =
        rank_candidates(graph, Context{*graph.find_entity("Canada")}, candidates, params);

    REQUIRE(doc["results"].size() == cards.size());
    for (std::size_t i = 0; i < cards.size(); ++i) {
        const auto& rec = doc["results"][i];
        CHECK(rec["entity"] == graph.entity_label(cards[i].entity));
        if (cards[i].distance) {
            CHECK(rec["distance"].get<std::uint32_t>() == *cards[i].distance);
        } else {
            CHECK(rec["distance"].is_null());
        }
        CHECK(rec["s_geo"].get<double>() == cards[i].s_geo);
        CHECK(rec["k"].get<double>() == cards[i].k);
        CHECK(rec["f"].get<double>() == cards[i].f);
        if (cards[i].path) {
            REQUIRE(rec["path"].is_array());
            CHECK(rec["path"].size() == 2 * cards[i].path->length() + 1);
        } else {
            CHECK(rec["path"].is_null());
        }
    }
}

TEST_CASE("table and json carry identical values") {
    test::TempFile file(test::kCanadaTsv, ".tsv");
    const std::vector<std::string> base = {"rank",         "--graph",   file.path(),
                                           "--context",    "Canada",    "--candidates",
                                           "Trudeau,Biden", "--alpha",  "5",
                                           "--lambda",     "1"};
    auto table_args = base;
    table_args.push_back("--format");
    table_args.push_back("table");
    auto json_args = base;
    json_args.push_back("--format");
    json_args.push_back("json");

    const Run table = invoke(table_args);
    const Run json = invoke(json_args);
    REQUIRE(table.code == 0);
    REQUIRE(json.code == 0);

    const auto doc = nlohmann::json::parse(json.out);
    std::istringstream lines(table.out);
    std::string line;
    std::getline(lines, line);  // header
    for (const auto& rec : doc["results"]) {
        REQUIRE(std::getline(lines, line));
        // split on runs of two or more spaces
        std::vector<std::string> cells;
        std::size_t pos = 0;
        while (pos < line.size()) {
            const std::size_t gap = line.find("  ", pos);
            if (gap == std::string::npos) {
                cells.push_back(line.substr(pos));
                break;
            }
            cells.push_back(line.substr(pos, gap - pos));
            pos = line.find_first_not_of(' ', gap);
        }
        REQUIRE(cells.size() == 6);
        CHECK(cells[0] == rec["entity"]);
        if (rec["distance"].is_null()) {
            CHECK(cells[1] == "null");
        } else {
            CHECK(std::stoul(cells[1]) == rec["distance"].get<std::uint32_t>());
        }
        CHECK(std::strtod(cells[2].c_str(), nullptr) == rec["s_geo"].get<double>());
        CHECK(std::strtod(cells[3].c_str(), nullptr) == rec["k"].get<double>());
        CHECK(std::strtod(cells[4].c_str(), nullptr) == rec["f"].get<double>());
    }
}

TEST_CASE("identical invocations produce byte-identical stdout") {
    test::TempFile file(test::kCanadaTsv, ".tsv");
    for (const char* format : {"table", "json"}) {
        const std::vector<std::string> args = {
            "rank",     "--graph",      file.path(),           "--context", "Canada",
            "--format", format,         "--candidates",        "Trudeau,Harper,Biden,PrimeMinister",
            "--alpha",  "5",            "--lambda",            "1"};
        const Run first = invoke(args);
        const Run second = invoke(args);
        REQUIRE(first.code == 0);
        CHECK(first.out == second.out);
    }
}

TEST_CASE("candidates can come from a file") {
    test::TempFile graph_file(test::kCanadaTsv, ".tsv");
    test::TempFile list_file("Trudeau\n\nBiden\n", ".txt");
    const Run r = invoke({"rank", "--graph", graph_file.path(), "--context", "Canada",
                          "--candidates-file", list_file.path(), "--alpha", "5", "--format",
                          "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    REQUIRE(doc["results"].size() == 2);
    CHECK(doc["results"][0]["entity"] == "Trudeau");
    CHECK(doc["results"][1]["entity"] == "Biden");
}

TEST_CASE("ntriples graphs load through the same flag") {
    test::TempFile file("<a> <r> <b> .\n<b> <r> <c> .\n", ".nt");
    const Run r = invoke({"stats", "--graph", file.path(), "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["entities"] == 3);
    CHECK(doc["diameter"] == 2);
}

TEST_CASE("epistemic mode flips the order of reached candidates") {
    test::TempFile file(test::kCanadaTsv, ".tsv");
    const Run r = invoke({"rank", "--graph", file.path(), "--context", "Canada", "--candidates",
                          "Trudeau,PrimeMinister", "--alpha", "5", "--mode", "epistemic",
                          "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["mode"] == "epistemic");
    CHECK(doc["results"][0]["entity"] == "PrimeMinister");
    CHECK(doc["results"][1]["entity"] == "Trudeau");
}

TEST_CASE("score preserves the given candidate order") {
    test::TempFile file(test::kCanadaTsv, ".tsv");
    const Run r = invoke({"score", "--graph", file.path(), "--context", "Canada", "--candidates",
                          "Biden,Trudeau", "--alpha", "5", "--format", "json"});
    REQUIRE(r.code == 0);
    const auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["results"][0]["entity"] == "Biden");
    CHECK(doc["results"][1]["entity"] == "Trudeau");
}

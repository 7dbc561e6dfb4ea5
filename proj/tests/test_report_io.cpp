#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>

#include "liouville/report_io.hpp"

using namespace liouville;

TEST_CASE("fmt17 round-trips doubles exactly") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    for (int rep = 0; rep < 2000; ++rep) {
        const double x = std::ldexp(mant(rng), expo(rng));
        REQUIRE(std::strtod(fmt17(x).c_str(), nullptr) == x);
    }
    REQUIRE(std::strtod(fmt17(0.1).c_str(), nullptr) == 0.1);
    REQUIRE(std::strtod(fmt17(1.0 / 3.0).c_str(), nullptr) == 1.0 / 3.0);
}

TEST_CASE("json writer produces deterministic ordered documents") {
    auto build = [] {
        JsonWriter w;
        w.begin_object();
        w.key("name").value("trace");
        w.key("count").value(3);
        w.key("ratio").value(1.0 / 3.0);
        w.key("ok").value(true);
        w.key("missing").null();
        w.key("values").begin_array();
        w.value(1.5).value(2.5);
        w.end_array();
        w.key("nested").begin_object().key("x").value(0.25).end_object();
        w.end_object();
        return w.str();
    };
    const std::string a = build(), b = build();
    REQUIRE(a == b);
    REQUIRE(a ==
            "{\"name\":\"trace\",\"count\":3,\"ratio\":0.33333333333333331,"
            "\"ok\":true,\"missing\":null,\"values\":[1.5,2.5],\"nested\":{\"x\":0.25}}");
}

TEST_CASE("json writer escapes strings and maps non-finite to null") {
    JsonWriter w;
    w.begin_object();
    w.key("text").value("a\"b\\c\nd");
    w.key("inf").value(std::numeric_limits<double>::infinity());
    w.key("nan").value(std::numeric_limits<double>::quiet_NaN());
    w.end_object();
    REQUIRE(w.str() == "{\"text\":\"a\\\"b\\\\c\\nd\",\"inf\":null,\"nan\":null}");
}

TEST_CASE("csv writer emits a header and fixed-width rows") {
    CsvWriter csv({"r", "u", "v"});
    csv.row(std::vector<double>{0.0, 1.0, 0.5});
    csv.row(std::vector<double>{0.25, 0.875, 0.4375});
    const std::string expect = "r,u,v\n0,1,0.5\n0.25,0.875,0.4375\n";
    REQUIRE(csv.str() == expect);
    REQUIRE_THROWS_AS(csv.row(std::vector<double>{1.0}), std::invalid_argument);
}

TEST_CASE("atomic_write_file leaves no partial files behind") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "liouville_report_io_test";
    fs::create_directories(dir);
    const fs::path target = dir / "out.json";
    atomic_write_file(target, "{\"a\":1}");
    REQUIRE(fs::exists(target));
    REQUIRE_FALSE(fs::exists(target.string() + ".tmp"));
    std::ifstream in(target);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    REQUIRE(content == "{\"a\":1}");
    atomic_write_file(target, "{\"a\":2}");
    std::ifstream in2(target);
    std::string content2((std::istreambuf_iterator<char>(in2)), std::istreambuf_iterator<char>());
    REQUIRE(content2 == "{\"a\":2}");
    fs::remove_all(dir);
    REQUIRE_THROWS_AS(atomic_write_file(dir / "missing" / "out.json", "x"), std::runtime_error);
}

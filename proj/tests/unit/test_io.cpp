#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "sgi/errors.hpp"
#include "sgi/io.hpp"

using namespace sgi;

TEST_CASE("csv table") {
    CsvTable t({"t_s", "x_m"});
    t.add_row({0.0, 1.5e-6});
    t.add_row({0.25, -3.0});
    CHECK(t.rows() == 2);
    CHECK(t.str() == "t_s,x_m\n0,1.5e-06\n0.25,-3\n");
    CHECK_THROWS_AS(t.add_row({1.0}), Error);
    CHECK_THROWS_AS(CsvTable({}), Error);
}

TEST_CASE("format_number round trips") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.62607015e-34, 0.2300478, 1e22}) {
        const std::string s = format_number(v);
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
    CHECK(format_number(std::numeric_limits<double>::quiet_NaN()) == "nan");
    CHECK(format_number(-std::numeric_limits<double>::infinity()) == "-inf");
}

TEST_CASE("file writing") {
    const auto dir = std::filesystem::temp_directory_path() / "sgi-io-test";
    std::filesystem::remove_all(dir);
    write_text_file(dir / "a" / "b.txt", "hello\n");
    std::ifstream in(dir / "a" / "b.txt", std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "hello\n");
    // a regular file where a directory is needed
    try {
        write_text_file(dir / "a" / "b.txt" / "c.txt", "x");
        FAIL("expected Io");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::Io);
    }
    std::filesystem::remove_all(dir);
}

#include <cstdio>
#include <fstream>
#include <sstream>

#include <doctest.h>

#include "kerrloss/parallel.hpp"
#include "kerrloss/sweep.hpp"

using namespace kerrloss;

TEST_SUITE("experiments") {

TEST_CASE("grid parsing") {
    CHECK(Grid::parse("2.5").values == std::vector<double>{2.5});
    const auto g = Grid::parse("0:1:5");
    REQUIRE(g.size() == 5);
    CHECK(g.values.front() == 0.0);
    CHECK(g.values.back() == 1.0);
    CHECK(g.values[1] == doctest::Approx(0.25));
    CHECK(Grid::parse("1,2,4").values == std::vector<double>({1.0, 2.0, 4.0}));
    CHECK_THROWS_AS(Grid::parse(""), std::invalid_argument);
    CHECK_THROWS_AS(Grid::parse("1:2"), std::invalid_argument);
}

TEST_CASE("linear channel has zero gain") {
    const auto t = gain_vs_time(ProbeSpec::coherent(1.0), 0.0,
                                Grid::linspace(0.2, 3.0, 8), 1.0);
    const auto c = t.column_index("gain");
    for (const auto& row : t.rows) CHECK(std::abs(row[c]) < 1e-6);
}

TEST_CASE("gain column is consistent with its inputs") {
    const auto t = gain_vs_time(ProbeSpec::coherent(1.0), 0.8,
                                Grid::linspace(0.3, 2.0, 6), 1.0);
    const auto ck = t.column_index("qfi_kerr");
    const auto cl = t.column_index("qfi_linear");
    const auto cg = t.column_index("gain");
    for (const auto& row : t.rows)
        CHECK(std::abs(row[cg] - (row[ck] / row[cl] - 1.0)) < 1e-12);
}

TEST_CASE("csv: 17-digit round trip") {
    SweepTable t;
    t.columns = {"a", "b"};
    t.rows = {{1.0 / 3.0, 0.1}, {2.0 / 7.0, 1e-300}};
    std::istringstream in(to_csv(t));
    std::string line;
    std::getline(in, line);
    CHECK(line == "a,b");
    for (const auto& row : t.rows) {
        std::getline(in, line);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream fields(line);
        for (double v : row) {
            double parsed;
            fields >> parsed;
            CHECK(parsed == v);
        }
    }
}

TEST_CASE("seeded sweeps are deterministic and scheduling-independent") {
    const Grid nbars{{0.3, 0.6}};
    const Grid lambdas{{0.5, 2.0}};
    set_parallel_enabled(true);
    const auto a = qutrit_average_gain(nbars, lambdas, 8, 1234, 1.0);
    const auto b = qutrit_average_gain(nbars, lambdas, 8, 1234, 1.0);
    CHECK(to_csv(a) == to_csv(b));
    set_parallel_enabled(false);
    const auto c = qutrit_average_gain(nbars, lambdas, 8, 1234, 1.0);
    set_parallel_enabled(true);
    CHECK(to_csv(a) == to_csv(c));
    const auto d = qutrit_average_gain(nbars, lambdas, 8, 99, 1.0);
    CHECK(to_csv(a) != to_csv(d));
}

TEST_CASE("qutrit average gain vanishes with the nonlinearity") {
    const auto t = qutrit_average_gain(Grid{{0.5}}, Grid{{1e-4}}, 6, 7, 1.0);
    CHECK(std::abs(t.rows[0][t.column_index("avg_gain")]) < 1e-4);
}

TEST_CASE("fidelity map stays in [0, 1] and degrades with lambda") {
    const auto t = fidelity_map(Grid{{0.75}}, Grid{{0.1, 1.0}}, Grid{{1.0}});
    const auto cf = t.column_index("fidelity");
    for (const auto& row : t.rows) {
        CHECK(row[cf] >= 0.0);
        CHECK(row[cf] <= 1.0 + 1e-12);
    }
    CHECK(t.rows[0][cf] > t.rows[1][cf]);
}

TEST_CASE("sidecar records the experiment") {
    SweepTable t;
    t.columns = {"x"};
    t.rows = {{1.0}};
    const std::string csv = "sidecar_test.csv";
    write_csv(t, csv);
    write_sidecar(csv, "unit-test", "echo", 42, {3, 30});
    std::ifstream in(csv + ".meta.json");
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string body = buf.str();
    CHECK(body.find("\"unit-test\"") != std::string::npos);
    CHECK(body.find("\"seed\": 42") != std::string::npos);
    std::remove(csv.c_str());
    std::remove((csv + ".meta.json").c_str());
}

TEST_CASE("optimal qfi: linear coherent probe recovers the known optimum") {
    const auto o = optimal_qfi(ProbeSpec::coherent(1.0), 0.0, 1.0);
    CHECK(o.tau == doctest::Approx(2.0).epsilon(1e-3));
    CHECK(o.value == doctest::Approx(4.0 * std::exp(-2.0)).epsilon(1e-5));
}

}  // TEST_SUITE

#include <doctest.h>

#include <cmath>
#include <fstream>

#include "owwe/analysis.hpp"
#include "test_common.hpp"

using namespace owwe;

namespace {

Seismogram make_section(int nt = 64, int nx = 16) {
    Seismogram s;
    s.dt = 0.002;
    s.dx = 10.0;
    s.receiver_depth = 600.0;
    s.shot_x = 80.0;
    s.provenance = Provenance::OneWay;
    s.values = Array2D<double>(nt, nx);
    for (int n = 0; n < nt; ++n)
        for (int j = 0; j < nx; ++j)
            s.values(n, j) = std::sin(0.1 * n + j) * std::exp(-0.01 * n);
    return s;
}

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
}

} // namespace

TEST_CASE("q metric: identical inputs give 1, scaling gives the ratio") {
    const Seismogram a = make_section();
    Seismogram b = a;
    auto q = q_metric(a, b);
    for (std::size_t j = 0; j < q.q.size(); ++j) {
        REQUIRE(q.defined[j]);
        CHECK(q.q[j] == doctest::Approx(1.0).epsilon(1e-12));
    }
    for (std::size_t i = 0; i < b.values.size(); ++i) b.values.data()[i] *= 2.0;
    q = q_metric(a, b);
    for (std::size_t j = 0; j < q.q.size(); ++j)
        CHECK(q.q[j] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("q metric: grid mismatch is rejected") {
    const Seismogram a = make_section();
    Seismogram b = make_section();
    b.dx = 20.0;
    CHECK_THROWS_AS(q_metric(a, b), numeric_error);
}

TEST_CASE("q metric: quiet traces are flagged undefined, not zeroed") {
    Seismogram a = make_section();
    Seismogram b = a;
    for (int n = 0; n < a.nt(); ++n) b.values(n, 3) = 0.0;
    const auto q = q_metric(a, b);
    CHECK_FALSE(q.defined[3]);
    CHECK(q.defined[4]);
}

TEST_CASE("q metric: invariant under joint scaling") {
    const Seismogram a = make_section();
    Seismogram a2 = a, b2 = a;
    for (std::size_t i = 0; i < a.values.size(); ++i) {
        a2.values.data()[i] *= 7.25;
        b2.values.data()[i] *= 7.25;
    }
    const auto q1 = q_metric(a, a);
    const auto q2 = q_metric(a2, b2);
    for (std::size_t j = 0; j < q1.q.size(); ++j) CHECK(q1.q[j] == q2.q[j]);
}

TEST_CASE("amplitude vs offset: zeros and a lone spike") {
    Seismogram s = make_section();
    for (std::size_t i = 0; i < s.values.size(); ++i) s.values.data()[i] = 0.0;
    auto amps = amplitude_vs_offset(s);
    for (double a : amps) CHECK(a == 0.0);
    s.values(20, 5) = -3.5;
    amps = amplitude_vs_offset(s);
    for (int j = 0; j < s.nx(); ++j) {
        if (j == 5) CHECK(amps[j] == doctest::Approx(3.5));
        else CHECK(amps[j] == 0.0);
    }
}

TEST_CASE("trace peak: parabolic refinement beats the sample grid") {
    Seismogram s;
    s.dt = 0.01;
    s.dx = 10.0;
    s.values = Array2D<double>(128, 1);
    const double t0 = 0.503; // off-grid peak
    for (int n = 0; n < 128; ++n) {
        const double t = n * s.dt;
        s.values(n, 0) = std::exp(-800.0 * (t - t0) * (t - t0));
    }
    const auto p = trace_peak(s, 0);
    CHECK(std::abs(p.time - t0) < 0.2 * s.dt);
    CHECK(p.amplitude == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("section io: write-read round trip is stable and bit-exact on disk") {
    const auto dir = testutil::fresh_dir("analysis_io");
    const Seismogram s = make_section();
    const std::string p1 = (dir / "a.owwf").string();
    const std::string p2 = (dir / "b.owwf").string();
    write_section(p1, s);
    const Seismogram r = read_section(p1);
    CHECK(r.nt() == s.nt());
    CHECK(r.nx() == s.nx());
    CHECK(r.dt == doctest::Approx(s.dt).epsilon(1e-12));
    CHECK(r.dx == doctest::Approx(s.dx).epsilon(1e-12));
    CHECK(r.receiver_depth == doctest::Approx(s.receiver_depth));
    CHECK(r.shot_x == doctest::Approx(s.shot_x));
    CHECK(r.provenance == s.provenance);
    for (int n = 0; n < s.nt(); ++n)
        for (int j = 0; j < s.nx(); ++j)
            CHECK(r.values(n, j) == static_cast<double>(static_cast<float>(s.values(n, j))));
    write_section(p2, r);
    CHECK(slurp(p1) == slurp(p2));
}

TEST_CASE("section io: wrong magic is rejected") {
    const auto dir = testutil::fresh_dir("analysis_magic");
    const std::string path = (dir / "bad.owwf").string();
    std::ofstream(path, std::ios::binary) << "NOPE1 64 16 0.002 10 600 80 one_way"
                                          << std::string(64, '\0');
    CHECK_THROWS_WITH_AS(read_section(path), doctest::Contains("bad magic"), io_error);
    CHECK_THROWS_AS(read_section((dir / "missing.owwf").string()), io_error);
}

TEST_CASE("section csv: nt rows, nx + 1 columns") {
    const auto dir = testutil::fresh_dir("analysis_csv");
    const Seismogram s = make_section();
    const std::string path = (dir / "a.csv").string();
    write_section_csv(path, s);
    std::ifstream f(path);
    std::string line;
    int rows = 0;
    while (std::getline(f, line)) {
        ++rows;
        const long commas = std::count(line.begin(), line.end(), ',');
        CHECK(commas == s.nx()); // time column + nx traces
    }
    CHECK(rows == s.nt());
}

TEST_CASE("qcurve csv: x, q, defined rows") {
    const auto dir = testutil::fresh_dir("analysis_qcsv");
    QCurve q;
    q.dx = 10.0;
    q.shot_x = 50.0;
    q.q = {1.0, 0.9, 0.0};
    q.defined = {true, true, false};
    const std::string path = (dir / "q.csv").string();
    write_qcurve_csv(path, q);
    std::ifstream f(path);
    std::string line;
    std::getline(f, line);
    CHECK(line.front() == '#');
    std::getline(f, line);
    CHECK(line == "0,1,1");
    std::getline(f, line);
    CHECK(line == "10,0.9,1");
    std::getline(f, line);
    CHECK(line == "20,0,0");
}

#include <doctest.h>

#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>

#include "owwe/owwe.h"
#include "test_common.hpp"

namespace {

const char* desk_text =
    "[model]\n"
    "c_sup = 1600\n"
    "layers = 500:2400\n"
    "delta = 10\n"
    "rho = 1000\n"
    "z_max = 1000\n"
    "[grid]\n"
    "dx = 10\ndz = 10\nnx = 128\nnz = 100\ndt = 0.002\nnt = 512\n"
    "[shot]\n"
    "source_x = 640\nreceiver_depth = 600\npeak_frequency = 15\n"
    "[run]\n"
    "epsilon = 0\nmultiples = 1\nf_max = 45\n";

std::string slurp(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(f), {});
}

} // namespace

TEST_CASE("capi: config parse, hash, override") {
    owwe_config* cfg = nullptr;
    REQUIRE(owwe_config_parse(desk_text, &cfg) == OWWE_OK);
    char h1[17], h2[17];
    REQUIRE(owwe_config_hash(cfg, h1) == OWWE_OK);
    CHECK(std::strlen(h1) == 16);
    REQUIRE(owwe_config_override(cfg, "run.epsilon", "1") == OWWE_OK);
    REQUIRE(owwe_config_hash(cfg, h2) == OWWE_OK);
    CHECK(std::strcmp(h1, h2) != 0);
    CHECK(owwe_config_override(cfg, "run.not_a_key", "1") == OWWE_ERR_CONFIG);
    CHECK(std::string(owwe_last_error()).find("unknown key") != std::string::npos);
    owwe_config_free(cfg);
}

TEST_CASE("capi: status codes for bad inputs") {
    owwe_config* cfg = nullptr;
    CHECK(owwe_config_load("/nonexistent/path.cfg", &cfg) == OWWE_ERR_IO);
    CHECK(owwe_config_parse("[grid]\nbogus = 1\n", &cfg) == OWWE_ERR_CONFIG);
    CHECK(owwe_config_parse(nullptr, &cfg) == OWWE_ERR_USAGE);
    owwe_section* sec = nullptr;
    CHECK(owwe_section_read("/nonexistent/file.owwf", &sec) == OWWE_ERR_IO);
}

TEST_CASE("capi: one-way run writes sections and a manifest") {
    const auto dir = testutil::fresh_dir("capi_oneway");
    owwe_config* cfg = nullptr;
    REQUIRE(owwe_config_parse(desk_text, &cfg) == OWWE_OK);
    owwe_result* res = nullptr;
    REQUIRE(owwe_run_oneway(cfg, nullptr, dir.string().c_str(), &res) == OWWE_OK);

    CHECK(owwe_result_multiple_count(res) == 2); // N = 1 -> m = 0, 1
    CHECK(std::filesystem::exists(owwe_result_seismogram_path(res)));
    for (size_t m = 0; m < 2; ++m) CHECK(std::filesystem::exists(owwe_result_multiple_path(res, m)));
    const std::string manifest = slurp(std::string(owwe_result_dir(res)) + "/manifest.json");
    CHECK(manifest.find("config_hash") != std::string::npos);
    CHECK(manifest.find("multiple_1.owwf") != std::string::npos);

    owwe_section* sec = nullptr;
    REQUIRE(owwe_section_read(owwe_result_seismogram_path(res), &sec) == OWWE_OK);
    CHECK(owwe_section_rows(sec) == 512);
    CHECK(owwe_section_cols(sec) == 128);
    CHECK(owwe_section_shot_x(sec) == doctest::Approx(640.0));
    CHECK(std::string(owwe_section_provenance(sec)) == "one_way");
    owwe_section_free(sec);
    owwe_result_free(res);
    owwe_config_free(cfg);
}

TEST_CASE("capi: identical configs give bit-identical outputs") {
    const auto dir1 = testutil::fresh_dir("capi_det1");
    const auto dir2 = testutil::fresh_dir("capi_det2");
    owwe_config* cfg = nullptr;
    REQUIRE(owwe_config_parse(desk_text, &cfg) == OWWE_OK);
    owwe_result *r1 = nullptr, *r2 = nullptr;
    REQUIRE(owwe_run_oneway(cfg, nullptr, dir1.string().c_str(), &r1) == OWWE_OK);
    REQUIRE(owwe_run_oneway(cfg, nullptr, dir2.string().c_str(), &r2) == OWWE_OK);
    CHECK(slurp(owwe_result_seismogram_path(r1)) == slurp(owwe_result_seismogram_path(r2)));
    CHECK(slurp(owwe_result_multiple_path(r1, 1)) == slurp(owwe_result_multiple_path(r2, 1)));
    owwe_result_free(r1);
    owwe_result_free(r2);
    owwe_config_free(cfg);
}

TEST_CASE("capi: option overrides land in the run directory hash") {
    const auto dir = testutil::fresh_dir("capi_opts");
    owwe_config* cfg = nullptr;
    REQUIRE(owwe_config_parse(desk_text, &cfg) == OWWE_OK);
    owwe_oneway_opts opts{};
    opts.epsilon = 1;
    opts.multiples = 0;
    opts.no_transmission = 0;
    owwe_result *a = nullptr, *b = nullptr;
    REQUIRE(owwe_run_oneway(cfg, &opts, dir.string().c_str(), &a) == OWWE_OK);
    opts.no_transmission = 1;
    REQUIRE(owwe_run_oneway(cfg, &opts, dir.string().c_str(), &b) == OWWE_OK);
    CHECK(std::string(owwe_result_dir(a)) != std::string(owwe_result_dir(b)));
    CHECK(owwe_result_multiple_count(a) == 1);
    owwe_result_free(a);
    owwe_result_free(b);
    owwe_config_free(cfg);
}

TEST_CASE("capi: qcurve of a section against itself is one") {
    const auto dir = testutil::fresh_dir("capi_q");
    owwe_config* cfg = nullptr;
    REQUIRE(owwe_config_parse(desk_text, &cfg) == OWWE_OK);
    owwe_result* res = nullptr;
    REQUIRE(owwe_run_oneway(cfg, nullptr, dir.string().c_str(), &res) == OWWE_OK);
    owwe_qcurve* q = nullptr;
    REQUIRE(owwe_qcurve_compute(owwe_result_seismogram_path(res),
                                owwe_result_seismogram_path(res), &q) == OWWE_OK);
    const size_t n = owwe_qcurve_size(q);
    CHECK(n == 128);
    const double* v = owwe_qcurve_values(q);
    const unsigned char* def = owwe_qcurve_defined(q);
    int defined = 0;
    for (size_t j = 0; j < n; ++j)
        if (def[j]) {
            ++defined;
            CHECK(v[j] == doctest::Approx(1.0).epsilon(1e-12));
        }
    CHECK(defined > 0);
    const std::string csv = (dir / "q.csv").string();
    REQUIRE(owwe_qcurve_write_csv(q, csv.c_str()) == OWWE_OK);
    CHECK(std::filesystem::exists(csv));
    owwe_qcurve_free(q);
    owwe_result_free(res);
    owwe_config_free(cfg);
}

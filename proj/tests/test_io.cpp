#include <doctest.h>

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <random>

#include "ringdm/config.hpp"
#include "ringdm/errors.hpp"
#include "ringdm/io.hpp"

using namespace ringdm;
namespace fs = std::filesystem;

namespace {
struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("ringdm_test_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};
}  // namespace

TEST_CASE("field dump: header layout and bitwise roundtrip") {
    TempDir tmp;
    auto grid = make_grid(8, 4, 0.25, 0.5);
    ComplexField2D f(grid);
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> dist(-2.0, 2.0);
    for (auto& v : f.values) v = Complex(dist(rng), dist(rng));

    const std::string path = (tmp.path / "f.gpe2").string();
    dump_field(path, f, 3.25);

    // Exact header bytes.
    std::ifstream in(path, std::ios::binary);
    char magic[4];
    in.read(magic, 4);
    CHECK(std::memcmp(magic, "GPE2", 4) == 0);
    std::uint32_t version;
    in.read(reinterpret_cast<char*>(&version), 4);
    CHECK(version == 1);
    std::uint64_t nx, ny;
    in.read(reinterpret_cast<char*>(&nx), 8);
    in.read(reinterpret_cast<char*>(&ny), 8);
    CHECK(nx == 8);
    CHECK(ny == 4);
    CHECK(fs::file_size(path) == 4 + 4 + 8 * 2 + 8 * 5 + 8 * 4 * 16);

    auto lf = load_field(path);
    CHECK(lf.t == 3.25);
    CHECK(lf.field.grid->nx == 8);
    CHECK(lf.field.grid->dy == 0.5);
    REQUIRE(lf.field.values.size() == f.values.size());
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        CHECK(std::memcmp(&lf.field.values[k], &f.values[k], sizeof(Complex)) == 0);
    }
}

TEST_CASE("field dump: corrupt magic rejected") {
    TempDir tmp;
    const std::string path = (tmp.path / "bad.gpe2").string();
    std::ofstream out(path, std::ios::binary);
    out << "NOPE-----------------";
    out.close();
    CHECK_THROWS_AS(load_field(path), ConfigError);
}

TEST_CASE("format_double: 17 significant digits round-trip") {
    std::mt19937_64 rng(123);
    std::uniform_real_distribution<double> dist(-1e6, 1e6);
    for (int k = 0; k < 200; ++k) {
        const double v = dist(rng) * std::pow(10.0, static_cast<int>(rng() % 13) - 6);
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("time series csv: exact header and content") {
    TempDir tmp;
    TimeSeries ts;
    ts.times = {0.0, 0.5};
    ts.survival = {1.0, 0.25};
    ts.norm = {1.0, 1.0};
    ts.energy = {2.0, 2.0};
    ts.width_x = {0.7, 0.8};
    ts.width_y = {0.7, 0.9};
    PhysicalParams phys;
    const std::string path = (tmp.path / "ts.csv").string();
    write_time_series_csv(path, ts, phys);

    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "t_dimless,t_ms,survival,norm,energy,width_x,width_y");
    std::string row;
    std::getline(in, row);
    CHECK(row.substr(0, 2) == "0,");
    std::getline(in, row);
    CHECK(row.find("0.9765625") != std::string::npos); // 0.5 * 1.953125 ms
}

TEST_CASE("config: parse, serialize, parse is identity") {
    const std::string text = "# comment\n"
                             "experiment = ground\n"
                             "waveguide.eccentricity = 0.9   # trailing comment\n"
                             "grid.nx = 256\n";
    auto kv = KeyValueConfig::parse_string(text);
    CHECK(kv.get("experiment") == "ground");
    CHECK(kv.get("waveguide.eccentricity") == "0.9");
    auto kv2 = KeyValueConfig::parse_string(kv.serialize());
    CHECK(kv2.entries == kv.entries);
    CHECK_THROWS_AS(KeyValueConfig::parse_string("novalue\n"), ConfigError);
}

TEST_CASE("config: missing required key names the field") {
    KeyValueConfig kv;
    kv.set("experiment", "ground");
    kv.set("waveguide.depth", "50");
    kv.set("waveguide.eccentricity", "0.9");
    kv.set("waveguide.semi_major", "10");
    // waveguide.gamma missing
    try {
        resolve_config(kv);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("waveguide.gamma") != std::string::npos);
    }
}

TEST_CASE("config: validation collects multiple violations") {
    KeyValueConfig kv;
    kv.set("experiment", "ground");
    kv.set("waveguide.depth", "50");
    kv.set("waveguide.gamma", "1");
    kv.set("waveguide.semi_major", "10");
    kv.set("waveguide.eccentricity", "1.5");
    kv.set("grid.nx", "100");
    try {
        resolve_config(kv);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("waveguide.eccentricity") != std::string::npos);
        CHECK(msg.find("grid.nx") != std::string::npos);
    }
}

TEST_CASE("config: resolution of auto dispersion and presets") {
    KeyValueConfig kv;
    apply_preset(kv, "ci");
    kv.set("experiment", "ground");
    kv.set("waveguide.depth", "50");
    kv.set("waveguide.gamma", "1");
    kv.set("waveguide.semi_major", "10");
    kv.set("waveguide.eccentricity", "0.5");
    kv.set("dispersion.beta", "auto");
    auto cfg = resolve_config(kv);
    CHECK(cfg.grid_nx == 256);
    CHECK(cfg.grid_dx == 0.2);
    CHECK(cfg.resolved_beta() == doctest::Approx(0.75));
    CHECK(cfg.resolved_coupling() == 2.0); // default g

    kv.set("coupling.g", "auto");
    auto cfg2 = resolve_config(kv);
    CHECK(cfg2.resolved_coupling() == doctest::Approx(42.06).epsilon(1e-2));

    CHECK_THROWS_AS(apply_preset(kv, "huge"), ConfigError);
}

TEST_CASE("config: environment overrides") {
    KeyValueConfig kv;
    kv.set("experiment", "ground");
    setenv("RINGDM_WAVEGUIDE_ECCENTRICITY", "0.25", 1);
    kv.apply_env_overrides();
    unsetenv("RINGDM_WAVEGUIDE_ECCENTRICITY");
    CHECK(kv.get("waveguide.eccentricity") == "0.25");
}

TEST_CASE("manifest: files carry checksums, json parses") {
    TempDir tmp;
    const std::string data = (tmp.path / "blob.bin").string();
    {
        std::ofstream out(data, std::ios::binary);
        out << "hello world";
    }
    Manifest m;
    m.root()["version"] = "test";
    m.add_file(data, "blob.bin");
    const std::string mpath = (tmp.path / "manifest.json").string();
    m.write(mpath);

    std::ifstream in(mpath);
    nlohmann::json j = nlohmann::json::parse(in);
    CHECK(j["version"] == "test");
    CHECK(j["files"].size() == 1);
    CHECK(j["files"][0]["path"] == "blob.bin");
    CHECK(j["files"][0]["bytes"] == 11);
    const std::string sum = j["files"][0]["fnv1a64"];
    CHECK(sum.size() == 16);

    // Checksum changes when content changes.
    const auto before = fnv1a64_file(data);
    {
        std::ofstream out(data, std::ios::binary);
        out << "hello worle";
    }
    CHECK(fnv1a64_file(data) != before);
}

TEST_CASE("pgm heatmap: header and peak scaling") {
    TempDir tmp;
    auto grid = make_grid(16, 8, 0.5, 0.5);
    RealField2D d(grid);
    d.at(3, 2) = 4.0;
    const std::string path = (tmp.path / "d.pgm").string();
    write_pgm_heatmap(path, d);
    std::ifstream in(path, std::ios::binary);
    std::string l1, l2, l3;
    std::getline(in, l1);
    std::getline(in, l2);
    std::getline(in, l3);
    CHECK(l1 == "P5");
    CHECK(l2 == "16 8");
    CHECK(l3 == "255");
    std::vector<unsigned char> pixels(16 * 8);
    in.read(reinterpret_cast<char*>(pixels.data()), pixels.size());
    unsigned char mx = 0;
    for (auto px : pixels) mx = std::max(mx, px);
    CHECK(mx == 255);
}

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "test_support.hpp"
#include "tropix/cli.hpp"
#include "tropix/io.hpp"

using namespace tropix;

namespace {

namespace fs = std::filesystem;

fs::path work_dir() {
    fs::path dir = fs::temp_directory_path() / "tropix_cli_work";
    fs::create_directories(dir);
    return dir;
}

std::string at(const std::string& name) { return (work_dir() / name).string(); }

std::string write_file(const std::string& name, const std::string& content) {
    std::string path = at(name);
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

int run(std::initializer_list<std::string> args) {
    std::vector<std::string> owned{"tropix"};
    owned.insert(owned.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const std::string& a : owned) argv.push_back(a.c_str());
    return dispatch(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("ph writes single-linkage barcodes with manifests") {
    std::string matrix = write_file("line3.csv", "0,1,3\n1,0,2\n3,2,0\n");
    std::string out = at("h0.txt");
    REQUIRE(run({"ph", matrix, "-o", out, "--dim", "0"}) == 0);

    barcode b = load_barcode(out);
    REQUIRE(b.size() == 3);
    // merge heights 1 and 2, plus the surviving component capped at the
    // enclosing radius 2
    CHECK(b[0] == interval{0, 1});
    CHECK(b[1] == interval{0, 2});
    CHECK(b[2] == interval{0, 2});

    std::string manifest = read_file(out + ".manifest");
    CHECK(manifest.find("command=ph\n") != std::string::npos);
    CHECK(manifest.find("threshold=2\n") != std::string::npos);
    CHECK(manifest.find("digest.matrix=") != std::string::npos);
    CHECK(read_file(out).find("# manifest: h0.txt.manifest") != std::string::npos);
}

TEST_CASE("ph caps surviving bars beyond the threshold on request") {
    std::string matrix = write_file("line3b.csv", "0,1,3\n1,0,2\n3,2,0\n");
    std::string out = at("h0_capped.txt");
    REQUIRE(run({"ph", matrix, "-o", out, "--dim", "0", "--threshold", "2.5", "--cap", "9"}) == 0);
    barcode b = load_barcode(out);
    REQUIRE(b.size() == 3);
    CHECK(b[0] == interval{0, 1});
    CHECK(b[1] == interval{0, 2});
    CHECK(b[2] == interval{0, 9});

    // a cap below the threshold is refused as a data error
    CHECK(run({"ph", matrix, "-o", out, "--threshold", "2.5", "--cap", "2"}) == 2);
}

TEST_CASE("ph extracts the square cycle in dimension one") {
    double s = std::sqrt(2.0);
    std::ostringstream m;
    m << "0,1," << format_double(s) << ",1\n"
      << "1,0,1," << format_double(s) << "\n"
      << format_double(s) << ",1,0,1\n"
      << "1," << format_double(s) << ",1,0\n";
    std::string matrix = write_file("square.csv", m.str());
    std::string out = at("h1.txt");
    REQUIRE(run({"ph", matrix, "-o", out, "--dim", "1", "--threshold", "2"}) == 0);
    barcode b = load_barcode(out);
    REQUIRE(b.size() == 1);
    CHECK(b[0].x == 1.0);
    CHECK(std::abs(b[0].d - (s - 1.0)) <= 1e-12);
}

TEST_CASE("vectorize emits the expected rows for the worked pair") {
    std::string b1 = write_file("b1.txt", "1 3\n3 4\n");
    std::string b2 = write_file("b2.txt", "2 4\n");
    std::string out = at("vec.csv");
    REQUIRE(run({"vectorize", b1, b2, "-o", out}) == 0);

    std::string text = read_file(out);
    CHECK(text.find("E_i1_j0,E_i2_j0,E_i0_j1,E_i1_j1,E_i0_j2\n2,3,4,6,7\n2,2,4,4,4\n") !=
          std::string::npos);
    std::string manifest = read_file(out + ".manifest");
    CHECK(manifest.find("n=2\n") != std::string::npos);
    CHECK(manifest.find("m=3\n") != std::string::npos);
}

TEST_CASE("dist fit divergence chain produces consistent files") {
    std::string b1 = write_file("c1.txt", "1 3\n3 4\n");
    std::string b2 = write_file("c2.txt", "2 4\n");
    std::string b3 = write_file("c3.txt", "0 2\n1 5\n");
    std::string dm_out = at("dist.csv");
    REQUIRE(run({"dist", b1, b2, b3, "-o", dm_out, "--metric", "wasserstein", "--p", "2"}) == 0);
    distance_matrix dm = load_distance_matrix(dm_out, matrix_format::csv);
    CHECK(dm.n == 3);
    CHECK(dm.at(0, 1) > 0.0);

    std::string vec_out = at("chain_vec.csv");
    REQUIRE(run({"vectorize", b1, b2, b3, "-o", vec_out}) == 0);
    std::string fit_out = at("chain_fits.csv");
    REQUIRE(run({"fit", vec_out, "-o", fit_out}) == 0);
    REQUIRE(load_fits(fit_out).size() == 3);

    std::string sim_out = at("chain_sim.csv");
    REQUIRE(run({"divergence", fit_out, "-o", sim_out, "--kind", "hellinger"}) == 0);
    std::string text = read_file(sim_out);
    CHECK(text.find("# similarity-matrix v1") != std::string::npos);
    CHECK(read_file(sim_out + ".manifest").find("kind=hellinger\n") != std::string::npos);

    // identical fits give a zero hellinger matrix
    std::string same = write_file("same_fits.csv", "mu,sigma2\n1,2\n1,2\n");
    std::string zero_out = at("zero_sim.csv");
    REQUIRE(run({"divergence", same, "-o", zero_out, "--kind", "hellinger"}) == 0);
    CHECK(read_file(zero_out).find("0,0\n0,0\n") != std::string::npos);
}

TEST_CASE("mds and pca write projections and optional plot scripts") {
    std::string matrix = write_file("pair.csv", "0,2\n2,0\n");
    std::string out = at("mds_proj.csv");
    REQUIRE(run({"mds", matrix, "-o", out, "--emit-gnuplot"}) == 0);
    std::string text = read_file(out);
    CHECK(text.find("axis0,axis1\n") != std::string::npos);
    CHECK((text.find("\n1,0\n-1,0\n") != std::string::npos ||
           text.find("\n-1,0\n1,0\n") != std::string::npos));
    CHECK(read_file(out + ".gnuplot").find("plot 'mds_proj.csv' using 1:2") != std::string::npos);

    std::string vecs = write_file("pca_vecs.csv",
                                  "E_i1_j0,E_i0_j1\n0,0\n1,2\n2,4\n3,6\n");
    std::string pca_out = at("pca_proj.csv");
    REQUIRE(run({"pca", vecs, "-o", pca_out}) == 0);
    CHECK(read_file(pca_out).find("axis0,axis1\n") != std::string::npos);
}

TEST_CASE("demo subcommand writes the default sweep") {
    std::string out = at("demo.csv");
    REQUIRE(run({"demo-nonlipschitz", "-o", out}) == 0);
    CHECK(read_file(out).find("0,1,0.5,1\n1,9,0.5,2\n10,441,0.5,11\n100,40401,0.5,101\n") !=
          std::string::npos);

    std::string custom = at("demo_custom.csv");
    REQUIRE(run({"demo-nonlipschitz", "-o", custom, "--x", "2", "--x", "3"}) == 0);
    CHECK(read_file(custom).find("2,25,0.5,3\n3,49,0.5,4\n") != std::string::npos);
}

TEST_CASE("usage errors exit 1 and data errors exit 2") {
    std::string matrix = write_file("ok.csv", "0,1\n1,0\n");

    CHECK(run({"nonsense"}) == 1);
    CHECK(run({"ph", matrix, "-o", at("x.txt"), "--dim", "5"}) == 1);
    CHECK(run({"dist", "a", "b", "-o", at("x.csv"), "--metric", "euclidean"}) == 1);
    CHECK(run({"dist", "a", "b", "-o", at("x.csv"), "--p", "99"}) == 1);
    CHECK(run({"ph", matrix}) == 1);  // missing required output
    CHECK(run({"demo-nonlipschitz", "-o", at("x.csv"), "--x", "-1"}) == 1);
    CHECK(run({"divergence", "f.csv", "-o", at("x.csv"), "--kstar-linear"}) == 1);
    CHECK(run({"--help"}) == 0);

    CHECK(run({"ph", at("missing.csv"), "-o", at("x.txt")}) == 2);
    std::string skewed = write_file("skewed.csv", "0,1\n2,0\n");
    CHECK(run({"ph", skewed, "-o", at("x.txt")}) == 2);
    std::string inf_bc = write_file("inf.txt", "0 inf\n");
    CHECK(run({"vectorize", inf_bc, "-o", at("x.csv")}) == 2);
    std::string lone = write_file("lone.txt", "0 2\n");
    CHECK(run({"dist", lone, "-o", at("x.csv")}) == 2);
}

TEST_CASE("repeated runs are byte-identical") {
    std::string b1 = write_file("d1.txt", "1 3\n3 4\n");
    std::string b2 = write_file("d2.txt", "2 4\n");
    std::string b3 = write_file("d3.txt", "0 2\n1 5\n");
    std::string out = at("repeat_vec.csv");

    REQUIRE(run({"vectorize", b1, b2, b3, "-o", out}) == 0);
    std::string first = read_file(out);
    std::string first_manifest = read_file(out + ".manifest");
    fs::remove(out);
    fs::remove(out + ".manifest");
    REQUIRE(run({"vectorize", b1, b2, b3, "-o", out}) == 0);
    CHECK(read_file(out) == first);
    CHECK(read_file(out + ".manifest") == first_manifest);

    std::string dm_out = at("repeat_dm.csv");
    REQUIRE(run({"dist", b1, b2, b3, "-o", dm_out, "--metric", "wasserstein"}) == 0);
    std::string dm_first = read_file(dm_out);
    REQUIRE(run({"dist", b1, b2, b3, "-o", dm_out, "--metric", "wasserstein"}) == 0);
    CHECK(read_file(dm_out) == dm_first);
}

}

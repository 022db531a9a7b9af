#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

#include "latlrr/core.hpp"
#include "latlrr/io.hpp"
#include "latlrr/problems.hpp"

using namespace latlrr;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

const ToleranceProfile kTol{};

int run_cli(const std::string& args) {
    std::string cmd = std::string(LATLRR_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("latlrr_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

json load_json(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    return json::parse(in);
}

Matrix json_matrix(const json& j) {
    Matrix M(j["rows"].get<int>(), j["cols"].get<int>());
    const auto& data = j["data"];
    std::size_t k = 0;
    for (Eigen::Index i = 0; i < M.rows(); ++i)
        for (Eigen::Index c = 0; c < M.cols(); ++c) M(i, c) = data[k++].get<double>();
    return M;
}

std::string gen_args(const fs::path& out, int rows, int cols, int rank,
                     std::uint64_t seed) {
    return "generate --rows " + std::to_string(rows) + " --cols " +
           std::to_string(cols) + " --rank " + std::to_string(rank) + " --seed " +
           std::to_string(seed) + " --out " + out.string();
}

} // namespace

TEST_CASE("generate writes a matrix with the requested rank") {
    fs::path dir = fresh_dir("generate");
    fs::path mat = dir / "x.mat";
    CHECK(run_cli(gen_args(mat, 10, 8, 5, 1)) == 0);
    Matrix X = read_matrix(mat);
    CHECK(X.rows() == 10);
    CHECK(X.cols() == 8);
    CHECK(numerical_rank(X, kTol) == 5);

    CHECK(run_cli(gen_args(mat, 6, 9, 6, 2)) == 0);
    CHECK(numerical_rank(read_matrix(mat), kTol) == 6);
}

TEST_CASE("generate with repeated spectrum reproduces the groups") {
    fs::path dir = fresh_dir("generate_rep");
    fs::path mat = dir / "x.mat";
    CHECK(run_cli("generate --rows 12 --cols 10 --rank 5 --spectrum repeated "
                  "--groups 3 2 --seed 3 --out " +
                  mat.string()) == 0);
    SkinnySvd f = skinny_svd(read_matrix(mat), kTol);
    BlockPartition part = block_partition(f.sigma, kTol);
    REQUIRE(part.groups.size() == 2);
    CHECK(part.groups[0].second == 3);
    CHECK(part.groups[1].second == 2);
}

TEST_CASE("generate rejects invalid specs") {
    fs::path dir = fresh_dir("generate_bad");
    fs::path mat = dir / "x.mat";
    CHECK(run_cli(gen_args(mat, 5, 5, 9, 0)) == 2);   // rank > min(rows, cols)
    CHECK(run_cli("generate --rows 5 --out " + mat.string()) == 2);
    CHECK(run_cli("bogus-subcommand") == 2);
}

TEST_CASE("counterexample canonical mode certifies the gap") {
    fs::path dir = fresh_dir("ce");
    fs::path mat = dir / "x.mat";
    fs::path rep_path = dir / "report.json";
    REQUIRE(run_cli(gen_args(mat, 10, 8, 5, 4)) == 0);
    CHECK(run_cli("counterexample " + mat.string() + " --out " + rep_path.string()) ==
          0);

    json rep = load_json(rep_path);
    CHECK(rep["schema_version"] == "1");
    CHECK(rep["command"] == "counterexample");
    const json& ce = rep["counterexamples"][0];
    CHECK(ce["rank_of_x"] == 5);
    CHECK(ce["gap"] == 5);
    CHECK(ce["verdict"] == true);
    CHECK(std::abs(ce["nuclear_objective"].get<double>() - 5.0) <= 1e-9);
    CHECK(ce["rank_objective"] == 10);
    CHECK(rep["certificates"][0]["nuclear_optimal"] == true);
    CHECK(rep["certificates"][0]["rank_optimal"] == false);

    // missing input file is a usage error
    CHECK(run_cli("counterexample " + (dir / "nope.mat").string() + " --out " +
                  rep_path.string()) == 2);
}

TEST_CASE("counterexample random mode is byte-stable modulo wall time") {
    fs::path dir = fresh_dir("ce_rand");
    fs::path mat = dir / "x.mat";
    REQUIRE(run_cli(gen_args(mat, 9, 7, 4, 5)) == 0);
    fs::path r1 = dir / "r1.json", r2 = dir / "r2.json";
    CHECK(run_cli("counterexample " + mat.string() +
                  " --mode random --seed 11 --out " + r1.string()) == 0);
    CHECK(run_cli("counterexample " + mat.string() +
                  " --mode random --seed 11 --out " + r2.string()) == 0);
    json a = load_json(r1), b = load_json(r2);
    a.erase("wall_time_ms");
    b.erase("wall_time_ms");
    CHECK(a.dump() == b.dump());
}

TEST_CASE("solve latlrr certifies its output") {
    fs::path dir = fresh_dir("solve");
    fs::path mat = dir / "x.mat";
    fs::path rep_path = dir / "report.json";
    REQUIRE(run_cli(gen_args(mat, 12, 9, 4, 6)) == 0);
    CHECK(run_cli("solve " + mat.string() + " --out " + rep_path.string()) == 0);

    json rep = load_json(rep_path);
    CHECK(rep["solver_diagnostics"]["converged"] == true);
    CHECK(rep["certificates"][0]["nuclear_optimal"] == true);
    CHECK(rep["certificates"][0]["theorem2_member"] == true);
    CHECK(std::abs(rep["certificates"][0]["nuclear_objective"].get<double>() - 4.0) <=
          1e-5);

    // forced non-convergence has its own exit code
    CHECK(run_cli("solve " + mat.string() + " --max-iters 1 --out " +
                  rep_path.string()) == 4);
    json failed = load_json(rep_path);
    CHECK(failed["solver_diagnostics"]["converged"] == false);
}

TEST_CASE("solve lrr matches the closed form") {
    fs::path dir = fresh_dir("solve_lrr");
    fs::path mat = dir / "x.mat";
    fs::path rep_path = dir / "report.json";
    REQUIRE(run_cli(gen_args(mat, 10, 8, 4, 7)) == 0);
    CHECK(run_cli("solve " + mat.string() + " --problem lrr --out " +
                  rep_path.string()) == 0);
    json rep = load_json(rep_path);
    CHECK(rep["solver_diagnostics"]["converged"] == true);
    CHECK(rep["closed_form_distance"].get<double>() <= 1e-4);

    Matrix X = read_matrix(mat);
    Matrix Z = json_matrix(rep["Z"]);
    Matrix closed = pseudo_inverse(X, kTol) * X;
    CHECK((Z - closed).norm() <= 1e-4 * std::max(1.0, closed.norm()));
}

TEST_CASE("verify grades supplied pairs") {
    fs::path dir = fresh_dir("verify");
    fs::path mat = dir / "x.mat";
    REQUIRE(run_cli(gen_args(mat, 9, 7, 3, 8)) == 0);
    Matrix X = read_matrix(mat);
    Matrix XpX = pseudo_inverse(X, kTol) * X;
    Matrix XXp = X * pseudo_inverse(X, kTol);

    fs::path z = dir / "z.mat", l = dir / "l.mat", rep_path = dir / "rep.json";

    write_matrix(z, XpX);
    write_matrix(l, Matrix::Zero(9, 9));
    CHECK(run_cli("verify " + mat.string() + " " + z.string() + " " + l.string() +
                  " --out " + rep_path.string()) == 0);
    json rep = load_json(rep_path);
    CHECK(rep["certificates"][0]["rank_optimal"] == true);
    CHECK(rep["certificates"][0]["nuclear_optimal"] == true);

    write_matrix(z, Matrix(0.5 * XpX));
    write_matrix(l, Matrix(0.5 * XXp));
    CHECK(run_cli("verify " + mat.string() + " " + z.string() + " " + l.string() +
                  " --out " + rep_path.string()) == 0);
    rep = load_json(rep_path);
    CHECK(rep["certificates"][0]["nuclear_optimal"] == true);
    CHECK(rep["certificates"][0]["rank_optimal"] == false);

    write_matrix(z, Matrix::Zero(7, 7));
    write_matrix(l, Matrix::Zero(9, 9));
    CHECK(run_cli("verify " + mat.string() + " " + z.string() + " " + l.string() +
                  " --out " + rep_path.string()) == 0);
    rep = load_json(rep_path);
    CHECK(rep["certificates"][0]["rank_optimal"] == false);
    CHECK(rep["certificates"][0]["nuclear_optimal"] == false);
    CHECK(rep["certificates"][0]["feasibility_residual"].get<double>() > 0.5);

    // dimension mismatch is a usage error
    write_matrix(z, Matrix::Zero(5, 5));
    CHECK(run_cli("verify " + mat.string() + " " + z.string() + " " + l.string() +
                  " --out " + rep_path.string()) == 2);
}

TEST_CASE("exhibit emits distinct certified optima") {
    fs::path dir = fresh_dir("exhibit");
    fs::path mat = dir / "x.mat";
    fs::path rep_path = dir / "rep.json";
    REQUIRE(run_cli(gen_args(mat, 9, 8, 4, 9)) == 0);
    Matrix X = read_matrix(mat);
    Matrix XpX = pseudo_inverse(X, kTol) * X;

    CHECK(run_cli("exhibit " + mat.string() + " --count 2 --out " +
                  rep_path.string()) == 0);
    json rep = load_json(rep_path);
    REQUIRE(rep["members"].size() == 2);
    CHECK((json_matrix(rep["members"][0]["Z"]) - XpX).norm() <= 1e-10);
    CHECK((json_matrix(rep["members"][1]["Z"]) - 0.5 * XpX).norm() <= 1e-10);
    for (const auto& m : rep["members"]) CHECK(m["certified"] == true);

    CHECK(run_cli("exhibit " + mat.string() + " --count 5 --seed 2 --out " +
                  rep_path.string()) == 0);
    rep = load_json(rep_path);
    REQUIRE(rep["members"].size() == 5);
    double floor = rep["distinctness_floor"].get<double>();
    Matrix dist = json_matrix(rep["pairwise_z_distance"]);
    for (const auto& m : rep["members"]) {
        CHECK(m["certified"] == true);
        CHECK(m["certificate"]["theorem2_member"] == true);
    }
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) CHECK(dist(i, j) >= floor);

    CHECK(run_cli("exhibit " + mat.string() + " --count 1 --out " +
                  rep_path.string()) == 2);
}

TEST_CASE("tolerance flags and environment variables are honored") {
    fs::path dir = fresh_dir("tol");
    fs::path mat = dir / "x.mat";
    fs::path rep_path = dir / "rep.json";
    REQUIRE(run_cli(gen_args(mat, 8, 6, 3, 10)) == 0);

    CHECK(run_cli("counterexample " + mat.string() + " --rank-tol 1e-7 --out " +
                  rep_path.string()) == 0);
    json rep = load_json(rep_path);
    CHECK(rep["tolerance_profile"]["rank_rel_tol"].get<double>() ==
          doctest::Approx(1e-7));

    CHECK(std::system(("LATLRR_RANK_TOL=1e-6 " + std::string(LATLRR_CLI_PATH) +
                       " counterexample " + mat.string() + " --out " +
                       rep_path.string() + " >/dev/null 2>&1")
                          .c_str()) == 0);
    rep = load_json(rep_path);
    CHECK(rep["tolerance_profile"]["rank_rel_tol"].get<double>() ==
          doctest::Approx(1e-6));

    // flag wins over env
    CHECK(std::system(("LATLRR_RANK_TOL=1e-6 " + std::string(LATLRR_CLI_PATH) +
                       " counterexample " + mat.string() +
                       " --rank-tol 1e-5 --out " + rep_path.string() +
                       " >/dev/null 2>&1")
                          .c_str()) == 0);
    rep = load_json(rep_path);
    CHECK(rep["tolerance_profile"]["rank_rel_tol"].get<double>() ==
          doctest::Approx(1e-5));
}

TEST_CASE("property-suite passes on a reduced ensemble") {
    fs::path dir = fresh_dir("suite");
    fs::path rep_path = dir / "rep.json";
    CHECK(run_cli("property-suite --seed 1 --max-dim 16 --max-rank 4 --out " +
                  rep_path.string()) == 0);
    json rep = load_json(rep_path);
    CHECK(rep["all_passed"] == true);
    for (const auto& b : rep["batteries"]) {
        CHECK(b["passed"] == b["total"]);
        CHECK(b["failures"].empty());
    }
    CHECK(rep["inclusions"].size() == 2);
}

TEST_CASE("large matrices are written as sibling files") {
    fs::path dir = fresh_dir("sibling");
    fs::path mat = dir / "x.mat";
    fs::path rep_path = dir / "rep.json";
    REQUIRE(run_cli(gen_args(mat, 70, 66, 5, 11)) == 0);
    CHECK(run_cli("solve " + mat.string() + " --out " + rep_path.string()) == 0);
    json rep = load_json(rep_path);
    REQUIRE(rep["L"].contains("path"));
    Matrix L = read_matrix(dir / rep["L"]["path"].get<std::string>());
    CHECK(L.rows() == 70);
    CHECK(L.cols() == 70);
}

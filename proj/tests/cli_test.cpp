#include "egs/dataset.hpp"
#include "egs/graph_io.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("egs_cli_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    int run(const std::string& args) const {
        const std::string cmd = std::string(EGS_CLI_PATH) + " " + args + " > " + path("stdout.txt") + " 2> " +
                                path("stderr.txt");
        const int status = std::system(cmd.c_str());
        return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    }

    static std::string slurp(const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    fs::path dir_;
};

TEST_F(CliTest, GenerateWritesDataAndGraph) {
    ASSERT_EQ(run("generate --nodes 6 --mean-arcs 6 --records 50 --seed 3 --out-data " + path("d.csv") +
                  " --out-graph " + path("g.txt")),
              0);
    const auto data = egs::read_csv_file(path("d.csv"), egs::DataKind::continuous);
    EXPECT_EQ(data.num_records(), 50);
    EXPECT_EQ(data.num_variables(), 6);
    const auto g = egs::read_graph_file(path("g.txt"));
    EXPECT_EQ(g.names, data.names());
}

TEST_F(CliTest, LearnAndDiff) {
    ASSERT_EQ(run("generate --nodes 6 --mean-arcs 6 --records 500 --seed 4 --out-data " + path("d.csv") +
                  " --out-graph " + path("truth.txt")),
              0);
    for (const std::string engine : {"egs", "egsgs", "gs", "gs1"}) {
        ASSERT_EQ(run("learn --engine " + engine + " --data " + path("d.csv") +
                      " --n 10 --restarts 3 --seed 1 --out-graph " + path("learned.txt") + " --out-dag " +
                      path("dag.txt")),
                  0)
            << slurp(path("stderr.txt"));
        const auto learned = egs::read_graph_file(path("learned.txt"));
        EXPECT_EQ(learned.graph.num_nodes(), 6);
        const auto dag = egs::read_graph_file(path("dag.txt"));
        EXPECT_TRUE(dag.graph.undirected_edges().empty());
    }
    ASSERT_EQ(run("diff --learned " + path("truth.txt") + " --truth " + path("truth.txt") + " --mode raw"), 0);
    const auto out = slurp(path("stdout.txt"));
    EXPECT_NE(out.find("total 0"), std::string::npos) << out;
    // The raw DAG against its own class differs only in arcs the class leaves undirected.
    ASSERT_EQ(run("diff --learned " + path("truth.txt") + " --truth " + path("truth.txt")), 0);
    const auto essential = slurp(path("stdout.txt"));
    EXPECT_NE(essential.find("adj_plus 0\nadj_minus 0\n"), std::string::npos) << essential;
    EXPECT_NE(essential.find("arcs_minus 0\n"), std::string::npos) << essential;
}

TEST_F(CliTest, ExperimentAndDistinct) {
    {
        std::ofstream spec(path("spec.txt"));
        spec << "id=cli\nnodes=5\nmean_arcs=5\nrecords=100\nreplications=2\nengines=egs,gs\nn=5\nrestarts=2\nseed=8\n";
    }
    ASSERT_EQ(run("experiment --spec " + path("spec.txt") + " --out " + path("res.csv")), 0)
        << slurp(path("stderr.txt"));
    const auto table = slurp(path("res.csv"));
    EXPECT_EQ(std::count(table.begin(), table.end(), '\n'), 5);

    ASSERT_EQ(run("generate --nodes 6 --mean-arcs 6 --records 200 --seed 5 --out-data " + path("d.csv") +
                  " --out-graph " + path("g.txt")),
              0);
    ASSERT_EQ(run("distinct --data " + path("d.csv") + " --runs 20 --seed 2 --out " + path("hist.csv")), 0);
    EXPECT_NE(slurp(path("stdout.txt")).find("attempts 20"), std::string::npos);
}

TEST_F(CliTest, DiscreteLearnWithBdeu) {
    {
        std::ofstream csv(path("d.csv"));
        csv << "a,b,c\n";
        for (int i = 0; i < 200; ++i) csv << i % 2 << ',' << (i % 2) * ((i / 2) % 3 > 0) << ',' << (i / 3) % 2 << '\n';
    }
    ASSERT_EQ(run("learn --engine egs --data " + path("d.csv") + " --discrete --score bdeu --n 5 --seed 1 --out-graph " +
                  path("g.txt")),
              0)
        << slurp(path("stderr.txt"));
}

TEST_F(CliTest, ErrorsExitNonZeroWithDiagnostic) {
    EXPECT_NE(run("learn --data " + path("missing.csv") + " --out-graph " + path("g.txt")), 0);
    EXPECT_NE(slurp(path("stderr.txt")).find("error"), std::string::npos);
    EXPECT_NE(run("generate --nodes 3 --mean-arcs 9 --records 5 --out-data " + path("d.csv") + " --out-graph " +
                  path("g.txt")),
              0);
    EXPECT_NE(run("bogus"), 0);
    {
        std::ofstream csv(path("d.csv"));
        csv << "a,b\n0.5,1\n";
    }
    EXPECT_NE(run("learn --data " + path("d.csv") + " --score bdeu --out-graph " + path("g.txt")), 0);
}

}  // namespace

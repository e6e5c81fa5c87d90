#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "wg/io.hpp"

#include <sys/wait.h>

namespace {

std::string g_bin; // path to the wg binary, passed as --wg-bin
const std::string kDir = "cli_work";

int run(const std::string& args, const std::string& out_file = "") {
    std::string cmd = g_bin + " " + args;
    if (!out_file.empty()) cmd += " > " + out_file + " 2>&1";
    int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string p(const std::string& name) { return kDir + "/" + name; }

} // namespace

TEST_CASE("keygen: reports k, writes parseable key files, byte-deterministic under seed") {
    REQUIRE(run("keygen --q 9 --n 81 --r 3 --seed 42 --out " + p("a.key") + " --public-out " + p("a.pub"),
                p("kg.out")) == 0);
    CHECK(slurp(p("kg.out")).find("k=36") != std::string::npos);
    REQUIRE(run("keygen --q 9 --n 81 --r 3 --seed 42 --out " + p("b.key")) == 0);
    CHECK(slurp(p("a.key")) == slurp(p("b.key")));
    REQUIRE(run("keygen --q 9 --n 81 --r 3 --seed 43 --out " + p("c.key")) == 0);
    CHECK(slurp(p("a.key")) != slurp(p("c.key")));

    wg::KeyFile full = wg::read_key(p("a.key"));
    CHECK(full.secret_x.has_value());
    CHECK(full.secret_gamma.has_value());
    CHECK(full.public_G.rows == 36);
    wg::KeyFile pub = wg::read_key(p("a.pub"));
    CHECK(!pub.secret_x.has_value());
    CHECK(!pub.secret_gamma.has_value());
    CHECK(pub.public_G == full.public_G);
    CHECK(slurp(p("a.pub")).find("secret.") == std::string::npos);
}

TEST_CASE("keygen: infeasible parameters exit nonzero with a diagnostic") {
    CHECK(run("keygen --q 3 --n 100 --r 2 --seed 1 --out " + p("bad.key"), p("bad.out")) == 1);
    CHECK(slurp(p("bad.out")).find("error:") != std::string::npos);
}

TEST_CASE("encrypt/decrypt round trip through files") {
    REQUIRE(run("keygen --q 9 --n 81 --r 3 --seed 42 --out " + p("a.key")) == 0);
    wg::KeyFile key = wg::read_key(p("a.key"));
    std::vector<wg::elem> msg(key.public_G.rows);
    for (std::size_t i = 0; i < msg.size(); ++i) msg[i] = static_cast<wg::elem>((i * 5 + 1) % 9);
    wg::write_vector_file(p("msg.txt"), msg, 0);
    REQUIRE(run("encrypt --key " + p("a.key") + " --in " + p("msg.txt") + " --out " + p("ct.txt") + " --seed 7") == 0);
    REQUIRE(run("encrypt --key " + p("a.key") + " --in " + p("msg.txt") + " --out " + p("ct2.txt") + " --seed 7") == 0);
    CHECK(slurp(p("ct.txt")) == slurp(p("ct2.txt")));
    REQUIRE(run("decrypt --key " + p("a.key") + " --in " + p("ct.txt") + " --out " + p("dec.txt"), p("de.out")) == 0);
    auto [back, weight] = wg::read_vector_file(p("dec.txt"), 9);
    CHECK(back == msg);
    CHECK(weight == 15); // floor(r(q+1)/2) errors injected by default
    // a ciphertext differs from the plain codeword
    auto [ct, t] = wg::read_vector_file(p("ct.txt"), 9);
    CHECK(t == 15);
}

TEST_CASE("decrypt without secret lines is refused") {
    REQUIRE(run("keygen --q 9 --n 81 --r 3 --seed 42 --out " + p("a.key") + " --public-out " + p("a.pub")) == 0);
    std::vector<wg::elem> msg(36, 1);
    wg::write_vector_file(p("msg.txt"), msg, 0);
    REQUIRE(run("encrypt --key " + p("a.pub") + " --in " + p("msg.txt") + " --out " + p("ct.txt") + " --seed 7") == 0);
    CHECK(run("decrypt --key " + p("a.pub") + " --in " + p("ct.txt") + " --out " + p("dec.txt"), p("x.out")) == 1);
    CHECK(slurp(p("x.out")).find("secret") != std::string::npos);
}

TEST_CASE("distinguish: exit 0 with CSV inside the interval, exit 2 when the interval is empty") {
    REQUIRE(run("keygen --q 9 --n 81 --r 3 --seed 42 --out " + p("a.key")) == 0);
    CHECK(run("distinguish --key " + p("a.key") + " --seed 3 --out " + p("prof.csv"), p("d1.out")) == 0);
    std::string csv = slurp(p("prof.csv"));
    CHECK(csv.rfind("size,goppa_dim,random_dim\n", 0) == 0);
    CHECK(slurp(p("d1.out")).find("distinguishable") != std::string::npos);
    CHECK(run("distinguish --key " + p("a.key") + " --seed 3 --out " + p("prof2.csv")) == 0);
    CHECK(csv == slurp(p("prof2.csv"))); // byte-deterministic under the seed
    // r = 2 over GF(9): the strict interval is empty, the experimental one is not
    REQUIRE(run("keygen --q 9 --n 60 --r 2 --seed 5 --out " + p("r2.key")) == 0);
    CHECK(run("distinguish --key " + p("r2.key") + " --seed 3", p("d2.out")) == 2);
    CHECK(slurp(p("d2.out")).find("not distinguishable") != std::string::npos);
    CHECK(run("distinguish --key " + p("r2.key") + " --seed 3 --experimental", p("d3.out")) == 0);
}

TEST_CASE("filtration: white-box oracle agrees for every printed term") {
    REQUIRE(run("keygen --q 9 --n 81 --r 3 --seed 42 --out " + p("a.key")) == 0);
    REQUIRE(run("filtration --key " + p("a.key") + " --anchor 0 --target 4 --seed 9 --white-box", p("f.out")) == 0);
    std::string out = slurp(p("f.out"));
    CHECK(out.find("term 4:") != std::string::npos);
    CHECK(out.find("oracle: equal") != std::string::npos);
    CHECK(out.find("DIFFERS") == std::string::npos);
}

TEST_CASE("attack: black-box recovery from a secret-stripped key file") {
    REQUIRE(run("keygen --q 9 --n 81 --r 3 --seed 42 --out " + p("a.key") + " --public-out " + p("a.pub")) == 0);
    REQUIRE(run("attack --key " + p("a.pub") + " --seed 12 --out " + p("rep.json") + " --recovered-out " +
                    p("rec.key"),
                p("at.out")) == 0);
    std::string rep = slurp(p("rep.json"));
    CHECK(rep.find("\"verdict\": \"recovered\"") != std::string::npos);
    std::string rec = slurp(p("rec.key"));
    CHECK(rec.rfind("WGKEY v1 recovered\n", 0) == 0);
    CHECK(rec.find("recovered.x=") != std::string::npos);
    CHECK(rec.find("recovered.u=") != std::string::npos);
    // the recovered representation reproduces the public code exactly
    wg::KeyFile pub = wg::read_key(p("a.pub"));
    wg::FieldTower F = wg::FieldTower::from_q(pub.q);
    std::istringstream rs(rec);
    std::string line;
    std::vector<wg::elem> xhat, uhat;
    while (std::getline(rs, line)) {
        auto grab = [&](const std::string& tag, std::vector<wg::elem>& dst, long long bound) {
            if (line.rfind(tag, 0) != 0) return;
            std::istringstream vs(line.substr(tag.size()));
            long long v;
            while (vs >> v) {
                REQUIRE(v >= 0);
                REQUIRE(v < bound);
                dst.push_back(static_cast<wg::elem>(v));
            }
        };
        grab("recovered.x=", xhat, F.q2);
        grab("recovered.u=", uhat, F.q);
    }
    REQUIRE(xhat.size() == static_cast<std::size_t>(pub.n));
    REQUIRE(uhat.size() == static_cast<std::size_t>(pub.n));
    wg::LinearCode C = wg::LinearCode::from_rows(F, wg::Level::mid, pub.n, wg::Mat(pub.public_G));
    wg::LinearCode A = wg::alternant(F, 30, xhat, std::vector<wg::elem>(pub.n, 1));
    wg::Mat scaled(A.dim(), A.length());
    for (std::size_t i = 0; i < A.dim(); ++i)
        for (std::size_t c = 0; c < A.length(); ++c) scaled.at(i, c) = F.mul(A.generator().at(i, c), uhat[c]);
    CHECK(wg::LinearCode::from_rows(F, wg::Level::mid, A.length(), std::move(scaled)) == C);
    // recovered key files are byte-deterministic under the seed
    REQUIRE(run("attack --key " + p("a.pub") + " --seed 12 --recovered-out " + p("rec2.key"), p("at2.out")) == 0);
    CHECK(rec == slurp(p("rec2.key")));
}

TEST_CASE("attack: exhaustion exits 3") {
    REQUIRE(run("keygen --q 9 --n 81 --r 3 --seed 42 --out " + p("a.key")) == 0);
    CHECK(run("attack --key " + p("a.key") + " --seed 12 --max-trials 0", p("ex.out")) == 3);
    CHECK(slurp(p("ex.out")).find("\"verdict\": \"exhausted\"") != std::string::npos);
}

TEST_CASE("tables: feasibility rows for both variants plus the discrepancy note") {
    REQUIRE(run("tables", p("t.out")) == 0);
    std::string out = slurp(p("t.out"));
    CHECK(out.find("r,strict_q,experimental_q") != std::string::npos);
    CHECK(out.find("2,8,9") != std::string::npos);
    CHECK(out.find("3,19,19") != std::string::npos);
    CHECK(out.find("4,32,37") != std::string::npos);
    CHECK(out.find("5,61,64") != std::string::npos);
    CHECK(out.find("note:") != std::string::npos);
    REQUIRE(run("tables --q 29 --n 794 --r 5 --experimental", p("t2.out")) == 0);
    CHECK(slurp(p("t2.out")).find("[493, 506]") != std::string::npos);
}

TEST_CASE("malformed key files fail with a line-numbered parse error") {
    std::ofstream bad(p("broken.key"));
    bad << "WGKEY v1\nq=9 m=2 n=81 r=3\nnonsense line\n";
    bad.close();
    CHECK(run("attack --key " + p("broken.key") + " --seed 1", p("pe.out")) == 1);
    std::string out = slurp(p("pe.out"));
    CHECK(out.find("error:") != std::string::npos);
    CHECK(out.find(":3:") != std::string::npos);
}

int main(int argc, char** argv) {
    std::vector<char*> pass;
    for (int i = 0; i < argc; ++i) {
        if (std::string(argv[i]) == "--wg-bin" && i + 1 < argc) {
            g_bin = argv[++i];
            continue;
        }
        pass.push_back(argv[i]);
    }
    if (g_bin.empty()) {
        const char* env = std::getenv("WG_BIN");
        if (env) g_bin = env;
    }
    if (g_bin.empty()) {
        std::fprintf(stderr, "missing --wg-bin <path> (or WG_BIN)\n");
        return 1;
    }
    std::filesystem::create_directories(kDir);
    doctest::Context ctx(static_cast<int>(pass.size()), pass.data());
    return ctx.run();
}

// End-to-end tests of the command-line tool. The binary path arrives in the
// RANKCRYPT_CLI environment variable (set by CTest).

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

std::string cli_path() {
    const char* p = std::getenv("RANKCRYPT_CLI");
    REQUIRE(p != nullptr);
    return p;
}

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args, const fs::path& dir) {
    const fs::path out_file = dir / "stdout.txt";
    const std::string cmd =
        cli_path() + " " + args + " > " + out_file.string() + " 2> /dev/null";
    const int rc = std::system(cmd.c_str());
    std::ifstream in(out_file);
    std::string out{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    REQUIRE(rc != -1);
    return {WEXITSTATUS(rc), out};
}

std::vector<char> slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("rankcrypt-cli-" +
                                                   std::to_string(::getpid()))) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("keygen is deterministic and reports the key figures") {
    TempDir dir;
    auto r1 = run("keygen --seed 7 --pub " + dir.file("pub1.json") + " --priv " +
                      dir.file("priv1.json"),
                  dir.path);
    CHECK(r1.exit_code == 0);
    CHECK(r1.out.find("384 bits") != std::string::npos);
    CHECK(r1.out.find("0.333333") != std::string::npos);

    auto r2 = run("keygen --seed 7 --pub " + dir.file("pub2.json") + " --priv " +
                      dir.file("priv2.json"),
                  dir.path);
    CHECK(r2.exit_code == 0);
    CHECK(slurp(dir.file("pub1.json")) == slurp(dir.file("pub2.json")));
    CHECK(slurp(dir.file("priv1.json")) == slurp(dir.file("priv2.json")));
}

TEST_CASE("keygen rejects invalid parameters with exit 2") {
    TempDir dir;
    auto r = run("keygen --k 9 --pub " + dir.file("p.json") + " --priv " +
                     dir.file("s.json"),
                 dir.path);
    CHECK(r.exit_code == 2);
    auto r2 = run("keygen --a 1 --pub " + dir.file("p.json") + " --priv " +
                      dir.file("s.json"),
                  dir.path);
    CHECK(r2.exit_code == 2);
}

TEST_CASE("usage errors exit with 2") {
    TempDir dir;
    CHECK(run("no-such-command", dir.path).exit_code == 2);
    CHECK(run("keygen --pub only.json", dir.path).exit_code == 2);  // --priv missing
}

TEST_CASE("file encryption round trip") {
    TempDir dir;
    REQUIRE(run("keygen --seed 11 --pub " + dir.file("pub.json") + " --priv " +
                    dir.file("priv.json"),
                dir.path)
                .exit_code == 0);

    SECTION("1 KiB of random bytes") {
        std::vector<char> payload(1024);
        std::mt19937_64 rng(1234);
        for (auto& c : payload) c = static_cast<char>(rng());
        std::ofstream(dir.file("msg.bin"), std::ios::binary)
            .write(payload.data(), static_cast<std::streamsize>(payload.size()));

        auto enc = run("encrypt --seed 5 --pub " + dir.file("pub.json") + " --in " +
                           dir.file("msg.bin") + " --out " + dir.file("ct.json"),
                       dir.path);
        REQUIRE(enc.exit_code == 0);
        auto dec = run("decrypt --priv " + dir.file("priv.json") + " --in " +
                           dir.file("ct.json") + " --out " + dir.file("out.bin"),
                       dir.path);
        REQUIRE(dec.exit_code == 0);
        CHECK(slurp(dir.file("out.bin")) == payload);

        // encryption with the same seed is byte-identical
        auto enc2 = run("encrypt --seed 5 --pub " + dir.file("pub.json") + " --in " +
                            dir.file("msg.bin") + " --out " + dir.file("ct2.json"),
                        dir.path);
        REQUIRE(enc2.exit_code == 0);
        CHECK(slurp(dir.file("ct.json")) == slurp(dir.file("ct2.json")));
    }

    SECTION("1 MiB round trips byte-identically") {
        std::vector<char> payload(1 << 20);
        std::mt19937_64 rng(99);
        for (auto& c : payload) c = static_cast<char>(rng());
        std::ofstream(dir.file("big.bin"), std::ios::binary)
            .write(payload.data(), static_cast<std::streamsize>(payload.size()));
        REQUIRE(run("encrypt --seed 5 --pub " + dir.file("pub.json") + " --in " +
                        dir.file("big.bin") + " --out " + dir.file("bigct.json"),
                    dir.path)
                    .exit_code == 0);
        REQUIRE(run("decrypt --priv " + dir.file("priv.json") + " --in " +
                        dir.file("bigct.json") + " --out " + dir.file("bigout.bin"),
                    dir.path)
                    .exit_code == 0);
        CHECK(slurp(dir.file("bigout.bin")) == payload);
    }

    SECTION("empty file has a valid header-only payload") {
        std::ofstream(dir.file("empty.bin"), std::ios::binary);
        REQUIRE(run("encrypt --seed 6 --pub " + dir.file("pub.json") + " --in " +
                        dir.file("empty.bin") + " --out " + dir.file("ct.json"),
                    dir.path)
                    .exit_code == 0);
        const auto ct = nlohmann::json::parse(std::ifstream(dir.file("ct.json")));
        CHECK(ct.at("blocks").size() >= 1);
        REQUIRE(run("decrypt --priv " + dir.file("priv.json") + " --in " +
                        dir.file("ct.json") + " --out " + dir.file("out.bin"),
                    dir.path)
                    .exit_code == 0);
        CHECK(slurp(dir.file("out.bin")).empty());
    }

    SECTION("a tampered block exits with the decode-failure code") {
        std::ofstream(dir.file("msg.bin"), std::ios::binary) << "attack at dawn";
        REQUIRE(run("encrypt --seed 8 --pub " + dir.file("pub.json") + " --in " +
                        dir.file("msg.bin") + " --out " + dir.file("ct.json"),
                    dir.path)
                    .exit_code == 0);
        auto ct = nlohmann::json::parse(std::ifstream(dir.file("ct.json")));
        // replace the first block with junk far from every codeword
        for (auto& v : ct["blocks"][0]) v = (v.get<int>() * 97 + 31) % 256;
        std::ofstream(dir.file("ct.json")) << ct.dump(2);
        auto dec = run("decrypt --priv " + dir.file("priv.json") + " --in " +
                           dir.file("ct.json") + " --out " + dir.file("out.bin"),
                       dir.path);
        CHECK(dec.exit_code == 4);
    }
}

TEST_CASE("analyze distinguishes smart keys from naive keys") {
    TempDir dir;
    REQUIRE(run("keygen --seed 3 --pub " + dir.file("pub.json") + " --priv " +
                    dir.file("priv.json"),
                dir.path)
                .exit_code == 0);
    REQUIRE(run("keygen --seed 3 --x-mode random_naive --pub " + dir.file("npub.json") +
                    " --priv " + dir.file("npriv.json"),
                dir.path)
                .exit_code == 0);

    SECTION("smart key: distinguisher-resistant, flagged by the aN threshold") {
        auto r = run("analyze --json --priv " + dir.file("priv.json"), dir.path);
        CHECK(r.exit_code == 0);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j.at("rk_y_ext") == 2);
        CHECK(j.at("a_effective") == 2);
        CHECK(j.at("kernel_dim") == 3);
        CHECK(j.at("secure") == false);  // aN = 16 < 60
    }
    SECTION("naive key: kernel distinguisher succeeds, exit 5") {
        auto r = run("analyze --json --pub " + dir.file("npub.json"), dir.path);
        CHECK(r.exit_code == 5);
        const auto j = nlohmann::json::parse(r.out);
        CHECK(j.at("kernel_dim") == 1);
        CHECK(j.at("a_effective") == 0);
    }
    SECTION("public-key analysis agrees with the private audit") {
        auto pub_r = run("analyze --json --pub " + dir.file("pub.json"), dir.path);
        auto priv_r = run("analyze --json --priv " + dir.file("priv.json"), dir.path);
        const auto a = nlohmann::json::parse(pub_r.out);
        const auto b = nlohmann::json::parse(priv_r.out);
        CHECK(a.at("rk_y_ext") == b.at("rk_y_ext"));
        CHECK(a.at("kernel_dim") == b.at("kernel_dim"));
    }
    SECTION("malformed key file exits with 2") {
        std::ofstream(dir.file("broken.json")) << "{broken";
        CHECK(run("analyze --pub " + dir.file("broken.json"), dir.path).exit_code == 2);
    }
}

TEST_CASE("worked-example self check passes") {
    TempDir dir;
    auto r = run("paper-examples", dir.path);
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find("0 check(s) failed") != std::string::npos);
}

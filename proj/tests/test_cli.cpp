#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <string>
#include <sys/wait.h>

#include "test_util.hpp"
#include "texnet/image.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    REQUIRE(status != -1);
    return WIFEXITED(status) ? WEXITSTATUS(status) : -2;
}

const std::string kBin = TEXNET_BIN;

// Deterministic miniature dataset: speckle vs. stripes, two classes of four.
fs::path make_dataset(const std::string& name) {
    const auto root = testutil::fresh_dir(name);
    fs::create_directories(root / "speckle");
    fs::create_directories(root / "stripes");
    for (int i = 0; i < 4; ++i) {
        testutil::write_pgm((root / "speckle" / ("p" + std::to_string(i) + ".pgm")).string(),
                            testutil::random_image(16, 16, 3000 + i));
        texnet::GrayImage striped(16, 16);
        for (int y = 0; y < 16; ++y)
            for (int x = 0; x < 16; ++x)
                striped.at(y, x) =
                    static_cast<std::uint8_t>(((x + y + i) % 5) * 50);
        testutil::write_pgm((root / "stripes" / ("s" + std::to_string(i) + ".pgm")).string(),
                            striped);
    }
    return root;
}

} // namespace

TEST_CASE("extract/eval pipeline runs clean and reports accuracy") {
    const auto root = make_dataset("texnet_cli_pipe");
    const auto out = testutil::fresh_dir("texnet_cli_pipe_out");
    const std::string csv = (out / "f.csv").string();

    CHECK(run(kBin + " extract " + root.string() + " --out " + csv +
              " --radii 1,2 --qs 3 --threads 2 2>" + (out / "err.txt").string()) == 0);
    CHECK(fs::exists(csv));
    CHECK(fs::exists(csv + ".meta.json"));
    CHECK(!testutil::read_bytes((out / "err.txt").string()).empty()); // progress

    const std::string stdout_file = (out / "acc.txt").string();
    CHECK(run(kBin + " eval " + csv + " --threads 2 >" + stdout_file + " 2>/dev/null") == 0);
    CHECK(testutil::read_bytes(stdout_file) == "100.00\n");
    CHECK(fs::exists((out / "f.eval.json").string()));
    CHECK(fs::exists((out / "f.eval.txt").string()));
}

TEST_CASE("extraction is byte-identical across reruns and thread counts") {
    const auto root = make_dataset("texnet_cli_det");
    const auto out = testutil::fresh_dir("texnet_cli_det_out");
    const std::string a = (out / "a.csv").string();
    const std::string b = (out / "b.csv").string();
    const std::string c = (out / "c.csv").string();

    const std::string tail = " --radii 1,2 --qs 3,5 2>/dev/null";
    REQUIRE(run(kBin + " extract " + root.string() + " --out " + a + " --threads 1" + tail) == 0);
    REQUIRE(run(kBin + " extract " + root.string() + " --out " + b + " --threads 1" + tail) == 0);
    REQUIRE(run(kBin + " extract " + root.string() + " --out " + c + " --threads 3" + tail) == 0);

    const std::string bytes = testutil::read_bytes(a);
    CHECK(bytes == testutil::read_bytes(b));
    CHECK(bytes == testutil::read_bytes(c));
}

TEST_CASE("eval rejects a tampered feature file") {
    const auto root = make_dataset("texnet_cli_tamper");
    const auto out = testutil::fresh_dir("texnet_cli_tamper_out");
    const std::string csv = (out / "f.csv").string();
    REQUIRE(run(kBin + " extract " + root.string() + " --out " + csv +
                " --radii 1 --qs 2 2>/dev/null") == 0);

    std::string bytes = testutil::read_bytes(csv);
    bytes[bytes.size() / 2] = bytes[bytes.size() / 2] == '5' ? '6' : '5';
    testutil::write_bytes(csv, bytes);
    CHECK(run(kBin + " eval " + csv + " >/dev/null 2>/dev/null") == 2);
}

TEST_CASE("render writes a same-size grayscale image") {
    const auto root = make_dataset("texnet_cli_render");
    const auto out = testutil::fresh_dir("texnet_cli_render_out");
    const std::string src = (root / "stripes" / "s0.pgm").string();
    const std::string dst = (out / "k.png").string();
    CHECK(run(kBin + " render " + src + " --out " + dst +
              " --radius 2 --measure ke 2>/dev/null") == 0);
    const texnet::GrayImage img = texnet::load_gray(dst);
    CHECK(img.width == 16);
    CHECK(img.height == 16);
}

TEST_CASE("sweep writes one row per combination") {
    const auto root = make_dataset("texnet_cli_sweep");
    const auto out = testutil::fresh_dir("texnet_cli_sweep_out");
    const std::string csv = (out / "s.csv").string();
    CHECK(run(kBin + " sweep " + root.string() + " --mode theta-pairs" +
              " --radii 1,2 --qs 2 --out " + csv + " 2>/dev/null") == 0);
    const std::string bytes = testutil::read_bytes(csv);
    CHECK(bytes ==
          "radii,qs,features,accuracy\n"
          "1,2,9,1\n"
          "1|2,2,18,1\n"
          "2,2,9,1\n");
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(run(kBin + " >/dev/null 2>/dev/null") == 1);               // no subcommand
    CHECK(run(kBin + " frobnicate >/dev/null 2>/dev/null") == 1);    // unknown
    CHECK(run(kBin + " extract >/dev/null 2>/dev/null") == 1);       // missing arg
    CHECK(run(kBin + " eval f.csv --bogus >/dev/null 2>/dev/null") == 1);

    const auto root = make_dataset("texnet_cli_usage");
    CHECK(run(kBin + " extract " + root.string() +
              " --radii 9,2 --out /tmp/x.csv >/dev/null 2>/dev/null") == 1);
    CHECK(run(kBin + " extract " + root.string() +
              " --lambda 0 --out /tmp/x.csv >/dev/null 2>/dev/null") == 1);
    CHECK(run(kBin + " sweep " + root.string() +
              " --mode sideways >/dev/null 2>/dev/null") == 1);
    CHECK(run(kBin + " eval nowhere.csv --gamma -1 >/dev/null 2>/dev/null") == 1);
}

TEST_CASE("data errors exit with code 2") {
    const auto empty = testutil::fresh_dir("texnet_cli_empty");
    CHECK(run(kBin + " extract " + empty.string() +
              " --out /tmp/x.csv >/dev/null 2>/dev/null") == 2);
    CHECK(run(kBin + " eval /does/not/exist.csv >/dev/null 2>/dev/null") == 2);
    CHECK(run(kBin + " render /does/not/exist.png --out /tmp/x.png"
              " >/dev/null 2>/dev/null") == 2);

    // a class directory without a single readable image
    const auto root = testutil::fresh_dir("texnet_cli_unreadable");
    fs::create_directories(root / "a");
    fs::create_directories(root / "b");
    testutil::write_bytes((root / "a" / "fake.png").string(), "not an image");
    testutil::write_bytes((root / "b" / "fine.pgm").string(), "P5\n1 1\n255\nx");
    const std::string err = (root / "err.txt").string();
    CHECK(run(kBin + " extract " + root.string() + " --out /tmp/x.csv 2>" + err +
              " >/dev/null") == 2);
    CHECK(testutil::read_bytes(err).find("fake.png") != std::string::npos);
}

TEST_CASE("--version prints and exits clean") {
    CHECK(run(kBin + " --version >/dev/null 2>/dev/null") == 0);
}

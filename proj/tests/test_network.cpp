#include <doctest.h>

#include <cmath>
#include <numeric>

#include "test_util.hpp"
#include "texnet/error.hpp"
#include "texnet/network.hpp"

using namespace texnet;

namespace {

// All-pairs reference: walks every ordered pixel pair and rebuilds the three
// measures straight from the connection rule, independent of the scan in
// compute_measures.
struct OracleMaps {
    std::vector<double> k, ks, ke;
};

OracleMaps oracle_measures(const GrayImage& img, double r) {
    OracleMaps out;
    out.k.assign(img.pixel_count(), 0.0);
    out.ks.assign(img.pixel_count(), 0.0);
    out.ke.assign(img.pixel_count(), 0.0);
    const double r2 = r * r;
    for (int ay = 0; ay < img.height; ++ay)
        for (int ax = 0; ax < img.width; ++ax)
            for (int by = 0; by < img.height; ++by)
                for (int bx = 0; bx < img.width; ++bx) {
                    if (ay == by && ax == bx) continue;
                    const double d2 = (ay - by) * (ay - by) + (ax - bx) * (ax - bx);
                    if (d2 > r2) continue;
                    const int ia = img.at(ay, ax);
                    const int ib = img.at(by, bx);
                    if (ia > ib) continue; // edge runs b->a; counted from b
                    const double w =
                        edge_weight(ia, ib, std::sqrt(d2), r, img.max_level);
                    const std::size_t a = static_cast<std::size_t>(ay) * img.width + ax;
                    const std::size_t b = static_cast<std::size_t>(by) * img.width + bx;
                    out.k[a] += 1.0;
                    out.ks[a] += w;
                    out.ke[b] += w;
                }
    return out;
}

} // namespace

TEST_CASE("offsets_for sizes at reference radii") {
    CHECK(offsets_for(1).offsets.size() == 4);
    CHECK(offsets_for(2).offsets.size() == 12);
    CHECK(offsets_for(3).offsets.size() == 28);
    CHECK(offsets_for(5).offsets.size() == 80);
    CHECK(offsets_for(1.5).offsets.size() == 8);
}

TEST_CASE("offsets_for is symmetric and in-range") {
    for (double r : {1.0, 2.0, 3.0, 4.0, 5.0, 2.5}) {
        const auto hood = offsets_for(r);
        for (const Offset& o : hood.offsets) {
            CHECK(o.dy * o.dy + o.dx * o.dx <= r * r);
            CHECK(o.dist == doctest::Approx(std::sqrt(o.dy * o.dy + o.dx * o.dx)));
            bool mirrored = false;
            for (const Offset& m : hood.offsets)
                if (m.dy == -o.dy && m.dx == -o.dx) mirrored = true;
            CHECK(mirrored);
        }
    }
    CHECK_THROWS_AS(offsets_for(0.5), ParameterError);
    CHECK_THROWS_AS(offsets_for(0), ParameterError);
    CHECK_THROWS_AS(offsets_for(-2), ParameterError);
}

TEST_CASE("edge_weight reference values") {
    // r = 1: pure normalized intensity difference
    CHECK(edge_weight(100, 50, 1.0, 1.0, 255) == doctest::Approx(50.0 / 255.0).epsilon(1e-15));
    // r = 3, d = 2: ((2-1)/(3-1) + 50/255) / 2
    CHECK(edge_weight(100, 50, 2.0, 3.0, 255) ==
          doctest::Approx(0.3480392156862745).epsilon(1e-15));
    // extremes stay inside [0, 1]
    CHECK(edge_weight(0, 255, 1.0, 1.0, 255) == doctest::Approx(1.0));
    CHECK(edge_weight(7, 7, 1.0, 1.0, 255) == doctest::Approx(0.0));
    std::mt19937 rng(3);
    for (int i = 0; i < 500; ++i) {
        const int ia = testutil::uniform_int(rng, 0, 255);
        const int ib = testutil::uniform_int(rng, 0, 255);
        const double r = 1.0 + testutil::uniform_int(rng, 0, 40) / 10.0;
        const double d = 1.0 + (r - 1.0) * (testutil::uniform_int(rng, 0, 100) / 100.0);
        const double w = edge_weight(ia, ib, d, r, 255);
        CHECK(w >= 0.0);
        CHECK(w <= 1.0);
    }
}

TEST_CASE("constant image: interior degree equals the neighborhood size") {
    const GrayImage img(5, 5, 90);
    const MeasureMaps maps = compute_measures(img, 2.0);
    CHECK(maps.max_degree == 12);
    CHECK(maps.k_at(2, 2) == 12.0);
    // equal-intensity weights reduce to (d-1)/(r-1)/2; summed over r=2's
    // twelve offsets this is exactly 2*sqrt(2)
    CHECK(maps.ks_at(2, 2) == doctest::Approx(2.8284271247461903).epsilon(1e-15));
    CHECK(maps.ke_at(2, 2) == doctest::Approx(2.8284271247461903).epsilon(1e-15));
    // corner pixel: truncated neighborhood (3 in-bounds at r=1... r=2: 5)
    const auto hood = offsets_for(2.0);
    int inbounds = 0;
    for (const Offset& o : hood.offsets)
        if (o.dy >= 0 && o.dx >= 0) ++inbounds;
    CHECK(maps.k_at(0, 0) == static_cast<double>(inbounds));
}

TEST_CASE("compute_measures matches the all-pairs oracle") {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        const int w = testutil::uniform_int(rng, 3, 20);
        const int h = testutil::uniform_int(rng, 3, 20);
        const GrayImage img = testutil::random_image(w, h, 5000 + trial);
        for (double r : {1.0, 2.0, 3.0}) {
            const MeasureMaps maps = compute_measures(img, r);
            const OracleMaps oracle = oracle_measures(img, r);
            for (std::size_t i = 0; i < img.pixel_count(); ++i) {
                CHECK(maps.k[i] == oracle.k[i]);
                CHECK(maps.ks[i] == doctest::Approx(oracle.ks[i]).epsilon(1e-12));
                CHECK(maps.ke[i] == doctest::Approx(oracle.ke[i]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("out-degree plus strict in-count covers the in-bounds neighborhood") {
    const GrayImage img = testutil::random_image(12, 12, 77);
    const double r = 2.0;
    const MeasureMaps maps = compute_measures(img, r);
    const auto hood = offsets_for(r);
    for (int y = 2; y < 10; ++y)
        for (int x = 2; x < 10; ++x) {
            int strictly_less = 0;
            for (const Offset& o : hood.offsets)
                if (img.at(y + o.dy, x + o.dx) < img.at(y, x)) ++strictly_less;
            CHECK(maps.k_at(y, x) + strictly_less == maps.max_degree);
        }
}

TEST_CASE("intensity inversion swaps out- and in-measures") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 8; ++trial) {
        const GrayImage img = testutil::random_image(16, 16, 900 + trial);
        GrayImage flipped = img;
        for (auto& p : flipped.pixels) p = static_cast<std::uint8_t>(255 - p);
        for (double r : {1.0, 2.0}) {
            const MeasureMaps a = compute_measures(img, r);
            const MeasureMaps b = compute_measures(flipped, r);
            const auto hood = offsets_for(r);
            for (int y = 0; y < img.height; ++y)
                for (int x = 0; x < img.width; ++x) {
                    // k of the flipped image counts original <=-neighbors
                    int lesser_or_equal = 0;
                    for (const Offset& o : hood.offsets) {
                        const int ny = y + o.dy, nx = x + o.dx;
                        if (ny < 0 || ny >= img.height || nx < 0 || nx >= img.width)
                            continue;
                        if (img.at(ny, nx) <= img.at(y, x)) ++lesser_or_equal;
                    }
                    CHECK(b.k_at(y, x) == static_cast<double>(lesser_or_equal));
                    CHECK(b.ks_at(y, x) ==
                          doctest::Approx(a.ke_at(y, x)).epsilon(1e-12));
                    CHECK(b.ke_at(y, x) ==
                          doctest::Approx(a.ks_at(y, x)).epsilon(1e-12));
                }
        }
    }
}

TEST_CASE("total out-degree equals total in-count") {
    const GrayImage img = testutil::random_image(15, 11, 31);
    for (double r : {1.0, 2.0, 3.0}) {
        const MeasureMaps maps = compute_measures(img, r);
        const double total_k =
            std::accumulate(maps.k.begin(), maps.k.end(), 0.0);
        // every edge leaves one pixel and enters another; with bidirectional
        // (equal-intensity) edges counted from both ends the totals agree
        double total_in = 0.0;
        const auto hood = offsets_for(r);
        for (int y = 0; y < img.height; ++y)
            for (int x = 0; x < img.width; ++x)
                for (const Offset& o : hood.offsets) {
                    const int ny = y + o.dy, nx = x + o.dx;
                    if (ny < 0 || ny >= img.height || nx < 0 || nx >= img.width)
                        continue;
                    if (img.at(ny, nx) <= img.at(y, x)) ++total_in;
                }
        CHECK(total_k == total_in);
        CHECK(std::accumulate(maps.ks.begin(), maps.ks.end(), 0.0) ==
              doctest::Approx(std::accumulate(maps.ke.begin(), maps.ke.end(), 0.0))
                  .epsilon(1e-12));
    }
}

TEST_CASE("directed_edges lists exactly the higher-or-equal neighbors") {
    // 3x3 with distinct center relations
    GrayImage img(3, 3);
    const std::uint8_t vals[9] = {10, 50, 50, 90, 50, 20, 50, 80, 10};
    for (int i = 0; i < 9; ++i) img.pixels[static_cast<std::size_t>(i)] = vals[i];
    const auto edges = directed_edges(img, 4, 1.0); // center, r=1: N,W,E,S
    // neighbors: N=50(equal), W=90(greater), E=20(less), S=80(greater)
    REQUIRE(edges.size() == 3);
    bool saw_equal = false;
    for (const auto& e : edges) {
        const int v = img.pixels[static_cast<std::size_t>(e.target)];
        CHECK(v >= 50);
        CHECK(e.weight ==
              doctest::Approx(edge_weight(50, v, 1.0, 1.0, 255)).epsilon(1e-15));
        if (e.bidirectional) {
            saw_equal = true;
            CHECK(v == 50);
        }
    }
    CHECK(saw_equal);
    CHECK_THROWS_AS(directed_edges(img, 9, 1.0), ParameterError);
    CHECK_THROWS_AS(directed_edges(img, -1, 1.0), ParameterError);
}

TEST_CASE("measure_from_name") {
    CHECK(measure_from_name("k") == Measure::OutDegree);
    CHECK(measure_from_name("ks") == Measure::OutStrength);
    CHECK(measure_from_name("ke") == Measure::InStrength);
    CHECK_THROWS_AS(measure_from_name("kq"), ParameterError);
    CHECK_THROWS_AS(measure_from_name(""), ParameterError);
}

TEST_CASE("render_measure scales by the maximum degree") {
    const GrayImage img = testutil::random_image(9, 9, 5);
    const MeasureMaps maps = compute_measures(img, 2.0);
    const GrayImage shot = render_measure(maps, Measure::OutStrength);
    REQUIRE(shot.width == 9);
    REQUIRE(shot.height == 9);
    for (std::size_t i = 0; i < shot.pixel_count(); ++i) {
        long expect = std::lround(255.0 * maps.ks[i] / maps.max_degree);
        if (expect < 0) expect = 0;
        if (expect > 255) expect = 255;
        CHECK(shot.pixels[i] == expect);
    }
    // constant input saturates the out-degree map in the interior
    const GrayImage flat(7, 7, 33);
    const GrayImage flat_shot =
        render_measure(compute_measures(flat, 2.0), Measure::OutDegree);
    CHECK(flat_shot.at(3, 3) == 255);
}

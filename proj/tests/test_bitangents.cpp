#include <doctest.h>

#include "generators.hpp"
#include "tropk4/bitangents.hpp"
#include "tropk4/errors.hpp"

using namespace tropk4;

TEST_CASE("classify_region") {
    Pt o{0, 0};
    CHECK(classify_region({3, 1}, o).region == 1);
    CHECK(classify_region({3, 1}, o).tag == "x");
    CHECK(classify_region({1, 3}, o).tag == "y");
    CHECK(classify_region({-1, -3}, o).tag == "z");
    CHECK(classify_region({0, 0}, o).tag == "x+y+z");
    CHECK(classify_region({2, 2}, o).tag == "x+y");
    CHECK(classify_region({0, -2}, o).tag == "x+z");
    CHECK(classify_region({-2, 0}, o).region == 7);
    CHECK(classify_region({-2, 0}, o).tag == "y+z");
    CHECK(classify_region({4, 1}, {1, 1}).tag == "x");
}

TEST_CASE("classify_region boundaries") {
    Pt o{0, 0};
    // The strict predicates of (1)-(3) and the rays (4)-(7) cover the plane.
    CHECK(classify_region({-1, 2}, o).tag == "y");
    CHECK(classify_region({2, -1}, o).tag == "x");
    CHECK(classify_region({-1, -1}, o).tag == "z");
    CHECK(classify_region({0, 1}, o).tag == "y");
    CHECK(classify_region({1, 0}, o).tag == "x");
}

TEST_CASE("special points of the example quartic") {
    auto c = dual_curve(newton_subdivision(example_quartic()));
    auto sp = honeycomb_special_points(c);
    CHECK(sp.O == Pt{0, 0});
    CHECK(sp.Tx == Pt{2, 0});
    CHECK(sp.Ty == Pt{0, 2});
    CHECK(sp.Tz == Pt{-2, -2});
    CHECK(sp.Sx == Pt{-2, 0});
    CHECK(sp.Sy == Pt{0, -2});
    CHECK(sp.Sz == Pt{2, 2});
    // Each special point lies in the region predicted for its bitangents.
    CHECK(classify_region(sp.Tx, sp.O).tag == "x");
    CHECK(classify_region(sp.Ty, sp.O).tag == "y");
    CHECK(classify_region(sp.Tz, sp.O).tag == "z");
    CHECK(classify_region(sp.Sz, sp.O).tag == "x+y");
    CHECK(classify_region(sp.Sy, sp.O).tag == "x+z");
    CHECK(classify_region(sp.Sx, sp.O).tag == "y+z");
}

TEST_CASE("special points: corner heights do not matter, symmetry is kept") {
    auto v = example_quartic().vals;
    v[{4, 0}] = 7;
    auto c = dual_curve(newton_subdivision(v));
    auto sp = honeycomb_special_points(c);
    CHECK(sp.Tx == Pt{2, 0});
    CHECK(sp.Sx == Pt{-2, 0});
    CHECK(sp.Sz == Pt{2, 2});

    // The base heights are symmetric under (i, j) -> (j, i): the points are swapped.
    auto base = dual_curve(newton_subdivision(example_quartic()));
    auto s0 = honeycomb_special_points(base);
    CHECK(s0.Tx.x == s0.Ty.y);
    CHECK(s0.Sx.x == s0.Sy.y);
    CHECK(s0.Sz.x == s0.Sz.y);
}

TEST_CASE("special points need a honeycomb") {
    std::map<Lattice, Rat> flat;
    for (int i = 0; i <= 4; ++i)
        for (int j = 0; i + j <= 4; ++j) flat[{i, j}] = 0;
    CHECK_THROWS_AS(honeycomb_special_points(dual_curve(newton_subdivision(flat))), NotHoneycomb);
    CHECK_THROWS_AS(tropical_bitangent_centers(QuarticInput::from_valuations(flat)), NotHoneycomb);
    CHECK_THROWS_AS(is_generic_honeycomb(QuarticInput::from_valuations(flat)), NotHoneycomb);
}

TEST_CASE("genericity") {
    auto q = example_quartic();
    auto g = is_generic_honeycomb(q);
    CHECK_FALSE(g.generic);
    CHECK(g.values[0] == 0);
    auto v = q.vals;
    v[{3, 1}] = 3;
    v[{0, 3}] = 3;
    v[{1, 0}] = 3;
    auto q2 = QuarticInput::from_valuations(v);
    auto e2 = genericity_expressions(q2);
    CHECK(e2[0] == 1);
    CHECK(e2[1] == 1);
    CHECK(e2[2] == 1);
    // a_31 = 3 is the mean of a_22 and a_40, so this is no longer a honeycomb.
    CHECK_FALSE(honeycomb_check(q2));
    CHECK_THROWS_AS(is_generic_honeycomb(q2), NotHoneycomb);

    v[{3, 1}] = make_rat(5, 2);
    v[{0, 3}] = make_rat(5, 2);
    v[{1, 0}] = make_rat(5, 2);
    auto q3 = QuarticInput::from_valuations(v);
    REQUIRE(honeycomb_check(q3));
    auto g3 = is_generic_honeycomb(q3);
    CHECK(g3.generic);
    CHECK(g3.values[0] == make_rat(1, 2));
}

TEST_CASE("centers of the example quartic") {
    auto set = tropical_bitangent_centers(example_quartic());
    CHECK(set.total() == 28);
    REQUIRE(set.entries.size() == 7);
    int exact = 0, on_ray = 0;
    for (const auto& e : set.entries) {
        if (e.validity == BitangentCenter::Exact) {
            ++exact;
            bool ok = e.pattern == std::vector<int>{4} || e.pattern == std::vector<int>{2, 2};
            CHECK(ok);
        } else {
            ++on_ray;
        }
    }
    CHECK(exact == 4);
    CHECK(on_ray == 3);
    CHECK(set.entries[4].center == Pt{2, 2});
    CHECK(set.entries[4].ray_dir == std::array<int, 2>{1, 1});
    CHECK(set.entries[5].center == Pt{-2, 0});
    CHECK(set.entries[5].ray_dir == std::array<int, 2>{-1, 0});
    CHECK(set.entries[6].center == Pt{0, -2});
    CHECK(set.entries[6].ray_dir == std::array<int, 2>{0, -1});
    // Centers on those rays split 2 + 2 in the example, so grouping from
    // centers alone is refused.
    CHECK_THROWS_AS(verify_grouping(example_quartic()), GroupingViolation);
}

TEST_CASE("random generic honeycombs: 7 centers x 4 and grouping") {
    std::mt19937_64 rng(17);
    for (int it = 0; it < 8; ++it) {
        auto q = gen::random_generic_honeycomb(rng);
        auto set = tropical_bitangent_centers(q);
        CHECK(set.total() == 28);
        REQUIRE(set.entries.size() == 7);
        std::set<Pt> distinct;
        for (const auto& e : set.entries) {
            CHECK(e.validity == BitangentCenter::Exact);
            CHECK(e.count == 4);
            bool ok = e.pattern == std::vector<int>{4} || e.pattern == std::vector<int>{2, 2};
            CHECK(ok);
            distinct.insert(e.center);
        }
        CHECK(distinct.size() == 7);
        auto o = set.entries[0].center;
        CHECK(classify_region(set.entries[1].center, o).tag == "x");
        CHECK(classify_region(set.entries[2].center, o).tag == "y");
        CHECK(classify_region(set.entries[3].center, o).tag == "z");
        CHECK(classify_region(set.entries[4].center, o).tag == "x+y");
        CHECK(classify_region(set.entries[5].center, o).tag == "y+z");
        CHECK(classify_region(set.entries[6].center, o).tag == "x+z");

        auto par = verify_grouping(q, true);
        auto ser = verify_grouping(q, false);
        REQUIRE(par.buckets.size() == 7);
        std::set<int> seen;
        for (std::size_t t = 0; t < 7; ++t) {
            CHECK(par.buckets[t].size() == 4);
            CHECK(par.buckets[t] == ser.buckets[t]);
            // All four members of a bucket share one center.
            for (int i : par.buckets[t]) CHECK(par.records[i].center == par.records[par.buckets[t][0]].center);
        }
        // The O bucket is the theta of the cycle V1V2V3.
        for (std::size_t t = 0; t < 7; ++t) {
            const auto& rec = par.records[par.buckets[t][0]];
            if (rec.center == o) {
                const auto& src = par.thetas[t].source.edges;
                auto has = [&](int a, int b) {
                    int e = find_edge(par.skeleton, a, b);
                    return std::find(src.begin(), src.end(), e) != src.end();
                };
                CHECK(src.size() == 3);
                CHECK(has(0, 1));
                CHECK(has(0, 2));
                CHECK(has(1, 2));
            }
        }
    }
}

TEST_CASE("shrinking the (2,0) region keeps the centers") {
    std::mt19937_64 rng(3);
    for (int it = 0; it < 5; ++it) {
        auto q = gen::random_generic_honeycomb(rng);
        auto q2 = gen::shrink_r20(q);
        CHECK(q2.vals.at({2, 0}) > q.vals.at({2, 0}));
        REQUIRE(honeycomb_check(q2));
        auto a = tropical_bitangent_centers(q), b = tropical_bitangent_centers(q2);
        REQUIRE(a.entries.size() == b.entries.size());
        for (std::size_t k = 0; k < a.entries.size(); ++k) {
            CHECK(a.entries[k].center == b.entries[k].center);
            CHECK(a.entries[k].count == b.entries[k].count);
        }
        // The skeleton does change.
        auto sa = retracts_to_k4(dual_curve(newton_subdivision(q)));
        auto sb = retracts_to_k4(dual_curve(newton_subdivision(q2)));
        CHECK_FALSE(k4_lengths(sa.map->graph) == k4_lengths(sb.map->graph));
    }
}

TEST_CASE("corrupted bitangent lists are rejected") {
    std::mt19937_64 rng(5);
    auto q = gen::random_generic_honeycomb(rng);
    auto set = tropical_bitangent_centers(q);
    std::vector<std::pair<std::string, Pt>> centers;
    for (const auto& e : set.entries)
        for (int k = 0; k < 4; ++k) centers.push_back({e.name, e.center});
    centers.pop_back();
    CHECK_THROWS_AS(verify_grouping(q, centers), GroupingViolation);
    centers.push_back(centers.front());
    CHECK_THROWS_AS(verify_grouping(q, centers), GroupingViolation);
}

#include <catch2/catch_amalgamated.hpp>

#include "rankcrypt/gpt.hpp"

using namespace rankcrypt;

namespace {

const FieldContext& gf256() {
    static FieldContext ctx(8, 0x11D);
    return ctx;
}

GptParams reference_params(XMode mode = XMode::smart_simple) {
    return GptParams::with_defaults(8, 8, 4, 4, 2, 2, mode);
}

// t1 = 6 because the kshevetskiy construction needs t1 > n-k.
GptParams kshevetskiy_params() {
    return GptParams::with_defaults(8, 8, 4, 6, 2, 2, XMode::kshevetskiy);
}

// The worked example over GF(2^8): m = (a^3, a^5, a^6, a^2) with shift rows
// 1100, 1111, 0011.
ExtMatrix reference_simple_x(const FieldContext& F) {
    ExtVector m = {F.alpha_pow(3), F.alpha_pow(5), F.alpha_pow(6), F.alpha_pow(2)};
    std::vector<std::vector<std::uint8_t>> s = {{1, 1, 0, 0}, {1, 1, 1, 1}, {0, 0, 1, 1}};
    return assemble_x_simple(F, m, s);
}

}  // namespace

TEST_CASE("parameter validation") {
    CHECK_NOTHROW(reference_params().validate());
    CHECK_NOTHROW(kshevetskiy_params().validate());

    GptParams p = reference_params();
    p.k = 8;  // k >= n
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = reference_params();
    p.a = 1;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = reference_params();
    p.a = 5;  // a > t1
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = reference_params();
    p.t2_max = 3;  // beyond (n-k)/2
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = reference_params();
    p.n = 9;  // n > N
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    // kshevetskiy needs t1 > n-k
    p = reference_params(XMode::kshevetskiy);
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("simple smart X reproduces the worked example") {
    const auto& F = gf256();
    ExtMatrix x = reference_simple_x(F);

    auto ap = [&](std::uint64_t e) { return F.alpha_pow(e); };
    const FieldElement one = F.one();
    // row 0: the m vector itself
    CHECK(x.at(0, 0) == ap(3));
    CHECK(x.at(0, 1) == ap(5));
    CHECK(x.at(0, 2) == ap(6));
    CHECK(x.at(0, 3) == ap(2));
    // row 1: sigma(m) + 1100
    CHECK(x.at(1, 0) == ap(6) + one);
    CHECK(x.at(1, 1) == ap(10) + one);
    CHECK(x.at(1, 2) == ap(12));
    CHECK(x.at(1, 3) == ap(4));
    // row 2: sigma^2(m) + 1111
    CHECK(x.at(2, 0) == ap(12) + one);
    CHECK(x.at(2, 1) == ap(20) + one);
    CHECK(x.at(2, 2) == ap(24) + one);
    CHECK(x.at(2, 3) == ap(8) + one);
    // row 3: sigma^3(m) + 0011
    CHECK(x.at(3, 0) == ap(24));
    CHECK(x.at(3, 1) == ap(40));
    CHECK(x.at(3, 2) == ap(48) + one);
    CHECK(x.at(3, 3) == ap(16) + one);

    CHECK(column_rank_base(x) == 4);
}

TEST_CASE("simple smart X builder") {
    const auto& F = gf256();
    Rng rng = seeded_rng(40);

    SECTION("full base column rank and exact shift-stack rank, 100 builds") {
        for (int i = 0; i < 100; ++i) {
            auto [x, rec] = build_x_simple(F, 4, 4, 2, rng);
            CHECK(column_rank_base(x) == 4);
            CHECK(rank_norm(rec.m) == 4);
            CHECK(rank_base(BaseMatrix::from_rows(rec.s)) == 2);
            CHECK(assemble_x_simple(F, rec.m, rec.s) == x);
            // Y = T(X) lands in the base field and is fixed by sigma
            ExtMatrix y = t_map(x);
            for (std::size_t r = 0; r < y.rows(); ++r)
                for (std::size_t c = 0; c < y.cols(); ++c)
                    CHECK(y.at(r, c).value() <= 1);
            CHECK(frobenius_matrix(y, 1) == y);
        }
    }
    SECTION("a = t1 degenerates to a Moore matrix") {
        auto [x, rec] = build_x_simple(F, 4, 4, 4, rng);
        for (const auto& row : rec.s)
            for (auto b : row) CHECK(b == 0);
        CHECK(x == moore_matrix(rec.m, 4));
    }
    SECTION("infeasible rank target") {
        // k-1 = 1 row cannot reach rank t1-a = 2
        CHECK_THROWS_AS(build_x_simple(F, 2, 4, 2, rng), std::invalid_argument);
    }
}

TEST_CASE("general smart X reproduces the worked example") {
    const auto& F = gf256();
    auto ap = [&](std::uint64_t e) { return F.alpha_pow(e); };

    ExtVector seeds = {ap(3), ap(5)};
    std::vector<ExtVector> columns = {{ap(6), ap(12), ap(12), ap(12)},
                                      {ap(2), ap(5), ap(5), ap(2)}};
    std::vector<std::vector<std::uint8_t>> mix = {{1, 0}, {0, 1}};
    ExtMatrix x = assemble_x_general(F, 4, seeds, columns, mix);

    // column 1 = Frobenius(a^3) + column 3, column 2 = Frobenius(a^5) + column 4
    CHECK(x.at(0, 0) == ap(3) + ap(6));
    CHECK(x.at(1, 0) == ap(6) + ap(12));
    CHECK(x.at(2, 0) == ap(12) + ap(12));  // cancels to zero
    CHECK(x.at(2, 0).is_zero());
    CHECK(x.at(3, 0) == ap(24) + ap(12));
    CHECK(x.at(0, 1) == ap(5) + ap(2));
    CHECK(x.at(1, 1) == ap(10) + ap(5));
    CHECK(x.at(2, 1) == ap(20) + ap(5));
    CHECK(x.at(3, 1) == ap(40) + ap(2));
    CHECK(x.at(0, 2) == ap(6));
    CHECK(x.at(1, 2) == ap(12));
    CHECK(x.at(2, 2) == ap(12));
    CHECK(x.at(3, 2) == ap(12));
    CHECK(x.at(0, 3) == ap(2));
    CHECK(x.at(1, 3) == ap(5));
    CHECK(x.at(2, 3) == ap(5));
    CHECK(x.at(3, 3) == ap(2));

    CHECK(column_rank_base(x) == 4);
}

TEST_CASE("general smart X builder") {
    const auto& F = gf256();
    Rng rng = seeded_rng(41);
    for (int i = 0; i < 100; ++i) {
        auto [x, rec] = build_x_general(F, 4, 4, 2, rng);
        CHECK(column_rank_base(x) == 4);
        CHECK(rank_ext(t_map(x)) == 2);
        CHECK(assemble_x(F, 4, SmartXRecord{rec}) == x);
    }
}

TEST_CASE("kshevetskiy X builder") {
    const auto& F = gf256();
    const GptParams p = kshevetskiy_params();
    Rng rng = seeded_rng(42);
    for (int i = 0; i < 50; ++i) {
        auto [x, rec] = build_x_kshevetskiy(F, p.k, p.t1, p.a, p.n, rng);
        CHECK(rank_ext(x) == p.kshevetskiy_rank());
        CHECK(column_rank_base(x) == p.t1);
        CHECK(assemble_x(F, p.k, SmartXRecord{rec}) == x);
    }
    CHECK_THROWS_AS(build_x_kshevetskiy(F, 4, 4, 2, 8, rng), std::invalid_argument);
}

TEST_CASE("naive X builder") {
    const auto& F = gf256();
    Rng rng = seeded_rng(43);
    for (int i = 0; i < 50; ++i) {
        auto [x, rec] = build_x_random_naive(F, 4, 4, rng);
        CHECK(column_rank_base(x) == 4);
    }
}

TEST_CASE("key generation") {
    const GptParams p = reference_params();

    SECTION("shapes and derived figures") {
        GptKeyPair kp = keygen(p, 100);
        CHECK(kp.pub.g_pub.rows() == 4);
        CHECK(kp.pub.g_pub.cols() == 12);
        CHECK(p.public_key_size_bits() == 384);
        CHECK(p.information_rate() == Catch::Approx(1.0 / 3.0));
    }
    SECTION("private invariants hold on every mode") {
        for (XMode mode : {XMode::smart_simple, XMode::smart_general, XMode::kshevetskiy,
                           XMode::random_naive}) {
            const GptParams q =
                mode == XMode::kshevetskiy ? kshevetskiy_params() : reference_params(mode);
            GptKeyPair kp = keygen(q, 7);
            REQUIRE(kp.priv.x.has_value());
            CHECK(column_rank_base(*kp.priv.x) == q.t1);
            ExtMatrix xg = hstack(*kp.priv.x, kp.priv.code.generator_matrix());
            CHECK(column_rank_base(xg) == expected_joint_column_rank(q));
            CHECK(public_matrix(kp.priv) == kp.pub.g_pub);
            CHECK(mode_of(*kp.priv.x_record) == mode);
        }
    }
    SECTION("smart keys reach full joint column rank whenever n < N") {
        const GptParams q = GptParams::with_defaults(8, 6, 3, 4, 2, 1, XMode::smart_simple);
        CHECK(expected_joint_column_rank(q) == q.n + q.t1);
        GptKeyPair kp = keygen(q, 11);
        ExtMatrix xg = hstack(*kp.priv.x, kp.priv.code.generator_matrix());
        CHECK(column_rank_base(xg) == q.n + q.t1);
    }
    SECTION("public key shape-only leakage") {
        for (std::uint64_t seed : {1, 2, 3}) {
            GptKeyPair kp = keygen(p, seed);
            CHECK(rank_ext(kp.pub.g_pub) == p.k);
            CHECK(column_rank_base(kp.pub.g_pub) == expected_joint_column_rank(p));
        }
    }
    SECTION("deterministic in the seed") {
        GptKeyPair a = keygen(p, 99);
        GptKeyPair b = keygen(p, 99);
        CHECK(a.pub.g_pub == b.pub.g_pub);
        CHECK(a.priv.code.support() == b.priv.code.support());
        CHECK(a.priv.s == b.priv.s);
        CHECK(a.priv.p == b.priv.p);
    }
    SECTION("invalid parameters are rejected up front") {
        GptParams bad = p;
        bad.k = 0;
        CHECK_THROWS_AS(keygen(bad, 1), std::invalid_argument);
    }
}

TEST_CASE("encryption and decryption") {
    const GptParams p = reference_params();
    GptKeyPair kp = keygen(p, 2024);
    const FieldContext F = p.context();
    Rng rng = seeded_rng(44);

    SECTION("zero error budget is the bare codeword") {
        ExtVector m = random_vector(F, p.k, rng);
        ExtVector c = encrypt(kp.pub, m, rng, 0);
        CHECK(c == mul_vec_mat(m, kp.pub.g_pub));
        CHECK(decrypt(kp.priv, c) == m);
    }
    SECTION("round trips at the full budget") {
        for (int i = 0; i < 200; ++i) {
            ExtVector m = random_vector(F, p.k, rng);
            ExtVector c = encrypt(kp.pub, m, rng);
            CHECK(decrypt(kp.priv, c) == m);
        }
    }
    SECTION("fresh randomness per encryption") {
        ExtVector m = random_vector(F, p.k, rng);
        CHECK_FALSE(encrypt(kp.pub, m, rng) == encrypt(kp.pub, m, rng));
    }
    SECTION("budget and length violations") {
        ExtVector m = random_vector(F, p.k, rng);
        CHECK_THROWS_AS(encrypt(kp.pub, m, rng, 3), std::invalid_argument);
        CHECK_THROWS_AS(encrypt(kp.pub, random_vector(F, 3, rng), rng),
                        std::invalid_argument);
        CHECK_THROWS_AS(decrypt(kp.priv, random_vector(F, 5, rng)),
                        std::invalid_argument);
    }
    SECTION("decryption works for every error rank up to the radius") {
        for (std::size_t r = 0; r <= p.correction_radius(); ++r) {
            for (int i = 0; i < 30; ++i) {
                ExtVector m = random_vector(F, p.k, rng);
                ExtVector e = random_vector_of_rank(p.n + p.t1, r, rng, F);
                ExtVector c = mul_vec_mat(m, kp.pub.g_pub) + e;
                CHECK(decrypt(kp.priv, c) == m);
            }
        }
    }
}

TEST_CASE("an error beyond the radius fails or garbles, never silently passes") {
    // Tiny parameters so the planted error rank is forced onto the decoder:
    // e = (0 | e'') P has unscrambled tail e'' of rank t+1 exactly.
    const GptParams p = GptParams::with_defaults(4, 4, 2, 2, 2, 1, XMode::smart_simple);
    GptKeyPair kp = keygen(p, 5);
    const FieldContext F = p.context();
    Rng rng = seeded_rng(45);

    int failures = 0, garbled = 0;
    for (int i = 0; i < 50; ++i) {
        ExtVector m = random_vector(F, p.k, rng);
        ExtVector tail = random_vector_of_rank(p.n, p.correction_radius() + 1, rng, F);
        ExtVector planted = zero_vector(F, p.t1);
        planted.insert(planted.end(), tail.begin(), tail.end());
        ExtVector c = mul_vec_mat(m, kp.pub.g_pub) + mul_vec_base(planted, kp.priv.p);
        try {
            ExtVector out = decrypt(kp.priv, c);
            CHECK_FALSE(out == m);
            ++garbled;
        } catch (const DecodingFailure&) {
            ++failures;
        }
    }
    CHECK(failures + garbled == 50);
    CHECK(failures > 0);
}

TEST_CASE("scrubbing the distortion matrix") {
    GptKeyPair kp = keygen(reference_params(), 77);
    const FieldContext F = kp.pub.params.context();
    Rng rng = seeded_rng(46);

    ExtVector m = random_vector(F, 4, rng);
    ExtVector c = encrypt(kp.pub, m, rng);
    kp.priv.scrub();
    CHECK_FALSE(kp.priv.x.has_value());
    CHECK(decrypt(kp.priv, c) == m);  // decryption never needed X
    CHECK_THROWS_AS(security_report(kp.priv), std::invalid_argument);
    CHECK_THROWS_AS(public_matrix(kp.priv), std::invalid_argument);
}

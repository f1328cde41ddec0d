#include <gtest/gtest.h>

#include <nlcx/generators.hpp>

#include <cmath>
#include <sstream>

using namespace nlcx;

namespace {

std::vector<Elem> values(const Sequence& s) { return s.elems; }

}  // namespace

TEST(Inversive, SmallExamples) {
    auto f5 = make_field(5, 1);
    EXPECT_EQ(values(inversive_finite(f5)), (std::vector<Elem>{1, 2, 3}));
    EXPECT_EQ(values(inversive_finite(f5, 2)), (std::vector<Elem>{3, 1, 4}));
    EXPECT_EQ(inversive_finite(make_field(2, 2), 3).size(), 2u);
}

TEST(Inversive, Errors) {
    EXPECT_THROW(inversive_finite(make_field(5, 1), 0), std::invalid_argument);
    EXPECT_THROW(inversive_finite(make_field(2, 1)), std::invalid_argument);
}

TEST(Inversive, DirectFormulaAndScaling) {
    for (std::uint64_t q : {3u, 4u, 5u, 7u, 8u, 9u, 11u, 13u, 16u, 25u, 27u, 49u, 64u, 81u, 256u}) {
        auto f = make_field_of_order(q);
        const auto base = inversive_finite(f);
        ASSERT_EQ(base.size(), q - 2);
        for (Elem a = 1; a < q; ++a) {
            const auto s = inversive_finite(f, a);
            for (std::size_t i = 1; i <= s.size(); ++i) {
                const Elem e_i = f->pow(f->primitive(), static_cast<std::int64_t>(i));
                ASSERT_EQ(f->mul(s[i - 1], f->sub(f->mul(a, e_i), a)), 1u);
                ASSERT_EQ(s[i - 1], f->mul(f->inv(a), base[i - 1]));
            }
        }
    }
}

TEST(Periodic, SmallExamples) {
    auto f7 = make_field(7, 1);
    EXPECT_EQ(values(inversive_periodic(f7, 3, 1, 3, 6)), (std::vector<Elem>{6, 1, 3, 6, 1, 3}));
    EXPECT_EQ(values(inversive_periodic(f7, 3, 1, 3, 3)), (std::vector<Elem>{6, 1, 3}));
    EXPECT_THROW(inversive_periodic(f7, 3, 1, 2, 6), std::invalid_argument);
    EXPECT_THROW(inversive_periodic(f7, 4, 1, 3, 6), std::invalid_argument);
    EXPECT_THROW(inversive_periodic(f7, 6, 1, 3, 6), std::invalid_argument);
    EXPECT_THROW(inversive_periodic(f7, 3, 0, 3, 6), std::invalid_argument);
    EXPECT_THROW(inversive_periodic(f7, 3, 1, 0, 6), std::invalid_argument);
}

TEST(Periodic, DefaultC) {
    auto f7 = make_field(7, 1);
    EXPECT_EQ(default_periodic_c(*f7, 3), 3u);
    for (std::uint64_t q : {7u, 9u, 13u, 16u, 25u}) {
        auto f = make_field_of_order(q);
        for (std::uint64_t d = 1; d < q - 1; ++d) {
            if ((q - 1) % d) continue;
            const Elem c = default_periodic_c(*f, d);
            EXPECT_TRUE(periodic_admissible(*f, d, 1, c));
            for (Elem smaller = 1; smaller < c; ++smaller) EXPECT_FALSE(periodic_admissible(*f, d, 1, smaller));
        }
    }
}

TEST(Periodic, LeastPeriodIsD) {
    for (std::uint64_t q : {5u, 7u, 8u, 9u, 13u, 16u, 25u, 31u}) {
        auto f = make_field_of_order(q);
        for (std::uint64_t d = 1; d < q - 1; ++d) {
            if ((q - 1) % d) continue;
            for (Elem b = 1; b < q; ++b)
                for (Elem c = 1; c < q; ++c) {
                    if (!periodic_admissible(*f, d, b, c)) continue;
                    const auto s = inversive_periodic(f, d, b, c, 3 * d);
                    for (std::size_t i = 0; i + d < s.size(); ++i) ASSERT_EQ(s[i], s[i + d]);
                    if (d > 1) {
                        ASSERT_EQ(least_period(s), d) << "q=" << q << " d=" << d << " b=" << b << " c=" << c;
                    }
                }
        }
    }
}

TEST(Random, DeterministicAndEmpty) {
    auto f = make_field(3, 2);
    EXPECT_TRUE(random_sequence(f, 0, 1).empty());
    EXPECT_EQ(values(random_sequence(f, 100, 42)), values(random_sequence(f, 100, 42)));
    EXPECT_NE(values(random_sequence(f, 100, 42)), values(random_sequence(f, 100, 43)));
    for (Elem x : random_sequence(f, 1000, 5).elems) EXPECT_LT(x, 9u);
}

TEST(Random, PinnedStream) {
    // mt19937_64 seeded with 1; rejection never triggers for q = 2
    std::mt19937_64 rng(1);
    auto s = random_sequence(make_field(2, 1), 8, 1);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(s[i], rng() % 2);
}

TEST(Random, BinaryFrequency) {
    const std::size_t n = 10000;
    for (std::uint64_t seed : {0u, 1u, 99u}) {
        const auto s = random_sequence(make_field(2, 1), n, seed);
        std::size_t ones = 0;
        for (Elem x : s.elems) ones += x;
        const double sigma = std::sqrt(n * 0.25);
        EXPECT_LT(std::abs(static_cast<double>(ones) - n / 2.0), 5 * sigma);
    }
}

TEST(Random, UniformOverLargerField) {
    auto f = make_field_of_order(7);
    const std::size_t n = 70000;
    std::vector<std::size_t> count(7, 0);
    for (Elem x : random_sequence(f, n, 3).elems) ++count[x];
    const double mean = n / 7.0, sigma = std::sqrt(n * (1.0 / 7) * (6.0 / 7));
    for (auto c : count) EXPECT_LT(std::abs(static_cast<double>(c) - mean), 5 * sigma);
}

TEST(SequenceIo, RoundTrip) {
    auto f = make_field(2, 3, std::nullopt, Elem{3});
    const auto s = inversive_finite(f, 5);
    std::stringstream ss;
    write_sequence(ss, s);
    const auto r = read_sequence(ss);
    EXPECT_EQ(r.elems, s.elems);
    EXPECT_EQ(r.field->q(), 8u);
    EXPECT_EQ(r.field->primitive(), 3u);
    EXPECT_EQ(r.field->modulus(), f->modulus());
    EXPECT_EQ(r.provenance.kind, GeneratorKind::inversive);
    EXPECT_EQ(r.provenance.get_int("a"), 5);
    EXPECT_EQ(r.provenance, s.provenance);
}

TEST(SequenceIo, PeriodicProvenance) {
    const auto s = inversive_periodic(make_field(7, 1), 3, 1, 3, 6);
    std::stringstream ss;
    write_sequence(ss, s);
    EXPECT_EQ(ss.str().substr(0, ss.str().find('\n')), "# q=7 kind=periodic params=d=3,b=1,c=3,n=6,prim=3,mod=0:1");
    const auto r = read_sequence(ss);
    EXPECT_EQ(r.provenance.get_int("d"), 3);
    EXPECT_EQ(r.elems, s.elems);
}

TEST(SequenceIo, RejectsBadInput) {
    std::stringstream missing("1\n2\n");
    EXPECT_THROW(read_sequence(missing), std::invalid_argument);
    std::stringstream out_of_range("# q=5 kind=external params=\n1\n5\n");
    EXPECT_THROW(read_sequence(out_of_range), std::invalid_argument);
    std::stringstream ok("# q=5 kind=external params=\n# a comment\n1\n4\n");
    EXPECT_EQ(read_sequence(ok).elems, (std::vector<Elem>{1, 4}));
}

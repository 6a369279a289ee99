#include <random>

#include <gtest/gtest.h>

#include <lcsm/families.hpp>
#include <lcsm/operators.hpp>
#include <lcsm/positivity.hpp>

#include "oracles.hpp"

using namespace lcsm;

namespace {

const QPoly q = QPoly::q();

std::vector<QPoly> ints(std::initializer_list<long> v) {
    std::vector<QPoly> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

std::vector<Rational> R(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

ExactMatrix M(std::size_t n, std::initializer_list<long> v) { return ExactMatrix(n, n, ints(v)); }

std::vector<QPoly> powers_of_one_plus_q(std::size_t count) {
    std::vector<QPoly> out;
    for (std::size_t k = 0; k < count; ++k) out.push_back(pow(QPoly(1) + q, static_cast<unsigned>(k)));
    return out;
}

const char* const sm_families[] = {"catalan", "bell_numbers", "factorial", "schroder", "delannoy", "central_binomial"};
const char* const q_families[] = {"bell_poly", "eulerian_poly", "q_schroder", "q_delannoy", "narayana", "narayana_B"};

// Re-derive a failing witness from the matrix it names.
void expect_witness_violates(const ExactMatrix& m, const certificate& c) {
    ASSERT_FALSE(c.passed());
    ASSERT_TRUE(c.wit.has_value());
    const QPoly v = oracle::brute_minor(m, c.wit->rows, c.wit->cols);
    EXPECT_EQ(v, c.wit->value);
    EXPECT_FALSE(is_nonneg(v));
}

}  // namespace

TEST(Tp2, Examples) {
    EXPECT_TRUE(check_tp2(toeplitz(ints({1, 3, 3, 1}), 3)).passed());
    EXPECT_TRUE(check_tp2(hankel(ints({1, 1, 2, 5, 14}), 2)).passed());
    const auto m = hankel(ints({1, 3, 4, 5, 6}), 1);
    const auto c = check_tp2(m);
    ASSERT_FALSE(c.passed());
    EXPECT_EQ(c.prop, property::tp2);
    EXPECT_EQ(c.wit->rows, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(c.wit->cols, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(c.wit->value, QPoly(-5));
}

TEST(Tp, Examples) {
    const auto sch = hankel(ints({1, 2, 6, 22, 90, 394, 1806}), 3);
    const auto c = check_tp(sch, 4);
    EXPECT_TRUE(c.passed());
    EXPECT_EQ(c.minor_order, 4u);
    EXPECT_NE(c.verified.find("verified to order 4"), std::string::npos);

    const auto neg = M(3, {1, 2, 3, 4, -1, 6, 7, 8, 9});
    const auto f = check_tp(neg, 3);
    ASSERT_FALSE(f.passed());
    EXPECT_EQ(f.wit->rows.size(), 1u);
    EXPECT_EQ(f.wit->value, QPoly(-1));

    EXPECT_TRUE(check_tp(ExactMatrix::identity(5), 5).passed());
    EXPECT_THROW(check_tp(ExactMatrix::identity(3), 4), error);
    EXPECT_THROW(check_tp(ExactMatrix::identity(3), 0), error);
}

TEST(Tp, FirstViolationInEnumerationOrder) {
    // order 2 minors on rows {0,1}: cols {0,1} is fine, cols {0,2} is negative
    const auto m = M(3, {1, 1, 3, 1, 2, 1, 1, 3, 9});
    const auto c = check_tp(m, 3);
    ASSERT_FALSE(c.passed());
    EXPECT_EQ(c.wit->rows, (std::vector<std::size_t>{0, 1}));
    EXPECT_EQ(c.wit->cols, (std::vector<std::size_t>{0, 2}));
    expect_witness_violates(m, c);
}

TEST(Tp, AgreesWithBruteForce) {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 120; ++t) {
        const std::size_t n = 2 + t % 3;
        const auto r = oracle::random_matrix(rng, n, -1, 6);
        const ExactMatrix m = r.map([](const Rational& x) { return QPoly(x); });
        const auto c = check_tp(m, n);
        EXPECT_EQ(c.passed(), oracle::brute_tp(r, n));
        if (!c.passed()) expect_witness_violates(m, c);
    }
}

TEST(PosDef, Examples) {
    EXPECT_TRUE(check_pos_def(M(2, {2, 1, 1, 2})).passed());
    const auto f = check_pos_def(M(2, {1, 2, 2, 1}));
    ASSERT_FALSE(f.passed());
    EXPECT_EQ(f.wit->value, QPoly(-3));
    EXPECT_EQ(f.wit->rows.size(), 2u);
    EXPECT_TRUE(check_pos_def(hankel(ints({1, 1, 2, 5, 15, 52, 203}), 3)).passed());
}

TEST(PosDef, Errors) {
    auto code = [](const ExactMatrix& m) {
        try {
            check_pos_def(m);
        } catch (const error& e) {
            return e.code();
        }
        return errc::parse_error;
    };
    EXPECT_EQ(code(M(2, {1, 2, 3, 4})), errc::not_symmetric);
    EXPECT_EQ(code(ExactMatrix(2, 3)), errc::not_square);
    EXPECT_EQ(code(ExactMatrix::from_rows({{q, QPoly(1)}, {QPoly(1), q}})), errc::non_constant);
}

TEST(Sm, Examples) {
    EXPECT_TRUE(check_sm(constants_of(gen_sequence("catalan", 8)), 3).passed());
    EXPECT_TRUE(check_sm(R({1, 1, 2, 6, 24, 120, 720, 5040}), 3).passed());
    const auto ones = check_sm(R({1, 1, 1, 1, 1, 1}), 2);
    ASSERT_FALSE(ones.passed());
    EXPECT_TRUE(ones.wit->value.is_zero());
    EXPECT_NE(ones.note.find("indeterminate at this order"), std::string::npos);
    EXPECT_THROW(check_sm(R({1, 1, 2, 5, 14}), 2), error);
}

TEST(Sm, ShiftedHankelMatters) {
    // H_1 = [[1,1],[1,2]] is positive definite, shifted [[1,2],[2,1]] is not
    const auto c = check_sm(R({1, 1, 2, 1}), 1);
    ASSERT_FALSE(c.passed());
    EXPECT_EQ(c.wit->matrix, "shifted_hankel");
    EXPECT_EQ(c.wit->value, QPoly(-3));
}

TEST(Sm, SixFamiliesAtOrderSix) {
    for (const char* name : sm_families) {
        const auto c = check_sm(constants_of(gen_sequence(name, 14)), 6);
        EXPECT_TRUE(c.passed()) << name;
        EXPECT_EQ(c.matrix_size, 7u);
    }
}

// Finite form of the moment criterion: check_sm agrees with strict
// total positivity of both Hankel sections, found by brute force.
TEST(Sm, OracleEquivalenceOnRandomSequences) {
    std::mt19937_64 rng(314159);
    int positives = 0;
    for (int t = 0; t < 300; ++t) {
        const std::size_t len = 2 + t % 8;  // 2..9 terms
        const std::size_t n = (len - 2) / 2;
        std::vector<Rational> a;
        if (t % 2) a = oracle::random_moments(rng, len, 1 + t % 5);
        else a = oracle::random_sequence(rng, len, 0, 12);
        const bool expected = oracle::hankel_strict_tp(a, n);
        const auto c = check_sm(a, n);
        EXPECT_EQ(c.passed(), expected) << "trial " << t;
        positives += expected;
    }
    EXPECT_GT(positives, 60);
}

TEST(Sm, MonotoneInOrder) {
    std::mt19937_64 rng(99);
    for (int t = 0; t < 60; ++t) {
        const auto a = oracle::random_moments(rng, 12, 2 + t % 6);
        for (std::size_t n = 5; n-- > 0;)
            if (check_sm(a, n + 1).passed()) { EXPECT_TRUE(check_sm(a, n).passed()); }
    }
}

TEST(Sm, FamiliesHaveStrictlyPositiveLogConvexity) {
    for (const char* name : sm_families)
        for (const auto& t : op_logconvex(gen_sequence(name, 20))) EXPECT_TRUE(is_positive(t)) << name;
}

TEST(QSm, Examples) {
    EXPECT_TRUE(check_q_sm(powers_of_one_plus_q(5), 2, 3).passed());
    EXPECT_TRUE(check_q_sm(gen_sequence("narayana_B", 5), 2, 3).passed());
    const std::vector<QPoly> bad{QPoly(1), q, QPoly(1)};
    const auto c = check_q_sm(bad, 1, 2);
    ASSERT_FALSE(c.passed());
    EXPECT_EQ(c.wit->value, QPoly(1) - q * q);
    EXPECT_EQ(c.wit->matrix, "hankel");
    expect_witness_violates(hankel(bad, 1), c);
    EXPECT_THROW(check_q_sm(bad, 2, 2), error);
}

TEST(QSm, SixFamiliesAtOrderFour) {
    for (const char* name : q_families) {
        const auto seq = gen_sequence(name, 9);
        const auto c = check_q_sm(seq, 4, 4);
        EXPECT_TRUE(c.passed()) << name;
        EXPECT_EQ(c.prop, property::q_sm);
    }
}

TEST(QSm, AgreesWithBruteForceOnSmallInputs) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 40; ++t) {
        std::vector<QPoly> seq;
        for (int i = 0; i < 5; ++i) seq.push_back(oracle::random_poly(rng, 2, -1, 3));
        const auto h = hankel(seq, 2);
        const auto c = check_q_sm(seq, 2, 3);
        EXPECT_EQ(c.passed(), oracle::brute_q_tp(h, 3));
        if (!c.passed()) expect_witness_violates(h, c);
    }
}

TEST(Psm, Examples) {
    const std::vector<Rational> grid{Rational(0), Rational(1, 2), Rational(1), Rational(2)};
    const auto bell = check_psm(gen_sequence("bell_poly", 8), 3, grid);
    EXPECT_TRUE(bell.passed());
    ASSERT_TRUE(bell.q_grid.has_value());
    EXPECT_EQ(*bell.q_grid, grid);
    EXPECT_NE(bell.verified.find("only"), std::string::npos);

    const std::vector<Rational> one{Rational(1)};
    EXPECT_TRUE(check_psm(gen_sequence("q_delannoy", 8), 3, one).passed());
    EXPECT_EQ(specialize(gen_sequence("q_delannoy", 7), Rational(1)), R({1, 3, 13, 63, 321, 1683, 8989}));

    // a_1 = 1 + 3q - 2q^2 is positive up to q = 1 but negative at q = 2
    std::vector<QPoly> seq{QPoly(1), QPoly(std::vector<Rational>{1, 3, -2}), QPoly(4), QPoly(10)};
    const std::vector<Rational> pts{Rational(1), Rational(2)};
    const auto f = check_psm(seq, 1, pts);
    ASSERT_FALSE(f.passed());
    EXPECT_EQ(f.wit->q, Rational(2));
}

TEST(Psm, NegativeQRejected) {
    const std::vector<Rational> grid{Rational(1), Rational(-1, 2)};
    try {
        check_psm(gen_sequence("bell_poly", 8), 3, grid);
        FAIL();
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::negative_q_value);
    }
}

TEST(Psm, DefaultGridAndSingularPoint) {
    EXPECT_EQ(default_psm_grid().size(), 6u);
    const auto c = check_psm(gen_sequence("bell_poly", 8), 3, default_psm_grid());
    EXPECT_TRUE(c.passed());
    EXPECT_NE(c.note.find("q in {0}"), std::string::npos);
}

TEST(Certificate, PropertyNames) {
    EXPECT_EQ(to_string(property::strong_q_log_convex), "StrongQLogConvex");
    EXPECT_EQ(to_string(property::m_log_convex), "mLogConvex");
    EXPECT_EQ(to_string(property::q_tp), "qTP");
}

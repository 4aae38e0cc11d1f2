#include <catch2/catch_amalgamated.hpp>

#include "messep/characters.hpp"
#include "messep/partitions.hpp"
#include "oracles.hpp"

using namespace messep;

TEST_CASE("trivial and sign representations") {
    for (int n = 1; n <= 8; ++n) {
        for (const auto& pi : enumerate_partitions(n)) {
            CHECK(mn_character(Partition{n}, pi) == 1);
            const int sign = ((n - static_cast<int>(pi.length())) % 2) ? -1 : 1;
            std::vector<int> col(n, 1);
            CHECK(mn_character(Partition(col), pi) == sign);
        }
    }
}

TEST_CASE("small explicit tables") {
    for (const auto& [key, value] : oracles::small_character_tables())
        CHECK(mn_character(key.first, key.second) == value);
}

TEST_CASE("S5 classical table") {
    const auto parts = enumerate_partitions(5);
    const auto& T = oracles::s5_table();
    REQUIRE(parts.size() == 7);
    for (std::size_t l = 0; l < parts.size(); ++l)
        for (std::size_t p = 0; p < parts.size(); ++p)
            CHECK(mn_character(parts[l], parts[p]) == T[l][p]);
}

TEST_CASE("hook character on the full cycle") {
    for (int n = 1; n <= 9; ++n)
        for (int k = 0; k < n; ++k) {
            const long long expect = (k % 2) ? -1 : 1;
            CHECK(mn_character(Hook{n, k}.to_partition(), Partition{n}) == expect);
            CHECK(hook_character(n, k, Partition{n}) == expect);
        }
}

TEST_CASE("hook fast path agrees with generic Murnaghan-Nakayama") {
    for (int n = 1; n <= 9; ++n)
        for (const auto& pi : enumerate_partitions(n))
            for (int k = 0; k < n; ++k)
                CHECK(hook_character(n, k, pi) ==
                      mn_character(Hook{n, k}.to_partition(), pi));
}

TEST_CASE("orthogonality of characters up to n = 8") {
    for (int n = 1; n <= 8; ++n) {
        const auto parts = enumerate_partitions(n);
        const auto table = character_table(n);
        const long long nfact = factorial(n);
        for (std::size_t a = 0; a < parts.size(); ++a) {
            for (std::size_t b = a; b < parts.size(); ++b) {
                long long acc = 0;  // sum over classes of |C_pi| chi^a chi^b
                for (std::size_t p = 0; p < parts.size(); ++p)
                    acc += (nfact / cycle_index(parts[p])) * table[a][p] * table[b][p];
                CHECK(acc == (a == b ? nfact : 0));
            }
        }
    }
}

TEST_CASE("conjugation sign rule") {
    for (int n = 1; n <= 8; ++n)
        for (const auto& lam : enumerate_partitions(n))
            for (const auto& pi : enumerate_partitions(n)) {
                const int sign = ((n - static_cast<int>(pi.length())) % 2) ? -1 : 1;
                CHECK(mn_character(lam.conjugate(), pi) == sign * mn_character(lam, pi));
            }
}

TEST_CASE("weight mismatch rejected") {
    CHECK_THROWS_AS(mn_character(Partition{2}, Partition{1}), std::invalid_argument);
    CHECK_THROWS_AS(hook_character(3, 1, Partition{2}), std::invalid_argument);
}

TEST_CASE("alternating hook-character sums against the closed form") {
    for (int n = 1; n <= 10; ++n) {
        for (const auto& pi : enumerate_partitions(n)) {
            for (int j = 0; j < static_cast<int>(pi.length()); ++j) {
                CHECK(hook_char_sum(pi, j) == oracles::hook_char_sum_closed(pi, j));
            }
        }
    }
    // spelled-out examples
    CHECK(static_cast<long long>(hook_char_sum(Partition{4}, 0)) == 4);
    CHECK(static_cast<long long>(hook_char_sum(Partition{1, 1}, 0)) == 0);
    CHECK(static_cast<long long>(hook_char_sum(Partition{1, 1}, 1)) == 2);
    CHECK(static_cast<long long>(hook_char_sum(Partition{2, 1}, 1)) == 4);
    CHECK_THROWS_AS(hook_char_sum(Partition{2, 1}, 2), std::invalid_argument);
    CHECK_THROWS_AS(hook_char_sum(Partition{2, 1}, -1), std::invalid_argument);
}

TEST_CASE("Frobenius expansion coefficients") {
    CHECK(frobenius_p_to_s(Partition{1}) ==
          std::map<Partition, long long>{{Partition{1}, 1}});
    CHECK(frobenius_p_to_s(Partition{2}) ==
          std::map<Partition, long long>{{Partition{2}, 1}, {Partition{1, 1}, -1}});
    CHECK(frobenius_p_to_s(Partition{1, 1}) ==
          std::map<Partition, long long>{{Partition{2}, 1}, {Partition{1, 1}, 1}});
}

TEST_CASE("column orthogonality: p -> s composed with its inverse is the identity") {
    // sum_lambda chi_pi^lambda chi_sigma^lambda = z_pi delta_{pi sigma}, which
    // is exactly the statement that expanding p_pi over Schur and transforming
    // back (s = sum chi/z p) recovers p_pi.
    for (int n = 1; n <= 8; ++n) {
        const auto parts = enumerate_partitions(n);
        const auto table = character_table(n);
        for (std::size_t p = 0; p < parts.size(); ++p)
            for (std::size_t q = 0; q < parts.size(); ++q) {
                long long acc = 0;
                for (std::size_t a = 0; a < parts.size(); ++a)
                    acc += table[a][p] * table[a][q];
                CHECK(acc == (p == q ? cycle_index(parts[p]) : 0));
            }
    }
}

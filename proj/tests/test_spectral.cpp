#include <Eigen/Dense>
#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "messep/lattice.hpp"
#include "messep/spectral.hpp"

using namespace messep;
using Catch::Matchers::WithinAbs;

namespace {

/// Determinant eigenfunction psi_xi(eta) = det(e^{2 i pi (xi_k + gamma) eta_j / L}) / L^{N/2}.
cplx det_eigenfunction(const Configuration& xi, const Configuration& eta,
                       const LatticeParams& par) {
    const int N = par.N;
    const double g = par.gamma();
    std::vector<cplx> m(static_cast<std::size_t>(N) * N);
    for (int k = 0; k < N; ++k)
        for (int j = 0; j < N; ++j) {
            const double a = 2.0 * M_PI * (xi[k] + g) * eta[j] / par.L;
            m[k * N + j] = cplx(std::cos(a), std::sin(a));
        }
    return detail::determinant(m, N) / std::pow(par.L, 0.5 * N);
}

Eigen::MatrixXd adjacency_matrix(const LatticeParams& par) {
    const auto configs = enumerate_configurations(par);
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(configs.size(), configs.size());
    for (std::size_t i = 0; i < configs.size(); ++i)
        for (const auto& [eta, mult] : neighbor_configurations(configs[i], par))
            A(i, configuration_rank(eta)) = mult;
    return A;
}

}  // namespace

TEST_CASE("perron eigenvalue closed form") {
    CHECK_THAT(perron_radius(LatticeParams(4, 1)), WithinAbs(2.0, 1e-12));
    CHECK_THAT(perron_radius(LatticeParams(3, 2)), WithinAbs(2.0, 1e-12));
    CHECK_THAT(perron_radius(LatticeParams(6, 2)), WithinAbs(2.0 * std::sqrt(3.0), 1e-12));
}

TEST_CASE("perron vector satisfies A psi = rho psi and matches power iteration") {
    for (auto [L, N] : std::vector<std::pair<int, int>>{
             {4, 1}, {5, 2}, {6, 2}, {7, 3}, {8, 4}, {12, 5}}) {
        const LatticeParams par(L, N);
        const auto configs = enumerate_configurations(par);
        const double rho = perron_radius(par);
        double residual = 0.0;
        for (const auto& xi : configs) {
            double acc = 0.0;
            for (const auto& [eta, mult] : neighbor_configurations(xi, par))
                acc += mult * perron_value(eta, par);
            residual = std::max(residual, std::abs(acc - rho * perron_value(xi, par)));
        }
        CHECK(residual <= 1e-10);
    }
    // power iteration oracle on the explicit 15x15 adjacency matrix
    const LatticeParams par(6, 2);
    Eigen::MatrixXd A = adjacency_matrix(par);
    REQUIRE(A.rows() == 15);
    Eigen::VectorXd v = Eigen::VectorXd::Ones(15);
    double lam = 0.0;
    for (int it = 0; it < 2000; ++it) {
        v = A * v;
        lam = v.norm();
        v /= lam;
    }
    CHECK_THAT(std::sqrt((A * v).squaredNorm()) / v.norm(),
               WithinAbs(2.0 * std::sqrt(3.0), 1e-8));
}

TEST_CASE("psi is unit norm and mu sums to one") {
    const LatticeParams par(8, 3);
    double sum = 0.0;
    for (const auto& xi : enumerate_configurations(par)) {
        const double p = perron_value(xi, par);
        CHECK(p > 0.0);
        sum += p * p;
    }
    CHECK_THAT(sum, WithinAbs(1.0, 1e-12));
}

TEST_CASE("determinant eigenfunctions diagonalize the adjacency matrix") {
    for (auto [L, N] : std::vector<std::pair<int, int>>{{5, 2}, {6, 3}, {7, 2}, {8, 4}}) {
        const LatticeParams par(L, N);
        const auto configs = enumerate_configurations(par);
        for (std::size_t s = 0; s < configs.size(); s += 3) {
            const auto& xi = configs[s];
            const double rho_xi = graph_eigenvalue(
                std::span<const int>(xi.data(), xi.size()), par);
            double residual = 0.0;
            for (const auto& eta : configs) {
                cplx acc = 0.0;
                for (const auto& [nb, mult] : neighbor_configurations(eta, par))
                    acc += static_cast<double>(mult) * det_eigenfunction(xi, nb, par);
                residual = std::max(residual,
                                    std::abs(acc - rho_xi * det_eigenfunction(xi, eta, par)));
            }
            CHECK(residual <= 1e-10);
        }
        // |psi_c| coincides with the positive Perron vector
        const auto c = compact_configuration(par);
        for (const auto& eta : configs)
            CHECK_THAT(std::abs(det_eigenfunction(c, eta, par)) - perron_value(eta, par),
                       WithinAbs(0.0, 1e-12));
    }
}

TEST_CASE("partition/configuration bijection") {
    const LatticeParams par(10, 3);
    CHECK(config_from_partition(Partition{5, 2}, par) == Configuration{2, 6, 9});
    CHECK(partition_from_config({2, 6, 9}, par) == Partition{5, 2});

    CHECK(config_from_partition(Partition{}, par) == compact_configuration(par));
    for (auto [L, N] : std::vector<std::pair<int, int>>{{7, 3}, {8, 4}, {9, 2}, {6, 5}}) {
        const LatticeParams p2(L, N);
        CHECK(config_from_partition(Partition{}, p2) == compact_configuration(p2));
        for (const auto& lam : enumerate_box_partitions(L - N, N))
            CHECK(partition_from_config(config_from_partition(lam, p2), p2) == lam);
        // and the reverse direction covers every configuration exactly once
        std::set<Configuration> images;
        for (const auto& lam : enumerate_box_partitions(L - N, N))
            images.insert(config_from_partition(lam, p2));
        CHECK(images.size() == enumerate_configurations(p2).size());
    }
    CHECK_THROWS_AS(config_from_partition(Partition{8}, par), std::invalid_argument);
}

TEST_CASE("kernel stochasticity, simple walk, detailed balance") {
    {
        const auto k = build_kernel(LatticeParams(9, 1));
        for (std::size_t i = 0; i < k.states(); ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < k.states(); ++j) {
                row += k.entry(i, j);
                if (k.entry(i, j) != 0.0) CHECK_THAT(k.entry(i, j), WithinAbs(0.5, 1e-14));
            }
            CHECK_THAT(row, WithinAbs(1.0, 1e-12));
        }
    }
    const auto k = build_kernel(LatticeParams(5, 2));
    REQUIRE(k.states() == 10);
    for (std::size_t i = 0; i < k.states(); ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < k.states(); ++j) row += k.entry(i, j);
        CHECK_THAT(row, WithinAbs(1.0, 1e-12));
    }
    double db = 0.0;
    for (std::size_t i = 0; i < k.states(); ++i)
        for (std::size_t j = 0; j < k.states(); ++j)
            db = std::max(db, std::abs(k.mu[i] * k.entry(i, j) - k.mu[j] * k.entry(j, i)));
    CHECK(db <= 1e-12);
}

TEST_CASE("eigenvalues of box partitions") {
    const LatticeParams par(10, 4);
    CHECK_THAT(eigenvalue_of(Partition{}, par), WithinAbs(1.0, 1e-14));
    CHECK_THAT(eigenvalue_of(Partition{1}, par), WithinAbs(std::cos(2.0 * M_PI / 10), 1e-13));
    // closed forms vs the bijected-configuration route
    const LatticeParams big(20, 10);
    for (int n = 1; n <= 6; ++n)
        for (int k = 0; k < n; ++k)
            CHECK_THAT(eigenvalue_of(Hook{n, k}.to_partition(), big) - hook_eigenvalue(n, k, big),
                       WithinAbs(0.0, 1e-12));
    CHECK_THAT(hook_eigenvalue(3, 1, LatticeParams(6, 3)), WithinAbs(0.0, 1e-14));
    // double hooks: symmetry and bijected agreement where the partition exists
    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l) {
                CHECK_THAT(double_hook_eigenvalue(n, k, l, big) -
                               double_hook_eigenvalue(n, l, k, big),
                           WithinAbs(0.0, 1e-15));
                const DoubleHook dh{n, k, l, big.L, big.N};
                if (dh.valid())
                    CHECK_THAT(eigenvalue_of(dh.to_partition(), big) -
                                   double_hook_eigenvalue(n, k, l, big),
                               WithinAbs(0.0, 1e-12));
            }
}

TEST_CASE("hook eigenvalue diffusive drift") {
    // (r_{n|k})^{floor(L^2 t)} approaches e^{-2 pi^2 n t} in the hydrodynamic regime
    const int L = 400;
    const LatticeParams par(L, L / 2);
    const double t = 0.01;
    for (int n = 1; n <= 4; ++n)
        for (int k = 0; k < n; ++k) {
            const double r = hook_eigenvalue(n, k, par);
            const double discrete = std::pow(r, std::floor(1.0 * L * L * t));
            CHECK_THAT(discrete - std::exp(-2.0 * M_PI * M_PI * n * t), WithinAbs(0.0, 1e-2));
        }
}

TEST_CASE("semigroup apply: identity, eigenfunctions, constants, matrix powers") {
    const LatticeParams par(8, 3);
    const auto k = build_kernel(par);
    const std::size_t n = k.states();
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> f(n);
    for (auto& v : f) v = cplx(u(rng), u(rng));
    const Configuration eta = k.configs[n / 2];

    CHECK_THAT(std::abs(k.semigroup_apply(f, 0, eta) - f[k.index_of(eta)]),
               WithinAbs(0.0, 1e-9));

    std::vector<cplx> ones(n, 1.0);
    for (long long steps : {1, 5, 17})
        CHECK_THAT(std::abs(k.semigroup_apply(ones, steps, eta) - cplx(1.0)),
                   WithinAbs(0.0, 1e-10));

    // eigenfunction in, scaled eigenfunction out
    const auto& ep = k.eigen[k.eigen.size() / 3];
    CHECK_THAT(std::abs(k.semigroup_apply(ep.values, 7, eta) -
                        std::pow(ep.eigenvalue, 7.0) * ep.values[k.index_of(eta)]),
               WithinAbs(0.0, 1e-9));

    // against direct matrix powers
    std::vector<cplx> g = f;
    for (int step = 1; step <= 6; ++step) {
        g = k.apply(g);
        CHECK_THAT(std::abs(k.semigroup_apply(f, step, eta) - g[k.index_of(eta)]),
                   WithinAbs(0.0, 1e-9));
    }
}

TEST_CASE("eigen residual and Gram identity on a midsize kernel") {
    const LatticeParams par(9, 4);
    const auto k = build_kernel(par);
    const std::size_t n = k.states();
    REQUIRE(k.eigen.size() == n);
    double worst = 0.0;
    for (const auto& ep : k.eigen) {
        const auto Pf = k.apply(ep.values);
        for (std::size_t i = 0; i < n; ++i)
            worst = std::max(worst, std::abs(Pf[i] - ep.eigenvalue * ep.values[i]));
    }
    CHECK(worst <= 1e-10);

    double gram_err = 0.0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            cplx acc = 0.0;
            for (std::size_t s = 0; s < n; ++s)
                acc += k.mu[s] * k.eigen[a].values[s] * std::conj(k.eigen[b].values[s]);
            gram_err = std::max(gram_err, std::abs(acc - (a == b ? cplx(1.0) : cplx(0.0))));
        }
    CHECK(gram_err <= 1e-9);
}

TEST_CASE("spectrum multiset equals adjacency eigenvalues") {
    for (auto [L, N] : std::vector<std::pair<int, int>>{{7, 3}, {8, 2}, {9, 4}}) {
        const LatticeParams par(L, N);
        const auto configs = enumerate_configurations(par);
        std::vector<double> ours;
        for (const auto& xi : configs)
            ours.push_back(graph_eigenvalue(std::span<const int>(xi.data(), xi.size()), par));
        std::sort(ours.begin(), ours.end());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(adjacency_matrix(par));
        for (std::size_t i = 0; i < configs.size(); ++i)
            CHECK_THAT(ours[i] - es.eigenvalues()[i], WithinAbs(0.0, 1e-8));
    }
}

TEST_CASE("spectral gap") {
    for (int L = 3; L <= 12; ++L)
        CHECK_THAT(spectral_gap(LatticeParams(L, 1)),
                   WithinAbs(1.0 - std::cos(2.0 * M_PI / L), 1e-13));
    for (int L = 3; L <= 12; ++L)
        for (int N = 1; N < L; ++N) CHECK(spectral_gap(LatticeParams(L, N)) > 0.0);
    // odd rings are aperiodic: every nontrivial eigenvalue has modulus < 1
    for (auto [L, N] : std::vector<std::pair<int, int>>{{7, 3}, {9, 4}, {11, 2}}) {
        const LatticeParams par(L, N);
        for (const auto& lam : enumerate_box_partitions(L - N, N)) {
            if (lam == Partition{}) continue;
            CHECK(std::abs(eigenvalue_of(lam, par)) < 1.0 - 1e-9);
        }
    }
    // even rings are bipartite: -1 appears, so the squared kernel is the
    // right object for positivity
    const LatticeParams even(8, 3);
    double most_negative = 1.0;
    for (const auto& lam : enumerate_box_partitions(5, 3))
        most_negative = std::min(most_negative, eigenvalue_of(lam, even));
    CHECK_THAT(most_negative, WithinAbs(-1.0, 1e-12));
}

TEST_CASE("survival probability of the collision-free walk") {
    const LatticeParams par(6, 2);
    const Configuration xi = {0, 3};
    CHECK_THAT(survival_probability(xi, 0, par), WithinAbs(1.0, 1e-15));
    double prev = 1.0;
    for (int n = 1; n <= 30; ++n) {
        const double p = survival_probability(xi, n, par);
        CHECK(p <= prev + 1e-15);
        prev = p;
    }
    // tail ratio approaches (rho / 2N)^2
    const double rho = perron_radius(par);
    const double expect = std::pow(rho / (2.0 * par.N), 2.0);
    const double ratio = survival_probability(xi, 202, par) / survival_probability(xi, 200, par);
    CHECK_THAT(ratio, WithinAbs(expect, 1e-6));
}

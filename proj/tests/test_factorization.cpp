#include <catch2/catch_amalgamated.hpp>

#include "crn/factorization.hpp"
#include "crn/rng.hpp"
#include "fixtures.hpp"

using namespace crn;

TEST_CASE("collinear row partition") {
    using Classes = std::vector<std::vector<std::size_t>>;
    REQUIRE(collinear_row_partition(fx::gamma_ex1()) == Classes{{0, 2}, {1}, {3}});
    REQUIRE(collinear_row_partition(fx::gamma_ex3()) == Classes{{0}, {1, 2}, {3}, {4, 5}});
    REQUIRE(collinear_row_partition(Mat::identity(2)) == Classes{{0}, {1}});
    // Collinearity must tolerate rational scalings.
    Mat m{{2, -4}, {-1, 2}, {3, -6}};
    REQUIRE(collinear_row_partition(m) == Classes{{0, 1, 2}});
    REQUIRE_THROWS_AS(collinear_row_partition(Mat{{1, 0}, {0, 0}}), std::invalid_argument);
}

TEST_CASE("factorization reproduces the published factors") {
    struct Golden {
        Mat gamma, lambda, theta;
    };
    for (const auto& g : {Golden{fx::gamma_ex1(), fx::lambda_ex1(), fx::theta_ex1()},
                          Golden{fx::gamma_ex2(), fx::lambda_ex2(), fx::theta_ex2()},
                          Golden{fx::gamma_ex3(), fx::lambda_ex3(), fx::theta_ex3()}}) {
        auto f = factorize(g.gamma);
        REQUIRE(f.has_value());
        REQUIRE(f->lambda * f->theta == g.gamma);
        REQUIRE(canonical_factors(*f) == canonical_factors(g.lambda, g.theta));
        REQUIRE(verify_factorization(g.gamma, *f).empty());
        // Exact match without canonicalization as well: the construction is
        // pinned to the same conventions the published factors use.
        REQUIRE(f->lambda == g.lambda);
        REQUIRE(f->theta == g.theta);
    }
}

TEST_CASE("y_theta and ranks for the worked examples") {
    auto f1 = factorize(fx::gamma_ex1());
    REQUIRE(f1->y_theta == fx::rv({1, 1, 1}));
    auto f3 = factorize(fx::gamma_ex3());
    REQUIRE(f3->y_theta == fx::rv({1, 1, 1, 1}));
    for (const auto* f : {&*f1, &*f3}) {
        REQUIRE(f->r() == f->row_partition.size());
        REQUIRE(rank(f->lambda) == f->r());
    }
    // The sign fix was needed for the futile cycle (classes 2 and 4).
    REQUIRE(f3->sign_flip == std::vector<int>{1, -1, 1, -1});
    REQUIRE(f1->sign_flip == std::vector<int>{1, 1, 1});
}

TEST_CASE("factorization failures are definitive and explained") {
    // A + B -> C: all rows collinear, so Theta is 1x1 with trivial left kernel.
    auto out = try_factorize(Mat{{-1}, {-1}, {1}});
    REQUIRE_FALSE(out.factorization.has_value());
    REQUIRE(out.failure.find("ker(Theta^T)") != std::string::npos);

    // A -> B likewise.
    auto ab = try_factorize(Mat{{-1}, {1}});
    REQUIRE_FALSE(ab.factorization.has_value());
    REQUIRE(ab.failure.find("ker(Theta^T)") != std::string::npos);

    // Two disconnected reversible reactions: kernel is 0-dimensional.
    Mat disc{{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    REQUIRE_FALSE(factorize(disc).has_value());

    REQUIRE_THROWS_AS(factorize(Mat(2, 2)), std::invalid_argument);
}

TEST_CASE("verify_factorization flags violations by name") {
    Mat gamma = fx::gamma_ex1();
    Factorization good = *factorize(gamma);
    REQUIRE(verify_factorization(gamma, good).empty());

    // Global sign flip of both factors stays valid: the kernel of Theta^T is
    // unchanged as a set.
    Factorization flipped = good;
    flipped.lambda = -good.lambda;
    flipped.theta = -good.theta;
    REQUIRE(verify_factorization(gamma, flipped).empty());

    // Flipping a single Lambda-column/Theta-row pair keeps the product but
    // moves the kernel vector out of the positive orthant.
    Factorization partial = good;
    for (std::size_t i = 0; i < 4; ++i) partial.lambda(i, 0) = -partial.lambda(i, 0);
    for (std::size_t j = 0; j < 3; ++j) partial.theta(0, j) = -partial.theta(0, j);
    auto bad = verify_factorization(gamma, partial);
    REQUIRE_FALSE(bad.empty());
    bool names_kernel = false;
    for (const auto& s : bad) names_kernel = names_kernel || s.find("ker(Theta^T)") != std::string::npos ||
                                             s.find("y_theta") != std::string::npos;
    REQUIRE(names_kernel);

    // Corrupting one Lambda entry breaks the product.
    Factorization broken = good;
    broken.lambda(2, 0) = 1;
    auto violations = verify_factorization(gamma, broken);
    bool product = false;
    for (const auto& s : violations) product = product || s.find("product mismatch") != std::string::npos;
    REQUIRE(product);

    REQUIRE_THROWS_AS(verify_factorization(Mat::identity(3), good), std::invalid_argument);
}

TEST_CASE("row permutation does not change factorizability") {
    Rng rng(17);
    for (const Mat& gamma : {fx::gamma_ex1(), fx::gamma_ex3(), Mat{{-1}, {-1}, {1}}}) {
        bool ok = factorize(gamma).has_value();
        for (int t = 0; t < 10; ++t) {
            std::vector<std::size_t> perm(gamma.rows());
            for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
            for (std::size_t i = perm.size(); i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
            Mat shuffled(gamma.rows(), gamma.cols());
            for (std::size_t i = 0; i < gamma.rows(); ++i) shuffled.set_row(perm[i], gamma.row(i));
            REQUIRE(factorize(shuffled).has_value() == ok);
        }
    }
}

TEST_CASE("factorize is deterministic and JSON round-trips") {
    auto f1 = factorize(fx::gamma_ex3());
    auto f2 = factorize(fx::gamma_ex3());
    REQUIRE(to_json(*f1) == to_json(*f2));

    Factorization back = factorization_from_json(to_json(*f1));
    REQUIRE(back.lambda == f1->lambda);
    REQUIRE(back.theta == f1->theta);
    REQUIRE(back.y_theta == f1->y_theta);
    REQUIRE(back.row_partition == f1->row_partition);
    REQUIRE(verify_factorization(fx::gamma_ex3(), back).empty());
}

TEST_CASE("whenever factorize succeeds the verifier agrees") {
    Rng rng(23);
    int succeeded = 0;
    for (int t = 0; t < 300; ++t) {
        std::size_t n = 2 + rng.below(4), m = 2 + rng.below(3);
        Mat g(n, m);
        bool zero_row = false;
        for (std::size_t i = 0; i < n; ++i) {
            bool nz = false;
            for (std::size_t j = 0; j < m; ++j) {
                g(i, j) = Rational(static_cast<long long>(rng.below(5)) - 2);
                nz = nz || g(i, j) != 0;
            }
            zero_row = zero_row || !nz;
        }
        if (zero_row) continue;
        auto f = factorize(g);
        if (!f) continue;
        ++succeeded;
        REQUIRE(verify_factorization(g, *f).empty());
    }
    REQUIRE(succeeded > 3);
}

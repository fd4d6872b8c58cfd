#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "hopfcorr/linalg.hpp"

using namespace hopfcorr;

namespace {
Scalar q(long n, long d = 1) { return Scalar::exact(mpq_class(n, d)); }
}

TEST_CASE("sparse vector and matrix basics") {
    Vec v(5, Backend::Exact);
    v.set(1, q(3));
    v.set(4, q(-2));
    CHECK(v.nnz() == 2);
    CHECK(v.get(0).is_zero());
    Vec w = v + v;
    CHECK(w.get(1) == q(6));
    v.set(1, q(0));
    CHECK(v.nnz() == 1);

    Mat m = Mat::from_dense(Backend::Exact, {{q(1), q(2)}, {q(0), q(1)}});
    Mat id = Mat::identity(2, Backend::Exact);
    CHECK((m * id).approx_equal(m));
    CHECK(m.adjoint().get(0, 1) == q(0));
    CHECK(m.adjoint().get(1, 0) == q(2));
    Vec x(2, Backend::Exact);
    x.set(1, q(5));
    CHECK((m * x).get(0) == q(10));
}

TEST_CASE("dot conjugates the left slot") {
    Vec a(2, Backend::Exact), b(2, Backend::Exact);
    a.set(0, Scalar::parse("i", Backend::Exact));
    b.set(0, Scalar::one(Backend::Exact));
    CHECK(a.dot(b) == Scalar::parse("-i", Backend::Exact));
    CHECK(b.dot(a) == Scalar::parse("i", Backend::Exact));
}

TEST_CASE("span basis tracks coordinates over members") {
    SpanBasis sb(3, Backend::Exact);
    Vec v1(3, Backend::Exact), v2(3, Backend::Exact);
    v1.set(0, q(1));
    v1.set(1, q(1));
    v2.set(1, q(2));
    CHECK(!sb.insert(v1));
    CHECK(!sb.insert(v2));
    Vec dep = v1.scaled(q(3)) + v2.scaled(q(-1, 2));
    auto coords = sb.insert(dep);
    REQUIRE(coords);
    CHECK((*coords)[0] == q(3));
    CHECK((*coords)[1] == q(-1, 2));
    CHECK(sb.size() == 2);
    CHECK(sb.contains(dep));
    Vec out(3, Backend::Exact);
    out.set(2, q(1));
    CHECK(!sb.contains(out));
}

TEST_CASE("kernel of an exact matrix") {
    // rank-1 matrix [[1,2,3],[2,4,6]]
    Mat m = Mat::from_dense(Backend::Exact, {{q(1), q(2), q(3)}, {q(2), q(4), q(6)}});
    auto k = kernel(m);
    CHECK(k.size() == 2);
    for (const auto& v : k) CHECK((m * v).is_zero());
    Mat id = Mat::identity(3, Backend::Exact);
    CHECK(kernel(id).empty());
}

TEST_CASE("intersect kernels") {
    Mat a = Mat::from_dense(Backend::Exact, {{q(0), q(0), q(0)}, {q(0), q(1), q(0)},
                                             {q(0), q(0), q(0)}});
    Mat b = Mat::from_dense(Backend::Exact, {{q(0), q(0), q(0)}, {q(0), q(0), q(0)},
                                             {q(0), q(0), q(1)}});
    auto k = intersect_kernels({a, b}, Backend::Exact);
    REQUIRE(k.size() == 1);
    CHECK(!k[0].get(0).is_zero());
}

TEST_CASE("pivoted LDL* certifies semidefiniteness exactly") {
    // Gram of eta(u^n) = n for n in {1,2,-1}: G_mn = m n
    Mat g = Mat::from_dense(Backend::Exact,
                            {{q(1), q(2), q(-1)}, {q(2), q(4), q(-2)}, {q(-1), q(-2), q(1)}});
    auto r = ldlt_psd(g);
    CHECK(r.psd);
    CHECK(r.rank == 1);

    Mat neg = Mat::from_dense(Backend::Exact, {{q(1), q(2)}, {q(2), q(1)}});
    CHECK(!ldlt_psd(neg).psd); // eigenvalues 3, -1

    // zero diagonal with nonzero off-diagonal entry is indefinite
    Mat z = Mat::from_dense(Backend::Exact, {{q(0), q(1)}, {q(1), q(0)}});
    CHECK(!ldlt_psd(z).psd);

    Mat zero(3, 3, Backend::Exact);
    auto rz = ldlt_psd(zero);
    CHECK(rz.psd);
    CHECK(rz.rank == 0);
}

TEST_CASE("hermitian eigenvalues via jacobi") {
    Mat h(2, 2, Backend::Float);
    h.set(0, 0, Scalar::flt({1, 0}));
    h.set(1, 1, Scalar::flt({1, 0}));
    h.set(0, 1, Scalar::flt({0, -1}));
    h.set(1, 0, Scalar::flt({0, 1}));
    auto ev = hermitian_eigenvalues(h); // eigenvalues 0 and 2
    REQUIRE(ev.size() == 2);
    CHECK(ev[0] == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(ev[1] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("solve and metric projector") {
    Mat a = Mat::from_dense(Backend::Exact, {{q(2), q(1)}, {q(1), q(3)}});
    Vec rhs(2, Backend::Exact);
    rhs.set(0, q(5));
    rhs.set(1, q(10));
    Vec x = solve_square(a, rhs);
    CHECK((a * x - rhs).is_zero());

    // projector onto span{(1,1,0)} under metric diag(1,2,1)
    Mat metric = Mat::from_dense(Backend::Exact,
                                 {{q(1), q(0), q(0)}, {q(0), q(2), q(0)}, {q(0), q(0), q(1)}});
    Vec b1(3, Backend::Exact);
    b1.set(0, q(1));
    b1.set(1, q(1));
    Mat p = projector_onto({b1}, metric);
    CHECK((p * p).approx_equal(p));
    CHECK((p * b1 - b1).is_zero());
    Mat mp = metric * p;
    CHECK(mp.approx_equal(mp.adjoint()));
}

TEST_CASE("random exact projector identities") {
    std::mt19937 rng(3);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int t = 0; t < 20; ++t) {
        Vec b1(4, Backend::Exact), b2(4, Backend::Exact);
        for (uint32_t i = 0; i < 4; ++i) {
            b1.set(i, q(d(rng)));
            b2.set(i, q(d(rng)));
        }
        if (b1.is_zero() || b2.is_zero()) continue;
        SpanBasis sb(4, Backend::Exact);
        sb.insert(b1);
        sb.insert(b2);
        if (sb.size() < 2) continue;
        Mat p = projector_onto({b1, b2}, Mat::identity(4, Backend::Exact));
        CHECK((p * p).approx_equal(p));
        CHECK((p * b1 - b1).is_zero());
        CHECK((p * b2 - b2).is_zero());
        CHECK(p.approx_equal(p.adjoint()));
    }
}

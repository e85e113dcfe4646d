// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hqec/errors.hpp"
#include "hqec/generators.hpp"
#include "hqec/oracle.hpp"
#include "hqec/pathsum.hpp"
#include "support/random_circuit.hpp"

namespace hqec {
namespace {

using oracle::Matrix;

Apply H(WireId q) { return {Gate::h(), {}, {q}}; }
Apply X(WireId q) { return {Gate::x(), {}, {q}}; }
Apply T(WireId q) { return {Gate::rz(1, 3), {}, {q}}; }
Apply Z(WireId q) { return {Gate::rz(1, 1), {}, {q}}; }
Apply CX(WireId c, WireId t) { return {Gate::x(), {c}, {t}}; }

double dist(const Matrix& a, const Matrix& b) {
    return (a - b).norm();
}

TEST(BoolPoly, ProductAndSubstitution) {
    BoolPoly a = BoolPoly::var(0) ^ BoolPoly::var(1);
    BoolPoly sq = a * a;
    EXPECT_EQ(sq, a);  // idempotent over GF(2)
    BoolPoly s = a.substitute(1, BoolPoly::var(0) ^ BoolPoly::one());
    EXPECT_TRUE(s.is_one());
    EXPECT_TRUE((a ^ a).is_zero());
}

TEST(Lift, Linear) {
    PhasePoly p = lift(BoolPoly::var(3));
    EXPECT_EQ(p.size(), 1u);
    EXPECT_EQ(p.coeff({3}), Dyadic::integer(1));
}

TEST(Lift, TwoTermInclusionExclusion) {
    // x1 + x2 - 2 x1 x2, and -2 vanishes modulo 2
    PhasePoly p = lift(BoolPoly::var(1) ^ BoolPoly::var(2));
    EXPECT_EQ(p.coeff({1}), Dyadic::integer(1));
    EXPECT_EQ(p.coeff({2}), Dyadic::integer(1));
    EXPECT_EQ(p.size(), 2u);
}

TEST(Lift, ScaledTruthTable) {
    // a fractional coefficient keeps the higher-order terms; check pointwise
    BoolPoly b = BoolPoly::var(1) ^ BoolPoly::var(2) ^ BoolPoly::of({1, 2});
    for (int e = 0; e <= 5; ++e) {
        Dyadic c = Dyadic::fraction(1, e);
        PhasePoly p;
        p.add_lifted(b, c);
        for (int x = 0; x < 4; ++x) {
            auto val = [x](Var v) { return ((x >> (v - 1)) & 1) != 0; };
            Dyadic want = b.eval(val) ? c : Dyadic{};
            EXPECT_EQ(p.eval(val), want) << "e=" << e << " x=" << x;
        }
    }
}

TEST(PathSum, IdentityMatrices) {
    EXPECT_LT(dist(oracle::evaluate(identity(0)), Matrix::Identity(1, 1)), 1e-12);
    EXPECT_EQ(identity(1).outputs[0], BoolPoly::var(0));
    EXPECT_LT(dist(oracle::evaluate(identity(3)), Matrix::Identity(8, 8)), 1e-12);
}

TEST(PathSum, HadamardGenerator) {
    PathSum ps = apply_gate(identity(1), H(0));
    EXPECT_EQ(ps.path.size(), 1u);
    EXPECT_EQ(ps.scale, 1);
    EXPECT_LT(dist(oracle::evaluate(ps), oracle::simulate_unitary({H(0)}, 1)), 1e-12);
    EXPECT_EQ(ps.str(), "2^{-1/2} Σ_{y1} e^{iπ(x0·y1)} |y1⟩");
}

TEST(PathSum, CnotAndZAndControlledT) {
    PathSum cx = apply_gate(identity(2), CX(0, 1));
    EXPECT_EQ(cx.outputs[1], BoolPoly::var(1) ^ BoolPoly::var(0));
    PathSum z = apply_gate(identity(1), Z(0));
    EXPECT_EQ(z.phase.coeff({0}), Dyadic::integer(1));
    PathSum ct = apply_gate(identity(2), {Gate::rz(1, 3), {0}, {1}});
    EXPECT_EQ(ct.phase.coeff({0, 1}), Dyadic::fraction(1, 2));
    EXPECT_EQ(ct.phase.size(), 1u);
    EXPECT_LT(dist(oracle::evaluate(ct), oracle::simulate_unitary({{Gate::rz(1, 3), {0}, {1}}}, 2)), 1e-12);
}

TEST(PathSum, ControlledHadamardRejected) {
    EXPECT_THROW(apply_gate(identity(2), {Gate::h(), {0}, {1}}), ControlledHadamard);
    EXPECT_THROW(apply_gate(identity(1), X(3)), WireOutOfRange);
}

TEST(PathSum, KernelGatesMatchOracleExactly) {
    std::vector<Gate> gates{Gate::x(), Gate::h(), Gate::rz(1, 1), Gate::rz(3, 3), Gate::rz(-1, 2),
                            Gate::ph(1, 2), Gate::ph(5, 4)};
    for (const auto& g : gates) {
        std::vector<Apply> cases{{g, {}, {0}}, {g, {}, {1}}};
        if (g.kind != GateKind::H) {
            cases.push_back({g, {0}, {1}});
            cases.push_back({g, {1}, {0}});
        }
        for (const auto& a : cases) {
            PathSum ps = apply_gate(identity(2), a);
            EXPECT_LT(dist(oracle::evaluate(ps), oracle::simulate_unitary({a}, 2)), 1e-12) << g.str();
        }
    }
}

TEST(Reduce, HHIsIdentity) {
    PathSum ps = of_unitary_circuit({H(0), H(0)}, 1);
    EXPECT_TRUE(is_identity(ps, false)) << ps.str();
}

TEST(Reduce, ElimDropsUnusedPath) {
    PathSum ps = identity(1);
    ps.path.insert(ps.fresh());
    ps.scale = 2;
    ReduceStats st;
    reduce_in_place(ps, {{}, {}, &st});
    EXPECT_TRUE(ps.path.empty());
    EXPECT_EQ(ps.scale, 0);
    EXPECT_EQ(st.elim, 1u);
}

TEST(Reduce, HTHMatchesProduct) {
    std::vector<Apply> u{H(0), T(0), H(0)};
    PathSum ps = of_unitary_circuit(u, 1);
    EXPECT_LT(dist(oracle::evaluate(ps), oracle::simulate_unitary(u, 1)), 1e-12);
}

TEST(Reduce, SandwichedPhasesUseOmega) {
    std::vector<Apply> u{H(0), {Gate::rz(1, 2), {}, {0}}, H(0)};
    ReduceStats st;
    PathSum ps = of_unitary_circuit(u, 1, {1, {{}, {}, &st}});
    EXPECT_GE(st.omega, 1u);
    EXPECT_LT(dist(oracle::evaluate(ps), oracle::simulate_unitary(u, 1)), 1e-12);
    std::vector<Apply> v{H(0), {Gate::rz(-1, 2), {}, {0}}, H(0)};
    EXPECT_LT(dist(oracle::evaluate(of_unitary_circuit(v, 1)), oracle::simulate_unitary(v, 1)), 1e-12);
}

TEST(Reduce, QftMatchesDft) {
    for (std::uint32_t n = 1; n <= 4; ++n) {
        PathSum ps = of_unitary_circuit(qft(n), n);
        const Eigen::Index N = Eigen::Index{1} << n;
        Matrix dft(N, N);
        for (Eigen::Index k = 0; k < N; ++k) {
            for (Eigen::Index x = 0; x < N; ++x) {
                dft(k, x) = std::polar(1.0 / std::sqrt(double(N)), 2 * std::numbers::pi * double(x * k) / double(N));
            }
        }
        EXPECT_LT(dist(oracle::evaluate(ps), dft), 1e-12) << "n=" << n;
        EXPECT_LT(dist(oracle::simulate_unitary(qft(n), n), dft), 1e-12) << "n=" << n;
    }
}

TEST(Reduce, EveryFiringPreservesOperator) {
    std::mt19937_64 rng(21);
    std::size_t firings = 0;
    auto observer = [&](Rule r, const PathSum& before, const PathSum& after) {
        ++firings;
        EXPECT_LT(dist(oracle::evaluate(before), oracle::evaluate(after)), 1e-12) << to_string(r) << "\n"
                                                                              << before.str() << "\n"
                                                                              << after.str();
    };
    for (int i = 0; i < 60; ++i) {
        auto u = testing::random_unitary(rng, 3, 10);
        of_unitary_circuit(u, 3, {1, {observer, {}, nullptr}});
    }
    EXPECT_GT(firings, 50u);
}

TEST(Reduce, MiterOfRandomCircuitIsIdentity) {
    std::mt19937_64 rng(9);
    int reduced = 0;
    for (int i = 0; i < 100; ++i) {
        std::uint32_t n = 1 + static_cast<std::uint32_t>(rng() % 6);
        auto u = testing::random_unitary(rng, n, 12);
        auto m = u;
        auto adj = adjoint_circuit(u);
        m.insert(m.end(), adj.begin(), adj.end());
        PathSum ps = of_unitary_circuit(m, n);
        if (is_identity(ps, false)) {
            ++reduced;
            continue;
        }
        // a stalled miter must still denote the identity
        if (ps.path.size() <= 10) {
            EXPECT_LT(dist(oracle::evaluate(ps), Matrix::Identity(1 << n, 1 << n)), 1e-10);
        }
    }
    EXPECT_GT(reduced, 80);
}

TEST(Reduce, CliffordMitersAlwaysReduce) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 100; ++i) {
        std::uint32_t n = 1 + static_cast<std::uint32_t>(rng() % 6);
        // H, S, S^dag, X, Z, CX, CZ
        std::vector<Apply> u;
        for (int g = 0; g < 15; ++g) {
            WireId a = static_cast<WireId>(rng() % n), b = static_cast<WireId>((a + 1 + rng() % std::max(n - 1, 1u)) % n);
            switch (rng() % 7) {
            case 0: u.push_back(H(a)); break;
            case 1: u.push_back({Gate::rz(1, 2), {}, {a}}); break;
            case 2: u.push_back({Gate::rz(-1, 2), {}, {a}}); break;
            case 3: u.push_back(X(a)); break;
            case 4: u.push_back(Z(a)); break;
            case 5: if (n > 1) { u.push_back(CX(a, b)); } break;
            default: if (n > 1) { u.push_back({Gate::rz(1, 1), {a}, {b}}); } break;
            }
        }
        auto m = u;
        auto adj = adjoint_circuit(u);
        m.insert(m.end(), adj.begin(), adj.end());
        EXPECT_TRUE(is_identity(of_unitary_circuit(m, n), false));
    }
}

TEST(Adjoint, ReversesAndInverts) {
    EXPECT_EQ(adjoint_circuit({H(0)}), std::vector<Apply>{H(0)});
    EXPECT_EQ(adjoint_circuit({T(0)}), (std::vector<Apply>{{Gate::rz(-1, 3), {}, {0}}}));
    EXPECT_EQ(adjoint_circuit({H(0), X(1)}), (std::vector<Apply>{X(1), H(0)}));
}

TEST(Project, Substitution) {
    PathSum ps = project(identity(2), {1});
    EXPECT_EQ(ps.outputs[0], BoolPoly::var(0));
    EXPECT_TRUE(ps.outputs[1].is_zero());
}

TEST(Project, MatchesZeroedColumns) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 30; ++i) {
        auto u = testing::random_unitary(rng, 3, 10);
        PathSum ps = of_unitary_circuit(u, 3);
        Matrix full = oracle::evaluate(ps);
        PathSum pr = reduce(project(ps, {0, 2}));
        Matrix part = oracle::evaluate(pr);
        for (Eigen::Index x = 0; x < 8; ++x) {
            Eigen::Index src = x & ~Eigen::Index{5};
            EXPECT_LT((part.col(x) - full.col(src)).norm(), 1e-12);
        }
        PathSum all = project(ps, {0, 1, 2});
        EXPECT_LT((oracle::evaluate(all).col(0) - full.col(0)).norm(), 1e-12);
    }
}

TEST(Separate, NothingDiscarded) {
    auto r = separate(identity(2), {});
    ASSERT_TRUE(r);
    EXPECT_TRUE(r->residual_ok);
    EXPECT_EQ(r->kept, identity(2));
}

TEST(Separate, BellHalfFails) {
    PathSum ps = of_unitary_circuit({H(0), CX(0, 1)}, 2);
    ps = reduce(project(ps, {0, 1}));
    EXPECT_FALSE(separate(ps, {1}).has_value());
}

TEST(Separate, CopiedInputIsNotResidualOk) {
    // CNOT copy of the input onto a fresh wire, then discard the copy
    PathSum ps = reduce(project(of_unitary_circuit({CX(0, 1)}, 2), {1}));
    auto r = separate(ps, {1});
    ASSERT_TRUE(r);
    EXPECT_FALSE(r->residual_ok);
}

TEST(Separate, IndependentAncillaSplitsOff) {
    // H on a fresh ancilla next to a T on the data wire
    PathSum ps = reduce(project(of_unitary_circuit({T(0), H(1)}, 2), {1}));
    auto r = separate(ps, {1});
    ASSERT_TRUE(r);
    EXPECT_TRUE(r->residual_ok);
    EXPECT_EQ(r->kept.outputs.size(), 1u);
    EXPECT_EQ(r->kept.scale, 0);
    EXPECT_LT(dist(oracle::evaluate(r->kept).col(0), oracle::simulate_unitary({T(0)}, 1).col(0)), 1e-12);
    EXPECT_LT(dist(oracle::evaluate(r->kept).col(1), oracle::simulate_unitary({T(0)}, 1).col(1)), 1e-12);
}

TEST(EqualSyntactic, Basics) {
    EXPECT_TRUE(equal_syntactic(identity(2), identity(2), false));
    PathSum zx = of_unitary_circuit({Z(0), X(0)}, 1);
    PathSum xz = of_unitary_circuit({X(0), Z(0)}, 1);
    EXPECT_TRUE(equal_syntactic(zx, xz, true));
    EXPECT_FALSE(equal_syntactic(zx, xz, false));
    EXPECT_FALSE(equal_syntactic(identity(1), of_unitary_circuit({X(0)}, 1), true));
}

TEST(EqualSyntactic, RenamingInvariant) {
    PathSum a = of_unitary_circuit({H(0), T(0), H(1)}, 2, {0, {}});
    PathSum b = of_unitary_circuit({H(1), H(0), T(0)}, 2, {0, {}});
    EXPECT_TRUE(equal_syntactic(a, b, false)) << a.str() << "\n" << b.str();
}

}  // namespace
}  // namespace hqec

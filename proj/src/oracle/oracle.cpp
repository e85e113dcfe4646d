// SPDX-License-Identifier: Apache-2.0

#include "hqec/oracle.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numbers>

#include "hqec/errors.hpp"

namespace hqec::oracle {

using cd = std::complex<double>;

namespace {

cd phase_of(DyadicAngle a) {
    return std::polar(1.0, a.radians());
}

}  // namespace

void apply_left(Matrix& m, const Apply& a) {
    const Eigen::Index dim = m.rows();
    std::size_t cmask = 0;
    for (auto w : a.controls) {
        cmask |= std::size_t{1} << w;
    }
    const double r = 1.0 / std::numbers::sqrt2;
    for (auto t : a.targets) {
        const std::size_t tb = std::size_t{1} << t;
        for (Eigen::Index i = 0; i < dim; ++i) {
            const auto ui = static_cast<std::size_t>(i);
            if ((ui & cmask) != cmask) {
                continue;
            }
            switch (a.gate.kind) {
            case GateKind::X:
                if (!(ui & tb)) {
                    m.row(i).swap(m.row(static_cast<Eigen::Index>(ui | tb)));
                }
                break;
            case GateKind::H:
                if (!(ui & tb)) {
                    auto j = static_cast<Eigen::Index>(ui | tb);
                    Eigen::RowVectorXcd lo = m.row(i), hi = m.row(j);
                    m.row(i) = r * (lo + hi);
                    m.row(j) = r * (lo - hi);
                }
                break;
            case GateKind::RZ:
                if (ui & tb) {
                    m.row(i) *= phase_of(a.gate.angle);
                }
                break;
            case GateKind::Ph:
                m.row(i) *= phase_of(a.gate.angle);
                break;
            }
        }
    }
}

Matrix simulate_unitary(const std::vector<Apply>& u, std::uint32_t n) {
    if (n > kMaxUnitaryQubits) {
        throw TooLarge("unitary simulation limited to " + std::to_string(kMaxUnitaryQubits) + " qubits");
    }
    Matrix m = Matrix::Identity(Eigen::Index{1} << n, Eigen::Index{1} << n);
    for (const auto& a : u) {
        apply_left(m, a);
    }
    return m;
}

namespace {

void conjugate(Matrix& rho, const Apply& a) {
    apply_left(rho, a);
    Matrix t = rho.adjoint();
    apply_left(t, a);
    rho = t.adjoint();
}

Matrix project_wire(const Matrix& rho, WireId q, bool value) {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    const std::size_t b = std::size_t{1} << q;
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        if (((static_cast<std::size_t>(i) & b) != 0) != value) {
            continue;
        }
        for (Eigen::Index j = 0; j < rho.cols(); ++j) {
            if (((static_cast<std::size_t>(j) & b) != 0) == value) {
                out(i, j) = rho(i, j);
            }
        }
    }
    return out;
}

Matrix reset_wire(const Matrix& rho, WireId q) {
    Matrix out = Matrix::Zero(rho.rows(), rho.cols());
    const std::size_t b = std::size_t{1} << q;
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
        for (Eigen::Index j = 0; j < rho.cols(); ++j) {
            auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
            if (((ui ^ uj) & b) == 0) {
                out(static_cast<Eigen::Index>(ui & ~b), static_cast<Eigen::Index>(uj & ~b)) += rho(i, j);
            }
        }
    }
    return out;
}

// Evolves the operator |i><j| (embedded with zero ancillas) through c and
// returns the reduced operator on the kept wires.
Matrix evolve(const HybridCircuit& c, std::size_t in_i, std::size_t in_j, const std::vector<WireId>& primaries,
              const std::vector<WireId>& kept) {
    const Eigen::Index dim = Eigen::Index{1} << c.n_qubits;
    auto embed = [&](std::size_t x) {
        std::size_t full = 0;
        for (std::size_t p = 0; p < primaries.size(); ++p) {
            if (x >> p & 1) {
                full |= std::size_t{1} << primaries[p];
            }
        }
        return static_cast<Eigen::Index>(full);
    };
    std::map<std::vector<bool>, Matrix> branches;
    Matrix rho = Matrix::Zero(dim, dim);
    rho(embed(in_i), embed(in_j)) = 1.0;
    branches.emplace(std::vector<bool>(c.n_cbits, false), std::move(rho));

    for (const auto& ins : c.body) {
        std::map<std::vector<bool>, Matrix> next;
        auto put = [&](std::vector<bool> key, Matrix m) {
            auto [it, fresh] = next.try_emplace(std::move(key), m);
            if (!fresh) {
                it->second += m;
            }
        };
        for (auto& [bits, m] : branches) {
            if (const auto* a = std::get_if<Apply>(&ins)) {
                conjugate(m, *a);
                put(bits, std::move(m));
            } else if (const auto* cc = std::get_if<ClassicallyControlled>(&ins)) {
                bool fire = std::all_of(cc->bits.begin(), cc->bits.end(), [&](auto b) { return bits[b]; });
                if (fire) {
                    conjugate(m, cc->inner);
                }
                put(bits, std::move(m));
            } else if (const auto* me = std::get_if<Measure>(&ins)) {
                auto k0 = bits, k1 = bits;
                k0[me->c] = false;
                k1[me->c] = true;
                put(k0, project_wire(m, me->q, false));
                put(k1, project_wire(m, me->q, true));
            } else if (const auto* in = std::get_if<Init>(&ins)) {
                put(bits, reset_wire(m, in->q));
            } else if (const auto* nb = std::get_if<NotBit>(&ins)) {
                auto k = bits;
                k[nb->c] = !k[nb->c];
                put(k, std::move(m));
            }
        }
        branches = std::move(next);
    }

    // A measured wire reports its classical bit, which later NotBits may
    // have flipped; re-prepare the wire from the bit's final value.
    std::vector<Measure> measured;
    for (const auto& ins : c.body) {
        if (const auto* me = std::get_if<Measure>(&ins); me && !c.discards.contains(me->q)) {
            measured.push_back(*me);
        }
    }
    Matrix total = Matrix::Zero(dim, dim);
    for (auto& [bits, m] : branches) {
        for (const auto& me : measured) {
            m = reset_wire(m, me.q);
            if (bits[me.c]) {
                conjugate(m, {Gate::x(), {}, {me.q}});
            }
        }
        total += m;
    }
    // trace out discarded wires
    std::vector<WireId> disc(c.discards.begin(), c.discards.end());
    const Eigen::Index kd = Eigen::Index{1} << kept.size();
    Matrix out = Matrix::Zero(kd, kd);
    auto compose = [&](std::size_t a, std::size_t d) {
        std::size_t full = 0;
        for (std::size_t p = 0; p < kept.size(); ++p) {
            if (a >> p & 1) {
                full |= std::size_t{1} << kept[p];
            }
        }
        for (std::size_t p = 0; p < disc.size(); ++p) {
            if (d >> p & 1) {
                full |= std::size_t{1} << disc[p];
            }
        }
        return static_cast<Eigen::Index>(full);
    };
    for (std::size_t a = 0; a < static_cast<std::size_t>(kd); ++a) {
        for (std::size_t b = 0; b < static_cast<std::size_t>(kd); ++b) {
            cd acc = 0;
            for (std::size_t d = 0; d < (std::size_t{1} << disc.size()); ++d) {
                acc += total(compose(a, d), compose(b, d));
            }
            out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = acc;
        }
    }
    return out;
}

}  // namespace

ChoiMatrix simulate_channel(const HybridCircuit& c, std::uint32_t max_qubits) {
    if (c.n_qubits > max_qubits) {
        throw TooLarge("channel simulation limited to " + std::to_string(max_qubits) + " qubits");
    }
    require_well_formed(c);
    auto primaries = c.primary_inputs();
    auto kept = c.kept_outputs();
    ChoiMatrix ch;
    ch.n_in = static_cast<std::uint32_t>(primaries.size());
    ch.n_kept = static_cast<std::uint32_t>(kept.size());
    const std::size_t ni = std::size_t{1} << ch.n_in, nk = std::size_t{1} << ch.n_kept;
    ch.m = Matrix::Zero(static_cast<Eigen::Index>(ni * nk), static_cast<Eigen::Index>(ni * nk));
    for (std::size_t i = 0; i < ni; ++i) {
        for (std::size_t j = 0; j < ni; ++j) {
            Matrix e = evolve(c, i, j, primaries, kept);
            ch.m.block(static_cast<Eigen::Index>(i * nk), static_cast<Eigen::Index>(j * nk),
                       static_cast<Eigen::Index>(nk), static_cast<Eigen::Index>(nk)) = e;
        }
    }
    return ch;
}

double channel_distance(const ChoiMatrix& a, const ChoiMatrix& b) {
    if (a.n_in != b.n_in || a.n_kept != b.n_kept) {
        throw DimensionMismatch("channels act on " + std::to_string(a.n_in) + "->" + std::to_string(a.n_kept) +
                                " and " + std::to_string(b.n_in) + "->" + std::to_string(b.n_kept) + " wires");
    }
    return (a.m - b.m).norm();
}

bool oracle_equiv(const HybridCircuit& c1, const HybridCircuit& c2, double tol) {
    return channel_distance(simulate_channel(c1), simulate_channel(c2)) <= tol;
}

Matrix evaluate(const PathSum& ps) {
    std::vector<Var> paths(ps.path.begin(), ps.path.end());
    if (ps.n_in > 16 || paths.size() > 20 || ps.outputs.size() > 16) {
        throw TooLarge("path sum too large for dense evaluation");
    }
    Var top = ps.next_var;
    for (const auto& [m, c] : ps.phase.terms()) {
        for (auto v : m) {
            top = std::max(top, v + 1);
        }
    }
    for (const auto& f : ps.outputs) {
        for (auto v : f.vars()) {
            top = std::max(top, v + 1);
        }
    }
    top = std::max<Var>(top, ps.n_in);
    std::vector<char> value(top, 0);
    auto lookup = [&](Var v) { return value[v] != 0; };

    const std::size_t ni = std::size_t{1} << ps.n_in, no = std::size_t{1} << ps.outputs.size();
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(no), static_cast<Eigen::Index>(ni));
    const double norm = std::pow(2.0, -ps.scale / 2.0);
    for (std::size_t x = 0; x < ni; ++x) {
        for (Var i = 0; i < ps.n_in; ++i) {
            value[i] = static_cast<char>(x >> i & 1);
        }
        for (std::size_t y = 0; y < (std::size_t{1} << paths.size()); ++y) {
            for (std::size_t k = 0; k < paths.size(); ++k) {
                value[paths[k]] = static_cast<char>(y >> k & 1);
            }
            std::size_t row = 0;
            for (std::size_t j = 0; j < ps.outputs.size(); ++j) {
                if (ps.outputs[j].eval(lookup)) {
                    row |= std::size_t{1} << j;
                }
            }
            double angle = std::numbers::pi * ps.phase.eval(lookup).to_double();
            m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(x)) += norm * std::polar(1.0, angle);
        }
    }
    return m;
}

}  // namespace hqec::oracle

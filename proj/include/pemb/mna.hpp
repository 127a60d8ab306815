#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <string>
#include <vector>

#include "pemb/errors.hpp"
#include "pemb/netlist.hpp"

namespace pemb {

// Modified nodal analysis of the lossless LC-transformer netlists produced by
// assemble_line. Unknowns are the non-ground node voltages, one current per
// transformer port winding, and one current per inductor. The frequency-domain
// system is (B + s*A) x = injection, with B holding the algebraic
// (transformer and incidence) stamps and A the reactive (C and L) stamps.
struct MnaSystem {
    Eigen::MatrixXd A;
    Eigen::MatrixXd B;
    std::vector<std::string> node_order;       // representative nodes, in index order
    std::map<std::string, int> node_index;     // resolved through short merges; ground = -1
    int n_nodes = 0;                           // voltage unknowns

    int index_of(const std::string& node) const {
        auto it = node_index.find(node);
        if (it == node_index.end())
            throw domain_error("MnaSystem: unknown node '" + node + "'");
        return it->second;
    }
};

inline MnaSystem build_mna(const Netlist& net) {
    // Union of short-circuited nodes; ground ("0") always wins as the
    // representative so merged nodes drop out of the unknown set.
    std::map<std::string, std::string> parent;
    auto find = [&parent](std::string a) {
        while (true) {
            auto it = parent.find(a);
            if (it == parent.end() || it->second == a) return a;
            a = it->second;
        }
    };
    for (const auto& [a, b] : net.shorts) {
        std::string ra = find(a), rb = find(b);
        if (ra == rb) continue;
        if (rb == "0") std::swap(ra, rb);
        parent[rb] = ra;  // ra survives; ground survives always
    }

    MnaSystem sys;
    auto resolve = [&](const std::string& name) -> int {
        const std::string rep = find(name);
        if (rep == "0") return -1;
        auto it = sys.node_index.find(rep);
        if (it != sys.node_index.end()) return it->second;
        const int idx = static_cast<int>(sys.node_order.size());
        sys.node_order.push_back(rep);
        sys.node_index.emplace(rep, idx);
        return idx;
    };

    // First pass: discover nodes in deterministic element order.
    for (const auto& k : net.transformers) {
        for (const auto& [a, b] : k.primaries) { resolve(a); resolve(b); }
        for (const auto& [a, b] : k.secondaries) { resolve(a); resolve(b); }
    }
    for (const auto& c : net.capacitors) { resolve(c.node_pos); resolve(c.node_neg); }
    for (const auto& l : net.inductors) { resolve(l.node_pos); resolve(l.node_neg); }
    for (const auto& o : net.opens) resolve(o);  // open terminals still exist as nodes

    sys.n_nodes = static_cast<int>(sys.node_order.size());
    int n_unknowns = sys.n_nodes;
    for (const auto& k : net.transformers) n_unknowns += static_cast<int>(k.primaries.size());
    n_unknowns += static_cast<int>(net.inductors.size());

    sys.A = Eigen::MatrixXd::Zero(n_unknowns, n_unknowns);
    sys.B = Eigen::MatrixXd::Zero(n_unknowns, n_unknowns);
    // Aliases mapping short-circuited node names back to their representative
    // index, so callers can query merged or grounded nodes by original name.
    for (const auto& [a, b] : net.shorts) {
        for (const std::string& name : {a, b}) {
            const std::string rep = find(name);
            if (rep == "0") {
                sys.node_index.emplace(name, -1);
            } else if (auto it = sys.node_index.find(rep); it != sys.node_index.end()) {
                sys.node_index.emplace(name, it->second);
            }
        }
    }

    int ofs = sys.n_nodes;
    for (const auto& k : net.transformers) {
        const int np = static_cast<int>(k.primaries.size());
        const int ns = static_cast<int>(k.secondaries.size());
        // Port winding currents enter the port-node balances directly; the
        // secondary winding currents are -T*i_port and enter the secondary
        // node balances with opposite sign convention.
        for (int p = 0; p < np; ++p) {
            const int ia = resolve(k.primaries[static_cast<std::size_t>(p)].first);
            const int ib = resolve(k.primaries[static_cast<std::size_t>(p)].second);
            if (ia >= 0) sys.B(ia, ofs + p) += 1.0;
            if (ib >= 0) sys.B(ib, ofs + p) -= 1.0;
        }
        for (int w = 0; w < ns; ++w) {
            const int ia = resolve(k.secondaries[static_cast<std::size_t>(w)].first);
            const int ib = resolve(k.secondaries[static_cast<std::size_t>(w)].second);
            for (int p = 0; p < np; ++p) {
                const double t = k.ratio(w, p);
                if (ia >= 0) sys.B(ia, ofs + p) -= t;
                if (ib >= 0) sys.B(ib, ofs + p) += t;
            }
        }
        // Voltage coupling rows: v_port(p) - sum_w T(w,p) v_sec(w) = 0.
        for (int p = 0; p < np; ++p) {
            const int row = ofs + p;
            const int ia = resolve(k.primaries[static_cast<std::size_t>(p)].first);
            const int ib = resolve(k.primaries[static_cast<std::size_t>(p)].second);
            if (ia >= 0) sys.B(row, ia) += 1.0;
            if (ib >= 0) sys.B(row, ib) -= 1.0;
            for (int w = 0; w < ns; ++w) {
                const double t = k.ratio(w, p);
                const int ic = resolve(k.secondaries[static_cast<std::size_t>(w)].first);
                const int id = resolve(k.secondaries[static_cast<std::size_t>(w)].second);
                if (ic >= 0) sys.B(row, ic) -= t;
                if (id >= 0) sys.B(row, id) += t;
            }
        }
        ofs += np;
    }
    for (const auto& l : net.inductors) {
        const int ia = resolve(l.node_pos);
        const int ib = resolve(l.node_neg);
        if (ia >= 0) sys.B(ia, ofs) += 1.0;
        if (ib >= 0) sys.B(ib, ofs) -= 1.0;
        // Branch law: v_a - v_b - s*L*i = 0.
        if (ia >= 0) sys.B(ofs, ia) += 1.0;
        if (ib >= 0) sys.B(ofs, ib) -= 1.0;
        sys.A(ofs, ofs) -= l.henries;
        ++ofs;
    }
    for (const auto& c : net.capacitors) {
        const int ia = resolve(c.node_pos);
        const int ib = resolve(c.node_neg);
        // Branch current s*C*(v_a - v_b) folded into the node balances.
        if (ia >= 0) sys.A(ia, ia) += c.farads;
        if (ib >= 0) sys.A(ib, ib) += c.farads;
        if (ia >= 0 && ib >= 0) {
            sys.A(ia, ib) -= c.farads;
            sys.A(ib, ia) -= c.farads;
        }
    }
    return sys;
}

// Port impedance matrix: unit currents injected one port at a time, port
// voltages read back. s is the physical Laplace variable (rad/s).
inline Eigen::MatrixXcd port_impedance(const Netlist& net,
                                       const std::vector<std::string>& port_nodes,
                                       std::complex<double> s) {
    const MnaSystem sys = build_mna(net);
    const Eigen::Index n = sys.A.rows();
    Eigen::MatrixXcd M = sys.B.cast<std::complex<double>>() + s * sys.A.cast<std::complex<double>>();
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M);
    const Eigen::Index np = static_cast<Eigen::Index>(port_nodes.size());
    Eigen::MatrixXcd Z = Eigen::MatrixXcd::Zero(np, np);
    for (Eigen::Index j = 0; j < np; ++j) {
        const int inj = sys.index_of(port_nodes[static_cast<std::size_t>(j)]);
        if (inj < 0) continue;  // grounded port: zero column
        Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
        rhs(inj) = 1.0;
        const Eigen::VectorXcd x = lu.solve(rhs);
        for (Eigen::Index i = 0; i < np; ++i) {
            const int probe = sys.index_of(port_nodes[static_cast<std::size_t>(i)]);
            Z(i, j) = probe >= 0 ? x(probe) : 0.0;
        }
    }
    return Z;
}

// Undamped resonances of the netlist in rad/s (physical). The generalized
// pencil B x = mu * (-A) x is solved after two conditioning steps: the
// Laplace variable is rescaled by freq_scale (so the wanted eigenvalues are
// O(1)) and the pencil rows/columns are equilibrated; both transformations
// leave the eigenvalues exact, they only tame the wide dynamic range of
// physical component values. Imaginary parts of the finite eigenvalues come
// out in conjugate pairs; magnitudes are deduplicated and sorted.
inline std::vector<double> eigenfrequencies(const Netlist& net, double freq_scale,
                                            int count) {
    if (!(freq_scale > 0.0)) throw domain_error("eigenfrequencies: freq_scale must be > 0");
    MnaSystem sys = build_mna(net);
    Eigen::MatrixXd A = sys.A * freq_scale;
    Eigen::MatrixXd B = sys.B;

    const Eigen::Index n = A.rows();
    Eigen::ArrayXd row_max = Eigen::ArrayXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i)
        row_max(i) = std::max(A.row(i).cwiseAbs().maxCoeff(), B.row(i).cwiseAbs().maxCoeff());
    Eigen::ArrayXd r = (row_max > 0.0).select(row_max.sqrt().inverse(), 1.0);
    A.array().colwise() *= r;
    B.array().colwise() *= r;
    Eigen::ArrayXd col_max = Eigen::ArrayXd::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j)
        col_max(j) = std::max(A.col(j).cwiseAbs().maxCoeff(), B.col(j).cwiseAbs().maxCoeff());
    Eigen::ArrayXd c = (col_max > 0.0).select(col_max.sqrt().inverse(), 1.0);
    A.array().rowwise() *= c.transpose();
    B.array().rowwise() *= c.transpose();

    Eigen::GeneralizedEigenSolver<Eigen::MatrixXd> ges;
    ges.setMaxIterations(200 * static_cast<int>(n));
    ges.compute(B, A, false);
    const auto alphas = ges.alphas();
    const auto betas = ges.betas();

    std::vector<double> omegas;
    for (Eigen::Index i = 0; i < alphas.size(); ++i) {
        const double be = betas(i);
        if (std::abs(be) < 1e-12) continue;  // infinite eigenvalue: algebraic constraint
        const std::complex<double> shat = -alphas(i) / be;
        const double w = std::abs(shat.imag());
        if (w > 1e-9) omegas.push_back(w * freq_scale);
    }
    std::sort(omegas.begin(), omegas.end());
    std::vector<double> unique;
    for (double w : omegas) {
        if (unique.empty() || std::abs(w - unique.back()) > 1e-6 * std::max(1.0, w))
            unique.push_back(w);
        if (static_cast<int>(unique.size()) >= count) break;
    }
    return unique;
}

}  // namespace pemb

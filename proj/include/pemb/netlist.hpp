#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pemb/errors.hpp"
#include "pemb/synthesis.hpp"

namespace pemb {

// Edge termination of the assembled line. Simply supported pins the
// deflection (its velocity analog is shorted to ground) and leaves the end
// moment free (the rotation port is left open). The other two conditions are
// declared but intentionally not realized.
enum class Boundary { SimplySupported, Free, Clamped };

inline const char* boundary_name(Boundary b) {
    switch (b) {
        case Boundary::SimplySupported: return "simply_supported";
        case Boundary::Free: return "free";
        case Boundary::Clamped: return "clamped";
    }
    return "?";
}

// Flat element-level circuit description. Node names are strings; "0" is
// ground. Transformers are ideal multi-winding constraint elements: with
// ratio matrix T (rows = secondary windings, columns = port windings), the
// winding currents obey i_sec = -T*i_port and the port voltages
// v_port = T^T * v_sec.
struct Netlist {
    struct Capacitor {
        std::string id, node_pos, node_neg;
        double farads;
    };
    struct Inductor {
        std::string id, node_pos, node_neg;
        double henries;
    };
    struct Transformer {
        std::string id;
        std::vector<std::pair<std::string, std::string>> primaries;    // port windings
        std::vector<std::pair<std::string, std::string>> secondaries;  // terminated windings
        Eigen::MatrixXd ratio;  // secondaries x primaries
    };

    std::string title;  // leading comment line, carried verbatim
    std::vector<Capacitor> capacitors;
    std::vector<Inductor> inductors;
    std::vector<Transformer> transformers;
    std::vector<std::pair<std::string, std::string>> shorts;  // .SHORT a b
    std::vector<std::string> opens;                           // .OPEN a

    // Assembly provenance (not exported beyond the title line).
    int n_modules = 0;
    std::vector<CircuitModule> modules;
};

namespace detail {

inline std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.11e", v);
    return buf;
}

// Appends one module's elements. Port nodes are (v_left, w_left, v_right,
// w_right); Q nodes are the series midpoints between the two transformer
// networks on each port path.
inline void append_module(Netlist& net, const CircuitModule& m, int index,
                          const std::array<std::string, 4>& port_nodes) {
    const std::string tag = "M" + std::to_string(index);
    const std::array<std::string, 4> q = {tag + ".Q1", tag + ".Q2", tag + ".Q3", tag + ".Q4"};
    const std::array<std::string, 2> sc = {tag + ".C1", tag + ".C2"};
    const std::array<std::string, 4> sl = {tag + ".L1", tag + ".L2", tag + ".L3", tag + ".L4"};

    Netlist::Transformer k0;
    k0.id = "K" + std::to_string(index) + "A";
    for (int p = 0; p < 4; ++p) k0.primaries.emplace_back(port_nodes[static_cast<std::size_t>(p)], q[static_cast<std::size_t>(p)]);
    for (const auto& s : sc) k0.secondaries.emplace_back(s, "0");
    k0.ratio = m.turns.T0;
    net.transformers.push_back(std::move(k0));

    Netlist::Transformer ki;
    ki.id = "K" + std::to_string(index) + "B";
    for (const auto& qq : q) ki.primaries.emplace_back(qq, "0");
    for (const auto& s : sl) ki.secondaries.emplace_back(s, "0");
    ki.ratio = m.turns.Tinf;
    net.transformers.push_back(std::move(ki));

    const auto cs = m.capacitors();
    for (int j = 0; j < 2; ++j)
        net.capacitors.push_back({"C" + std::to_string(index) + "_" + std::to_string(j + 1),
                                  sc[static_cast<std::size_t>(j)], "0", cs[static_cast<std::size_t>(j)]});
    const auto ls = m.inductors();
    for (int w = 0; w < 4; ++w)
        net.inductors.push_back({"L" + std::to_string(index) + "_" + std::to_string(w + 1),
                                 sl[static_cast<std::size_t>(w)], "0", ls[static_cast<std::size_t>(w)]});
}

}  // namespace detail

// Single free-standing module with open ports VJ0, WJ0, VJ1, WJ1; used for
// impedance checks and as the repeating cell of assemble_line.
inline Netlist module_netlist(const CircuitModule& m) {
    Netlist net;
    net.n_modules = 1;
    net.modules.push_back(m);
    net.title = "* beam-line analog: n=1 delta=" + detail::format_value(m.delta);
    detail::append_module(net, m, 1, {"VJ0", "WJ0", "VJ1", "WJ1"});
    return net;
}

// Cascade of n identical modules. Junction j carries the deflection-velocity
// node VJj and rotation node WJj shared by neighbours; module m spans
// junctions m-1 and m. Simply supported edges short the deflection nodes and
// leave the rotation nodes open.
inline Netlist assemble_line(int n, const CircuitModule& module,
                             std::pair<Boundary, Boundary> boundary) {
    if (n < 2) throw domain_error("assemble_line: need at least 2 modules");
    for (Boundary b : {boundary.first, boundary.second}) {
        if (b == Boundary::Free || b == Boundary::Clamped) {
            throw unimplemented_error(
                std::string("assemble_line: boundary '") + boundary_name(b) +
                "' is declared but not implemented; use simply_supported");
        }
    }

    Netlist net;
    net.n_modules = n;
    net.modules.assign(static_cast<std::size_t>(n), module);
    net.title = "* beam-line analog: n=" + std::to_string(n) +
                " delta=" + detail::format_value(module.delta);
    for (int m = 1; m <= n; ++m) {
        const std::string jl = std::to_string(m - 1), jr = std::to_string(m);
        detail::append_module(net, module, m,
                              {"VJ" + jl, "WJ" + jl, "VJ" + jr, "WJ" + jr});
    }
    // Left edge.
    net.shorts.emplace_back("VJ0", "0");
    net.opens.emplace_back("WJ0");
    // Right edge.
    net.shorts.emplace_back("VJ" + std::to_string(n), "0");
    net.opens.emplace_back("WJ" + std::to_string(n));
    return net;
}

// Deterministic line-oriented text form. One element per line:
//   C <id> <node+> <node-> <farads>
//   L <id> <node+> <node-> <henries>
//   K <id> P <np> <node+ node- ...> S <ns> <node+ node- ...> R <ns*np values row-major>
//   .SHORT <a> <b>      .OPEN <a>
// Values carry 12 significant digits; output is byte-identical across runs.
inline std::string export_netlist(const Netlist& net) {
    std::ostringstream os;
    if (!net.title.empty()) os << net.title << "\n";
    // Group per module in assembly order when counts line up (2 C, 4 L, 2 K
    // per module); otherwise dump grouped by kind. Both paths are
    // deterministic and the grouping survives a parse/re-export round trip.
    const std::size_t n_cells = net.transformers.size() / 2;
    const bool modular = n_cells > 0 && net.transformers.size() == 2 * n_cells &&
                         net.capacitors.size() == 2 * n_cells &&
                         net.inductors.size() == 4 * n_cells;
    auto emit_cap = [&os](const Netlist::Capacitor& c) {
        os << "C " << c.id << " " << c.node_pos << " " << c.node_neg << " "
           << detail::format_value(c.farads) << "\n";
    };
    auto emit_ind = [&os](const Netlist::Inductor& l) {
        os << "L " << l.id << " " << l.node_pos << " " << l.node_neg << " "
           << detail::format_value(l.henries) << "\n";
    };
    auto emit_xfo = [&os](const Netlist::Transformer& k) {
        os << "K " << k.id << " P " << k.primaries.size();
        for (const auto& [a, b] : k.primaries) os << " " << a << " " << b;
        os << " S " << k.secondaries.size();
        for (const auto& [a, b] : k.secondaries) os << " " << a << " " << b;
        os << " R";
        for (Eigen::Index r = 0; r < k.ratio.rows(); ++r)
            for (Eigen::Index c = 0; c < k.ratio.cols(); ++c)
                os << " " << detail::format_value(k.ratio(r, c));
        os << "\n";
    };
    if (modular) {
        for (std::size_t m = 0; m < n_cells; ++m) {
            emit_cap(net.capacitors[2 * m]);
            emit_cap(net.capacitors[2 * m + 1]);
            for (std::size_t w = 0; w < 4; ++w) emit_ind(net.inductors[4 * m + w]);
            emit_xfo(net.transformers[2 * m]);
            emit_xfo(net.transformers[2 * m + 1]);
        }
    } else {
        for (const auto& c : net.capacitors) emit_cap(c);
        for (const auto& l : net.inductors) emit_ind(l);
        for (const auto& k : net.transformers) emit_xfo(k);
    }
    for (const auto& [a, b] : net.shorts) os << ".SHORT " << a << " " << b << "\n";
    for (const auto& a : net.opens) os << ".OPEN " << a << "\n";
    return os.str();
}

// Parses the element-level content back. Provenance (modules list) is not
// reconstructed; the parsed form carries everything nodal analysis needs and
// re-exports byte-identically.
inline Netlist parse_netlist(const std::string& text) {
    Netlist net;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '*') {
            if (net.title.empty()) net.title = line;
            continue;
        }
        std::istringstream ls(line);
        std::string kind;
        ls >> kind;
        auto fail = [lineno, &line](const std::string& why) -> std::runtime_error {
            return std::runtime_error("netlist parse error at line " + std::to_string(lineno) +
                                      " (" + why + "): " + line);
        };
        if (kind == "C" || kind == "L") {
            std::string id, np, nn;
            double value;
            if (!(ls >> id >> np >> nn >> value)) throw fail("expected <id> <n+> <n-> <value>");
            if (kind == "C")
                net.capacitors.push_back({id, np, nn, value});
            else
                net.inductors.push_back({id, np, nn, value});
        } else if (kind == "K") {
            Netlist::Transformer k;
            std::string marker;
            std::size_t np = 0, ns = 0;
            if (!(ls >> k.id >> marker) || marker != "P") throw fail("expected P section");
            if (!(ls >> np)) throw fail("expected primary count");
            for (std::size_t i = 0; i < np; ++i) {
                std::string a, b;
                if (!(ls >> a >> b)) throw fail("expected primary node pair");
                k.primaries.emplace_back(a, b);
            }
            if (!(ls >> marker) || marker != "S") throw fail("expected S section");
            if (!(ls >> ns)) throw fail("expected secondary count");
            for (std::size_t i = 0; i < ns; ++i) {
                std::string a, b;
                if (!(ls >> a >> b)) throw fail("expected secondary node pair");
                k.secondaries.emplace_back(a, b);
            }
            if (!(ls >> marker) || marker != "R") throw fail("expected R section");
            k.ratio.resize(static_cast<Eigen::Index>(ns), static_cast<Eigen::Index>(np));
            for (std::size_t r = 0; r < ns; ++r)
                for (std::size_t c = 0; c < np; ++c)
                    if (!(ls >> k.ratio(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c))))
                        throw fail("expected ratio entry");
            net.transformers.push_back(std::move(k));
        } else if (kind == ".SHORT") {
            std::string a, b;
            if (!(ls >> a >> b)) throw fail("expected two nodes");
            net.shorts.emplace_back(a, b);
        } else if (kind == ".OPEN") {
            std::string a;
            if (!(ls >> a)) throw fail("expected one node");
            net.opens.push_back(a);
        } else {
            throw fail("unknown element kind '" + kind + "'");
        }
    }
    return net;
}

}  // namespace pemb

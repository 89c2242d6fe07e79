#pragma once

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "bratteli/symbol.hpp"

namespace bratteli {

/// Level dimensions and edge matrices of a finite diagram. The chain
/// always starts at the scalar root node; the initial column is the
/// first edge layer unless it is the trivial 1x1 unit (then it is
/// collapsed into the root). A symbol with no factors degenerates to
/// the root alone.
struct DiagramChain {
    std::vector<std::vector<Int>> levels;
    std::vector<EMatrix> edges;  // edges[k] maps level k to level k+1
};

inline DiagramChain diagram_chain(const FiniteSymbol& fs) {
    DiagramChain ch;
    ch.levels.push_back({Int(1)});
    if (fs.factors.empty()) return ch;

    const EMatrix& col = fs.initial_column;
    std::vector<Int> dims;
    bool trivial_col = col.rows() == 1 && col(0, 0) == 1;
    if (trivial_col) {
        dims = {Int(1)};
    } else {
        ch.edges.push_back(col);
        dims.clear();
        for (std::size_t i = 0; i < col.rows(); ++i) dims.push_back(col(i, 0));
        ch.levels.push_back(dims);
    }
    for (const EMatrix& f : fs.factors) {
        if (f.cols() != dims.size()) throw std::invalid_argument("diagram_chain: broken chain");
        std::vector<Int> next(f.rows(), Int(0));
        for (std::size_t i = 0; i < f.rows(); ++i)
            for (std::size_t j = 0; j < f.cols(); ++j) next[i] += f(i, j) * dims[j];
        ch.edges.push_back(f);
        ch.levels.push_back(next);
        dims = std::move(next);
    }
    return ch;
}

struct DotOptions {
    bool show_unit_labels = false;  // multiplicity 1 is omitted by default
};

/// DOT digraph, one rank per level, nodes labeled by summand
/// dimension, edges labeled by embedding multiplicity. Output is
/// byte-stable for identical inputs.
inline std::string to_dot(const FiniteSymbol& fs, const DotOptions& opt = {}) {
    DiagramChain ch = diagram_chain(fs);
    std::ostringstream os;
    os << "digraph bratteli {\n  rankdir=LR;\n  node [shape=box];\n";
    for (std::size_t k = 0; k < ch.levels.size(); ++k) {
        os << "  { rank=same;";
        for (std::size_t s = 0; s < ch.levels[k].size(); ++s)
            os << " L" << k << "S" << s << " [label=\"" << ch.levels[k][s].get_str() << "\"];";
        os << " }\n";
    }
    for (std::size_t k = 0; k < ch.edges.size(); ++k) {
        const EMatrix& e = ch.edges[k];
        for (std::size_t s = 0; s < e.cols(); ++s)
            for (std::size_t t = 0; t < e.rows(); ++t) {
                if (e(t, s) == 0) continue;
                os << "  L" << k << "S" << s << " -> L" << k + 1 << "S" << t;
                if (e(t, s) != 1 || opt.show_unit_labels)
                    os << " [label=\"" << e(t, s).get_str() << "\"]";
                os << ";\n";
            }
    }
    os << "}\n";
    return os.str();
}

/// Fixed-width table, one row per level: index, node dimensions, and
/// the edge matrix into the next level (blank on the last row).
inline std::string to_text(const FiniteSymbol& fs) {
    DiagramChain ch = diagram_chain(fs);
    std::vector<std::string> dims_col, edge_col;
    for (std::size_t k = 0; k < ch.levels.size(); ++k) {
        std::string d;
        for (std::size_t s = 0; s < ch.levels[k].size(); ++s)
            d += (s ? " " : "") + ch.levels[k][s].get_str();
        dims_col.push_back(d);
        edge_col.push_back(k < ch.edges.size() ? ch.edges[k].str() : "");
    }
    std::size_t dw = 0;
    for (const auto& d : dims_col) dw = std::max(dw, d.size());
    std::ostringstream os;
    for (std::size_t k = 0; k < dims_col.size(); ++k) {
        std::string d = dims_col[k];
        d.resize(dw, ' ');
        os << k << " | " << d << " |";
        if (!edge_col[k].empty()) os << " " << edge_col[k];
        os << "\n";
    }
    return os.str();
}

struct ParsedDiagram {
    std::vector<std::vector<Int>> levels;
    std::vector<EMatrix> edges;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

inline EMatrix parse_matrix_literal(const std::string& text) {
    std::vector<std::vector<Int>> rows;
    std::vector<Int> row;
    std::string num;
    int depth = 0;
    auto flush = [&] {
        if (!num.empty()) {
            row.emplace_back(num);
            num.clear();
        }
    };
    for (char c : text) {
        if (c == '[') {
            ++depth;
        } else if (c == ']') {
            flush();
            if (depth == 2) {
                rows.push_back(row);
                row.clear();
            }
            --depth;
        } else if (c == ',') {
            flush();
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            num += c;
        } else if (!std::isspace(static_cast<unsigned char>(c))) {
            throw std::invalid_argument("parse_matrix_literal: unexpected character");
        }
    }
    if (depth != 0) throw std::invalid_argument("parse_matrix_literal: unbalanced brackets");
    return EMatrix::from_rows(rows);
}

}  // namespace detail

/// Parse the to_text table back into levels and edges.
inline ParsedDiagram from_text(const std::string& text) {
    ParsedDiagram out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) {
        if (detail::trim(line).empty()) continue;
        std::size_t p1 = line.find('|');
        std::size_t p2 = line.find('|', p1 + 1);
        if (p1 == std::string::npos || p2 == std::string::npos)
            throw std::invalid_argument("from_text: malformed row");
        std::string dims = detail::trim(line.substr(p1 + 1, p2 - p1 - 1));
        std::string edge = detail::trim(line.substr(p2 + 1));
        std::vector<Int> lv;
        std::istringstream ds(dims);
        std::string tok;
        while (ds >> tok) lv.emplace_back(tok);
        if (lv.empty()) throw std::invalid_argument("from_text: empty level");
        out.levels.push_back(std::move(lv));
        if (!edge.empty()) out.edges.push_back(detail::parse_matrix_literal(edge));
    }
    if (out.edges.size() + 1 != out.levels.size())
        throw std::invalid_argument("from_text: every non-final row needs an edge matrix");
    return out;
}

}  // namespace bratteli

#ifndef CHROMAHOM_JSON_IO_HPP
#define CHROMAHOM_JSON_IO_HPP

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

#include "chromahom/chromatic_oracle.hpp"
#include "chromahom/homology.hpp"
#include "chromahom/polynomial.hpp"
#include "chromahom/st_complex.hpp"
#include "chromahom/tree_activity.hpp"

namespace chromahom {

using OrderedJson = nlohmann::ordered_json;

/// Parse a graph document:
///   { "name": str?, "vertices": [str,...], "edges": [[str,str],...],
///     "root": str?, "order": [int,...]? }
/// "order", when present, is a permutation of 1..n assigning labels to edge
/// list positions. Optional overrides replace the document's root/order.
inline OrderedGraph parse_graph(const std::string& text,
                                const std::optional<std::string>& root_override = std::nullopt,
                                const std::optional<std::vector<int>>& order_override = std::nullopt) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw GraphError(GraphError::Code::malformed_document,
                         std::string("malformed graph document: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("vertices") || !doc.contains("edges") ||
        !doc["vertices"].is_array() || !doc["edges"].is_array())
        throw GraphError(GraphError::Code::malformed_document,
                         "graph document must be an object with \"vertices\" and \"edges\" arrays");

    std::vector<std::string> vertices;
    for (const auto& v : doc["vertices"]) {
        if (!v.is_string())
            throw GraphError(GraphError::Code::malformed_document, "vertex labels must be strings");
        vertices.push_back(v.get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> edges;
    for (const auto& e : doc["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw GraphError(GraphError::Code::malformed_document,
                             "each edge must be a pair of vertex labels");
        edges.push_back({e[0].get<std::string>(), e[1].get<std::string>()});
    }
    std::optional<std::string> root = root_override;
    if (!root && doc.contains("root")) {
        if (!doc["root"].is_string())
            throw GraphError(GraphError::Code::malformed_document, "\"root\" must be a string");
        root = doc["root"].get<std::string>();
    }
    std::optional<std::vector<int>> order = order_override;
    if (!order && doc.contains("order")) {
        if (!doc["order"].is_array())
            throw GraphError(GraphError::Code::bad_order, "\"order\" must be an array of integers");
        std::vector<int> parsed;
        for (const auto& x : doc["order"]) {
            if (!x.is_number_integer())
                throw GraphError(GraphError::Code::bad_order, "\"order\" must be an array of integers");
            parsed.push_back(x.get<int>());
        }
        order = std::move(parsed);
    }
    std::string name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : "";
    return OrderedGraph::create(vertices, edges, root, order, name);
}

inline OrderedJson graph_to_json(const OrderedGraph& g) {
    OrderedJson out;
    if (!g.name().empty()) out["name"] = g.name();
    out["vertices"] = g.vertex_names();
    OrderedJson edges = OrderedJson::array();
    for (int e = 1; e <= g.edge_count(); ++e) {
        auto [u, v] = g.edge(e);
        edges.push_back({g.vertex_name(u), g.vertex_name(v)});
    }
    out["edges"] = std::move(edges);
    out["root"] = g.vertex_name(g.root());
    return out;
}

/// Homology JSON per the documented schema: groups sorted by (i, j), only
/// nontrivial entries.
inline OrderedJson homology_to_json(const HomologyTable& table, int m, const std::string& model) {
    OrderedJson out;
    out["m"] = m;
    out["model"] = model;
    OrderedJson groups = OrderedJson::array();
    for (const auto& [key, group] : table.groups) {
        OrderedJson entry;
        entry["i"] = key.first;
        entry["j"] = key.second;
        entry["free"] = group.free_rank;
        entry["torsion"] = group.torsion;
        groups.push_back(std::move(entry));
    }
    out["groups"] = std::move(groups);
    OrderedJson aggregated = OrderedJson::array();
    for (const auto& [i, group] : table.by_grading()) {
        OrderedJson entry;
        entry["i"] = i;
        entry["free"] = group.free_rank;
        entry["torsion"] = group.torsion;
        aggregated.push_back(std::move(entry));
    }
    out["by_grading"] = std::move(aggregated);
    return out;
}

inline OrderedJson polynomial_to_json(const IntPolynomial& p, const std::string& variable) {
    OrderedJson out;
    out["variable"] = variable;
    OrderedJson coeffs = OrderedJson::array();
    for (const BigInt& c : p.coefficients) {
        // Coefficients at desk scale fit in 64 bits; fall back to a string
        // if one ever does not.
        if (c >= std::numeric_limits<std::int64_t>::min() &&
            c <= std::numeric_limits<std::int64_t>::max())
            coeffs.push_back(static_cast<std::int64_t>(c));
        else
            coeffs.push_back(c.str());
    }
    out["coefficients"] = std::move(coeffs);
    return out;
}

/// Complex dump: per stripe the generator ids per grading and the
/// differentials as (row, col, value) triplets; row/col indices refer into
/// the adjacent generator lists.
inline OrderedJson complex_to_json(const BigradedComplex& c) {
    OrderedJson out;
    out["m"] = c.m;
    out["model"] = c.model;
    OrderedJson stripes = OrderedJson::array();
    for (const auto& [j, stripe] : c.stripes) {
        OrderedJson s;
        s["j"] = j;
        s["i_lo"] = stripe.i_lo;
        s["dims"] = stripe.dims;
        if (!stripe.labels.empty()) s["generators"] = stripe.labels;
        OrderedJson mats = OrderedJson::array();
        for (const SparseMat& d : stripe.matrices) {
            OrderedJson mat;
            mat["rows"] = d.rows;
            mat["cols"] = d.cols;
            OrderedJson entries = OrderedJson::array();
            for (int col = 0; col < d.cols; ++col)
                for (auto [row, value] : d.col_entries[static_cast<std::size_t>(col)])
                    entries.push_back({row, col, value});
            mat["entries"] = std::move(entries);
            mats.push_back(std::move(mat));
        }
        s["matrices"] = std::move(mats);
        stripes.push_back(std::move(s));
    }
    out["stripes"] = std::move(stripes);
    return out;
}

inline OrderedJson trees_to_json(const OrderedGraph& g) {
    STContext ctx(g);
    OrderedJson out = OrderedJson::array();
    for (const TreeRecord& t : ctx.trees()) {
        OrderedJson entry;
        entry["lex_rank"] = t.lex_rank;
        entry["edges"] = t.edges.labels();
        entry["activity_word"] = t.activity_word;
        entry["i"] = t.grading();
        entry["j_plus"] = t.ia_set.count();
        entry["j_minus"] = t.ia_set.count() + 1;
        out.push_back(std::move(entry));
    }
    return out;
}

/// Human-readable rendering of a homology table; same data as the JSON.
inline std::string homology_to_text(const HomologyTable& table, int m, const std::string& model) {
    auto group_str = [](const HomologyGroup& g) {
        std::string out;
        if (g.free_rank > 0) {
            out = "Z";
            if (g.free_rank > 1) out += "^" + std::to_string(g.free_rank);
        }
        for (long long d : g.torsion) out += (out.empty() ? "Z_" : " + Z_") + std::to_string(d);
        return out.empty() ? std::string("0") : out;
    };
    std::string out = "homology (model=" + model + ", m=" + std::to_string(m) + ")\n";
    for (const auto& [key, group] : table.groups)
        out += "  H[i=" + std::to_string(key.first) + ",j=" + std::to_string(key.second) +
               "] = " + group_str(group) + "\n";
    out += "aggregated by homological grading\n";
    for (const auto& [i, group] : table.by_grading())
        out += "  H[" + std::to_string(i) + "] = " + group_str(group) + "\n";
    return out;
}

}  // namespace chromahom

#endif  // CHROMAHOM_JSON_IO_HPP

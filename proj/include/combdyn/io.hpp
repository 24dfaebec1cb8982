#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "combdyn/matrix.hpp"
#include "combdyn/permutation.hpp"
#include "combdyn/pwl.hpp"
#include "combdyn/rational.hpp"
#include "combdyn/trees.hpp"
#include "combdyn/walks.hpp"

namespace combdyn {

// Insertion-ordered JSON keeps every report byte-identical across runs.
using Json = nlohmann::ordered_json;

inline Json int_to_json(const Int& z) {
    if (z.fits_slong_p()) return Json(z.get_si());
    return Json(z.get_str());  // beyond 64 bits: decimal string
}

inline Json permutation_to_json(const Permutation& p) {
    return Json{{"n", p.n()}, {"image", p.image()}};
}

inline Permutation permutation_from_json(const Json& j) {
    if (!j.contains("image")) throw domain_error("permutation JSON needs an \"image\" array");
    std::vector<int> img = j.at("image").get<std::vector<int>>();
    if (j.contains("n") && j.at("n").get<int>() != static_cast<int>(img.size()))
        throw domain_error("permutation JSON: n does not match image length");
    return Permutation::from_image(std::move(img));
}

inline Json matrix_to_json(const SignedMatrix& m) {
    Json rows = Json::array();
    for (int i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < m.dim(); ++j) row.push_back(int_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return Json{{"d", m.dim()}, {"entries", std::move(rows)}};
}

inline Json walk_to_json(const Walk& w) {
    return Json{{"vertices", w.vertices}, {"sign", w.sign}, {"length", w.length()}};
}

inline Json record_to_json(const PeriodicPointRecord& rec) {
    Json j{{"point", rat_to_string(rec.point)}, {"least_period", rec.least_period}};
    if (rec.orientation == 0)
        j["orientation"] = "undefined";
    else
        j["orientation"] = rec.orientation;
    j["itinerary"] = rec.itinerary;
    return j;
}

inline Json segment_to_json(const PeriodicSegment& seg) {
    return Json{{"segment", {rat_to_string(seg.lo), rat_to_string(seg.hi)}}, {"period", seg.period}};
}

inline TreeVertexMap tree_vertex_map_from_json(const Json& j) {
    if (!j.contains("v") || !j.contains("edges") || !j.contains("perm"))
        throw domain_error("tree JSON needs \"v\", \"edges\" and \"perm\"");
    const int v = j.at("v").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const Json& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw domain_error("tree edge must be a pair");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    return TreeVertexMap(Tree(v, std::move(edges)),
                         Permutation::from_image(j.at("perm").get<std::vector<int>>()));
}

inline GraphVertexMap graph_vertex_map_from_json(const Json& j) {
    if (!j.contains("v") || !j.contains("edges") || !j.contains("perm") || !j.contains("routes"))
        throw domain_error("graph JSON needs \"v\", \"edges\", \"perm\" and \"routes\"");
    const int v = j.at("v").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (const Json& e : j.at("edges")) {
        if (!e.is_array() || e.size() != 2) throw domain_error("graph edge must be a pair");
        edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    std::vector<std::vector<int>> routes;
    for (const Json& r : j.at("routes")) routes.push_back(r.get<std::vector<int>>());
    return GraphVertexMap(v, std::move(edges),
                          Permutation::from_image(j.at("perm").get<std::vector<int>>()),
                          std::move(routes));
}

}  // namespace combdyn

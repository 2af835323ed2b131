#include "loosetile/json_io.hpp"

namespace loosetile {

Json copy_to_json(const CycleCopy& c) {
    return Json{{"links", c.links}, {"inners", c.inners}};
}

CycleCopy copy_from_json(const Json& j) {
    CycleCopy c;
    auto links = j.at("links").get<std::vector<Vertex>>();
    auto inners = j.at("inners").get<std::vector<Vertex>>();
    if (links.size() != 3 || inners.size() != 3)
        throw std::invalid_argument("cycle copy needs 3 links and 3 inners");
    std::copy(links.begin(), links.end(), c.links.begin());
    std::copy(inners.begin(), inners.end(), c.inners.begin());
    return c;
}

Json tiling_to_json(const Tiling& t, int n) {
    Json copies = Json::array();
    for (const auto& c : t.copies) copies.push_back(copy_to_json(c));
    return Json{{"n", n},
                {"perfect", static_cast<int>(t.covered.size()) == n},
                {"copies", std::move(copies)}};
}

Tiling tiling_from_json(const Json& j) {
    const Json& src = j.contains("copies") ? j : j.at("tiling");
    std::vector<CycleCopy> copies;
    for (const auto& jc : src.at("copies")) copies.push_back(copy_from_json(jc));
    return Tiling::from_copies(std::move(copies));
}

namespace {

Json vec_json(const IndexVector& v) { return Json(v.coords); }

}  // namespace

Json report_to_json(const RobustReport& r) {
    Json counts = Json::array();
    for (const auto& [vec, cnt] : r.counts)
        counts.push_back(Json{{"vec", vec_json(vec)}, {"count", cnt}});
    Json out{{"arity", r.arity},
             {"threshold", r.threshold},
             {"exhaustive", r.exhaustive},
             {"counts", std::move(counts)}};
    if (r.sampling) {
        Json sv = Json::array();
        for (const auto& [vec, hits] : r.sampling->hits) {
            auto wilson = r.sampling->wilson.at(vec);
            sv.push_back(Json{{"vec", vec_json(vec)},
                              {"hits", hits},
                              {"variance", r.sampling->variance.at(vec)},
                              {"wilson_low", wilson.first},
                              {"wilson_high", wilson.second}});
        }
        out["sampling"] = Json{{"samples", r.sampling->samples}, {"vectors", std::move(sv)}};
    }
    return out;
}

Json almost_to_json(const AlmostResult& r) {
    switch (r.status) {
        case AlmostStatus::Matching: {
            Json edges = Json::array();
            for (const auto& e : r.matching.edges) edges.push_back(e);
            return Json{{"result", "matching"},
                        {"size", r.matching.edges.size()},
                        {"edges", std::move(edges)},
                        {"note", r.note}};
        }
        case AlmostStatus::Certificate:
            return Json{{"result", "certificate"},
                        {"b", r.certificate.b},
                        {"e_b", r.certificate.eb},
                        {"bound", r.certificate.bound},
                        {"note", r.note}};
        default:
            return Json{{"result", "indeterminate"}, {"iterations", r.iterations}, {"note", r.note}};
    }
}

Json family_to_json(const AbsorbingFamily& fam, const FamilyStats& stats, int n) {
    Json msets = Json::array();
    for (const auto& m : fam.msets) {
        Json classes = Json::array();
        for (const auto& c : m.classes) classes.push_back(vec_json(c));
        msets.push_back(Json{{"vertices", m.vertices},
                             {"classes", std::move(classes)},
                             {"factor", tiling_to_json(m.factor, n)}});
    }
    Json exceptional = Json::array();
    for (const auto& c : fam.exceptional) exceptional.push_back(copy_to_json(c));
    Json capacity = Json::array();
    for (const auto& [vec, cnt] : stats.capacity)
        capacity.push_back(Json{{"vec", vec_json(vec)}, {"count", cnt}});
    return Json{{"m", fam.cfg.m()},
                {"t", fam.cfg.t},
                {"gamma1", fam.cfg.gamma1},
                {"alpha", fam.cfg.alpha()},
                {"msets", std::move(msets)},
                {"exceptional", std::move(exceptional)},
                {"w", fam.w},
                {"w_factor", tiling_to_json(fam.w_factor, n)},
                {"stats", Json{{"sampled", stats.sampled},
                               {"intersecting_pairs", stats.intersecting_pairs},
                               {"dropped_intersecting", stats.dropped_intersecting},
                               {"dropped_not_absorbing", stats.dropped_not_absorbing},
                               {"capacity", std::move(capacity)},
                               {"retries", stats.retries}}}};
}

Json classification_to_json(const Classification& c) {
    return Json{{"aprime", c.aprime},
                {"bprime", c.bprime},
                {"v0", c.v0},
                {"eps1", c.eps1},
                {"q1", c.q1},
                {"q", c.q},
                {"diagnostics", Json{{"a_minus_aprime", c.a_minus_aprime},
                                     {"b_minus_bprime", c.b_minus_bprime},
                                     {"aprime_minus_a", c.aprime_minus_a},
                                     {"bprime_minus_b", c.bprime_minus_b}}}};
}

Json trace_to_json(const PipelineTrace& t, int n) {
    Json out{{"eps", t.eps},
             {"eps1", t.eps1},
             {"eps1_clamped", t.eps1_clamped},
             {"rho", t.rho},
             {"rho_clamped", t.rho_clamped},
             {"b", t.b},
             {"e_b", t.eb},
             {"classification", classification_to_json(t.cls)}};
    if (t.cover.ok || !t.cover.failure.empty()) {
        out["cover"] = Json{{"ok", t.cover.ok},
                            {"q1_tiling", tiling_to_json(t.cover.q1_tiling, n)},
                            {"q2_tiling", tiling_to_json(t.cover.q2_tiling, n)},
                            {"r_tiling", tiling_to_json(t.cover.r_tiling, n)},
                            {"a2", t.cover.a2},
                            {"b2", t.cover.b2},
                            {"s", t.cover.s},
                            {"q2", t.cover.q2},
                            {"failure", t.cover.failure}};
    }
    if (t.ideal.attempts > 0) {
        out["ideal"] = Json{{"ok", t.ideal.ok},
                            {"attempts", t.ideal.attempts},
                            {"failure_stages", t.ideal.failure_stages}};
        if (t.ideal.ok) out["ideal"]["tiling"] = tiling_to_json(t.ideal.tiling, n);
    }
    out["failure_stage"] = t.failure_stage;
    out["failure_detail"] = t.failure_detail;
    return out;
}

Json instance_sidecar(const LabeledInstance& inst) {
    Json sets = Json::object();
    for (const auto& [name, verts] : inst.designated) sets[name] = verts;
    Json params = Json::object();
    for (const auto& [key, val] : inst.params) params[key] = val;
    return Json{{"n", inst.h.vertex_count()},
                {"edges", inst.h.edge_count()},
                {"designated_sets", std::move(sets)},
                {"params", std::move(params)}};
}

}  // namespace loosetile

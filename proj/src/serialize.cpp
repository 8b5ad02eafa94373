#include "ghost/serialize.hpp"

namespace ghost {

namespace {

constexpr const char* kFormat = "ghost-tower/1";

Json elem_json(const Elem& e) {
    if (e.fits_slong_p()) return e.get_si();
    return e.get_str();
}

Elem elem_from(const Ring& R, const Json& j) {
    Elem e;
    if (j.is_number_integer())
        e = Elem(j.get<long>());
    else if (j.is_string()) {
        if (e.set_str(j.get<std::string>(), 10) != 0) throw SerializeError("bad integer literal: " + j.get<std::string>());
    } else
        throw SerializeError("ring element must be an integer");
    if (R.reduce(e) != e) throw SerializeError("non-canonical ring element " + e.get_str() + " for " + R.to_string());
    return e;
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw SerializeError(std::string("missing field '") + key + "'");
    return j.at(key);
}

Json degree_maps(const Ring& R, const DegreeMaps& h) {
    Json a = Json::array();
    for (const auto& [n, m] : h) a.push_back({{"degree", n}, {"matrix", to_json(R, m)}});
    return a;
}

DegreeMaps degree_maps_from(const Ring& R, const Json& j) {
    DegreeMaps h;
    if (!j.is_array()) throw SerializeError("degree-indexed maps must be an array");
    for (const auto& e : j) h[field(e, "degree").get<int>()] = matrix_from_json(R, field(e, "matrix"));
    return h;
}

Json model_json(const Ring& R, const FreeModel& m) { return {{"pi", to_json(R, m.pi)}, {"floor", m.floor}}; }
FreeModel model_from(const Ring& R, const Json& j) { return {map_from_json(R, field(j, "pi")), field(j, "floor").get<int>()}; }

Json tr_body(const Ring& R, const TrWitness& w) {
    Json j{{"complex", to_json(R, w.X)}, {"r", elem_json(w.r)}};
    j["model"] = w.model ? model_json(R, *w.model) : Json(nullptr);
    j["homotopy"] = degree_maps(R, w.homotopy);
    return j;
}

TrWitness tr_body_from(const Ring& R, const Json& j) {
    TrWitness w{complex_from_json(R, field(j, "complex")), elem_from(R, field(j, "r")), std::nullopt, {}};
    if (!field(j, "model").is_null()) w.model = model_from(R, j.at("model"));
    w.homotopy = degree_maps_from(R, field(j, "homotopy"));
    return w;
}

Json triangle_json(const Ring& R, const TriangleCert& t) {
    return {{"f", to_json(R, t.f)},
            {"cofiber", to_json(R, t.C)},
            {"alpha", to_json(R, t.alpha)},
            {"beta", to_json(R, t.beta)},
            {"htpy_cone", degree_maps(R, t.htpy_cone)},
            {"htpy_cofiber", degree_maps(R, t.htpy_c)}};
}

TriangleCert triangle_from(const Ring& R, const Json& j) {
    return {map_from_json(R, field(j, "f")),         complex_from_json(R, field(j, "cofiber")),
            map_from_json(R, field(j, "alpha")),     map_from_json(R, field(j, "beta")),
            degree_maps_from(R, field(j, "htpy_cone")), degree_maps_from(R, field(j, "htpy_cofiber"))};
}

Json label_json(const Label& l) {
    if (l.kind == Label::Kind::T) return {{"kind", "T"}, {"r", elem_json(l.r)}};
    return {{"kind", "ADD"}};
}

Label label_from(const Ring& R, const Json& j) {
    const std::string k = field(j, "kind").get<std::string>();
    if (k == "T") return Label::t(elem_from(R, field(j, "r")));
    if (k == "ADD") return Label::add();
    throw SerializeError("unknown layer label '" + k + "'");
}

Ring ring_of(const Json& j) {
    try {
        return Ring::parse(field(j, "ring").get<std::string>());
    } catch (const RingError& e) {
        throw SerializeError(e.what());
    }
}

void expect_kind(const Json& j, const char* kind) {
    if (certificate_kind(j) != kind) throw SerializeError(std::string("expected a ") + kind + " certificate");
}

Json header(const Ring& R, const char* kind) { return {{"format", kFormat}, {"kind", kind}, {"ring", R.to_string()}}; }

}  // namespace

Json to_json(const Ring&, const Matrix& M) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < M.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < M.cols(); ++k) row.push_back(elem_json(M(i, k)));
        rows.push_back(row);
    }
    return {{"shape", {M.rows(), M.cols()}}, {"entries", rows}};
}

Matrix matrix_from_json(const Ring& R, const Json& j) {
    const Json& shape = field(j, "shape");
    if (!shape.is_array() || shape.size() != 2) throw SerializeError("matrix shape must be [rows, cols]");
    const auto r = shape[0].get<std::size_t>(), c = shape[1].get<std::size_t>();
    const Json& e = field(j, "entries");
    if (!e.is_array() || e.size() != r) throw SerializeError("matrix row count differs from its shape");
    Matrix M(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (!e[i].is_array() || e[i].size() != c) throw SerializeError("matrix row length differs from its shape");
        for (std::size_t k = 0; k < c; ++k) M(i, k) = elem_from(R, e[i][k]);
    }
    return M;
}

Json to_json(const Ring& R, const Complex& X) {
    Json terms = Json::array(), diffs = Json::array();
    for (const auto& [n, M] : X.terms()) terms.push_back({{"degree", n}, {"gens", M.gens}, {"relations", to_json(R, M.rels)}});
    for (const auto& [n, d] : X.diffs()) diffs.push_back({{"degree", n}, {"matrix", to_json(R, d)}});
    return {{"terms", terms}, {"differentials", diffs}};
}

Complex complex_from_json(const Ring& R, const Json& j) {
    Complex X(R);
    for (const auto& t : field(j, "terms")) {
        const auto g = field(t, "gens").get<std::size_t>();
        Matrix rel = matrix_from_json(R, field(t, "relations"));
        if (rel.cols() != g) throw SerializeError("relation width differs from the generator count");
        X.set_term(field(t, "degree").get<int>(), FpModule(R, g, rel));
    }
    for (const auto& d : field(j, "differentials")) X.set_diff(field(d, "degree").get<int>(), matrix_from_json(R, field(d, "matrix")));
    return X;
}

Json to_json(const Ring& R, const ChainMap& f) {
    return {{"source", to_json(R, f.source)}, {"target", to_json(R, f.target)}, {"components", degree_maps(R, f.comps)}};
}

ChainMap map_from_json(const Ring& R, const Json& j) {
    return {complex_from_json(R, field(j, "source")), complex_from_json(R, field(j, "target")),
            degree_maps_from(R, field(j, "components"))};
}

Json to_json(const TowerCertificate& c) {
    const Ring& R = c.target.ring();
    Json j = header(R, "tower");
    j["target"] = to_json(R, c.target);
    Json expr = Json::array();
    for (const auto& l : c.expression) expr.push_back(label_json(l));
    j["expression"] = expr;
    Json layers = Json::array();
    for (const auto& L : c.layers) {
        Json lj{{"triangle", triangle_json(R, L.tri)}, {"label", label_json(L.label)}};
        lj["tr"] = L.tr ? tr_body(R, *L.tr) : Json(nullptr);
        if (L.add) {
            Json s = Json::array();
            for (const auto& [k, a] : L.add->summands) s.push_back({k, a});
            lj["add"] = {{"complex", to_json(R, L.add->P)},
                         {"summands", s},
                         {"i", to_json(R, L.add->i)},
                         {"p", to_json(R, L.add->p)},
                         {"homotopy", degree_maps(R, L.add->homotopy)}};
        } else {
            lj["add"] = nullptr;
        }
        layers.push_back(lj);
    }
    j["layers"] = layers;
    j["retract"] = {{"model", model_json(R, c.retract.model)},
                    {"i", to_json(R, c.retract.i)},
                    {"p", to_json(R, c.retract.p)},
                    {"homotopy", degree_maps(R, c.retract.homotopy)}};
    j["provenance"] = c.provenance;
    return j;
}

TowerCertificate tower_from_json(const Json& j) {
    expect_kind(j, "tower");
    const Ring R = ring_of(j);
    TowerCertificate c;
    c.target = complex_from_json(R, field(j, "target"));
    for (const auto& l : field(j, "expression")) c.expression.push_back(label_from(R, l));
    for (const auto& lj : field(j, "layers")) {
        TowerLayer L{triangle_from(R, field(lj, "triangle")), label_from(R, field(lj, "label")), std::nullopt, std::nullopt};
        if (!field(lj, "tr").is_null()) L.tr = tr_body_from(R, lj.at("tr"));
        if (!field(lj, "add").is_null()) {
            const Json& a = lj.at("add");
            AddWitness w;
            w.P = complex_from_json(R, field(a, "complex"));
            for (const auto& s : field(a, "summands")) w.summands.push_back({s.at(0).get<int>(), s.at(1).get<std::size_t>()});
            w.i = map_from_json(R, field(a, "i"));
            w.p = map_from_json(R, field(a, "p"));
            w.homotopy = degree_maps_from(R, field(a, "homotopy"));
            L.add = w;
        }
        c.layers.push_back(L);
    }
    const Json& r = field(j, "retract");
    c.retract = Retract{model_from(R, field(r, "model")), map_from_json(R, field(r, "i")), map_from_json(R, field(r, "p")),
                        degree_maps_from(R, field(r, "homotopy"))};
    c.provenance = field(j, "provenance").get<std::string>();
    return c;
}

Json to_json(const GhostCertificate& g) {
    const Ring& R = g.map.source.ring();
    Json j = header(R, "ghost");
    j["map"] = to_json(R, g.map);
    j["cycles"] = degree_maps(R, g.cycles);
    j["witnesses"] = degree_maps(R, g.witnesses);
    return j;
}

GhostCertificate ghost_from_json(const Json& j) {
    expect_kind(j, "ghost");
    const Ring R = ring_of(j);
    return {map_from_json(R, field(j, "map")), degree_maps_from(R, field(j, "cycles")), degree_maps_from(R, field(j, "witnesses"))};
}

Json to_json(const TrWitness& w) {
    const Ring& R = w.X.ring();
    Json j = header(R, "tr");
    j.update(tr_body(R, w));
    return j;
}

TrWitness tr_from_json(const Json& j) {
    expect_kind(j, "tr");
    return tr_body_from(ring_of(j), j);
}

Json to_json(const DimBoundCert& d) {
    return {{"format", kFormat},  {"kind", "dim-bound"},        {"generator", d.generator},
            {"level", d.level},   {"assumption", d.assumption}, {"provenance", d.provenance}};
}

DimBoundCert dim_bound_from_json(const Json& j) {
    expect_kind(j, "dim-bound");
    return {field(j, "generator").get<std::string>(), field(j, "level").get<int>(), field(j, "assumption").get<bool>(),
            field(j, "provenance").get<std::string>()};
}

std::string certificate_kind(const Json& j) {
    if (!j.is_object()) throw SerializeError("certificate must be a JSON object");
    if (field(j, "format").get<std::string>() != kFormat) throw SerializeError("unsupported certificate format");
    return field(j, "kind").get<std::string>();
}

}  // namespace ghost

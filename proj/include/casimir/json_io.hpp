#pragma once

// JSON forms of the public result types. Big integers are decimal strings,
// rationals are "p/q" strings, weights are integer arrays.

#include <nlohmann/json.hpp>

#include "casimir/cartan.hpp"
#include "casimir/families.hpp"
#include "casimir/polyfit.hpp"
#include "casimir/reps.hpp"
#include "casimir/rootdata.hpp"
#include "casimir/tensor.hpp"

namespace casimir {

using Json = nlohmann::ordered_json;

inline Json weight_json(const Weight& w) {
    Json a = Json::array();
    for (int x : w) a.push_back(x);
    return a;
}

inline Json irrep_json(const IrrepInfo& info) {
    return {{"hw", weight_json(info.highest_weight)},
            {"dim", info.dim.str()},
            {"casimir", to_fraction_string(info.casimir)}};
}

inline Json decomposition_json(const Decomposition& dec) {
    Json parts = Json::array();
    for (auto& p : dec.parts)
        parts.push_back({{"hw", weight_json(p.highest_weight)},
                         {"mult", p.multiplicity.str()},
                         {"dim", p.dim.str()},
                         {"casimir", to_fraction_string(p.casimir)}});
    return {{"parts", parts}, {"complete", dec.complete}};
}

inline Json poly_json(const RatPoly& p) {
    Json a = Json::array();
    for (auto& c : p.coeffs()) a.push_back(to_fraction_string(c));
    return a;
}

inline RatPoly poly_from_json(const Json& j) {
    if (!j.is_array()) throw ValidationError("polynomial must be a JSON array of \"p/q\" strings");
    std::vector<Rational> c;
    for (auto& x : j) {
        if (x.is_string())
            c.push_back(parse_rational(x.get<std::string>()));
        else if (x.is_number_integer())
            c.push_back(Rational(x.get<long long>()));
        else
            throw ValidationError("polynomial coefficient must be a string or integer");
    }
    return RatPoly(std::move(c));
}

inline Json family_json(const FamilyAssignment& fa) {
    Json cons = Json::array();
    for (auto& c : fa.constituents)
        cons.push_back({{"hw", weight_json(c.highest_weight)}, {"dim", c.dim.str()}, {"sign", c.sign}});
    Json orbits = Json::array();
    for (auto& o : fa.orbits) orbits.push_back(o);
    Json out = {{"algebra", fa.algebra},
                {"j", fa.j},
                {"path", to_string(fa.path)},
                {"dropped_out", fa.dropped_out},
                {"constituents", cons},
                {"orbits", orbits},
                {"signed_sum", fa.signed_sum.str()}};
    if (fa.target) {
        out["target"] = fa.target->str();
        out["matched"] = fa.matched;
        out["zeros_required"] = fa.zeros_required;
    }
    if (!fa.note.empty()) out["note"] = fa.note;
    return out;
}

inline Json roots_json(const RootDatum& d) {
    Json roots = Json::array();
    for (std::size_t k = 0; k < d.positive_roots().size(); ++k) {
        const auto& r = d.positive_roots()[k];
        Json coords = Json::array();
        for (int c : r.coords) coords.push_back(c);
        roots.push_back({{"index", k},
                         {"coords", coords},
                         {"height", r.height},
                         {"block", r.block},
                         {"labels", weight_json(r.labels)}});
    }
    Json arrows = Json::array();
    for (auto& [a, b] : d.poset_arrows()) arrows.push_back({a, b});
    Json hv = Json::array();
    for (int h : d.dual_coxeter()) hv.push_back(h);
    return {{"algebra", d.name()},
            {"rank", d.rank()},
            {"dimension", d.dimension()},
            {"dual_coxeter", hv},
            {"roots", roots},
            {"arrows", arrows}};
}

// {name, matrix: [[int]]}; blocks are detected from the zero pattern.
inline CartanSpec cartan_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("matrix")) throw ValidationError("Cartan spec needs a \"matrix\" field");
    std::string name = j.value("name", std::string("custom"));
    IntMatrix m;
    try {
        m = j.at("matrix").get<IntMatrix>();
    } catch (const nlohmann::json::exception&) {
        throw ValidationError(name + ": matrix must be a list of integer rows");
    }
    return make_cartan_spec(std::move(name), std::move(m));
}

inline Json cartan_json(const CartanSpec& s) {
    Json blocks = Json::array();
    for (auto& b : s.blocks) blocks.push_back({b.begin, b.end});
    return {{"name", s.name}, {"matrix", s.matrix}, {"blocks", blocks}};
}

}  // namespace casimir

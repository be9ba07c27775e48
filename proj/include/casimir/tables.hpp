#pragma once

// Fixture tables and their recomputation. Each fixture file is
// {table: id, rows: [...]}; verify_tables recomputes every cell and lists
// cell-level differences.

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <future>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "casimir/families.hpp"
#include "casimir/json_io.hpp"
#include "casimir/registry.hpp"
#include "casimir/tensor.hpp"

namespace casimir {

struct Discrepancy {
    std::string table;
    std::string row;   // e.g. "E8 j=9"
    std::string cell;  // e.g. "irreps", "sum"
    std::string expected;
    std::string actual;
};

// A printed cell that disagrees with the computation in a way already
// recorded in the fixture.
struct KnownErratum {
    std::string table;
    std::string row;
    std::string printed;
    std::string computed;
    std::string reason;
};

struct VerifyReport {
    std::vector<std::string> tables;
    std::size_t rows_checked = 0;
    std::vector<Discrepancy> discrepancies;
    std::vector<KnownErratum> errata;
    bool ok() const noexcept { return discrepancies.empty(); }
};

struct VerifyOptions {
    unsigned jobs = 1;
    ResourceLimits limits;
    bool decompose_squares = true;  // full ad x ad decomposition for tab_order2
};

// ---------------------------------------------------------------------------
// fixture files

inline Json load_json_file(const std::filesystem::path& p) {
    std::ifstream in(p);
    if (!in) throw ValidationError("cannot open " + p.string());
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(p.string() + ": " + e.what());
    }
}

inline std::vector<std::string> fixture_ids(const std::filesystem::path& dir) {
    std::vector<std::string> ids;
    if (!std::filesystem::is_directory(dir)) throw ValidationError("fixture directory " + dir.string() + " not found");
    for (auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".json") ids.push_back(e.path().stem().string());
    std::sort(ids.begin(), ids.end());
    return ids;
}

inline Json load_fixture(const std::filesystem::path& dir, const std::string& id) {
    Json doc = load_json_file(dir / (id + ".json"));
    if (!doc.contains("table") || !doc.contains("rows") || doc["table"] != id)
        throw ValidationError("fixture " + id + " lacks a matching \"table\" id or \"rows\"");
    return doc;
}

// ---------------------------------------------------------------------------
// row checks

namespace detail {

struct RowResult {
    std::vector<Discrepancy> diffs;
    std::vector<KnownErratum> errata;
};

inline std::string weight_list(const std::vector<Weight>& ws) {
    std::string s;
    for (auto& w : ws) s += (s.empty() ? "" : " ") + w.str();
    return s.empty() ? "none" : s;
}

inline std::vector<Weight> parse_weights(const Json& arr, std::size_t rank) {
    std::vector<Weight> out;
    for (auto& x : arr) out.push_back(parse_weight(x.get<std::string>(), rank));
    std::sort(out.begin(), out.end());
    return out;
}

inline RowResult check_family_row(const std::string& table, const Json& row) {
    RowResult res;
    const std::string alg = row.at("algebra");
    const int j = row.at("j");
    const std::string label = alg + " j=" + std::to_string(j);
    auto diff = [&](std::string cell, std::string exp, std::string act) {
        res.diffs.push_back({table, label, std::move(cell), std::move(exp), std::move(act)});
    };
    DatumPtr d = datum_for(alg);
    FamilyAssignment fa = resolve_family(*d, j);

    std::vector<Weight> printed = parse_weights(row.at("irreps"), d->rank());
    std::vector<Weight> expected = printed;
    std::string reason;
    if (row.contains("erratum")) {
        expected = parse_weights(row["erratum"].at("irreps"), d->rank());
        reason = row["erratum"].value("reason", "");
    }
    std::vector<Weight> nonzero, zero;
    std::vector<BigInt> signed_dims;
    for (auto& c : fa.constituents) {
        (c.sign == 0 ? zero : nonzero).push_back(c.highest_weight);
        if (c.sign != 0) signed_dims.push_back(c.sign * c.dim);
        if (casimir::casimir(*d, c.highest_weight) != j)
            diff("casimir " + c.highest_weight.str(), std::to_string(j),
                 to_display_string(casimir::casimir(*d, c.highest_weight)));
    }
    std::sort(nonzero.begin(), nonzero.end());
    std::sort(zero.begin(), zero.end());

    if (nonzero != expected) diff("irreps", weight_list(expected), weight_list(nonzero));
    if (row.contains("erratum") && nonzero == expected)
        res.errata.push_back({table, label, weight_list(printed), weight_list(nonzero), reason});

    std::vector<Weight> zero_expected;
    if (row.contains("zero")) zero_expected = parse_weights(row["zero"], d->rank());
    if (zero != zero_expected) diff("sign-0 irreps", weight_list(zero_expected), weight_list(zero));

    const BigInt sum = parse_bigint(row.at("sum").get<std::string>());
    if (fa.signed_sum != sum) diff("signed sum", sum.str(), fa.signed_sum.str());
    if (auto dj = expected_dimension(j, BigInt(d->dimension())); dj && *dj != sum)
        diff("d_" + std::to_string(j) + "(" + std::to_string(d->dimension()) + ")", sum.str(), dj->str());
    if (fa.target && !fa.matched) diff("sign assignment", sum.str(), "no sign vector reaches the target");

    std::vector<BigInt> term_dims;
    for (auto& t : row.at("terms")) {
        const int sign = t.at("sign");
        const int count = t.at("count");
        const BigInt dim = parse_bigint(t.at("dim").get<std::string>());
        for (int k = 0; k < count; ++k) term_dims.push_back(sign * dim);
        if (count > 1) {
            bool found = false;
            for (auto& orb : fa.orbits) {
                if (orb.size() != static_cast<std::size_t>(count)) continue;
                bool all = true;
                for (auto k : orb)
                    if (fa.constituents[k].dim != dim || fa.constituents[k].sign != sign) all = false;
                found = found || all;
            }
            if (!found)
                diff("orbit grouping", std::to_string(count) + "·" + dim.str() + " (sign " + std::to_string(sign) + ")",
                     "no matching automorphism orbit");
        }
    }
    std::sort(term_dims.begin(), term_dims.end());
    std::sort(signed_dims.begin(), signed_dims.end());
    if (term_dims != signed_dims) {
        auto join = [](const std::vector<BigInt>& v) {
            std::string s;
            for (auto& x : v) s += (s.empty() ? "" : " ") + x.str();
            return s.empty() ? std::string("none") : s;
        };
        diff("signed dimensions", join(term_dims), join(signed_dims));
    }
    return res;
}

inline RowResult check_square_row(const std::string& table, const Json& row, const VerifyOptions& opt) {
    RowResult res;
    const std::string alg = row.at("algebra");
    auto diff = [&](std::string cell, std::string exp, std::string act) {
        res.diffs.push_back({table, alg, std::move(cell), std::move(exp), std::move(act)});
    };
    DatumPtr d = datum_for(alg);
    const std::size_t n = d->rank();
    const Weight theta = d->positive_roots()[d->highest_root(0)].labels;
    const Rational hdual = d->dual_coxeter()[0];

    auto cell = [&](const char* name) -> std::optional<IrrepInfo> {
        const Json& c = row.at(name);
        const BigInt dim = parse_bigint(c.at("dim").get<std::string>());
        if (!c.contains("hw")) {
            if (dim != 1) diff(std::string(name) + " dim", dim.str(), "1");
            return std::nullopt;
        }
        Weight hw = parse_weight(c["hw"].get<std::string>(), n);
        IrrepInfo info = irrep_info(*d, hw);
        if (info.dim != dim) diff(std::string(name) + " dim", dim.str(), info.dim.str());
        return info;
    };
    auto ad = cell("ad");
    auto x2 = cell("X2");
    cell("R1");
    auto r2 = cell("R2");
    auto r3 = cell("R3");

    if (ad->highest_weight != theta) diff("ad hw", ad->highest_weight.str(), theta.str());
    if (ad->casimir != 1) diff("casimir(ad)", "1", to_display_string(ad->casimir));
    if (x2->casimir != 2) diff("casimir(X2)", "2", to_display_string(x2->casimir));
    if (x2->dim != eval_d(2, d->dimension())) diff("dim X2 vs d_2(D)", eval_d(2, d->dimension()).str(), x2->dim.str());
    auto fam = family_via_admissible(*d, 2);
    std::vector<Weight> fw;
    for (auto& c : fam.constituents) fw.push_back(c.highest_weight);
    if (fw != std::vector<Weight>{x2->highest_weight}) diff("X2 via admissible", x2->highest_weight.str(), weight_list(fw));
    if (r3->highest_weight != 2 * theta) diff("R3 = 2 theta", (2 * theta).str(), r3->highest_weight.str());
    if (r3->casimir != 2 * (1 + 1 / hdual))
        diff("casimir(R3) = 2(1+alpha)", to_display_string(2 * (1 + 1 / hdual)), to_display_string(r3->casimir));

    if (opt.decompose_squares) {
        auto sq = sym_antisym_square(adjoint_character(d), opt.limits, 1);
        auto parts = [](const Decomposition& dec) {
            std::vector<Weight> ws;
            for (auto& p : dec.parts) {
                if (p.multiplicity != 1) return std::vector<Weight>{};
                ws.push_back(p.highest_weight);
            }
            std::sort(ws.begin(), ws.end());
            return ws;
        };
        std::vector<Weight> anti{ad->highest_weight, x2->highest_weight};
        std::vector<Weight> sym{Weight(n), r2->highest_weight, r3->highest_weight};
        std::sort(anti.begin(), anti.end());
        std::sort(sym.begin(), sym.end());
        auto got_anti = parts(decompose(sq.antisym));
        auto got_sym = parts(decompose(sq.sym));
        if (got_anti != anti) diff("(ad x ad)_A", weight_list(anti), weight_list(got_anti));
        if (got_sym != sym) diff("(ad x ad)_S", weight_list(sym), weight_list(got_sym));
    }
    return res;
}

inline RowResult check_notation_row(const std::string& table, const Json& row) {
    RowResult res;
    const std::string alg = row.at("algebra");
    auto diff = [&](std::string cell, std::string exp, std::string act) {
        res.diffs.push_back({table, alg, std::move(cell), std::move(exp), std::move(act)});
    };
    DatumPtr d = datum_for(alg);
    const BigInt D = row.at("D").get<long long>();
    const Rational alpha = parse_rational(row.at("alpha").get<std::string>());
    const Rational m = parse_rational(row.at("m").get<std::string>());
    if (D != d->dimension()) diff("D", D.str(), std::to_string(d->dimension()));
    const Rational hv = d->dual_coxeter()[0];
    if (alpha != 1 / hv) diff("alpha = 1/h^vee", to_display_string(alpha), to_display_string(1 / hv));
    auto p = param_maps(m);
    if (p.D != Rational(D)) diff("D(m)", D.str(), to_display_string(p.D));
    if (p.alpha != alpha) diff("alpha(m)", to_display_string(alpha), to_display_string(p.alpha));
    if (p.h_dual != hv) diff("3(m+2) = h^vee", to_display_string(hv), to_display_string(p.h_dual));
    return res;
}

inline RowResult check_root_table(const std::string& table, const Json& doc) {
    RowResult res;
    const std::string alg = doc.value("algebra", std::string("F4"));
    DatumPtr d = datum_for(alg);
    auto diff = [&](std::string row, std::string cell, std::string exp, std::string act) {
        res.diffs.push_back({table, std::move(row), std::move(cell), std::move(exp), std::move(act)});
    };
    const int min_h = doc.value("min_height", 1);
    std::set<RootCoords> printed;
    for (auto& row : doc.at("rows")) {
        const std::string name = row.at("root");
        const std::string cs = row.at("coords");
        RootCoords c;
        for (char ch : cs) c.push_back(ch - '0');
        printed.insert(c);
        auto k = d->root_index(c);
        if (!k) {
            diff(name, "root", cs, "not a positive root");
            continue;
        }
        const int h = row.at("height");
        if (d->positive_roots()[*k].height != h)
            diff(name, "height", std::to_string(h), std::to_string(d->positive_roots()[*k].height));
        if (name == "x24" && *k != 0) diff(name, "highest root", "index 0", "index " + std::to_string(*k));
        if (name == "x23" && *k != 1) diff(name, "second highest root", "index 1", "index " + std::to_string(*k));
    }
    std::set<RootCoords> computed;
    for (auto& r : d->positive_roots())
        if (r.height >= min_h) computed.insert(r.coords);
    if (computed != printed)
        diff(alg, "roots of height >= " + std::to_string(min_h), std::to_string(printed.size()) + " roots",
             std::to_string(computed.size()) + " roots");
    if (d->positive_roots().size() != 24 && alg == "F4")
        diff(alg, "positive root count", "24", std::to_string(d->positive_roots().size()));
    return res;
}

inline bool is_family_table(const Json& doc) {
    return !doc.at("rows").empty() && doc["rows"][0].contains("terms");
}

}  // namespace detail

// Rows are checked concurrently (up to opt.jobs at once); results are merged
// in fixture order.
inline VerifyReport verify_tables(const std::filesystem::path& dir, const std::vector<std::string>& ids,
                                  const VerifyOptions& opt = {}) {
    VerifyReport rep;
    rep.tables = ids;
    struct Task {
        std::string table;
        Json row;
        int kind;  // 0 family, 1 square, 2 notation, 3 roots (row = whole doc)
    };
    std::vector<Task> tasks;
    for (auto& id : ids) {
        Json doc = load_fixture(dir, id);
        if (id == "tab_rootf4") {
            tasks.push_back({id, doc, 3});
            continue;
        }
        int kind = detail::is_family_table(doc) ? 0 : id == "tab_order2" ? 1 : id == "tab_notation" ? 2 : -1;
        if (kind < 0) throw ValidationError("no checker for fixture " + id);
        for (auto& row : doc["rows"]) tasks.push_back({id, row, kind});
    }
    auto run = [&](const Task& t) -> detail::RowResult {
        try {
            switch (t.kind) {
                case 0: return detail::check_family_row(t.table, t.row);
                case 1: return detail::check_square_row(t.table, t.row, opt);
                case 2: return detail::check_notation_row(t.table, t.row);
                default: return detail::check_root_table(t.table, t.row);
            }
        } catch (const std::exception& e) {
            detail::RowResult r;
            r.diffs.push_back({t.table, t.row.value("algebra", std::string("?")), "error", "", e.what()});
            return r;
        }
    };
    std::vector<detail::RowResult> results(tasks.size());
    const std::size_t width = std::max(1u, opt.jobs);
    for (std::size_t start = 0; start < tasks.size(); start += width) {
        std::vector<std::future<detail::RowResult>> batch;
        for (std::size_t i = start; i < std::min(tasks.size(), start + width); ++i)
            batch.push_back(std::async(width > 1 ? std::launch::async : std::launch::deferred, run, std::cref(tasks[i])));
        for (std::size_t i = 0; i < batch.size(); ++i) results[start + i] = batch[i].get();
    }
    for (auto& r : results) {
        rep.discrepancies.insert(rep.discrepancies.end(), r.diffs.begin(), r.diffs.end());
        rep.errata.insert(rep.errata.end(), r.errata.begin(), r.errata.end());
    }
    rep.rows_checked = tasks.size();
    return rep;
}

// The algebras whose data fix d_j: A1, A2, G2, D4 and the exceptionals.
inline const std::vector<std::string>& family_algebras() {
    static const std::vector<std::string> names{"A1", "A2", "G2", "D4", "F4", "E6", "E7", "E8"};
    return names;
}

// (D, d_j(D)) for every family algebra that has a printed X_j row, read
// from the family fixtures (X_2 dims from tab_order2). Algebras listed in
// `exclude` are skipped; one point per algebra, ordered by D.
inline std::vector<InterpolationPoint> fixture_points(const std::filesystem::path& dir, int j,
                                                      const std::vector<std::string>& exclude = {}) {
    std::map<std::string, BigInt> value;
    for (auto& id : fixture_ids(dir)) {
        Json doc = load_fixture(dir, id);
        if (id == "tab_order2" && j == 2) {
            for (auto& row : doc["rows"]) value.emplace(row.at("algebra"), parse_bigint(row["X2"].at("dim").get<std::string>()));
            continue;
        }
        if (id == "tab_otheralg" || id == "tab_rootf4" || !detail::is_family_table(doc)) continue;
        for (auto& row : doc["rows"])
            if (row.at("j") == j) value.emplace(row.at("algebra"), parse_bigint(row.at("sum").get<std::string>()));
    }
    std::vector<InterpolationPoint> pts;
    for (auto& name : family_algebras()) {
        if (std::find(exclude.begin(), exclude.end(), name) != exclude.end()) continue;
        auto it = value.find(name);
        if (it != value.end()) pts.push_back({BigInt(datum_for(name)->dimension()), it->second});
    }
    std::sort(pts.begin(), pts.end(), [](auto& a, auto& b) { return a.D < b.D; });
    return pts;
}

inline Json report_json(const VerifyReport& rep) {
    Json diffs = Json::array();
    for (auto& d : rep.discrepancies)
        diffs.push_back({{"table", d.table}, {"row", d.row}, {"cell", d.cell}, {"expected", d.expected}, {"actual", d.actual}});
    Json errata = Json::array();
    for (auto& e : rep.errata)
        errata.push_back({{"table", e.table}, {"row", e.row}, {"printed", e.printed}, {"computed", e.computed}, {"reason", e.reason}});
    return {{"tables", rep.tables},
            {"rows_checked", rep.rows_checked},
            {"ok", rep.ok()},
            {"discrepancies", diffs},
            {"known_errata", errata}};
}

inline std::string report_text(const VerifyReport& rep) {
    std::string s;
    for (auto& d : rep.discrepancies)
        s += "DIFF " + d.table + " | " + d.row + " | " + d.cell + "\n  expected: " + d.expected +
             "\n  actual:   " + d.actual + "\n";
    for (auto& e : rep.errata)
        s += "ERRATUM " + e.table + " | " + e.row + " | printed " + e.printed + ", computed " + e.computed + "\n";
    s += std::to_string(rep.rows_checked) + " rows in " + std::to_string(rep.tables.size()) + " tables, " +
         std::to_string(rep.discrepancies.size()) + " discrepancies, " + std::to_string(rep.errata.size()) +
         " known errata\n";
    return s;
}

}  // namespace casimir

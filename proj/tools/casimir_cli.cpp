// casimir: command-line front end to the engine.
//
// Exit codes: 0 success, 1 internal error, 2 invalid input, 3 resource
// ceiling refused, 4 verification difference.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "casimir/casimir.hpp"
#include "result_cache.hpp"

namespace fs = std::filesystem;
using namespace casimir;

namespace {

enum ExitCode : int { kOk = 0, kInternal = 1, kInvalid = 2, kResource = 3, kDiff = 4 };

enum class Format { text, pretty, json, csv };

struct Global {
    bool json = false;
    bool csv = false;
    bool pretty = false;
    std::string cache_dir;
    bool no_cache = false;
    bool verify_cache = false;
    std::uint64_t max_weights = ResourceLimits{}.max_weights;
    unsigned jobs = 1;
    std::string perm;
    std::string data_dir;

    Format format() const {
        if (json) return Format::json;
        if (csv) return Format::csv;
        if (pretty) return Format::pretty;
        return Format::text;
    }
    ResourceLimits limits() const { return {max_weights}; }
};

struct Output {
    std::string body;
    int code = kOk;
};

const char* format_name(Format f) {
    switch (f) {
        case Format::json: return "json";
        case Format::csv: return "csv";
        case Format::pretty: return "pretty";
        default: return "text";
    }
}

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string csv_row(const std::vector<std::string>& cells) {
    std::string s;
    for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + csv_cell(cells[i]);
    return s + "\n";
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

// Table typography: "(0002)" for weights, "−" for minus in pretty mode.
// Direct sums use the comma form "(4,4)" so block boundaries stay visible.
std::string paren(const Weight& w, bool commas = false) {
    std::string s = w.str();
    if (s.front() == '(') return s;
    if (!commas) return "(" + s + ")";
    std::string t = "(";
    for (std::size_t i = 0; i < w.size(); ++i) t += (i ? "," : "") + std::to_string(w[i]);
    return t + ")";
}

bool is_sum(const RootDatum& d) { return d.spec().blocks.size() > 1; }

std::string minus_sign(Format f) { return f == Format::pretty ? "−" : "-"; }
std::string oplus(Format f) { return f == Format::pretty ? " ⊕ " : " + "; }
std::string times_dot(Format f) { return f == Format::pretty ? "·" : "*"; }

fs::path data_dir(const Global& g) {
    if (!g.data_dir.empty()) return g.data_dir;
    if (const char* e = std::getenv("CASIMIR_DATA_DIR"); e && *e) return e;
#ifdef CASIMIR_DATA_DIR
    return CASIMIR_DATA_DIR;
#else
    return "data/fixtures";
#endif
}

std::vector<std::size_t> parse_perm(const std::string& text) {
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            long v = std::stol(item);
            if (v < 1) throw std::out_of_range(item);
            out.push_back(static_cast<std::size_t>(v - 1));
        } catch (const std::exception&) {
            throw ValidationError("--perm expects 1-based node numbers separated by commas, got '" + text + "'");
        }
    }
    return out;
}

// A registry name ("F4", "A1^3", "B2+G2") or a JSON file {name, matrix}.
DatumPtr load_algebra(const std::string& arg, const Global& g) {
    CartanSpec spec;
    const bool is_file = arg.size() > 5 && arg.ends_with(".json");
    if (is_file)
        spec = cartan_from_json(load_json_file(arg));
    else if (g.perm.empty())
        return datum_for(arg);
    else
        spec = parse_algebra(arg);
    if (!g.perm.empty()) spec = permute_nodes(spec, parse_perm(g.perm));
    return build_root_datum(std::move(spec));
}

std::string spec_key(const RootDatum& d) { return cartan_json(d.spec()).dump(); }

// Parses "5", "2..9" or "3,5,7".
std::vector<int> parse_int_list(const std::string& text, const char* what) {
    std::vector<int> out;
    try {
        if (auto dots = text.find(".."); dots != std::string::npos) {
            int lo = std::stoi(text.substr(0, dots)), hi = std::stoi(text.substr(dots + 2));
            if (lo > hi) throw std::out_of_range(text);
            for (int v = lo; v <= hi; ++v) out.push_back(v);
        } else {
            std::stringstream ss(text);
            std::string item;
            while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
        }
    } catch (const std::exception&) {
        throw ValidationError(std::string(what) + " expects N, LO..HI or a comma list, got '" + text + "'");
    }
    if (out.empty()) throw ValidationError(std::string(what) + " is empty");
    return out;
}

// Runs fn over items on up to `jobs` threads; results keep item order.
template <class T, class F>
auto parallel_map(const std::vector<T>& items, unsigned jobs, F fn) {
    using R = decltype(fn(items.front()));
    std::vector<R> out;
    out.reserve(items.size());
    const std::size_t width = std::max(1u, jobs);
    for (std::size_t start = 0; start < items.size(); start += width) {
        std::vector<std::future<R>> batch;
        for (std::size_t i = start; i < std::min(items.size(), start + width); ++i)
            batch.push_back(std::async(width > 1 ? std::launch::async : std::launch::deferred, fn, std::cref(items[i])));
        for (auto& f : batch) out.push_back(f.get());
    }
    return out;
}

// ---------------------------------------------------------------------------
// roots

struct RootsArgs {
    std::string algebra;
    bool dot = false;
};

Output cmd_roots(const RootsArgs& a, const Global& g) {
    DatumPtr d = load_algebra(a.algebra, g);
    const auto& roots = d->positive_roots();
    std::string s;
    auto coords_str = [](const RootCoords& c) {
        std::string t;
        bool compact = std::all_of(c.begin(), c.end(), [](int x) { return x <= 9; });
        for (std::size_t i = 0; i < c.size(); ++i) t += (compact || i == 0 ? "" : ",") + std::to_string(c[i]);
        return t;
    };
    if (a.dot) {
        s += "digraph \"" + d->name() + "\" {\n  rankdir=BT;\n  node [shape=box];\n";
        for (std::size_t k = 0; k < roots.size(); ++k)
            s += "  r" + std::to_string(k) + " [label=\"" + coords_str(roots[k].coords) + "\\nh=" +
                 std::to_string(roots[k].height) + "\"];\n";
        for (auto& [from, to] : d->poset_arrows()) s += "  r" + std::to_string(from) + " -> r" + std::to_string(to) + ";\n";
        s += "}\n";
        return {s};
    }
    switch (g.format()) {
        case Format::json: return {dump(roots_json(*d))};
        case Format::csv:
            s = csv_row({"index", "coords", "height", "block", "labels", "arrows_to"});
            for (std::size_t k = 0; k < roots.size(); ++k) {
                std::string to;
                for (auto t : d->arrows_from(k)) to += (to.empty() ? "" : " ") + std::to_string(t);
                s += csv_row({std::to_string(k), coords_str(roots[k].coords), std::to_string(roots[k].height),
                              std::to_string(roots[k].block), roots[k].labels.str(), to});
            }
            return {s};
        default: break;
    }
    std::string hv;
    for (int h : d->dual_coxeter()) hv += (hv.empty() ? "" : ",") + std::to_string(h);
    s += d->name() + ": rank " + std::to_string(d->rank()) + ", dimension " + std::to_string(d->dimension()) + ", " +
         std::to_string(roots.size()) + " positive roots, dual Coxeter " + hv + "\n";
    s += "index  coords      height  labels      arrows to\n";
    for (std::size_t k = 0; k < roots.size(); ++k) {
        std::string to;
        for (auto t : d->arrows_from(k)) to += (to.empty() ? "" : " ") + std::to_string(t);
        char line[256];
        std::snprintf(line, sizeof line, "%5zu  %-10s  %6d  %-10s  %s\n", k, coords_str(roots[k].coords).c_str(),
                      roots[k].height, roots[k].labels.str().c_str(), to.c_str());
        s += line;
    }
    return {s};
}

// ---------------------------------------------------------------------------
// irrep

struct IrrepArgs {
    std::string algebra;
    std::string labels;
    bool character = false;
};

Output cmd_irrep(const IrrepArgs& a, const Global& g) {
    DatumPtr d = load_algebra(a.algebra, g);
    Weight hw = parse_weight(a.labels, d->rank());
    IrrepInfo info = irrep_info(*d, hw);
    Weight conj = conjugate(*d, hw);
    auto orbit = automorphism_orbit(*d, hw);
    std::optional<Character> chi;
    if (a.character) chi = freudenthal_character(d, hw, g.limits());
    const Format f = g.format();
    if (f == Format::json) {
        Json j = irrep_json(info);
        j["algebra"] = d->name();
        j["conjugate"] = weight_json(conj);
        Json orb = Json::array();
        for (auto& w : orbit) orb.push_back(weight_json(w));
        j["automorphism_orbit"] = orb;
        if (chi) {
            Json ch = Json::array();
            for (auto& [w, m] : chi->sorted_entries()) ch.push_back({{"weight", weight_json(w)}, {"mult", m.str()}});
            j["character"] = ch;
        }
        return {dump(j)};
    }
    if (f == Format::csv) {
        std::string s = csv_row({"algebra", "hw", "dim", "casimir"});
        s += csv_row({d->name(), hw.str(), info.dim.str(), to_display_string(info.casimir)});
        if (chi) {
            s += csv_row({"weight", "mult"});
            for (auto& [w, m] : chi->sorted_entries()) s += csv_row({w.str(), m.str()});
        }
        return {s};
    }
    const bool cm = is_sum(*d);
    std::string s = d->name() + " " + paren(hw, cm) + ": dim " + info.dim.str() + ", casimir " +
                    to_display_string(info.casimir) + "\n";
    s += "  conjugate " + paren(conj, cm) + (conj == hw ? " (self-conjugate)" : "") + "\n";
    std::string o;
    for (auto& w : orbit) o += (o.empty() ? "" : " ") + paren(w, cm);
    s += "  automorphism orbit " + o + "\n";
    if (chi) {
        s += "  character: " + std::to_string(chi->size()) + " weights\n";
        for (auto& [w, m] : chi->sorted_entries()) s += "    " + paren(w, cm) + "  " + m.str() + "\n";
    }
    return {s};
}

// ---------------------------------------------------------------------------
// family

struct FamilyArgs {
    std::vector<std::string> algebras;
    std::string j = "2..9";
    bool dropout = false;
    int j_max = 10;
};

// "+1274" style signed terms, orbits shown as count.dim.
std::string family_terms(const FamilyAssignment& fa, Format f) {
    std::string s;
    for (auto& orb : fa.orbits) {
        const auto& c = fa.constituents[orb.front()];
        if (c.sign == 0) continue;
        std::string term = (orb.size() > 1 ? std::to_string(orb.size()) + times_dot(f) : "") + c.dim.str();
        if (s.empty())
            s = (c.sign < 0 ? minus_sign(f) : "") + term;
        else
            s += (c.sign < 0 ? " " + minus_sign(f) + " " : " + ") + term;
    }
    return s.empty() ? "0" : s;
}

std::string family_weights(const FamilyAssignment& fa, Format f, bool include_zero, bool cm) {
    std::string s;
    for (auto& orb : fa.orbits) {
        if (!include_zero && fa.constituents[orb.front()].sign == 0) continue;
        std::string group;
        for (auto k : orb) group += (group.empty() ? "" : ", ") + paren(fa.constituents[k].highest_weight, cm);
        s += (s.empty() ? "" : oplus(f)) + group;
    }
    return s.empty() ? "none" : s;
}

std::string family_text(const FamilyAssignment& fa, Format f, bool cm) {
    std::string s = fa.algebra + " j=" + std::to_string(fa.j) + " [" + to_string(fa.path) +
                    (fa.dropped_out ? ", dropped out" : "") + "]: " + family_weights(fa, f, false, cm) + "\n";
    std::string sum = fa.signed_sum.str();
    if (f == Format::pretty && fa.signed_sum < 0) sum = minus_sign(f) + sum.substr(1);
    s += "  d_" + std::to_string(fa.j) + " = " + family_terms(fa, f) + " = " + sum + "\n";
    std::string zero;
    for (auto& orb : fa.orbits)
        if (fa.constituents[orb.front()].sign == 0)
            for (auto k : orb) zero += (zero.empty() ? "" : " ") + paren(fa.constituents[k].highest_weight, cm);
    if (!zero.empty()) s += "  sign 0: " + zero + "\n";
    if (fa.target && !fa.matched) s += "  no sign assignment reaches d_j(D) = " + fa.target->str() + "\n";
    if (!fa.note.empty()) s += "  note: " + fa.note + "\n";
    return s;
}

Output cmd_family(const FamilyArgs& a, const Global& g) {
    std::vector<DatumPtr> ds;
    for (auto& name : a.algebras) ds.push_back(load_algebra(name, g));
    const Format f = g.format();
    if (a.dropout) {
        if (a.j_max < 2) throw ValidationError("--j-max must be at least 2");
        auto res = parallel_map(ds, g.jobs, [&](const DatumPtr& d) { return dropout_index(*d, a.j_max); });
        std::string s;
        Json arr = Json::array();
        if (f == Format::csv) s = csv_row({"algebra", "dropout_j"});
        for (std::size_t i = 0; i < ds.size(); ++i) {
            std::string v = res[i] ? std::to_string(*res[i]) : "none";
            arr.push_back({{"algebra", ds[i]->name()}, {"j_max", a.j_max},
                           {"dropout", res[i] ? Json(*res[i]) : Json(nullptr)}});
            if (f == Format::csv)
                s += csv_row({ds[i]->name(), v});
            else
                s += ds[i]->name() + ": dropout j0 = " + v + (res[i] ? "" : " (up to j = " + std::to_string(a.j_max) + ")") + "\n";
        }
        return {f == Format::json ? dump(arr) : s};
    }
    std::vector<int> js = parse_int_list(a.j, "--j");
    for (int j : js)
        if (j < 1) throw ValidationError("family index j must be at least 1");
    std::vector<std::pair<DatumPtr, int>> items;
    for (int j : js)
        for (auto& d : ds) items.emplace_back(d, j);
    auto fams = parallel_map(items, g.jobs, [](const std::pair<DatumPtr, int>& it) {
        return resolve_family(*it.first, it.second);
    });
    int code = kOk;
    for (auto& fa : fams)
        if (fa.target && !fa.matched) code = kDiff;
    std::string s;
    if (f == Format::json) {
        Json arr = Json::array();
        for (auto& fa : fams) arr.push_back(family_json(fa));
        return {dump(fams.size() == 1 ? arr[0] : arr), code};
    }
    if (f == Format::csv) {
        std::vector<std::string> head{"j", "row"};
        for (auto& d : ds) head.push_back(d->name());
        s = csv_row(head);
        for (std::size_t jj = 0; jj < js.size(); ++jj) {
            std::vector<std::string> drow{std::to_string(js[jj]), "d_j"}, xrow{std::to_string(js[jj]), "X_j"};
            for (std::size_t i = 0; i < ds.size(); ++i) {
                const auto& fa = fams[jj * ds.size() + i];
                drow.push_back(family_terms(fa, f) + " = " + fa.signed_sum.str());
                xrow.push_back(family_weights(fa, f, false, is_sum(*ds[i])));
            }
            s += csv_row(drow) + csv_row(xrow);
        }
        return {s, code};
    }
    for (std::size_t i = 0; i < fams.size(); ++i) s += family_text(fams[i], f, is_sum(*items[i].first));
    return {s, code};
}

// ---------------------------------------------------------------------------
// exterior

struct ExteriorArgs {
    std::string algebra;
    int j = 2;
    bool decompose = false;
    bool eigenspace = false;
};

// Dimension with an overbar on the member of a conjugate pair whose labels
// are lexicographically smaller.
std::string dim_label(const RootDatum& d, const DecompositionPart& p, Format f) {
    std::string s = p.dim.str();
    Weight c = conjugate(d, p.highest_weight);
    if (c != p.highest_weight && p.highest_weight < c) s += f == Format::pretty ? "̄" : "bar";
    return s;
}

Output cmd_exterior(const ExteriorArgs& a, const Global& g) {
    DatumPtr d = load_algebra(a.algebra, g);
    if (a.j < 0) throw ValidationError("--j must be non-negative");
    Character chi(d);
    try {
        chi = exterior_power(adjoint_character(d), static_cast<std::size_t>(a.j), g.limits(), g.jobs);
    } catch (const ResourceError& e) {
        throw ResourceError(std::string(e.what()) + "\nhint: use `family " + d->name() + " --j " + std::to_string(a.j) +
                                "` instead of `exterior`; it reads the casimir-j part off admissible subsets "
                                "without forming the exterior power",
                            e.estimate, e.ceiling);
    }
    const BigInt binom = binomial(static_cast<std::uint64_t>(d->dimension()), static_cast<std::uint64_t>(a.j));
    if (chi.virtual_dim() != binom)
        throw ConsistencyError("exterior power has dimension " + chi.virtual_dim().str() + ", expected " + binom.str());
    std::optional<Decomposition> dec;
    if (a.decompose || a.eigenspace) {
        dec = decompose(chi);
        if (a.eigenspace) dec = restrict_to_casimir(*dec, Rational(a.j));
    }
    const Format f = g.format();
    if (f == Format::json) {
        Json j = {{"algebra", d->name()},
                  {"j", a.j},
                  {"distinct_weights", chi.size()},
                  {"virtual_dim", chi.virtual_dim().str()},
                  {"binomial", binom.str()}};
        if (dec) j[a.eigenspace ? "eigenspace" : "decomposition"] = decomposition_json(*dec);
        return {dump(j)};
    }
    if (f == Format::csv) {
        if (!dec) return {csv_row({"algebra", "j", "distinct_weights", "virtual_dim"}) +
                          csv_row({d->name(), std::to_string(a.j), std::to_string(chi.size()), chi.virtual_dim().str()})};
        std::string s = csv_row({"hw", "mult", "dim", "casimir"});
        for (auto& p : dec->parts)
            s += csv_row({p.highest_weight.str(), p.multiplicity.str(), p.dim.str(), to_display_string(p.casimir)});
        return {s};
    }
    std::string s = d->name() + " exterior power " + std::to_string(a.j) + " of ad: " + std::to_string(chi.size()) +
                    " distinct weights, dimension " + chi.virtual_dim().str() + " = C(" + std::to_string(d->dimension()) +
                    ", " + std::to_string(a.j) + ")\n";
    if (dec) {
        if (a.eigenspace) s += "casimir " + std::to_string(a.j) + " eigenspace:\n";
        std::string summary;
        for (auto& p : dec->parts) {
            s += "  " + (p.multiplicity == 1 ? std::string() : p.multiplicity.str() + " x ") + paren(p.highest_weight, is_sum(*d)) +
                 "  dim " + p.dim.str() + "  casimir " + to_display_string(p.casimir) + "\n";
            std::string term = dim_label(*d, p, f);
            if (p.multiplicity != 1) term = p.multiplicity.str() + times_dot(f) + term;
            summary += (summary.empty() ? "" : (f == Format::pretty ? " ⊕ " : " + ")) + term;
        }
        s += "  " + (summary.empty() ? std::string("none") : summary) + "\n";
    }
    return {s};
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    bool all = false;
    std::vector<std::string> tables;
    bool skip_squares = false;
};

Output cmd_verify(const VerifyArgs& a, const Global& g) {
    const fs::path dir = data_dir(g);
    std::vector<std::string> ids = a.tables;
    if (a.all || ids.empty()) ids = fixture_ids(dir);
    VerifyOptions opt;
    opt.jobs = g.jobs;
    opt.limits = g.limits();
    opt.decompose_squares = !a.skip_squares;
    VerifyReport rep = verify_tables(dir, ids, opt);
    const int code = rep.ok() ? kOk : kDiff;
    switch (g.format()) {
        case Format::json: return {dump(report_json(rep)), code};
        case Format::csv: {
            std::string s = csv_row({"kind", "table", "row", "cell", "expected", "actual"});
            for (auto& d : rep.discrepancies) s += csv_row({"diff", d.table, d.row, d.cell, d.expected, d.actual});
            for (auto& e : rep.errata) s += csv_row({"erratum", e.table, e.row, "irreps", e.printed, e.computed});
            return {s, code};
        }
        default: return {report_text(rep), code};
    }
}

// ---------------------------------------------------------------------------
// interpolate

struct InterpolateArgs {
    int j = 5;
    std::string data;
    std::vector<std::string> exclude;
    bool root_at_zero = false;
    std::string leading;
    bool leading_factorial = false;
    int degree = -1;
    bool compare = false;
};

std::vector<InterpolationPoint> points_from_file(const std::string& path) {
    Json doc = load_json_file(path);
    const Json& arr = doc.is_object() ? doc.at("points") : doc;
    std::vector<InterpolationPoint> pts;
    auto big = [](const Json& v) {
        return v.is_string() ? parse_bigint(v.get<std::string>()) : BigInt(v.get<long long>());
    };
    try {
        for (auto& p : arr) {
            if (p.is_array())
                pts.push_back({big(p.at(0)), big(p.at(1))});
            else
                pts.push_back({big(p.at("D")), big(p.at("value"))});
        }
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(path + ": points must be {D, value} objects or [D, value] pairs (" + e.what() + ")");
    }
    return pts;
}

Output cmd_interpolate(const InterpolateArgs& a, const Global& g) {
    const bool from_fixtures = a.data.empty();
    auto pts = from_fixtures ? fixture_points(data_dir(g), a.j, a.exclude) : points_from_file(a.data);
    InterpolationConstraints cons;
    cons.root_at_zero = a.root_at_zero;
    if (a.leading_factorial) cons.leading = Rational(1) / Rational(factorial(static_cast<std::uint64_t>(a.j)));
    if (!a.leading.empty()) cons.leading = parse_rational(a.leading);
    if (a.degree >= 0) cons.degree = a.degree;
    InterpolationResult res = interpolate(pts, cons);
    std::optional<bool> matches;
    if ((from_fixtures || a.compare) && a.j >= kMinBuiltinJ && a.j <= kMaxBuiltinJ) matches = res.poly == builtin_d(a.j);
    bool residual_ok = std::all_of(res.residuals.begin(), res.residuals.end(), [](auto& r) { return r == 0; });
    const int code = (!residual_ok || (matches && !*matches)) ? kDiff : kOk;
    const Format f = g.format();
    if (f == Format::json) {
        Json ps = Json::array();
        for (auto& p : pts) ps.push_back({{"D", p.D.str()}, {"value", p.value.str()}});
        Json rs = Json::array();
        for (auto& r : res.residuals) rs.push_back(to_fraction_string(r));
        Json j = {{"j", a.j}, {"points", ps}, {"degree", res.degree}, {"poly", poly_json(res.poly)},
                  {"factored", to_factored_string(res.poly)}, {"residuals", rs}};
        if (matches) j["matches_builtin"] = *matches;
        return {dump(j), code};
    }
    if (f == Format::csv) {
        std::string s = csv_row({"power", "coefficient"});
        for (std::size_t k = 0; k < res.poly.coeffs().size(); ++k)
            s += csv_row({std::to_string(k), to_fraction_string(res.poly.coeffs()[k])});
        return {s, code};
    }
    std::string s = "d_" + std::to_string(a.j) + " from " + std::to_string(pts.size()) + " points (D =";
    for (auto& p : pts) s += " " + p.D.str();
    s += ")" + std::string(cons.root_at_zero ? ", root at 0" : "") +
         (cons.leading ? ", leading " + to_display_string(*cons.leading) : "") + "\n";
    s += "  degree " + std::to_string(res.poly.degree()) + ": " + to_expanded_string(res.poly) + "\n";
    s += "  factored: " + to_factored_string(res.poly) + "\n";
    s += std::string("  residuals: ") + (residual_ok ? "all zero" : "nonzero") + "\n";
    if (matches) s += std::string("  matches the closed form: ") + (*matches ? "yes" : "no") + "\n";
    return {s, code};
}

// ---------------------------------------------------------------------------
// scan

struct ScanArgs {
    std::string j = "2..9";
    std::string range = "-10000..10000";
};

Output cmd_scan(const ScanArgs& a, const Global& g) {
    auto js = parse_int_list(a.j, "--j");
    for (int j : js)
        if (j < kMinBuiltinJ || j > kMaxBuiltinJ) throw ValidationError("scan covers d_2 .. d_9 only");
    auto dots = a.range.find("..");
    if (dots == std::string::npos) throw ValidationError("--range expects LO..HI");
    const BigInt lo = parse_bigint(a.range.substr(0, dots)), hi = parse_bigint(a.range.substr(dots + 2));
    auto reps = parallel_map(js, g.jobs, [&](int j) { return integrality_scan(j, lo, hi); });
    int code = kOk;
    for (auto& r : reps)
        if (!r.all_integral) code = kDiff;
    const Format f = g.format();
    if (f == Format::json) {
        Json arr = Json::array();
        for (auto& r : reps) {
            Json ce = Json::array();
            for (auto& c : r.counterexamples) ce.push_back(c.str());
            arr.push_back({{"j", r.j}, {"lo", r.lo.str()}, {"hi", r.hi.str()}, {"all_integral", r.all_integral},
                           {"counterexamples", ce}});
        }
        return {dump(arr), code};
    }
    std::string s = f == Format::csv ? csv_row({"j", "lo", "hi", "all_integral", "counterexamples"}) : "";
    for (auto& r : reps) {
        std::string ce;
        for (std::size_t i = 0; i < r.counterexamples.size() && i < 20; ++i)
            ce += (ce.empty() ? "" : " ") + r.counterexamples[i].str();
        if (f == Format::csv)
            s += csv_row({std::to_string(r.j), r.lo.str(), r.hi.str(), r.all_integral ? "true" : "false", ce});
        else
            s += "d_" + std::to_string(r.j) + " on [" + r.lo.str() + ", " + r.hi.str() + "]: " +
                 (r.all_integral ? "integral everywhere" : "non-integral at " + ce) + "\n";
    }
    return {s, code};
}

// ---------------------------------------------------------------------------
// params

struct ParamsArgs {
    std::string m;
    std::string algebra;
};

Output cmd_params(const ParamsArgs& a, const Global& g) {
    if (a.m.empty() == a.algebra.empty()) throw ValidationError("params needs exactly one of --m or --algebra");
    DatumPtr d;
    Rational m;
    if (!a.algebra.empty()) {
        d = load_algebra(a.algebra, g);
        if (d->dual_coxeter().size() != 1) throw ValidationError("params --algebra needs a simple algebra");
        m = m_from_dual_coxeter(Rational(d->dual_coxeter()[0]));
    } else {
        m = parse_rational(a.m);
    }
    Parametrization p = param_maps(m);
    auto [lhs, rhs] = identity_h101(m);
    auto [disc1, disc2] = h101_discriminants();
    std::optional<bool> dim_ok, p2_ok;
    if (d) {
        dim_ok = p.D == Rational(d->dimension());
        Weight theta = d->positive_roots()[d->highest_root(0)].labels;
        p2_ok = casimir::casimir(*d, 2 * theta) == 2 * (1 + p.alpha);
    }
    const int code = (lhs != rhs || (dim_ok && !*dim_ok) || (p2_ok && !*p2_ok)) ? kDiff : kOk;
    const Format f = g.format();
    if (f == Format::json) {
        Json j = {{"m", to_fraction_string(p.m)},
                  {"D", to_fraction_string(p.D)},
                  {"alpha", to_fraction_string(p.alpha)},
                  {"h_dual", to_fraction_string(p.h_dual)},
                  {"h101", {{"lhs", to_fraction_string(lhs)}, {"rhs", to_fraction_string(rhs)}, {"holds", lhs == rhs}}},
                  {"discriminants", {disc1.str(), disc2.str()}}};
        if (d) {
            j["algebra"] = d->name();
            j["D_matches_algebra"] = *dim_ok;
            j["casimir_2theta_is_2(1+alpha)"] = *p2_ok;
        }
        return {dump(j), code};
    }
    if (f == Format::csv)
        return {csv_row({"m", "D", "alpha", "h_dual"}) +
                    csv_row({to_display_string(p.m), to_display_string(p.D), to_display_string(p.alpha),
                             to_display_string(p.h_dual)}),
                code};
    std::string s = (d ? d->name() + ": " : std::string()) + "m = " + to_display_string(p.m) +
                    ", D = " + to_display_string(p.D) + ", alpha = " + to_display_string(p.alpha) +
                    ", h^vee = " + to_display_string(p.h_dual) + "\n";
    s += "  D^2 - 21D + 8 = " + to_display_string(lhs) + ", 6(15m^2+67m+68)(10m^2+27m+8)/(m+4)^2 = " +
         to_display_string(rhs) + (lhs == rhs ? "  (equal)" : "  (DIFFERENT)") + "\n";
    s += "  discriminants " + disc1.str() + ", " + disc2.str() + "\n";
    if (d) {
        s += std::string("  D(m) equals dim ") + d->name() + ": " + (*dim_ok ? "yes" : "no") + "\n";
        s += std::string("  casimir(2 theta) = 2(1 + alpha): ") + (*p2_ok ? "yes" : "no") + "\n";
    }
    return {s, code};
}

// ---------------------------------------------------------------------------
// factor

struct FactorArgs {
    int j = 9;
    bool explore = false;
    int max_factors = 4;
};

struct SimpleType {
    std::string name;
    long dim;
};

std::vector<SimpleType> simple_types(long max_dim) {
    std::vector<SimpleType> out;
    for (int n = 1; n <= 8; ++n) out.push_back({"A" + std::to_string(n), n * (n + 2L)});
    for (int n = 2; n <= 8; ++n) out.push_back({"B" + std::to_string(n), n * (2L * n + 1)});
    for (int n = 3; n <= 8; ++n) out.push_back({"C" + std::to_string(n), n * (2L * n + 1)});
    for (int n = 4; n <= 8; ++n) out.push_back({"D" + std::to_string(n), n * (2L * n - 1)});
    out.push_back({"G2", 14});
    out.push_back({"F4", 52});
    out.push_back({"E6", 78});
    out.push_back({"E7", 133});
    out.push_back({"E8", 248});
    std::erase_if(out, [&](auto& t) { return t.dim > max_dim; });
    return out;
}

// Semisimple algebras of dimension `dim` with at most `max_factors` simple
// factors of rank <= 8, as names like "A1+A2".
std::vector<std::string> algebras_of_dimension(long dim, int max_factors) {
    auto types = simple_types(dim);
    std::vector<std::string> out;
    std::vector<std::size_t> pick;
    auto rec = [&](auto& self, std::size_t from, long left) -> void {
        if (left == 0) {
            std::string name;
            for (auto k : pick) name += (name.empty() ? "" : "+") + types[k].name;
            out.push_back(name);
            return;
        }
        if (static_cast<int>(pick.size()) == max_factors) return;
        for (std::size_t k = from; k < types.size(); ++k) {
            if (types[k].dim > left) continue;
            pick.push_back(k);
            self(self, k, left - types[k].dim);
            pick.pop_back();
        }
    };
    rec(rec, 0, dim);
    return out;
}

Output cmd_factor(const FactorArgs& a, const Global& g) {
    RatPoly p = builtin_d(a.j);
    RootExtraction rx = integer_roots(p);
    struct Probe {
        std::string root;
        std::string algebra;
        std::size_t irreps;
    };
    std::vector<Probe> probes;
    std::vector<std::string> unmatched;
    if (a.explore) {
        std::vector<BigInt> distinct = rx.roots;
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        std::vector<std::pair<std::string, std::string>> work;
        for (auto& r : distinct) {
            if (r <= 0) continue;
            auto names = algebras_of_dimension(static_cast<long>(r), a.max_factors);
            if (names.empty()) unmatched.push_back(r.str());
            if (names.empty()) work.emplace_back(r.str(), "");
            for (auto& n : names) work.emplace_back(r.str(), n);
        }
        auto counts = parallel_map(work, g.jobs, [&](const std::pair<std::string, std::string>& w) {
            return w.second.empty() ? std::size_t{0} : irreps_with_casimir(*datum_for(w.second), Rational(a.j)).size();
        });
        for (std::size_t i = 0; i < work.size(); ++i)
            if (!work[i].second.empty()) probes.push_back({work[i].first, work[i].second, counts[i]});
    }
    const Format f = g.format();
    if (f == Format::json) {
        Json roots = Json::array();
        for (auto& r : rx.roots) roots.push_back(r.str());
        Json j = {{"j", a.j},
                  {"poly", poly_json(p)},
                  {"roots", roots},
                  {"content", to_fraction_string(rx.content)},
                  {"residual", poly_json(rx.residual)},
                  {"factored", to_factored_string(p)}};
        if (a.explore) {
            Json pr = Json::array();
            for (auto& q : probes)
                pr.push_back({{"root", q.root}, {"algebra", q.algebra}, {"casimir_j_irreps", q.irreps}});
            j["explore"] = pr;
            j["unmatched_roots"] = unmatched;
        }
        return {dump(j)};
    }
    if (f == Format::csv) {
        std::string s = csv_row({"root", "algebra", "casimir_j_irreps"});
        for (auto& q : probes) s += csv_row({q.root, q.algebra, std::to_string(q.irreps)});
        for (auto& u : unmatched) s += csv_row({u, "", ""});
        if (!a.explore) {
            s = csv_row({"root"});
            for (auto& r : rx.roots) s += csv_row({r.str()});
        }
        return {s};
    }
    std::string roots;
    for (auto& r : rx.roots) roots += (roots.empty() ? "" : ", ") + r.str();
    std::string s = "d_" + std::to_string(a.j) + " = " + to_factored_string(p) + "\n";
    s += "  integer roots: " + roots + "\n";
    s += "  residual: " + to_expanded_string(rx.residual) + "\n";
    if (a.explore) {
        s += "  algebras of dimension equal to a root (casimir-" + std::to_string(a.j) + " irreps):\n";
        std::vector<BigInt> distinct = rx.roots;
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        for (auto& r : distinct) {
            if (r <= 0) continue;
            if (std::find(unmatched.begin(), unmatched.end(), r.str()) != unmatched.end())
                s += "    D=" + r.str() + "  no semisimple algebra of this dimension\n";
            for (auto& q : probes)
                if (q.root == r.str())
                    s += "    D=" + q.root + "  " + q.algebra + "  " + std::to_string(q.irreps) +
                         (q.irreps == 0 ? "  (none, as the linear factor suggests)" : "") + "\n";
        }
    }
    return {s};
}

// ---------------------------------------------------------------------------
// caching wrapper

struct Runner {
    const Global& g;

    // `request` must determine the output completely.
    Output run(const std::string& request, bool cacheable, const std::function<Output()>& compute) const {
        if (!cacheable || g.no_cache) return compute();
        cli::ResultCache cache(g.cache_dir.empty() ? cli::default_cache_dir() : fs::path(g.cache_dir), kEngineVersion);
        const std::string full = request + "|format=" + format_name(g.format()) +
                                 "|max_weights=" + std::to_string(g.max_weights);
        const std::string key = cache.key(full);
        auto encode = [](const Output& o) { return std::to_string(o.code) + "\n" + o.body; };
        if (auto hit = cache.load(key)) {
            auto nl = hit->find('\n');
            if (nl != std::string::npos) {
                Output cached{hit->substr(nl + 1), std::atoi(hit->substr(0, nl).c_str())};
                if (!g.verify_cache) return cached;
                Output fresh = compute();
                if (encode(fresh) != *hit) {
                    std::cerr << "cache entry " << key << " differs from recomputation\n";
                    cache.store(key, encode(fresh));
                    fresh.code = kDiff;
                    return fresh;
                }
                std::cerr << "cache entry " << key << " verified\n";
                return fresh;
            }
        }
        Output fresh = compute();
        if (fresh.code == kOk || fresh.code == kDiff) cache.store(key, encode(fresh));
        return fresh;
    }
};

std::string fixture_digest(const fs::path& dir) {
    std::string all;
    for (auto& id : fixture_ids(dir)) all += id + ":" + load_json_file(dir / (id + ".json")).dump() + "\n";
    return cli::sha256_hex(all);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact Casimir-eigenspace families in exterior powers of the adjoint"};
    app.set_version_flag("--version", std::string("casimir ") + kEngineVersion);
    app.require_subcommand(1);
    app.fallthrough();

    Global g;
    auto* fmt = app.add_option_group("format");
    fmt->add_flag("--json", g.json, "JSON output");
    fmt->add_flag("--csv", g.csv, "CSV output (algebras as columns for family tables)");
    fmt->add_flag("--pretty", g.pretty, "table typography (unicode minus, ⊕, factored polynomials)");
    fmt->require_option(0, 1);
    app.add_option("--cache-dir", g.cache_dir, "result cache directory (default $CASIMIR_CACHE_DIR or ~/.cache/casimir)");
    app.add_flag("--no-cache", g.no_cache, "neither read nor write the result cache");
    app.add_flag("--verify-cache", g.verify_cache, "recompute cache hits and compare byte for byte");
    app.add_option("--max-weights", g.max_weights, "ceiling on distinct weights per character")
        ->check(CLI::PositiveNumber);
    app.add_option("--jobs,-j", g.jobs, "worker threads")->check(CLI::Range(1u, 1024u));
    app.add_option("--perm", g.perm, "node ordering: new node k is old node perm[k] (1-based, comma separated)");
    app.add_option("--data-dir", g.data_dir, "fixture directory (default $CASIMIR_DATA_DIR or the built-in path)");

    Runner runner{g};
    std::function<Output()> action;

    RootsArgs ra;
    auto* roots = app.add_subcommand("roots", "positive roots, heights, Dynkin labels and poset arrows");
    roots->add_option("algebra", ra.algebra, "registry name or Cartan JSON file")->required();
    roots->add_flag("--dot", ra.dot, "emit the root poset in Graphviz dot format");
    roots->callback([&] { action = [&] { return cmd_roots(ra, g); }; });

    IrrepArgs ia;
    auto* irrep = app.add_subcommand("irrep", "dimension, casimir, conjugate and automorphism orbit of an irrep");
    irrep->add_option("algebra", ia.algebra)->required();
    irrep->add_option("labels", ia.labels, "Dynkin labels, e.g. 0002 or 4,4")->required();
    irrep->add_flag("--character", ia.character, "also print the Freudenthal character");
    irrep->callback([&] {
        action = [&] {
            DatumPtr d = load_algebra(ia.algebra, g);
            return runner.run("irrep|" + spec_key(*d) + "|" + parse_weight(ia.labels, d->rank()).str() + "|" +
                                  std::to_string(ia.character),
                              ia.character, [&] { return cmd_irrep(ia, g); });
        };
    });

    FamilyArgs fa;
    auto* family = app.add_subcommand("family", "X_j families via admissible subsets, with the signed fallback");
    family->add_option("algebras", fa.algebras, "one or more algebras")->required();
    family->add_option("--j", fa.j, "N, LO..HI or a comma list (default 2..9)");
    family->add_flag("--dropout", fa.dropout, "report the dropout index instead");
    family->add_option("--j-max", fa.j_max, "search bound for --dropout (default 10)");
    family->callback([&] {
        action = [&] {
            std::string req = "family|" + fa.j + "|" + std::to_string(fa.dropout) + "|" + std::to_string(fa.j_max);
            for (auto& a : fa.algebras) req += "|" + spec_key(*load_algebra(a, g));
            return runner.run(req, true, [&] { return cmd_family(fa, g); });
        };
    });

    ExteriorArgs ea;
    auto* exterior = app.add_subcommand("exterior", "j-th exterior power of the adjoint, optionally decomposed");
    exterior->add_option("algebra", ea.algebra)->required();
    exterior->add_option("--j", ea.j, "power")->required();
    auto* dec_flag = exterior->add_flag("--decompose", ea.decompose, "full decomposition into irreps");
    exterior->add_flag("--eigenspace", ea.eigenspace, "only the casimir-j part of the decomposition")
        ->excludes(dec_flag);
    exterior->callback([&] {
        action = [&] {
            return runner.run("exterior|" + spec_key(*load_algebra(ea.algebra, g)) + "|" + std::to_string(ea.j) + "|" +
                                  std::to_string(ea.decompose) + std::to_string(ea.eigenspace),
                              true, [&] { return cmd_exterior(ea, g); });
        };
    });

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "recompute the fixture tables and report differences");
    auto* all_flag = verify->add_flag("--all", va.all, "every fixture table (default)");
    verify->add_option("--table", va.tables, "fixture id, repeatable")->excludes(all_flag);
    verify->add_flag("--skip-squares", va.skip_squares, "skip the full ad x ad decompositions");
    verify->callback([&] {
        action = [&] {
            std::string req = "verify|" + fixture_digest(data_dir(g)) + "|" + std::to_string(va.skip_squares);
            for (auto& t : va.tables) req += "|" + t;
            return runner.run(req, true, [&] { return cmd_verify(va, g); });
        };
    });

    InterpolateArgs pa;
    auto* interp = app.add_subcommand("interpolate", "re-derive d_j by exact interpolation");
    interp->add_option("--j", pa.j, "family index")->required();
    interp->add_option("--data", pa.data, "JSON points {points: [{D, value}]} (default: fixture sums)");
    interp->add_option("--exclude", pa.exclude, "fixture algebra to leave out, repeatable");
    interp->add_flag("--root-at-zero", pa.root_at_zero, "impose d_j(0) = 0");
    auto* lead = interp->add_option("--leading", pa.leading, "impose the leading coefficient p/q");
    interp->add_flag("--leading-factorial", pa.leading_factorial, "impose leading coefficient 1/j!")->excludes(lead);
    interp->add_option("--degree", pa.degree, "polynomial degree (default from the point count)");
    interp->add_flag("--compare", pa.compare, "compare with the closed form even for --data input");
    interp->callback([&] { action = [&] { return cmd_interpolate(pa, g); }; });

    ScanArgs sa;
    auto* scan = app.add_subcommand("scan", "integrality of d_j over a range of integers");
    scan->add_option("--j", sa.j, "N, LO..HI or a comma list (default 2..9)");
    scan->add_option("--range", sa.range, "LO..HI (default -10000..10000)");
    scan->callback([&] { action = [&] { return cmd_scan(sa, g); }; });

    ParamsArgs ma;
    auto* params = app.add_subcommand("params", "the m / alpha / D / h^vee parametrization");
    params->add_option("--m", ma.m, "rational m");
    params->add_option("--algebra", ma.algebra, "simple algebra; m from its dual Coxeter number");
    params->callback([&] { action = [&] { return cmd_params(ma, g); }; });

    FactorArgs xa;
    auto* factor = app.add_subcommand("factor", "integer roots of d_j and the matching algebras");
    factor->add_option("--j", xa.j, "family index 2..9")->required()->check(CLI::Range(kMinBuiltinJ, kMaxBuiltinJ));
    factor->add_flag("--explore", xa.explore, "probe algebras whose dimension is a root");
    factor->add_option("--max-factors", xa.max_factors, "simple factors per probed algebra (default 4)")
        ->check(CLI::Range(1, 8));
    factor->callback([&] { action = [&] { return cmd_factor(xa, g); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kInvalid;
    }

    try {
        Output out = action();
        std::cout << out.body;
        std::cout.flush();
        return out.code;
    } catch (const ResourceError& e) {
        std::cerr << "refused: " << e.what() << "\n  (estimate " << e.estimate << ", ceiling " << e.ceiling
                  << "; raise --max-weights to override)\n";
        return kResource;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const NotDominantError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: malformed JSON input: " << e.what() << "\n";
        return kInvalid;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kInternal;
    }
}

#include "szczarba/api.hpp"

#include "szczarba/chains.hpp"
#include "szczarba/szczarba.hpp"

#include <fstream>
#include <functional>
#include <sstream>

namespace sz {

namespace {

// "e.0" -> ("e", 0)
std::pair<std::string, int> split_dotted(const std::string& key) {
    size_t dot = key.rfind('.');
    if (dot == std::string::npos || dot + 1 == key.size())
        throw ParseError("expected '<name>.<index>', got '" + key + "'");
    try {
        return {key.substr(0, dot), std::stoi(key.substr(dot + 1))};
    } catch (const std::exception&) {
        throw ParseError("bad index in '" + key + "'");
    }
}

std::pair<std::string, std::string> split_pair(const std::string& key) {
    size_t dot = key.find('.');
    if (dot == std::string::npos)
        throw ParseError("expected '<a>.<b>', got '" + key + "'");
    return {key.substr(0, dot), key.substr(dot + 1)};
}

PresentationPtr presentation_from_json(const std::string& name, const Json& doc) {
    PresentationBuilder b(name);
    const Json& gens = doc.at("generators");
    if (!gens.is_array()) throw ParseError("'generators' must be an array of arrays");
    for (int d = 0; d < static_cast<int>(gens.size()); ++d)
        for (const auto& g : gens[static_cast<size_t>(d)])
            b.add_gen(d, g.get<std::string>());
    if (doc.contains("faces"))
        for (const auto& [key, value] : doc.at("faces").items()) {
            auto [gen, i] = split_dotted(key);
            b.set_face(gen, i, value.get<std::string>());
        }
    if (doc.contains("basepoint")) b.set_basepoint(doc.at("basepoint").get<std::string>());
    return b.build();
}

GroupPtr group_from_json(const Json& doc, PresentationPtr base, int default_truncation,
                         const std::string& scenario_name) {
    if (!doc.contains("group")) return SimplicialGroup::trivial();
    const Json& g = doc.at("group");
    if (g.contains("finite")) {
        const Json& fin = g.at("finite");
        std::vector<std::string> elements;
        for (const auto& e : fin.at("elements")) elements.push_back(e.get<std::string>());
        std::map<std::pair<std::string, std::string>, std::string> table;
        for (const auto& [key, value] : fin.at("table").items())
            table.emplace(split_pair(key), value.get<std::string>());
        return SimplicialGroup::finite(elements, table, fin.at("unit").get<std::string>());
    }
    if (g.contains("loopgroup_of")) {
        std::string which = g.at("loopgroup_of").get<std::string>();
        if (which != scenario_name && which != "itself" && which != "base")
            throw ParseError("unknown simplicial set '" + which + "' for the loop group");
        return SimplicialGroup::loop_group(std::move(base),
                                           g.value("truncation", default_truncation));
    }
    throw ParseError("group must be {\"finite\": ...} or {\"loopgroup_of\": ...}");
}

TwistPtr twist_from_json(const Json& doc, PresentationPtr base, GroupPtr G) {
    if (!doc.contains("twist")) return TwistingFunction::trivial(base, G);
    const Json& t = doc.at("twist");
    if (t.is_string()) {
        std::string s = t.get<std::string>();
        if (s == "trivial") return TwistingFunction::trivial(base, G);
        if (s == "canonical") {
            if (G->kind() != SimplicialGroup::Kind::Loop)
                throw ParseError("the canonical twist needs a loop group");
            return TwistingFunction::canonical_loop(base, G);
        }
        throw ParseError("twist must be \"trivial\", \"canonical\" or a table");
    }
    std::map<std::string, GroupWord> values;
    for (const auto& [gen, expr] : t.items()) {
        auto ref = base->find_gen(gen);
        if (!ref) throw ParseError("twist names unknown generator '" + gen + "'");
        values.emplace(gen, G->parse(expr.get<std::string>(), ref->dim - 1));
    }
    return TwistingFunction::table(base, G, values);
}

FibrePtr fibre_from_json(const Json& doc, GroupPtr G, const std::string& scenario_name) {
    if (!doc.contains("fibre") ||
        (doc.at("fibre").is_string() && doc.at("fibre").get<std::string>() == "group"))
        return Fibre::group_itself(G);
    PresentationPtr F = presentation_from_json(scenario_name + ".fibre", doc.at("fibre"));
    std::map<std::pair<std::string, std::string>, std::string> action;
    if (doc.contains("action"))
        for (const auto& [key, value] : doc.at("action").items())
            action.emplace(split_pair(key), value.get<std::string>());
    return Fibre::space(std::move(F), std::move(G), action);
}

}  // namespace

Scenario scenario_from_json(const Json& doc, int default_truncation) {
    try {
        Scenario sc;
        sc.name = doc.value("name", "scenario");
        sc.base = presentation_from_json(sc.name, doc);
        sc.group = group_from_json(doc, sc.base, default_truncation, sc.name);
        sc.twist = twist_from_json(doc, sc.base, sc.group);
        sc.fibre = fibre_from_json(doc, sc.group, sc.name);
        return sc;
    } catch (const Json::exception& e) {
        throw ParseError(std::string("bad presentation file: ") + e.what());
    }
}

Scenario load_scenario(const std::string& path, int default_truncation) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return scenario_from_json(doc, default_truncation);
}

bool fibre_finite(const Scenario& sc) {
    if (sc.fibre->kind() == Fibre::Kind::Space) return true;
    return sc.group->kind() == SimplicialGroup::Kind::Finite;
}

// ---------------------------------------------------------------------------
// Codecs

Json chain_to_json(const SimplicialGroup& G, const ChainG& c) {
    Json arr = Json::array();
    for (const auto& [w, k] : c.terms)
        arr.push_back(Json{{"coeff", k.str()}, {"level", w.level}, {"word", G.str(w)}});
    return arr;
}

ChainG group_chain_from_json(const SimplicialGroup& G, const Json& j) {
    ChainG out;
    for (const auto& t : j)
        out.add(G.parse(t.at("word").get<std::string>(), t.at("level").get<int>()),
                Int(t.at("coeff").get<std::string>()));
    return out;
}

Json chain_to_json(const TwistedProduct& T, const ChainT& c) {
    const Fibre& F = T.fibre();
    Json arr = Json::array();
    for (const auto& [z, k] : c.terms) {
        std::string y = F.kind() == Fibre::Kind::Group ? F.group_ptr()->str(z.y.g)
                                                       : F.space_ptr()->str(z.y.x);
        arr.push_back(Json{{"coeff", k.str()}, {"x", T.base().str(z.x)}, {"y", y}});
    }
    return arr;
}

ChainT twisted_chain_from_json(const TwistedProduct& T, const Json& j) {
    const Fibre& F = T.fibre();
    ChainT out;
    for (const auto& t : j) {
        Simplex x = T.base().parse_simplex(t.at("x").get<std::string>());
        std::string ys = t.at("y").get<std::string>();
        FibreElt y = F.kind() == Fibre::Kind::Group
                         ? F.elt(F.group_ptr()->parse(ys, x.dim()))
                         : F.elt(F.space_ptr()->parse_simplex(ys));
        out.add(TwistedSimplex{x, y}, Int(t.at("coeff").get<std::string>()));
    }
    return out;
}

CobarWord parse_cobar_word(const Presentation& P, const std::string& expr) {
    std::string s = expr;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.erase(s.begin());
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    if (s == "1" || s == "[]") return CobarWord{};
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw ParseError("cobar word must look like [x|y|...], got '" + expr + "'");
    std::vector<Simplex> letters;
    std::string body = s.substr(1, s.size() - 2);
    size_t start = 0;
    while (start <= body.size()) {
        size_t bar = body.find('|', start);
        std::string piece =
            bar == std::string::npos ? body.substr(start) : body.substr(start, bar - start);
        letters.push_back(P.parse_simplex(piece));
        if (bar == std::string::npos) break;
        start = bar + 1;
    }
    return CobarWord{letters};
}

Json chain_to_json(const Presentation& P, const TenOmegaOmega& c) {
    Json arr = Json::array();
    for (const auto& [uv, k] : c.terms)
        arr.push_back(
            Json{{"coeff", k.str()}, {"left", uv.a.str(P)}, {"right", uv.b.str(P)}});
    return arr;
}

TenOmegaOmega cobar_tensor_from_json(const Presentation& P, const Json& j) {
    TenOmegaOmega out;
    for (const auto& t : j)
        out.add({parse_cobar_word(P, t.at("left").get<std::string>()),
                 parse_cobar_word(P, t.at("right").get<std::string>())},
                Int(t.at("coeff").get<std::string>()));
    return out;
}

// ---------------------------------------------------------------------------
// Verification suites

namespace {

// All cobar words of degree <= bound.  For bases that are not 1-reduced the
// degree does not bound the length, so the letter count is capped instead.
std::vector<CobarWord> words_up_to(const Presentation& P, int bound) {
    std::vector<std::pair<Simplex, int>> letters;
    for (int d = 1; d <= P.max_dim(); ++d)
        for (const auto& x : P.nondegenerate(d)) letters.emplace_back(x, d - 1);
    int max_len = P.one_reduced() ? bound : 3;
    std::vector<CobarWord> out;
    std::vector<Simplex> cur;
    std::function<void(int, int)> rec = [&](int deg_left, int len_left) {
        out.push_back(CobarWord{cur});
        if (len_left == 0) return;
        for (const auto& [x, d] : letters)
            if (d <= deg_left) {
                cur.push_back(x);
                rec(deg_left - d, len_left - 1);
                cur.pop_back();
            }
    };
    rec(bound, max_len);
    return out;
}

std::string group_chain_str(const SimplicialGroup& G, const ChainG& c) {
    return c.str([&](const GroupWord& w) { return G.str(w); });
}

std::string gg_str(const SimplicialGroup& G, const ChainGG& c) {
    return c.str([&](const Ten<GroupWord, GroupWord>& t) {
        return G.str(t.a) + " (x) " + G.str(t.b);
    });
}

SuiteOutcome twisting_suite(const Scenario& sc, int bound) {
    SuiteOutcome out{"twisting"};
    try {
        sc.twist->validate(bound);
    } catch (const ValidationError& e) {
        out.detail = e.what();
        return out;
    }
    auto rep = check_twisting(*sc.base, group_ops(sc.group), szczarba_cochain(sc.twist),
                              bound);
    out.checked = rep.checked;
    out.passed = rep.ok();
    if (!rep.ok())
        out.detail = sc.base->str(rep.failures.front().simplex) + ": " +
                     rep.failures.front().detail;
    return out;
}

SuiteOutcome comultiplicativity_suite(const Scenario& sc, int bound) {
    SuiteOutcome out{"comultiplicativity"};
    const Presentation& P = *sc.base;
    const SimplicialGroup& G = *sc.group;
    auto ops = group_ops(sc.group);
    auto t = szczarba_cochain(sc.twist);
    for (const CobarWord& w : words_up_to(P, bound)) {
        ++out.checked;
        ChainG img = induced_dga_map(ops, t, w);

        ChainGG lhs;
        for (const auto& [gw, c] : img.terms) lhs += aw_diagonal(G, gw) * c;
        ChainGG rhs;
        for (const auto& [uv, c] : cobar_diagonal(P, w).terms) {
            ChainG a = induced_dga_map(ops, t, uv.a);
            ChainG b = induced_dga_map(ops, t, uv.b);
            for (const auto& [ga, ca] : a.terms)
                for (const auto& [gb, cb] : b.terms) rhs.add({ga, gb}, c * ca * cb);
        }
        if (!(lhs == rhs)) {
            out.detail = w.str(P) + ": Delta Sz = " + gg_str(G, lhs) +
                         " but (Sz (x) Sz) Delta = " + gg_str(G, rhs);
            return out;
        }
        ChainG db = boundary(G, img);
        ChainG bd = induced_dga_map(ops, t, cobar_differential(P, w));
        if (!(db == bd)) {
            out.detail = w.str(P) + ": d Sz = " + group_chain_str(G, db) +
                         " but Sz d = " + group_chain_str(G, bd);
            return out;
        }
        if (augment(img) != cobar_counit(ChainOmega::single(w))) {
            out.detail = w.str(P) + ": counit mismatch";
            return out;
        }
    }
    out.passed = true;
    return out;
}

SuiteOutcome baues_suite(const Scenario& sc, int bound) {
    SuiteOutcome out{"baues"};
    const Presentation& P = *sc.base;
    for (const CobarWord& w : words_up_to(P, bound)) {
        ++out.checked;
        TenOmegaOmega lhs = cobar_diagonal(P, w);
        TenOmegaOmega rhs = baues_diagonal(P, w);
        if (!(lhs == rhs)) {
            auto namer = [&](const Ten<CobarWord, CobarWord>& u) {
                return u.a.str(P) + " (x) " + u.b.str(P);
            };
            out.detail = w.str(P) + ": Delta_Omega = " + lhs.str(namer) +
                         " but Baues = " + rhs.str(namer);
            return out;
        }
    }
    out.passed = true;
    return out;
}

SuiteOutcome psi_suite(const Scenario& sc, int bound) {
    SuiteOutcome out{"psi-dgc"};
    if (!fibre_finite(sc))
        throw InfiniteDegree("psi-dgc needs a degreewise finite fibre");
    TwistedTensorComplex T(sc.twist, sc.fibre, bound);
    TwistedProduct Tp(sc.twist, sc.fibre);
    auto tp_str = [&](const TwistedSimplex& z) { return Tp.str(z); };
    auto tt_str = [&](const ChainTT& c) {
        return c.str([&](const Ten<TwistedSimplex, TwistedSimplex>& t) {
            return Tp.str(t.a) + " (x) " + Tp.str(t.b);
        });
    };
    for (int n = 0; n <= bound; ++n)
        for (const PairXF& z : T.basis(n)) {
            ++out.checked;
            ChainT p = psi(Tp, z.a, z.b);

            ChainT db = Tp.boundary(p);
            ChainT bd = psi(Tp, twisted_differential(T, z));
            if (!(db == bd)) {
                out.detail = T.str(z) + ": d psi = " + db.str(tp_str) +
                             " but psi d_t = " + bd.str(tp_str);
                return out;
            }

            ChainTT lhs;
            for (const auto& [w, c] : p.terms) lhs += Tp.aw_diagonal(w) * c;
            ChainTT rhs;
            for (const auto& [uv, c] : twisted_diagonal(T, z).terms) {
                ChainT pu = psi(Tp, uv.a.a, uv.a.b);
                ChainT pv = psi(Tp, uv.b.a, uv.b.b);
                for (const auto& [a, ca] : pu.terms)
                    for (const auto& [b, cb] : pv.terms) rhs.add({a, b}, c * ca * cb);
            }
            if (!(lhs == rhs)) {
                out.detail = T.str(z) + ": Delta psi = " + tt_str(lhs) +
                             " but (psi (x) psi) Delta_t = " + tt_str(rhs);
                return out;
            }

            if (Tp.augment(p) != twisted_counit(T, ChainXF::single(z))) {
                out.detail = T.str(z) + ": counit mismatch";
                return out;
            }
        }
    out.passed = true;
    return out;
}

SuiteOutcome degeneracy_suite(const Scenario& sc, int bound) {
    SuiteOutcome out{"degeneracies"};
    const Presentation& P = *sc.base;
    const SimplicialGroup& G = *sc.group;
    const TwistingFunction& tf = *sc.twist;

    for (int n = 1; n <= bound; ++n)
        for (const auto& x : P.all_simplices(n)) {
            if (!x.degenerate()) continue;
            ++out.checked;
            ChainG v = szczarba_t(tf, x);
            if (!v.zero()) {
                out.detail = "t(" + P.str(x) + ") = " + group_chain_str(G, v) + " != 0";
                return out;
            }
        }

    for (int m = 1; m < bound; ++m)
        for (const auto& x : P.nondegenerate(m))
            for (const auto& i : S_n(m))
                for (int p = 0; p <= m; ++p) {
                    ++out.checked;
                    auto [j, q] = Phi(i, p);
                    GroupWord l = szczarba_Sz(tf, i, degeneracy(p, x));
                    GroupWord r = G.degeneracy(q, szczarba_Sz(tf, j, x));
                    if (!(l == r)) {
                        out.detail = "Sz_" + i.str() + " s_" + std::to_string(p) + " " +
                                     P.str(x) + " = " + G.str(l) + " but s_" +
                                     std::to_string(q) + " Sz_" + j.str() + " = " + G.str(r);
                        return out;
                    }
                }

    for (int m = 0; m < bound; ++m)
        for (const auto& x : P.nondegenerate(m))
            for (const auto& i : S_n(m + 1))
                for (int p = 0; p <= m; ++p) {
                    ++out.checked;
                    auto [j, q] = Phi(i, p + 1);
                    auto [lx, lg] = szczarba_hatSz(tf, i, degeneracy(p, x));
                    auto [rx, rg] = szczarba_hatSz(tf, j, x);
                    if (!(lx == degeneracy(q, rx)) || !(lg == G.degeneracy(q, rg))) {
                        out.detail = "hatSz_" + i.str() + " s_" + std::to_string(p) + " " +
                                     P.str(x) + " != s_" + std::to_string(q) + " hatSz_" +
                                     j.str();
                        return out;
                    }
                }

    if (fibre_finite(sc)) {
        TwistedProduct Tp(sc.twist, sc.fibre);
        const Fibre& F = *sc.fibre;
        for (int n = 1; n <= std::min(bound, 3); ++n)
            for (const auto& x : P.all_simplices(n))
                for (const auto& y : F.all(n)) {
                    if (!x.degenerate() && !F.degenerate(y)) continue;
                    ++out.checked;
                    ChainT v = psi(Tp, x, y);
                    if (!v.zero()) {
                        out.detail = "psi(" + P.str(x) + ", " + F.str(y) + ") != 0";
                        return out;
                    }
                }
    }

    out.passed = true;
    return out;
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"twisting", "comultiplicativity", "psi-dgc", "baues", "degeneracies"};
}

std::vector<SuiteOutcome> run_suites(const Scenario& sc, const std::string& which,
                                     int bound) {
    std::vector<SuiteOutcome> out;
    auto run_one = [&](const std::string& name) {
        if (name == "twisting") return twisting_suite(sc, bound);
        if (name == "comultiplicativity") return comultiplicativity_suite(sc, bound);
        if (name == "psi-dgc") return psi_suite(sc, bound);
        if (name == "baues") return baues_suite(sc, bound);
        if (name == "degeneracies") return degeneracy_suite(sc, bound);
        throw ParseError("unknown suite '" + name + "'");
    };
    if (which == "all") {
        out.push_back(twisting_suite(sc, bound));
        out.push_back(comultiplicativity_suite(sc, bound));
        if (fibre_finite(sc)) out.push_back(psi_suite(sc, bound));
        if (sc.base->one_reduced()) out.push_back(baues_suite(sc, bound));
        out.push_back(degeneracy_suite(sc, bound));
    } else {
        out.push_back(run_one(which));
    }
    return out;
}

}  // namespace sz

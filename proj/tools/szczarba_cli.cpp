#include "szczarba/api.hpp"

#include "szczarba/chains.hpp"
#include "szczarba/szczarba.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>
#include <vector>

using namespace sz;

namespace {

struct Options {
    std::string file;
    std::string suite = "all";
    std::string expr;
    std::string field = "q";
    std::string format = "text";
    int dim = 4;
    int truncation = 5;
    bool twisted = false;
};

Field parse_field(const std::string& s) {
    if (s == "q" || s == "Q") return Field::rationals();
    if (s.rfind("fp:", 0) == 0) {
        try {
            return Field::prime(std::stol(s.substr(3)));
        } catch (const NonField&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("bad field spec '" + s + "'");
        }
    }
    throw ParseError("field must be 'q' or 'fp:<prime>', got '" + s + "'");
}

std::string sigma_or_name(const SimplicialGroup& G, const GroupWord& w) {
    return G.kind() == SimplicialGroup::Kind::Loop ? G.str_sigma(w) : G.str(w);
}

// The fibre is concentrated in degree 0, so the cover filtration applies.
bool fibre_discrete(const Scenario& sc) {
    if (sc.fibre->kind() == Fibre::Kind::Group)
        return sc.group->kind() == SimplicialGroup::Kind::Finite;
    const Presentation& F = *sc.fibre->space_ptr();
    for (int d = 1; d <= F.max_dim(); ++d)
        if (F.num_gens(d) > 0) return false;
    return true;
}

int cmd_check(const Options& opt) {
    Scenario sc = load_scenario(opt.file, opt.truncation);
    std::vector<SuiteOutcome> outcomes = run_suites(sc, opt.suite, opt.dim);
    bool ok = true;
    if (opt.format == "json") {
        Json arr = Json::array();
        for (const auto& o : outcomes) {
            arr.push_back(Json{{"suite", o.suite},
                               {"passed", o.passed},
                               {"checked", o.checked},
                               {"detail", o.detail}});
            ok = ok && o.passed;
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        for (const auto& o : outcomes) {
            if (o.passed) {
                std::cout << "suite " << o.suite << ": PASS (" << o.checked
                          << " checked)\n";
            } else {
                std::cout << "suite " << o.suite << ": FAIL";
                if (!o.detail.empty()) std::cout << " -- " << o.detail;
                std::cout << "\n";
                ok = false;
            }
        }
    }
    return ok ? 0 : 1;
}

// t(<simplex>) | Delta[<simplex>] | psi(<simplex>,<fibre elt>) | Sz((i,...),<simplex>)
int cmd_eval(const Options& opt) {
    Scenario sc = load_scenario(opt.file, opt.truncation);
    const Presentation& P = *sc.base;
    const SimplicialGroup& G = *sc.group;
    std::string e = opt.expr;
    auto strip = [](std::string s) {
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
            s.erase(s.begin());
        while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
        return s;
    };
    e = strip(e);
    auto inner = [&](size_t from, char close) {
        if (e.empty() || e.back() != close)
            throw ParseError("expected trailing '" + std::string(1, close) + "' in '" + e + "'");
        return strip(e.substr(from, e.size() - from - 1));
    };

    if (e.rfind("t(", 0) == 0) {
        Simplex x = P.parse_simplex(inner(2, ')'));
        ChainG v = szczarba_t(*sc.twist, x);
        if (opt.format == "json") {
            Json j = chain_to_json(G, v);
            if (!(group_chain_from_json(G, j) == v))
                throw ValidationError("JSON round trip failed");
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << v.str([&](const GroupWord& w) { return sigma_or_name(G, w); })
                      << "\n";
        }
        return 0;
    }
    if (e.rfind("Delta[", 0) == 0) {
        Simplex x = P.parse_simplex(inner(6, ']'));
        TenOmegaOmega v = cobar_diagonal(P, CobarWord{{x}});
        if (opt.format == "json") {
            Json j = chain_to_json(P, v);
            if (!(cobar_tensor_from_json(P, j) == v))
                throw ValidationError("JSON round trip failed");
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << v.str([&](const Ten<CobarWord, CobarWord>& t) {
                return t.a.str(P) + " (x) " + t.b.str(P);
            }) << "\n";
        }
        return 0;
    }
    if (e.rfind("psi(", 0) == 0) {
        std::string body = inner(4, ')');
        size_t comma = body.rfind(',');
        if (comma == std::string::npos) throw ParseError("psi needs two arguments");
        Simplex x = P.parse_simplex(strip(body.substr(0, comma)));
        std::string ys = strip(body.substr(comma + 1));
        const Fibre& F = *sc.fibre;
        FibreElt y;
        if (F.kind() == Fibre::Kind::Group) {
            int level = 0;  // group words carry their degree as "word@level"
            size_t at = ys.rfind('@');
            if (at != std::string::npos) {
                level = std::stoi(ys.substr(at + 1));
                ys = strip(ys.substr(0, at));
            }
            y = F.elt(G.parse(ys, level));
        } else {
            y = F.elt(F.space_ptr()->parse_simplex(ys));
        }
        TwistedProduct Tp(sc.twist, sc.fibre);
        ChainT v = psi(Tp, x, y);
        if (opt.format == "json") {
            Json j = chain_to_json(Tp, v);
            if (!(twisted_chain_from_json(Tp, j) == v))
                throw ValidationError("JSON round trip failed");
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << v.str([&](const TwistedSimplex& z) { return Tp.str(z); }) << "\n";
        }
        return 0;
    }
    if (e.rfind("Sz(", 0) == 0) {
        std::string body = inner(3, ')');
        if (body.empty() || body.front() != '(')
            throw ParseError("Sz needs an index list, e.g. Sz((0,1), x)");
        size_t close = body.find(')');
        if (close == std::string::npos) throw ParseError("unbalanced index list");
        std::string list = body.substr(1, close - 1);
        std::string rest = strip(body.substr(close + 1));
        if (rest.empty() || rest.front() != ',') throw ParseError("Sz needs a simplex");
        Simplex x = P.parse_simplex(strip(rest.substr(1)));
        std::vector<int> entries;
        std::istringstream is(list);
        std::string tok;
        while (std::getline(is, tok, ','))
            if (!strip(tok).empty()) entries.push_back(std::stoi(strip(tok)));
        IndexSequence i(x.dim() - 1, entries);
        GroupWord w = szczarba_Sz(*sc.twist, i, x);
        if (opt.format == "json") {
            std::cout << Json{{"level", w.level}, {"word", G.str(w)}}.dump(2) << "\n";
        } else {
            std::cout << sigma_or_name(G, w) << "\n";
        }
        return 0;
    }
    throw ParseError("cannot parse expression '" + e +
                     "'; expected t(...), Delta[...], psi(...,...) or Sz((...),...)");
}

int cmd_homology(const Options& opt) {
    Scenario sc = load_scenario(opt.file, opt.truncation);
    FiniteComplex C;
    if (opt.twisted) {
        TwistedTensorComplex T(sc.twist, sc.fibre, opt.dim + 1);
        C = complex_of_twisted_tensor(T, opt.dim + 1);
    } else {
        C = complex_of_presentation(*sc.base, opt.dim + 1);
    }
    if (opt.format == "json") {
        Json arr = Json::array();
        for (int n = 0; n <= opt.dim; ++n) {
            HomologyGroup h = homology(C, n);
            Json tor = Json::array();
            for (const auto& t : h.torsion) tor.push_back(t.str());
            arr.push_back(Json{{"degree", n}, {"betti", h.betti}, {"torsion", tor}});
        }
        std::cout << arr.dump(2) << "\n";
    } else {
        for (int n = 0; n <= opt.dim; ++n)
            std::cout << "H_" << n << " = " << homology(C, n).str() << "\n";
    }
    return 0;
}

int cmd_ss(const Options& opt) {
    Scenario sc = load_scenario(opt.file, opt.truncation);
    Field k = parse_field(opt.field);
    TwistedTensorComplex T(sc.twist, sc.fibre, opt.dim + 1);
    Filtration f;
    std::string which;
    if (fibre_discrete(sc)) {
        AugmentationFiltration af = augmentation_filtration(k, *sc.fibre);
        f = cover_filtration(T, af, opt.dim);
        which = "fibre augmentation";
    } else {
        f = serre_filtration(T, opt.dim);
        which = "base degree";
    }
    SpectralSequence ss = spectral_sequence(k, f);
    if (opt.format == "json") {
        Json pages = Json::array();
        for (const auto& page : ss.pages) {
            Json entries = Json::array();
            for (const auto& [key, e] : page.entries) {
                Json ent{{"s", key.first}, {"n", key.second}, {"rank", e.rank}};
                if (const QMat* d = page.differential(key.first, key.second)) {
                    Json rows = Json::array();
                    for (const auto& row : *d) {
                        Json r = Json::array();
                        for (const auto& x : row) r.push_back(x.str());
                        rows.push_back(r);
                    }
                    ent["d"] = rows;
                }
                entries.push_back(ent);
            }
            pages.push_back(Json{{"r", page.r}, {"entries", entries}});
        }
        std::cout << Json{{"field", k.str()}, {"filtration", which}, {"pages", pages}}.dump(2)
                  << "\n";
    } else {
        std::cout << "filtration: " << which << ", coefficients " << k.str()
                  << ", total degrees 0.." << opt.dim << "\n\n";
        for (const auto& page : ss.pages) std::cout << page.table() << "\n";
        std::cout << "stable page: E^" << ss.pages.back().r << " = E^infinity\n";
        for (int n = 0; n <= f.complex.top_degree(); ++n)
            std::cout << "dim H_" << n << "(total; " << k.str()
                      << ") = " << field_betti(k, f.complex, n) << "\n";
    }
    return 0;
}

int cmd_list_basis(const Options& opt) {
    Scenario sc = load_scenario(opt.file, opt.truncation);
    Json jout = Json::array();
    bool json = opt.format == "json";
    if (fibre_finite(sc)) {
        TwistedTensorComplex T(sc.twist, sc.fibre, opt.dim);
        for (int n = 0; n <= opt.dim; ++n) {
            std::vector<std::string> names;
            for (const auto& z : T.basis(n)) names.push_back(T.str(z));
            if (json) {
                jout.push_back(Json{{"degree", n}, {"basis", names}});
            } else {
                std::cout << "n = " << n << " (" << names.size() << "):";
                for (const auto& s : names) std::cout << " " << s << ";";
                std::cout << "\n";
            }
        }
    } else {
        // infinite-rank fibre: list the base generators only
        for (int n = 0; n <= opt.dim; ++n) {
            std::vector<std::string> names;
            for (const auto& x : sc.base->nondegenerate(n)) names.push_back(sc.base->str(x));
            if (json) {
                jout.push_back(Json{{"degree", n}, {"basis", names}});
            } else {
                std::cout << "n = " << n << " (" << names.size() << "):";
                for (const auto& s : names) std::cout << " " << s << ";";
                std::cout << "\n";
            }
        }
    }
    if (json) std::cout << jout.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Szczarba twisting-cochain calculator"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", opt.file, "presentation file (JSON)")->required();
        sub->add_option("--dim", opt.dim, "dimension bound")->check(CLI::PositiveNumber);
        sub->add_option("--truncation", opt.truncation, "loop-group truncation")
            ->check(CLI::PositiveNumber);
        sub->add_option("--format", opt.format, "text | json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    CLI::App* check = app.add_subcommand("check", "run a verification suite");
    add_common(check);
    check->add_option("suite", opt.suite,
                      "twisting | comultiplicativity | psi-dgc | baues | degeneracies | all");

    CLI::App* eval = app.add_subcommand("eval", "evaluate an expression");
    add_common(eval);
    eval->add_option("expr", opt.expr, "t(x) | Delta[x] | psi(x,y) | Sz((i,..),x)")
        ->required();

    CLI::App* hom = app.add_subcommand("homology", "integer homology");
    add_common(hom);
    hom->add_flag("--twisted", opt.twisted, "homology of the twisted tensor product");

    CLI::App* ss = app.add_subcommand("ss", "spectral sequence pages");
    add_common(ss);
    ss->add_option("--field", opt.field, "q | fp:<prime>");

    CLI::App* lb = app.add_subcommand("list-basis", "basis elements per degree");
    add_common(lb);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(check)) return cmd_check(opt);
        if (app.got_subcommand(eval)) return cmd_eval(opt);
        if (app.got_subcommand(hom)) return cmd_homology(opt);
        if (app.got_subcommand(ss)) return cmd_ss(opt);
        if (app.got_subcommand(lb)) return cmd_list_basis(opt);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

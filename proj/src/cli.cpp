#include "ghost/cli.hpp"

#include "ghost/ext.hpp"
#include "ghost/serialize.hpp"
#include "ghost/theorems.hpp"
#include "ghost/verify.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace ghost {

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Ctx {
    const Workspace* ws;
    const std::vector<std::string>& args;
    const CliOptions& opt;
    std::ostream& out;
    std::ostream& err;

    const Workspace& workspace() const {
        if (!ws) throw InputError("this command needs a workspace (--workspace FILE)");
        return *ws;
    }
    const std::string& arg(std::size_t i) const {
        if (i >= args.size()) throw InputError("missing argument " + std::to_string(i) + " for '" + args[0] + "'");
        return args[i];
    }
    void arity(std::size_t n) const {
        if (args.size() != n + 1)
            throw InputError("'" + args[0] + "' takes " + std::to_string(n) + " argument(s), got " + std::to_string(args.size() - 1));
    }
    long integer(std::size_t i) const {
        const std::string& s = arg(i);
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != s.size() || s.empty()) throw InputError("expected an integer, got '" + s + "'");
        return v;
    }
    Elem elem(std::size_t i) const {
        try {
            return workspace().ring.parse_elem(arg(i));
        } catch (const RingError& e) {
            throw InputError(e.what());
        }
    }
    FpModule module(std::size_t i) const {
        auto it = workspace().modules.find(arg(i));
        if (it == workspace().modules.end()) throw InputError("unknown module '" + arg(i) + "'");
        return it->second;
    }
    Complex complex(std::size_t i) const {
        if (!workspace().has_complex(arg(i))) throw InputError("unknown complex '" + arg(i) + "'");
        return workspace().complex(arg(i));
    }
    ChainMap map(std::size_t i) const {
        auto it = workspace().maps.find(arg(i));
        if (it == workspace().maps.end()) throw InputError("unknown map '" + arg(i) + "'");
        return it->second.map;
    }
};

void write_json(const Ctx& c, const Json& j, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << j.dump(1) << '\n';
    c.out << "wrote " << path << '\n';
}

void maybe_write(const Ctx& c, const Json& j) {
    if (c.opt.out) write_json(c, j, *c.opt.out);
}

void print_cohomology(std::ostream& os, const Complex& X, const std::string& indent = "  ") {
    if (X.empty()) {
        os << indent << "(zero complex)\n";
        return;
    }
    for (int n = X.lo(); n <= X.hi(); ++n) os << indent << "H^" << n << " = " << describe(cohomology(X, n)) << '\n';
}

std::string word(const TowerCertificate& c) {
    std::string s;
    const Ring& R = c.target.ring();
    for (const auto& l : c.expression) {
        if (!s.empty()) s += " ◊ ";
        s += l.kind == Label::Kind::T ? "T_" + R.format(l.r) : "ADD";
    }
    return s.empty() ? "0" : s;
}

int report_tower(const Ctx& c, const std::string& what, const TowerCertificate& t) {
    VerifyResult v = verify_tower(t);
    c.out << what << ": " << word(t) << " (" << t.layers.size() << " layers) " << (v.ok ? "verified" : "REJECTED at " + v.locus)
          << '\n';
    return v.ok ? kOk : kRejected;
}

int cmd_ext(const Ctx& c) {
    c.arity(3);
    long n = c.integer(3);
    if (n < 0) throw InputError("degree must be non-negative");
    ExtResult e = ext(c.module(1), c.module(2), static_cast<int>(n));
    const Ring& R = c.workspace().ring;
    c.out << "Ext^" << n << "(" << c.arg(1) << ", " << c.arg(2) << ") = " << describe(e.group) << '\n';
    c.out << "annihilator = " << R.format(e.annihilator) << '\n';
    return kOk;
}

int cmd_ca_search(const Ctx& c) {
    long nmax = c.integer(1);
    if (nmax < 1) throw InputError("nmax must be at least 1");
    std::vector<FpModule> fam;
    std::vector<std::string> names;
    for (std::size_t i = 2; i < c.args.size(); ++i) {
        fam.push_back(c.module(i));
        names.push_back(c.arg(i));
    }
    if (fam.empty()) throw InputError("ca-search needs at least one module");
    c.out << ca_table_tsv(ca_search(fam, static_cast<int>(nmax)), names);
    return kOk;
}

int cmd_ghost(const Ctx& c) {
    c.arity(1);
    ChainMap f = c.map(1);
    auto g = is_ghost(f);
    if (!g) {
        auto [lo, hi] = std::pair{std::min(f.source.lo(), f.target.lo()), std::max(f.source.hi(), f.target.hi())};
        for (int n = lo; n <= hi; ++n) {
            ModuleMap h = induced_map(f, n);
            if (h.matrix.rows() && h.matrix.cols() && !maps_to_zero(h.target, h.matrix)) {
                c.out << c.arg(1) << " is not a ghost: H^" << n << "(" << c.arg(1) << ") != 0\n";
                break;
            }
        }
        return kRejected;
    }
    VerifyResult v = verify_ghost(*g);
    c.out << c.arg(1) << " is a ghost" << (v.ok ? " (certificate verified)" : " (certificate REJECTED: " + v.locus + ")") << '\n';
    maybe_write(c, to_json(*g));
    return v.ok ? kOk : kRejected;
}

int cmd_tr(const Ctx& c) {
    c.arity(2);
    Complex X = c.complex(1);
    Elem r = c.elem(2);
    const Ring& R = X.ring();
    auto w = tr_member(X, r);
    if (!w) {
        c.out << c.arg(1) << " is not in T_" << R.format(R.reduce(r)) << ": " << R.format(R.reduce(r))
              << ".id has no null-homotopy on a free model\n";
        return kRejected;
    }
    VerifyResult v = verify_tr(*w);
    c.out << c.arg(1) << " is in T_" << R.format(w->r) << " (" << (w->model ? "model-level" : "chain-level") << " witness, "
          << (v.ok ? "verified" : "REJECTED: " + v.locus) << ")\n";
    maybe_write(c, to_json(*w));
    return v.ok ? kOk : kRejected;
}

int cmd_koszul(const Ctx& c) {
    c.arity(2);
    Elem r = c.elem(1);
    Complex X = c.complex(2);
    Koszul k = koszul(r, X);
    VerifyResult v = verify_tr(k.witness);
    c.out << "K(" << X.ring().format(k.witness.r) << ", " << c.arg(2) << "):\n";
    print_cohomology(c.out, k.K);
    c.out << "witness h(y, x) = (0, y): " << (v.ok ? "verified" : "REJECTED: " + v.locus) << '\n';
    maybe_write(c, to_json(k.witness));
    return v.ok ? kOk : kRejected;
}

int cmd_adams(const Ctx& c) {
    c.arity(2);
    Complex X = c.complex(1);
    long n = c.integer(2);
    if (n < 1) throw InputError("n must be at least 1");
    AdamsResult a = adams_triangle(X, static_cast<int>(n));
    c.out << "P (free, " << n << " layers):\n";
    for (const auto& [m, M] : a.P.terms()) c.out << "  degree " << m << ": rank " << M.gens << '\n';
    c.out << "Y:\n";
    print_cohomology(c.out, a.Y);
    for (std::size_t j = 0; j < a.ghost_certs.size(); ++j) {
        VerifyResult v = verify_ghost(a.ghost_certs[j]);
        c.out << "ghost " << j + 1 << ": " << (v.ok ? "verified" : "REJECTED: " + v.locus) << '\n';
        if (!v.ok) return kRejected;
    }
    int rc = report_tower(c, "P", a.pn_cert);
    maybe_write(c, to_json(a.pn_cert));
    return rc;
}

std::string prime_path(const std::string& p) {
    const auto dot = p.rfind(".json");
    return dot == std::string::npos ? p + ".prime" : p.substr(0, dot) + ".prime.json";
}

int cmd_decompose_g(const Ctx& c) {
    c.arity(3);
    Complex X = c.complex(1);
    Elem r = c.elem(2);
    long n = c.integer(3);
    if (n < 1) throw InputError("n must be at least 1");
    GTowers g = decompose_from_G(X, r, static_cast<int>(n));
    int rc = std::max(report_tower(c, "tower", g.d), report_tower(c, "tower", g.d_prime));
    if (c.opt.out) {
        write_json(c, to_json(g.d), *c.opt.out);
        write_json(c, to_json(g.d_prime), prime_path(*c.opt.out));
    }
    return rc;
}

int cmd_decompose_e(const Ctx& c) {
    c.arity(3);
    Complex X = c.complex(1);
    Elem r = c.elem(2);
    long n = c.integer(3);
    if (n < 1) throw InputError("n must be at least 1");
    std::vector<FpModule> fam;
    for (const auto& name : c.opt.family) {
        auto it = c.workspace().modules.find(name);
        if (it == c.workspace().modules.end()) throw InputError("unknown module '" + name + "' in --family");
        fam.push_back(it->second);
    }
    ETower e = decompose_from_E(X, r, static_cast<int>(n), fam);
    if (!fam.empty()) c.out << "family Ext^" << n << " annihilator = " << X.ring().format(e.family_annihilator) << '\n';
    for (const auto& p : e.checked_pieces) c.out << "piece " << p << ": annihilation checked\n";
    int rc = report_tower(c, "tower", e.cert);
    maybe_write(c, to_json(e.cert));
    return rc;
}

int cmd_shuffle(const Ctx& c) {
    c.arity(2);
    const Workspace& ws = c.workspace();
    auto it = ws.triangles.find(c.arg(1));
    if (it == ws.triangles.end()) throw InputError("unknown triangle '" + c.arg(1) + "'");
    Elem r = c.elem(2);
    TriangleCert tri = cone_triangle(ws.maps.at(it->second).map);
    const Ring& R = ws.ring;
    ShuffleResult s;
    std::string side;
    if (auto w = tr_member_chain(tri.f.source, r)) {
        s = shuffle_left(tri, *w);
        side = "left (T first)";
    } else if (auto w2 = tr_member_chain(tri.C, r)) {
        s = shuffle_right(tri, *w2);
        side = "right (T last)";
    } else {
        c.out << "neither end of " << c.arg(1) << " carries a chain-level T_" << R.format(R.reduce(r)) << " witness\n";
        return kRejected;
    }
    VerifyResult vt = verify_triangle(s.tri2), vw = verify_tr(s.w2);
    c.out << "shuffle " << side << ": triangle " << (vt.ok ? "verified" : "REJECTED: " + vt.locus) << ", witness for "
          << R.format(s.w2.r) << " on cone(h) " << (vw.ok ? "verified" : "REJECTED: " + vw.locus) << '\n';
    maybe_write(c, to_json(s.w2));
    return vt.ok && vw.ok ? kOk : kRejected;
}

int cmd_modr_split(const Ctx& c) {
    c.arity(2);
    Complex X = c.complex(1);
    Elem r = c.elem(2);
    ModrSplit s = modr_split(X, r);
    c.out << c.arg(1) << " ⊗ K(" << X.ring().format(X.ring().reduce(r)) << ", Λ)" << (s.via_model ? " (on a free model)" : "") << ":\n";
    print_cohomology(c.out, s.tensor);
    c.out << c.arg(1) << " ⊕ Σ" << c.arg(1) << ":\n";
    print_cohomology(c.out, s.split);
    bool ok = check_modr_split(s);
    c.out << "equivalence " << (ok ? "verified" : "REJECTED") << '\n';
    return ok ? kOk : kRejected;
}

int cmd_dim_bound(const Ctx& c) {
    c.arity(2);
    long level = c.integer(1), n = c.integer(2);
    if (level < 1 || n < 0) throw InputError("need level >= 1 and n >= 0");
    DimBoundCert d = dim_bound_compose({"F", static_cast<int>(level), false, ""}, static_cast<int>(n));
    c.out << "generator " << d.generator << " at level " << d.level << " (assumption recorded)\n";
    maybe_write(c, to_json(d));
    return kOk;
}

int cmd_verify(const Ctx& c) {
    c.arity(1);
    std::ifstream f(c.arg(1));
    if (!f) throw InputError("cannot read '" + c.arg(1) + "'");
    Json j;
    try {
        j = Json::parse(f);
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("invalid JSON: ") + e.what());
    }
    const std::string kind = certificate_kind(j);
    VerifyResult v;
    if (kind == "tower")
        v = verify_tower(tower_from_json(j));
    else if (kind == "ghost")
        v = verify_ghost(ghost_from_json(j));
    else if (kind == "tr")
        v = verify_tr(tr_from_json(j));
    else if (kind == "dim-bound")
        v = dim_bound_from_json(j).level >= 1 ? VerifyResult{} : VerifyResult{false, "level must be positive"};
    else
        throw InputError("unknown certificate kind '" + kind + "'");
    if (v.ok) {
        c.out << "verified (" << kind << ")\n";
        return kOk;
    }
    c.out << "rejected: " << v.locus << '\n';
    return kRejected;
}

}  // namespace

int run_command(const Workspace* ws, const std::vector<std::string>& args, const CliOptions& opt, std::ostream& out,
                std::ostream& err) {
    static const std::map<std::string, std::function<int(const Ctx&)>> table{
        {"ext", cmd_ext},           {"ca-search", cmd_ca_search},     {"ghost", cmd_ghost},
        {"tr", cmd_tr},             {"koszul", cmd_koszul},           {"adams", cmd_adams},
        {"decompose-g", cmd_decompose_g}, {"decompose-e", cmd_decompose_e}, {"shuffle", cmd_shuffle},
        {"modr-split", cmd_modr_split},   {"dim-bound", cmd_dim_bound},     {"verify", cmd_verify}};
    if (args.empty()) {
        err << "error: no command given\n";
        return kInputError;
    }
    auto it = table.find(args[0]);
    if (it == table.end()) {
        err << "error: unknown command '" << args[0] << "'\n";
        return kInputError;
    }
    Ctx c{ws, args, opt, out, err};
    try {
        return it->second(c);
    } catch (const TheoremError& e) {
        if (e.code() == TheoremError::Code::NotAnnihilated || e.code() == TheoremError::Code::NotInTr ||
            e.code() == TheoremError::Code::ZeroDivisor ||
            e.code() == TheoremError::Code::Unverified) {
            out << TheoremError::code_name(e.code()) << ": " << e.what() << '\n';
            return kRejected;
        }
        err << "error: " << TheoremError::code_name(e.code()) << ": " << e.what() << '\n';
        return kInputError;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const SerializeError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const nlohmann::json::exception& e) {
        err << "error: malformed certificate: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

}  // namespace ghost

#include "ghost/workspace.hpp"

#include "ghost/complex.hpp"
#include "ghost/module.hpp"

#include <cctype>
#include <set>
#include <sstream>

namespace ghost {

Complex Workspace::complex(const std::string& name) const {
    if (auto it = complexes.find(name); it != complexes.end()) return it->second;
    if (auto it = modules.find(name); it != modules.end()) return module_complex(it->second, 0);
    throw std::out_of_range("no complex named '" + name + "'");
}

namespace {

struct Pos {
    int line = 1, col = 1;
};

class Parser {
public:
    explicit Parser(std::string_view t) : text_(t) {}

    Workspace run() {
        skip();
        while (!eof()) {
            statement();
            skip();
        }
        return ws_;
    }

private:
    // ---- lexing ----
    bool eof() const { return i_ >= text_.size(); }
    char peek() const { return eof() ? '\0' : text_[i_]; }
    void bump() {
        if (text_[i_] == '\n') {
            ++pos_.line;
            pos_.col = 1;
        } else {
            ++pos_.col;
        }
        ++i_;
    }
    void skip() {
        while (!eof()) {
            char c = peek();
            if (c == '#') {
                while (!eof() && peek() != '\n') bump();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                bump();
            } else {
                break;
            }
        }
    }
    [[noreturn]] void fail(Pos p, const std::string& msg) const { throw WorkspaceError(p.line, p.col, msg); }
    [[noreturn]] void fail(const std::string& msg) const { fail(pos_, msg); }

    void expect(char c) {
        skip();
        if (peek() != c) fail(std::string("expected '") + c + "'" + (eof() ? " before end of input" : std::string(", found '") + peek() + "'"));
        bump();
    }
    bool accept(char c) {
        skip();
        if (peek() != c) return false;
        bump();
        return true;
    }
    void expect_arrow() {
        expect('-');
        if (peek() != '>') fail("expected '->'");
        bump();
    }

    std::string word() {
        skip();
        std::string w;
        if (!std::isalpha(static_cast<unsigned char>(peek())) && peek() != '_') fail("expected a name");
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '\''))
            w += peek(), bump();
        return w;
    }
    void keyword(const char* kw) {
        Pos p = (skip(), pos_);
        std::string w = word();
        if (w != kw) fail(p, std::string("expected '") + kw + "', found '" + w + "'");
    }
    long integer() {
        skip();
        Pos p = pos_;
        std::string s;
        if (peek() == '-' || peek() == '+') s += peek(), bump();
        while (!eof() && std::isdigit(static_cast<unsigned char>(peek()))) s += peek(), bump();
        if (s.empty() || s == "-" || s == "+") fail(p, "expected an integer");
        try {
            return std::stol(s);
        } catch (const std::exception&) {
            fail(p, "integer out of range");
        }
    }
    std::string token() {
        skip();
        std::string s;
        while (!eof() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != '#') s += peek(), bump();
        if (s.empty()) fail("expected a ring descriptor");
        return s;
    }

    Elem element() {
        skip();
        Pos p = pos_;
        std::string s;
        while (!eof() && peek() != ',' && peek() != ']' && peek() != '\n') s += peek(), bump();
        try {
            return ws_.ring.parse_elem(s);
        } catch (const RingError& e) {
            fail(p, e.what());
        }
    }

    // [[a, b], [c, d]] or [] ; `cols` is the width used for an empty matrix.
    Matrix matrix(std::size_t cols) {
        expect('[');
        std::vector<std::vector<Elem>> rows;
        if (!accept(']')) {
            do {
                Pos p = (skip(), pos_);
                expect('[');
                std::vector<Elem> row;
                if (!accept(']')) {
                    do row.push_back(element());
                    while (accept(','));
                    expect(']');
                }
                if (!rows.empty() && row.size() != rows.front().size()) fail(p, "rows of a matrix must have equal length");
                rows.push_back(std::move(row));
            } while (accept(','));
            expect(']');
        }
        if (rows.empty()) return Matrix(0, cols);
        Matrix M(rows.size(), rows.front().size());
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = 0; j < rows[i].size(); ++j) M(i, j) = rows[i][j];
        return M;
    }

    // ---- statements ----
    void bind(Pos p, const std::string& kind, const std::string& name) {
        for (const auto& [k, n] : ws_.order)
            if (n == name) fail(p, "name '" + name + "' is already bound (" + k + ")");
        ws_.order.push_back({kind, name});
    }

    void require_ring(Pos p) {
        if (!ws_.has_ring) fail(p, "no ring declared (expected 'ring <descriptor>' first)");
    }

    FpModule module_body(Pos p) {
        keyword("gens");
        long g = integer();
        if (g < 0) fail(p, "negative generator count");
        keyword("rels");
        Pos mp = (skip(), pos_);
        Matrix rels = matrix(static_cast<std::size_t>(g));
        if (rels.cols() != static_cast<std::size_t>(g))
            fail(mp, "relations have " + std::to_string(rels.cols()) + " columns, expected " + std::to_string(g));
        return FpModule(ws_.ring, static_cast<std::size_t>(g), rels);
    }

    void statement() {
        Pos p = pos_;
        std::string kw = word();
        if (kw == "ring") {
            Pos dp = (skip(), pos_);
            std::string d = token();
            Ring R;
            try {
                R = Ring::parse(d);
            } catch (const RingError& e) {
                fail(dp, e.what());
            }
            if (ws_.has_ring) fail(p, ws_.ring == R ? "ring declared twice" : "ring mismatch: workspace is over " + ws_.ring.to_string());
            ws_.ring = R;
            ws_.has_ring = true;
            return;
        }
        if (kw != "module" && kw != "complex" && kw != "map" && kw != "triangle") fail(p, "unknown statement '" + kw + "'");
        require_ring(p);
        Pos np = (skip(), pos_);
        std::string name = word();
        if (kw == "module") {
            FpModule M = module_body(np);
            bind(np, "module", name);
            ws_.modules[name] = M;
        } else if (kw == "complex") {
            complex_body(np, name);
        } else if (kw == "map") {
            map_body(np, name);
        } else if (kw == "triangle") {
            expect(':');
            keyword("cone");
            Pos mp = (skip(), pos_);
            std::string f = word();
            if (!ws_.maps.count(f)) fail(mp, "unknown map '" + f + "'");
            bind(np, "triangle", name);
            ws_.triangles[name] = f;
        } else {
            fail(p, "unknown statement '" + kw + "'");
        }
    }

    void complex_body(Pos np, const std::string& name) {
        Complex X(ws_.ring);
        std::map<int, std::pair<Pos, Matrix>> diffs;
        expect('{');
        if (!accept('}')) {
            do {
                skip();
                if (peek() == '}') break;
                Pos ip = pos_;
                if (std::isalpha(static_cast<unsigned char>(peek()))) {
                    keyword("diff");
                    int n = static_cast<int>(integer());
                    expect(':');
                    Pos mp = (skip(), pos_);
                    if (diffs.count(n)) fail(ip, "differential in degree " + std::to_string(n) + " given twice");
                    diffs[n] = {mp, matrix(0)};
                } else {
                    int n = static_cast<int>(integer());
                    expect(':');
                    if (X.gens(n)) fail(ip, "term in degree " + std::to_string(n) + " given twice");
                    Pos kp = (skip(), pos_);
                    std::string how = word();
                    if (how == "module") {
                        Pos mp = (skip(), pos_);
                        std::string m = word();
                        auto it = ws_.modules.find(m);
                        if (it == ws_.modules.end()) fail(mp, "unknown module '" + m + "'");
                        X.set_term(n, it->second);
                    } else if (how == "inline") {
                        X.set_term(n, module_body(kp));
                    } else {
                        fail(kp, "expected 'module' or 'inline'");
                    }
                }
            } while (accept(';'));
            expect('}');
        }
        for (auto& [n, pm] : diffs) {
            Matrix d = pm.second;
            if (d.rows() == 0) d = Matrix(X.gens(n), X.gens(n + 1));
            if (d.rows() != X.gens(n) || d.cols() != X.gens(n + 1))
                fail(pm.first, "differential in degree " + std::to_string(n) + " is " + std::to_string(d.rows()) + "x" +
                                   std::to_string(d.cols()) + ", expected " + std::to_string(X.gens(n)) + "x" +
                                   std::to_string(X.gens(n + 1)));
            X.set_diff(n, d);
        }
        std::string bad = complex_failure(X);
        if (!bad.empty()) fail(np, "complex '" + name + "': " + bad);
        bind(np, "complex", name);
        ws_.complexes[name] = X;
    }

    void map_body(Pos np, const std::string& name) {
        expect(':');
        Pos sp = (skip(), pos_);
        std::string s = word();
        expect_arrow();
        Pos tp = (skip(), pos_);
        std::string t = word();
        if (!ws_.has_complex(s)) fail(sp, "unknown complex '" + s + "'");
        if (!ws_.has_complex(t)) fail(tp, "unknown complex '" + t + "'");
        ChainMap f{ws_.complex(s), ws_.complex(t), {}};
        std::set<int> seen;
        expect('{');
        if (!accept('}')) {
            do {
                skip();
                if (peek() == '}') break;
                Pos ip = pos_;
                int n = static_cast<int>(integer());
                expect(':');
                Pos mp = (skip(), pos_);
                Matrix m = matrix(f.target.gens(n));
                if (m.rows() == 0) m = Matrix(f.source.gens(n), f.target.gens(n));
                if (!seen.insert(n).second) fail(ip, "component in degree " + std::to_string(n) + " given twice");
                if (m.rows() != f.source.gens(n) || m.cols() != f.target.gens(n))
                    fail(mp, "component in degree " + std::to_string(n) + " is " + std::to_string(m.rows()) + "x" +
                                 std::to_string(m.cols()) + ", expected " + std::to_string(f.source.gens(n)) + "x" +
                                 std::to_string(f.target.gens(n)));
                ModuleMap mm{f.source.term(n), f.target.term(n), m};
                long k = m.rows() && m.cols() ? ill_defined_relation(mm) : -1;
                if (k >= 0)
                    fail(mp, "map '" + name + "' is ill-defined in degree " + std::to_string(n) + ": relation " +
                                 std::to_string(k) + " of the source is not sent into the target relations");
                f.set(n, m);
            } while (accept(';'));
            expect('}');
        }
        std::string bad = chain_map_failure(f);
        if (!bad.empty()) fail(np, "map '" + name + "': " + bad);
        bind(np, "map", name);
        ws_.maps[name] = {s, t, f};
    }

    std::string_view text_;
    std::size_t i_ = 0;
    Pos pos_;
    Workspace ws_;
};

std::string matrix_text(const Ring& R, const Matrix& M) {
    if (M.rows() == 0) return "[]";
    std::string s = "[";
    for (std::size_t i = 0; i < M.rows(); ++i) {
        s += i ? ", [" : "[";
        for (std::size_t j = 0; j < M.cols(); ++j) s += (j ? ", " : "") + R.format(M(i, j));
        s += "]";
    }
    return s + "]";
}

}  // namespace

Workspace parse_workspace(std::string_view text) { return Parser(text).run(); }

std::string serialize_workspace(const Workspace& ws) {
    std::ostringstream os;
    const Ring& R = ws.ring;
    if (ws.has_ring) os << "ring " << R.to_string() << '\n';
    for (const auto& [kind, name] : ws.order) {
        if (kind == "module") {
            const FpModule& M = ws.modules.at(name);
            os << "module " << name << " gens " << M.gens << " rels " << matrix_text(R, M.rels) << '\n';
        } else if (kind == "complex") {
            const Complex& X = ws.complexes.at(name);
            os << "complex " << name << " {";
            bool first = true;
            for (const auto& [n, M] : X.terms()) {
                os << (first ? " " : " ; ") << n << ": inline gens " << M.gens << " rels " << matrix_text(R, M.rels);
                first = false;
            }
            for (const auto& [n, d] : X.diffs()) {
                os << (first ? " " : " ; ") << "diff " << n << ": " << matrix_text(R, d);
                first = false;
            }
            os << " }\n";
        } else if (kind == "map") {
            const auto& m = ws.maps.at(name);
            os << "map " << name << " : " << m.source << " -> " << m.target << " {";
            bool first = true;
            for (const auto& [n, c] : m.map.comps) {
                os << (first ? " " : " ; ") << n << ": " << matrix_text(R, c);
                first = false;
            }
            os << " }\n";
        } else if (kind == "triangle") {
            os << "triangle " << name << " : cone " << ws.triangles.at(name) << '\n';
        }
    }
    return os.str();
}

}  // namespace ghost

#include "mmiso/io.hpp"

#include <fstream>
#include <sstream>

namespace mmiso {

namespace {

// Whitespace tokenizer that drops '#' comments to end of line.
class Lexer {
public:
    explicit Lexer(std::istream& is) : is_(is) {}

    std::string next() {
        std::string tok;
        for (;;) {
            const int c = is_.get();
            if (c == EOF) {
                if (tok.empty()) throw ParseError("unexpected end of input");
                return tok;
            }
            if (c == '#') {
                while (is_.good() && is_.get() != '\n') {
                }
                if (!tok.empty()) return tok;
                continue;
            }
            if (std::isspace(c)) {
                if (!tok.empty()) return tok;
                continue;
            }
            tok.push_back(static_cast<char>(c));
        }
    }

    void expect(const std::string& keyword) {
        const std::string tok = next();
        if (tok != keyword)
            throw ParseError("expected '" + keyword + "', got '" + tok + "'");
    }

    long integer() {
        const std::string tok = next();
        try {
            std::size_t used = 0;
            const long v = std::stol(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw ParseError("expected an integer, got '" + tok + "'");
        }
    }

    long positive() {
        const long v = integer();
        if (v < 1) throw ParseError("expected a positive count");
        return v;
    }

    FieldSpec field_line() {
        expect("field");
        const std::string kind = next();
        if (kind == "rational") return FieldSpec::rationals();
        if (kind == "gf") {
            const long q = positive();
            try {
                return FieldSpec::prime_field(q);
            } catch (const Error& e) {
                throw ParseError(e.what());
            }
        }
        throw ParseError("unknown field '" + kind + "'");
    }

    Scalar scalar(const FieldSpec& f) { return Scalar::parse(f, next()); }

    Mat matrix_block(const FieldSpec& f) {
        expect("matrix");
        const long rows = positive(), cols = positive();
        Mat m(static_cast<int>(rows), static_cast<int>(cols), f);
        for (long i = 0; i < rows; ++i)
            for (long j = 0; j < cols; ++j)
                m.at(static_cast<int>(i), static_cast<int>(j)) = scalar(f);
        return m;
    }

    bool at_end() {
        for (;;) {
            const int c = is_.peek();
            if (c == EOF) return true;
            if (c == '#') {
                while (is_.good() && is_.get() != '\n') {
                }
                continue;
            }
            if (std::isspace(c)) {
                is_.get();
                continue;
            }
            return false;
        }
    }

private:
    std::istream& is_;
};

Shape shape_of(const Tensor3& t) {
    auto s = t.mmt_shape();
    if (!s) throw Error("tensor dims do not match the <m,n,p> file pattern");
    return *s;
}

} // namespace

void write_field_line(std::ostream& os, const FieldSpec& f) {
    os << "field " << f.str() << '\n';
}

void write_matrix_block(std::ostream& os, const Mat& m) {
    os << "matrix " << m.rows() << ' ' << m.cols() << '\n';
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j)
            os << (j ? " " : "") << m.at(i, j).str();
        os << '\n';
    }
}

void write_tensor(std::ostream& os, const Tensor3& t) {
    const Shape s = shape_of(t);
    os << "tensor " << s.m << ' ' << s.n << ' ' << s.p << '\n';
    write_field_line(os, t.field());
    for (int i = 0; i < s.m; ++i)
        for (int j = 0; j < s.n; ++j)
            for (int j2 = 0; j2 < s.n; ++j2)
                for (int k = 0; k < s.p; ++k)
                    for (int k2 = 0; k2 < s.p; ++k2)
                        for (int i2 = 0; i2 < s.m; ++i2) {
                            const Scalar& v = t.at(i, j, j2, k, k2, i2);
                            if (v.is_zero()) continue;
                            os << i + 1 << ' ' << j + 1 << ' ' << j2 + 1 << ' ' << k + 1 << ' '
                               << k2 + 1 << ' ' << i2 + 1 << ' ' << v.str() << '\n';
                        }
}

Tensor3 read_tensor(std::istream& is) {
    Lexer lex(is);
    lex.expect("tensor");
    Shape s;
    s.m = static_cast<int>(lex.positive());
    s.n = static_cast<int>(lex.positive());
    s.p = static_cast<int>(lex.positive());
    const FieldSpec f = lex.field_line();
    Tensor3 t(mmt_dims(s), f);
    while (!lex.at_end()) {
        const long i = lex.positive(), j = lex.positive(), j2 = lex.positive();
        const long k = lex.positive(), k2 = lex.positive(), i2 = lex.positive();
        if (i > s.m || i2 > s.m || j > s.n || j2 > s.n || k > s.p || k2 > s.p)
            throw ParseError("tensor coefficient index out of range");
        t.at(static_cast<int>(i) - 1, static_cast<int>(j) - 1, static_cast<int>(j2) - 1,
             static_cast<int>(k) - 1, static_cast<int>(k2) - 1, static_cast<int>(i2) - 1) =
            lex.scalar(f);
    }
    return t;
}

void write_decomposition(std::ostream& os, const Decomposition& d) {
    os << "decomposition " << d.shape.m << ' ' << d.shape.n << ' ' << d.shape.p << ' '
       << d.terms.size() << '\n';
    write_field_line(os, d.field);
    for (const RankOneTriple& t : d.terms) {
        write_matrix_block(os, t.u);
        write_matrix_block(os, t.v);
        write_matrix_block(os, t.w);
    }
}

Decomposition read_decomposition(std::istream& is) {
    Lexer lex(is);
    lex.expect("decomposition");
    Decomposition d;
    d.shape.m = static_cast<int>(lex.positive());
    d.shape.n = static_cast<int>(lex.positive());
    d.shape.p = static_cast<int>(lex.positive());
    const long terms = lex.integer();
    if (terms < 0) throw ParseError("negative term count");
    d.field = lex.field_line();
    d.terms.reserve(static_cast<std::size_t>(terms));
    for (long t = 0; t < terms; ++t) {
        Mat u = lex.matrix_block(d.field);
        Mat v = lex.matrix_block(d.field);
        Mat w = lex.matrix_block(d.field);
        d.terms.push_back(RankOneTriple{std::move(u), std::move(v), std::move(w)});
    }
    try {
        d.validate();
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
    return d;
}

void write_element(std::ostream& os, const IsotropyElement& g) {
    os << "element " << g.shape().m << ' ' << g.shape().n << ' ' << g.shape().p << '\n';
    write_field_line(os, g.field());
    os << "perm " << perm_name(g.perm()) << '\n';
    write_matrix_block(os, g.a());
    write_matrix_block(os, g.b());
    write_matrix_block(os, g.c());
}

IsotropyElement read_element(std::istream& is) {
    Lexer lex(is);
    lex.expect("element");
    Shape s;
    s.m = static_cast<int>(lex.positive());
    s.n = static_cast<int>(lex.positive());
    s.p = static_cast<int>(lex.positive());
    const FieldSpec f = lex.field_line();
    lex.expect("perm");
    const std::string pname = lex.next();
    const auto pi = perm_from_name(pname);
    if (!pi) throw ParseError("unknown permutation '" + pname + "'");
    Mat a = lex.matrix_block(f);
    Mat b = lex.matrix_block(f);
    Mat c = lex.matrix_block(f);
    try {
        return IsotropyElement(s, *pi, std::move(a), std::move(b), std::move(c));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

void write_linmap(std::ostream& os, const LinMap& m) {
    os << "linmap " << m.cod().rows << ' ' << m.cod().cols << ' ' << m.dom().rows << ' '
       << m.dom().cols << '\n';
    write_field_line(os, m.field());
    write_matrix_block(os, m.action());
}

LinMap read_linmap(std::istream& is) {
    Lexer lex(is);
    lex.expect("linmap");
    FactorDims cod, dom;
    cod.rows = static_cast<int>(lex.positive());
    cod.cols = static_cast<int>(lex.positive());
    dom.rows = static_cast<int>(lex.positive());
    dom.cols = static_cast<int>(lex.positive());
    const FieldSpec f = lex.field_line();
    Mat action = lex.matrix_block(f);
    try {
        return LinMap(dom, cod, std::move(action));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

void write_bilinear(std::ostream& os, const BilinearMap& f) {
    os << "bilinear " << f.zdims().dim() << ' ' << f.xdims().dim() << ' ' << f.ydims().dim()
       << '\n';
    write_field_line(os, f.field());
    for (int zi = 0; zi < f.zdims().dim(); ++zi) {
        os << "matrix " << f.xdims().dim() << ' ' << f.ydims().dim() << '\n';
        for (int xi = 0; xi < f.xdims().dim(); ++xi) {
            for (int yi = 0; yi < f.ydims().dim(); ++yi)
                os << (yi ? " " : "") << f.coeff(zi, xi, yi).str();
            os << '\n';
        }
    }
}

BilinearMap read_bilinear(std::istream& is, FactorDims xshape, FactorDims yshape,
                          FactorDims zshape) {
    Lexer lex(is);
    lex.expect("bilinear");
    const int zdim = static_cast<int>(lex.positive());
    const int xdim = static_cast<int>(lex.positive());
    const int ydim = static_cast<int>(lex.positive());
    const FieldSpec f = lex.field_line();
    if (xshape.dim() == 0) xshape = FactorDims{xdim, 1};
    if (yshape.dim() == 0) yshape = FactorDims{ydim, 1};
    if (zshape.dim() == 0) zshape = FactorDims{zdim, 1};
    if (xshape.dim() != xdim || yshape.dim() != ydim || zshape.dim() != zdim)
        throw ParseError("bilinear dims do not match the given space shapes");
    BilinearMap out(xshape, yshape, zshape, f);
    for (int zi = 0; zi < zdim; ++zi) {
        Mat block = lex.matrix_block(f);
        if (block.rows() != xdim || block.cols() != ydim)
            throw ParseError("bilinear block has wrong size");
        for (int xi = 0; xi < xdim; ++xi)
            for (int yi = 0; yi < ydim; ++yi)
                out.coeff(zi, xi, yi) = block.at(xi, yi);
    }
    return out;
}

void write_stabilizer(std::ostream& os, const StabilizerResult& s) {
    os << "stabilizer " << s.order << '\n';
    for (const IsotropyElement& g : s.elements) write_element(os, g);
}

StabilizerResult read_stabilizer(std::istream& is) {
    // Element blocks are self-delimiting, so re-lex each one from the stream.
    Lexer lex(is);
    lex.expect("stabilizer");
    const long order = lex.integer();
    if (order < 0) throw ParseError("negative stabilizer order");
    StabilizerResult out;
    out.order = static_cast<std::uint64_t>(order);
    out.elements.reserve(static_cast<std::size_t>(order));
    for (long i = 0; i < order; ++i) out.elements.push_back(read_element(is));
    out.closed = false; // closure is a computed property, not a stored one
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path + "'");
    out << content;
}

namespace {

template <typename T, typename Reader>
T read_from_file(const std::string& path, Reader&& reader) {
    std::istringstream is(read_text_file(path));
    try {
        return reader(is);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

} // namespace

Tensor3 read_tensor_file(const std::string& path) {
    return read_from_file<Tensor3>(path, [](std::istream& is) { return read_tensor(is); });
}

Decomposition read_decomposition_file(const std::string& path) {
    return read_from_file<Decomposition>(path,
                                         [](std::istream& is) { return read_decomposition(is); });
}

IsotropyElement read_element_file(const std::string& path) {
    return read_from_file<IsotropyElement>(path,
                                           [](std::istream& is) { return read_element(is); });
}

LinMap read_linmap_file(const std::string& path) {
    return read_from_file<LinMap>(path, [](std::istream& is) { return read_linmap(is); });
}

StabilizerResult read_stabilizer_file(const std::string& path) {
    return read_from_file<StabilizerResult>(
        path, [](std::istream& is) { return read_stabilizer(is); });
}

namespace {

template <typename T, typename Writer>
std::string to_string_impl(const T& value, Writer&& writer) {
    std::ostringstream os;
    writer(os, value);
    return os.str();
}

} // namespace

std::string tensor_to_string(const Tensor3& t) {
    return to_string_impl(t, [](std::ostream& os, const Tensor3& v) { write_tensor(os, v); });
}

std::string decomposition_to_string(const Decomposition& d) {
    return to_string_impl(
        d, [](std::ostream& os, const Decomposition& v) { write_decomposition(os, v); });
}

std::string element_to_string(const IsotropyElement& g) {
    return to_string_impl(
        g, [](std::ostream& os, const IsotropyElement& v) { write_element(os, v); });
}

std::string linmap_to_string(const LinMap& m) {
    return to_string_impl(m, [](std::ostream& os, const LinMap& v) { write_linmap(os, v); });
}

std::string stabilizer_to_string(const StabilizerResult& s) {
    return to_string_impl(
        s, [](std::ostream& os, const StabilizerResult& v) { write_stabilizer(os, v); });
}

} // namespace mmiso

#include <cnc/io.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <sstream>
#include <vector>

namespace cnc {

namespace {

struct Token {
    std::string_view text;
    std::size_t column;  // 1-based
};

std::vector<Token> split_tokens(std::string_view line) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        if (i > start) {
            tokens.push_back({line.substr(start, i - start), start + 1});
        }
    }
    return tokens;
}

std::optional<std::uint64_t> to_uint(std::string_view s, int base = 10) {
    if (base == 16 && (s.starts_with("0x") || s.starts_with("0X"))) {
        s.remove_prefix(2);
    }
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v, base);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        return std::nullopt;
    }
    return v;
}

std::string_view strip_comment(std::string_view line) {
    const auto hash = line.find('#');
    return hash == std::string_view::npos ? line : line.substr(0, hash);
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto nl = text.find('\n', start);
        const std::size_t end = nl == std::string_view::npos ? text.size() : nl;
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        lines.push_back(line);
        if (nl == std::string_view::npos) {
            break;
        }
        start = nl + 1;
    }
    return lines;
}

// Recursive-descent parser for the series grammar. Columns are reported
// relative to `column_offset`.
class SeriesParser {
public:
    SeriesParser(std::string_view text, const Field& field, std::size_t line, std::size_t column_offset)
        : text_(text), field_(field), line_(line), offset_(column_offset) {}

    RationalSeries parse() {
        skip_ws();
        bool parenthesized = false;
        std::size_t terms = 0;
        Polynomial num(field_);
        if (peek() == '(') {
            ++pos_;
            num = parse_sum(terms);
            expect(')');
            parenthesized = true;
        } else {
            num = parse_sum(terms);
        }
        skip_ws();
        Polynomial den = Polynomial::constant(field_, 1);
        if (peek() == '/') {
            const std::size_t slash = pos_;
            if (!parenthesized && terms > 1) {
                fail(slash, "parenthesize a multi-term numerator before '/'");
            }
            ++pos_;
            skip_ws();
            expect('(');
            std::size_t den_terms = 0;
            den = parse_sum(den_terms);
            expect(')');
            if (den.is_zero()) {
                fail(slash, "zero denominator");
            }
        }
        skip_ws();
        if (pos_ != text_.size()) {
            fail(pos_, "unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        const RationalFunction f(num, den);
        auto series = RationalSeries::from_function(f);
        if (!series) {
            fail(0, "denominator with zero constant term: not a rational power series");
        }
        return *series;
    }

private:
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
    }

    [[noreturn]] void fail(std::size_t at, const std::string& what) const {
        throw ParseError(line_, offset_ + at, what);
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) {
            fail(pos_, std::string("expected '") + c + "'");
        }
        ++pos_;
    }

    std::uint64_t parse_uint() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
        }
        const auto v = to_uint(text_.substr(start, pos_ - start));
        if (!v) {
            fail(start, "expected an integer");
        }
        return *v;
    }

    Polynomial parse_term() {
        skip_ws();
        const std::size_t start = pos_;
        std::uint64_t coeff = 1;
        bool have_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(peek()))) {
            coeff = parse_uint();
            have_coeff = true;
            if (coeff >= field_.order()) {
                fail(start, std::to_string(coeff) + " is not an element of " + field_.name());
            }
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                skip_ws();
                if (peek() != 'z') {
                    fail(pos_, "expected 'z' after '*'");
                }
            }
        }
        std::size_t power = 0;
        if (peek() == 'z') {
            ++pos_;
            power = 1;
            skip_ws();
            if (peek() == '^') {
                ++pos_;
                skip_ws();
                const std::uint64_t k = parse_uint();
                if (k > 4096) {
                    fail(start, "exponent too large");
                }
                power = static_cast<std::size_t>(k);
            }
        } else if (!have_coeff) {
            fail(start, "expected a term");
        }
        return Polynomial::monomial(field_, static_cast<Elem>(coeff), power);
    }

    Polynomial parse_sum(std::size_t& terms) {
        skip_ws();
        bool negate = false;
        if (peek() == '+' || peek() == '-') {
            negate = peek() == '-';
            ++pos_;
        }
        Polynomial acc = parse_term();
        if (negate) {
            acc = -acc;
        }
        terms = 1;
        for (;;) {
            skip_ws();
            const char op = peek();
            if (op != '+' && op != '-') {
                return acc;
            }
            ++pos_;
            const Polynomial t = parse_term();
            acc = op == '+' ? acc + t : acc - t;
            ++terms;
        }
    }

    std::string_view text_;
    const Field& field_;
    std::size_t line_;
    std::size_t offset_;
    std::size_t pos_ = 0;
};

std::string term_text(Elem c, std::size_t k) {
    if (k == 0) {
        return std::to_string(c);
    }
    const std::string z = k == 1 ? "z" : "z^" + std::to_string(k);
    return c == 1 ? z : std::to_string(c) + z;
}

Field parse_field_at(const std::vector<Token>& tokens, std::size_t first, std::size_t line) {
    if (first >= tokens.size()) {
        throw ParseError(line, 1, "missing field declaration");
    }
    const Token& t = tokens[first];
    const std::string_view s = t.text;
    if (!s.starts_with("GF(") || !s.ends_with(")")) {
        throw ParseError(line, t.column, "unknown field '" + std::string(s) + "'");
    }
    const std::string_view inner = s.substr(3, s.size() - 4);
    std::optional<Field> field;
    try {
        if (inner.starts_with("2^")) {
            const auto m = to_uint(inner.substr(2));
            if (!m) {
                throw ParseError(line, t.column, "unknown field '" + std::string(s) + "'");
            }
            std::optional<std::uint64_t> poly;
            if (first + 1 < tokens.size()) {
                if (tokens[first + 1].text != "poly" || first + 2 >= tokens.size()) {
                    throw ParseError(line, tokens[first + 1].column, "expected 'poly <hex>'");
                }
                poly = to_uint(tokens[first + 2].text, 16);
                if (!poly || *poly > 0xFFFFFFFFu) {
                    throw ParseError(line, tokens[first + 2].column, "bad reduction polynomial");
                }
                if (first + 3 < tokens.size()) {
                    throw ParseError(line, tokens[first + 3].column, "trailing tokens");
                }
            }
            field = poly ? Field::binary(static_cast<unsigned>(*m), static_cast<std::uint32_t>(*poly))
                         : Field::binary(static_cast<unsigned>(*m));
        } else {
            const auto q = to_uint(inner);
            if (!q || *q > 0xFFFFFFFFu) {
                throw ParseError(line, t.column, "unknown field '" + std::string(s) + "'");
            }
            if (first + 1 < tokens.size()) {
                throw ParseError(line, tokens[first + 1].column, "trailing tokens");
            }
            field = Field::of_order(static_cast<std::uint32_t>(*q));
        }
    } catch (const FieldError& e) {
        throw ParseError(line, t.column, "unknown field '" + std::string(s) + "': " + e.what());
    }
    return *field;
}

}  // namespace

Field parse_field(std::string_view text) { return parse_field_at(split_tokens(text), 0, 1); }

std::string format_field(const Field& field) {
    const FieldSpec& s = field.spec();
    if (s.kind == FieldKind::prime) {
        return "GF(" + std::to_string(s.modulus) + ")";
    }
    std::string out = "GF(2^" + std::to_string(s.degree) + ")";
    if (s.modulus != Field::default_polynomial(s.degree)) {
        std::ostringstream hex;
        hex << std::hex << s.modulus;
        out += " poly 0x" + hex.str();
    }
    return out;
}

RationalSeries parse_series(std::string_view text, const Field& field) {
    return SeriesParser(text, field, 1, 1).parse();
}

std::string format_polynomial(const Polynomial& p) {
    if (p.is_zero()) {
        return "0";
    }
    std::string out;
    for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
        if (p.coeff(k) == 0) {
            continue;
        }
        if (!out.empty()) {
            out += '+';
        }
        out += term_text(p.coeff(k), k);
    }
    return out;
}

std::string format_series(const RationalSeries& s) {
    const std::string num = format_polynomial(s.numerator());
    if (s.is_polynomial()) {
        return num;
    }
    const bool multi = std::count_if(s.numerator().coeffs().begin(), s.numerator().coeffs().end(),
                                     [](Elem c) { return c != 0; }) > 1;
    return (multi ? "(" + num + ")" : num) + "/(" + format_polynomial(s.denominator()) + ")";
}

// ---------------------------------------------------------------------------

CncDocument parse_document(std::string_view text) {
    std::optional<Field> field;
    std::optional<std::size_t> omega;
    std::vector<std::string> nodes;
    std::optional<std::size_t> source;
    std::vector<Channel> channels;
    std::vector<std::size_t> sinks;
    std::map<ChannelPair, RationalSeries> leks;
    std::map<ChannelPair, std::size_t> lek_lines;
    std::vector<std::tuple<std::size_t, std::size_t, Elem>> injections;
    std::size_t inject_line = 0;
    std::map<std::size_t, std::vector<Elem>> inputs;

    auto node_index = [&](const Token& t, std::size_t line) {
        const auto it = std::find(nodes.begin(), nodes.end(), t.text);
        if (it == nodes.end()) {
            throw ParseError(line, t.column, "unknown node '" + std::string(t.text) + "'");
        }
        return static_cast<std::size_t>(it - nodes.begin());
    };
    auto channel_index = [&](const Token& t, std::size_t line) {
        const auto it = std::find_if(channels.begin(), channels.end(), [&](const Channel& c) { return c.id == t.text; });
        if (it == channels.end()) {
            throw ParseError(line, t.column, "unknown channel '" + std::string(t.text) + "'");
        }
        return static_cast<std::size_t>(it - channels.begin());
    };
    auto need_field = [&](const Token& t, std::size_t line) -> const Field& {
        if (!field) {
            throw ParseError(line, t.column, "'" + std::string(t.text) + "' before the field declaration");
        }
        return *field;
    };
    auto need_omega = [&](const Token& t, std::size_t line) {
        if (!omega) {
            throw ParseError(line, t.column, "'" + std::string(t.text) + "' before the omega declaration");
        }
        return *omega;
    };
    auto parse_elem = [&](const Token& t, std::size_t line) {
        const auto v = to_uint(t.text);
        if (!v || *v >= field->order()) {
            throw ParseError(line, t.column, "'" + std::string(t.text) + "' is not an element of " + field->name());
        }
        return static_cast<Elem>(*v);
    };

    const auto lines = split_lines(text);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const std::size_t line = li + 1;
        const std::string_view body = strip_comment(lines[li]);
        const auto tokens = split_tokens(body);
        if (tokens.empty()) {
            continue;
        }
        const Token& kw = tokens[0];
        auto arity = [&](std::size_t n) {
            if (tokens.size() != n) {
                throw ParseError(line, kw.column,
                                 "'" + std::string(kw.text) + "' expects " + std::to_string(n - 1) + " arguments");
            }
        };

        if (kw.text == "field") {
            if (field) {
                throw ParseError(line, kw.column, "field declared twice");
            }
            field = parse_field_at(tokens, 1, line);
        } else if (kw.text == "omega") {
            arity(2);
            const auto v = to_uint(tokens[1].text);
            if (!v || *v == 0) {
                throw ParseError(line, tokens[1].column, "omega must be a positive integer");
            }
            omega = static_cast<std::size_t>(*v);
        } else if (kw.text == "node") {
            if (tokens.size() < 2) {
                throw ParseError(line, kw.column, "'node' expects at least one name");
            }
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                if (std::find(nodes.begin(), nodes.end(), tokens[i].text) != nodes.end()) {
                    throw ParseError(line, tokens[i].column, "duplicate node '" + std::string(tokens[i].text) + "'");
                }
                nodes.emplace_back(tokens[i].text);
            }
        } else if (kw.text == "source") {
            arity(2);
            source = node_index(tokens[1], line);
        } else if (kw.text == "chan") {
            arity(4);
            const std::string id(tokens[1].text);
            if (std::any_of(channels.begin(), channels.end(), [&](const Channel& c) { return c.id == id; })) {
                throw ParseError(line, tokens[1].column, "duplicate channel '" + id + "'");
            }
            const std::size_t tail = node_index(tokens[2], line);
            const std::size_t head = node_index(tokens[3], line);
            if (tail == head) {
                throw ParseError(line, tokens[3].column, "channel '" + id + "' is a self-loop");
            }
            channels.push_back({id, tail, head});
        } else if (kw.text == "sink") {
            if (tokens.size() < 2) {
                throw ParseError(line, kw.column, "'sink' expects at least one node");
            }
            for (std::size_t i = 1; i < tokens.size(); ++i) {
                const std::size_t s = node_index(tokens[i], line);
                if (std::find(sinks.begin(), sinks.end(), s) != sinks.end()) {
                    throw ParseError(line, tokens[i].column, "duplicate sink");
                }
                sinks.push_back(s);
            }
        } else if (kw.text == "lek") {
            const Field& f = need_field(kw, line);
            if (tokens.size() < 5 || tokens[3].text != "=") {
                throw ParseError(line, kw.column, "expected 'lek <d> <e> = <series>'");
            }
            const std::size_t d = channel_index(tokens[1], line);
            const std::size_t e = channel_index(tokens[2], line);
            if (channels[d].head != channels[e].tail) {
                throw ParseError(line, tokens[1].column,
                                 "(" + channels[d].id + ", " + channels[e].id + ") is not an adjacent pair");
            }
            if (lek_lines.contains({d, e})) {
                throw ParseError(line, kw.column, "local kernel for (" + channels[d].id + ", " + channels[e].id +
                                                      ") already given on line " +
                                                      std::to_string(lek_lines.at({d, e})));
            }
            const std::size_t expr_col = tokens[4].column;
            const std::string_view expr = body.substr(expr_col - 1);
            leks.emplace(ChannelPair{d, e}, SeriesParser(expr, f, line, expr_col).parse());
            lek_lines.emplace(ChannelPair{d, e}, line);
        } else if (kw.text == "inject") {
            need_field(kw, line);
            const std::size_t w = need_omega(kw, line);
            arity(5);
            if (tokens[3].text != "=") {
                throw ParseError(line, tokens[3].column, "expected '='");
            }
            const auto i = to_uint(tokens[1].text);
            if (!i || *i < 1 || *i > w) {
                throw ParseError(line, tokens[1].column, "source symbol index must lie in 1..omega");
            }
            const std::size_t e = channel_index(tokens[2], line);
            injections.emplace_back(static_cast<std::size_t>(*i - 1), e, parse_elem(tokens[4], line));
            inject_line = line;
        } else if (kw.text == "input") {
            need_field(kw, line);
            const std::size_t w = need_omega(kw, line);
            if (tokens.size() != 3 + w || tokens[2].text != "=" || !tokens[1].text.starts_with("t")) {
                throw ParseError(line, kw.column, "expected 'input t<k> = ' followed by omega symbols");
            }
            const auto slot = to_uint(tokens[1].text.substr(1));
            if (!slot || *slot > 1'000'000) {
                throw ParseError(line, tokens[1].column, "bad slot '" + std::string(tokens[1].text) + "'");
            }
            std::vector<Elem> x;
            for (std::size_t i = 3; i < tokens.size(); ++i) {
                x.push_back(parse_elem(tokens[i], line));
            }
            if (!inputs.emplace(static_cast<std::size_t>(*slot), std::move(x)).second) {
                throw ParseError(line, tokens[1].column, "slot given twice");
            }
        } else {
            throw ParseError(line, kw.column, "unknown directive '" + std::string(kw.text) + "'");
        }
    }

    const std::size_t last = lines.size();
    if (!field) {
        throw ParseError(last, 1, "missing 'field' declaration");
    }
    if (!omega) {
        throw ParseError(last, 1, "missing 'omega' declaration");
    }
    if (!source) {
        throw ParseError(last, 1, "missing 'source' declaration");
    }
    std::optional<FieldMatrix> hs;
    if (!injections.empty()) {
        hs = FieldMatrix(*field, *omega, channels.size());
        for (const auto& [i, e, v] : injections) {
            (*hs)(i, e) = v;
        }
        if (rank(*hs) < *omega) {
            throw ParseError(inject_line, 1, "rank(H_s) = " + std::to_string(rank(*hs)) + " < omega");
        }
    } else if (channels.size() < *omega) {
        throw ParseError(last, 1, "default H_s = [I_omega 0] needs at least omega channels");
    }

    std::optional<FieldMatrix> input;
    if (!inputs.empty()) {
        input = FieldMatrix(*field, inputs.rbegin()->first + 1, *omega);
        for (const auto& [t, x] : inputs) {
            std::copy(x.begin(), x.end(), input->row(t).begin());
        }
    }

    try {
        NetworkGraph graph(std::move(nodes), std::move(channels), *source, *omega, std::move(sinks));
        return {CncInstance(std::move(graph), *field, std::move(leks), std::move(hs)), std::move(input)};
    } catch (const Error& e) {
        throw ParseError(last, 1, e.what());
    }
}

std::string render_document(const CncInstance& c, const std::optional<FieldMatrix>& input) {
    const NetworkGraph& g = c.graph();
    std::ostringstream out;
    out << "field " << format_field(c.field()) << '\n';
    out << "omega " << c.omega() << '\n';
    for (const std::string& n : g.nodes()) {
        out << "node " << n << '\n';
    }
    out << "source " << g.nodes()[g.source()] << '\n';
    for (const Channel& ch : g.channels()) {
        out << "chan " << ch.id << ' ' << g.nodes()[ch.tail] << ' ' << g.nodes()[ch.head] << '\n';
    }
    for (std::size_t s : g.sinks()) {
        out << "sink " << g.nodes()[s] << '\n';
    }
    for (const auto& [pair, kernel] : c.leks()) {
        out << "lek " << g.channels()[pair.first].id << ' ' << g.channels()[pair.second].id << " = "
            << format_series(kernel) << '\n';
    }
    if (!(c.hs() == default_injection(c.field(), c.omega(), c.channel_count()))) {
        for (std::size_t i = 0; i < c.omega(); ++i) {
            for (std::size_t e = 0; e < c.channel_count(); ++e) {
                if (c.hs()(i, e) != 0) {
                    out << "inject " << i + 1 << ' ' << g.channels()[e].id << " = " << c.hs()(i, e) << '\n';
                }
            }
        }
    }
    if (input) {
        out << format_input_lines(*input);
    }
    return out.str();
}

std::string format_input_lines(const FieldMatrix& x, std::size_t first_slot, std::string_view prefix) {
    std::ostringstream out;
    for (std::size_t t = 0; t < x.rows(); ++t) {
        out << prefix << "input t" << first_slot + t << " =";
        for (Elem v : x.row(t)) {
            out << ' ' << v;
        }
        out << '\n';
    }
    return out.str();
}

std::string format_stream(const SymbolStream& s, const CncInstance& c) {
    std::ostringstream out;
    for (std::size_t t = 0; t <= s.horizon(); ++t) {
        out << t << " |";
        for (std::size_t e = 0; e < c.channel_count(); ++e) {
            out << ' ' << c.graph().channels()[e].id << ':' << s.channels(t, e);
        }
        out << '\n';
    }
    return out.str();
}

FieldMatrix parse_stream(std::string_view text, const CncInstance& c) {
    const std::size_t n = c.channel_count();
    std::vector<std::vector<Elem>> rows;
    const auto lines = split_lines(text);
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const std::size_t line = li + 1;
        const auto tokens = split_tokens(strip_comment(lines[li]));
        if (tokens.empty()) {
            continue;
        }
        const auto t = to_uint(tokens[0].text);
        if (!t || *t != rows.size()) {
            throw ParseError(line, tokens[0].column, "expected slot " + std::to_string(rows.size()));
        }
        if (tokens.size() < 2 || tokens[1].text != "|") {
            throw ParseError(line, tokens[0].column, "expected '|' after the slot number");
        }
        std::vector<Elem> row(n, 0);
        std::vector<bool> seen(n, false);
        for (std::size_t i = 2; i < tokens.size(); ++i) {
            const auto colon = tokens[i].text.rfind(':');
            if (colon == std::string_view::npos) {
                throw ParseError(line, tokens[i].column, "expected '<channel>:<symbol>'");
            }
            const auto e = c.graph().find_channel(std::string(tokens[i].text.substr(0, colon)));
            if (!e) {
                throw ParseError(line, tokens[i].column, "unknown channel");
            }
            const auto v = to_uint(tokens[i].text.substr(colon + 1));
            if (!v || *v >= c.field().order()) {
                throw ParseError(line, tokens[i].column, "symbol is not an element of " + c.field().name());
            }
            if (seen[*e]) {
                throw ParseError(line, tokens[i].column, "channel listed twice");
            }
            seen[*e] = true;
            row[*e] = static_cast<Elem>(*v);
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
            throw ParseError(line, 1, "slot does not list every channel");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw ParseError(lines.size(), 1, "empty stream");
    }
    FieldMatrix m(c.field(), rows.size(), n);
    for (std::size_t t = 0; t < rows.size(); ++t) {
        std::copy(rows[t].begin(), rows[t].end(), m.row(t).begin());
    }
    return m;
}

std::string format_matrix(const FieldMatrix& m) {
    std::string out = "[";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        if (r > 0) {
            out += ';';
        }
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (c > 0) {
                out += ' ';
            }
            out += std::to_string(m(r, c));
        }
    }
    return out + "]";
}

}  // namespace cnc

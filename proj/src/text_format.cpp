#include "memdp/text_format.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace memdp {

namespace {

enum class Tok { Word, Arrow, Comma, LBrace, RBrace, LParen, RParen, Equals, Colon, End };

struct Token {
    Tok kind;
    std::string text;
    SourceLocation where;
};

std::string describe(const Token& t) {
    switch (t.kind) {
        case Tok::Word: return "'" + t.text + "'";
        case Tok::End: return "end of input";
        default: return "'" + t.text + "'";
    }
}

bool word_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '\'' || c == '/' || c == '-';
}

void lex_line(std::string_view line, std::size_t lineno, std::vector<Token>& out) {
    std::size_t i = 0;
    while (i < line.size()) {
        const char c = line[i];
        const SourceLocation at{lineno, i + 1};
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        if (c == '-' && i + 1 < line.size() && line[i + 1] == '>') {
            out.push_back({Tok::Arrow, "->", at});
            i += 2;
            continue;
        }
        Tok single = Tok::End;
        switch (c) {
            case ',': single = Tok::Comma; break;
            case '{': single = Tok::LBrace; break;
            case '}': single = Tok::RBrace; break;
            case '(': single = Tok::LParen; break;
            case ')': single = Tok::RParen; break;
            case '=': single = Tok::Equals; break;
            case ':': single = Tok::Colon; break;
            default: break;
        }
        if (single != Tok::End) {
            out.push_back({single, std::string(1, c), at});
            ++i;
            continue;
        }
        if (!word_char(c)) throw Error(Errc::SyntaxError, std::string("unexpected character '") + c + "'", at);
        std::size_t j = i;
        while (j < line.size() && word_char(line[j]) && !(line[j] == '-' && j + 1 < line.size() && line[j + 1] == '>')) ++j;
        out.push_back({Tok::Word, std::string(line.substr(i, j - i)), at});
        i = j;
    }
}

std::vector<std::string_view> split_lines(std::string_view src) {
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= src.size()) {
        std::size_t end = src.find('\n', start);
        if (end == std::string_view::npos) end = src.size();
        std::string_view line = src.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        start = end + 1;
    }
    return lines;
}

bool is_identifier(std::string_view s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    return std::all_of(s.begin(), s.end(), [](char c) { return word_char(c) && c != '/'; });
}

bool is_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

Rational parse_probability(const Token& t) {
    const auto slash = t.text.find('/');
    const std::string num = t.text.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : t.text.substr(slash + 1);
    if (t.kind != Tok::Word || !is_digits(num) || !is_digits(den))
        throw Error(Errc::SyntaxError, "expected a probability like 1/2, found " + describe(t), t.where);
    const boost::multiprecision::cpp_int d(den);
    if (d == 0) throw Error(Errc::SyntaxError, "zero denominator in probability", t.where);
    return Rational(boost::multiprecision::cpp_int(num), d);
}

class Cursor {
public:
    Cursor(std::vector<Token> tokens, SourceLocation end) : tokens_(std::move(tokens)) {
        tokens_.push_back({Tok::End, "", end});
    }

    const Token& peek() const { return tokens_[pos_]; }
    bool at(Tok k) const { return peek().kind == k; }
    const Token& take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    const Token& expect(Tok k, const char* what) {
        if (!at(k)) throw Error(Errc::SyntaxError, std::string("expected ") + what + ", found " + describe(peek()), peek().where);
        return take();
    }

    const Token& expect_word(const char* what) { return expect(Tok::Word, what); }

    const Token& expect_identifier(const char* what) {
        const Token& t = expect_word(what);
        if (!is_identifier(t.text))
            throw Error(Errc::SyntaxError, std::string("expected ") + what + ", found " + describe(t), t.where);
        return t;
    }

    void expect_end() { expect(Tok::End, "end of line"); }

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace

RawModel parse_model_raw(std::string_view src) {
    RawModel raw;
    bool seen_name = false, seen_envs = false, seen_states = false, seen_actions = false, seen_initial = false;
    const auto lines = split_lines(src);

    auto once = [](bool& flag, const Token& kw) {
        if (flag) throw Error(Errc::SyntaxError, "duplicate '" + kw.text + "' line", kw.where);
        flag = true;
    };

    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        std::vector<Token> tokens;
        lex_line(lines[ln], ln + 1, tokens);
        if (tokens.empty()) continue;
        Cursor cur(std::move(tokens), SourceLocation{ln + 1, lines[ln].size() + 1});
        const Token first = cur.peek();
        const bool header = first.kind == Tok::Word && (first.text == "memdp" || first.text == "environments" ||
                                                        first.text == "states" || first.text == "actions" ||
                                                        first.text == "initial");
        if (header && !raw.envs.empty())
            throw Error(Errc::SyntaxError, "'" + first.text + "' must come before the first env block", first.where);
        if (first.kind == Tok::Word && first.text == "memdp") {
            once(seen_name, cur.take());
            raw.name = cur.expect_identifier("model name").text;
            cur.expect_end();
        } else if (first.kind == Tok::Word && first.text == "environments") {
            once(seen_envs, cur.take());
            const Token& k = cur.expect_word("environment count");
            if (!is_digits(k.text) || k.text.size() > 9)
                throw Error(Errc::SyntaxError, "expected environment count, found " + describe(k), k.where);
            raw.declared_envs = std::stoul(k.text);
            raw.envs_where = first.where;
            cur.expect_end();
        } else if (first.kind == Tok::Word && (first.text == "states" || first.text == "actions")) {
            const bool states = first.text == "states";
            once(states ? seen_states : seen_actions, cur.take());
            auto& decls = states ? raw.states : raw.actions;
            do {
                const Token& t = cur.expect_identifier(states ? "state name" : "action name");
                decls.push_back(RawDecl{t.text, t.where});
                if (cur.at(Tok::Comma)) cur.take();
            } while (!cur.at(Tok::End));
        } else if (first.kind == Tok::Word && first.text == "initial") {
            once(seen_initial, cur.take());
            const Token& t = cur.expect_identifier("initial state");
            raw.initial = RawDecl{t.text, t.where};
            cur.expect_end();
        } else if (first.kind == Tok::Word && first.text == "env") {
            cur.take();
            const Token& t = cur.expect_word("environment name");
            raw.envs.push_back(RawEnv{t.text, {}, first.where});
            cur.expect_end();
        } else {
            if (raw.envs.empty())
                throw Error(Errc::SyntaxError, "expected a header line or 'env', found " + describe(first), first.where);
            RawRow row;
            row.where = first.where;
            row.state = cur.expect_identifier("source state").text;
            row.action = cur.expect_identifier("action").text;
            cur.expect(Tok::Arrow, "'->'");
            for (;;) {
                const Token& t = cur.expect_identifier("target state");
                RawTarget target{t.text, 0, t.where};
                target.prob = parse_probability(cur.take());
                row.targets.push_back(std::move(target));
                if (cur.at(Tok::End)) break;
                cur.expect(Tok::Comma, "',' or end of line");
            }
            raw.envs.back().rows.push_back(std::move(row));
        }
    }

    const SourceLocation eof{lines.size(), 1};
    if (!seen_envs) throw Error(Errc::SyntaxError, "missing 'environments' line", eof);
    if (!seen_states) throw Error(Errc::SyntaxError, "missing 'states' line", eof);
    if (!seen_actions) throw Error(Errc::SyntaxError, "missing 'actions' line", eof);
    if (!seen_initial) throw Error(Errc::SyntaxError, "missing 'initial' line", eof);
    if (raw.envs.empty()) raw.envs_where = eof;
    return raw;
}

Memdp parse_model(std::string_view src) { return validate_memdp(parse_model_raw(src)); }

std::string print_model(const Memdp& m) {
    std::ostringstream out;
    out << "memdp " << m.names().model << "\n";
    out << "environments " << m.num_envs() << "\n";
    out << "states";
    for (const auto& s : m.names().states) out << ' ' << s;
    out << "\nactions";
    for (const auto& a : m.names().actions) out << ' ' << a;
    out << "\ninitial " << m.state_name(m.initial()) << "\n";
    for (EnvId e = 0; e < m.num_envs(); ++e) {
        out << "env " << m.env_name(e) << "\n";
        for (StateId s = 0; s < m.num_states(); ++s)
            for (const auto& c : m.choices(e, s)) {
                out << m.state_name(s) << ' ' << m.action_name(c.action) << " ->";
                bool first = true;
                for (const auto& entry : c.dist.entries()) {
                    out << (first ? " " : ", ") << m.state_name(entry.target) << ' ' << entry.prob.str();
                    first = false;
                }
                out << "\n";
            }
    }
    return out.str();
}

namespace {

StateSet parse_set(Cursor& cur, const Memdp& m) {
    StateSet set(m.num_states());
    cur.expect(Tok::LBrace, "'{'");
    while (!cur.at(Tok::RBrace)) {
        const Token& t = cur.expect_word("state name or '}'");
        const auto s = m.find_state(t.text);
        if (!s) throw Error(Errc::UnknownState, "unknown state '" + t.text + "'", t.where);
        set.set(*s);
        if (cur.at(Tok::Comma)) cur.take();
    }
    cur.take();
    return set;
}

}  // namespace

ObjectiveSpec parse_objective(std::string_view src, const Memdp& m) {
    const auto lines = split_lines(src);
    std::vector<Token> tokens;
    for (std::size_t ln = 0; ln < lines.size(); ++ln) lex_line(lines[ln], ln + 1, tokens);
    Cursor cur(std::move(tokens), SourceLocation{lines.size(), lines.back().size() + 1});
    const Token kw = cur.expect_word("objective kind");
    ObjectiveSpec spec;
    if (kw.text == "reach") {
        spec = Reach{parse_set(cur, m)};
    } else if (kw.text == "safety") {
        spec = Safety{parse_set(cur, m)};
    } else if (kw.text == "buchi") {
        spec = Buchi{parse_set(cur, m)};
    } else if (kw.text == "cobuchi") {
        spec = CoBuchi{parse_set(cur, m)};
    } else if (kw.text == "parity") {
        Parity p{std::vector<unsigned>(m.num_states(), 0)};
        while (!cur.at(Tok::End)) {
            const Token& t = cur.expect_word("state name");
            const auto s = m.find_state(t.text);
            if (!s) throw Error(Errc::UnknownState, "unknown state '" + t.text + "'", t.where);
            cur.expect(Tok::Colon, "':'");
            const Token& k = cur.expect_word("priority");
            if (!is_digits(k.text) || k.text.size() > 6)
                throw Error(Errc::SyntaxError, "expected priority, found " + describe(k), k.where);
            p.priority[*s] = static_cast<unsigned>(std::stoul(k.text));
            if (cur.at(Tok::Comma)) cur.take();
        }
        spec = std::move(p);
    } else if (kw.text == "rabin") {
        RabinObjective phi;
        do {
            const Token open = cur.expect(Tok::LParen, "'('");
            const Token& b = cur.expect_word("'B'");
            if (b.text != "B") throw Error(Errc::SyntaxError, "expected 'B', found " + describe(b), b.where);
            cur.expect(Tok::Equals, "'='");
            StateSet bs = parse_set(cur, m);
            const Token& c = cur.expect_word("'C'");
            if (c.text != "C") throw Error(Errc::SyntaxError, "expected 'C', found " + describe(c), c.where);
            cur.expect(Tok::Equals, "'='");
            StateSet cs = parse_set(cur, m);
            cur.expect(Tok::RParen, "')'");
            if (!cs.is_subset_of(bs))
                throw Error(Errc::BadRabinPair, "pair " + std::to_string(phi.pairs.size() + 1) + " violates C ⊆ B",
                            open.where);
            phi.pairs.push_back(RabinPair{std::move(bs), std::move(cs)});
        } while (cur.at(Tok::LParen));
        spec = Rabin{std::move(phi)};
    } else {
        throw Error(Errc::SyntaxError, "unknown objective kind " + describe(kw), kw.where);
    }
    cur.expect(Tok::End, "end of objective");
    return spec;
}

std::string print_rabin(const RabinObjective& phi, const Memdp& m) {
    auto set = [&](const StateSet& s) {
        std::string out = "{";
        bool first = true;
        for (StateId x : members(s)) {
            if (!first) out += " ";
            out += m.state_name(x);
            first = false;
        }
        return out + "}";
    };
    std::string out = "rabin";
    for (const auto& p : phi.pairs) out += " (B=" + set(p.b) + " C=" + set(p.c) + ")";
    return out;
}

}  // namespace memdp

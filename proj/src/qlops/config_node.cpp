#include "qlops/config_node.hpp"
#include "qlops/errors.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace qlops::cfg {

namespace {

struct Token {
    std::string text;
    int line = 0;
    bool quoted = false;

    bool is(char c) const { return !quoted && text.size() == 1 && text[0] == c; }
    bool is_punct() const { return is('{') || is('}') || is('[') || is(']'); }
};

[[noreturn]] void fail(const std::string& origin, int line, const std::string& message)
{
    throw ParseError(origin + ":" + std::to_string(line) + ": " + message);
}

std::vector<Token> tokenize(std::string_view text, const std::string& origin)
{
    std::vector<Token> tokens;
    int line = 1;
    size_t i = 0;
    const size_t n = text.size();
    while (i < n) {
        const char c = text[i];
        if (c == '\n') {
            ++line;
            ++i;
        } else if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '#') {
            while (i < n && text[i] != '\n')
                ++i;
        } else if (c == '"') {
            std::string value;
            ++i;
            while (i < n && text[i] != '"') {
                if (text[i] == '\n')
                    fail(origin, line, "unterminated string");
                value += text[i++];
            }
            if (i >= n)
                fail(origin, line, "unterminated string");
            ++i;
            tokens.push_back({value, line, true});
        } else if (c == '{' || c == '}' || c == '[' || c == ']') {
            tokens.push_back({std::string(1, c), line, false});
            ++i;
        } else {
            std::string word;
            while (i < n) {
                const char w = text[i];
                if (std::isspace(static_cast<unsigned char>(w)) || w == '{' || w == '}' ||
                    w == '[' || w == ']' || w == '#')
                    break;
                word += w;
                ++i;
            }
            tokens.push_back({word, line, false});
        }
    }
    return tokens;
}

Node scalar_from(const Token& token)
{
    if (token.quoted)
        return Node(token.text);
    if (token.text == "true")
        return Node(true);
    if (token.text == "false")
        return Node(false);
    char* end = nullptr;
    const double value = std::strtod(token.text.c_str(), &end);
    if (!token.text.empty() && end != nullptr && *end == '\0') {
        // Keep exact integers integral so counts survive round-trips.
        const long long as_int = static_cast<long long>(value);
        if (static_cast<double>(as_int) == value &&
            token.text.find_first_not_of("-0123456789") == std::string::npos)
            return Node(as_int);
        return Node(value);
    }
    return Node(token.text);
}

// Grammar: block = '{' { key value } '}' with value one of scalar,
// '['scalars']' or a nested block.  Whitespace (including newlines) only
// separates tokens.
class Parser {
public:
    Parser(std::vector<Token> tokens, std::string origin)
        : tokens_(std::move(tokens)), origin_(std::move(origin)) {}

    Node parse_block(bool top_level)
    {
        Node object = Node::object();
        while (true) {
            if (at_end()) {
                if (!top_level)
                    fail(origin_, last_line(), "missing '}'");
                return object;
            }
            if (peek().is('}')) {
                if (top_level)
                    fail(origin_, peek().line, "unmatched '}'");
                advance();
                return object;
            }
            parse_entry(object);
        }
    }

private:
    const Token& peek() const { return tokens_[pos_]; }
    const Token& advance() { return tokens_[pos_++]; }
    bool at_end() const { return pos_ >= tokens_.size(); }
    int last_line() const { return tokens_.empty() ? 1 : tokens_.back().line; }

    void parse_entry(Node& object)
    {
        const Token key = advance();
        if (key.is_punct())
            fail(origin_, key.line, "expected a key, got '" + key.text + "'");
        if (object.contains(key.text))
            fail(origin_, key.line, "duplicate key '" + key.text + "'");
        if (at_end())
            fail(origin_, key.line, "key '" + key.text + "' has no value");

        const Token& next = peek();
        if (next.is('{')) {
            advance();
            object[key.text] = parse_block(false);
        } else if (next.is('[')) {
            advance();
            object[key.text] = parse_list(key);
        } else if (next.is_punct()) {
            fail(origin_, key.line, "key '" + key.text + "' has no value");
        } else {
            object[key.text] = scalar_from(advance());
        }
    }

    Node parse_list(const Token& key)
    {
        Node list = Node::array();
        while (true) {
            if (at_end())
                fail(origin_, key.line, "missing ']' for key '" + key.text + "'");
            const Token& token = peek();
            if (token.is(']')) {
                advance();
                return list;
            }
            if (token.is_punct())
                fail(origin_, token.line, "lists may only contain scalars");
            list.push_back(scalar_from(advance()));
        }
    }

    std::vector<Token> tokens_;
    std::string origin_;
    size_t pos_ = 0;
};

} // namespace

Node parse_text(std::string_view text, const std::string& origin)
{
    Parser parser(tokenize(text, origin), origin);
    return parser.parse_block(true);
}

Node parse_document(std::string_view text, const std::string& origin)
{
    size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i])))
        ++i;
    if (i < text.size() && (text[i] == '{' || text[i] == '[')) {
        try {
            return Node::parse(text);
        } catch (const nlohmann::json::parse_error& error) {
            throw ParseError(origin + ": " + error.what());
        }
    }
    return parse_text(text, origin);
}

Node load_document(const std::string& path)
{
    std::ifstream stream(path, std::ios::binary);
    if (!stream)
        throw IoError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return parse_document(buffer.str(), path);
}

} // namespace qlops::cfg

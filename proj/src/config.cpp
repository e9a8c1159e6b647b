#include "paretoflow/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "paretoflow/pareto.hpp"

namespace paretoflow {

namespace {

class LineParser {
public:
    LineParser(const std::string& text, std::size_t line) : s_(text), line_(line) {}

    [[noreturn]] void fail(const std::string& what) const {
        throw invalid_input("config line " + std::to_string(line_) + ": " + what);
    }

    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '#') {
            while (pos_ < s_.size() && s_[pos_] != '\n') ++pos_;
            skip_ws();
        }
    }

    bool at_end() {
        skip_ws();
        return pos_ >= s_.size();
    }

    bool consume(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::vector<std::string> key_path() {
        std::vector<std::string> path;
        do {
            skip_ws();
            if (pos_ < s_.size() && (s_[pos_] == '"' || s_[pos_] == '\'')) {
                path.push_back(string_value());
                continue;
            }
            const std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' || s_[pos_] == '-')) ++pos_;
            if (start == pos_) fail("expected a key");
            path.push_back(s_.substr(start, pos_ - start));
        } while (consume('.'));
        return path;
    }

    nlohmann::json value() {
        skip_ws();
        if (pos_ >= s_.size()) fail("missing value");
        const char c = s_[pos_];
        if (c == '"' || c == '\'') return string_value();
        if (c == '[') return array_value();
        if (s_.compare(pos_, 4, "true") == 0) {
            pos_ += 4;
            return true;
        }
        if (s_.compare(pos_, 5, "false") == 0) {
            pos_ += 5;
            return false;
        }
        return number_value();
    }

private:
    std::string string_value() {
        const char quote = s_[pos_++];
        std::string out;
        while (pos_ < s_.size() && s_[pos_] != quote) {
            char c = s_[pos_++];
            if (quote == '"' && c == '\\') {
                if (pos_ >= s_.size()) fail("unterminated escape");
                const char e = s_[pos_++];
                switch (e) {
                    case 'n': c = '\n'; break;
                    case 't': c = '\t'; break;
                    case 'r': c = '\r'; break;
                    case '"': c = '"'; break;
                    case '\\': c = '\\'; break;
                    default: fail(std::string("unsupported escape \\") + e);
                }
            }
            out.push_back(c);
        }
        if (pos_ >= s_.size()) fail("unterminated string");
        ++pos_;
        return out;
    }

    nlohmann::json array_value() {
        ++pos_;
        nlohmann::json arr = nlohmann::json::array();
        while (true) {
            if (consume(']')) return arr;
            arr.push_back(value());
            if (consume(']')) return arr;
            if (!consume(',')) fail("expected ',' or ']' in array");
        }
    }

    nlohmann::json number_value() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '+' || s_[pos_] == '-' ||
                                    s_[pos_] == '.' || s_[pos_] == '_')) {
            ++pos_;
        }
        std::string tok;
        for (std::size_t i = start; i < pos_; ++i) {
            if (s_[i] != '_') tok.push_back(s_[i]);
        }
        if (tok.empty()) fail("expected a value");
        if (tok == "inf" || tok == "+inf") return std::numeric_limits<double>::infinity();
        if (tok == "-inf") return -std::numeric_limits<double>::infinity();
        const bool is_float = tok.find_first_of(".eE") != std::string::npos;
        const char* first = tok.data() + (tok[0] == '+' ? 1 : 0);
        const char* last = tok.data() + tok.size();
        if (!is_float) {
            std::int64_t v = 0;
            auto [p, ec] = std::from_chars(first, last, v);
            if (ec == std::errc() && p == last) return v;
        } else {
            double v = 0;
            auto [p, ec] = std::from_chars(first, last, v);
            if (ec == std::errc() && p == last) return v;
        }
        fail("cannot parse value '" + tok + "'");
    }

    const std::string& s_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

nlohmann::json& descend(nlohmann::json& root, const std::vector<std::string>& path, std::size_t count, std::size_t line) {
    nlohmann::json* node = &root;
    for (std::size_t i = 0; i < count; ++i) {
        auto& next = (*node)[path[i]];
        if (next.is_null()) next = nlohmann::json::object();
        if (!next.is_object()) {
            throw invalid_input("config line " + std::to_string(line) + ": '" + path[i] + "' is not a table");
        }
        node = &next;
    }
    return *node;
}

// Brackets still open outside strings, so arrays may span lines.
int bracket_balance(const std::string& text) {
    int depth = 0;
    char quote = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (quote) {
            if (c == '\\' && quote == '"') ++i;
            else if (c == quote) quote = 0;
        } else if (c == '"' || c == '\'') {
            quote = c;
        } else if (c == '#') {
            while (i < text.size() && text[i] != '\n') ++i;
        } else if (c == '[') {
            ++depth;
        } else if (c == ']') {
            --depth;
        }
    }
    return depth;
}

std::string format_scalar(const nlohmann::json& v) {
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (std::isinf(d)) return d > 0 ? "inf" : "-inf";
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", d);
        std::string s = buf;
        if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
        return s;
    }
    if (v.is_array()) {
        std::string s = "[";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ", ";
            s += format_scalar(v[i]);
        }
        return s + "]";
    }
    if (v.is_object() || v.is_null()) throw invalid_input("value cannot be written as a TOML scalar");
    return v.dump();
}

void write_table(std::ostringstream& out, const nlohmann::json& table, const std::string& prefix) {
    for (const auto& [key, v] : table.items()) {
        if (v.is_null()) continue;
        if (!v.is_object()) out << key << " = " << format_scalar(v) << '\n';
    }
    for (const auto& [key, v] : table.items()) {
        if (!v.is_object()) continue;
        const std::string path = prefix.empty() ? key : prefix + "." + key;
        out << "\n[" << path << "]\n";
        write_table(out, v, path);
    }
}

}  // namespace

nlohmann::json parse_toml(const std::string& text) {
    nlohmann::json root = nlohmann::json::object();
    std::vector<std::string> table;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t start_line = line_no;
        while (bracket_balance(line) > 0 && line.find('=') != std::string::npos) {
            std::string more;
            if (!std::getline(in, more)) break;
            ++line_no;
            line += "\n" + more;
        }
        LineParser p(line, start_line);
        if (p.at_end()) continue;
        if (p.consume('[')) {
            table = p.key_path();
            if (!p.consume(']')) p.fail("expected ']' after table name");
            if (!p.at_end()) p.fail("trailing characters after table header");
            descend(root, table, table.size(), start_line);
            continue;
        }
        const auto key = p.key_path();
        if (!p.consume('=')) p.fail("expected '='");
        auto value = p.value();
        if (!p.at_end()) p.fail("trailing characters after value");
        auto& node = descend(descend(root, table, table.size(), start_line), key, key.size() - 1, start_line);
        if (node.contains(key.back())) p.fail("duplicate key '" + key.back() + "'");
        node[key.back()] = std::move(value);
    }
    return root;
}

std::string to_toml(const nlohmann::json& doc) {
    if (!doc.is_object()) throw invalid_input("TOML documents must be tables");
    std::ostringstream out;
    write_table(out, doc, "");
    return out.str();
}

nlohmann::json load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) return nlohmann::json::parse(buf.str());
    return parse_toml(buf.str());
}

}  // namespace paretoflow

#pragma once

// Flat key=value run configuration. Precedence is CLI flag > config file
// > built-in default; merging happens in the front end.

#include <cctype>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace energia {

struct RunConfig {
    double tol = 1e-8;  // quadrature relative tolerance
    int panels = 60;    // tail panel budget
    int grid = 2001;    // default transform grid size
};

class ConfigParseError : public std::runtime_error {
public:
    ConfigParseError(int line, const std::string& what)
        : std::runtime_error("config line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace detail

inline RunConfig load_config(std::istream& in, RunConfig base = {}) {
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') continue;  // section headers are cosmetic
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigParseError(lineno, "expected key=value, got \"" + t + "\"");
        const std::string key = detail::trim(t.substr(0, eq));
        const std::string value = detail::trim(t.substr(eq + 1));
        try {
            std::size_t used = 0;
            if (key == "tol") {
                base.tol = std::stod(value, &used);
                if (used != value.size() || !(base.tol > 0.0)) throw std::invalid_argument(value);
            } else if (key == "panels") {
                base.panels = std::stoi(value, &used);
                if (used != value.size() || base.panels < 1) throw std::invalid_argument(value);
            } else if (key == "grid") {
                base.grid = std::stoi(value, &used);
                if (used != value.size() || base.grid < 2) throw std::invalid_argument(value);
            } else {
                throw ConfigParseError(lineno, "unknown key \"" + key + "\"");
            }
        } catch (const ConfigParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigParseError(lineno, "bad value for \"" + key + "\": \"" + value + "\"");
        }
    }
    return base;
}

inline RunConfig load_config(const std::string& path, RunConfig base = {}) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    return load_config(in, base);
}

}  // namespace energia

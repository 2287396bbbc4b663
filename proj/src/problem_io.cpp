#include "semisep/problem_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "semisep/errors.hpp"

namespace semisep {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Strips "# ..." comments, trims, returns empty for blank lines.
std::string clean_line(const std::string& raw) {
    const auto hash = raw.find('#');
    return trim(hash == std::string::npos ? raw : raw.substr(0, hash));
}

double parse_double(const std::string& tok, int line) {
    double v = 0.0;
    const char* b = tok.data();
    const char* e = b + tok.size();
    const auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e)
        throw ParseError(line, "expected a number, got '" + tok + "'");
    return v;
}

long parse_int(const std::string& tok, int line) {
    long v = 0;
    const char* b = tok.data();
    const char* e = b + tok.size();
    const auto res = std::from_chars(b, e, v);
    if (res.ec != std::errc() || res.ptr != e)
        throw ParseError(line, "expected an integer, got '" + tok + "'");
    return v;
}

std::vector<double> parse_comma_list(const std::string& tok, int line) {
    std::vector<double> out;
    size_t pos = 0;
    while (pos <= tok.size()) {
        const size_t comma = tok.find(',', pos);
        const std::string piece =
            trim(comma == std::string::npos ? tok.substr(pos) : tok.substr(pos, comma - pos));
        if (piece.empty()) throw ParseError(line, "empty entry in comma-separated list");
        out.push_back(parse_double(piece, line));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError(0, "cannot open '" + path + "' for reading");
    return f;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw ParseError(0, "cannot open '" + path + "' for writing");
    return f;
}

} // namespace

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

ExponentialKernelSpec read_problem(std::istream& in) {
    long n = -1, p = -1;
    double d = 0.0;
    bool have_d = false;
    std::vector<double> alpha, beta;
    bool have_alpha = false, have_beta = false;

    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = clean_line(raw);
        if (s.empty()) continue;

        const auto sp = s.find_first_of(" \t");
        const std::string key = sp == std::string::npos ? s : s.substr(0, sp);
        const std::string rest = sp == std::string::npos ? "" : trim(s.substr(sp + 1));

        if (key == "n") {
            n = parse_int(rest, line);
        } else if (key == "p") {
            p = parse_int(rest, line);
        } else if (key == "d") {
            d = parse_double(rest, line);
            have_d = true;
        } else if (key == "alpha") {
            alpha = parse_comma_list(rest, line);
            have_alpha = true;
        } else if (key == "beta") {
            beta = parse_comma_list(rest, line);
            have_beta = true;
        } else if (key == "t") {
            if (!rest.empty()) throw ParseError(line, "'t' marker takes no value on its line");
            if (n < 1) throw ParseError(line, "'t' block requires 'n' to be declared first");
            if (p < 1) throw ParseError(line, "'t' block requires 'p' to be declared first");
            if (!have_d) throw ParseError(line, "'t' block requires 'd' to be declared first");
            if (!have_alpha || !have_beta)
                throw ParseError(line, "'t' block requires 'alpha' and 'beta' first");
            if (alpha.size() != static_cast<size_t>(p))
                throw ParseError(line, "alpha has " + std::to_string(alpha.size()) +
                                           " entries, expected p=" + std::to_string(p));
            if (beta.size() != static_cast<size_t>(p))
                throw ParseError(line, "beta has " + std::to_string(beta.size()) +
                                           " entries, expected p=" + std::to_string(p));

            std::vector<double> t;
            t.reserve(static_cast<size_t>(n));
            while (static_cast<long>(t.size()) < n) {
                if (!std::getline(in, raw))
                    throw ParseError(line, "end of file inside 't' block: got " +
                                               std::to_string(t.size()) + " of " +
                                               std::to_string(n) + " values");
                ++line;
                const std::string v = clean_line(raw);
                if (v.empty()) continue;
                t.push_back(parse_double(v, line));
            }
            // Let the spec constructor do semantic validation, but report it
            // as a parse failure of this file.
            try {
                return ExponentialKernelSpec(static_cast<int>(n), static_cast<int>(p), d,
                                             std::move(alpha), std::move(beta), std::move(t));
            } catch (const std::invalid_argument& ex) {
                throw ParseError(line, std::string("invalid problem: ") + ex.what());
            }
        } else {
            throw ParseError(line, "unknown key '" + key + "'");
        }
    }
    throw ParseError(line, "missing 't' block");
}

ExponentialKernelSpec read_problem_file(const std::string& path) {
    auto f = open_in(path);
    try {
        return read_problem(f);
    } catch (const ParseError& ex) {
        throw ParseError(ex.line(), path + ":" + std::to_string(ex.line()) + ": " + ex.what());
    }
}

void write_problem(std::ostream& out, const ExponentialKernelSpec& s) {
    out << "n " << s.n << "\n";
    out << "p " << s.p << "\n";
    out << "d " << format_double(s.d) << "\n";
    out << "alpha ";
    for (int l = 0; l < s.p; ++l) out << (l ? "," : "") << format_double(s.alpha[static_cast<size_t>(l)]);
    out << "\n";
    out << "beta ";
    for (int l = 0; l < s.p; ++l) out << (l ? "," : "") << format_double(s.beta[static_cast<size_t>(l)]);
    out << "\n";
    out << "t\n";
    for (int i = 0; i < s.n; ++i) out << format_double(s.t[static_cast<size_t>(i)]) << "\n";
}

void write_problem_file(const std::string& path, const ExponentialKernelSpec& s) {
    auto f = open_out(path);
    write_problem(f, s);
}

std::vector<double> read_vector(std::istream& in) {
    std::vector<double> out;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string s = clean_line(raw);
        if (s.empty()) continue;
        out.push_back(parse_double(s, line));
    }
    return out;
}

std::vector<double> read_vector_file(const std::string& path) {
    auto f = open_in(path);
    try {
        return read_vector(f);
    } catch (const ParseError& ex) {
        throw ParseError(ex.line(), path + ":" + std::to_string(ex.line()) + ": " + ex.what());
    }
}

void write_vector(std::ostream& out, std::span<const double> v) {
    for (const double x : v) out << format_double(x) << "\n";
}

void write_vector_file(const std::string& path, std::span<const double> v) {
    auto f = open_out(path);
    write_vector(f, v);
}

} // namespace semisep

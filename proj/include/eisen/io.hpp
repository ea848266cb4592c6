#pragma once

// Run configuration, canonical serialization and flat-file output helpers
// for the command-line tool.

#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "eisen/degeneration.hpp"
#include "eisen/eisenstein.hpp"
#include "eisen/hyperbolic.hpp"

namespace eisen::io {

// A configuration problem; `field` is "section.key" when one is to blame.
struct config_error : std::runtime_error {
    config_error(std::string field_, const std::string& what)
        : std::runtime_error(field_.empty() ? what : field_ + ": " + what), field(std::move(field_))
    {
    }
    std::string field;
};

// Shortest form that reads back to the same double.
inline std::string num(double x)
{
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    for (int p = 15; p <= 17; ++p) {
        std::snprintf(buf, sizeof buf, "%.*g", p, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

inline std::string format_complex(cplx z)
{
    const std::string im = num(z.imag());
    return num(z.real()) + (im.front() == '-' ? "" : "+") + im + "j";
}

inline double parse_double(const std::string& text, const std::string& field)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw config_error(field, "expected a number, got '" + text + "'");
    }
    if (used != text.size()) throw config_error(field, "trailing characters in '" + text + "'");
    return v;
}

namespace detail {

inline std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream in(s);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(trim(item));
    if (!s.empty() && s.back() == ',') out.push_back("");
    return out;
}

}  // namespace detail

// "3", "2.5-1j", "1+2j", "-0.5j".
inline cplx parse_complex(const std::string& raw, const std::string& field)
{
    const std::string t = detail::trim(raw);
    if (t.empty()) throw config_error(field, "empty complex value");
    if (t.back() != 'j') return {parse_double(t, field), 0.0};
    const std::string body = t.substr(0, t.size() - 1);
    // Split at the last sign that is not part of an exponent.
    std::size_t cut = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            cut = i;
            break;
        }
    }
    if (cut == std::string::npos) return {0.0, parse_double(body, field)};
    return {parse_double(body.substr(0, cut), field), parse_double(body.substr(cut), field)};
}

inline std::vector<double> parse_reals(const std::string& s, const std::string& field)
{
    std::vector<double> out;
    for (const std::string& item : detail::split(s)) out.push_back(parse_double(item, field));
    if (out.empty()) throw config_error(field, "empty list");
    return out;
}

inline std::vector<cplx> parse_complexes(const std::string& s, const std::string& field)
{
    std::vector<cplx> out;
    for (const std::string& item : detail::split(s)) out.push_back(parse_complex(item, field));
    if (out.empty()) throw config_error(field, "empty list");
    return out;
}

inline bool parse_bool(const std::string& s, const std::string& field)
{
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw config_error(field, "expected true or false, got '" + s + "'");
}

struct RunConfig {
    // [family]
    std::string family = "punctured-torus";  // punctured-torus | thrice-punctured-sphere | cyclic-hyperbolic | cyclic-parabolic
    std::vector<double> ell{1.0};            // punctured-torus lengths
    double translation = 1.0;                // cyclic groups: length or width of the generator

    // [series]
    std::vector<cplx> s{cplx(3.0)};
    std::string word = "A";
    double epsilon = 1e-6;                   // tail target when T0 is not set
    std::optional<double> T0;
    double y0 = 10.0;
    double omega = 2.0;
    double radius_safety = 0.9;

    // [point]
    bool tracked = true;
    UHPoint z = tracked_point();
    UHPoint w{0.0, 1.0};                     // second point for lattice counts

    // [count]
    std::vector<double> T{1.0, 2.0, 3.0, 4.0, 5.0};

    // [sweep]
    std::vector<double> sweep_ell = default_sweep_ells();
    std::vector<double> count_grid{1.0, 2.0, 3.0, 4.0, 5.0};
    double de_h = 1e-3;
    bool with_de = true;
    double cross_tolerance = 0.05;

    // [enumeration]
    std::size_t max_depth = std::size_t{1} << 20;
    double prune_slack = 1e-9;

    // [run]
    std::uint64_t seed = 20240611;
    bool allow_incomplete = false;

    // [output]
    std::string prefix = "eisen";
};

inline std::string point_string(const UHPoint& p) { return format_complex(cplx(p.x(), p.y())); }

inline UHPoint parse_point(const std::string& s, const std::string& field)
{
    const cplx c = parse_complex(s, field);
    if (!(c.imag() > 0.0)) throw config_error(field, "point must lie in the upper half-plane");
    return UHPoint(c.real(), c.imag());
}

namespace detail {

template <class T>
std::string join(const std::vector<T>& v, std::string (*f)(T))
{
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + f(v[i]);
    return out;
}

inline std::string fmt_v(double x) { return num(x); }
inline std::string fmt_c(cplx x) { return format_complex(x); }

}  // namespace detail

// Sections and keys in a fixed order. Everything that changes the numbers
// is here; thread count and output directory are not.
inline std::string canonical(const RunConfig& c)
{
    std::ostringstream o;
    o << "[family]\n"
      << "kind = " << c.family << "\n"
      << "ell = " << detail::join(c.ell, detail::fmt_v) << "\n"
      << "translation = " << num(c.translation) << "\n"
      << "\n[series]\n"
      << "s = " << detail::join(c.s, detail::fmt_c) << "\n"
      << "word = " << c.word << "\n"
      << "epsilon = " << num(c.epsilon) << "\n";
    if (c.T0) o << "T0 = " << num(*c.T0) << "\n";
    o << "y0 = " << num(c.y0) << "\n"
      << "omega = " << num(c.omega) << "\n"
      << "radius_safety = " << num(c.radius_safety) << "\n"
      << "\n[point]\n"
      << "z = " << (c.tracked ? std::string("tracked") : point_string(c.z)) << "\n"
      << "w = " << point_string(c.w) << "\n"
      << "\n[count]\n"
      << "T = " << detail::join(c.T, detail::fmt_v) << "\n"
      << "\n[sweep]\n"
      << "ell = " << detail::join(c.sweep_ell, detail::fmt_v) << "\n"
      << "count_grid = " << detail::join(c.count_grid, detail::fmt_v) << "\n"
      << "de_h = " << num(c.de_h) << "\n"
      << "with_de = " << (c.with_de ? "true" : "false") << "\n"
      << "cross_tolerance = " << num(c.cross_tolerance) << "\n"
      << "\n[enumeration]\n"
      << "max_depth = " << c.max_depth << "\n"
      << "prune_slack = " << num(c.prune_slack) << "\n"
      << "\n[run]\n"
      << "seed = " << c.seed << "\n"
      << "allow_incomplete = " << (c.allow_incomplete ? "true" : "false") << "\n"
      << "\n[output]\n"
      << "prefix = " << c.prefix << "\n";
    return o.str();
}

// FNV-1a, 64 bit.
inline std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string config_hash(const RunConfig& c)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, fnv1a(canonical(c)));
    return buf;
}

inline void validate(const RunConfig& c)
{
    static const std::set<std::string> families{"punctured-torus", "thrice-punctured-sphere", "cyclic-hyperbolic",
                                                "cyclic-parabolic"};
    if (!families.count(c.family)) throw config_error("family.kind", "unknown family '" + c.family + "'");
    for (double l : c.ell) {
        if (!(l > 0.0)) throw config_error("family.ell", "lengths must be positive");
    }
    if (!(c.translation > 0.0)) throw config_error("family.translation", "must be positive");
    for (cplx s : c.s) {
        if (!(s.real() > 1.0)) throw config_error("series.s", "Re s must exceed 1, got " + format_complex(s));
    }
    if (!(c.epsilon > 0.0)) throw config_error("series.epsilon", "must be positive");
    if (c.T0 && !(*c.T0 > 0.0)) throw config_error("series.T0", "must be positive");
    if (!(c.y0 > 0.0)) throw config_error("series.y0", "must be positive");
    if (!(c.omega > 0.0)) throw config_error("series.omega", "must be positive");
    if (!(c.radius_safety > 0.0 && c.radius_safety <= 1.0)) {
        throw config_error("series.radius_safety", "must lie in (0, 1]");
    }
    for (double l : c.sweep_ell) {
        if (!(l > 0.0)) throw config_error("sweep.ell", "lengths must be positive");
    }
    if (!(c.de_h > 0.0)) throw config_error("sweep.de_h", "must be positive");
    if (c.max_depth == 0) throw config_error("enumeration.max_depth", "must be positive");
    if (c.prefix.empty() || c.prefix.find('/') != std::string::npos) {
        throw config_error("output.prefix", "must be a plain file name prefix");
    }
}

inline RunConfig parse_config(std::istream& in)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw config_error("", "line " + std::to_string(e.line()) + ": " + e.message());
    }
    RunConfig c;
    using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;
    const std::map<std::string, std::map<std::string, Setter>> keys{
        {"family",
         {{"kind", [](RunConfig& c, const std::string& v, const std::string&) { c.family = v; }},
          {"ell", [](RunConfig& c, const std::string& v, const std::string& f) { c.ell = parse_reals(v, f); }},
          {"translation",
           [](RunConfig& c, const std::string& v, const std::string& f) { c.translation = parse_double(v, f); }}}},
        {"series",
         {{"s", [](RunConfig& c, const std::string& v, const std::string& f) { c.s = parse_complexes(v, f); }},
          {"word", [](RunConfig& c, const std::string& v, const std::string&) { c.word = v; }},
          {"epsilon", [](RunConfig& c, const std::string& v, const std::string& f) { c.epsilon = parse_double(v, f); }},
          {"T0", [](RunConfig& c, const std::string& v, const std::string& f) { c.T0 = parse_double(v, f); }},
          {"y0", [](RunConfig& c, const std::string& v, const std::string& f) { c.y0 = parse_double(v, f); }},
          {"omega", [](RunConfig& c, const std::string& v, const std::string& f) { c.omega = parse_double(v, f); }},
          {"radius_safety",
           [](RunConfig& c, const std::string& v, const std::string& f) { c.radius_safety = parse_double(v, f); }}}},
        {"point",
         {{"z",
           [](RunConfig& c, const std::string& v, const std::string& f) {
               c.tracked = v == "tracked";
               c.z = c.tracked ? tracked_point() : parse_point(v, f);
           }},
          {"w", [](RunConfig& c, const std::string& v, const std::string& f) { c.w = parse_point(v, f); }}}},
        {"count", {{"T", [](RunConfig& c, const std::string& v, const std::string& f) { c.T = parse_reals(v, f); }}}},
        {"sweep",
         {{"ell", [](RunConfig& c, const std::string& v, const std::string& f) { c.sweep_ell = parse_reals(v, f); }},
          {"count_grid",
           [](RunConfig& c, const std::string& v, const std::string& f) { c.count_grid = parse_reals(v, f); }},
          {"de_h", [](RunConfig& c, const std::string& v, const std::string& f) { c.de_h = parse_double(v, f); }},
          {"with_de", [](RunConfig& c, const std::string& v, const std::string& f) { c.with_de = parse_bool(v, f); }},
          {"cross_tolerance",
           [](RunConfig& c, const std::string& v, const std::string& f) { c.cross_tolerance = parse_double(v, f); }}}},
        {"enumeration",
         {{"max_depth",
           [](RunConfig& c, const std::string& v, const std::string& f) {
               const double d = parse_double(v, f);
               if (!(d >= 1.0) || d != std::floor(d)) throw config_error(f, "expected a positive integer");
               c.max_depth = static_cast<std::size_t>(d);
           }},
          {"prune_slack",
           [](RunConfig& c, const std::string& v, const std::string& f) { c.prune_slack = parse_double(v, f); }}}},
        {"run",
         {{"seed",
           [](RunConfig& c, const std::string& v, const std::string& f) {
               if (v.empty() || v.front() == '-' || v.front() == '+') {
                   throw config_error(f, "expected an unsigned integer, got '" + v + "'");
               }
               try {
                   std::size_t used = 0;
                   c.seed = std::stoull(v, &used);
                   if (used != v.size()) throw config_error(f, "trailing characters in '" + v + "'");
               } catch (const std::logic_error&) {
                   throw config_error(f, "expected an unsigned integer, got '" + v + "'");
               }
           }},
          {"allow_incomplete",
           [](RunConfig& c, const std::string& v, const std::string& f) { c.allow_incomplete = parse_bool(v, f); }}}},
        {"output", {{"prefix", [](RunConfig& c, const std::string& v, const std::string&) { c.prefix = v; }}}},
    };
    for (const auto& [section, body] : tree) {
        const auto sec = keys.find(section);
        if (sec == keys.end()) {
            if (body.empty()) throw config_error(section, "key outside a section");
            throw config_error(section, "unknown section");
        }
        for (const auto& [key, node] : body) {
            const std::string field = section + "." + key;
            const auto k = sec->second.find(key);
            if (k == sec->second.end()) throw config_error(field, "unknown key");
            k->second(c, detail::trim(node.get_value<std::string>()), field);
        }
    }
    validate(c);
    return c;
}

inline RunConfig parse_config_string(const std::string& s)
{
    std::istringstream in(s);
    return parse_config(in);
}

// RFC 4180 field.
inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) : width_(header.size()) { row(header); }

    void row(const std::vector<std::string>& fields)
    {
        if (fields.size() != width_) throw std::logic_error("csv row width mismatch");
        for (std::size_t i = 0; i < fields.size(); ++i) out_ << (i ? "," : "") << csv_field(fields[i]);
        out_ << "\r\n";
    }

    std::string str() const { return out_.str(); }

private:
    std::size_t width_;
    std::ostringstream out_;
};

}  // namespace eisen::io

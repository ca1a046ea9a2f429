#include "struvint/report.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>
#include <type_traits>

#include "struvint/errors.hpp"
#include "struvint/version.hpp"

namespace struvint {
namespace {

double parse_real(std::string_view text, std::string_view what) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || text.empty() || !std::isfinite(value)) {
        throw DomainError(std::string(what) + ": cannot parse '" + std::string(text) +
                          "' as a real number");
    }
    return value;
}

std::string to_17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// Complex values as JSON: plain numbers when real, otherwise a literal string.
Json complex_field(const Complex& z) {
    if (z.imag() == 0.0) return z.real();
    std::string s = to_17(z.real());
    if (!std::signbit(z.imag())) s += "+";
    s += to_17(z.imag()) + "i";
    return s;
}

Json complex_parts(const Complex& z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Complex read_complex(const Json& node, const std::string& field) {
    if (node.is_number()) return node.get<double>();
    if (node.is_string()) {
        try {
            return parse_complex(node.get<std::string>());
        } catch (const DomainError& e) {
            throw CaseFileError(field + ": " + e.what());
        }
    }
    if (node.is_object() && node.contains("re")) {
        const double re = node.at("re").get<double>();
        const double im = node.contains("im") ? node.at("im").get<double>() : 0.0;
        return {re, im};
    }
    throw CaseFileError(field + ": expected a number or complex literal");
}

double read_real(const Json& node, const std::string& field) {
    if (node.is_number()) return node.get<double>();
    if (node.is_string()) {
        try {
            return parse_real(node.get<std::string>(), field);
        } catch (const DomainError& e) {
            throw CaseFileError(e.what());
        }
    }
    throw CaseFileError(field + ": expected a real number");
}

const Json& require(const Json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw CaseFileError(where + "." + key + ": missing field");
    return obj.at(key);
}

IntegralCase parse_case(const Json& rec, const std::string& where) {
    if (!rec.is_object()) throw CaseFileError(where + ": expected an object");
    IntegralCase c;
    const Json& variant = require(rec, "variant", where);
    if (!variant.is_string()) throw CaseFileError(where + ".variant: expected a string");
    try {
        c.variant = variant_from_string(variant.get<std::string>());
    } catch (const DomainError& e) {
        throw CaseFileError(where + ".variant: " + e.what());
    }
    c.a = read_real(require(rec, "a", where), where + ".a");
    c.lambda = read_complex(require(rec, "lambda", where), where + ".lambda");
    c.mu = read_complex(require(rec, "mu", where), where + ".mu");
    c.b = read_complex(require(rec, "b", where), where + ".b");
    c.c = read_complex(require(rec, "c", where), where + ".c");

    auto read_vector = [&](const char* key) {
        const Json& node = require(rec, key, where);
        const std::string field = where + "." + key;
        if (node.is_array()) return node;
        if (node.is_number() || node.is_string()) return Json::array({node});
        throw CaseFileError(field + ": expected an array");
    };
    const Json p = read_vector("p");
    const Json y = read_vector("y");
    for (std::size_t j = 0; j < p.size(); ++j) {
        c.p.push_back(read_complex(p[j], where + ".p[" + std::to_string(j) + "]"));
    }
    for (std::size_t j = 0; j < y.size(); ++j) {
        c.y.push_back(read_real(y[j], where + ".y[" + std::to_string(j) + "]"));
    }
    if (rec.contains("n")) {
        const Json& n = rec.at("n");
        if (!n.is_number_integer() || n.get<long>() < 1) {
            throw CaseFileError(where + ".n: expected a positive integer");
        }
        if (static_cast<std::size_t>(n.get<long>()) != c.p.size() ||
            c.y.size() != c.p.size()) {
            throw CaseFileError(where + ".n: p and y must both have n entries");
        }
    } else if (c.y.size() != c.p.size()) {
        throw CaseFileError(where + ".y: p and y must have the same length");
    }
    if (c.p.empty()) throw CaseFileError(where + ".p: at least one entry is required");
    return c;
}

template <class T>
std::optional<T> optional_field(const Json& obj, const char* key) {
    if (!obj.contains(key)) return std::nullopt;
    if constexpr (std::is_unsigned_v<T>) {
        if (!obj.at(key).is_number_unsigned()) {
            throw CaseFileError(std::string("controls.") + key + ": expected a positive integer");
        }
    }
    try {
        return obj.at(key).get<T>();
    } catch (const Json::exception&) {
        throw CaseFileError(std::string("controls.") + key + ": wrong type");
    }
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_node(std::ostream& os, const Json& node, int indent, int depth) {
    indent = std::max(indent, 0);
    const std::string pad(static_cast<std::size_t>(indent * (depth + 1)), ' ');
    const std::string close_pad(static_cast<std::size_t>(indent * depth), ' ');
    const char* nl = indent > 0 ? "\n" : "";
    switch (node.type()) {
        case Json::value_t::object: {
            if (node.empty()) {
                os << "{}";
                return;
            }
            os << "{" << nl;
            bool first = true;
            for (const auto& [key, value] : node.items()) {
                if (!first) os << "," << nl;
                first = false;
                os << pad << Json(key).dump() << (indent > 0 ? ": " : ":");
                write_node(os, value, indent, depth + 1);
            }
            os << nl << close_pad << "}";
            return;
        }
        case Json::value_t::array: {
            if (node.empty()) {
                os << "[]";
                return;
            }
            os << "[" << nl;
            bool first = true;
            for (const auto& value : node) {
                if (!first) os << "," << nl;
                first = false;
                os << pad;
                write_node(os, value, indent, depth + 1);
            }
            os << nl << close_pad << "]";
            return;
        }
        case Json::value_t::number_float: {
            const double x = node.get<double>();
            if (std::isfinite(x)) {
                os << to_17(x);
            } else {
                os << "null";
            }
            return;
        }
        default:
            os << node.dump();
    }
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string join_vector(const std::vector<Complex>& v) {
    std::string s;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (j) s += ";";
        s += format_value(v[j]);
    }
    return s;
}

std::string join_vector(const std::vector<double>& v) {
    std::string s;
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (j) s += ";";
        s += to_17(v[j]);
    }
    return s;
}

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        out.emplace_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

Complex parse_complex(std::string_view text) {
    if (text.empty()) throw DomainError("empty complex literal");
    const std::string literal(text);
    if (text.back() != 'i') return parse_real(text, "complex literal");

    const std::string_view body = text.substr(0, text.size() - 1);
    // The imaginary part starts at the last sign that is not part of an exponent.
    std::size_t split_at = std::string_view::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split_at = i;
            break;
        }
    }
    auto imag_value = [&](std::string_view part) {
        if (part.empty() || part == "+") return 1.0;
        if (part == "-") return -1.0;
        if (part.front() == '+') part.remove_prefix(1);
        return parse_real(part, "complex literal '" + literal + "'");
    };
    if (split_at == std::string_view::npos) return {0.0, imag_value(body)};
    const double re = parse_real(body.substr(0, split_at), "complex literal '" + literal + "'");
    return {re, imag_value(body.substr(split_at))};
}

std::string format_value(double x) {
    if (x == 0.0) return std::signbit(x) ? "-0.0" : "0.0";
    if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15e", std::abs(x));
    const std::string text(buf);
    const std::size_t epos = text.find('e');
    const int exponent = std::stoi(text.substr(epos + 1));
    std::string digits = text.substr(0, 1) + text.substr(2, epos - 2);  // 16 digits
    const std::string sign = x < 0 ? "-" : "";

    auto trim = [](std::string frac) {
        while (frac.size() > 1 && frac.back() == '0') frac.pop_back();
        return frac;
    };
    if (exponent >= 0 && exponent < 16) {
        const auto whole = static_cast<std::size_t>(exponent + 1);
        return sign + digits.substr(0, whole) + "." + trim(digits.substr(whole));
    }
    return sign + digits.substr(0, 1) + "." + trim(digits.substr(1)) + "e" +
           std::to_string(exponent);
}

std::string format_value(const Complex& z) {
    if (z.imag() == 0.0) return format_value(z.real());
    std::string im = format_value(z.imag());
    if (im.front() != '-') im = "+" + im;
    return format_value(z.real()) + im + "i";
}

CaseFile parse_case_file(const Json& doc) {
    CaseFile file;
    const Json* cases = nullptr;
    if (doc.is_array()) {
        cases = &doc;
    } else if (doc.is_object()) {
        if (!doc.contains("cases")) throw CaseFileError("cases: missing field");
        cases = &doc.at("cases");
        if (doc.contains("controls")) {
            const Json& ctl = doc.at("controls");
            if (!ctl.is_object()) throw CaseFileError("controls: expected an object");
            file.controls.tol = optional_field<double>(ctl, "tol");
            file.controls.quad_rel_tol = optional_field<double>(ctl, "quad_rel_tol");
            file.controls.quad_abs_tol = optional_field<double>(ctl, "quad_abs_tol");
            file.controls.series_rel_tol = optional_field<double>(ctl, "series_rel_tol");
            file.controls.max_terms = optional_field<unsigned>(ctl, "max_terms");
            file.controls.max_panels = optional_field<unsigned>(ctl, "max_panels");
            const std::pair<const char*, std::optional<double>> positive[] = {
                {"tol", file.controls.tol},
                {"quad_rel_tol", file.controls.quad_rel_tol},
                {"quad_abs_tol", file.controls.quad_abs_tol},
                {"series_rel_tol", file.controls.series_rel_tol}};
            for (const auto& [key, v] : positive) {
                if (v && !(*v > 0.0 && std::isfinite(*v))) {
                    throw CaseFileError(std::string("controls.") + key + ": must be positive");
                }
            }
            if (file.controls.max_terms == 0u || file.controls.max_panels == 0u) {
                throw CaseFileError("controls: max_terms and max_panels must be at least 1");
            }
        }
    } else {
        throw CaseFileError("document: expected an object or an array of cases");
    }
    if (!cases->is_array()) throw CaseFileError("cases: expected an array");
    for (std::size_t i = 0; i < cases->size(); ++i) {
        const std::string where = "cases[" + std::to_string(i) + "]";
        const Json& rec = (*cases)[i];
        file.cases.push_back(parse_case(rec, where));
        std::string label;
        if (rec.is_object() && rec.contains("label")) {
            if (!rec.at("label").is_string()) throw CaseFileError(where + ".label: expected a string");
            label = rec.at("label").get<std::string>();
        }
        file.labels.push_back(label);
    }
    return file;
}

CaseFile load_case_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CaseFileError("cannot open case file '" + path + "'");
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw CaseFileError(std::string("case file is not valid JSON: ") + e.what());
    }
    return parse_case_file(doc);
}

Json case_to_json(const IntegralCase& c) {
    Json j;
    j["variant"] = to_string(c.variant);
    j["n"] = c.n();
    j["a"] = c.a;
    j["lambda"] = complex_field(c.lambda);
    j["mu"] = complex_field(c.mu);
    j["b"] = complex_field(c.b);
    j["c"] = complex_field(c.c);
    j["p"] = Json::array();
    for (const auto& pj : c.p) j["p"].push_back(complex_field(pj));
    j["y"] = c.y;
    return j;
}

Json case_file_to_json(const CaseFile& file) {
    Json doc;
    doc["version"] = 1;
    Json controls = Json::object();
    if (file.controls.tol) controls["tol"] = *file.controls.tol;
    if (file.controls.quad_rel_tol) controls["quad_rel_tol"] = *file.controls.quad_rel_tol;
    if (file.controls.quad_abs_tol) controls["quad_abs_tol"] = *file.controls.quad_abs_tol;
    if (file.controls.series_rel_tol) controls["series_rel_tol"] = *file.controls.series_rel_tol;
    if (file.controls.max_terms) controls["max_terms"] = *file.controls.max_terms;
    if (file.controls.max_panels) controls["max_panels"] = *file.controls.max_panels;
    if (!controls.empty()) doc["controls"] = controls;
    doc["cases"] = Json::array();
    for (std::size_t i = 0; i < file.cases.size(); ++i) {
        Json rec = case_to_json(file.cases[i]);
        if (i < file.labels.size() && !file.labels[i].empty()) rec["label"] = file.labels[i];
        doc["cases"].push_back(rec);
    }
    return doc;
}

std::size_t RunReport::passed() const {
    std::size_t k = 0;
    for (const auto& c : cases) k += c.pass ? 1 : 0;
    return k;
}

RunSettings apply_controls(RunSettings s, const CaseControls& c) {
    if (c.tol) s.tol = *c.tol;
    if (c.quad_rel_tol) s.quad.rel_tol = *c.quad_rel_tol;
    if (c.quad_abs_tol) s.quad.abs_tol = *c.quad_abs_tol;
    if (c.series_rel_tol) s.series.rel_tol = *c.series_rel_tol;
    if (c.max_terms) s.series.max_terms = *c.max_terms;
    if (c.max_panels) s.quad.max_panels = *c.max_panels;
    return s;
}

RunReport run_cases(const CaseFile& file, const RunSettings& settings) {
    const auto start = std::chrono::steady_clock::now();
    RunReport report;
    report.tool_version = kVersion;
    report.timestamp = utc_timestamp();
    report.labels = file.labels;
    report.labels.resize(file.cases.size());
    report.cases.resize(file.cases.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < file.cases.size(); i = next++) {
            report.cases[i] =
                verify_case(file.cases[i], settings.quad, settings.series, settings.tol);
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(settings.jobs,
                                                          static_cast<unsigned>(file.cases.size())));
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

Json report_to_json(const RunReport& report) {
    Json doc;
    doc["version"] = report.tool_version;
    doc["timestamp"] = report.timestamp;
    doc["cases"] = Json::array();
    for (std::size_t i = 0; i < report.cases.size(); ++i) {
        const VerificationReport& r = report.cases[i];
        Json rec;
        rec["label"] = report.labels[i];
        rec["case"] = case_to_json(r.input);
        rec["lhs"] = complex_parts(r.lhs);
        rec["rhs"] = complex_parts(r.rhs);
        rec["abs_err"] = r.abs_err;
        rec["rel_err"] = r.rel_err;
        rec["pass"] = r.pass;
        rec["tolerance"] = r.tolerance;
        rec["reason"] = r.reason;
        Json diag;
        diag["prefactor"] = complex_parts(r.prefactor);
        diag["quadrature"] = Json{{"error_estimate", r.quadrature.error_estimate},
                                  {"panels_used", r.quadrature.panels_used},
                                  {"cutoff_theta", r.quadrature.cutoff_theta},
                                  {"evaluations", r.quadrature.evaluations},
                                  {"converged", r.quadrature.converged},
                                  {"status", r.quadrature.status}};
        diag["series"] = Json{{"shells", r.series.shells},
                              {"terms", r.series.terms},
                              {"tail_estimate", r.series.tail_estimate}};
        diag["wall_seconds"] = r.wall_seconds;
        rec["diagnostics"] = diag;
        doc["cases"].push_back(rec);
    }
    doc["summary"] = Json{{"total", report.cases.size()},
                          {"passed", report.passed()},
                          {"failed", report.failed()},
                          {"wall_seconds", report.wall_seconds}};
    return doc;
}

void write_json(std::ostream& os, const Json& doc, int indent) {
    write_node(os, doc, indent, 0);
    os << "\n";
}

void write_csv(std::ostream& os, const RunReport& report) {
    os << "index,label,variant,n,a,mu_re,mu_im,lambda_re,lambda_im,b_re,b_im,c_re,c_im,p,y,"
          "lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,tolerance,pass,reason\n";
    for (std::size_t i = 0; i < report.cases.size(); ++i) {
        const VerificationReport& r = report.cases[i];
        const IntegralCase& c = r.input;
        os << i << ',' << csv_escape(report.labels[i]) << ',' << to_string(c.variant) << ','
           << c.n() << ',' << to_17(c.a) << ',' << to_17(c.mu.real()) << ','
           << to_17(c.mu.imag()) << ',' << to_17(c.lambda.real()) << ','
           << to_17(c.lambda.imag()) << ',' << to_17(c.b.real()) << ',' << to_17(c.b.imag())
           << ',' << to_17(c.c.real()) << ',' << to_17(c.c.imag()) << ','
           << csv_escape(join_vector(c.p)) << ',' << csv_escape(join_vector(c.y)) << ','
           << to_17(r.lhs.real()) << ',' << to_17(r.lhs.imag()) << ',' << to_17(r.rhs.real())
           << ',' << to_17(r.rhs.imag()) << ',' << to_17(r.abs_err) << ',' << to_17(r.rel_err)
           << ',' << to_17(r.tolerance) << ',' << (r.pass ? "true" : "false") << ','
           << csv_escape(r.reason) << '\n';
    }
}

std::vector<Complex> parse_axis(std::string_view text, std::string_view name) {
    const std::string field = "--" + std::string(name);
    if (text.empty()) throw DomainError(field + ": value required");
    if (text.find(':') == std::string_view::npos) {
        try {
            return {parse_complex(text)};
        } catch (const DomainError& e) {
            throw DomainError(field + ": " + e.what());
        }
    }
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw DomainError(field + ": range must be start:end:step");
    const double start = parse_real(parts[0], field);
    const double end = parse_real(parts[1], field);
    const double step = parse_real(parts[2], field);
    if (!(step > 0.0)) throw DomainError(field + ": step must be positive");
    if (!(start <= end)) throw DomainError(field + ": start must not exceed end");
    const auto count = static_cast<std::size_t>(std::floor((end - start) / step + 1e-9)) + 1;
    std::vector<Complex> values;
    for (std::size_t i = 0; i < count; ++i) values.emplace_back(start + static_cast<double>(i) * step);
    return values;
}

GridResult generate_grid(const GridRequest& req) {
    if (req.n < 1) throw DomainError("--n: must be >= 1");
    auto vector_flag = [&](const std::string& text, const char* name) {
        if (text.empty()) throw DomainError(std::string("--") + name + ": value required");
        std::vector<std::string> parts = split(text, ',');
        if (parts.size() == 1 && req.n > 1) parts.assign(req.n, parts.front());
        if (parts.size() != req.n) {
            throw DomainError(std::string("--") + name + ": expected " + std::to_string(req.n) +
                              " comma-separated entries");
        }
        return parts;
    };
    std::vector<Complex> p;
    for (const auto& s : vector_flag(req.p, "p")) {
        try {
            p.push_back(parse_complex(s));
        } catch (const DomainError& e) {
            throw DomainError(std::string("--p: ") + e.what());
        }
    }
    std::vector<double> y;
    for (const auto& s : vector_flag(req.y, "y")) y.push_back(parse_real(s, "--y"));

    const auto a_axis = parse_axis(req.a, "a");
    const auto mu_axis = parse_axis(req.mu, "mu");
    const auto lambda_axis = parse_axis(req.lambda, "lambda");
    const auto b_axis = parse_axis(req.b, "b");
    const auto c_axis = parse_axis(req.c, "c");
    for (const auto& a : a_axis) {
        if (a.imag() != 0.0) throw DomainError("--a: must be real");
    }

    GridResult out;
    for (const auto& a : a_axis) {
        for (const auto& mu : mu_axis) {
            for (const auto& lambda : lambda_axis) {
                for (const auto& b : b_axis) {
                    for (const auto& c : c_axis) {
                        IntegralCase ic{req.variant, a.real(), lambda, mu, b, c, p, y};
                        try {
                            ic.validate();
                        } catch (const DomainError&) {
                            ++out.skipped;
                            continue;
                        }
                        out.file.cases.push_back(ic);
                        out.file.labels.emplace_back();
                    }
                }
            }
        }
    }
    return out;
}

}  // namespace struvint

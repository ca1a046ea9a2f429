// struvint: evaluate the special functions, verify integral identities,
// generate case grids.
//
//   struvint eval struve_w p=0 b=0 c=0 z=2
//   struvint verify cases.json --output report.json --jobs 4
//   struvint grid --variant theorem1 --n 1 --mu 0.5:1.5:0.5 --lambda 2 --p 1 --y 1

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "struvint/errors.hpp"
#include "struvint/hyper_series.hpp"
#include "struvint/lauricella.hpp"
#include "struvint/quadrature.hpp"
#include "struvint/report.hpp"
#include "struvint/version.hpp"

namespace {

using namespace struvint;

constexpr int kExitOk = 0;
constexpr int kExitFailures = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConvergence = 3;

struct GlobalOptions {
    double tol = 1e-6;
    double quad_tol = 1e-11;
    unsigned max_terms = 10000;
    std::string output;
    std::string format = "json";
    unsigned jobs = 1;
};

class Params {
public:
    Params(std::string function, const std::vector<std::string>& raw) : function_(std::move(function)) {
        for (const auto& kv : raw) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw DomainError("parameter '" + kv + "' is not of the form key=value");
            }
            values_[kv.substr(0, eq)] = kv.substr(eq + 1);
        }
    }

    void allow(std::initializer_list<const char*> keys) const {
        const std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto& [k, v] : values_) {
            if (!allowed.count(k)) {
                throw DomainError("unknown parameter '" + k + "' for " + function_);
            }
        }
    }

    const std::string& raw(const std::string& key) const {
        auto it = values_.find(key);
        if (it == values_.end()) {
            throw DomainError("missing parameter '" + key + "' for " + function_);
        }
        return it->second;
    }

    Complex complex(const std::string& key) const {
        try {
            return parse_complex(raw(key));
        } catch (const Error& e) {
            throw DomainError("parameter '" + key + "': " + e.what());
        }
    }

    double real(const std::string& key) const {
        const Complex z = complex(key);
        if (z.imag() != 0.0) throw DomainError("parameter '" + key + "' must be real");
        return z.real();
    }

    std::vector<Complex> complex_list(const std::string& key) const {
        std::vector<Complex> out;
        const std::string& text = raw(key);
        if (text.empty()) return out;
        std::size_t start = 0;
        while (true) {
            const auto pos = text.find(',', start);
            const std::string item = text.substr(start, pos - start);
            try {
                out.push_back(parse_complex(item));
            } catch (const Error& e) {
                throw DomainError("parameter '" + key + "': " + e.what());
            }
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        return out;
    }

    // "alpha:A,alpha:A"
    std::vector<WeightedParam> weighted_list(const std::string& key) const {
        std::vector<WeightedParam> out;
        const std::string& text = raw(key);
        if (text.empty()) return out;
        std::size_t start = 0;
        while (true) {
            const auto pos = text.find(',', start);
            const std::string item = text.substr(start, pos - start);
            const auto colon = item.rfind(':');
            if (colon == std::string::npos) {
                throw DomainError("parameter '" + key + "': entry '" + item +
                                  "' must be value:weight");
            }
            try {
                const Complex w = parse_complex(item.substr(colon + 1));
                out.push_back({parse_complex(item.substr(0, colon)), w.real()});
            } catch (const Error& e) {
                throw DomainError("parameter '" + key + "': " + e.what());
            }
            if (pos == std::string::npos) break;
            start = pos + 1;
        }
        return out;
    }

private:
    std::string function_;
    std::map<std::string, std::string> values_;
};

Json read_json_argument(const std::string& text) {
    if (!text.empty() && text.front() == '@') {
        std::ifstream in(text.substr(1));
        if (!in) throw DomainError("cannot open '" + text.substr(1) + "'");
        return Json::parse(in);
    }
    return Json::parse(text);
}

// {"n":2,"global_upper":[{"value":"1.5","weights":[2,2]}],
//  "per_var_upper":[[{"value":1,"weight":1}],[...]], ...}
LauricellaSpec parse_lauricella_spec(const Json& doc) {
    LauricellaSpec spec;
    spec.n = doc.at("n").get<std::size_t>();
    auto value_of = [](const Json& node) {
        return node.is_string() ? parse_complex(node.get<std::string>())
                                : Complex{node.get<double>()};
    };
    auto globals = [&](const char* key) {
        std::vector<GlobalParam> out;
        if (!doc.contains(key)) return out;
        for (const auto& g : doc.at(key)) {
            out.push_back({value_of(g.at("value")), g.at("weights").get<std::vector<double>>()});
        }
        return out;
    };
    auto per_var = [&](const char* key) {
        std::vector<std::vector<WeightedParam>> out(spec.n);
        if (!doc.contains(key)) return out;
        const Json& blocks = doc.at(key);
        if (blocks.size() != spec.n) {
            throw DomainError(std::string("lauricella spec: ") + key + " needs n entries");
        }
        for (std::size_t m = 0; m < spec.n; ++m) {
            for (const auto& e : blocks[m]) {
                out[m].push_back({value_of(e.at("value")), e.at("weight").get<double>()});
            }
        }
        return out;
    };
    spec.global_upper = globals("global_upper");
    spec.global_lower = globals("global_lower");
    spec.per_var_upper = per_var("per_var_upper");
    spec.per_var_lower = per_var("per_var_lower");
    return spec;
}

void print_series(const SeriesResult& r) {
    std::cout << format_value(r.value) << "\n";
    std::cerr << "terms=" << r.terms << " tail_estimate=" << r.tail_estimate << "\n";
}

int cmd_eval(const std::string& function, const std::vector<std::string>& raw,
             const GlobalOptions& opts) {
    SeriesControl ctl;
    ctl.max_terms = opts.max_terms;
    const Params params(function, raw);

    if (function == "struve_h" || function == "struve_l") {
        params.allow({"nu", "z"});
        const Complex nu = params.complex("nu");
        const double z = params.real("z");
        print_series(function == "struve_h" ? struve_h_paper(nu, z, ctl)
                                            : struve_l_paper(nu, z, ctl));
    } else if (function == "struve_w") {
        params.allow({"p", "b", "c", "z"});
        print_series(struve_w({params.complex("p"), params.complex("b"), params.complex("c")},
                              params.real("z"), ctl));
    } else if (function == "fox_wright") {
        params.allow({"upper", "lower", "z"});
        FoxWrightSpec spec{params.weighted_list("upper"), params.weighted_list("lower")};
        print_series(fox_wright(spec, params.complex("z"), ctl));
    } else if (function == "pfq") {
        params.allow({"upper", "lower", "z"});
        print_series(pfq(params.complex_list("upper"), params.complex_list("lower"),
                         params.complex("z"), ctl));
    } else if (function == "lauricella") {
        params.allow({"spec", "z"});
        LauricellaSpec spec;
        try {
            spec = parse_lauricella_spec(read_json_argument(params.raw("spec")));
        } catch (const Json::exception& e) {
            throw DomainError(std::string("parameter 'spec': ") + e.what());
        }
        const auto r = lauricella_eval(spec, params.complex_list("z"), ctl);
        std::cout << format_value(r.value) << "\n";
        std::cerr << "shells=" << r.shells << " terms=" << r.terms
                  << " tail_estimate=" << r.tail_estimate << "\n";
    } else if (function == "oberhettinger") {
        params.allow({"a", "mu", "lambda"});
        const Complex v =
            oberhettinger_closed_form(params.real("a"), params.complex("mu"), params.complex("lambda"));
        std::cout << format_value(v) << "\n";
        std::cerr << "closed form\n";
    } else {
        throw DomainError("unknown function '" + function +
                          "' (expected struve_h, struve_l, struve_w, fox_wright, pfq, "
                          "lauricella, oberhettinger)");
    }
    return kExitOk;
}

void emit(const GlobalOptions& opts, const std::function<void(std::ostream&)>& body) {
    if (opts.output.empty()) {
        body(std::cout);
        return;
    }
    std::ofstream out(opts.output);
    if (!out) throw DomainError("cannot write '" + opts.output + "'");
    body(out);
}

int cmd_verify(const std::string& input, const GlobalOptions& opts, bool quad_tol_set,
               bool tol_set, bool max_terms_set) {
    const CaseFile file = load_case_file(input);
    RunSettings defaults;
    defaults.quad.rel_tol = opts.quad_tol;
    defaults.tol = opts.tol;
    defaults.series.max_terms = opts.max_terms;
    defaults.jobs = opts.jobs;
    RunSettings settings = apply_controls(defaults, file.controls);
    // Command-line flags win over the file's controls.
    if (quad_tol_set) settings.quad.rel_tol = opts.quad_tol;
    if (tol_set) settings.tol = opts.tol;
    if (max_terms_set) settings.series.max_terms = opts.max_terms;

    const RunReport report = run_cases(file, settings);
    emit(opts, [&](std::ostream& os) {
        if (opts.format == "csv") {
            write_csv(os, report);
        } else {
            write_json(os, report_to_json(report));
        }
    });
    for (std::size_t i = 0; i < report.cases.size(); ++i) {
        const auto& r = report.cases[i];
        if (!r.pass) std::cerr << "case " << i << " failed: " << r.reason << "\n";
    }
    std::cerr << report.passed() << "/" << report.cases.size() << " cases passed\n";
    return report.failed() == 0 ? kExitOk : kExitFailures;
}

int cmd_grid(const GridRequest& request, const GlobalOptions& opts) {
    const GridResult grid = generate_grid(request);
    if (grid.skipped > 0) {
        std::cerr << "warning: skipped " << grid.skipped
                  << " combinations violating the " << to_string(request.variant)
                  << " conditions\n";
    }
    if (grid.file.cases.empty()) std::cerr << "warning: grid is empty\n";
    emit(opts, [&](std::ostream& os) { write_json(os, case_file_to_json(grid.file)); });
    std::cerr << grid.file.cases.size() << " cases generated\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generalized Struve / Fox-Wright / Lauricella evaluation and integral "
                 "identity verification"};
    app.set_version_flag("--version", struvint::kVersion);
    app.require_subcommand(1);

    GlobalOptions opts;
    auto* tol_opt = app.add_option("--tol", opts.tol, "Verification relative tolerance")
                        ->check(CLI::PositiveNumber);
    auto* quad_opt = app.add_option("--quad-tol", opts.quad_tol, "Quadrature relative tolerance")
                         ->check(CLI::PositiveNumber);
    auto* terms_opt = app.add_option("--max-terms", opts.max_terms, "Series term budget")
                          ->check(CLI::PositiveNumber);
    app.add_option("--output", opts.output, "Write the report/case file here instead of stdout");
    app.add_option("--format", opts.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--jobs", opts.jobs, "Cases verified concurrently")->check(CLI::PositiveNumber);

    auto* eval = app.add_subcommand("eval", "Evaluate one function")->fallthrough();
    std::string function;
    std::vector<std::string> params;
    eval->add_option("function", function, "struve_h | struve_l | struve_w | fox_wright | pfq | "
                                           "lauricella | oberhettinger")
        ->required();
    eval->add_option("params", params, "key=value parameters");

    auto* verify = app.add_subcommand("verify", "Verify the cases in a case file")->fallthrough();
    std::string input;
    verify->add_option("input", input, "Case file (JSON)")->required();

    auto* grid = app.add_subcommand("grid", "Generate a Cartesian-product case file")->fallthrough();
    GridRequest request;
    std::string variant;
    grid->add_option("--variant", variant, "theorem1 | theorem2")
        ->required()
        ->check(CLI::IsMember({"theorem1", "theorem2"}));
    grid->add_option("--n", request.n, "Number of Struve factors")->check(CLI::PositiveNumber);
    grid->add_option("--a", request.a, "a (range or value)");
    grid->add_option("--mu", request.mu, "mu (range or value)")->required();
    grid->add_option("--lambda", request.lambda, "lambda (range or value)")->required();
    grid->add_option("--b", request.b, "b (range or value)");
    grid->add_option("--c", request.c, "c (range or value)");
    grid->add_option("--p", request.p, "p_1,...,p_n")->required();
    grid->add_option("--y", request.y, "y_1,...,y_n")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*eval) return cmd_eval(function, params, opts);
        if (*verify) {
            return cmd_verify(input, opts, quad_opt->count() > 0, tol_opt->count() > 0,
                              terms_opt->count() > 0);
        }
        if (*grid) {
            request.variant = struvint::variant_from_string(variant);
            return cmd_grid(request, opts);
        }
    } catch (const struvint::ConvergenceError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConvergence;
    } catch (const struvint::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

#include "struvint/lauricella.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <string>

#include "struvint/errors.hpp"
#include "struvint/gamma.hpp"

namespace struvint {
namespace {

const double kMaxLog = std::log(std::numeric_limits<double>::max());

// Accumulated log of a product of Pochhammer ratios; `zero` short-circuits.
struct LogTerm {
    Complex log{};
    bool zero = false;
};

[[noreturn]] void throw_block_error(const Complex& lambda, double nu, const std::string& block,
                                    const char* what) {
    long location = 0;
    if (auto pole = gamma_pole(lambda)) {
        location = *pole;
    } else if (auto shifted = gamma_pole(lambda + nu)) {
        location = *shifted;
    }
    throw PoleError(location, std::string("omega: ") + what + " in " + block);
}

void add_numerator(LogTerm& acc, const Complex& lambda, double nu, const std::string& block) {
    if (acc.zero) return;
    const LogPochhammer lp = log_pochhammer(lambda, nu);
    switch (lp.kind) {
        case LogPochhammer::Kind::finite:
            acc.log += lp.value;
            return;
        case LogPochhammer::Kind::zero:
            acc.zero = true;
            return;
        case LogPochhammer::Kind::infinite:
            throw_block_error(lambda, nu, block, "infinite numerator");
    }
}

void add_denominator(LogTerm& acc, const Complex& lambda, double nu, const std::string& block) {
    if (acc.zero) return;
    const LogPochhammer lp = log_pochhammer(lambda, nu);
    switch (lp.kind) {
        case LogPochhammer::Kind::finite:
            acc.log -= lp.value;
            return;
        case LogPochhammer::Kind::infinite:
            acc.zero = true;
            return;
        case LogPochhammer::Kind::zero:
            throw_block_error(lambda, nu, block, "zero denominator");
    }
}

double linear_form(const std::vector<double>& weights, std::span<const unsigned> k) {
    double s = 0.0;
    for (std::size_t m = 0; m < k.size(); ++m) s += weights[m] * static_cast<double>(k[m]);
    return s;
}

std::string block_name(const char* kind, std::size_t j) {
    return std::string(kind) + "[" + std::to_string(j) + "]";
}

std::string block_name(const char* kind, std::size_t m, std::size_t j) {
    return std::string(kind) + "[" + std::to_string(m) + "][" + std::to_string(j) + "]";
}

void add_per_variable(LogTerm& acc, const LauricellaSpec& spec, std::size_t m, unsigned km) {
    const double kk = static_cast<double>(km);
    const auto& up = spec.per_var_upper[m];
    const auto& lo = spec.per_var_lower[m];
    for (std::size_t j = 0; j < up.size(); ++j) {
        add_numerator(acc, up[j].value, kk * up[j].weight, block_name("per_var_upper", m, j));
    }
    for (std::size_t j = 0; j < lo.size(); ++j) {
        add_denominator(acc, lo[j].value, kk * lo[j].weight, block_name("per_var_lower", m, j));
    }
}

LogTerm log_omega(const LauricellaSpec& spec, std::span<const unsigned> k) {
    LogTerm acc;
    for (std::size_t j = 0; j < spec.global_upper.size(); ++j) {
        const auto& g = spec.global_upper[j];
        add_numerator(acc, g.value, linear_form(g.weights, k), block_name("global_upper", j));
    }
    for (std::size_t j = 0; j < spec.global_lower.size(); ++j) {
        const auto& g = spec.global_lower[j];
        add_denominator(acc, g.value, linear_form(g.weights, k), block_name("global_lower", j));
    }
    for (std::size_t m = 0; m < spec.n; ++m) add_per_variable(acc, spec, m, k[m]);
    return acc;
}

// Memoized per-variable factors
//   Omega_m(k_m) * z_m^{k_m} / k_m!
// in log-magnitude form, plus the unit phase of z_m^{k_m}.
class PerVariableCache {
public:
    PerVariableCache(const LauricellaSpec& spec, std::span<const Complex> z)
        : spec_(spec), z_(z.begin(), z.end()), entries_(spec.n) {}

    struct Entry {
        LogTerm log;
        Complex phase{1.0};
    };

    const Entry& get(std::size_t m, unsigned km) {
        auto& row = entries_[m];
        while (row.size() <= km) {
            const auto k = static_cast<unsigned>(row.size());
            Entry e;
            if (k > 0 && z_[m] == 0.0) {
                e.log.zero = true;
            } else {
                add_per_variable(e.log, spec_, m, k);
                if (k > 0 && !e.log.zero) {
                    const double kk = static_cast<double>(k);
                    e.log.log += kk * std::log(std::abs(z_[m])) - log_gamma(kk + 1.0);
                    e.phase = row.back().phase * (z_[m] / std::abs(z_[m]));
                }
            }
            row.push_back(e);
        }
        return row[km];
    }

private:
    const LauricellaSpec& spec_;
    std::vector<Complex> z_;
    std::vector<std::vector<Entry>> entries_;
};

// Global blocks keyed by the value of their linear-form subscript.
class GlobalCache {
public:
    explicit GlobalCache(const LauricellaSpec& spec)
        : spec_(spec), upper_(spec.global_upper.size()), lower_(spec.global_lower.size()) {}

    void apply(LogTerm& acc, std::span<const unsigned> k) {
        for (std::size_t j = 0; j < spec_.global_upper.size() && !acc.zero; ++j) {
            merge(acc, lookup(upper_[j], spec_.global_upper[j], k, true, j));
        }
        for (std::size_t j = 0; j < spec_.global_lower.size() && !acc.zero; ++j) {
            merge(acc, lookup(lower_[j], spec_.global_lower[j], k, false, j));
        }
    }

private:
    using Table = std::map<double, LogTerm>;

    LogTerm lookup(Table& table, const GlobalParam& g, std::span<const unsigned> k,
                   bool numerator, std::size_t j) {
        const double nu = linear_form(g.weights, k);
        if (auto it = table.find(nu); it != table.end()) return it->second;
        LogTerm t;
        if (numerator) {
            add_numerator(t, g.value, nu, block_name("global_upper", j));
        } else {
            add_denominator(t, g.value, nu, block_name("global_lower", j));
        }
        table.emplace(nu, t);
        return t;
    }

    static void merge(LogTerm& acc, const LogTerm& t) {
        if (t.zero) {
            acc.zero = true;
        } else {
            acc.log += t.log;
        }
    }

    const LauricellaSpec& spec_;
    std::vector<Table> upper_;
    std::vector<Table> lower_;
};

}  // namespace

void LauricellaSpec::validate() const {
    if (n < 1) throw DomainError("LauricellaSpec: n must be >= 1");
    if (per_var_upper.size() != n || per_var_lower.size() != n) {
        throw DomainError("LauricellaSpec: per-variable blocks must have n = " +
                          std::to_string(n) + " entries");
    }
    auto check_weight = [](double w, const std::string& where) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw DomainError("LauricellaSpec: weight in " + where + " must be a positive real");
        }
    };
    auto check_global = [&](const std::vector<GlobalParam>& block, const char* kind) {
        for (std::size_t j = 0; j < block.size(); ++j) {
            if (block[j].weights.size() != n) {
                throw DomainError("LauricellaSpec: " + block_name(kind, j) +
                                  " needs exactly n weights");
            }
            for (double w : block[j].weights) check_weight(w, block_name(kind, j));
        }
    };
    check_global(global_upper, "global_upper");
    check_global(global_lower, "global_lower");
    for (std::size_t m = 0; m < n; ++m) {
        for (std::size_t j = 0; j < per_var_upper[m].size(); ++j) {
            check_weight(per_var_upper[m][j].weight, block_name("per_var_upper", m, j));
        }
        for (std::size_t j = 0; j < per_var_lower[m].size(); ++j) {
            check_weight(per_var_lower[m][j].weight, block_name("per_var_lower", m, j));
        }
    }
}

double LauricellaSpec::margin(std::size_t m) const {
    double d = 1.0;
    for (const auto& g : global_lower) d += g.weights[m];
    for (const auto& p : per_var_lower[m]) d += p.weight;
    for (const auto& g : global_upper) d -= g.weights[m];
    for (const auto& p : per_var_upper[m]) d -= p.weight;
    return d;
}

double LauricellaSpec::boundary_radius(std::size_t m) const {
    double log_rho = 0.0;
    auto acc = [&](double w, double sign) { log_rho += sign * w * std::log(w); };
    for (const auto& g : global_lower) acc(g.weights[m], 1.0);
    for (const auto& p : per_var_lower[m]) acc(p.weight, 1.0);
    for (const auto& g : global_upper) acc(g.weights[m], -1.0);
    for (const auto& p : per_var_upper[m]) acc(p.weight, -1.0);
    return std::exp(log_rho);
}

Complex omega(const LauricellaSpec& spec, std::span<const unsigned> k) {
    spec.validate();
    if (k.size() != spec.n) throw DomainError("omega: multi-index must have n components");
    const LogTerm t = log_omega(spec, k);
    if (t.zero) return 0.0;
    if (t.log.real() > kMaxLog) throw RangeError("omega: value overflows double");
    return std::exp(t.log);
}

void for_each_in_shell(std::size_t n, unsigned degree,
                       const std::function<void(std::span<const unsigned>)>& visit) {
    if (n == 0) return;
    MultiIndex k(n, 0);
    k[n - 1] = degree;
    while (true) {
        visit(k);
        // Advance to the next composition in lexicographic order.
        std::size_t i = n - 1;
        unsigned tail = k[n - 1];
        bool advanced = false;
        while (i > 0) {
            --i;
            if (tail > 0) {
                ++k[i];
                for (std::size_t j = i + 1; j < n; ++j) k[j] = 0;
                k[n - 1] = tail - 1;
                advanced = true;
                break;
            }
            tail += k[i];
        }
        if (!advanced) return;
    }
}

std::vector<MultiIndex> shell_indices(std::size_t n, unsigned degree) {
    std::vector<MultiIndex> out;
    for_each_in_shell(n, degree, [&](std::span<const unsigned> k) {
        out.emplace_back(k.begin(), k.end());
    });
    return out;
}

LauricellaResult lauricella_eval(const LauricellaSpec& spec, std::span<const Complex> z,
                                 const SeriesControl& ctl) {
    spec.validate();
    ctl.validate();
    if (z.size() != spec.n) throw DomainError("lauricella_eval: need exactly n arguments");
    for (std::size_t m = 0; m < spec.n; ++m) {
        if (!is_finite(z[m])) throw DomainError("lauricella_eval: non-finite argument");
        if (z[m] == 0.0) continue;
        const double d = spec.margin(m);
        if (d < -1e-12) {
            throw DivergenceError("lauricella_eval: negative convergence margin for variable " +
                                  std::to_string(m));
        }
        if (std::abs(d) <= 1e-12 && std::abs(z[m]) >= 0.9 * spec.boundary_radius(m)) {
            throw DivergenceError("lauricella_eval: z[" + std::to_string(m) +
                                  "] outside the zero-margin radius gate");
        }
    }

    PerVariableCache per_var(spec, z);
    GlobalCache global(spec);
    CompensatedSum total;
    std::deque<double> window;
    LauricellaResult result;

    for (unsigned degree = 0; degree < ctl.max_shells; ++degree) {
        double shell_abs = 0.0;
        for_each_in_shell(spec.n, degree, [&](std::span<const unsigned> k) {
            ++result.terms;
            LogTerm acc;
            Complex phase = 1.0;
            for (std::size_t m = 0; m < spec.n && !acc.zero; ++m) {
                const auto& e = per_var.get(m, k[m]);
                if (e.log.zero) {
                    acc.zero = true;
                } else {
                    acc.log += e.log.log;
                    phase *= e.phase;
                }
            }
            if (acc.zero) return;
            global.apply(acc, k);
            if (acc.zero) return;
            if (acc.log.real() > kMaxLog) {
                throw RangeError("lauricella_eval: term overflows at total degree " +
                                 std::to_string(degree));
            }
            const Complex t = std::exp(acc.log) * phase;
            total.add(t);
            shell_abs += std::abs(t);
        });

        result.shells = degree + 1;
        if (degree > 0 && shell_abs <= ctl.rel_tol * std::abs(total.value())) {
            window.push_back(shell_abs);
            if (window.size() >= ctl.consecutive_small) {
                result.value = total.value();
                result.tail_estimate = std::accumulate(window.begin(), window.end(), 0.0) +
                                       4.0 * std::numeric_limits<double>::epsilon() *
                                           total.abs_sum();
                return result;
            }
        } else {
            window.clear();
        }
    }
    throw ConvergenceError("lauricella_eval: no convergence within total degree " +
                           std::to_string(ctl.max_shells - 1));
}

}  // namespace struvint

#include "ssfa/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace ssfa {

namespace {

std::string fmt4(const Real& v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", double(v));
    return buf;
}

std::string fmt_full(const Real& v) {
    return v.str();
}

std::string fmt6(const Real& v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.8g", double(v));
    return buf;
}

Rational parse_rational(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) {
        // Integer or decimal string.
        if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
            s.find('E') == std::string::npos)
            return Rational(s);
        // Decimal: scale by a power of ten.
        std::string t = s;
        auto dot = t.find('.');
        std::size_t frac = t.size() - dot - 1;
        t.erase(dot, 1);
        Rational num(t);
        Rational den(1);
        for (std::size_t i = 0; i < frac; ++i) den *= 10;
        return num / den;
    }
    return Rational(s.substr(0, slash)) / Rational(s.substr(slash + 1));
}

// --- built-in scenarios --------------------------------------------------

// Quantum string under tension between two walls; the closed-form energy
// makes every downstream quantity checkable.
Scenario string_scenario() {
    Scenario s;
    s.name = "string";
    // Odd tail a_{2m+1} = binom(1/2, m) / (4 * 64^m); even tail stops at
    // a_2 = 1/32.
    std::vector<Rational> a(16, Rational(0));
    a[0] = 1;
    a[2] = Rational(1, 32);
    Rational binom(1), denom(4);
    for (int m = 0; 2 * m + 1 <= 15; ++m) {
        if (m > 0) {
            binom *= (Rational(1, 2) - (m - 1)) / m;
            denom *= 64;
        }
        a[std::size_t(2 * m + 1)] = binom / denom;
    }
    std::vector<Real> ar;
    ar.reserve(a.size());
    for (const auto& x : a) ar.push_back(to_real(x));
    s.series = make_series({real_pi() * real_pi() / 8, Rational(-2)}, 1, std::move(ar));
    s.references = {{"exact-limit", real_pi() * real_pi() / 128,
                     "closed-form energy, hard-wall limit"}};
    s.pipelines = {"power-restriction", "transformation"};
    // The exact solution decays to its limit like g^-2, which pins the
    // transformation exponent.
    s.transform_omega = Real(2);
    s.beta_fixture = {Rational(1), Rational(-1, 8), Rational(0), Rational(1, 1024),
                      Rational(0), Rational(-3, 262144), Rational(0),
                      Rational(5, 33554432), Rational(0), Rational(-35, 17179869184)};
    s.transform_fixture = {Rational(1), Rational(-3, 4), Rational(-3, 32),
                           Rational(-15, 512), Rational(-15, 1024),
                           Rational(-1185, 131072), Rational(-1635, 262144),
                           Rational(-77295, 16777216), Rational(-119595, 33554432),
                           Rational(-24489285, 8589934592LL)};
    return s;
}

Scenario membrane_scenario() {
    Scenario s;
    s.name = "membrane";
    s.series = make_series({real_pi() * real_pi() / 8, Rational(-2)}, 1,
                           {Real(1), Real(1) / 4, Real(1) / 32, Real("2.176347e-3"),
                            Real("0.552721e-4"), Real("-0.721482e-5"),
                            Real("-1.777848e-6")});
    s.references = {{"monte-carlo", Real("0.0798"), "Gompper-Kroll simulation, +-0.0003"},
                    {"transfer-matrix", Real("0.0821"), "Kastening numerical result"}};
    s.pipelines = {"power-restriction", "transformation"};
    s.beta_printed = {Real(1), Real(-1) / 8, Real(0), Real("0.64173e-3"),
                      Real("0.10668e-5"), Real("0.46253e-5"), Real("0.18454e-5")};
    return s;
}

Scenario oscillator_scenario() {
    Scenario s;
    s.name = "oscillator";
    s.series = make_series({Real(1), Rational(0)}, 1,
                           {Real("0.5"), Real("0.75"), Real("-2.625"), Real("20.8125"),
                            Real("-241.2890625"), Real("3580.98046875"),
                            Real("-63982.8134766"), Real("1329733.72705")});
    s.references = {{"strong-coupling-amplitude", Real("0.667986"),
                     "numerically exact large-g amplitude of the quartic oscillator"}};
    s.pipelines = {"factor", "iterated-roots"};
    s.coefficient_label_offset = 0;
    return s;
}

Scenario polaron_scenario() {
    Scenario s;
    s.name = "polaron";
    s.series = make_series({Real(-1), Rational(1)}, 1,
                           {Real(1), Real("1.591962e-2"), Real("0.806070e-3")});
    s.asymptote = StrongCouplingExpansion{{{Real("-0.108513"), Rational(2)}}};
    s.references = {{"strong-coupling-amplitude", Real("-0.108513"),
                     "Miyake strong-coupling coefficient"}};
    s.pipelines = {"bootstrap"};
    s.coefficient_label_offset = 1;  // tail n multiplies g^(n+1)
    return s;
}

Scenario lieb_liniger_scenario() {
    Scenario s;
    s.name = "lieb-liniger";
    Real pi2 = real_pi() * real_pi();
    s.series = make_series({Real(1), Rational(1)}, Rational(1, 2),
                           {Real(1), Real("-0.424413"), Real("0.065352"),
                            Real("-0.017201")});
    s.asymptote = StrongCouplingExpansion{{{pi2 / 3, Rational(0)},
                                           {-4 * pi2 / 3, Rational(-1)},
                                           {4 * pi2, Rational(-2)}}};
    s.references = {{"tonks-girardeau", pi2 / 3, "strong-coupling limit pi^2/3"}};
    s.pipelines = {"bootstrap", "interpolant"};
    s.coefficient_label_offset = 2;  // tail n multiplies g^(1+n/2), labeled a_{n+2}
    return s;
}

Scenario fermi_scenario() {
    Scenario s;
    s.name = "fermi-gas";
    Real pi = real_pi();
    s.series = make_series({Real(1), Rational(0)}, 1,
                           {Real(3) / 10, Real(-1) / (3 * pi), Real("0.055661"),
                            Real("-0.00914"), Real("-0.018604")});
    s.asymptote = StrongCouplingExpansion{{{Real("0.132"), Rational(0)}}};
    s.references = {{"unitary-limit", Real("0.132"), "numerical unitary-limit value"}};
    s.pipelines = {"interpolation"};
    return s;
}

const Reference* primary_reference(const Scenario& sc) {
    return sc.references.empty() ? nullptr : &sc.references.front();
}

void append_limit_rows(ScenarioReport& report, const Scenario& sc, const std::string& method,
                       const LimitEstimate& est, const std::vector<int>& orders) {
    const Reference* ref = primary_reference(sc);
    for (int k : orders) {
        ReportRow row;
        row.k = k;
        row.method = method;
        auto it = est.filled.find(k);
        if (it != est.filled.end()) {
            row.value = it->second;
            row.status = est.per_order.at(k) ? "ok" : "filled";
            if (ref) row.error_percent = percentage_error(it->second, ref->value);
        } else {
            auto note = est.notes.find(k);
            row.status = note != est.notes.end() ? "unavailable: " + note->second
                                                 : "unavailable";
        }
        report.rows.push_back(std::move(row));
    }
    if (est.final) {
        FinalRow fr{method, *est.final, std::nullopt};
        if (ref) fr.error_percent = percentage_error(*est.final, ref->value);
        report.finals.push_back(std::move(fr));
    }
}

std::string dump_factor(const FactorApproximant& f) {
    std::ostringstream os;
    for (const auto& fc : f.factors) {
        os << " (A=" << fmt6(fc.node.real());
        if (!effectively_real(fc.node)) os << (fc.node.imag() < 0 ? "-" : "+")
                                           << fmt6(abs(fc.node.imag())) << "i";
        os << ", n=" << fmt6(fc.exponent.real());
        if (!effectively_real(fc.exponent)) os << (fc.exponent.imag() < 0 ? "-" : "+")
                                               << fmt6(abs(fc.exponent.imag())) << "i";
        os << ")";
    }
    return os.str();
}

std::string dump_ladder(const RootApproximant& r) {
    std::ostringstream os;
    for (const auto& l : r.ladder)
        os << " (A=" << fmt6(l.amplitude) << ", n=" << fmt6(l.exponent) << ")";
    return os.str();
}

void run_power_restriction(ScenarioReport& report, const Scenario& sc,
                           const std::vector<int>& orders) {
    auto est = limit_power_restriction(sc.series, orders);
    append_limit_rows(report, sc, "power-restriction", est, orders);
}

void run_transformation(ScenarioReport& report, const Scenario& sc,
                        const std::vector<int>& orders) {
    Real omega;
    if (sc.transform_omega) {
        omega = *sc.transform_omega;
        report.notes.push_back("transformation exponent " + fmt6(omega) + " (pinned)");
    } else {
        auto om = estimate_omega(sc.series, sc.series.order());
        omega = om.selected;
        report.notes.push_back("transformation exponent " + fmt6(omega) +
                               " (estimated at order " + std::to_string(om.selected_order) +
                               ")");
    }
    auto est = limit_via_transformation(sc.series, omega, orders);
    append_limit_rows(report, sc, "transformation", est, orders);
}

void run_bootstrap(ScenarioReport& report, const Scenario& sc, int max_depth) {
    if (!sc.asymptote) throw SchemaError("bootstrap pipeline needs an asymptote");
    AsymptoticSeries cur = sc.series;
    const int ma = int(sc.asymptote->terms.size());
    const int depth0 = (ma - 1) + cur.order() + 1;
    for (int depth = depth0; depth <= max_depth; ++depth) {
        ReportRow row;
        row.k = depth;
        row.method = "bootstrap-ladder";
        try {
            RootApproximant r = build_root_interpolant(cur, *sc.asymptote, depth);
            row.status = "ok";
            report.notes.push_back("depth " + std::to_string(depth) + " ladder:" +
                                   dump_ladder(r));
            report.rows.push_back(row);
            if (depth < max_depth) {
                Real predicted = predict_next_coefficient(r, cur);
                int label = cur.order() + 1 + sc.coefficient_label_offset;
                ReportRow pr;
                pr.k = depth;
                pr.method = "predicted-a" + std::to_string(label);
                pr.value = predicted;
                pr.status = "ok";
                report.rows.push_back(std::move(pr));
                cur.coefficients.push_back(predicted / cur.prefactor.amplitude);
            }
        } catch (const std::exception& e) {
            row.status = std::string("unavailable: ") + e.what();
            report.rows.push_back(row);
            break;
        }
    }
}

void run_interpolant(ScenarioReport& report, const Scenario& sc) {
    // The best interpolant uses two series coefficients and all anchor
    // terms; its depth equals the total condition count.
    if (!sc.asymptote) throw SchemaError("interpolant pipeline needs an asymptote");
    const int ma = int(sc.asymptote->terms.size());
    const int depth = (ma - 1) + 3;
    ReportRow row;
    row.k = depth;
    row.method = "interpolant";
    try {
        RootApproximant r = build_root_interpolant(sc.series, *sc.asymptote, depth);
        row.status = "ok";
        report.notes.push_back("depth " + std::to_string(depth) + " ladder:" +
                               dump_ladder(r));
    } catch (const std::exception& e) {
        row.status = std::string("unavailable: ") + e.what();
    }
    report.rows.push_back(std::move(row));
}

void run_interpolation(ScenarioReport& report, const Scenario& sc) {
    if (!sc.asymptote) throw SchemaError("interpolation pipeline needs an asymptote");
    const Reference* ref = primary_reference(sc);
    for (int k = sc.series.order() - 1; k <= sc.series.order(); ++k) {
        ReportRow row;
        row.k = k + 1;
        row.method = "interpolating-factor";
        try {
            auto f = build_factor_interpolating(sc.series.truncated(k), *sc.asymptote);
            auto [amp, exponent] = factor_asymptote(f);
            (void)exponent;
            row.value = amp;
            row.status = "ok";
            if (ref) row.error_percent = percentage_error(amp, ref->value);
            report.notes.push_back("order " + std::to_string(k + 1) + " factors:" +
                                   dump_factor(f));
        } catch (const std::exception& e) {
            row.status = std::string("unavailable: ") + e.what();
        }
        report.rows.push_back(std::move(row));
    }
    // Iterated-root variant with the finite-limit condition: a nested root
    // in growing powers of g has a finite nonzero limit only with a zero
    // outermost exponent, which collapses it to the constant a0.  The
    // imposed limit differs from a0, so the build cannot close.
    ReportRow rr;
    rr.k = 3;
    rr.method = "iterated-root-limit";
    rr.status = "unavailable: finite-limit condition forces a zero outer exponent "
                "(limit a0 != imposed value)";
    report.rows.push_back(std::move(rr));
}

void run_factor(ScenarioReport& report, const Scenario& sc, const std::vector<int>& orders) {
    const Reference* ref = primary_reference(sc);
    for (int k : orders) {
        std::vector<std::pair<std::string, OddConvention>> variants;
        if (k % 2 == 0)
            variants = {{"factor", OddConvention::UnitNode}};
        else
            variants = {{"factor[unit-node]", OddConvention::UnitNode},
                        {"factor[a1-over-a0]", OddConvention::A1OverA0}};
        for (const auto& [method, conv] : variants) {
            ReportRow row;
            row.k = k;
            row.method = method;
            try {
                auto f = build_factor(sc.series.truncated(k), conv);
                auto [amp, exponent] = factor_asymptote(f);
                row.value = amp;
                row.status = "exponent " + fmt6(exponent);
                if (ref) row.error_percent = percentage_error(amp, ref->value);
                report.notes.push_back("order " + std::to_string(k) + " " + method + ":" +
                                       dump_factor(f));
            } catch (const std::exception& e) {
                row.status = std::string("unavailable: ") + e.what();
            }
            report.rows.push_back(std::move(row));
        }
    }
}

void run_iterated_roots(ScenarioReport& report, const Scenario& sc) {
    const Reference* ref = primary_reference(sc);
    auto stages = build_root_iterated(sc.series);
    for (const auto& r : stages) {
        ReportRow row;
        row.k = r.depth();
        row.method = "iterated-root";
        try {
            auto [amp, exponent] = root_asymptote(r);
            row.value = amp;
            row.status = "exponent " + fmt6(exponent);
            if (ref) row.error_percent = percentage_error(amp, ref->value);
        } catch (const std::exception& e) {
            row.status = std::string("no asymptote: ") + e.what();
        }
        report.notes.push_back("stage depth " + std::to_string(r.depth()) + ":" +
                               dump_ladder(r));
        report.rows.push_back(std::move(row));
    }
    if (stages.empty()) {
        ReportRow row;
        row.method = "iterated-root";
        row.status = "unavailable: no stage could be built";
        report.rows.push_back(std::move(row));
    }
}

}  // namespace

Scenario load_scenario(const std::string& name) {
    if (name == "string") return string_scenario();
    if (name == "membrane") return membrane_scenario();
    if (name == "oscillator") return oscillator_scenario();
    if (name == "polaron") return polaron_scenario();
    if (name == "lieb-liniger") return lieb_liniger_scenario();
    if (name == "fermi-gas") return fermi_scenario();
    throw SchemaError("unknown scenario: " + name);
}

Scenario load_scenario_document(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw SchemaError(std::string("input is not valid JSON: ") + e.what());
    }
    auto need = [&](const char* field) -> const nlohmann::json& {
        if (!doc.contains(field)) throw SchemaError(std::string("missing field: ") + field);
        return doc.at(field);
    };
    auto as_string = [](const nlohmann::json& j, const std::string& where) -> std::string {
        if (j.is_string()) return j.get<std::string>();
        if (j.is_number_integer()) return std::to_string(j.get<long long>());
        throw SchemaError("field " + where + " must be a decimal string");
    };

    Scenario sc;
    sc.name = doc.value("name", "document");
    const auto& pf = need("prefactor");
    if (!pf.is_object() || !pf.contains("amplitude") || !pf.contains("exponent"))
        throw SchemaError("prefactor must carry amplitude and exponent");
    PowerPrefactor prefactor;
    try {
        prefactor.amplitude = Real(as_string(pf.at("amplitude"), "prefactor.amplitude"));
        prefactor.exponent = parse_rational(as_string(pf.at("exponent"), "prefactor.exponent"));
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception&) {
        throw SchemaError("prefactor fields must parse as numbers");
    }
    Rational power_step;
    try {
        power_step = parse_rational(as_string(need("power_step"), "power_step"));
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception&) {
        throw SchemaError("power_step must parse as a rational");
    }
    const auto& coeffs = need("coefficients");
    if (!coeffs.is_array() || coeffs.empty())
        throw SchemaError("coefficients must be a nonempty array");
    std::vector<Real> a;
    for (const auto& c : coeffs) a.push_back(Real(as_string(c, "coefficients[]")));
    bool renormalized = a[0] != 1;
    try {
        sc.series = make_series(prefactor, power_step, std::move(a));
    } catch (const std::exception& e) {
        throw SchemaError(e.what());
    }
    if (renormalized)
        std::fprintf(stderr, "notice: a0 != 1, series renormalized into the prefactor\n");

    if (doc.contains("asymptote")) {
        StrongCouplingExpansion asym;
        for (const auto& t : doc.at("asymptote")) {
            if (!t.is_object() || !t.contains("b") || !t.contains("alpha"))
                throw SchemaError("asymptote terms must carry b and alpha");
            asym.terms.push_back({Real(as_string(t.at("b"), "asymptote.b")),
                                  parse_rational(as_string(t.at("alpha"), "asymptote.alpha"))});
        }
        sc.asymptote = std::move(asym);
    }
    if (doc.contains("references")) {
        for (const auto& r : doc.at("references")) {
            if (!r.is_object() || !r.contains("label") || !r.contains("value") ||
                !r.contains("source"))
                throw SchemaError("references must carry label, value, source");
            sc.references.push_back({r.at("label").get<std::string>(),
                                     Real(as_string(r.at("value"), "references.value")),
                                     r.at("source").get<std::string>()});
        }
    }
    if (doc.contains("omega"))
        sc.transform_omega = Real(as_string(doc.at("omega"), "omega"));
    sc.pipelines = {"power-restriction", "transformation"};
    return sc;
}

Real exact_string_energy(const Real& g) {
    if (g <= 0) throw SchemaError("exact_string_energy needs g > 0");
    Real pi2 = real_pi() * real_pi();
    return pi2 / (8 * g * g) *
           (1 + g * g / 32 + (g / 4) * sqrt(1 + g * g / 64));
}

Real percentage_error(const Real& value, const Real& reference) {
    if (reference == 0) throw SchemaError("percentage_error needs a nonzero reference");
    return (value - reference) / reference * 100;
}

ScenarioReport run_scenario(const Scenario& scenario, const ScenarioOptions& options) {
    ScenarioReport report;
    report.scenario = scenario.name;
    const std::vector<std::string>& pipelines =
        options.pipelines.empty() ? scenario.pipelines : options.pipelines;

    // Default order windows per pipeline kind.
    auto limit_orders = [&]() {
        int lo = options.min_order.value_or(scenario.name == "string" ? 3 : 1);
        int hi = options.max_order.value_or(scenario.series.order());
        std::vector<int> orders;
        for (int k = lo; k <= hi; ++k) orders.push_back(k);
        if (orders.empty()) throw SchemaError("empty order range");
        return orders;
    };

    for (const auto& p : pipelines) {
        try {
            if (p == "power-restriction") {
                run_power_restriction(report, scenario, limit_orders());
            } else if (p == "transformation") {
                run_transformation(report, scenario, limit_orders());
            } else if (p == "bootstrap") {
                int ma = scenario.asymptote ? int(scenario.asymptote->terms.size()) : 1;
                int depth0 = (ma - 1) + scenario.series.order() + 1;
                run_bootstrap(report, scenario, options.max_order.value_or(depth0 + 2));
            } else if (p == "interpolant") {
                run_interpolant(report, scenario);
            } else if (p == "interpolation") {
                run_interpolation(report, scenario);
            } else if (p == "factor") {
                std::vector<int> orders;
                int lo = options.min_order.value_or(2);
                int hi = options.max_order.value_or(scenario.series.order() - 1);
                for (int k = lo; k <= hi; ++k) orders.push_back(k);
                run_factor(report, scenario, orders);
            } else if (p == "iterated-roots") {
                run_iterated_roots(report, scenario);
            } else {
                report.notes.push_back("pipeline '" + p + "' not applicable to scenario '" +
                                       scenario.name + "'");
            }
        } catch (const std::exception& e) {
            report.notes.push_back("pipeline '" + p + "' failed: " + e.what());
        }
    }
    return report;
}

std::string emit_report(const ScenarioReport& report, ReportFormat format) {
    if (report.rows.empty()) throw SchemaError("emit_report: empty report");
    std::ostringstream os;
    switch (format) {
        case ReportFormat::TableText: {
            os << "scenario: " << report.scenario << "\n";
            os << "  k  method                    value      error%    status\n";
            for (const auto& r : report.rows) {
                char line[160];
                std::snprintf(line, sizeof line, "%3d  %-24s  %-9s  %-8s  %s\n", r.k,
                              r.method.c_str(),
                              r.value ? fmt4(*r.value).c_str() : "-",
                              r.error_percent ? fmt4(*r.error_percent).c_str() : "-",
                              r.status.c_str());
                os << line;
            }
            for (const auto& f : report.finals) {
                char line[160];
                std::snprintf(line, sizeof line, "final %-22s  %-9s  %s\n", f.method.c_str(),
                              fmt4(f.value).c_str(),
                              f.error_percent ? fmt4(*f.error_percent).c_str() : "-");
                os << line;
            }
            for (const auto& n : report.notes) os << "note: " << n << "\n";
            break;
        }
        case ReportFormat::Csv: {
            os << "k,method,value,error_percent,status\n";
            for (const auto& r : report.rows) {
                os << r.k << "," << r.method << "," << (r.value ? fmt4(*r.value) : "") << ","
                   << (r.error_percent ? fmt4(*r.error_percent) : "") << ",\""
                   << r.status << "\"\n";
            }
            for (const auto& f : report.finals) {
                os << "final," << f.method << "," << fmt4(f.value) << ","
                   << (f.error_percent ? fmt4(*f.error_percent) : "") << ",\"final\"\n";
            }
            break;
        }
        case ReportFormat::JsonDoc: {
            nlohmann::json doc;
            doc["scenario"] = report.scenario;
            doc["rows"] = nlohmann::json::array();
            for (const auto& r : report.rows) {
                nlohmann::json row;
                row["k"] = r.k;
                row["method"] = r.method;
                if (r.value) row["value"] = fmt_full(*r.value);
                if (r.error_percent) row["error_percent"] = fmt_full(*r.error_percent);
                row["status"] = r.status;
                doc["rows"].push_back(std::move(row));
            }
            doc["finals"] = nlohmann::json::array();
            for (const auto& f : report.finals) {
                nlohmann::json row;
                row["method"] = f.method;
                row["value"] = fmt_full(f.value);
                if (f.error_percent) row["error_percent"] = fmt_full(*f.error_percent);
                doc["finals"].push_back(std::move(row));
            }
            doc["notes"] = report.notes;
            os << doc.dump(2) << "\n";
            break;
        }
    }
    return os.str();
}

}  // namespace ssfa

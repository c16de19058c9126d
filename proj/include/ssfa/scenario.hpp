#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ssfa/limit.hpp"
#include "ssfa/root.hpp"

namespace ssfa {

struct Reference {
    std::string label;
    Real value;
    std::string source;
};

struct Scenario {
    std::string name;
    AsymptoticSeries series;
    std::optional<StrongCouplingExpansion> asymptote;
    std::vector<Reference> references;
    std::vector<std::string> pipelines;  // defaults when the caller names none

    // Pinned decay exponent for the variable transformation.  Set only when
    // it is known exactly (the stiff-string case, where the closed-form
    // solution fixes it); otherwise estimate_omega supplies it.
    std::optional<Real> transform_omega;

    // Exact cross-check fixtures (stiff string): log-derivative and
    // transformed-series coefficients, index 0 upward.
    std::vector<Rational> beta_fixture;
    std::vector<Rational> transform_fixture;

    // Published log-derivative coefficients at printed precision (membrane).
    std::vector<Real> beta_printed;

    // Offset between tail index n and the published coefficient label
    // (e.g. the Bose-gas listing starts its tail at a_3).
    int coefficient_label_offset = 0;
};

struct ReportRow {
    int k = 0;
    std::string method;
    std::optional<Real> value;
    std::optional<Real> error_percent;
    std::string status;  // "ok", "filled", or a failure annotation
};

struct FinalRow {
    std::string method;
    Real value;
    std::optional<Real> error_percent;
};

struct ScenarioReport {
    std::string scenario;
    std::vector<ReportRow> rows;
    std::vector<FinalRow> finals;
    std::vector<std::string> notes;  // parameter dumps and annotations
};

struct ScenarioOptions {
    std::vector<std::string> pipelines;  // empty -> scenario defaults
    std::optional<int> min_order;
    std::optional<int> max_order;
};

enum class ReportFormat { TableText, Csv, JsonDoc };

// Built-in names: polaron, lieb-liniger, fermi-gas, oscillator, string,
// membrane.
Scenario load_scenario(const std::string& name);

// Structured input document (JSON text; decimal strings for all reals).
Scenario load_scenario_document(const std::string& json_text);

Real exact_string_energy(const Real& g);

Real percentage_error(const Real& value, const Real& reference);

ScenarioReport run_scenario(const Scenario& scenario, const ScenarioOptions& options = {});

std::string emit_report(const ScenarioReport& report, ReportFormat format);

}  // namespace ssfa

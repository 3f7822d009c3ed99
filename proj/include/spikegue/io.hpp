#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spikegue/mc.hpp"
#include "spikegue/measure.hpp"
#include "spikegue/stats.hpp"

namespace spikegue {

// Doubles are rendered with %.17g everywhere so artifacts round-trip
// bit-exactly and reruns of the same config diff clean.
std::string format_double(double v);

// One-line config echo embedded in every artifact header. Deliberately
// excludes execution details (worker count, output directory): artifacts
// from the same mathematical configuration must be byte-identical.
std::string config_echo(const ExperimentConfig& config);

// records.csv: long format, one row per (trial, observable), with each
// trial's own stream seed so single rows can be replayed in isolation.
void write_records_csv(const ExperimentResult& result, const std::string& path);

// records.jsonl: the same rows as JSON objects, one per line.
void write_records_jsonl(const ExperimentResult& result, const std::string& path);

// Density or tail curve as x,y pairs under a # config header.
void write_kde_csv(const ExperimentConfig& config, const KdeCurve& curve,
                   const std::string& path);
void write_tail_csv(const ExperimentConfig& config, const TailCurve& curve,
                    const std::string& path);

// Per-observable summary: moments plus the exponential goodness-of-fit
// block for delocalized coordinates.
std::string summary_json(const ExperimentResult& result);
void write_summary_json(const ExperimentResult& result, const std::string& path);

// Gnuplot script rendering the recorded density curves against the unit
// exponential; pairs with the curve files written above.
void write_density_plot_script(const ExperimentConfig& config,
                               const std::vector<std::string>& kde_files,
                               const std::vector<std::string>& labels, const std::string& path);

// Measure-moment verification table; header is a config-echo line.
void write_measure_csv(const std::vector<MeasureMomentRow>& rows, const std::string& header,
                       std::ostream& out);
void write_measure_csv(const std::vector<MeasureMomentRow>& rows, const std::string& header,
                       const std::string& path);
std::string measure_rows_json(const std::vector<MeasureMomentRow>& rows);

// Closed-form moments alone, no sampling: x, regime, mean_closed, var_closed.
void write_closed_moment_csv(int N, const std::vector<double>& grid, const std::string& header,
                             std::ostream& out);
void write_closed_moment_csv(int N, const std::vector<double>& grid, const std::string& header,
                             const std::string& path);

}  // namespace spikegue

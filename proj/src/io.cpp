#include "spikegue/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "spikegue/errors.hpp"
#include "spikegue/rng.hpp"

namespace spikegue {

namespace {

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw config_error("cannot open for writing: " + path);
  return out;
}

std::string join_doubles(const std::vector<double>& values) {
  std::string s;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) s += ",";
    s += format_double(values[i]);
  }
  return s;
}

}  // namespace

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string config_echo(const ExperimentConfig& config) {
  std::ostringstream out;
  out << "N=" << config.spike.N << " k=" << config.spike.k() << " a=" << join_doubles(config.spike.a)
      << " trials=" << config.trials << " seed=" << config.seed << " observables=";
  for (std::size_t o = 0; o < config.observables.size(); ++o) {
    if (o) out << ";";
    out << "(" << config.observables[o].j << "," << config.observables[o].l << ")";
  }
  out << " identity=" << (config.record_identity ? 1 : 0)
      << " xi=" << (config.record_xi ? 1 : 0);
  if (config.record_xi) out << " fractions=" << join_doubles(config.xi_fractions);
  return out.str();
}

void write_records_csv(const ExperimentResult& result, const std::string& path) {
  std::ofstream out = open_or_throw(path);
  const ExperimentConfig& config = result.config;
  out << "# " << config_echo(config) << "\n";
  out << "trial,seed,observable_j,observable_l,scaled_value\n";
  // Long format: one row per (trial, observable); the seed column is the
  // trial's own stream seed so any single row can be replayed in isolation.
  for (const TrialRecord& rec : result.records) {
    const std::uint64_t seed = stream_seed(config.seed, static_cast<std::uint64_t>(rec.trial));
    for (std::size_t o = 0; o < config.observables.size(); ++o) {
      out << rec.trial << "," << seed << "," << config.observables[o].j << ","
          << config.observables[o].l << "," << format_double(rec.scaled[o]) << "\n";
    }
  }
}

void write_records_jsonl(const ExperimentResult& result, const std::string& path) {
  std::ofstream out = open_or_throw(path);
  const ExperimentConfig& config = result.config;
  for (const TrialRecord& rec : result.records) {
    const std::uint64_t seed = stream_seed(config.seed, static_cast<std::uint64_t>(rec.trial));
    for (std::size_t o = 0; o < config.observables.size(); ++o) {
      out << "{\"trial\":" << rec.trial << ",\"seed\":" << seed
          << ",\"observable_j\":" << config.observables[o].j
          << ",\"observable_l\":" << config.observables[o].l
          << ",\"scaled_value\":" << format_double(rec.scaled[o]) << "}\n";
    }
  }
}

void write_kde_csv(const ExperimentConfig& config, const KdeCurve& curve,
                   const std::string& path) {
  std::ofstream out = open_or_throw(path);
  out << "# " << config_echo(config) << "\n";
  out << "# bandwidth=" << format_double(curve.bandwidth) << "\n";
  out << "x,density\n";
  for (std::size_t i = 0; i < curve.x.size(); ++i) {
    out << format_double(curve.x[i]) << "," << format_double(curve.density[i]) << "\n";
  }
}

void write_tail_csv(const ExperimentConfig& config, const TailCurve& curve,
                    const std::string& path) {
  std::ofstream out = open_or_throw(path);
  out << "# " << config_echo(config) << "\n";
  out << "t,neg_log_tail,count_above\n";
  for (std::size_t i = 0; i < curve.t.size(); ++i) {
    out << format_double(curve.t[i]) << "," << format_double(curve.neg_log_tail[i]) << ","
        << curve.count_above[i] << "\n";
  }
}

std::string summary_json(const ExperimentResult& result) {
  const ExperimentConfig& config = result.config;
  std::ostringstream out;
  out << "{\n  \"config\": \"" << config_echo(config) << "\",\n  \"observables\": [\n";
  for (std::size_t o = 0; o < config.observables.size(); ++o) {
    const Observable& obs = config.observables[o];
    const std::vector<double> column = result.column(static_cast<int>(o));
    double mean = 0.0;
    for (double v : column) mean += v;
    mean /= static_cast<double>(column.size());
    double m2 = 0.0;
    for (double v : column) m2 += (v - mean) * (v - mean);
    const double var = column.size() > 1 ? m2 / static_cast<double>(column.size() - 1) : 0.0;
    const bool delocalized = obs.l > config.spike.k();
    out << "    {\"j\": " << obs.j << ", \"l\": " << obs.l << ", \"scale_power\": \""
        << (delocalized ? "N" : "N^(1/3)") << "\", \"trials\": " << column.size()
        << ", \"mean\": " << format_double(mean) << ", \"variance\": " << format_double(var);
    // The goodness-of-fit battery has a 100-sample floor; below it the
    // summary carries moments only.
    if (delocalized && column.size() >= 100) {
      const Exp1Gof gof = exp1_gof(column);
      out << ", \"exp1\": {\"ks\": " << format_double(gof.ks)
          << ", \"mean\": " << format_double(gof.mean)
          << ", \"tail_slope\": " << format_double(gof.tail_slope) << "}";
    }
    out << "}" << (o + 1 < config.observables.size() ? "," : "") << "\n";
  }
  out << "  ]\n}\n";
  return out.str();
}

void write_summary_json(const ExperimentResult& result, const std::string& path) {
  open_or_throw(path) << summary_json(result);
}

void write_density_plot_script(const ExperimentConfig& config,
                               const std::vector<std::string>& kde_files,
                               const std::vector<std::string>& labels, const std::string& path) {
  if (kde_files.size() != labels.size()) {
    throw config_error("plot script: one label per curve file required");
  }
  std::ofstream out = open_or_throw(path);
  out << "# " << config_echo(config) << "\n";
  out << "set datafile separator ','\n";
  out << "set xlabel 'scaled squared overlap'\n";
  out << "set ylabel 'density'\n";
  out << "set xrange [0:6]\n";
  out << "set key top right\n";
  out << "plot exp(-x) title 'Exp(1) density' with lines dt 2";
  for (std::size_t i = 0; i < kde_files.size(); ++i) {
    out << ", \\\n  '" << kde_files[i] << "' using 1:2 title '" << labels[i] << "' with lines";
  }
  out << "\n";
}

void write_measure_csv(const std::vector<MeasureMomentRow>& rows, const std::string& header,
                       std::ostream& out) {
  out << "# " << header << "\n";
  out << "x,regime,trials,mean_mc,se_mean,var_mc,mean_closed,var_closed,z_mean\n";
  for (const MeasureMomentRow& row : rows) {
    out << format_double(row.x) << "," << row.regime << "," << row.trials << ","
        << format_double(row.mean_mc) << "," << format_double(row.se_mean) << ","
        << format_double(row.var_mc) << "," << format_double(row.mean_closed) << ","
        << format_double(row.var_closed) << "," << format_double(row.z_mean) << "\n";
  }
}

void write_measure_csv(const std::vector<MeasureMomentRow>& rows, const std::string& header,
                       const std::string& path) {
  std::ofstream out = open_or_throw(path);
  write_measure_csv(rows, header, out);
}

void write_closed_moment_csv(int N, const std::vector<double>& grid, const std::string& header,
                             std::ostream& out) {
  out << "# " << header << "\n";
  out << "x,regime,mean_closed,var_closed\n";
  for (double x : grid) {
    out << format_double(x) << "," << regime_tag(N, x) << "," << format_double(e_n_closed(N, x))
        << "," << format_double(v_n_closed(N, x)) << "\n";
  }
}

void write_closed_moment_csv(int N, const std::vector<double>& grid, const std::string& header,
                             const std::string& path) {
  std::ofstream out = open_or_throw(path);
  write_closed_moment_csv(N, grid, header, out);
}

std::string measure_rows_json(const std::vector<MeasureMomentRow>& rows) {
  std::ostringstream out;
  out << "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const MeasureMomentRow& row = rows[i];
    out << "  {\"x\": " << format_double(row.x) << ", \"regime\": \"" << row.regime
        << "\", \"trials\": " << row.trials << ", \"mean_mc\": " << format_double(row.mean_mc)
        << ", \"se_mean\": " << format_double(row.se_mean)
        << ", \"var_mc\": " << format_double(row.var_mc)
        << ", \"mean_closed\": " << format_double(row.mean_closed)
        << ", \"var_closed\": " << format_double(row.var_closed)
        << ", \"z_mean\": " << format_double(row.z_mean) << "}"
        << (i + 1 < rows.size() ? "," : "") << "\n";
  }
  out << "]\n";
  return out.str();
}

}  // namespace spikegue

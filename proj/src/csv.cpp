#include "awh/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace awh {

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buffer[64];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc{}) throw std::runtime_error("format_number: conversion failed");
  return std::string(buffer, end);
}

namespace {

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string curve_csv(const std::vector<CurvePoint>& curve) {
  std::string out = "level_index,lambda,log10_prob,prob\n";
  for (std::size_t k = 0; k < curve.size(); ++k) {
    out += std::to_string(k) + "," + format_number(curve[k].lambda) + "," +
           format_number(curve[k].log_prob / std::log(10.0)) + "," +
           format_number(curve[k].prob) + "\n";
  }
  return out;
}

std::string histogram_csv(const LevelLadder& ladder, const std::vector<double>& W,
                          const std::vector<double>& target) {
  const double n = std::accumulate(W.begin(), W.end(), 0.0);
  std::string out = "level_index,lambda,W,target_times_n\n";
  for (std::size_t k = 0; k < ladder.size(); ++k) {
    out += std::to_string(k) + "," + format_number(ladder[k]) + "," + format_number(W[k]) + "," +
           format_number(target[k] * n) + "\n";
  }
  return out;
}

std::string f_trace_csv(const LevelLadder& ladder,
                        const std::vector<HistogramSnapshot>& snapshots) {
  std::string out = "iteration,level_index,lambda,f,F,W,target_times_n\n";
  for (const auto& s : snapshots) {
    const double n = std::accumulate(s.W.begin(), s.W.end(), 0.0);
    for (std::size_t k = 0; k < ladder.size(); ++k) {
      out += std::to_string(s.iteration) + "," + std::to_string(k) + "," +
             format_number(ladder[k]) + "," + format_number(s.f[k]) + "," +
             format_number(s.F[k]) + "," + format_number(s.W[k]) + "," +
             format_number(s.target[k] * n) + "\n";
    }
  }
  return out;
}

std::string replicates_csv(const ErrorReport& report, double reference) {
  std::string out = "replicate,seed,p_failure,relative_error,evals\n";
  for (std::size_t i = 0; i < report.estimates.size(); ++i) {
    out += std::to_string(i) + "," + std::to_string(report.seeds[i]) + "," +
           format_number(report.estimates[i]) + "," +
           format_number((report.estimates[i] - reference) / reference) + "," +
           std::to_string(report.evals[i]) + "\n";
  }
  return out;
}

std::string summary_csv(const std::string& method, const ErrorReport& report, double reference,
                        const std::string& reference_source) {
  return "method,replicates,reference,reference_source,mean,rms_relative_error,"
         "evals_per_replicate\n" +
         method + "," + std::to_string(report.estimates.size()) + "," + format_number(reference) +
         "," + quote(reference_source) + "," + format_number(report.mean) + "," +
         format_number(report.rms_relative_error) + "," +
         std::to_string(report.evals_per_replicate) + "\n";
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace awh

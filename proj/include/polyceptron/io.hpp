#pragma once

// Text file formats.
//
// Data files are CSV, one sample per row: d feature columns followed by a
// label of -1 or +1, optionally preceded by one header row.
//
// Model files:
//
//   polyceptron-model 1
//   dim <d>
//   hyperplanes <K>
//   1 w_1 ... w_d b
//   ...
//   K w_1 ... w_d b
//
// Rows carry their 1-based hyperplane index. Values are written with 17
// significant digits so save/load is lossless.

#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "polyceptron/core.hpp"
#include "polyceptron/errors.hpp"
#include "polyceptron/format.hpp"

namespace polyceptron {

inline constexpr int kModelFormatVersion = 1;

inline std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

// A row counts as a header when none of its fields parses as a number.
inline bool looks_like_header(std::string_view line) {
  for (auto field : split(line, ',')) {
    if (parse_double(field)) return false;
  }
  return true;
}

inline Dataset parse_csv(std::istream& in, bool has_header) {
  Dataset out;
  std::string line;
  std::size_t line_no = 0;
  std::size_t columns = 0;
  bool header_pending = has_header;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() < 2) throw ParseError(line_no, "expected features and a label");
    if (columns == 0) {
      columns = fields.size();
    } else if (fields.size() != columns) {
      throw ParseError(line_no, "expected " + std::to_string(columns) + " columns, got " +
                                    std::to_string(fields.size()));
    }
    LabeledSample s;
    s.features.reserve(columns - 1);
    for (std::size_t c = 0; c + 1 < columns; ++c) {
      const auto v = parse_double(fields[c]);
      if (!v) {
        throw ParseError(line_no, "column " + std::to_string(c + 1) + ": not a number: '" +
                                      std::string(trim(fields[c])) + "'");
      }
      if (!std::isfinite(*v)) {
        throw ParseError(line_no, "column " + std::to_string(c + 1) + ": non-finite value");
      }
      s.features.push_back(*v);
    }
    const auto label = parse_double(fields.back());
    if (!label || (*label != 1.0 && *label != -1.0)) {
      throw ParseError(line_no, "label must be -1 or +1, got '" +
                                    std::string(trim(fields.back())) + "'");
    }
    s.label = static_cast<int>(*label);
    out.push_back(std::move(s));
  }
  return out;
}

inline Dataset load_csv(const std::string& path, bool has_header) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return parse_csv(in, has_header);
}

// Reads the first line to decide whether it is a header.
inline Dataset load_csv_detect_header(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  std::string first;
  std::getline(in, first);
  const bool header = !trim(first).empty() && looks_like_header(first);
  in.clear();
  in.seekg(0);
  return parse_csv(in, header);
}

inline void write_csv(std::ostream& out, std::span<const LabeledSample> data) {
  for (const auto& s : data) {
    for (double v : s.features) out << format_double(v) << ',';
    out << s.label << '\n';
  }
}

inline void save_csv(const std::string& path, std::span<const LabeledSample> data) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_csv(out, data);
  if (!out.flush()) throw IoError("write failed: " + path);
}

inline void write_model(std::ostream& out, const PolyhedralModel& model) {
  out << "polyceptron-model " << kModelFormatVersion << '\n';
  out << "dim " << model.dim() << '\n';
  out << "hyperplanes " << model.count() << '\n';
  for (std::size_t k = 0; k < model.count(); ++k) {
    out << k + 1;
    for (double v : model.weights(k)) out << ' ' << format_double(v);
    out << '\n';
  }
}

namespace detail {

inline std::size_t read_header_field(std::istream& in, std::size_t& line_no,
                                     std::string_view key) {
  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError(line_no + 1, "truncated model file: missing '" + std::string(key) + "'");
  }
  ++line_no;
  const auto tok = split_ws(line);
  if (tok.size() != 2 || tok[0] != key) {
    throw ParseError(line_no, "expected '" + std::string(key) + " <value>'");
  }
  const auto v = parse_int(tok[1]);
  if (!v || *v < 0) throw ParseError(line_no, "bad value for '" + std::string(key) + "'");
  return static_cast<std::size_t>(*v);
}

}  // namespace detail

inline PolyhedralModel read_model(std::istream& in) {
  std::size_t line_no = 0;
  const std::size_t version = detail::read_header_field(in, line_no, "polyceptron-model");
  if (version != static_cast<std::size_t>(kModelFormatVersion)) {
    throw ParseError(line_no, "unsupported model format version " + std::to_string(version));
  }
  const std::size_t dim = detail::read_header_field(in, line_no, "dim");
  const std::size_t count = detail::read_header_field(in, line_no, "hyperplanes");
  if (count < 1) throw ParseError(line_no, "model needs at least one hyperplane");

  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    if (rows.size() == count) throw ParseError(line_no, "more rows than hyperplanes");
    const auto tok = split_ws(line);
    if (tok.size() != dim + 2) {
      throw ParseError(line_no, "expected index and " + std::to_string(dim + 1) +
                                    " values, got " + std::to_string(tok.size()) + " fields");
    }
    const auto index = parse_int(tok[0]);
    if (!index || *index != static_cast<long long>(rows.size() + 1)) {
      throw ParseError(line_no, "expected row index " + std::to_string(rows.size() + 1));
    }
    std::vector<double> row;
    for (std::size_t i = 1; i < tok.size(); ++i) {
      const auto v = parse_double(tok[i]);
      if (!v || !std::isfinite(*v)) throw ParseError(line_no, "bad weight value");
      row.push_back(*v);
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() != count) {
    throw ParseError(line_no, "truncated model file: expected " + std::to_string(count) +
                                  " rows, got " + std::to_string(rows.size()));
  }
  return PolyhedralModel(rows);
}

inline void save_model(const std::string& path, const PolyhedralModel& model) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_model(out, model);
  if (!out.flush()) throw IoError("write failed: " + path);
}

inline PolyhedralModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  return read_model(in);
}

// "predicted,h" header, then one row per sample.
inline void write_predictions(std::ostream& out, const PolyhedralModel& model,
                              std::span<const LabeledSample> data) {
  out << "predicted,h\n";
  for (const auto& s : data) {
    const double h = decision_value(model, augment(s));
    out << sign_label(h) << ',' << format_double(h) << '\n';
  }
}

}  // namespace polyceptron

#include "alimit/formats.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "alimit/common.hpp"

namespace alimit {

std::string format_number(double v, int digits) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.{}g}", v, digits);
}

std::string format_exact(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{}", v);
}

namespace {

void require_tag(const Json& j) {
  if (!j.is_object() || !j.contains("format") || j.at("format") != kFormatTag)
    throw std::runtime_error(fmt::format("expected an object tagged \"{}\"", kFormatTag));
}

}  // namespace

Json to_json(const DiagResult& r) {
  Json edges = Json::array();
  for (const auto& [child, parent] : r.removed_edges) edges.push_back({child + 1, parent + 1});
  return Json{{"format", kFormatTag}, {"d", r.d},         {"n_pos", r.n_pos},
              {"n_neg", r.n_neg},     {"n_zero", r.n_zero}, {"removed_edges", edges}};
}

DiagResult diag_result_from_json(const Json& j) {
  require_tag(j);
  DiagResult r;
  r.d = j.at("d").get<std::vector<double>>();
  r.n_pos = j.at("n_pos").get<std::size_t>();
  r.n_neg = j.at("n_neg").get<std::size_t>();
  r.n_zero = j.at("n_zero").get<std::size_t>();
  if (j.contains("removed_edges")) {
    for (const auto& e : j.at("removed_edges")) {
      const auto c = e.at(0).get<std::size_t>();
      const auto p = e.at(1).get<std::size_t>();
      if (c == 0 || p == 0) throw std::runtime_error("removed_edges are 1-based");
      r.removed_edges.emplace_back(c - 1, p - 1);
    }
  }
  if (r.n_pos + r.n_neg + r.n_zero != r.d.size())
    throw std::runtime_error("inertia counts do not add up to the diagonal length");
  return r;
}

Json to_json(const CaterpillarSpec& spec) { return Json(spec.r); }

CaterpillarSpec caterpillar_from_json(const Json& j) {
  if (!j.is_array()) throw std::runtime_error("caterpillar spec must be a JSON array");
  CaterpillarSpec spec{j.get<std::vector<int>>()};
  spec.validate();
  return spec;
}

Json to_json(const ShearerSequence& seq) {
  return Json{{"format", kFormatTag},
              {"alpha", seq.params.alpha()},
              {"lambda", seq.params.lambda()},
              {"k", seq.k},
              {"r", seq.r},
              {"b", seq.b}};
}

Cell Cell::of(double v) {
  if (std::isinf(v) && v > 0) return {State::Inf, v};
  return {State::Value, v};
}

std::optional<TableFormat> parse_table_format(std::string_view s) {
  if (s == "csv") return TableFormat::Csv;
  if (s == "json") return TableFormat::Json;
  if (s == "text") return TableFormat::Text;
  return std::nullopt;
}

namespace {

const Cell& cell_for(const ThresholdRow& row, std::string_view column) {
  if (column == "tau0") return row.tau0;
  if (column == "tau1") return row.tau1;
  if (column == "tau1_prime") return row.tau1_prime;
  if (column == "tau2") return row.tau2;
  throw std::invalid_argument(fmt::format("unknown column {}", column));
}

std::string cell_text(const Cell& c, int digits) {
  switch (c.state) {
    case Cell::State::Value:
      return format_number(c.value, digits);
    case Cell::State::Inf:
      return "inf";
    case Cell::State::Undefined:
      return "undefined";
  }
  return "";
}

}  // namespace

void write_threshold_rows(std::ostream& out, const std::vector<ThresholdRow>& rows,
                          const std::vector<std::string>& columns, TableFormat format,
                          int digits) {
  const bool with_regime = !rows.empty() && !rows.front().regime.empty();
  const bool with_segments = !rows.empty() && rows.front().segments.has_value();
  switch (format) {
    case TableFormat::Csv: {
      out << kFormatHeader << '\n' << "alpha";
      for (const auto& c : columns) out << ',' << c;
      if (with_regime) out << ",regime";
      if (with_segments) out << ",segments";
      out << '\n';
      for (const auto& row : rows) {
        out << format_number(row.alpha, digits);
        for (const auto& c : columns) out << ',' << cell_text(cell_for(row, c), digits);
        if (with_regime) out << ',' << row.regime;
        if (with_segments) out << ",\"" << row.segments.value_or("") << '"';
        out << '\n';
      }
      return;
    }
    case TableFormat::Text: {
      std::vector<std::string> header{"alpha"};
      header.insert(header.end(), columns.begin(), columns.end());
      if (with_regime) header.push_back("regime");
      if (with_segments) header.push_back("segments");
      std::vector<std::vector<std::string>> cells;
      for (const auto& row : rows) {
        std::vector<std::string> line{format_number(row.alpha, digits)};
        for (const auto& c : columns) line.push_back(cell_text(cell_for(row, c), digits));
        if (with_regime) line.push_back(row.regime);
        if (with_segments) line.push_back(row.segments.value_or(""));
        cells.push_back(std::move(line));
      }
      std::vector<std::size_t> width(header.size());
      for (std::size_t i = 0; i < header.size(); ++i) {
        width[i] = header[i].size();
        for (const auto& line : cells) width[i] = std::max(width[i], line[i].size());
      }
      out << kFormatHeader << '\n';
      auto emit = [&](const std::vector<std::string>& line) {
        for (std::size_t i = 0; i < line.size(); ++i)
          out << fmt::format("{:<{}}", line[i], width[i]) << (i + 1 < line.size() ? "  " : "\n");
      };
      emit(header);
      for (const auto& line : cells) emit(line);
      return;
    }
    case TableFormat::Json: {
      Json arr = Json::array();
      for (const auto& row : rows) {
        Json o{{"alpha", row.alpha}};
        for (const auto& c : columns) {
          const Cell& cell = cell_for(row, c);
          if (cell.state == Cell::State::Value) {
            o[c] = cell.value;
          } else {
            o[c] = nullptr;
            o[c + "_status"] = cell.state == Cell::State::Inf ? "inf" : "undefined";
          }
        }
        if (with_regime) o["regime"] = row.regime;
        if (with_segments) o["segments"] = row.segments.value_or("");
        arr.push_back(std::move(o));
      }
      out << Json{{"format", kFormatTag}, {"rows", arr}}.dump(2) << '\n';
      return;
    }
  }
}

void write_convergence_csv(std::ostream& out, const ConvergenceReport& rep, int digits) {
  out << kFormatHeader << '\n' << "k,rho,gap,sigma,c_over_k,Qk\n";
  for (const auto& s : rep.samples) {
    out << s.k << ',' << format_exact(s.rho) << ',' << format_number(s.gap, digits) << ','
        << format_number(s.sigma, digits) << ',' << format_number(s.c_over_k, digits) << ','
        << (s.qk_saturated ? std::string("inf") : format_number(s.qk, digits)) << '\n';
  }
}

Json to_json(const ConvergenceReport& rep) {
  Json samples = Json::array();
  for (const auto& s : rep.samples) {
    samples.push_back({{"k", s.k},
                       {"rho", s.rho},
                       {"gap", s.gap},
                       {"sigma", s.sigma},
                       {"c_over_k", s.c_over_k},
                       {"Qk", s.qk},
                       {"Qk_saturated", s.qk_saturated}});
  }
  return Json{{"format", kFormatTag},
              {"alpha", rep.alpha},
              {"lambda", rep.lambda},
              {"regime", regime_name(rep.regime)},
              {"exploratory", rep.exploratory},
              {"boundary", rep.boundary},
              {"samples", samples},
              {"violations", rep.violations}};
}

}  // namespace alimit

#include "waveortho/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <system_error>

#include "waveortho/errors.hpp"

namespace waveortho {
namespace {

std::string json_number(double x) { return std::isfinite(x) ? format_number(x) : std::string("null"); }

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

std::string render(const Table& t, OutputFormat format) {
  std::string out;
  if (format == OutputFormat::Csv) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      if (c) out += ',';
      out += t.columns[c];
    }
    out += '\n';
    for (const auto& row : t.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c) out += ',';
        out += format_number(row[c]);
      }
      out += '\n';
    }
    return out;
  }
  out += "[";
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    out += r ? ",\n  {" : "\n  {";
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      if (c) out += ", ";
      out += "\"" + t.columns[c] + "\": " + json_number(t.rows[r][c]);
    }
    out += "}";
  }
  out += t.rows.empty() ? "]\n" : "\n]\n";
  return out;
}

}  // namespace

std::string render_table(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows,
                         OutputFormat format) {
  return render(Table{columns, rows}, format);
}

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw Error(ErrorCode::Usage, "unknown format '" + name + "' (expected csv or json)");
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string render_pattern(const FarFieldPattern& pattern, OutputFormat format) {
  Table t{{"theta_rad", "re_amp", "im_amp", "abs_amp"}, {}};
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    const Complex a = pattern.amplitude[i];
    t.rows.push_back({pattern.angles[i], a.real(), a.imag(), std::abs(a)});
  }
  return render(t, format);
}

std::string render_profile(const std::vector<ProfilePoint>& profile, OutputFormat format) {
  Table t{{"distance", "abs_phi"}, {}};
  for (const auto& p : profile) t.rows.push_back({p.distance, p.abs_phi});
  return render(t, format);
}

std::string render_residuals(const std::vector<double>& history, OutputFormat format) {
  Table t{{"step", "residual"}, {}};
  for (std::size_t i = 0; i < history.size(); ++i) t.rows.push_back({static_cast<double>(i + 1), history[i]});
  return render(t, format);
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorCode::Io, "cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) throw Error(ErrorCode::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::Io, "cannot rename onto " + path.string());
  }
}

void emit_pattern(const FarFieldPattern& pattern, OutputFormat format, const std::filesystem::path& path) {
  write_atomic(path, render_pattern(pattern, format));
}

void emit_profile(const std::vector<ProfilePoint>& profile, OutputFormat format, const std::filesystem::path& path) {
  write_atomic(path, render_profile(profile, format));
}

void emit_residuals(const std::vector<double>& history, OutputFormat format, const std::filesystem::path& path) {
  write_atomic(path, render_residuals(history, format));
}

}  // namespace waveortho

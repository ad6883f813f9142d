#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "waveortho/method.hpp"
#include "waveortho/types.hpp"

namespace waveortho {

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(const std::string& name);

/// 17 significant digits; JSON writers map non-finite values to null.
std::string format_number(double x);

/// Generic table: CSV with a header row, or a JSON array of records.
std::string render_table(const std::vector<std::string>& columns, const std::vector<std::vector<double>>& rows,
                         OutputFormat format);

std::string render_pattern(const FarFieldPattern& pattern, OutputFormat format);
std::string render_profile(const std::vector<ProfilePoint>& profile, OutputFormat format);
std::string render_residuals(const std::vector<double>& history, OutputFormat format);

/// Writes content to a temporary sibling file and renames it over path.
void write_atomic(const std::filesystem::path& path, const std::string& content);

void emit_pattern(const FarFieldPattern& pattern, OutputFormat format, const std::filesystem::path& path);
void emit_profile(const std::vector<ProfilePoint>& profile, OutputFormat format, const std::filesystem::path& path);
void emit_residuals(const std::vector<double>& history, OutputFormat format, const std::filesystem::path& path);

}  // namespace waveortho

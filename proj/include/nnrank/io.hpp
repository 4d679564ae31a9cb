#pragma once

#include <chrono>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "nnrank/applications.hpp"
#include "nnrank/tensor.hpp"

namespace nnrank {

// Text format:
//   p=<int> alpha=<a1,...,ap> n=<n1,...,np>
//   <i_1> ... <i_r> <value>        (1-based, one representative per orbit)
// '#' starts a comment; blank lines are ignored; missing entries are 0.
Tensor parse_tensor(std::istream& in);
Tensor parse_tensor_text(std::string_view text);
// Canonical form: one line per nonzero orbit, values with 17 significant digits.
void write_tensor(std::ostream& out, const Tensor& a);
std::string serialize_tensor(const Tensor& a);

// {"p": .., "alpha": [..], "n": [..], "entries": [[i_1, ..., i_r, value], ..]}
Tensor tensor_from_json(std::string_view text);
std::string tensor_to_json(const Tensor& a);

// Reads either format; JSON when the extension is .json or the first
// non-blank character is '{'.
Tensor read_tensor_file(const std::filesystem::path& path);
void write_tensor_file(const std::filesystem::path& path, const Tensor& a);

// Wall time as in the result tables: seconds below a minute ("0.21"),
// m:ss below an hour, h:mm:ss beyond.
std::string format_duration(std::chrono::duration<double> d);
double to_millis(std::chrono::duration<double> d);

inline constexpr int kReportSchemaVersion = 1;

std::string report_json(const ApproxReport& r, const Tensor& a, int indent = 2);
std::string report_json(const CopositivityVerdict& v, int indent = 2);
std::string report_text(const ApproxReport& r);
std::string report_text(const CopositivityVerdict& v);

}  // namespace nnrank

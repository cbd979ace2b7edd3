#pragma once

#include <complex>
#include <iosfwd>
#include <string>
#include <vector>

namespace isolab::cli {

inline constexpr int kSchemaVersion = 1;

enum Exit { pass = 0, fail = 1, usage = 2 };

// Runs the command line; writes the document to `out` (or --out) and diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// "2", "-0.5", "2+1i", "0.5-1.2i", "i", "-3i".
std::complex<double> parse_complex(const std::string& text);
// Comma-separated complex numbers.
std::vector<std::complex<double>> parse_complex_list(const std::string& text);
// "++-+" or "+,+,-,+" or "1,1,-1,1".
std::vector<int> parse_signs(const std::string& text);

}  // namespace isolab::cli

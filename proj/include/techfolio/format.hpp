#pragma once

#include <string>

namespace techfolio::format {

// Shortest decimal form that parses back to exactly the same double
// (std::to_chars). Non-finite values format as "nan" / "inf" / "-inf";
// callers with stricter schemas (e.g. empty CSV fields for NaN) handle those
// before calling.
std::string format_double(double v);

// RFC-4180 field escaping: wrap in quotes and double embedded quotes whenever
// the field contains a comma, quote, CR or LF.
std::string csv_escape(const std::string& field);

}  // namespace techfolio::format

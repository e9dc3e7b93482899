#ifndef DFP_SRC_CSV_UTIL_HPP
#define DFP_SRC_CSV_UTIL_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace dfp::detail {

// RFC-4180-ish cell quoting, used by every CSV writer in the library.
void write_csv_cell(std::ostream& out, const std::string& cell);

// Splits one record (newline already stripped); throws ParseError carrying
// `row` on an unterminated quote.
std::vector<std::string> split_csv_record(const std::string& line, std::size_t row);

}  // namespace dfp::detail

#endif

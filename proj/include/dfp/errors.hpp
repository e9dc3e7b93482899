#ifndef DFP_ERRORS_HPP
#define DFP_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dfp {

// Malformed or inconsistent input data (CSV cells, pcap records, model
// documents, schema files). The CLI maps this family to exit code 2.
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// DataError that knows where the problem is: a 1-based row number for text
// inputs, a byte offset for binary inputs. The unit is named in the message.
class ParseError : public DataError {
 public:
  ParseError(const std::string& msg, std::size_t position)
      : DataError(msg), position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace dfp

#endif

#ifndef DFP_CSV_HPP
#define DFP_CSV_HPP

#include <iosfwd>

#include "dfp/dataset.hpp"

namespace dfp {

// Header row: feature names in schema order, then "label". Missing values
// serialize as "?", numerics as base-10 integers. Cells containing ',', '"'
// or newlines are double-quoted.
void write_csv(const Dataset& dataset, std::ostream& out);

// Inverse of write_csv. With expected == nullptr the schema is inferred from
// the header (every column numeric, protocol by name prefix); otherwise the
// header must match `expected` name-for-name in order. Parse problems throw
// ParseError carrying the 1-based data row number (0 = header).
Dataset read_csv(std::istream& in, const FeatureSchema* expected = nullptr);

}  // namespace dfp

#endif

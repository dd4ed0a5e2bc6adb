#pragma once

#include <json.hpp>
#include <string>

#include "relasym/measure.hpp"
#include "relasym/modifier.hpp"
#include "relasym/pade.hpp"
#include "relasym/sobolev.hpp"
#include "relasym/zeros.hpp"

namespace relasym {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

// Complex numbers are [re, im]; a bare number is read as real.
json to_json(cplx z);
cplx complex_from_json(const json& j, const char* what);

json to_json(const BaseMeasureSpec& s);
BaseMeasureSpec measure_from_json(const json& j);

/// {"measure", "nmax", "a": [a_1..a_nmax], "b": [b_0..], "tau": [tau_0..]}
json to_json(const RecurrenceTable& t);
RecurrenceTable table_from_json(const json& j);

json to_json(const RationalModifier& r);
RationalModifier modifier_from_json(const json& j);

json to_json(const SobolevSpec& s);
SobolevSpec sobolev_from_json(const json& j);

json to_json(const StieltjesFn& f);
StieltjesFn stieltjes_from_json(const json& j);

json to_json(const ZeroReport& z);

/// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double v);

json read_json_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace relasym

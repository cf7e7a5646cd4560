#pragma once

#include "adscausal/causal.hpp"
#include "adscausal/reductive.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace adscausal {

using nlohmann::json;

// {"alpha":[f,f],"nu":{"pp":f,"pm":f,"zp":[...],"pz":[...]},"x":f}
json to_json(const PointCoords& p);
PointCoords point_from_json(const json& j);
PointCoords parse_point(const std::string& text);

// {"class":..,"c":..,"witness_w2":..|null,"branch":..|null,"type":"I"|"II"|null}
json to_json(const CausalClass& c);
CausalClass class_from_json(const json& j);

// {n, labels, brackets:[{i,j,terms:[{m,num,den}]}], killing:[["num/den"]], b_basis:[{name,terms}]}
json structure_dump(const Algebra& a);

// Locale-independent shortest round-trip formatting.
std::string format_double(double v);

struct CsvWriter {
    std::ostream& out;
    void row(const std::vector<std::string>& cells);
};

}  // namespace adscausal

#pragma once

#include <string>

#include "json.hpp"

#include "densitymod/gk.hpp"
#include "densitymod/lorentz.hpp"
#include "densitymod/theta.hpp"

namespace densitymod {

using json = nlohmann::ordered_json;

// Exact values are written canonically ("p/q", "p/q+r/s*i"); doubles as numbers.
json to_json(const DegreeSet& s, int n);
json to_json(const FormResult& f);
json to_json(const ClassificationVerdict& v);
json to_json(const Theorem1Report& r);
json to_json(const IwasawaFactors& f);
json to_json(const Eigen::MatrixXd& m);
json complex_json(Complex z);

std::string classification_text(const ClassificationVerdict& v);
std::string theorem1_text(const Theorem1Report& r);
std::string iwasawa_text(const IwasawaFactors& f);

// Row-major CSV. Throws ParseError on malformed input.
Eigen::MatrixXd read_csv_matrix(const std::string& text);
std::string write_csv(const Eigen::MatrixXd& m);

}  // namespace densitymod

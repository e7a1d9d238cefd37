#pragma once

#include <json.hpp>

#include <string>

#include "awrep/leonard.hpp"
#include "awrep/repverify.hpp"
#include "awrep/sweep.hpp"

namespace awrep::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "awrep/1";

// "0.7+0.1i", "-2e-1i", "i", "3"; throws std::invalid_argument
Scalar parse_complex(const std::string& s);
// "re+imi" with round-trip precision
std::string format_complex(Scalar z);

json scalar_json(Scalar z);  // [re, im]
Scalar scalar_from(const json& j);
json matrix_json(const Matrix& m);  // rows of [re, im]
Matrix matrix_from(const json& j);

// Every top-level artifact starts with schema and the q12 echo.
json artifact(Scalar q12);

json rep_json(const repbuild::Rep& rep);
repbuild::Rep rep_from_json(const json& j);

json verify_json(const repverify::VerifyReport& r);
json racah_params_json(const leonard::RacahParams& rp);
json leonard_json(const leonard::LeonardPairData& d);
json transition_json(const leonard::TransitionReport& t);
json conditions_json(const leonard::ConditionReport& c);
json point_json(const sweep::PointResult& p);
json aggregate_json(const sweep::Aggregate& a);

// rows n = 0..N, header "n\x,0,1,...,N"
std::string racah_csv(const Matrix& table);

}  // namespace awrep::io

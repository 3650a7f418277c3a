#pragma once

/**
 * @file io.hpp
 * @brief JSON records for seeds, representations and reports.
 *
 * Seed:  {"surface": "g,r,s", "triangle": ["0/1", "1/0", "1/1"],
 *         "values": [..3..], "boundary": [..]}
 * Rep:   {"signature": "g,r,s", "names": [...], "matrices": [[a11, a12, a21, a22], ...],
 *         "lifting": [+-1, ...]}
 *
 * Doubles are written in shortest round-trip form, so a record read back
 * reproduces the binary values exactly.
 */

#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "teich/error.hpp"
#include "teich/farey.hpp"
#include "teich/rep.hpp"
#include "teich/tracefn.hpp"

namespace teich {

using json = nlohmann::json;

inline json to_json(const TraceSeed& seed) {
  json j;
  j["surface"] = seed.surface.str();
  j["triangle"] = json::array();
  for (const auto& s : seed.triangle.vertices()) j["triangle"].push_back(s.str());
  j["values"] = seed.values;
  j["boundary"] = seed.boundary;
  return j;
}

inline TraceSeed seed_from_json(const json& j) {
  try {
    const SurfaceSig sig = SurfaceSig::parse(j.at("surface").get<std::string>());
    const auto vals = j.at("values").get<std::vector<double>>();
    if (vals.size() != 3) throw Error(ErrorCode::ParseError, "a seed needs three values");
    std::array<Slope, 3> tri{Slope(0, 1), Slope(1, 1), Slope(1, 0)};
    if (j.contains("triangle")) {
      const auto names = j.at("triangle").get<std::vector<std::string>>();
      if (names.size() != 3) throw Error(ErrorCode::ParseError, "a triangle needs three slopes");
      for (int i = 0; i < 3; ++i) tri[i] = Slope::parse(names[i]);
    }
    std::vector<double> boundary;
    if (j.contains("boundary")) boundary = j.at("boundary").get<std::vector<double>>();
    return TraceSeed::make(sig, tri, {vals[0], vals[1], vals[2]}, std::move(boundary));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("seed record: ") + e.what());
  }
}

inline json to_json(const Rep& rep) {
  json j;
  j["signature"] = rep.sig.str();
  j["names"] = rep.names;
  j["matrices"] = json::array();
  for (const auto& m : rep.gens) j["matrices"].push_back(m.row_major());
  j["lifting"] = rep.lifting;
  return j;
}

inline Rep rep_from_json(const json& j) {
  try {
    const SurfaceSig sig = SurfaceSig::parse(j.at("signature").get<std::string>());
    auto names = j.at("names").get<std::vector<std::string>>();
    std::vector<Mat> gens;
    for (const auto& m : j.at("matrices")) {
      const auto e = m.get<std::vector<double>>();
      if (e.size() != 4) throw Error(ErrorCode::ParseError, "a matrix needs four entries");
      gens.push_back({e[0], e[1], e[2], e[3]});
    }
    Rep rep(sig, std::move(names), std::move(gens));
    if (j.contains("lifting")) {
      rep.lifting = j.at("lifting").get<std::vector<int>>();
      if (rep.lifting.size() != rep.arity()) throw Error(ErrorCode::ParseError, "lifting and generators differ in count");
    }
    return rep;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("rep record: ") + e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, path + ": " + e.what());
  }
}

/// Twelve significant digits.
inline std::string fmt(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

}  // namespace teich

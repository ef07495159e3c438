#include "k3acm/lattice_io.hpp"

#include <fstream>
#include <sstream>

#include "k3acm/errors.hpp"

namespace k3acm {

Json to_json(const Int& x) {
  if (fits_int64(x)) return Json(to_int64(x));
  return Json(x.get_str());
}

Json to_json(const DivisorClass& d) {
  Json a = Json::array();
  for (const auto& c : d.coords()) a.push_back(to_json(c));
  return a;
}

Json to_json(const IntMatrix& m) {
  Json a = Json::array();
  for (const auto& row : m) {
    Json r = Json::array();
    for (const auto& x : row) r.push_back(to_json(x));
    a.push_back(std::move(r));
  }
  return a;
}

Int int_from_json(const Json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Int(std::to_string(j.get<uint64_t>()));
    return Int(std::to_string(j.get<int64_t>()));
  }
  if (j.is_string()) {
    Int v;
    if (v.set_str(j.get<std::string>(), 10) == 0) return v;
  }
  throw InputError(where + " is not an integer: " + j.dump());
}

LatticeSpec lattice_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("lattice file must hold a JSON object");
  for (const char* key : {"name", "basis", "gram"})
    if (!j.contains(key)) throw InputError(std::string("lattice file is missing \"") + key + "\"");
  if (!j["name"].is_string()) throw InputError("\"name\" must be a string");
  if (!j["basis"].is_array()) throw InputError("\"basis\" must be an array of strings");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < j["basis"].size(); ++i) {
    const Json& b = j["basis"][i];
    if (!b.is_string()) throw InputError("basis[" + std::to_string(i) + "] is not a string");
    labels.push_back(b.get<std::string>());
  }
  const Json& g = j["gram"];
  if (!g.is_array()) throw InputError("\"gram\" must be an array of rows");
  IntMatrix gram;
  for (std::size_t r = 0; r < g.size(); ++r) {
    if (!g[r].is_array()) throw InputError("gram[" + std::to_string(r) + "] is not an array");
    IntVec row;
    for (std::size_t c = 0; c < g[r].size(); ++c)
      row.push_back(int_from_json(g[r][c], "gram[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
    gram.push_back(std::move(row));
  }
  std::optional<DivisorClass> ample;
  if (j.contains("ample_ref") && !j["ample_ref"].is_null()) {
    const Json& a = j["ample_ref"];
    if (!a.is_array()) throw InputError("\"ample_ref\" must be an array of integers");
    IntVec coords;
    for (std::size_t i = 0; i < a.size(); ++i) coords.push_back(int_from_json(a[i], "ample_ref[" + std::to_string(i) + "]"));
    ample = DivisorClass(std::move(coords));
  }
  bool k3 = false;
  if (j.contains("k3")) {
    if (!j["k3"].is_boolean()) throw InputError("\"k3\" must be a boolean");
    k3 = j["k3"].get<bool>();
  }
  return LatticeSpec(j["name"].get<std::string>(), std::move(labels), std::move(gram), std::move(ample), k3);
}

LatticeSpec lattice_from_json_text(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("lattice file is not valid JSON: ") + e.what());
  }
  return lattice_from_json(j);
}

LatticeSpec load_lattice_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open lattice file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return lattice_from_json_text(ss.str());
}

Json lattice_to_json(const LatticeSpec& lat) {
  Json j;
  j["name"] = lat.name();
  j["basis"] = lat.labels();
  j["gram"] = to_json(lat.gram());
  j["ample_ref"] = lat.ample_ref() ? to_json(*lat.ample_ref()) : Json(nullptr);
  j["k3"] = lat.k3();
  return j;
}

}  // namespace k3acm

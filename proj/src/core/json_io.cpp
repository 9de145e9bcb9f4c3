#include "core/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gridohm {

using nlohmann::ordered_json;

namespace {

const ordered_json& require(const ordered_json& doc, const char* key) {
  auto it = doc.find(key);
  if (it == doc.end()) fail(Errc::parse_error, std::string("missing required key \"") + key + "\"");
  return *it;
}

}  // namespace

LatticeSpec lattice_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::parse_error, std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(Errc::parse_error, "lattice document must be a JSON object");
  const auto& format = require(doc, "format");
  if (!format.is_number_integer() || format.get<int>() != 1)
    fail(Errc::parse_error, "unsupported document format (expected \"format\": 1)");

  LatticeSpec raw;
  const auto& dim = require(doc, "dimension");
  if (!dim.is_number_integer()) fail(Errc::parse_error, "\"dimension\" must be an integer");
  raw.dimension = dim.get<int>();

  const auto& sites = require(doc, "sites");
  if (!sites.is_array()) fail(Errc::parse_error, "\"sites\" must be an array of names");
  for (const auto& s : sites) {
    if (!s.is_string()) fail(Errc::parse_error, "site names must be strings");
    raw.sites.push_back(s.get<std::string>());
  }

  const auto& bonds = require(doc, "bonds");
  if (!bonds.is_array()) fail(Errc::parse_error, "\"bonds\" must be an array");
  for (const auto& jb : bonds) {
    if (!jb.is_object()) fail(Errc::parse_error, "each bond must be an object");
    Bond b;
    const auto& from = require(jb, "from");
    const auto& to = require(jb, "to");
    if (!from.is_string() || !to.is_string())
      fail(Errc::parse_error, "bond \"from\"/\"to\" must be site names");
    b.from = raw.site_index(from.get<std::string>());
    b.to = raw.site_index(to.get<std::string>());
    const auto& off = require(jb, "offset");
    if (!off.is_array()) fail(Errc::parse_error, "bond \"offset\" must be an integer array");
    for (const auto& v : off) {
      if (!v.is_number_integer()) fail(Errc::parse_error, "bond offsets must be integers");
      b.offset.push_back(v.get<int>());
    }
    if (auto it = jb.find("resistance"); it != jb.end()) {
      if (!it->is_number()) fail(Errc::parse_error, "bond \"resistance\" must be a number");
      b.resistance = it->get<double>();
    }
    raw.bonds.push_back(std::move(b));
  }
  return validate_and_canonicalize(std::move(raw));
}

LatticeSpec lattice_from_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::io_error, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return lattice_from_json(buf.str());
}

std::string lattice_to_json(const LatticeSpec& spec) {
  ordered_json doc;
  doc["format"] = 1;
  doc["dimension"] = spec.dimension;
  doc["sites"] = spec.sites;
  auto& bonds = doc["bonds"] = ordered_json::array();
  for (const Bond& b : spec.bonds) {
    ordered_json jb;
    jb["from"] = spec.sites[b.from];
    jb["to"] = spec.sites[b.to];
    jb["offset"] = b.offset;
    jb["resistance"] = b.resistance;
    bonds.push_back(std::move(jb));
  }
  return doc.dump(2) + "\n";
}

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

}  // namespace gridohm

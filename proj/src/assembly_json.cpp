#include "bsloc/assembly_json.hpp"

#include <fstream>
#include <sstream>

#include "bsloc/error.hpp"

namespace bsloc {

namespace {

Winding winding_from_json(const Json& v) {
  if (v.is_number_integer()) return Winding(Rational(v.get<long long>()));
  if (v.is_number()) return Winding(v.get<double>());
  if (v.is_string()) return Winding::from_decimal(v.get<std::string>());
  throw Error(ErrorCode::InputError, "expected a number, got " + v.dump());
}

double number_from_json(const Json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_decimal(v.get<std::string>()).convert_to<double>();
  throw Error(ErrorCode::InputError, "expected a number, got " + v.dump());
}

Json winding_to_json(const Winding& w) {
  if (boost::multiprecision::denominator(w.exact()) == 1)
    return Json(to_int64(boost::multiprecision::numerator(w.exact())));
  return Json(w.value());
}

BoundaryRef ref_from_json(const Json& j, std::size_t piece_count) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
    throw Error(ErrorCode::InputError, "gluing end must be [\"p<i>\", \"b<j>\"], got " + j.dump());
  auto index_of = [](const std::string& s, char prefix) -> long {
    if (s.size() < 2 || s[0] != prefix) return -1;
    try {
      std::size_t used = 0;
      long v = std::stol(s.substr(1), &used);
      return used == s.size() - 1 ? v : -1;
    } catch (const std::exception&) {
      return -1;
    }
  };
  long p = index_of(j[0].get<std::string>(), 'p');
  long b = index_of(j[1].get<std::string>(), 'b');
  if (p < 0 || b < 0) throw Error(ErrorCode::InputError, "bad gluing reference " + j.dump());
  if (static_cast<std::size_t>(p) >= piece_count)
    throw Error(ErrorCode::IncompatibleGluing, "gluing references missing piece " + j.dump());
  return {static_cast<std::size_t>(p), static_cast<int>(b)};
}

}  // namespace

std::string piece_id(std::size_t index) { return "p" + std::to_string(index); }
std::string circle_id(int circle) { return "b" + std::to_string(circle); }

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1, col = 1;
    std::size_t end = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(ErrorCode::InputError, source + ":" + std::to_string(line) + ":" +
                                           std::to_string(col) + ": malformed JSON");
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InputError, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

HolonomyProfile profile_from_json(const Json& j) {
  const Json& arr = j.is_object() && j.contains("profile") ? j.at("profile") : j;
  if (!arr.is_array()) throw Error(ErrorCode::InputError, "profile must be an array of [x, u]");
  std::vector<ProfileSample> s;
  for (const auto& pair : arr) {
    if (!pair.is_array() || pair.size() != 2)
      throw Error(ErrorCode::InputError, "profile sample must be [x, u], got " + pair.dump());
    s.push_back({number_from_json(pair[0]), winding_from_json(pair[1])});
  }
  return HolonomyProfile(std::move(s));
}

Json profile_to_json(const HolonomyProfile& p) {
  Json arr = Json::array();
  for (const auto& s : p.samples()) arr.push_back(Json::array({s.x, winding_to_json(s.u)}));
  return arr;
}

Piece piece_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw Error(ErrorCode::InputError, "piece needs a string \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  double margin = j.contains("margin") ? number_from_json(j["margin"]) : 0.0;
  if (kind == "annulus") return Piece::annulus(profile_from_json(j.at("profile")), margin);
  if (kind == "disk") return Piece::disk(profile_from_json(j.at("profile")), margin);
  if (kind == "pants") {
    const Json& l = j.at("lifts");
    if (!l.is_array() || l.size() != 3) throw Error(ErrorCode::InputError, "pants needs 3 lifts");
    return Piece::pants(winding_from_json(l[0]), winding_from_json(l[1]), winding_from_json(l[2]));
  }
  throw Error(ErrorCode::InputError, "unknown piece kind '" + kind + "'");
}

Json piece_to_json(const Piece& p) {
  Json j;
  j["kind"] = to_string(p.kind());
  if (p.kind() == PieceKind::Pants) {
    j["lifts"] = Json::array();
    for (const auto& l : p.lifts()) j["lifts"].push_back(winding_to_json(l));
  } else {
    j["profile"] = profile_to_json(p.profile());
    if (p.margin() > 0.0) j["margin"] = p.margin();
  }
  return j;
}

SurfaceAssembly assembly_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("pieces"))
    throw Error(ErrorCode::InputError, "assembly needs a \"pieces\" array");
  SurfaceAssembly a;
  for (const auto& pj : j.at("pieces")) a.pieces.push_back(piece_from_json(pj));
  if (j.contains("gluings")) {
    for (const auto& gj : j.at("gluings")) {
      if (!gj.is_array() || gj.size() != 2)
        throw Error(ErrorCode::InputError, "gluing must be a pair of circle references");
      a.gluings.push_back({ref_from_json(gj[0], a.pieces.size()), ref_from_json(gj[1], a.pieces.size())});
    }
  }
  return a;
}

Json assembly_to_json(const SurfaceAssembly& a) {
  Json j;
  j["pieces"] = Json::array();
  for (const auto& p : a.pieces) j["pieces"].push_back(piece_to_json(p));
  j["gluings"] = Json::array();
  for (const auto& g : a.gluings) {
    j["gluings"].push_back(Json::array({Json::array({piece_id(g.a.piece), circle_id(g.a.circle)}),
                                        Json::array({piece_id(g.b.piece), circle_id(g.b.circle)})}));
  }
  return j;
}

}  // namespace bsloc

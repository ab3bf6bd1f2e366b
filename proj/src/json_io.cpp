#include "kmhecke/json_io.hpp"

#include "kmhecke/errors.hpp"

namespace kmh {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw DomainError("ParseError", what); }

BigInt bigint_from_json(const Json& j) {
  if (j.is_number_integer()) return BigInt(j.get<int64_t>());
  if (j.is_number_unsigned()) return BigInt(j.get<uint64_t>());
  if (j.is_string()) {
    try {
      return BigInt(j.get<std::string>());
    } catch (const std::exception&) {
      parse_fail("bad integer string " + j.get<std::string>());
    }
  }
  parse_fail("expected an integer, got " + j.dump());
}

Json bigint_to_json(const BigInt& b) {
  if (b >= std::numeric_limits<int64_t>::min() && b <= std::numeric_limits<int64_t>::max())
    return Json(static_cast<int64_t>(b));
  return Json(b.str());
}

}  // namespace

Json read_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    parse_fail(e.what());
  }
}

Vec vec_from_json(const Json& j) {
  if (!j.is_array()) parse_fail("expected an integer array, got " + j.dump());
  Vec v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) parse_fail("expected integers, got " + x.dump());
    v.push_back(x.get<Int>());
  }
  return v;
}

Mat mat_from_json(const Json& j) {
  if (!j.is_array()) parse_fail("expected a matrix, got " + j.dump());
  Mat m;
  for (const auto& r : j) m.push_back(vec_from_json(r));
  return m;
}

Word word_from_json(const Json& j) {
  Word w;
  for (Int x : vec_from_json(j)) {
    if (x < 0) parse_fail("negative letter");
    w.push_back(static_cast<int>(x));
  }
  return w;
}

std::vector<size_t> indices_from_json(const Json& j) {
  std::vector<size_t> out;
  for (int x : word_from_json(j)) out.push_back(static_cast<size_t>(x));
  return out;
}

Json poly_to_json(const LaurentPoly& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) {
    Json ev = Json::array();
    for (int32_t x : e) ev.push_back(x);
    out.push_back(Json::array({ev, bigint_to_json(c)}));
  }
  return out;
}

LaurentPoly poly_from_json(const Json& j, size_t nvars) {
  if (j.is_number_integer() || j.is_string()) return LaurentPoly::constant(nvars, bigint_from_json(j));
  if (!j.is_array()) parse_fail("expected a Laurent polynomial, got " + j.dump());
  std::vector<LaurentPoly::Term> terms;
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2) parse_fail("term must be [exponents, coefficient]");
    Vec e = vec_from_json(t[0]);
    if (e.size() != nvars) parse_fail("exponent vector must have " + std::to_string(nvars) + " entries");
    Exponent ex;
    for (Int x : e) ex.push_back(static_cast<int32_t>(x));
    terms.emplace_back(std::move(ex), bigint_from_json(t[1]));
  }
  return LaurentPoly::from_terms(nvars, std::move(terms));
}

Json datum_to_json(const RootDatum& d) {
  Json j;
  j["gcm"] = d.gcm().a;
  j["rank_y"] = d.rank_y();
  j["coroots"] = d.data().coroots;
  j["roots"] = d.data().roots;
  return j;
}

RootDatum datum_from_json(const Json& j) {
  Mat a;
  if (j.is_array()) {
    a = mat_from_json(j);
  } else if (j.is_object() && j.contains("gcm")) {
    a = mat_from_json(j["gcm"]);
  } else {
    parse_fail("expected {\"gcm\": [[...]], ...}");
  }
  GCM gcm = validate_gcm(a);
  std::optional<RealizationData> custom;
  if (j.is_object() && (j.contains("coroots") || j.contains("roots"))) {
    if (!j.contains("coroots") || !j.contains("roots")) parse_fail("coroots and roots must be given together");
    RealizationData r;
    for (const auto& c : j["coroots"]) r.coroots.push_back(vec_from_json(c));
    for (const auto& c : j["roots"]) r.roots.push_back(vec_from_json(c));
    if (j.contains("rank_y")) {
      if (!j["rank_y"].is_number_integer()) parse_fail("rank_y must be an integer");
      r.rank_y = j["rank_y"].get<size_t>();
    } else {
      r.rank_y = r.coroots.empty() ? 0 : r.coroots[0].size();
    }
    custom = std::move(r);
  }
  return build_realization(gcm, custom);
}

Json weyl_to_json(const WeylElement& w) {
  Json j;
  j["word"] = w.word;
  j["matrix"] = w.y;
  return j;
}

Json components_to_json(const ComponentReport& r) {
  Json out = Json::array();
  for (const auto& c : r.components) {
    Json j;
    j["indices"] = c.indices;
    j["kind"] = kind_name(c.kind);
    if (c.kind == Kind::Affine) {
      j["delta_labels"] = c.delta_labels;
      j["delta"] = c.delta;
    }
    j["inessential_basis"] = c.inessential_basis;
    out.push_back(j);
  }
  return out;
}

Json classes_to_json(const ParamClasses& c) {
  Json j;
  j["names"] = c.names;
  j["sigma"] = c.sigma;
  j["sigma_prime"] = c.sigma_prime;
  return j;
}

Json bl_to_json(const HeckeAlgebra& h, const BLElement& a) {
  Json out = Json::array();
  for (const auto& [k, c] : h.sorted_terms(a)) {
    Json t;
    t["lambda"] = k.first;
    t["word"] = h.weyl().element(k.second).word;
    t["coeff"] = poly_to_json(c);
    out.push_back(t);
  }
  return out;
}

BLElement bl_from_json(const HeckeAlgebra& h, const Json& j) {
  const Json& terms = j.is_object() && j.contains("terms") ? j["terms"] : j;
  if (!terms.is_array()) parse_fail("expected a list of terms");
  BLElement out;
  size_t d = h.datum().rank_y();
  for (const auto& t : terms) {
    if (!t.is_object()) parse_fail("term must be an object");
    Vec lambda = t.contains("lambda") ? vec_from_json(t["lambda"]) : Vec(d, 0);
    if (lambda.size() != d) parse_fail("lambda must have " + std::to_string(d) + " entries");
    Word w = t.contains("word") ? word_from_json(t["word"]) : Word{};
    LaurentPoly c = t.contains("coeff") ? poly_from_json(t["coeff"], h.nvars()) : h.scalar(1);
    out.add(lambda, h.weyl().id_of(h.weyl().from_word(w)), c);
  }
  return out;
}

Json region_to_json(const Region& r) {
  Json j;
  j["gens"] = r.gens;
  j["height"] = r.height;
  if (!r.positive_only) j["positive_only"] = false;
  return j;
}

Region region_from_json(const Json& j) {
  if (!j.is_object()) parse_fail("region must be an object");
  Region r;
  for (const auto& g : j.value("gens", Json::array())) r.gens.push_back(vec_from_json(g));
  if (j.contains("height")) {
    if (!j["height"].is_number_integer() || j["height"].get<Int>() < 0) parse_fail("height must be >= 0");
    r.height = j["height"].get<Int>();
  }
  r.positive_only = j.value("positive_only", true);
  return r;
}

Json cert_to_json(const WeylGroup& W, const AFCertificate& c) {
  Json j;
  j["gens"] = c.gens;
  if (c.saturated) j["saturated"] = *c.saturated;
  Json wp = Json::array();
  std::vector<Word> words;
  for (WId w : c.wpart) words.push_back(W.element(w).word);
  std::sort(words.begin(), words.end());
  for (const auto& w : words) wp.push_back(w);
  j["wpart"] = wp;
  return j;
}

AFCertificate cert_from_json(const WeylGroup& W, const Json& j) {
  if (!j.is_object()) parse_fail("certificate must be an object");
  AFCertificate c;
  for (const auto& g : j.value("gens", Json::array())) c.gens.push_back(vec_from_json(g));
  if (j.contains("saturated")) {
    std::vector<Vec> s;
    for (const auto& g : j["saturated"]) s.push_back(vec_from_json(g));
    c.saturated = s;
  }
  if (j.contains("wpart")) {
    c.wpart.clear();
    for (const auto& w : j["wpart"]) c.wpart.push_back(W.id_of(W.from_word(word_from_json(w))));
  }
  return c;
}

Json truncated_to_json(const HeckeAlgebra& h, const TruncatedElement& t) {
  Json j;
  j["region"] = region_to_json(t.region);
  j["certificate"] = cert_to_json(h.weyl(), t.cert);
  j["coeffs"] = bl_to_json(h, t.coeffs);
  if (t.complete) j["complete"] = true;
  return j;
}

TruncatedElement truncated_from_json(const CompletedAlgebra& c, const Json& j) {
  const HeckeAlgebra& h = c.hecke();
  if (j.is_array()) return c.from_finite(bl_from_json(h, j));
  if (!j.is_object() || !j.contains("coeffs")) parse_fail("expected {\"region\",\"certificate\",\"coeffs\"}");
  BLElement coeffs = bl_from_json(h, j["coeffs"]);
  if (j.value("complete", false) || !j.contains("region")) return c.from_finite(coeffs);
  TruncatedElement t;
  t.region = region_from_json(j["region"]);
  t.cert = j.contains("certificate") ? cert_from_json(h.weyl(), j["certificate"]) : c.from_finite(coeffs).cert;
  for (const auto& [k, x] : coeffs.terms)
    if (c.in_region(t.region, k.first)) t.coeffs.add(k.first, k.second, x);
  return t;
}

EFunction efun_from_json(const HeckeAlgebra& h, const Json& j) {
  if (!j.is_array()) parse_fail("EFunction must be a list of {\"lambda\",\"coeff\"}");
  EFunction f;
  for (const auto& t : j) {
    Vec l = vec_from_json(t.at("lambda"));
    if (l.size() != h.datum().rank_y()) parse_fail("lambda has the wrong dimension");
    LaurentPoly c = t.contains("coeff") ? poly_from_json(t["coeff"], h.nvars()) : h.scalar(1);
    f[l] += c;
  }
  return f;
}

Json label_to_json(const CosetLabel& l) {
  Json j;
  j["lambda"] = l.lambda;
  j["word"] = l.word;
  return j;
}

}  // namespace kmh

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "kmhecke/errors.hpp"
#include "kmhecke/json_io.hpp"

using namespace kmh;

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kDomain = 2, kBudget = 3 };

struct Options {
  std::string format = "table";
  std::string datum_path, a_path, b_path, matrix_path;
  std::string lambda, u_word, w_word, face, d1, d2, region_gens, probes;
  Int region_height = 0;
  size_t budget_orbit = 100000, budget_words = kDefaultWordCap, budget_tits = kDefaultTitsBudget;
  size_t max_length = std::numeric_limits<size_t>::max();
  Int max_height_drop = std::numeric_limits<Int>::max();
  size_t index = 0, count = 1, u_cap = 3;
  unsigned l = 1;
  std::string q, q_prime;
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw DomainError("ParseError", "cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Json read_file_json(const std::string& path) { return read_json_text(read_input(path)); }

std::string hint(const std::string& name) {
  static const std::map<std::string, std::string> hints = {
      {"DiagonalNotTwo", "a GCM needs 2 on the diagonal"},
      {"PositiveOffDiagonal", "off-diagonal entries must be <= 0"},
      {"AsymmetricZero", "a_ij = 0 must imply a_ji = 0"},
      {"NotSquare", "the matrix must be square"},
      {"PairingMismatch", "alpha_j(alpha_i^vee) must equal a_ij"},
      {"DependentRoots", "the simple roots must be linearly independent"},
      {"DependentCoroots", "the simple coroots must be linearly independent"},
      {"ShapeMismatch", "coroots and roots need n vectors of length rank_y"},
      {"TitsConeUndecided", "raise --budget-tits"},
      {"NotInTitsCone", "the weight lies outside the Tits cone"},
      {"FaceIsSpherical", "W_J is finite; use the parahoric product instead"},
      {"FaceIsMinimal", "J_pos must be nonempty"},
      {"NonSpherical", "parahoric algebras need a finite W_F"},
      {"NotDivisible", "the product is not divisible by the Poincare polynomial"},
      {"InsufficientSource", "enlarge the input regions"},
      {"CapExceeded", "raise --u-cap"},
      {"UnsaturatedCertificate", "add saturated generators to the certificate"},
      {"NotDominant", "EFunction weights must be dominant"},
      {"ParseError", "check the JSON input"},
      {"BudgetExceeded", "raise the matching --budget-* flag"},
  };
  auto it = hints.find(name);
  return it == hints.end() ? "" : it->second;
}

Json lambda_json(const std::string& s) { return read_json_text(s); }

struct Context {
  DatumPtr datum;
  WeylPtr weyl;
  HeckePtr hecke;
};

Context load(const Options& o) {
  Context c;
  c.datum = std::make_shared<const RootDatum>(datum_from_json(read_file_json(o.datum_path)));
  c.weyl = std::make_shared<const WeylGroup>(c.datum);
  c.hecke = std::make_shared<const HeckeAlgebra>(c.weyl);
  return c;
}

Vec parse_lambda(const Options& o, const RootDatum& d) {
  if (o.lambda.empty()) throw DomainError("ParseError", "--lambda is required");
  Vec v = vec_from_json(lambda_json(o.lambda));
  if (v.size() != d.rank_y()) throw DomainError("ParseError", "lambda must have " + std::to_string(d.rank_y()) + " entries");
  return v;
}

Word parse_word(const std::string& s, const RootDatum& d) {
  Word w = s.empty() ? Word{} : word_from_json(read_json_text(s));
  for (int i : w)
    if (static_cast<size_t>(i) >= d.n()) throw DomainError("IndexOutOfRange", "letter " + std::to_string(i));
  return w;
}

std::string word_string(const Word& w) {
  std::string s = "[";
  for (size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
  return s + "]";
}

Region parse_region(const Options& o) {
  Region r;
  if (!o.region_gens.empty())
    for (const auto& g : read_json_text(o.region_gens)) r.gens.push_back(vec_from_json(g));
  r.height = o.region_height;
  if (r.height < 0) throw DomainError("ParseError", "--region-height must be >= 0");
  return r;
}

void emit(const Options& o, const Json& j, const std::string& table) {
  if (o.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << table;
}

std::string truncated_table(const CompletedAlgebra& C, const TruncatedElement& t) {
  const HeckeAlgebra& h = C.hecke();
  struct Row {
    Int drop;
    Vec lambda;
    Word word;
    std::string coeff;
  };
  std::vector<Row> rows;
  for (const auto& [k, c] : t.coeffs.terms) {
    Int drop = 0;
    bool found = false;
    for (const Vec& g : t.region.gens) {
      auto q = C.datum().q_coords(vsub(g, k.first));
      if (q && std::all_of(q->begin(), q->end(), [](Int x) { return x >= 0; })) {
        Int hq = height(*q);
        if (!found || hq < drop) drop = hq;
        found = true;
      }
    }
    rows.push_back({drop, k.first, h.weyl().element(k.second).word, c.to_string(h.classes().names)});
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    return std::tie(a.drop, a.lambda, a.word) < std::tie(b.drop, b.lambda, b.word);
  });
  std::ostringstream os;
  os << "drop\tlambda\tword\tcoeff\n";
  for (const auto& r : rows) os << r.drop << "\t" << to_string(r.lambda) << "\t" << word_string(r.word) << "\t" << r.coeff << "\n";
  return os.str();
}

int run(const std::string& cmd, const Options& o) {
  if (cmd == "gcm validate") {
    Json j = read_file_json(o.matrix_path);
    GCM g = validate_gcm(mat_from_json(j.is_object() ? j.at("gcm") : j));
    Json out;
    out["valid"] = true;
    out["rank"] = g.size();
    emit(o, out, "valid GCM of size " + std::to_string(g.size()) + "\n");
    return kOk;
  }
  if (cmd == "parahoric treecount") {
    LaurentPoly p = tree_orbit_size(o.l);
    Json out;
    out["l"] = o.l;
    out["symbolic"] = p.to_string({"q", "q'"});
    out["poly"] = poly_to_json(p);
    std::string table = "symbolic: " + p.to_string({"q", "q'"}) + "\n";
    if (!o.q.empty() || !o.q_prime.empty()) {
      BigInt q(o.q.empty() ? o.q_prime : o.q), qp(o.q_prime.empty() ? o.q : o.q_prime);
      BigInt v = tree_orbit_size(o.l, q, qp);
      out["value"] = v.str();
      table += "value: " + v.str() + "\n";
    }
    emit(o, out, table);
    return kOk;
  }

  Context c = load(o);
  const RootDatum& d = *c.datum;
  const WeylGroup& W = *c.weyl;
  const HeckeAlgebra& H = *c.hecke;

  if (cmd == "realize") {
    std::ostringstream os;
    os << "rank_y: " << d.rank_y() << "\n";
    for (size_t i = 0; i < d.n(); ++i)
      os << "coroot " << i << ": " << to_string(d.coroot(i)) << "  root " << i << ": " << to_string(d.root(i)) << "\n";
    emit(o, datum_to_json(d), os.str());
    return kOk;
  }
  if (cmd == "classify") {
    Json out;
    out["components"] = components_to_json(W.components());
    out["param_classes"] = classes_to_json(H.classes());
    std::ostringstream os;
    for (const auto& comp : W.components().components) {
      os << "component {";
      for (size_t t = 0; t < comp.indices.size(); ++t) os << (t ? "," : "") << comp.indices[t];
      os << "}: " << kind_name(comp.kind);
      if (comp.kind == Kind::Affine) os << "  delta " << to_string(comp.delta);
      os << "\n";
    }
    emit(o, out, os.str());
    return kOk;
  }
  if (cmd == "weyl orbit") {
    OrbitCaps caps;
    caps.max_count = o.budget_orbit;
    caps.max_length = o.max_length;
    caps.max_height_drop = o.max_height_drop;
    OrbitResult r = W.orbit_enumerate(parse_lambda(o, d), caps);
    Json out;
    out["points"] = r.points;
    out["complete"] = r.complete;
    std::ostringstream os;
    for (const Vec& p : r.points) os << to_string(p) << "\n";
    os << "complete: " << (r.complete ? "true" : "false") << "\n";
    emit(o, out, os.str());
    return kOk;
  }
  if (cmd == "weyl dominant") {
    DominantReport r = W.dominant_representative(parse_lambda(o, d), o.budget_tits);
    Json out;
    out["status"] = status_name(r.status);
    out["dominant"] = r.dominant;
    out["minimizer"] = weyl_to_json(r.minimizer);
    out["steps"] = r.steps;
    std::ostringstream os;
    os << "status: " << status_name(r.status) << "\n";
    if (r.status == TitsStatus::InTitsCone)
      os << "dominant: " << to_string(r.dominant) << "\nminimizer: " << word_string(r.minimizer.word) << "\n";
    emit(o, out, os.str());
    return r.status == TitsStatus::Unknown ? kBudget : kOk;
  }
  if (cmd == "weyl bruhat") {
    WeylElement u = W.from_word(parse_word(o.u_word, d)), w = W.from_word(parse_word(o.w_word, d));
    bool leq = W.bruhat_leq(u, w);
    Json out;
    out["u"] = u.word;
    out["w"] = w.word;
    out["leq"] = leq;
    emit(o, out, std::string(leq ? "true" : "false") + "\n");
    return kOk;
  }
  if (cmd == "weyl words") {
    WeylElement w = W.from_word(parse_word(o.w_word, d));
    auto words = W.all_reduced_words(w, o.budget_words);
    Json out;
    out["element"] = weyl_to_json(w);
    out["words"] = words;
    std::ostringstream os;
    for (const auto& x : words) os << word_string(x) << "\n";
    emit(o, out, os.str());
    return kOk;
  }
  if (cmd == "hecke mul") {
    BLElement a = bl_from_json(H, read_file_json(o.a_path)), b = bl_from_json(H, read_file_json(o.b_path));
    BLElement p = H.mul(a, b);
    emit(o, bl_to_json(H, p), H.to_string(p) + "\n");
    return kOk;
  }
  if (cmd == "hecke commute") {
    if (o.index >= d.n()) throw DomainError("IndexOutOfRange", "index " + std::to_string(o.index));
    BLElement p = H.commute(o.index, parse_lambda(o, d));
    emit(o, bl_to_json(H, p), H.to_string(p) + "\n");
    return kOk;
  }

  CompletedAlgebra C(c.hecke, o.budget_tits);
  if (cmd == "complete mul") {
    TruncatedElement a = truncated_from_json(C, read_file_json(o.a_path));
    TruncatedElement b = truncated_from_json(C, read_file_json(o.b_path));
    TruncatedElement p = C.mul(a, b, parse_region(o), o.u_cap);
    emit(o, truncated_to_json(H, p), truncated_table(C, p));
    return kOk;
  }
  if (cmd == "complete efun") {
    TruncatedElement t = C.e_function_expand(efun_from_json(H, read_file_json(o.a_path)), parse_region(o));
    emit(o, truncated_to_json(H, t), truncated_table(C, t));
    return kOk;
  }
  if (cmd == "complete center") {
    TruncatedElement a = truncated_from_json(C, read_file_json(o.a_path));
    std::optional<std::vector<Vec>> probes;
    if (!o.probes.empty()) {
      probes.emplace();
      for (const auto& p : read_json_text(o.probes)) probes->push_back(vec_from_json(p));
    }
    CenterResult r = C.center_test(a, probes, o.u_cap);
    Json out;
    out["verdict"] = verdict_name(r.verdict);
    std::ostringstream os;
    os << "verdict: " << verdict_name(r.verdict) << "\n";
    if (r.verdict == CenterVerdict::NotCentral) {
      out["probe"] = r.probe;
      out["lambda"] = r.lambda;
      out["word"] = W.element(r.w).word;
      out["left"] = poly_to_json(r.left);
      out["right"] = poly_to_json(r.right);
      os << "probe: " << r.probe << "\nat: " << to_string(r.lambda) << " " << word_string(W.element(r.w).word)
         << "\na*x: " << r.left.to_string(H.classes().names) << "\nx*a: " << r.right.to_string(H.classes().names)
         << "\n";
    }
    if (r.verified_height >= 0) out["verified_height"] = r.verified_height;
    if (!r.detail.empty()) {
      out["detail"] = r.detail;
      os << "detail: " << r.detail << "\n";
    }
    emit(o, out, os.str());
    return kOk;
  }
  if (cmd == "parahoric coset") {
    ParahoricAlgebra P(c.hecke, face_type(d, indices_from_json(read_json_text(o.face.empty() ? "[]" : o.face))));
    DoubleCoset dc = P.double_coset(parse_lambda(o, d), W.id_of(W.from_word(parse_word(o.w_word, d))));
    Json out;
    out["label"] = label_to_json(dc.label);
    Json els = Json::array();
    std::ostringstream os;
    os << "label: " << to_string(dc.label.lambda) << " " << word_string(dc.label.word) << "\nsize: " << dc.elements.size()
       << "\n";
    for (const auto& e : dc.elements) {
      Json x;
      x["lambda"] = e.lambda;
      x["word"] = W.element(e.w).word;
      els.push_back(x);
      os << to_string(e.lambda) << " " << word_string(W.element(e.w).word) << "\n";
    }
    out["elements"] = els;
    emit(o, out, os.str());
    return kOk;
  }
  if (cmd == "parahoric product") {
    ParahoricAlgebra P(c.hecke, face_type(d, indices_from_json(read_json_text(o.face.empty() ? "[]" : o.face))));
    auto coset_of = [&](const std::string& s) {
      if (s.empty()) throw DomainError("ParseError", "--d1 and --d2 are required");
      Json j = read_json_text(s);
      Vec l = vec_from_json(j.at("lambda"));
      if (l.size() != d.rank_y()) throw DomainError("ParseError", "lambda has the wrong dimension");
      return P.double_coset(l, W.id_of(W.from_word(j.contains("word") ? word_from_json(j["word"]) : Word{})));
    };
    DoubleCoset c1 = coset_of(o.d1), c2 = coset_of(o.d2);
    auto consts = P.product(c1, c2);
    Json out;
    out["d1"] = label_to_json(c1.label);
    out["d2"] = label_to_json(c2.label);
    out["poincare"] = poly_to_json(P.poincare());
    Json terms = Json::array();
    std::ostringstream os;
    os << "P_F: " << P.poincare().to_string(H.classes().names) << "\n";
    for (const auto& [label, coeff] : consts) {
      Json t;
      t["label"] = label_to_json(label);
      t["coeff"] = poly_to_json(coeff);
      terms.push_back(t);
      os << to_string(label.lambda) << " " << word_string(label.word) << "\t" << coeff.to_string(H.classes().names) << "\n";
    }
    out["constants"] = terms;
    emit(o, out, os.str());
    return kOk;
  }
  if (cmd == "parahoric failure") {
    FailureStream fs = nonspherical_failure_stream(W, indices_from_json(read_json_text(o.face)), o.count);
    Json out;
    out["witness"] = weyl_to_json(fs.witness.w);
    out["k"] = fs.witness.k;
    out["face_point"] = fs.witness.face_point;
    Json els = Json::array();
    std::ostringstream os;
    os << "witness: " << word_string(fs.witness.w.word) << "\nface point: " << to_string(fs.witness.face_point) << "\n";
    for (const auto& e : fs.elements) {
      Json x;
      x["wf"] = e.wf.word;
      x["point"] = e.point;
      x["verified"] = e.verified;
      els.push_back(x);
      os << to_string(e.point) << " " << word_string(e.wf.word) << (e.verified ? " verified" : " FAILED") << "\n";
    }
    out["elements"] = els;
    emit(o, out, os.str());
    return kOk;
  }
  throw DomainError("ParseError", "unknown command " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kmhecke: Kac-Moody root data, Weyl groups and Hecke algebras"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"table", "json"}));

  std::string cmd;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& full, const std::string& desc) {
    CLI::App* s = parent->add_subcommand(name, desc);
    s->callback([&cmd, full] { cmd = full; });
    s->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"table", "json"}));
    return s;
  };
  auto datum_arg = [&](CLI::App* s) { s->add_option("datum", o.datum_path, "Root datum JSON ('-' for stdin)")->required(); };
  auto tits = [&](CLI::App* s) { s->add_option("--budget-tits", o.budget_tits, "Tits-cone step budget"); };

  CLI::App* gcm = app.add_subcommand("gcm", "Cartan matrix utilities");
  gcm->require_subcommand(1);
  leaf(gcm, "validate", "gcm validate", "Check the GCM axioms")
      ->add_option("matrix", o.matrix_path, "Matrix JSON ('-' for stdin)")
      ->required();
  datum_arg(leaf(&app, "realize", "realize", "Build the realization"));
  datum_arg(leaf(&app, "classify", "classify", "Components and their types"));

  CLI::App* weyl = app.add_subcommand("weyl", "Weyl group operations");
  weyl->require_subcommand(1);
  {
    auto s = leaf(weyl, "orbit", "weyl orbit", "Orbit enumeration");
    datum_arg(s);
    s->add_option("--lambda", o.lambda, "Weight as JSON array")->required();
    s->add_option("--budget-orbit", o.budget_orbit, "Maximum number of points");
    s->add_option("--max-length", o.max_length, "Maximum BFS depth");
    s->add_option("--max-height-drop", o.max_height_drop, "Maximum height drop");
  }
  {
    auto s = leaf(weyl, "dominant", "weyl dominant", "Dominant representative");
    datum_arg(s);
    s->add_option("--lambda", o.lambda, "Weight as JSON array")->required();
    tits(s);
  }
  {
    auto s = leaf(weyl, "bruhat", "weyl bruhat", "Bruhat comparison u <= w");
    datum_arg(s);
    s->add_option("--u", o.u_word, "Word of u")->required();
    s->add_option("--w", o.w_word, "Word of w")->required();
  }
  {
    auto s = leaf(weyl, "words", "weyl words", "All reduced words");
    datum_arg(s);
    s->add_option("--w", o.w_word, "Word of w")->required();
    s->add_option("--budget-words", o.budget_words, "Maximum number of words");
  }

  CLI::App* hecke = app.add_subcommand("hecke", "Bernstein-Lusztig products");
  hecke->require_subcommand(1);
  {
    auto s = leaf(hecke, "mul", "hecke mul", "Product of two finite elements");
    datum_arg(s);
    s->add_option("a", o.a_path, "Left element JSON")->required();
    s->add_option("b", o.b_path, "Right element JSON")->required();
  }
  {
    auto s = leaf(hecke, "commute", "hecke commute", "H_i * Z^lambda in the basis");
    datum_arg(s);
    s->add_option("--i", o.index, "Simple index")->required();
    s->add_option("--lambda", o.lambda, "Weight as JSON array")->required();
  }

  CLI::App* comp = app.add_subcommand("complete", "Completed algebra");
  comp->require_subcommand(1);
  auto region = [&](CLI::App* s) {
    s->add_option("--region-gens", o.region_gens, "Region generators as JSON")->required();
    s->add_option("--region-height", o.region_height, "Region height budget")->required();
  };
  {
    auto s = leaf(comp, "mul", "complete mul", "Truncated product");
    datum_arg(s);
    s->add_option("a", o.a_path, "Left element JSON")->required();
    s->add_option("b", o.b_path, "Right element JSON")->required();
    region(s);
    s->add_option("--u-cap", o.u_cap, "Maximum length in the left W-part");
    tits(s);
  }
  {
    auto s = leaf(comp, "efun", "complete efun", "Expand an EFunction");
    datum_arg(s);
    s->add_option("f", o.a_path, "EFunction JSON")->required();
    region(s);
    tits(s);
  }
  {
    auto s = leaf(comp, "center", "complete center", "Center test");
    datum_arg(s);
    s->add_option("a", o.a_path, "Element JSON")->required();
    s->add_option("--probes", o.probes, "Z^mu probe weights as JSON");
    s->add_option("--u-cap", o.u_cap, "Maximum W-part length");
    tits(s);
  }

  CLI::App* para = app.add_subcommand("parahoric", "Spherical-face algebras");
  para->require_subcommand(1);
  {
    auto s = leaf(para, "coset", "parahoric coset", "Double coset and its label");
    datum_arg(s);
    s->add_option("--face", o.face, "J_zero as JSON array");
    s->add_option("--lambda", o.lambda, "Weight as JSON array")->required();
    s->add_option("--w", o.w_word, "Word of w");
  }
  {
    auto s = leaf(para, "product", "parahoric product", "Structure constants");
    datum_arg(s);
    s->add_option("--face", o.face, "J_zero as JSON array");
    s->add_option("--d1", o.d1, "Label {\"lambda\":..,\"word\":..}")->required();
    s->add_option("--d2", o.d2, "Label {\"lambda\":..,\"word\":..}")->required();
  }
  {
    auto s = leaf(para, "failure", "parahoric failure", "Non-spherical obstruction stream");
    datum_arg(s);
    s->add_option("--face", o.face, "J_zero as JSON array")->required();
    s->add_option("--count", o.count, "Number of elements");
  }
  {
    auto s = leaf(para, "treecount", "parahoric treecount", "Tree orbit size");
    s->add_option("--l", o.l, "Length l >= 1")->required();
    s->add_option("--q", o.q, "Integer value of q");
    s->add_option("--q-prime", o.q_prime, "Integer value of q'");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  try {
    return run(cmd, o);
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << " (" << hint(e.name()) << ")\n";
    return kBudget;
  } catch (const DomainError& e) {
    std::string h = hint(e.name());
    std::cerr << "error: " << e.what() << (h.empty() ? "" : " (" + h + ")") << "\n";
    return kDomain;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: ParseError: " << e.what() << "\n";
    return kDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomain;
  }
}

#include "conreach/io.hpp"

#include <fstream>
#include <sstream>

namespace conreach {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError((path.empty() ? std::string("/") : path) + ": " + what);
}

const Json& field(const Json& j, const std::string& path, const char* key) {
  if (!j.is_object()) fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) fail(path, std::string("missing field \"") + key + "\"");
  return *it;
}

std::string dims(Index r, Index c) { return std::to_string(r) + "x" + std::to_string(c); }

void check_shape(const RatMatrix& m, Index rows, Index cols, const std::string& path, const char* name) {
  if (m.rows() != rows || m.cols() != cols)
    fail(path, std::string(name) + " is " + dims(m.rows(), m.cols()) + ", expected " + dims(rows, cols));
}

Json optional_vector(const std::optional<RatVector>& v) { return v ? to_json(*v) : Json(nullptr); }

Json double_vector(const Eigen::VectorXd& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

Json eigen_condition(const EigenCondition& e) {
  return e.certificate ? to_json(*e.certificate) : Json(nullptr);
}

}  // namespace

Rational rational_from_json(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "rational must be a string such as \"3\" or \"-1/2\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    fail(path, e.what());
  }
}

RatMatrix matrix_from_json(const Json& j, const std::string& path, Index cols) {
  if (!j.is_array()) fail(path, "matrix must be an array of rows");
  const Index rows = static_cast<Index>(j.size());
  if (rows > 0) {
    if (!j[0].is_array()) fail(path + "/0", "row must be an array");
    cols = static_cast<Index>(j[0].size());
  }
  RatMatrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    const std::string rp = path + "/" + std::to_string(r);
    const Json& row = j[static_cast<std::size_t>(r)];
    if (!row.is_array()) fail(rp, "row must be an array");
    if (static_cast<Index>(row.size()) != cols)
      fail(rp, "row has " + std::to_string(row.size()) + " entries, expected " + std::to_string(cols));
    for (Index c = 0; c < cols; ++c)
      m(r, c) = rational_from_json(row[static_cast<std::size_t>(c)], rp + "/" + std::to_string(c));
  }
  return m;
}

RatVector vector_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "vector must be an array");
  RatVector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = rational_from_json(j[i], path + "/" + std::to_string(i));
  return v;
}

Sigma sigma_from_json(const Json& j, const std::string& path) {
  const RatMatrix a = matrix_from_json(field(j, path, "A"), path + "/A");
  const Index n = a.rows();
  check_shape(a, n, n, path + "/A", "A");
  // Empty blocks are written as [] and take their width from the others.
  const Json& bj = field(j, path, "B");
  const Json& cj = field(j, path, "C");
  const Json& dj = field(j, path, "D");
  const Index m_hint = dj.is_array() && !dj.empty() && dj[0].is_array() ? static_cast<Index>(dj[0].size()) : 0;
  const RatMatrix b = matrix_from_json(bj, path + "/B", m_hint);
  const Index m = n > 0 ? b.cols() : m_hint;
  check_shape(b, n, m, path + "/B", "B");
  const RatMatrix c = matrix_from_json(cj, path + "/C", n);
  const Index s = c.rows();
  check_shape(c, s, n, path + "/C", "C");
  const RatMatrix d = matrix_from_json(dj, path + "/D", m);
  check_shape(d, s, m, path + "/D", "D");
  return make_sigma(a, b, c, d);
}

Polyhedron polyhedron_from_json(const Json& j, const std::string& path) {
  const Json& dj = field(j, path, "dim");
  if (!dj.is_number_integer() || dj.get<long long>() < 0) fail(path + "/dim", "dim must be a nonnegative integer");
  const Index dim = dj.get<Index>();
  RatMatrix g(0, dim), e(0, dim);
  RatVector h(0), f(0);
  if (j.contains("ineq")) {
    const Json& ij = j["ineq"];
    g = matrix_from_json(field(ij, path + "/ineq", "G"), path + "/ineq/G", dim);
    h = vector_from_json(field(ij, path + "/ineq", "h"), path + "/ineq/h");
    check_shape(g, h.size(), dim, path + "/ineq/G", "G");
  }
  if (j.contains("eq")) {
    const Json& ej = j["eq"];
    e = matrix_from_json(field(ej, path + "/eq", "E"), path + "/eq/E", dim);
    f = vector_from_json(field(ej, path + "/eq", "f"), path + "/eq/f");
    check_shape(e, f.size(), dim, path + "/eq/E", "E");
  }
  return Polyhedron::from_hrep(g, h, e, f);
}

SystemFile system_from_json(const Json& j) {
  if (!j.is_object()) fail("", "expected an object");
  SystemFile out;
  if (j.contains("graph")) {
    if (j.contains("sigma")) fail("", "a file holds either \"sigma\" or \"graph\", not both");
    const Polyhedron graph = polyhedron_from_json(j["graph"], "/graph");
    if (graph.dim() % 2 != 0) fail("/graph/dim", "graph dimension must be even");
    out.map = raw_map(graph);
  } else {
    out.sys = sigma_from_json(field(j, "", "sigma"), "/sigma");
    out.y = polyhedron_from_json(field(j, "", "constraint"), "/constraint");
    if (out.y->dim() != out.sys->s())
      fail("/constraint/dim", "constraint has dimension " + std::to_string(out.y->dim()) + ", C has " +
                                  std::to_string(out.sys->s()) + " rows");
  }
  if (j.contains("options")) {
    const Json& o = j["options"];
    if (!o.is_object()) fail("/options", "expected an object");
    if (o.contains("cap")) {
      if (!o["cap"].is_number_integer() || o["cap"].get<long long>() < 1)
        fail("/options/cap", "cap must be a positive integer");
      out.options.cap = o["cap"].get<int>();
    }
    if (o.contains("tol")) {
      if (!o["tol"].is_number() || !(o["tol"].get<double>() > 0)) fail("/options/tol", "tol must be a positive number");
      out.options.tol = o["tol"].get<double>();
    }
  }
  return out;
}

SystemFile parse_system_text(std::string_view text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  return system_from_json(j);
}

SystemFile parse_system(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_system_text(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

Json to_json(const Rational& x) { return to_string(x); }

Json to_json(const RatVector& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
  return out;
}

Json to_json(const RatMatrix& m) {
  Json out = Json::array();
  for (Index r = 0; r < m.rows(); ++r) out.push_back(to_json(RatVector(m.row(r).transpose())));
  return out;
}

Json to_json(const Sigma& sys) {
  return {{"A", to_json(sys.A)}, {"B", to_json(sys.B)}, {"C", to_json(sys.C)}, {"D", to_json(sys.D)}};
}

Json to_json(const Polyhedron& p, bool with_vrep) {
  Json out{{"dim", p.dim()},
           {"ineq", {{"G", to_json(p.ineq_matrix())}, {"h", to_json(p.ineq_rhs())}}},
           {"eq", {{"E", to_json(p.eq_matrix())}, {"f", to_json(p.eq_rhs())}}}};
  if (with_vrep) {
    auto cols = [](const RatMatrix& m) { return to_json(RatMatrix(m.transpose())); };
    out["vrep"] = {{"vertices", cols(p.vertices())}, {"rays", cols(p.rays())}, {"lineality", cols(p.lineality())}};
  }
  return out;
}

Json to_json(const Subspace& s) {
  return {{"ambient", s.ambient_dim()}, {"dim", s.dim()}, {"basis", to_json(RatMatrix(s.basis().transpose()))}};
}

Json to_json(const EigenCertificate& c) {
  Json out{{"cone", to_string(c.cone)}, {"exact", c.exact()}, {"residual", c.residual}};
  if (c.exact()) {
    out["lambda"] = to_string(*c.lambda_exact);
    out["q"] = to_json(c.q_exact);
    out["u"] = to_json(c.u_exact);
  } else {
    out["lambda"] = c.lambda;
    out["q"] = double_vector(c.q);
    out["u"] = double_vector(c.u);
  }
  return out;
}

Json to_json(const Certificate& c) {
  Json out{{"kind", c.kind}, {"condition", c.condition}, {"note", c.note}};
  if (c.eigen) out.update(to_json(*c.eigen));
  if (c.vector) out["vector"] = to_json(*c.vector);
  return out;
}

Json system_to_json(const SystemFile& f) {
  Json out;
  if (f.is_system()) {
    out["sigma"] = to_json(*f.sys);
    out["constraint"] = to_json(*f.y);
  } else {
    out["graph"] = to_json(f.map->graph);
  }
  Json opts{{"tol", f.options.tol}};
  if (f.options.cap) opts["cap"] = *f.options.cap;
  out["options"] = opts;
  return out;
}

Json case_json(const CaseTag& tag) {
  return {{"variant", to_string(tag.variant)},
          {"K", to_json(tag.ksub)},
          {"K_plus_Y_is_universe", tag.sum_is_universe},
          {"K_meets_interior", tag.interior.found},
          {"interior_witness", tag.interior.found ? to_json(tag.interior.point) : Json(nullptr)},
          {"K_cap_Y_is_origin", tag.meets_only_at_origin}};
}

Json subspaces_json(const SubspaceReport& r) {
  return {{"vstar", to_json(r.vstar)},
          {"tstar", to_json(r.tstar)},
          {"rstar", to_json(r.rstar)},
          {"K", to_json(r.ksub)},
          {"L", to_json(r.lsub)},
          {"right_invertible", r.right_invertible},
          {"left_invertible", r.left_invertible},
          {"vstar_steps", r.vstar_steps},
          {"tstar_steps", r.tstar_steps},
          {"K_perp_is_dual_L", r.duality_holds}};
}

Json conditions_json(const Conditions& c) {
  return {{"a", c.a},
          {"b", c.b.holds},
          {"c", c.c},
          {"d", c.d.holds},
          {"all", c.all()},
          {"numerical", c.numerical()},
          {"witnesses",
           {{"a", optional_vector(c.a_witness)},
            {"b", eigen_condition(c.b)},
            {"c", {{"subspace", to_json(c.c_subspace.value)}, {"exact", c.c_subspace.exact}}},
            {"d", eigen_condition(c.d)}}},
          {"singular_pencil", {{"b", c.b.singular_pencil}, {"d", c.d.singular_pencil}}}};
}

Json sequences_json(const std::vector<SequenceRecord>& seqs) {
  Json out = Json::array();
  for (const auto& s : seqs) {
    Json prof = Json::array();
    for (std::size_t i = 0; i < s.sets.size(); ++i) {
      const auto p = profile(s.sets[i]);
      prof.push_back({{"step", i + 1},
                      {"constraints", p.constraints},
                      {"equalities", p.equalities},
                      {"vertices", p.vertices},
                      {"rays", p.rays},
                      {"lineality", p.lineality},
                      {"width", p.width ? to_json(*p.width) : Json("unbounded")}});
    }
    out.push_back({{"name", s.name},
                   {"stabilized_at", s.stabilized_at ? Json(*s.stabilized_at) : Json(nullptr)},
                   {"profile", prof},
                   {"final", s.sets.empty() ? Json(nullptr) : to_json(s.sets.back(), true)}});
  }
  return out;
}

Json report_to_json(const Report& r, double tol) {
  Json certs = Json::array();
  for (const auto& c : r.verdict.certificates) certs.push_back(to_json(c));
  return {{"case", case_json(r.case_tag)},
          {"subspaces", subspaces_json(r.subspaces)},
          {"conditions", r.conditions ? conditions_json(*r.conditions) : Json(nullptr)},
          {"verdict",
           {{"status", to_string(r.verdict.status)},
            {"route", to_string(r.verdict.route)},
            {"steps_used", r.verdict.steps_used},
            {"notes", r.verdict.notes}}},
          {"certificates", certs},
          {"sequences", sequences_json(r.sequences)},
          {"meta", {{"cap", r.cap}, {"tol", tol}, {"interpretations", {"controllable=Kalman(A,B)"}}}}};
}

Json consistency_to_json(const ConsistencyReport& r) {
  Json steps = Json::array();
  for (const auto& d : r.duality) steps.push_back({{"step", d.step}, {"holds", d.holds}});
  return {{"spectral", to_string(r.spectral)},
          {"direct", to_string(r.direct)},
          {"verdicts_agree", r.verdicts_agree},
          {"duality", steps},
          {"duality_holds", r.duality_holds},
          {"notes", r.notes}};
}

namespace {

bool is_scalar_row(const Json& j) {
  if (!j.is_array()) return false;
  for (const auto& x : j)
    if (x.is_structured()) return false;
  return true;
}

std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "none";
  return j.dump();
}

std::string row_text(const Json& j) {
  std::string out = "(";
  for (std::size_t i = 0; i < j.size(); ++i) out += (i ? ", " : "") + scalar_text(j[i]);
  return out + ")";
}

void render(const Json& j, const std::string& key, int depth, std::ostringstream& out) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  if (j.is_object()) {
    if (!key.empty()) out << pad << key << ":\n";
    for (const auto& [k, v] : j.items()) render(v, k, key.empty() ? depth : depth + 1, out);
  } else if (is_scalar_row(j)) {
    out << pad << key << ": " << row_text(j) << "\n";
  } else if (j.is_array()) {
    out << pad << key << ": " << (j.empty() ? "none" : "") << "\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (is_scalar_row(j[i])) {
        out << pad << "  - " << row_text(j[i]) << "\n";
      } else {
        out << pad << "  - [" << i << "]\n";
        for (const auto& [k, v] : j[i].items()) render(v, k, depth + 2, out);
      }
    }
  } else {
    out << pad << key << ": " << scalar_text(j) << "\n";
  }
}

}  // namespace

std::string render_text(const Json& doc) {
  std::ostringstream out;
  // Verdict first, so the headline is not buried under subspace bases.
  if (doc.is_object() && doc.contains("verdict")) {
    render(doc["verdict"], "verdict", 0, out);
    for (const auto& [k, v] : doc.items())
      if (k != "verdict") render(v, k, 0, out);
  } else {
    render(doc, "", 0, out);
  }
  return out.str();
}

}  // namespace conreach

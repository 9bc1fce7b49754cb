#include "conreach/io.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>

using namespace conreach;

namespace {

struct Args {
  std::string file;
  std::optional<int> steps;
  std::optional<int> cap;
  std::optional<double> tol;
  std::string format = "json";
  std::string map = "F";
};

// Exit codes.
constexpr int kDecided = 0;
constexpr int kError = 1;
constexpr int kInconclusive = 2;

int resolve_cap(const Args& args, const Options& opts) {
  if (args.cap) {
    if (*args.cap < 1) throw std::invalid_argument("--cap must be positive");
    return *args.cap;
  }
  if (opts.cap) return *opts.cap;
  if (const char* env = std::getenv("CONREACH_CAP")) {
    int cap = 0;
    try {
      std::size_t used = 0;
      cap = std::stoi(env, &used);
      if (used != std::string(env).size()) cap = 0;
    } catch (const std::exception&) {
      cap = 0;
    }
    if (cap < 1) throw std::invalid_argument("CONREACH_CAP must be a positive integer");
    return cap;
  }
  return kDefaultCap;
}

const SystemFile& need_system(const SystemFile& f, const std::string& cmd) {
  if (!f.is_system()) throw std::invalid_argument(cmd + " needs a constrained system, not a raw map");
  return f;
}

void emit(const Json& doc, const std::string& format) {
  if (format == "json")
    std::cout << doc.dump(2) << "\n";
  else
    std::cout << render_text(doc);
}

int run(const std::string& cmd, const Args& args) {
  const SystemFile file = parse_system(args.file);
  const int cap = resolve_cap(args, file.options);
  const double tol = args.tol.value_or(file.options.tol);
  if (!(tol > 0)) throw std::invalid_argument("--tol must be positive");

  if (cmd == "reach-set" || cmd == "feasible-set") {
    const MapTag tag = parse_map_tag(args.map);
    ConstrainedMap h;
    if (file.is_system()) {
      if (tag == MapTag::Raw) throw std::invalid_argument("--map Raw needs a graph file");
      validate(*file.sys, *file.y);
      h = build_map(*file.sys, *file.y, tag);
    } else {
      if (tag != MapTag::Raw && args.map != "F") throw std::invalid_argument("a graph file only supports --map Raw");
      h = *file.map;
    }
    const SequenceKind kind = cmd == "reach-set" ? SequenceKind::Reach : SequenceKind::Feasible;
    Json doc{{"map", to_string(h.tag)}, {"kind", cmd}};
    Json sets = Json::array();
    if (args.steps) {
      if (*args.steps < 1) throw std::invalid_argument("--steps must be positive");
      for (const auto& p : reach_feas(h, *args.steps, kind)) sets.push_back(to_json(p, true));
      doc["steps"] = *args.steps;
      doc["stabilized_at"] = nullptr;
    } else {
      const Stabilization st = iterate_until_stable(h, kind, cap);
      for (const auto& p : st.sets) sets.push_back(to_json(p, true));
      doc["steps"] = st.sets.size();
      doc["stabilized_at"] = st.stabilized_at ? Json(*st.stabilized_at) : Json(nullptr);
      doc["cap"] = cap;
    }
    doc["sets"] = sets;
    doc["result"] = sets.back();
    emit(doc, args.format);
    return kDecided;
  }

  const Sigma& sys = *need_system(file, cmd).sys;
  const Polyhedron& y = *file.y;
  if (cmd == "analyze") {
    const Report r = analyze(sys, y, cap, tol);
    emit(report_to_json(r, tol), args.format);
    return r.verdict.status == Status::Inconclusive ? kInconclusive : kDecided;
  }
  validate(sys, y);
  if (cmd == "classify") {
    emit({{"case", case_json(classify(sys, y))}}, args.format);
  } else if (cmd == "subspaces") {
    emit({{"subspaces", subspaces_json(kl_subspaces(sys))}}, args.format);
  } else if (cmd == "check-conditions") {
    emit({{"conditions", conditions_json(check_conditions(sys, y, tol))}}, args.format);
  } else if (cmd == "oracle-compare") {
    const ConsistencyReport r = oracle_compare(sys, y, cap, 4, tol);
    emit({{"oracle", consistency_to_json(r)}, {"meta", {{"cap", cap}, {"tol", tol}}}}, args.format);
    return r.verdicts_agree ? kDecided : kInconclusive;
  }
  return kDecided;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reachability of linear systems under polyhedral output constraints"};
  app.require_subcommand(1);
  Args args;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"analyze", "classify the system and decide reachability"},
      {"classify", "case classification only"},
      {"subspaces", "V*, T*, R*, K and L"},
      {"reach-set", "R_l of the chosen map"},
      {"feasible-set", "X_l of the chosen map"},
      {"check-conditions", "spectral conditions (a)-(d)"},
      {"oracle-compare", "spectral verdict against direct iteration"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("file", args.file, "system or graph JSON file")->required();
    sub->add_option("--cap", args.cap, "iteration cap (default 25 or CONREACH_CAP)");
    sub->add_option("--tol", args.tol, "floating point tolerance");
    sub->add_option("--format", args.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    if (name == "reach-set" || name == "feasible-set") {
      sub->add_option("--steps", args.steps, "number of steps; omitted means iterate to stabilization");
      sub->add_option("--map", args.map, "F, Fcon, Frec, Fpolar, Fminus, Fb or Raw");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kError;
  }

  try {
    return run(app.get_subcommands().front()->get_name(), args);
  } catch (const ValidationError& e) {
    std::cerr << "error: invalid system\n";
    for (const auto& issue : e.issues()) std::cerr << "  - " << issue << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kError;
}

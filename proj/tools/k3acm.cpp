#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "k3acm/errors.hpp"
#include "k3acm/nikulin.hpp"
#include "k3acm/report.hpp"

using namespace k3acm;

namespace {

struct Outcome {
  std::string command;
  Json args;
  std::optional<LatticeSpec> lat;
  Json results;
  bool pass = true;
};

Int parse_int(const std::string& text, const std::string& flag) {
  Int x;
  if (text.empty() || x.set_str(text, 10) != 0) throw InputError(flag + " expects an integer, got '" + text + "'");
  return x;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice-theoretic ACM line bundle calculator for K3 surfaces"};
  app.require_subcommand(1);
  app.fallthrough();
  bool timing = false, table = false;
  app.add_flag("--timing", timing, "Include wall-clock time in the report");
  app.add_flag("--table", table, "Render the report as key: value lines");

  std::string path, degree_class, degree, square, square_min, square_max, cls, theorem, h_class, suite,
      builtin, max_hd = "24";
  int n_max = 21;

  auto* info = app.add_subcommand("lattice-info", "Rank, signature, evenness, discriminant, ample_ref verdict");
  info->add_option("lattice", path, "Lattice file or builtin:NAME")->required();

  auto* en = app.add_subcommand("enumerate", "List the classes of a degree and square slice");
  en->add_option("lattice", path, "Lattice file or builtin:NAME")->required();
  en->add_option("--degree", degree, "Degree against the degree class")->required();
  en->add_option("--square", square, "Exact square");
  en->add_option("--square-min", square_min, "Smallest square");
  en->add_option("--square-max", square_max, "Largest square");
  en->add_option("--degree-class", degree_class, "Class to measure degree against (default ample_ref)");

  auto* cl = app.add_subcommand("classify", "ACM and initialized verdict for one class");
  cl->add_option("lattice", path, "Lattice file or builtin:NAME")->required();
  cl->add_option("--class", cls, "Coordinates, a basis label, or on dp9 X, H, D1..D4")->required();
  cl->add_option("--theorem", theorem, "1.1 (H^2 = 18), 3.1 (H^2 = 4), 3.2 (general), 5.2 (dp9 structure; default on dp9, else 1.1)")
      ->check(CLI::IsMember({"1.1", "3.1", "3.2", "5.2"}));
  cl->add_option("--H", h_class, "Polarization (default 3X on dp9, else ample_ref)");

  auto* ve = app.add_subcommand("verify", "Run a verification suite");
  ve->add_option("lattice", path, "Lattice file or builtin:NAME")->required();
  ve->add_option("suite", suite, "nikulin, prop52, roots240, thm11-consistency, thm12")->required();
  ve->add_option("--max-hd", max_hd, "prop52: largest H.D scanned")->capture_default_str();
  ve->add_option("--n-max", n_max, "thm12: largest rank")->capture_default_str();

  auto* bi = app.add_subcommand("builtin", "Print a builtin lattice as a lattice file");
  bi->add_option("name", builtin, "dp9, u2, quartic-demo")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    if (bi->parsed()) {
      std::cout << canonical_dump(lattice_to_json(builtin_lattice(builtin)));
      return 0;
    }
    out.lat = load_lattice(path);
    const LatticeSpec& lat = *out.lat;
    out.args["lattice"] = path;
    if (info->parsed()) {
      out.command = "lattice-info";
      out.results = lattice_info(lat);
    } else if (en->parsed()) {
      out.command = "enumerate";
      EnumerateRequest req;
      req.degree_class = degree_class.empty() ? lat.require_ample_ref() : resolve_class(lat, degree_class);
      req.degree = parse_int(degree, "--degree");
      if (!square.empty()) {
        if (!square_min.empty() || !square_max.empty())
          throw InputError("--square excludes --square-min and --square-max");
        req.square_min = req.square_max = parse_int(square, "--square");
      } else {
        if (!square_min.empty()) req.square_min = parse_int(square_min, "--square-min");
        if (!square_max.empty()) req.square_max = parse_int(square_max, "--square-max");
      }
      out.args["degree"] = degree;
      out.args["degree_class"] = degree_class.empty() ? Json(nullptr) : Json(degree_class);
      out.args["square_min"] = req.square_min ? to_json(*req.square_min) : Json(nullptr);
      out.args["square_max"] = req.square_max ? to_json(*req.square_max) : Json(nullptr);
      out.results = enumerate_payload(lat, req);
    } else if (cl->parsed()) {
      out.command = "classify";
      if (theorem.empty()) theorem = is_dp9(lat) ? "5.2" : "1.1";
      out.args["class"] = cls;
      out.args["theorem"] = theorem;
      out.args["H"] = h_class.empty() ? Json(nullptr) : Json(h_class);
      std::optional<DivisorClass> H;
      if (!h_class.empty()) H = resolve_class(lat, h_class);
      out.results = classify_payload(lat, resolve_class(lat, cls), theorem, H);
    } else if (ve->parsed()) {
      out.command = "verify";
      out.args["suite"] = suite;
      SuiteOptions opts;
      opts.max_hd = parse_int(max_hd, "--max-hd");
      opts.n_max = n_max;
      if (suite == "prop52") out.args["max_hd"] = to_json(opts.max_hd);
      if (suite == "thm12") out.args["n_max"] = n_max;
      SuiteOutcome r = run_suite(lat, suite, opts);
      out.pass = r.pass;
      out.results = r.payload;
      out.results["pass"] = r.pass;
    }
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition failed: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  std::optional<int64_t> elapsed;
  if (timing)
    elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  Json report = make_report(out.command, out.args, out.lat, out.results, elapsed);
  std::cout << (table ? render_table(report) : canonical_dump(report));
  return out.pass ? 0 : 1;
}

// ghv: generalized h-vectors, CS lower bounds and intersection cohomology of polytopes.
//
// Exit codes: 0 all checks pass, 1 a check failed (named on stderr), 2 input error.

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "ghv/report.hpp"

namespace fs = std::filesystem;
using ghv::InputError;
using json = nlohmann::ordered_json;

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kInputError = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ghv::PolytopeFile load(const std::string& path, long field_d) {
  ghv::PolytopeFile f;
  try {
    f = ghv::PolytopeFile::parse(read_file(path));
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
  if (field_d > 0 && f.radicand != 0 && f.radicand != field_d) {
    throw InputError(path + ": file is over Q(sqrt " + std::to_string(f.radicand) + "), --field-d asks for " +
                     std::to_string(field_d));
  }
  if (f.name.empty()) f.name = fs::path(path).stem().string();
  return f;
}

// "cube:3", "cross:1", "simplex:2" or "interval"
ghv::Polytope component(const std::string& desc) {
  if (desc == "interval") return ghv::cross_polytope(1);
  const auto colon = desc.find(':');
  if (colon == std::string::npos) throw InputError("component '" + desc + "' must look like kind:n");
  const std::string kind = desc.substr(0, colon);
  std::size_t n = 0;
  try {
    n = std::stoul(desc.substr(colon + 1));
  } catch (const std::exception&) {
    throw InputError("component '" + desc + "' has a bad dimension");
  }
  if (n == 0) throw InputError("component '" + desc + "' needs dimension >= 1");
  if (kind == "simplex") return ghv::simplex(n);
  if (kind == "cube") return ghv::cube(n);
  if (kind == "cross") return ghv::cross_polytope(n);
  throw InputError("unknown component kind '" + kind + "'");
}

std::size_t parse_dim(const std::vector<std::string>& args, const std::string& kind) {
  if (args.size() != 1) throw InputError(kind + " takes exactly one dimension argument");
  try {
    const auto n = std::stoul(args[0]);
    if (n >= 1) return n;
  } catch (const std::exception&) {
  }
  throw InputError("bad dimension '" + args[0] + "'");
}

// x_1 += sqrt(d) x_2: an invertible map that makes the coordinates irrational
ghv::Polytope shear(const ghv::Polytope& p, long d) {
  if (p.dim() < 2) throw InputError("--field-d on a deterministic kind needs dimension >= 2");
  ghv::Matrix m = ghv::Matrix::identity(p.dim());
  m(0, 1) = ghv::Scalar::quadratic(ghv::Rational(0), ghv::Rational(1), d);
  return p.linear_image(m);
}

ghv::PolytopeFile generate(const std::string& kind, const std::vector<std::string>& args, std::size_t pairs,
                           std::uint64_t seed, long field_d) {
  if (field_d != 0 && (field_d <= 1 || !ghv::is_square_free(field_d))) {
    throw InputError("--field-d must be a square-free integer > 1");
  }
  std::string name = kind;
  for (const auto& a : args) name += ":" + a;
  std::optional<ghv::Polytope> p;
  if (kind == "simplex") {
    p = ghv::simplex(parse_dim(args, kind));
  } else if (kind == "cube") {
    p = ghv::cube(parse_dim(args, kind));
  } else if (kind == "cross") {
    p = ghv::cross_polytope(parse_dim(args, kind));
  } else if (kind == "product" || kind == "free-sum") {
    if (args.size() != 2) throw InputError(kind + " takes two components, e.g. cube:2 cross:1");
    p = kind == "product" ? ghv::product(component(args[0]), component(args[1]))
                          : ghv::free_sum(component(args[0]), component(args[1]));
  } else if (kind == "random-cs") {
    const std::size_t n = parse_dim(args, kind);
    if (pairs == 0) throw InputError("random-cs needs --pairs >= 1");
    p = ghv::random_cs(n, pairs, seed, field_d);
    name += ":pairs=" + std::to_string(pairs) + ":seed=" + std::to_string(seed);
    if (field_d) name += ":d=" + std::to_string(field_d);
    return ghv::PolytopeFile::from_polytope(*p, name);
  } else {
    throw InputError("unknown kind '" + kind + "' (simplex, cube, cross, product, free-sum, random-cs)");
  }
  if (field_d) {
    p = shear(*p, field_d);
    name += ":sheared-d=" + std::to_string(field_d);
  }
  return ghv::PolytopeFile::from_polytope(*p, name);
}

std::string join(const std::vector<std::int64_t>& c) {
  std::ostringstream os;
  for (std::size_t i = 0; i < c.size(); ++i) os << (i ? " " : "") << c[i];
  return os.str();
}

std::string field_name(long d) { return d == 0 ? "rational" : "Q(sqrt " + std::to_string(d) + ")"; }

void print_row(std::ostream& os, const std::string& label, const std::string& value) {
  os << std::left << std::setw(16) << label << value << '\n';
}

void print_text(std::ostream& os, const ghv::Report& r) {
  const int n = static_cast<int>(r.input.dim);
  print_row(os, "input", r.input.name + " (dim " + std::to_string(n) + ", " + field_name(r.input.radicand) + ", " +
                             std::to_string(r.input.vertices.size()) + " vertices)");
  if (r.translation) {
    std::string t;
    for (const auto& x : *r.translation) t += (t.empty() ? "" : ", ") + x.to_string();
    print_row(os, "translation", "(" + t + ")");
  }
  print_row(os, "h", join(r.h.padded(n)));
  print_row(os, "(1+x)^" + std::to_string(n), join(ghv::IntPolynomial::one_plus_x_pow(n).padded(n)));
  print_row(os, "difference", join((r.h - ghv::IntPolynomial::one_plus_x_pow(n)).padded(n)));
  if (r.bounds) {
    const auto& b = *r.bounds;
    print_row(os, "cross-polytope", b.is_cross_polytope ? "yes" : "no");
    print_row(os, "minimum", b.is_minimum ? "yes" : "no");
  }
  if (r.ih) {
    const auto& ih = *r.ih;
    os << "\nintersection cohomology (degree cap " << ih.degree_cap << ")\n";
    os << "  q      u      v";
    if (ih.phi) os << "     u+     u-     v+     v-";
    os << '\n';
    for (int q = 0; q <= ih.degree_cap; q += 2) {
      os << std::right << std::setw(3) << q << std::setw(7) << ih.u[q] << std::setw(7) << ih.v[q];
      if (ih.phi) {
        os << std::setw(7) << ih.phi->u.plus[q] << std::setw(7) << ih.phi->u.minus[q] << std::setw(7)
           << ih.phi->v.plus[q] << std::setw(7) << ih.phi->v.minus[q];
      }
      os << '\n';
    }
    auto table = [&os](const char* title, const std::vector<ghv::LefschetzRow>& rows) {
      if (rows.empty()) return;
      os << title << "\n  q  dim -> dim  rank  required      ok\n";
      for (const auto& l : rows) {
        std::string need = l.injective_required && l.surjective_required ? "bijective"
                           : l.injective_required                        ? "injective"
                                                                         : "surjective";
        os << std::right << std::setw(3) << l.q << std::setw(5) << l.source_dim << " ->" << std::setw(4)
           << l.target_dim << std::setw(6) << l.rank << "  " << std::left << std::setw(12) << need
           << (l.ok() ? "yes" : "NO") << '\n';
      }
    };
    table("multiplication by s_P", ih.lefschetz);
    table("multiplication by s_P on the -1 eigenspace", ih.lefschetz_minus);
    os << '\n';
  }
  std::string checks;
  for (const auto& [name, ok] : r.checks) checks += (checks.empty() ? "" : " ") + name + (ok ? "=ok" : "=FAIL");
  print_row(os, "checks", checks);
  const std::string failed = r.failed_check();
  print_row(os, "status", failed.empty() ? "ok" : "check failed: " + failed);
}

int finish(const ghv::Report& r, bool as_json) {
  if (as_json) {
    std::cout << r.to_json().dump(2) << '\n';
  } else {
    print_text(std::cout, r);
  }
  const std::string failed = r.failed_check();
  if (failed.empty()) return kOk;
  std::cerr << "check failed: " << failed << '\n';
  return kCheckFailed;
}

// One analysis per file: ih when the dimension allows, otherwise check-bounds
// for symmetric inputs and hvector for the rest.
ghv::Report analyse_file(const ghv::PolytopeFile& f, int degree_cap, int max_dim) {
  if (static_cast<int>(f.dim) <= max_dim) return ghv::run_ih(f, degree_cap, max_dim);
  if (ghv::is_centrally_symmetric(ghv::prepare(f).polytope)) return ghv::run_check_bounds(f);
  return ghv::run_hvector(f);
}

int report_all(const std::string& dir, int degree_cap, int max_dim, long field_d, bool as_json) {
  if (!fs::is_directory(dir)) throw InputError(dir + " is not a directory");
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  int code = kOk;
  json all = json::array();
  if (!as_json) {
    std::cout << std::left << std::setw(28) << "file" << std::setw(5) << "dim" << std::setw(22) << "h" << std::setw(18)
              << "difference" << "status\n";
  }
  for (const auto& path : files) {
    const std::string file = path.filename().string();
    try {
      const auto f = load(path.string(), field_d);
      const auto r = analyse_file(f, degree_cap, max_dim);
      const std::string failed = r.failed_check();
      if (!failed.empty()) code = std::max(code, kCheckFailed);
      if (as_json) {
        json entry;
        entry["file"] = file;
        entry["report"] = r.to_json();
        all.push_back(std::move(entry));
      } else {
        const int n = static_cast<int>(f.dim);
        std::cout << std::left << std::setw(28) << file << std::setw(5) << n << std::setw(22) << join(r.h.padded(n))
                  << std::setw(18) << join((r.h - ghv::IntPolynomial::one_plus_x_pow(n)).padded(n))
                  << (failed.empty() ? r.command + " ok" : r.command + " FAILED " + failed) << '\n';
      }
      if (!failed.empty()) std::cerr << file << ": check failed: " << failed << '\n';
    } catch (const std::invalid_argument& e) {
      code = kInputError;
      std::cerr << file << ": error: " << e.what() << '\n';
      if (as_json) all.push_back({{"file", file}, {"error", e.what()}});
      if (!as_json) std::cout << std::left << std::setw(28) << file << "input error\n";
    } catch (const std::runtime_error& e) {
      code = kInputError;
      std::cerr << file << ": error: " << e.what() << '\n';
      if (as_json) all.push_back({{"file", file}, {"error", e.what()}});
      if (!as_json) std::cout << std::left << std::setw(28) << file << "input error\n";
    }
  }
  if (as_json) std::cout << json{{"schema", "ghv-report-set/1"}, {"reports", all}}.dump(2) << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized h-vectors, centrally symmetric lower bounds and combinatorial intersection cohomology"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false;
  long field_d = 0;
  int degree_cap = -1;
  int max_dim = 3;
  std::uint64_t seed = 0;
  std::size_t pairs = 0;
  std::string kind, file, dir, output;
  std::vector<std::string> args;

  app.add_flag("--json", as_json, "machine-readable output");
  app.add_option("--field-d", field_d, "square-free radicand d of Q(sqrt d)");

  auto* gen = app.add_subcommand("generate", "write a polytope file: simplex|cube|cross N, product|free-sum A B, random-cs N");
  gen->add_option("kind", kind)->required();
  gen->add_option("args", args);
  gen->add_option("--seed", seed, "random-cs seed");
  gen->add_option("--pairs", pairs, "random-cs number of antipodal point pairs");
  gen->add_option("-o,--output", output, "write to a file instead of stdout");

  auto* hv = app.add_subcommand("hvector", "generalized h-vector of a polytope file");
  hv->add_option("file", file)->required();
  auto* cb = app.add_subcommand("check-bounds", "lower-bound checks for a centrally symmetric polytope");
  cb->add_option("file", file)->required();
  auto* ih = app.add_subcommand("ih", "minimal extension sheaf, Betti numbers and identity checks");
  ih->add_option("file", file)->required();
  auto* all = app.add_subcommand("report-all", "analyse every *.json polytope file in a directory");
  all->add_option("dir", dir)->required();
  for (auto* sub : {ih, all}) {
    sub->add_option("--degree-cap", degree_cap, "even degree cap, default 2(n+1)");
    sub->add_option("--max-dim", max_dim, "largest dimension for the sheaf computation")->capture_default_str();
  }
  for (auto* sub : {hv, cb, ih, all}) sub->add_option("--seed", seed, "accepted for uniformity; analyses are deterministic");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*gen) {
      const auto f = generate(kind, args, pairs, seed, field_d);
      const std::string text = f.dump();
      if (output.empty()) {
        std::cout << text;
      } else {
        std::ofstream out(output, std::ios::binary);
        if (!out) throw InputError("cannot write " + output);
        out << text;
      }
      return kOk;
    }
    if (*hv) return finish(ghv::run_hvector(load(file, field_d)), as_json);
    if (*cb) return finish(ghv::run_check_bounds(load(file, field_d)), as_json);
    if (*ih) return finish(ghv::run_ih(load(file, field_d), degree_cap, max_dim), as_json);
    if (*all) return report_all(dir, degree_cap, max_dim, field_d, as_json);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

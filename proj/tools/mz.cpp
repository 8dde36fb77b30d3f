#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "mz/dirichlet.hpp"
#include "mz/error.hpp"
#include "mz/expr.hpp"
#include "mz/field.hpp"
#include "mz/global.hpp"
#include "mz/json_util.hpp"
#include "mz/motive.hpp"
#include "mz/series.hpp"
#include "mz/varieties.hpp"

using namespace mz;
using nlohmann::json;

namespace {

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::InvalidInput, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InvalidInput, path + ": " + e.what());
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream in(text);
  for (std::string item; std::getline(in, item, sep);) out.push_back(item);
  return out;
}

QPoly parse_coeffs(const std::string& text) {
  std::vector<Rational> c;
  for (const auto& item : split(text, ',')) c.push_back(parse_rational(item));
  if (c.empty()) fail(ErrorKind::InvalidInput, "empty coefficient list");
  return QPoly(std::move(c));
}

std::pair<int, int> parse_bounds(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) fail(ErrorKind::InvalidInput, "bounds must be written a,b");
  try {
    return {std::stoi(parts[0]), std::stoi(parts[1])};
  } catch (const std::exception&) {
    fail(ErrorKind::InvalidInput, "bounds must be integers");
  }
}

FieldHandle field_of_size(std::int64_t q) {
  if (q < 2) fail(ErrorKind::InvalidInput, "field size must be at least 2");
  const auto primes = prime_factors(static_cast<std::uint64_t>(q));
  if (primes.size() != 1) fail(ErrorKind::NotPrime, std::to_string(q) + " is not a prime power");
  int e = 0;
  for (auto n = static_cast<std::uint64_t>(q); n > 1; n /= primes[0]) ++e;
  return make_field(primes[0], e);
}

RationalFunctionQ fit(const PowerSeriesQ& s, const std::optional<std::pair<int, int>>& bounds) {
  return bounds ? rational_fit(s, bounds->first, bounds->second) : rational_fit_auto(s);
}

json rational_function_json(const RationalFunctionQ& r) {
  return {{"num", poly_to_json(r.num())}, {"den", poly_to_json(r.den())}};
}

json weights_json(const VirtualMotive& m) {
  try {
    json out = json::object();
    for (const auto& [w, n] : weight_profile(m)) out[std::to_string(w)] = n;
    return out;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NotWeil) throw;
    return nullptr;
  }
}

json class_report(const VirtualMotive& m) {
  const auto z = m.z_function();
  const auto fe = verify_functional_equation(m);
  json out = rational_function_json(z);
  out["chi"] = fe.chi;
  out["det"] = rational_to_json_string(fe.det);
  out["fe_holds"] = fe.holds;
  out["weights"] = weights_json(m);
  return out;
}

// Borel-Moore class of a variety from its point counts.
VirtualMotive variety_class(const VarietySpec& v, std::int64_t q, int terms, int jobs) {
  const auto counts = count_tower(v, field_of_size(q), terms, jobs);
  return from_rational(rational_fit_auto(zeta_series_from_counts(counts)), q);
}

void print_pretty(const json& j, std::ostream& out, const std::string& prefix = "") {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      const std::string name = prefix.empty() ? key : prefix + "." + key;
      const bool records = value.is_array() && !value.empty() && value.front().is_object();
      if ((value.is_object() && !value.empty()) || records)
        print_pretty(value, out, name);
      else
        out << std::left << std::setw(24) << name << ' ' << value.dump() << '\n';
    }
  } else if (j.is_array() && !j.empty() && j.front().is_object()) {
    for (std::size_t i = 0; i < j.size(); ++i) print_pretty(j[i], out, prefix + "[" + std::to_string(i) + "]");
  } else {
    out << (prefix.empty() ? std::string() : prefix + " ") << j.dump() << '\n';
  }
}

struct Options {
  bool pretty = false;
  bool error_json = false;
  int jobs = 1;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Zeta functions, motive classes and L-functions over finite fields and Q"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--pretty", opt.pretty, "Human-readable output");
  app.add_flag("--error-json", opt.error_json, "Report errors as JSON on stdout");
  app.add_option("--jobs", opt.jobs, "Worker threads for point counting")->check(CLI::PositiveNumber);

  json result;
  std::function<void()> run;

  // count
  auto* count = app.add_subcommand("count", "Point counts over F_{q^n}, n = 1..N");
  std::string spec_path;
  std::int64_t q = 0;
  int n_max = 0;
  count->add_option("--spec", spec_path, "Variety spec (JSON)")->required();
  count->add_option("--q", q, "Field size")->required();
  count->add_option("-n,--n", n_max, "Number of extensions")->required();
  count->callback([&] {
    run = [&] {
      const auto v = variety_from_json(read_json(spec_path));
      result = {{"q", q}, {"counts", count_tower(v, field_of_size(q), n_max, opt.jobs)}};
    };
  });

  // zeta
  auto* zeta = app.add_subcommand("zeta", "Rational zeta function from a spec or counts");
  std::string counts_text, bounds_text;
  zeta->add_option("--spec", spec_path, "Variety spec (JSON)");
  zeta->add_option("--counts", counts_text, "Comma-separated counts N_1,N_2,...");
  zeta->add_option("--q", q, "Field size")->required();
  zeta->add_option("--bounds", bounds_text, "Degree bounds num,den");
  zeta->add_option("-n,--n", n_max, "Number of counts to take from the variety");
  zeta->callback([&] {
    run = [&] {
      std::optional<std::pair<int, int>> bounds;
      if (!bounds_text.empty()) bounds = parse_bounds(bounds_text);
      std::vector<Integer> counts;
      if (!counts_text.empty()) {
        for (const auto& item : split(counts_text, ',')) counts.emplace_back(item);
      } else if (!spec_path.empty()) {
        int terms = n_max;
        if (terms == 0) terms = bounds ? bounds->first + bounds->second + 2 : 12;
        for (auto c : count_tower(variety_from_json(read_json(spec_path)), field_of_size(q), terms, opt.jobs))
          counts.emplace_back(std::to_string(c));
      } else {
        fail(ErrorKind::InvalidInput, "zeta needs --spec or --counts");
      }
      result = class_report(from_rational(fit(zeta_series_from_counts(counts), bounds), q));
    };
  });

  // algebra
  auto* algebra = app.add_subcommand("algebra", "Evaluate a motive expression");
  std::string expr_text;
  std::vector<std::string> bindings;
  algebra->add_option("--q", q, "Field size")->required();
  algebra->add_option("--expr", expr_text, "Expression")->required();
  algebra->add_option("--var", bindings, "NAME=FILE, a variety spec or a serialized class");
  algebra->add_option("-n,--n", n_max, "Counts used to fit variety classes")->default_val(12);
  algebra->callback([&] {
    run = [&] {
      Environment env;
      for (const auto& b : bindings) {
        const auto eq = b.find('=');
        if (eq == std::string::npos || eq == 0) fail(ErrorKind::InvalidInput, "binding must be NAME=FILE: " + b);
        const auto j = read_json(b.substr(eq + 1));
        env.insert_or_assign(b.substr(0, eq), j.contains("atoms") ? motive_from_json(j)
                                                                   : variety_class(variety_from_json(j), q, n_max,
                                                                                   opt.jobs));
      }
      const auto m = elaborate(*parse_expr(expr_text, env), q, env);
      result = class_report(m);
      result["class"] = motive_to_json(m);
      result["expr"] = print_class(m);
    };
  });

  // dirichlet
  auto* dirichlet = app.add_subcommand("dirichlet", "Dirichlet series from Euler factors");
  std::vector<std::string> factor_paths;
  int cutoff = 0;
  std::string op = "product";
  double s = 0;
  dirichlet->add_option("--factors", factor_paths, "Factor files: [{\"norm\":2,\"num\":[1],\"den\":[1,-1]}, ...]")
      ->required();
  dirichlet->add_option("--cutoff", cutoff, "Largest index")->required()->check(CLI::PositiveNumber);
  dirichlet->add_option("--op", op, "product | inverse | solve | evaluate")
      ->check(CLI::IsMember({"product", "inverse", "solve", "evaluate"}));
  dirichlet->add_option("--s", s, "Point of evaluation");
  dirichlet->callback([&] {
    run = [&] {
      std::vector<EulerFactor> factors;
      for (const auto& path : factor_paths) {
        const auto j = read_json(path);
        for (const auto& f : j.is_array() ? j : json::array({j})) {
          if (!f.contains("norm")) fail(ErrorKind::InvalidInput, path + ": factor without norm");
          factors.push_back({f.at("norm").get<std::int64_t>(),
                             RationalFunctionQ(poly_from_json(f.value("num", json::array({1}))),
                                               poly_from_json(f.value("den", json::array({1}))))});
        }
      }
      const auto series = euler_product(factors, cutoff);
      if (op == "product") {
        result = dirichlet_to_json(series);
      } else if (op == "inverse") {
        result = dirichlet_to_json(dirichlet_inv(series));
      } else if (op == "solve") {
        result = dirichlet_to_json(solve_shift_equation(series));
      } else {
        const auto v = evaluate(series, s);
        result = {{"s", s}, {"value", v.value}, {"tail", v.tail ? json(*v.tail) : json(nullptr)}};
      }
    };
  });

  // near
  auto* near = app.add_subcommand("near", "Solve S(u)/S(u/qv) = R(u)");
  std::string num_text = "1", den_text = "1";
  std::int64_t qv = 0;
  near->add_option("--num", num_text, "Numerator of R, ascending coefficients");
  near->add_option("--den", den_text, "Denominator of R, ascending coefficients");
  near->add_option("--qv", qv, "Norm of the place")->required();
  near->callback([&] {
    run = [&] {
      result = rational_function_json(solve_local_near({parse_coeffs(num_text), parse_coeffs(den_text)}, qv));
    };
  });

  // ell
  auto* ell = app.add_subcommand("ell", "Nearby L-function of an elliptic curve over Q");
  std::string a_text;
  std::int64_t bound = 0;
  ell->add_option("--a", a_text, "a1,a2,a3,a4,a6")->required();
  ell->add_option("--bound", bound, "Largest prime")->required();
  ell->add_option("--cutoff", cutoff, "Largest Dirichlet index")->required()->check(CLI::PositiveNumber);
  ell->callback([&] {
    run = [&] {
      const auto parts = split(a_text, ',');
      if (parts.size() != 5) fail(ErrorKind::InvalidInput, "expected five a-invariants");
      std::vector<Integer> a;
      for (const auto& p : parts) {
        const auto r = parse_rational(p);
        if (!is_integer(r)) fail(ErrorKind::InvalidInput, "a-invariants must be integers");
        a.push_back(r.get_num());
      }
      result = elliptic_ledger_to_json(
          elliptic_global_lnear(WeierstrassCurve(a[0], a[1], a[2], a[3], a[4]), bound, cutoff, opt.jobs));
    };
  });

  // ff
  auto* ff = app.add_subcommand("ff", "Assemble an L-function over F_q(t) from its places");
  std::string places_path, dual_path;
  int max_degree = 0;
  ff->add_option("--places", places_path, "Global model over F_q(t)")->required();
  ff->add_option("--dual", dual_path, "Global model of the dual");
  ff->add_option("--max-degree", max_degree, "Degree D of place coverage")->required()->check(CLI::PositiveNumber);
  ff->add_option("--bounds", bounds_text, "Degree bounds num,den");
  ff->callback([&] {
    run = [&] {
      std::optional<std::pair<int, int>> bounds;
      if (!bounds_text.empty()) bounds = parse_bounds(bounds_text);
      auto assemble = [&](const std::string& path) {
        const auto m = global_model_from_json(read_json(path));
        if (m.base != BaseKind::FunctionField) fail(ErrorKind::InvalidInput, path + ": base is not F_q(t)");
        return std::pair{assemble_ff(m.places, m.q, max_degree, bounds), m.q};
      };
      const auto [l, base_q] = assemble(places_path);
      result = rational_function_json(l);
      if (!dual_path.empty()) {
        const auto [ld, dual_q] = assemble(dual_path);
        if (dual_q != base_q) fail(ErrorKind::BaseMismatch, "dual model lives over another constant field");
        const auto fe = verify_ff_functional_equation(l, ld, base_q);
        result["functional_equation"] = {{"c", rational_to_json_string(fe.c)}, {"b", fe.b}};
      }
    };
  });

  // gamma
  auto* gamma = app.add_subcommand("gamma", "Archimedean Gamma factor from Hodge numbers");
  std::vector<std::string> hodge_text, middle_text;
  bool real = false;
  gamma->add_option("--hodge", hodge_text, "p,q:h");
  gamma->add_option("--middle", middle_text, "n:h+,h- (real structure)");
  gamma->add_flag("--real", real, "Real place");
  gamma->add_option("--s", s, "Point of evaluation")->required();
  gamma->callback([&] {
    run = [&] {
      HodgeNumbers hodge;
      for (const auto& item : hodge_text) {
        const auto colon = split(item, ':');
        const auto pq = colon.size() == 2 ? split(colon[0], ',') : std::vector<std::string>{};
        if (pq.size() != 2) fail(ErrorKind::InvalidInput, "Hodge number must be written p,q:h");
        hodge[{std::stoi(pq[0]), std::stoi(pq[1])}] += std::stol(colon[1]);
      }
      std::map<int, std::pair<long, long>> middle;
      for (const auto& item : middle_text) {
        const auto colon = split(item, ':');
        const auto pm = colon.size() == 2 ? split(colon[1], ',') : std::vector<std::string>{};
        if (pm.size() != 2) fail(ErrorKind::InvalidInput, "middle entry must be written n:h+,h-");
        middle[std::stoi(colon[0])] = {std::stol(pm[0]), std::stol(pm[1])};
      }
      if (!real && !middle.empty()) fail(ErrorKind::InvalidInput, "--middle needs --real");
      const auto d = real ? gamma_factor_real(hodge, middle) : gamma_factor_complex(hodge);
      result = {{"gamma", gamma_to_json(d)}, {"s", s}, {"value", evaluate_gamma(d, s)}};
    };
  });

  // scan
  auto* scan = app.add_subcommand("scan", "Primes where two varieties have different point counts");
  std::string spec2_path;
  long betti = 0;
  scan->add_option("--spec1", spec_path, "First variety")->required();
  scan->add_option("--spec2", spec2_path, "Second variety")->required();
  scan->add_option("--bound", bound, "Largest prime")->required();
  scan->add_option("--betti", betti, "Total Betti number b")->required();
  scan->callback([&] {
    run = [&] {
      const auto r = density_scan(variety_from_json(read_json(spec_path)), variety_from_json(read_json(spec2_path)),
                                  bound, betti, opt.jobs);
      result = {{"fraction", rational_to_json_string(r.fraction)},
                {"bound", rational_to_json_string(r.bound)},
                {"primes", r.primes.size()},
                {"differing", r.differing}};
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    run();
  } catch (const Error& e) {
    if (opt.error_json) {
      json err = {{"error", {{"kind", kind_name(e.kind())}, {"message", e.what()}}}};
      if (const auto* se = dynamic_cast<const SyntaxError*>(&e)) {
        err["error"]["line"] = se->line();
        err["error"]["column"] = se->column();
      }
      std::cout << err.dump() << '\n';
    } else {
      std::cerr << "error (" << kind_name(e.kind()) << "): " << e.what() << '\n';
    }
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    if (opt.error_json)
      std::cout << json{{"error", {{"kind", "InvalidInput"}, {"message", e.what()}}}}.dump() << '\n';
    else
      std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  if (opt.pretty)
    print_pretty(result, std::cout);
  else
    std::cout << result.dump() << '\n';
  return 0;
}

// rabi: survival-probability series, spectrum dumps and self-verification.
//
//   rabi simulate --state number:6 --models rh,ahm1,jcm --tmax 100 --output fig2.csv
//   rabi figure fig5 --output fig5.csv
//   rabi spectrum --model h1 --nmax 60
//   rabi verify
//
// Exit codes: 0 success, 1 verification failure, 2 usage or configuration error.

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "rabi/dynamics.hpp"
#include "rabi/errors.hpp"
#include "rabi/spectra.hpp"
#include "rabi/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

struct StateSpec {
  enum class Kind { number, coherent } kind = Kind::number;
  int n = 6;
  std::complex<double> alpha{0.0, 0.0};

  std::string str() const {
    char buf[96];
    if (kind == Kind::number) {
      std::snprintf(buf, sizeof buf, "number:%d", n);
    } else {
      std::snprintf(buf, sizeof buf, "coherent:%.17g,%.17g", alpha.real(), alpha.imag());
    }
    return buf;
  }

  int default_cutoff() const {
    return kind == Kind::number ? rabi::default_cutoff_for_number(n)
                                : rabi::default_cutoff_for_coherent(alpha);
  }

  rabi::FieldState field(int n_max) const {
    return kind == Kind::number ? rabi::number_state(n, n_max) : rabi::coherent_state(alpha, n_max);
  }
};

double parse_double(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    throw rabi::InvalidArgument("cannot parse " + what + " '" + text + "' as a number");
  return v;
}

StateSpec parse_state(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos)
    throw rabi::InvalidArgument("state '" + text + "': expected number:n or coherent:re,im");
  const std::string kind = text.substr(0, colon);
  const std::string rest = text.substr(colon + 1);
  StateSpec s;
  if (kind == "number") {
    const double v = parse_double(rest, "photon number");
    if (v < 0 || v != std::floor(v))
      throw rabi::InvalidArgument("state '" + text + "': photon number must be a non-negative integer");
    s.kind = StateSpec::Kind::number;
    s.n = static_cast<int>(v);
  } else if (kind == "coherent") {
    const auto comma = rest.find(',');
    s.kind = StateSpec::Kind::coherent;
    if (comma == std::string::npos) {
      s.alpha = {parse_double(rest, "alpha"), 0.0};
    } else {
      s.alpha = {parse_double(rest.substr(0, comma), "Re alpha"),
                 parse_double(rest.substr(comma + 1), "Im alpha")};
    }
  } else {
    throw rabi::InvalidArgument("state '" + text + "': unknown kind '" + kind +
                                "' (expected number or coherent)");
  }
  return s;
}

std::vector<rabi::ModelTag> parse_models(const std::string& text) {
  std::vector<rabi::ModelTag> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(rabi::parse_model_tag(item));
  }
  if (out.empty()) throw rabi::InvalidArgument("--models: at least one of rh, ahm1, ahm2, jcm is required");
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Reads key=value pairs. A leading '#' is stripped first, so the comment block
// of a CSV written by `simulate` is itself a valid config file.
std::map<std::string, std::string> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw rabi::InvalidArgument("cannot open config file '" + path + "'");
  std::map<std::string, std::string> kv;
  std::string line;
  const auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    std::string body = trim(line);
    if (!body.empty() && body[0] == '#') body = trim(body.substr(1));
    const auto eq = body.find('=');
    if (body.empty() || eq == std::string::npos) continue;
    kv[trim(body.substr(0, eq))] = trim(body.substr(eq + 1));
  }
  return kv;
}

struct RunConfig {
  rabi::ModelParams params;
  StateSpec state;
  rabi::TimeGrid grid;
  std::vector<rabi::ModelTag> models{rabi::ModelTag::rh, rabi::ModelTag::ahm1, rabi::ModelTag::jcm};
  std::string output = "-";

  std::string models_str() const {
    std::string s;
    for (rabi::ModelTag m : models) {
      if (!s.empty()) s += ',';
      std::string t = rabi::to_string(m);
      for (char& c : t) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      s += t;
    }
    return s;
  }
};

// Raw option text; resolved into a RunConfig after config-file merging.
struct SimulateOptions {
  std::string omega = "1", nu = "1", g = "0.1", nmax, guard = "5";
  std::string state = "number:6", models = "rh,ahm1,jcm";
  std::string tmin = "0", tmax = "100", steps = "4000";
  std::string config, output = "-";
};

RunConfig resolve(const SimulateOptions& o) {
  RunConfig rc;
  rc.params.omega = parse_double(o.omega, "omega");
  rc.params.nu = parse_double(o.nu, "nu");
  rc.params.g = parse_double(o.g, "g");
  rc.params.guard = static_cast<int>(parse_double(o.guard, "guard"));
  rc.state = parse_state(o.state);
  rc.params.n_max = o.nmax.empty() || o.nmax == "auto"
                        ? rc.state.default_cutoff()
                        : static_cast<int>(parse_double(o.nmax, "nmax"));
  rc.models = parse_models(o.models);
  std::sort(rc.models.begin(), rc.models.end());
  rc.models.erase(std::unique(rc.models.begin(), rc.models.end()), rc.models.end());
  rc.grid.t_start = parse_double(o.tmin, "tmin");
  rc.grid.t_end = parse_double(o.tmax, "tmax");
  rc.grid.steps = static_cast<int>(parse_double(o.steps, "steps"));
  rc.output = o.output;
  rc.params.validate();
  rc.grid.validate();
  return rc;
}

void write_csv(std::ostream& os, const RunConfig& rc, const std::vector<rabi::SurvivalSeries>& series) {
  os << "# rabi simulate\n";
  os << "# omega=" << format_double(rc.params.omega) << '\n';
  os << "# nu=" << format_double(rc.params.nu) << '\n';
  os << "# g=" << format_double(rc.params.g) << '\n';
  os << "# nmax=" << rc.params.n_max << '\n';
  os << "# guard=" << rc.params.guard << '\n';
  os << "# state=" << rc.state.str() << '\n';
  os << "# models=" << rc.models_str() << '\n';
  os << "# tmin=" << format_double(rc.grid.t_start) << '\n';
  os << "# tmax=" << format_double(rc.grid.t_end) << '\n';
  os << "# steps=" << rc.grid.steps << '\n';
  os << 't';
  for (const auto& s : series) os << ",P_" << rabi::to_string(s.model);
  os << '\n';
  const std::size_t rows = series.front().times.size();
  char buf[40];
  for (std::size_t i = 0; i < rows; ++i) {
    std::snprintf(buf, sizeof buf, "%.12g", series.front().times[i]);
    os << buf;
    for (const auto& s : series) {
      std::snprintf(buf, sizeof buf, ",%.12g", s.p[i]);
      os << buf;
    }
    os << '\n';
  }
}

void run_and_write(const RunConfig& rc) {
  const rabi::FieldState f = rc.state.field(rc.params.n_max);
  const auto series = rabi::compare_models(f, rc.params, rc.grid, rc.models);
  if (rc.output == "-") {
    write_csv(std::cout, rc, series);
    std::cout.flush();
    if (!std::cout) throw rabi::Error("failed writing CSV to stdout");
    return;
  }
  std::ofstream out(rc.output);
  if (!out) throw rabi::Error("cannot open output file '" + rc.output + "'");
  write_csv(out, rc, series);
  out.close();
  if (!out) throw rabi::Error("failed writing '" + rc.output + "'");
}

RunConfig figure_preset(const std::string& id) {
  RunConfig rc;
  rc.params = rabi::ModelParams{};
  rc.params.omega = 1.0;
  rc.params.nu = 1.0;
  rc.params.g = 0.1;
  if (id == "fig2") {
    rc.state = parse_state("number:6");
  } else if (id == "fig3") {
    rc.state = parse_state("number:100");
  } else if (id == "fig4") {
    rc.state = parse_state("coherent:2,0");
  } else if (id == "fig5") {
    rc.state = parse_state("coherent:8,0");
    rc.grid = {0.0, 700.0, 14000};
  } else {
    throw rabi::InvalidArgument("unknown figure '" + id + "' (expected fig2, fig3, fig4 or fig5)");
  }
  rc.params.n_max = rc.state.default_cutoff();
  return rc;
}

void add_param_flags(CLI::App* cmd, rabi::ModelParams& p) {
  cmd->add_option("--omega", p.omega, "atomic transition frequency")->capture_default_str();
  cmd->add_option("--g", p.g, "coupling constant")->capture_default_str();
  cmd->add_option("--nmax", p.n_max, "Fock cutoff")->capture_default_str();
  cmd->add_option("--guard", p.guard, "guard band below the cutoff")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rabi, Jaynes-Cummings and approximating-Hamiltonian survival probabilities"};
  app.require_subcommand(1);

  SimulateOptions sim;
  CLI::App* simulate = app.add_subcommand("simulate", "write P(t) for the requested models as CSV");
  struct Flag {
    const char* key;
    std::string* target;
    const char* help;
  };
  const std::vector<Flag> flags = {
      {"omega", &sim.omega, "atomic transition frequency (time unit is 1/omega)"},
      {"nu", &sim.nu, "field frequency; closed forms need nu == omega"},
      {"g", &sim.g, "coupling constant"},
      {"nmax", &sim.nmax, "Fock cutoff (default: chosen from the state)"},
      {"guard", &sim.guard, "guard band below the cutoff"},
      {"state", &sim.state, "number:n or coherent:re,im"},
      {"models", &sim.models, "comma-separated subset of rh,ahm1,ahm2,jcm"},
      {"tmin", &sim.tmin, "first time point"},
      {"tmax", &sim.tmax, "last time point"},
      {"steps", &sim.steps, "number of time intervals"},
  };
  std::map<std::string, CLI::Option*> flag_opts;
  for (const Flag& f : flags)
    flag_opts[f.key] = simulate->add_option(std::string("--") + f.key, *f.target, f.help);
  simulate->add_option("--config", sim.config,
                       "key=value file; a CSV written by simulate also works. Flags take precedence");
  simulate->add_option("-o,--output", sim.output, "output CSV path ('-' for stdout)");

  std::string figure_id, figure_output = "-";
  CLI::App* figure = app.add_subcommand("figure", "run a preset: fig2, fig3, fig4 or fig5");
  figure->add_option("id", figure_id, "figure preset")->required();
  figure->add_option("-o,--output", figure_output, "output CSV path ('-' for stdout)");

  rabi::ModelParams spec_params;
  std::string spec_model = "h1";
  CLI::App* spectrum = app.add_subcommand("spectrum", "closed-form eigenvalues with residuals");
  spectrum->add_option("--model", spec_model, "h1 or h2")->capture_default_str();
  add_param_flags(spectrum, spec_params);

  rabi::ModelParams verify_params;
  std::vector<int> suites;
  CLI::App* verify = app.add_subcommand("verify", "run the numerical self-checks");
  add_param_flags(verify, verify_params);
  verify->add_option("--suite", suites, "suite ids to run (default: all, 0-7)")
      ->check(CLI::Range(rabi::verify::kFirstSuite, rabi::verify::kLastSuite));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*simulate) {
      if (!sim.config.empty()) {
        for (const auto& [key, value] : read_config(sim.config)) {
          const auto it = flag_opts.find(key);
          if (it == flag_opts.end()) {
            if (key == "output") continue;
            throw rabi::InvalidArgument("config file: unknown key '" + key + "'");
          }
          if (it->second->count() == 0) {
            for (const Flag& f : flags)
              if (key == f.key) *f.target = value;
          }
        }
      }
      run_and_write(resolve(sim));
      return kExitOk;
    }

    if (*figure) {
      RunConfig rc = figure_preset(figure_id);
      rc.output = figure_output;
      run_and_write(rc);
      return kExitOk;
    }

    if (*spectrum) {
      rabi::Approx model;
      if (spec_model == "h1") {
        model = rabi::Approx::h1;
      } else if (spec_model == "h2") {
        model = rabi::Approx::h2;
      } else {
        throw rabi::InvalidArgument("--model must be h1 or h2");
      }
      spec_params.validate();
      const auto records = rabi::full_eigenbasis(model, spec_params);
      const rabi::HamiltonianMatrix h = model == rabi::Approx::h1
                                            ? rabi::build_h1_explicit(spec_params)
                                            : rabi::build_h2_explicit(spec_params);
      std::vector<double> res;
      res.reserve(records.size());
      for (const auto& r : records) res.push_back(rabi::residual(h, r));
      std::cout << rabi::format_spectrum(records, res);
      return kExitOk;
    }

    if (*verify) {
      if (suites.empty())
        for (int s = rabi::verify::kFirstSuite; s <= rabi::verify::kLastSuite; ++s) suites.push_back(s);
      bool ok = true;
      for (int s : suites) {
        const auto start = std::chrono::steady_clock::now();
        const auto checks = rabi::verify::run_suite(s, verify_params);
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("# suite %d: %s (%.2f s)\n", s, rabi::verify::suite_title(s).c_str(), secs);
        for (const auto& c : checks) std::printf("%s\n", rabi::verify::format_check(c).c_str());
        std::fflush(stdout);
        ok = ok && rabi::verify::all_pass(checks);
      }
      std::printf("# %s\n", ok ? "all checks passed" : "some checks FAILED");
      return ok ? kExitOk : kExitVerifyFailed;
    }
  } catch (const rabi::Error& e) {
    std::cerr << "rabi: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "rabi: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
